#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "inqnl/formula.hpp"
#include "inqnl/semantics.hpp"

using namespace inqnl;

TEST_CASE("parsing desugars") {
    Formula p = Formula::atom("p");
    Formula q = Formula::atom("q");

    CHECK(parse_formula("?p") == Formula::inq_disj(p, Formula::impl(p, Formula::bottom())));
    CHECK(parse_formula("top") == Formula::impl(Formula::bottom(), Formula::bottom()));
    CHECK(parse_formula("p => ?q") ==
          Formula::yields(p, Formula::inq_disj(q, Formula::impl(q, Formula::bottom()))));
    CHECK(parse_formula("(.)") == Formula::odot());
    CHECK(parse_formula("~p") == Formula::impl(p, Formula::bottom()));
    CHECK(parse_formula("p \\/ q") == Formula::decl_or(p, q));
    CHECK(parse_formula("p <-> q") == Formula::iff(p, q));
    CHECK(parse_formula("[+]p") == Formula::yields(Formula::top(), p));
    CHECK(parse_formula("<+>p") == Formula::neg(Formula::yields(p, Formula::bottom())));
    CHECK(parse_formula("<+.>p") == Formula::decl_or(Formula::kite(p), Formula::odot()));
    CHECK(parse_formula("p ~> q") == Formula::counterfactual(p, q));
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_formula("p & q // r") ==
          Formula::inq_disj(Formula::conj(Formula::atom("p"), Formula::atom("q")),
                            Formula::atom("r")));
    CHECK(parse_formula("p & q & r") ==
          Formula::conj(Formula::conj(Formula::atom("p"), Formula::atom("q")),
                        Formula::atom("r")));
    CHECK(parse_formula("p -> q -> r") ==
          Formula::impl(Formula::atom("p"),
                        Formula::impl(Formula::atom("q"), Formula::atom("r"))));
    CHECK(parse_formula("~p & q") ==
          Formula::conj(Formula::neg(Formula::atom("p")), Formula::atom("q")));
    // & binds tighter than \/ which binds tighter than //
    CHECK(parse_formula("p \\/ q // r") ==
          Formula::inq_disj(Formula::decl_or(Formula::atom("p"), Formula::atom("q")),
                            Formula::atom("r")));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_formula("p -> q => r"), ParseError);
    CHECK_THROWS_AS(parse_formula("p &"), ParseError);
    CHECK_THROWS_AS(parse_formula("p $ q"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p"), ParseError);
    CHECK_THROWS_AS(parse_formula("P"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    // counterfactual arguments must be declarative
    CHECK_THROWS_AS(parse_formula("?p ~> q"), ParseError);
    CHECK_THROWS_AS(parse_formula("p ~> ?q"), ParseError);
    // positions are reported
    try {
        parse_formula("p @ q");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 2);
    }
}

TEST_CASE("printing round-trips and resugars") {
    Formula p = Formula::atom("p");

    CHECK(print_formula(Formula::neg(p)) == "~p");
    CHECK(print_formula(Formula::yields(Formula::top(), p)) == "[+] p");
    CHECK(print_formula(Formula::inq_disj(p, Formula::atom("q"))) == "p // q");
    CHECK(print_formula(Formula::question(p)) == "?p");
    CHECK(print_formula(Formula::top()) == "top");
    CHECK(print_formula(Formula::top(), false) == "bot -> bot");
    CHECK(print_formula(Formula::counterfactual(p, Formula::atom("q"))) == "p ~> q");

    const char* samples[] = {
        "p", "bot", "top", "(.)", "~p", "?p", "p & q", "p \\/ q", "p // q",
        "p -> q", "p <-> q", "p => q", "p ~> q", "[+]?p", "<+>(p & q)",
        "<+.>p", "?p => ?q", "p => (q -> ?r)", "(p // q) => r",
        "p -> q -> r", "(p -> q) -> r", "~(p & q) \\/ (q // ~p)",
        "[+](p => q)", "?(p & ?q)",
    };
    for (const char* text : samples) {
        Formula f = parse_formula(text);
        CHECK(parse_formula(print_formula(f, true)) == f);
        CHECK(parse_formula(print_formula(f, false)) == f);
    }
}

TEST_CASE("print round-trip on random formulas") {
    std::mt19937 rng(20240817);
    AtomSignature sig({"p", "q", "r"});
    GenOptions full;
    full.include_odot = true;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng, sig, 4, full);
        CAPTURE(print_formula(f));
        REQUIRE(parse_formula(print_formula(f, true)) == f);
        REQUIRE(parse_formula(print_formula(f, false)) == f);
    }
}

TEST_CASE("modal depth") {
    CHECK(parse_formula("p").modal_depth() == 0);
    CHECK(parse_formula("p => ?q").modal_depth() == 1);
    CHECK(parse_formula("[+](p => q)").modal_depth() == 2);
    CHECK(parse_formula("(.)").modal_depth() == 1);
    CHECK(parse_formula("?p").modal_depth() == 0);
    CHECK(parse_formula("(p => q) & r").modal_depth() == 1);
}

TEST_CASE("declaratives") {
    CHECK_FALSE(parse_formula("p // q").is_declarative());
    CHECK(parse_formula("(p // q) => r").is_declarative());
    CHECK_FALSE(parse_formula("~(p // q)").is_declarative());
    CHECK(parse_formula("p & q").is_declarative());
    CHECK(parse_formula("(.)").is_declarative());
    CHECK(parse_formula("p => ?q").is_declarative());
    CHECK_FALSE(parse_formula("?p").is_declarative());
}

TEST_CASE("resolutions: forced shapes") {
    auto res = [](const char* text) { return resolutions(parse_formula(text)); };

    CHECK(res("?p") == std::vector<Formula>{parse_formula("p"), parse_formula("~p")});
    CHECK(res("p -> ?q") ==
          std::vector<Formula>{parse_formula("p -> q"), parse_formula("p -> ~q")});
    CHECK(res("p & ?q") ==
          std::vector<Formula>{parse_formula("p & q"), parse_formula("p & ~q")});
    // declaratives resolve to themselves
    CHECK(res("p & q") == std::vector<Formula>{parse_formula("p & q")});
    CHECK(res("?p => ?q") == std::vector<Formula>{parse_formula("?p => ?q")});
}

TEST_CASE("resolutions: properties") {
    std::mt19937 rng(7);
    AtomSignature sig({"p", "q"});
    for (int i = 0; i < 400; ++i) {
        Formula f = random_formula(rng, sig, 3, {});
        auto rs = resolutions(f);
        REQUIRE(!rs.empty());
        for (Formula r : rs) {
            REQUIRE(r.is_declarative());
            REQUIRE(r.modal_depth() <= f.modal_depth());
        }
        if (f.is_declarative()) {
            REQUIRE(rs.size() == 1);
            REQUIRE(rs[0] == f);
        }
    }
}

TEST_CASE("resolution blowup is capped") {
    // (?p -> ?q) -> ?r has |R| = 2^2 = 4 on the antecedent and explodes at the
    // outer arrow: 2^4 = 16 choice functions; a cap of 8 must refuse.
    Formula f = parse_formula("(?p -> ?q) -> ?r");
    ResolutionLimits tight{8};
    CHECK_THROWS_AS(resolutions(f, tight), CapError);
    CHECK(resolutions(f).size() == 16);
}

TEST_CASE("declarative variant shapes") {
    CHECK(declarative_variant(parse_formula("?p")) == parse_formula("p \\/ ~p"));
    CHECK(declarative_variant(parse_formula("p")) == parse_formula("p"));
    Formula modal = parse_formula("?p => ?q");
    CHECK(declarative_variant(modal) == modal);
    std::mt19937 rng(11);
    AtomSignature sig({"p", "q"});
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, sig, 3, {});
        CHECK(declarative_variant(f).is_declarative());
    }
}

TEST_CASE("resolutions of sets") {
    std::vector<Formula> fs{parse_formula("p"), parse_formula("?q")};
    auto sets = resolutions_of_set(fs);
    REQUIRE(sets.size() == 2);
    std::vector<Formula> first{parse_formula("p"), parse_formula("q")};
    std::vector<Formula> second{parse_formula("p"), parse_formula("~q")};
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    CHECK(((sets[0] == first && sets[1] == second) || (sets[0] == second && sets[1] == first)));

    CHECK(resolutions_of_set({}) == std::vector<std::vector<Formula>>{{}});
    std::vector<Formula> decl{parse_formula("p & q")};
    CHECK(resolutions_of_set(decl) == std::vector<std::vector<Formula>>{{parse_formula("p & q")}});
}

TEST_CASE("atom signatures") {
    CHECK_THROWS_AS(AtomSignature({"p", "p"}), ArgError);
    AtomSignature sig = AtomSignature::of_formula(parse_formula("q & p -> ?q"));
    REQUIRE(sig.size() == 2);
    CHECK(sig.name(0) == "p");
    CHECK(sig.name(1) == "q");
    CHECK(sig.index_of("q") == 1);
    CHECK_FALSE(sig.index_of("r").has_value());
}
