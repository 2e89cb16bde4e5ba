#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "inqnl/proofsys.hpp"
#include "inqnl/semantics.hpp"
#include "support/derivations.hpp"
#include "support/fixtures.hpp"

using namespace inqnl;
using namespace inqnl::testing;

namespace {
Formula F(const char* text) { return parse_formula(text); }
}

TEST_CASE("axiom matching") {
    auto base = base_schemas();

    auto ddn = match_axiom(F("~~p -> p"), base);
    REQUIRE(ddn.has_value());
    CHECK(ddn->schema == Schema::DDN);
    CHECK(ddn->substitution.at("a") == F("p"));

    // the double-negation schema needs a declarative in its slot
    CHECK_FALSE(matches_schema(F("~~?p -> ?p"), Schema::DDN));
    CHECK_FALSE(match_axiom(F("~~?p -> ?p"), base).has_value());

    auto trans = match_axiom(F("(p => q) & (q => r) -> (p => r)"), base);
    REQUIRE(trans.has_value());
    CHECK(trans->schema == Schema::Trans);

    CHECK(matches_schema(F("(p & q -> ?r) -> (p & q -> ?r)"), Schema::K) == false);
    CHECK(matches_schema(F("p -> (q -> p)"), Schema::K));
    CHECK(matches_schema(F("(p => ?q) -> ((q // r) -> (p => ?q))"), Schema::K));
    CHECK(matches_schema(F("(p -> ?q // r) -> (p -> ?q) // (p -> r)"), Schema::Split));
    CHECK_FALSE(matches_schema(F("(?p -> q // r) -> (?p -> q) // (?p -> r)"), Schema::Split));

    // metavariable consistency: both occurrences must agree
    CHECK_FALSE(matches_schema(F("p & q -> r"), Schema::AndE1));

    // matching is stable under print/parse
    Formula inst = F("(p & ~q => q) & (q => r // r) -> (p & ~q => r // r)");
    REQUIRE(matches_schema(inst, Schema::Trans));
    CHECK(matches_schema(parse_formula(print_formula(inst)), Schema::Trans));
}

TEST_CASE("frame axioms match and pair with conditions") {
    CHECK(matches_schema(F("(p => q) -> [+](p -> q)"), Schema::DownMono));
    CHECK(matches_schema(F("[+]p -> p"), Schema::Refl));
    CHECK_FALSE(matches_schema(F("[+]?p -> ?p"), Schema::Refl));
    CHECK(matches_schema(F("~[+]bot"), Schema::NonTriv));
    CHECK(matches_schema(F("(p => q // r) -> (p => q) \\/ (p => r)"), Schema::FinUnion));
    CHECK(paired_condition(Schema::Decr) == FrameCondition::Decreasingness);
    CHECK_THROWS_AS(paired_condition(Schema::K), ArgError);
}

TEST_CASE("small derivations") {
    // premise p, disjunction introduction, modus ponens
    DerivationBuilder b;
    int p = b.premise(F("p"));
    int ax = b.axiom(Schema::OrI1, F("p -> p // q"));
    b.mp(p, ax);
    std::vector<Formula> premises{F("p")};
    CheckReport r = check_derivation(b.d, premises, base_schemas());
    REQUIRE(r.ok);
    CHECK(r.end_formula == F("p // q"));

    // self-referential index is rejected
    Derivation bad;
    Step s;
    s.formula = F("p");
    s.by = Step::By::MP;
    s.from = 1;
    s.via = 1;
    bad.steps.push_back(s);
    CheckReport rbad = check_derivation(bad, premises, base_schemas());
    REQUIRE_FALSE(rbad.ok);
    CHECK(rbad.failed_step == 1);

    // a premise that is not given
    Derivation not_premise;
    Step t;
    t.formula = F("q");
    t.by = Step::By::Premise;
    not_premise.steps.push_back(t);
    CHECK_FALSE(check_derivation(not_premise, premises, base_schemas()).ok);
}

TEST_CASE("conditional necessitation checks shape") {
    DerivationBuilder b;
    int ax = b.axiom(Schema::AndE1, F("p & q -> p"));
    b.cn(ax);
    CheckReport r = check_derivation(b.d, {}, base_schemas());
    REQUIRE(r.ok);
    CHECK(r.end_formula == F("p & q => p"));

    // CN on a non-implication is rejected
    Derivation bad;
    Step s1;
    s1.formula = F("p");
    s1.by = Step::By::Premise;
    bad.steps.push_back(s1);
    Step s2;
    s2.formula = F("p => p");
    s2.by = Step::By::CN;
    s2.from = 1;
    bad.steps.push_back(s2);
    std::vector<Formula> premises{F("p")};
    CHECK_FALSE(check_derivation(bad, premises, base_schemas()).ok);
}

TEST_CASE("turnstile certificates") {
    // identity sequent
    DerivationBuilder b;
    b.identity(F("p"));
    std::vector<Formula> left{F("p")}, right{F("p")};
    CHECK(check_turnstile(left, right, b.d, base_schemas()).ok);

    // the question on the left resolves to its two answers on the right
    DerivationBuilder b2;
    b2.identity(F("?p"));
    std::vector<Formula> qleft{F("?p")}, qright{F("p"), F("~p")};
    CHECK(check_turnstile(qleft, qright, b2.d, base_schemas()).ok);

    // empty sides: the goal is top -> bot, which an identity does not give
    DerivationBuilder b3;
    b3.identity(F("top"));
    CheckReport r = check_turnstile({}, {}, b3.d, base_schemas());
    CHECK_FALSE(r.ok);

    CHECK(turnstile_goal({}, {}) == F("top -> bot"));
}

TEST_CASE("two-premise chaining fixture checks end to end") {
    ChainFixture fx =
        chain_fixture(F("p1"), F("p2"), F("q1"), F("q2"), F("r"));
    CheckReport r = check_derivation(fx.derivation, fx.premises, base_schemas());
    REQUIRE(r.ok);
    CHECK(r.end_formula == F("p1 & p2 => q1 // q2"));
    REQUIRE(fx.table.size() == 13);
    CHECK(fx.table.front() == F("p1 & r => q1"));
    CHECK(fx.table[1] == F("p2 => q2 // r"));
    CHECK(fx.table.back() == F("p1 & p2 => q1 // q2"));

    // the headline formulas appear in the kernel steps, in order
    std::size_t cursor = 0;
    for (const Step& step : fx.derivation.steps) {
        if (cursor < fx.table.size() && step.formula == fx.table[cursor]) ++cursor;
    }
    CHECK(cursor == fx.table.size());
}

TEST_CASE("shipped fixture file matches the builder") {
    ChainFixture fx = chain_fixture(F("p1"), F("p2"), F("q1"), F("q2"), F("r"));
    std::ifstream in(data_path("chain_derivation.json"));
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Derivation shipped = derivation_from_json_text(text);
    REQUIRE(shipped.steps.size() == fx.derivation.steps.size());
    for (std::size_t i = 0; i < shipped.steps.size(); ++i) {
        REQUIRE(shipped.steps[i].formula == fx.derivation.steps[i].formula);
        REQUIRE(shipped.steps[i].by == fx.derivation.steps[i].by);
    }
    CheckReport r = check_derivation(shipped, fx.premises, base_schemas());
    REQUIRE(r.ok);
    CHECK(r.end_formula == F("p1 & p2 => q1 // q2"));
}

TEST_CASE("corrupted derivations are rejected") {
    ChainFixture fx = chain_fixture(F("p1"), F("p2"), F("q1"), F("q2"), F("r"));
    auto premises = fx.premises;
    auto base = base_schemas();
    REQUIRE(check_derivation(fx.derivation, premises, base).ok);

    int mutations = 0;
    auto expect_reject = [&](Derivation mutant) {
        ++mutations;
        CAPTURE(mutations);
        REQUIRE_FALSE(check_derivation(mutant, premises, base).ok);
    };

    int swapped = 0, renamed = 0, tweaked = 0, dangled = 0;
    for (std::size_t i = 0; i < fx.derivation.steps.size(); ++i) {
        const Step& step = fx.derivation.steps[i];
        if (step.by == Step::By::MP && swapped < 6) {
            // swapping minor and major breaks the implication shape
            Derivation m = fx.derivation;
            std::swap(m.steps[i].from, m.steps[i].via);
            expect_reject(std::move(m));
            ++swapped;
        } else if (step.by == Step::By::Axiom && renamed < 6) {
            // an axiom instance is never a legitimate premise here
            Derivation m = fx.derivation;
            m.steps[i].by = Step::By::Premise;
            expect_reject(std::move(m));
            ++renamed;
        } else if (step.by == Step::By::CN && tweaked < 4) {
            // damage the conclusion of the necessitation
            Derivation m = fx.derivation;
            Formula f = m.steps[i].formula;
            m.steps[i].formula =
                Formula::yields(f.left(), Formula::conj(f.right(), f.right()));
            expect_reject(std::move(m));
            ++tweaked;
        } else if (step.by == Step::By::MP && dangled < 3) {
            // forward reference
            Derivation m = fx.derivation;
            m.steps[i].via = static_cast<int>(fx.derivation.steps.size());
            expect_reject(std::move(m));
            ++dangled;
        }
    }

    // premise not among the premises
    Derivation mp = fx.derivation;
    mp.steps[0].formula = Formula::conj(mp.steps[0].formula, F("p1"));
    expect_reject(std::move(mp));

    // declarative side condition breach
    Derivation m3;
    Step s;
    s.by = Step::By::Axiom;
    s.axiom = Schema::DDN;
    s.formula = F("~~?p -> ?p");
    m3.steps.push_back(s);
    expect_reject(std::move(m3));

    CHECK(mutations >= 20);
}

TEST_CASE("derivation JSON round trip") {
    ChainFixture fx = chain_fixture(F("p1"), F("p2"), F("q1"), F("q2"), F("r"));
    std::string text = derivation_to_json_text(fx.derivation);
    Derivation back = derivation_from_json_text(text);
    REQUIRE(back.steps.size() == fx.derivation.steps.size());
    for (std::size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].formula == fx.derivation.steps[i].formula);
        CHECK(back.steps[i].by == fx.derivation.steps[i].by);
        CHECK(back.steps[i].from == fx.derivation.steps[i].from);
        CHECK(back.steps[i].via == fx.derivation.steps[i].via);
    }
    CHECK_THROWS_AS(derivation_from_json_text("{"), ArgError);
    CHECK_THROWS_AS(derivation_from_json_text(R"([{"formula":"p","by":{"axiom":"Nope"}}])"),
                    ArgError);
}

TEST_CASE("frame axioms need their condition filter") {
    // ~[+]bot fails exactly on worlds with no neighborhoods at all
    AtomSignature sig({"p"});
    auto models = enumerate_models_collect(2, sig, false);
    Formula axiom = F("~[+]bot");
    bool unfiltered_violation = false;
    bool filtered_violation = false;
    for (const auto& m : models) {
        bool holds = m.check_frame_condition(FrameCondition::NonTriviality).holds;
        for (int w = 0; w < m.world_count(); ++w) {
            if (true_at(m, w, axiom)) continue;
            unfiltered_violation = true;
            if (holds) filtered_violation = true;
        }
    }
    CHECK(unfiltered_violation);
    CHECK_FALSE(filtered_violation);
}

TEST_CASE("soundness fuzz finds no violations") {
    FuzzConfig config;
    config.schema_samples = 10;
    config.derivation_steps = 60;
    config.seed = 2024;
    config.frame_axioms = frame_schemas();
    FuzzReport r = soundness_fuzz(config);
    CHECK(r.formulas_checked > 100);
    CHECK(r.models_swept > 100);
    for (const auto& v : r.violations) {
        CAPTURE(print_formula(v.formula));
        CAPTURE(v.context);
        CHECK(false);
    }
}
