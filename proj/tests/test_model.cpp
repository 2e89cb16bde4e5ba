#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "inqnl/model.hpp"
#include "support/fixtures.hpp"

using namespace inqnl;
using namespace inqnl::testing;

TEST_CASE("state order") {
    // {} < {0} < {0,1} < {0,2} < {1}
    CHECK(state_less(0b000, 0b001));
    CHECK(state_less(0b001, 0b011));
    CHECK(state_less(0b011, 0b101));
    CHECK(state_less(0b101, 0b010));
    CHECK_FALSE(state_less(0b010, 0b101));
    CHECK_FALSE(state_less(0b010, 0b010));
}

TEST_CASE("fixture round-trips through JSON") {
    NeighborhoodModel m = NeighborhoodModel::from_json_file(data_path("fig1.json"));
    NeighborhoodModel built = fig1_model();
    CHECK(m.worlds == built.worlds);
    CHECK(m.atoms.names() == built.atoms.names());
    CHECK(m.sigma == built.sigma);
    CHECK(m.valuation == built.valuation);
    CHECK(m.validate().empty());

    NeighborhoodModel reparsed = NeighborhoodModel::from_json_text(m.to_json_text());
    CHECK(reparsed.sigma == m.sigma);
    CHECK(reparsed.valuation == m.valuation);
}

TEST_CASE("validate flags problems") {
    NeighborhoodModel m({"a", "b"}, AtomSignature({"p"}));
    m.add_neighborhood(0, 0);  // empty neighborhood, allow_empty off
    CHECK(!m.validate().empty());

    NeighborhoodModel ok({"a", "b"}, AtomSignature({"p"}), true);
    ok.add_neighborhood(0, 0);
    CHECK(ok.validate().empty());

    auto dangling = NeighborhoodModel::from_json_text(
        R"({"atoms":["p"],"worlds":["a"],"neighborhoods":{"a":[["zz"]]}})");
    CHECK(!dangling.validate().empty());
}

TEST_CASE("underlying Kripke successors") {
    NeighborhoodModel m = fig1_model();
    auto succ = m.underlying_kripke();
    StateMask all4 = m.state_from_names("wpq,wpnq,wnpq,wnpnq");
    CHECK(succ[0] == all4);
    CHECK(succ[1] == succ[0]);
    CHECK(succ[2] == succ[0]);
    CHECK(succ[m.world_index("wpq")] == 0);
}

TEST_CASE("closures on small families") {
    NeighborhoodModel m({"a", "b"}, AtomSignature({"p"}));
    m.add_neighborhood(0, 0b01);  // {a}

    NeighborhoodModel up = m.closure(ClosureKind::Up);
    CHECK(up.sigma[0] == std::vector<StateMask>{0b01, 0b11});

    NeighborhoodModel m2({"a", "b"}, AtomSignature({"p"}));
    m2.add_neighborhood(0, 0b01);
    m2.add_neighborhood(0, 0b10);
    NeighborhoodModel un = m2.closure(ClosureKind::Union);
    std::vector<StateMask> expected{0b01, 0b11, 0b10};
    std::sort(expected.begin(), expected.end(), state_less);
    CHECK(un.sigma[0] == expected);

    NeighborhoodModel down = fig1_model().closure(ClosureKind::Down);
    CHECK(down.sigma[2].size() == 15);  // all nonempty subsets of the 4-set
}

TEST_CASE("closure properties on random models") {
    std::mt19937 rng(42);
    AtomSignature sig({"p", "q"});
    for (int i = 0; i < 60; ++i) {
        NeighborhoodModel m = random_model(rng, 4, sig, false);
        for (ClosureKind kind :
             {ClosureKind::Up, ClosureKind::Down, ClosureKind::Convex, ClosureKind::Union}) {
            NeighborhoodModel once = m.closure(kind);
            NeighborhoodModel twice = once.closure(kind);
            REQUIRE(once.sigma == twice.sigma);
            for (int w = 0; w < m.world_count(); ++w)
                for (StateMask s : m.sigma[w]) REQUIRE(once.has_neighborhood(w, s));
        }
        // the up-closure factors through the convex and union closures
        REQUIRE(m.closure(ClosureKind::Convex).closure(ClosureKind::Up).sigma ==
                m.closure(ClosureKind::Up).sigma);
        REQUIRE(m.closure(ClosureKind::Union).closure(ClosureKind::Up).sigma ==
                m.closure(ClosureKind::Up).sigma);
        // closing pairs with the matching condition check
        REQUIRE(m.closure(ClosureKind::Down)
                    .check_frame_condition(FrameCondition::DownwardMonotonicity)
                    .holds);
        REQUIRE(m.closure(ClosureKind::Up)
                    .check_frame_condition(FrameCondition::UpwardMonotonicity)
                    .holds);
        REQUIRE(
            m.closure(ClosureKind::Convex).check_frame_condition(FrameCondition::Convexity).holds);
        REQUIRE(m.closure(ClosureKind::Union)
                    .check_frame_condition(FrameCondition::FullUnionClosure)
                    .holds);
        // union closure does not change successors
        REQUIRE(m.closure(ClosureKind::Union).underlying_kripke() == m.underlying_kripke());
    }
}

TEST_CASE("frame conditions on the fixture") {
    NeighborhoodModel m = fig1_model();

    CHECK(m.check_frame_condition(FrameCondition::DownwardMonotonicity, m.world_index("w1")).holds);
    CHECK_FALSE(
        m.check_frame_condition(FrameCondition::DownwardMonotonicity, m.world_index("w2")).holds);

    FrameCheckResult conv = m.check_frame_condition(FrameCondition::Convexity, m.world_index("w3"));
    REQUIRE_FALSE(conv.holds);
    // the witness is a genuine violation: s ⊆ t ⊆ s' with t missing
    REQUIRE(conv.states.size() == 2);
    REQUIRE(conv.missing.has_value());
    CHECK(state_subset(conv.states[0], *conv.missing));
    CHECK(state_subset(*conv.missing, conv.states[1]));
    CHECK_FALSE(m.has_neighborhood(conv.world, *conv.missing));

    NeighborhoodModel trivial({"a"}, AtomSignature({"p"}));
    CHECK_FALSE(trivial.check_frame_condition(FrameCondition::NonTriviality).holds);

    // reflexivity holds nowhere in the fixture: pictured worlds see only the
    // valuation worlds, and valuation worlds see nothing
    CHECK_FALSE(m.check_frame_condition(FrameCondition::Reflexivity).holds);

    // distinct singletons are incomparable
    CHECK_FALSE(m.check_frame_condition(FrameCondition::Nestedness, m.world_index("w1")).holds);
    CHECK(trivial.check_frame_condition(FrameCondition::WeakCentering).holds);

    CHECK_THROWS_AS(frame_condition_from_name("no-such-condition"), ArgError);
}

TEST_CASE("enumeration counts at bound 1") {
    AtomSignature one_atom({"p"});
    auto models = enumerate_models_collect(1, one_atom, false);
    CHECK(models.size() == 4);
    auto with_empty = enumerate_models_collect(1, one_atom, true);
    CHECK(with_empty.size() == 8);
    CHECK_THROWS_AS(enumerate_models_collect(4, one_atom, false), CapError);
}

namespace {
// Canonical key of a model up to world renaming, by brute-force minimization.
std::string canonical_key(const NeighborhoodModel& m) {
    std::vector<int> perm(m.world_count());
    for (int i = 0; i < m.world_count(); ++i) perm[i] = i;
    std::string best;
    do {
        auto remap = [&](StateMask s) {
            StateMask out = 0;
            for (int w = 0; w < m.world_count(); ++w)
                if ((s >> w) & 1u) out |= (1u << perm[w]);
            return out;
        };
        std::vector<std::vector<StateMask>> sigma(m.world_count());
        for (int w = 0; w < m.world_count(); ++w) {
            for (StateMask s : m.sigma[w]) sigma[perm[w]].push_back(remap(s));
            std::sort(sigma[perm[w]].begin(), sigma[perm[w]].end());
        }
        std::string key;
        for (const auto& fam : sigma) {
            for (StateMask s : fam) key += std::to_string(s) + ",";
            key += ";";
        }
        key += "|";
        for (std::size_t a = 0; a < m.atoms.size(); ++a)
            key += std::to_string(remap(m.atom_mask(static_cast<int>(a)))) + ",";
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(m.world_count()) + "#" + best;
}
}  // namespace

TEST_CASE("enumeration is duplicate-free and complete modulo renaming") {
    AtomSignature sig({"p", "q"});
    auto models = enumerate_models_collect(2, sig, false);
    std::set<std::string> keys;
    for (const auto& m : models) {
        REQUIRE(m.validate().empty());
        REQUIRE(keys.insert(canonical_key(m)).second);
    }
    // every 2-world model over 2 atoms has a representative
    std::set<std::string> expected;
    for (int val = 0; val < 16; ++val)
        for (int f1 = 0; f1 < 8; ++f1)
            for (int f2 = 0; f2 < 8; ++f2) {
                NeighborhoodModel m({"w1", "w2"}, sig);
                for (int j = 0; j < 3; ++j) {
                    if ((f1 >> j) & 1) m.add_neighborhood(0, static_cast<StateMask>(j + 1));
                    if ((f2 >> j) & 1) m.add_neighborhood(1, static_cast<StateMask>(j + 1));
                }
                m.valuation[0] = static_cast<StateMask>(val & 3);
                m.valuation[1] = static_cast<StateMask>((val >> 2) & 3);
                expected.insert(canonical_key(m));
            }
    std::set<std::string> seen;
    for (const auto& m : models)
        if (m.world_count() == 2) seen.insert(canonical_key(m));
    CHECK(seen == expected);
}

TEST_CASE("state name round trip") {
    NeighborhoodModel m = fig1_model();
    CHECK(m.state_from_names("") == 0);
    CHECK(m.state_from_names("w1") == 1);
    CHECK(m.state_from_names("w1, w3") == 0b101);
    CHECK(m.state_names(0b101) == std::vector<std::string>{"w1", "w3"});
    CHECK_THROWS_AS(m.state_from_names("nope"), ArgError);
}
