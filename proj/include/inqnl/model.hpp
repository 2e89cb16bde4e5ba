#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "inqnl/formula.hpp"

namespace inqnl {

// An information state: a set of worlds of one model, as a bitmask over the
// model's world indices. Evaluation enumerates substates, so world counts are
// capped at kMaxWorlds.
using StateMask = std::uint32_t;
inline constexpr int kMaxWorlds = 20;

int popcount(StateMask s);
bool state_subset(StateMask a, StateMask b);
// Canonical order on states: lexicographic on the sorted index sequences,
// e.g. {} < {0} < {0,1} < {0,2} < {1}. Used wherever determinism is promised.
bool state_less(StateMask a, StateMask b);

enum class ClosureKind { Up, Down, Convex, Union };
ClosureKind closure_kind_from_name(std::string_view name);
std::string_view to_string(ClosureKind k);

enum class FrameCondition {
    DownwardMonotonicity,
    FiniteUnionClosure,
    Reflexivity,
    NonTriviality,
    Decreasingness,
    Increasingness,
    UpwardMonotonicity,
    Convexity,
    FiniteIntersectionClosure,
    FullUnionClosure,
    FullIntersectionClosure,
    Nestedness,
    WeakCentering,
};
FrameCondition frame_condition_from_name(std::string_view name);
std::string_view to_string(FrameCondition c);

struct FrameCheckResult {
    bool holds = true;
    // Violating tuple, present when holds is false.
    int world = -1;
    std::vector<StateMask> states;   // the neighborhoods/states involved
    std::optional<int> successor;    // for the R-based conditions
    std::optional<StateMask> missing;  // the state required but absent
};

// Finite neighborhood model: ordered worlds, per-world neighborhood family,
// total valuation over an atom signature. Treated as immutable once built;
// closures return fresh models.
struct NeighborhoodModel {
    std::vector<std::string> worlds;
    AtomSignature atoms;
    // Per world, sorted by state_less and deduplicated.
    std::vector<std::vector<StateMask>> sigma;
    // Per atom, the mask of worlds where it is true.
    std::vector<StateMask> valuation;
    bool allow_empty = false;
    // Problems detected while loading (e.g. a neighborhood naming an unknown
    // world); reported by validate().
    std::vector<std::string> load_issues;

    NeighborhoodModel() = default;
    NeighborhoodModel(std::vector<std::string> world_names, AtomSignature signature,
                      bool allow_empty_neighborhoods = false);

    int world_count() const { return static_cast<int>(worlds.size()); }
    StateMask full_mask() const { return static_cast<StateMask>((1u << worlds.size()) - 1); }
    int world_index(std::string_view name) const;  // throws ArgError if unknown
    std::optional<int> find_world(std::string_view name) const;

    bool atom_true(int world, int atom) const { return (valuation[atom] >> world) & 1u; }
    void set_atom(int world, int atom, bool value);
    StateMask atom_mask(int atom) const { return valuation[atom]; }

    void add_neighborhood(int world, StateMask s);
    bool has_neighborhood(int world, StateMask s) const;
    // Restores the per-world sort/dedup invariant after bulk edits.
    void normalize();

    // Parses a comma separated list of world names; "" is the empty state.
    StateMask state_from_names(std::string_view csv) const;
    std::vector<std::string> state_names(StateMask s) const;

    // Diagnostics: dangling worlds, empty neighborhoods when disallowed,
    // duplicate names. Empty result means the model is well-formed.
    std::vector<std::string> validate() const;

    // Successor map of the underlying Kripke model: w -> union of sigma(w).
    std::vector<StateMask> underlying_kripke() const;

    NeighborhoodModel closure(ClosureKind kind) const;

    FrameCheckResult check_frame_condition(FrameCondition cond,
                                           std::optional<int> only_world = {}) const;

    std::string to_json_text(int indent = 2) const;
    static NeighborhoodModel from_json_text(std::string_view text);
    static NeighborhoodModel from_json_file(const std::string& path);
};

struct EnumerationLimits {
    int max_worlds_cap = 3;
};

// Exhaustively visits all models over the signature with 1..max_worlds
// worlds, duplicate-free modulo world renaming. Order: ascending world count,
// then ascending total neighborhood count, then family bits, then valuation;
// the representative of each renaming class is the first in that order.
// The visitor returns false to stop early.
void enumerate_models(int max_worlds, const AtomSignature& atoms, bool allow_empty,
                      const std::function<bool(const NeighborhoodModel&)>& visit,
                      const EnumerationLimits& limits = {});

std::vector<NeighborhoodModel> enumerate_models_collect(int max_worlds,
                                                        const AtomSignature& atoms,
                                                        bool allow_empty,
                                                        const EnumerationLimits& limits = {});

// Uniform-ish random model for property tests: 1..max_worlds worlds, each
// candidate neighborhood kept with the given probability.
NeighborhoodModel random_model(std::mt19937& rng, int max_worlds, const AtomSignature& atoms,
                               bool allow_empty, double neighborhood_prob = 0.35);

}  // namespace inqnl
