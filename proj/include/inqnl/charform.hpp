#pragma once

#include <vector>

#include "inqnl/bisim.hpp"
#include "inqnl/formula.hpp"
#include "inqnl/model.hpp"

namespace inqnl {

struct CharformLimits {
    int max_depth = 2;
    int max_atoms = 2;
    int max_pool_states = 64;
};

struct WorldPoint {
    int model = 0;  // index into the pool
    int world = 0;
};

struct StatePoint {
    int model = 0;
    StateMask state = 0;
};

// Builds characteristic formulas relative to a pool of models sharing one
// atom signature. A world formula at depth n is true at exactly the pool
// worlds n-bisimilar to its subject; the state formula is true at a world
// exactly when some neighborhood of it is n-bisimilar to the subject state.
// The quantification over "all" state-pointed models in the depth-(n+1)
// construction is realized over representatives of the n-bisimilarity classes
// of the pool models' neighborhoods, one per class, so the biconditionals
// above are guaranteed for worlds and states of the pool.
class CharformBuilder {
public:
    explicit CharformBuilder(std::vector<const NeighborhoodModel*> pool,
                             CharformLimits limits = {});

    Formula chi_world(int model, int world, int n);
    // Subject state must be nonempty.
    Formula pi_state(int model, StateMask state, int n);
    // Disjunction of the member world formulas; bottom for the empty state.
    Formula chi_state(int model, StateMask state, int n);

    bool worlds_bisimilar(int m1, int w1, int m2, int w2, int n) const;
    bool states_bisimilar(int m1, StateMask s1, int m2, StateMask s2, int n) const;

    const std::vector<const NeighborhoodModel*>& pool() const { return pool_; }

private:
    std::vector<const NeighborhoodModel*> pool_;
    CharformLimits limits_;
    bool any_allow_empty_ = false;
    // Pairwise stratified bisimulations, row-major over ordered pool pairs
    // with i <= j; queries with i > j go through the transpose.
    std::vector<std::vector<StratifiedBisim>> bisims_;
    // chi_[n][model][world]
    std::vector<std::vector<std::vector<Formula>>> chi_;
    // All nonempty neighborhoods occurring in the pool, in canonical order.
    std::vector<StatePoint> pool_states_;

    void ensure_level(int n);
    Formula build_pi(const StatePoint& sp, int n);
};

// Disjunction of depth-n world formulas over the given points: true at
// exactly the pool worlds n-bisimilar to one of them.
Formula class_formula_worlds(CharformBuilder& builder, const std::vector<WorldPoint>& points,
                             int n);
// Inquisitive disjunction of depth-n state formulas: supported at exactly the
// pool states n-bisimilar to a substate of one of them.
Formula class_formula_states(CharformBuilder& builder, const std::vector<StatePoint>& points,
                             int n);

}  // namespace inqnl
