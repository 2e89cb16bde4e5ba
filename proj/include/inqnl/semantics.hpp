#pragma once

#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "inqnl/formula.hpp"
#include "inqnl/model.hpp"

namespace inqnl {

// Support evaluation against one model, memoized by (subformula, state).
// The implication clause quantifies over all substates, so per-call
// memoization is what keeps evaluation polynomial in practice.
class Evaluator {
public:
    explicit Evaluator(const NeighborhoodModel& m) : m_(&m) {}

    bool supports(StateMask s, Formula f);
    bool true_at(int world, Formula f);
    StateMask truth_set(Formula f);
    const NeighborhoodModel& model() const { return *m_; }

private:
    const NeighborhoodModel* m_;
    std::unordered_map<std::uint64_t, bool> memo_;
    bool eval(StateMask s, Formula f);
};

bool supports(const NeighborhoodModel& m, StateMask s, Formula f);
bool true_at(const NeighborhoodModel& m, int world, Formula f);
StateMask truth_set(const NeighborhoodModel& m, Formula f);

// True iff support at every state of m coincides with truth at each world.
bool is_truth_conditional_on(const NeighborhoodModel& m, Formula f);

struct EntailmentResult {
    bool holds = true;
    // Counterexample when holds is false: the listed model (by index) and the
    // canonically least state supporting all premises but not the conclusion.
    int model_index = -1;
    StateMask state = 0;
};

EntailmentResult entails_on_models(std::span<const Formula> premises, Formula conclusion,
                                   std::span<const NeighborhoodModel> models);

struct Countermodel {
    NeighborhoodModel model;
    StateMask state;
};

// First (model, state) in enumeration order where all premises hold but the
// conclusion does not. The atom signature is taken from the formulas.
std::optional<Countermodel> find_countermodel(std::span<const Formula> premises,
                                              Formula conclusion, int max_worlds,
                                              bool allow_empty,
                                              const EnumerationLimits& limits = {});

// Truth of "if antecedent were the case, consequent would be": vacuous when no
// neighborhood meets the antecedent's truth set, otherwise some neighborhood
// must meet it inside the consequent's truth set. Computed both from that
// clause and from the defining formula; the two must agree.
bool counterfactual_truth(const NeighborhoodModel& m, int world, Formula antecedent,
                          Formula consequent);

// Random formula generation, restricted to the sub-languages whose modalities
// are the given ones.
enum class Fragment {
    Full,         // => anywhere
    Kite,         // <+> only
    Window,       // [+] only
    KiteWindow,   // both unary modalities
    YieldsDecl,   // => with declarative consequents only
};

struct GenOptions {
    Fragment fragment = Fragment::Full;
    bool declarative_only = false;
    bool include_odot = false;
};

Formula random_formula(std::mt19937& rng, const AtomSignature& atoms, int max_depth,
                       const GenOptions& options = {});

}  // namespace inqnl
