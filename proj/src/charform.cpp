#include "inqnl/charform.hpp"

#include <algorithm>

namespace inqnl {

namespace {
void sort_dedup_formulas(std::vector<Formula>& v) {
    std::sort(v.begin(), v.end(), [](Formula a, Formula b) { return Formula::compare(a, b) < 0; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace

CharformBuilder::CharformBuilder(std::vector<const NeighborhoodModel*> pool,
                                 CharformLimits limits)
    : pool_(std::move(pool)), limits_(limits) {
    if (pool_.empty()) throw ArgError("characteristic formulas need a nonempty model pool");
    const AtomSignature& sig = pool_[0]->atoms;
    if (sig.empty()) throw ArgError("characteristic formulas need a nonempty atom signature");
    if (static_cast<int>(sig.size()) > limits_.max_atoms)
        throw CapError("characteristic formulas are capped at " +
                       std::to_string(limits_.max_atoms) + " atoms");
    for (const auto* m : pool_) {
        if (!(m->atoms == sig)) throw ArgError("pool models must share one atom signature");
        any_allow_empty_ = any_allow_empty_ || m->allow_empty;
    }

    std::size_t total_states = 0;
    for (std::size_t mi = 0; mi < pool_.size(); ++mi) {
        for (int w = 0; w < pool_[mi]->world_count(); ++w)
            for (StateMask s : pool_[mi]->sigma[w])
                if (s != 0) pool_states_.push_back({static_cast<int>(mi), s});
    }
    std::sort(pool_states_.begin(), pool_states_.end(), [](const StatePoint& a, const StatePoint& b) {
        if (a.model != b.model) return a.model < b.model;
        return state_less(a.state, b.state);
    });
    pool_states_.erase(std::unique(pool_states_.begin(), pool_states_.end(),
                                   [](const StatePoint& a, const StatePoint& b) {
                                       return a.model == b.model && a.state == b.state;
                                   }),
                       pool_states_.end());
    total_states = pool_states_.size();
    if (total_states > static_cast<std::size_t>(limits_.max_pool_states))
        throw CapError("pool has " + std::to_string(total_states) +
                       " neighborhood states; cap is " + std::to_string(limits_.max_pool_states));

    bisims_.resize(pool_.size());
    for (std::size_t i = 0; i < pool_.size(); ++i)
        for (std::size_t j = i; j < pool_.size(); ++j)
            bisims_[i].push_back(stratified_bisim(*pool_[i], *pool_[j]));
}

bool CharformBuilder::worlds_bisimilar(int m1, int w1, int m2, int w2, int n) const {
    if (m1 <= m2) return bisims_[m1][m2 - m1].layer(n).at(w1, w2);
    return bisims_[m2][m1 - m2].layer(n).at(w2, w1);
}

bool CharformBuilder::states_bisimilar(int m1, StateMask s1, int m2, StateMask s2, int n) const {
    if (m1 <= m2) return em_lift(bisims_[m1][m2 - m1].layer(n), s1, s2);
    return em_lift(bisims_[m2][m1 - m2].layer(n), s2, s1);
}

void CharformBuilder::ensure_level(int n) {
    if (n > limits_.max_depth) {
        // Rough tree-size estimate for the refusal message: each level
        // multiplies by the number of pool state classes.
        double est = 2.0 * static_cast<double>(pool_[0]->atoms.size());
        for (int k = 0; k < n; ++k)
            est *= 4.0 * static_cast<double>(pool_states_.size() + 1);
        throw CapError("characteristic formula depth " + std::to_string(n) + " exceeds cap " +
                       std::to_string(limits_.max_depth) + " (estimated term count " +
                       std::to_string(static_cast<std::uint64_t>(est)) + ")");
    }
    while (static_cast<int>(chi_.size()) <= n) {
        int level = static_cast<int>(chi_.size());
        std::vector<std::vector<Formula>> per_model;
        for (std::size_t mi = 0; mi < pool_.size(); ++mi) {
            const NeighborhoodModel& m = *pool_[mi];
            std::vector<Formula> per_world;
            for (int w = 0; w < m.world_count(); ++w) {
                if (level == 0) {
                    std::vector<Formula> lits;
                    for (std::size_t a = 0; a < m.atoms.size(); ++a) {
                        Formula atom = Formula::atom(m.atoms.name(a));
                        lits.push_back(m.atom_true(w, static_cast<int>(a)) ? atom
                                                                           : Formula::neg(atom));
                    }
                    per_world.push_back(conj_all(lits));
                    continue;
                }
                int prev = level - 1;
                std::vector<Formula> conjuncts;
                conjuncts.push_back(chi_[0][mi][w]);
                if (any_allow_empty_) {
                    Formula odot = Formula::odot();
                    conjuncts.push_back(m.has_neighborhood(w, 0) ? odot : Formula::neg(odot));
                }
                std::vector<Formula> positives;
                for (StateMask s : m.sigma[w])
                    if (s != 0) positives.push_back(build_pi({static_cast<int>(mi), s}, prev));
                sort_dedup_formulas(positives);

                // One representative per bisimilarity class of pool states
                // with no matching neighborhood here.
                std::vector<StatePoint> reps;
                std::vector<Formula> negatives;
                for (const StatePoint& sp : pool_states_) {
                    bool seen = false;
                    for (const StatePoint& r : reps)
                        if (states_bisimilar(r.model, r.state, sp.model, sp.state, prev)) {
                            seen = true;
                            break;
                        }
                    if (seen) continue;
                    reps.push_back(sp);
                    bool matched = false;
                    for (StateMask s : m.sigma[w])
                        if (s != 0 &&
                            states_bisimilar(static_cast<int>(mi), s, sp.model, sp.state, prev)) {
                            matched = true;
                            break;
                        }
                    if (!matched)
                        negatives.push_back(Formula::neg(build_pi(sp, prev)));
                }
                sort_dedup_formulas(negatives);
                conjuncts.insert(conjuncts.end(), positives.begin(), positives.end());
                conjuncts.insert(conjuncts.end(), negatives.begin(), negatives.end());
                per_world.push_back(conj_all(conjuncts));
            }
            per_model.push_back(std::move(per_world));
        }
        chi_.push_back(std::move(per_model));
    }
}

Formula CharformBuilder::build_pi(const StatePoint& sp, int n) {
    ensure_level(n);
    if (sp.state == 0) throw ArgError("state formulas require a nonempty state");
    std::vector<Formula> members;
    for (int w = 0; w < pool_[sp.model]->world_count(); ++w)
        if ((sp.state >> w) & 1u) members.push_back(chi_[n][sp.model][w]);
    sort_dedup_formulas(members);
    std::vector<Formula> negated;
    for (Formula f : members) negated.push_back(Formula::neg(f));
    return Formula::neg(Formula::yields(decl_or_all(members), inq_disj_all(negated)));
}

Formula CharformBuilder::chi_world(int model, int world, int n) {
    ensure_level(n);
    return chi_[n][model][world];
}

Formula CharformBuilder::pi_state(int model, StateMask state, int n) {
    return build_pi({model, state}, n);
}

Formula CharformBuilder::chi_state(int model, StateMask state, int n) {
    ensure_level(n);
    if (state == 0) return Formula::bottom();
    std::vector<Formula> members;
    for (int w = 0; w < pool_[model]->world_count(); ++w)
        if ((state >> w) & 1u) members.push_back(chi_[n][model][w]);
    sort_dedup_formulas(members);
    return decl_or_all(members);
}

Formula class_formula_worlds(CharformBuilder& builder, const std::vector<WorldPoint>& points,
                             int n) {
    if (points.empty()) throw ArgError("class formulas need at least one point");
    std::vector<Formula> disjuncts;
    for (const WorldPoint& p : points) disjuncts.push_back(builder.chi_world(p.model, p.world, n));
    std::sort(disjuncts.begin(), disjuncts.end(),
              [](Formula a, Formula b) { return Formula::compare(a, b) < 0; });
    disjuncts.erase(std::unique(disjuncts.begin(), disjuncts.end()), disjuncts.end());
    return decl_or_all(disjuncts);
}

Formula class_formula_states(CharformBuilder& builder, const std::vector<StatePoint>& points,
                             int n) {
    if (points.empty()) throw ArgError("class formulas need at least one point");
    std::vector<Formula> disjuncts;
    for (const StatePoint& p : points) disjuncts.push_back(builder.chi_state(p.model, p.state, n));
    std::sort(disjuncts.begin(), disjuncts.end(),
              [](Formula a, Formula b) { return Formula::compare(a, b) < 0; });
    disjuncts.erase(std::unique(disjuncts.begin(), disjuncts.end()), disjuncts.end());
    return inq_disj_all(disjuncts);
}

}  // namespace inqnl
