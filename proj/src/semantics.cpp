#include "inqnl/semantics.hpp"

#include <algorithm>
#include <functional>

namespace inqnl {

namespace {
// Canonically least state of m supporting every premise but not the
// conclusion, if any.
std::optional<StateMask> least_refuting_state(const NeighborhoodModel& m,
                                              std::span<const Formula> premises,
                                              Formula conclusion) {
    Evaluator ev(m);
    StateMask full = m.full_mask();
    bool found = false;
    StateMask least = 0;
    for (StateMask s = 0; s <= full; ++s) {
        if (!state_subset(s, full)) continue;
        bool all_premises = true;
        for (Formula p : premises)
            if (!ev.supports(s, p)) {
                all_premises = false;
                break;
            }
        if (!all_premises || ev.supports(s, conclusion)) continue;
        if (!found || state_less(s, least)) {
            found = true;
            least = s;
        }
    }
    if (!found) return std::nullopt;
    return least;
}
}  // namespace

namespace {
std::uint64_t memo_key(Formula f, StateMask s) {
    return (f.id() << (kMaxWorlds + 1)) | static_cast<std::uint64_t>(s);
}
}  // namespace

bool Evaluator::supports(StateMask s, Formula f) {
    if (!state_subset(s, m_->full_mask()))
        throw ArgError("state mentions worlds outside the model");
    return eval(s, f);
}

bool Evaluator::true_at(int world, Formula f) {
    if (world < 0 || world >= m_->world_count()) throw ArgError("world index out of range");
    return eval(1u << world, f);
}

StateMask Evaluator::truth_set(Formula f) {
    StateMask out = 0;
    for (int w = 0; w < m_->world_count(); ++w)
        if (eval(1u << w, f)) out |= (1u << w);
    return out;
}

bool Evaluator::eval(StateMask s, Formula f) {
    std::uint64_t key = memo_key(f, s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    bool result = false;
    switch (f.kind()) {
        case Kind::Atom: {
            auto idx = m_->atoms.index_of(f.atom_name());
            if (!idx) throw ArgError("atom not in the model's signature: " + f.atom_name());
            result = state_subset(s, m_->atom_mask(*idx));
            break;
        }
        case Kind::Bottom:
            result = s == 0;
            break;
        case Kind::Conj:
            result = eval(s, f.left()) && eval(s, f.right());
            break;
        case Kind::InqDisj:
            result = eval(s, f.left()) || eval(s, f.right());
            break;
        case Kind::Impl: {
            if (popcount(s) > kMaxWorlds)
                throw CapError("implication clause enumerates substates; state too large");
            Formula l = f.left(), r = f.right();
            result = true;
            // All substates t of s, including s itself and the empty state.
            StateMask t = s;
            while (true) {
                if (eval(t, l) && !eval(t, r)) {
                    result = false;
                    break;
                }
                if (t == 0) break;
                t = (t - 1) & s;
            }
            break;
        }
        case Kind::Yields: {
            // Modal formulas are truth conditional: support is truth at every
            // member world, and truth quantifies over the world's neighborhoods.
            result = true;
            for (int w = 0; w < m_->world_count() && result; ++w) {
                if (!((s >> w) & 1u)) continue;
                for (StateMask nb : m_->sigma[w]) {
                    if (eval(nb, f.left()) && !eval(nb, f.right())) {
                        result = false;
                        break;
                    }
                }
            }
            break;
        }
        case Kind::Odot: {
            result = true;
            for (int w = 0; w < m_->world_count() && result; ++w) {
                if (!((s >> w) & 1u)) continue;
                if (!m_->has_neighborhood(w, 0)) result = false;
            }
            break;
        }
    }
    memo_.emplace(key, result);
    return result;
}

bool supports(const NeighborhoodModel& m, StateMask s, Formula f) {
    Evaluator ev(m);
    return ev.supports(s, f);
}

bool true_at(const NeighborhoodModel& m, int world, Formula f) {
    Evaluator ev(m);
    return ev.true_at(world, f);
}

StateMask truth_set(const NeighborhoodModel& m, Formula f) {
    Evaluator ev(m);
    return ev.truth_set(f);
}

bool is_truth_conditional_on(const NeighborhoodModel& m, Formula f) {
    Evaluator ev(m);
    StateMask truths = ev.truth_set(f);
    StateMask full = m.full_mask();
    for (StateMask s = 0; s <= full; ++s) {
        if (!state_subset(s, full)) continue;
        if (ev.supports(s, f) != state_subset(s, truths)) return false;
    }
    return true;
}

EntailmentResult entails_on_models(std::span<const Formula> premises, Formula conclusion,
                                   std::span<const NeighborhoodModel> models) {
    for (std::size_t i = 0; i < models.size(); ++i) {
        auto state = least_refuting_state(models[i], premises, conclusion);
        if (state) return {false, static_cast<int>(i), *state};
    }
    return {};
}

std::optional<Countermodel> find_countermodel(std::span<const Formula> premises,
                                              Formula conclusion, int max_worlds,
                                              bool allow_empty, const EnumerationLimits& limits) {
    std::vector<Formula> all(premises.begin(), premises.end());
    all.push_back(conclusion);
    AtomSignature sig = AtomSignature::of_formulas(all);
    if (sig.empty()) sig = AtomSignature({"p"});

    std::optional<Countermodel> found;
    enumerate_models(
        max_worlds, sig, allow_empty,
        [&](const NeighborhoodModel& m) {
            auto state = least_refuting_state(m, premises, conclusion);
            if (state) {
                found = Countermodel{m, *state};
                return false;
            }
            return true;
        },
        limits);
    return found;
}

bool counterfactual_truth(const NeighborhoodModel& m, int world, Formula antecedent,
                          Formula consequent) {
    if (!antecedent.is_declarative() || !consequent.is_declarative())
        throw ArgError("counterfactual arguments must be declarative");
    Evaluator ev(m);
    StateMask ante = ev.truth_set(antecedent);
    StateMask cons = ev.truth_set(consequent);

    bool vacuous = true;
    bool witness = false;
    for (StateMask nb : m.sigma[world]) {
        StateMask meet = nb & ante;
        if (meet != 0) {
            vacuous = false;
            if (state_subset(meet, cons)) witness = true;
        }
    }
    bool direct = vacuous || witness;

    bool via_formula = ev.true_at(world, Formula::counterfactual(antecedent, consequent));
    if (direct != via_formula)
        throw Error("counterfactual evaluation routes disagree; this is a bug");
    return direct;
}

// ---------------------------------------------------------------------------
// Random formulas
// ---------------------------------------------------------------------------

Formula random_formula(std::mt19937& rng, const AtomSignature& atoms, int max_depth,
                       const GenOptions& options) {
    if (atoms.empty()) throw ArgError("random_formula needs a nonempty signature");
    auto pick_atom = [&]() {
        std::uniform_int_distribution<std::size_t> d(0, atoms.size() - 1);
        return Formula::atom(atoms.name(d(rng)));
    };

    // Production codes: 0 atom, 1 bot, 2 conj, 3 impl, 4 inq disj, 5 modal,
    // 6 second modal (KiteWindow), 7 odot.
    std::function<Formula(int, bool)> gen = [&](int depth, bool decl) -> Formula {
        std::vector<int> prods = {0, 0, 1};
        if (options.include_odot && options.fragment == Fragment::Full) prods.push_back(7);
        if (depth > 0) {
            prods.insert(prods.end(), {2, 2, 3, 3});
            if (!decl) prods.insert(prods.end(), {4, 4});
            prods.insert(prods.end(), {5, 5, 5});
            if (options.fragment == Fragment::KiteWindow) prods.push_back(6);
        }
        std::uniform_int_distribution<std::size_t> d(0, prods.size() - 1);
        switch (prods[d(rng)]) {
            case 0: return pick_atom();
            case 1: return Formula::bottom();
            case 7: return Formula::odot();
            case 2: return Formula::conj(gen(depth - 1, decl), gen(depth - 1, decl));
            case 3: return Formula::impl(gen(depth - 1, decl), gen(depth - 1, decl));
            case 4: return Formula::inq_disj(gen(depth - 1, false), gen(depth - 1, false));
            case 6: return Formula::kite(gen(depth - 1, false));
            case 5:
                switch (options.fragment) {
                    case Fragment::Kite: return Formula::kite(gen(depth - 1, false));
                    case Fragment::Window: return Formula::window(gen(depth - 1, false));
                    case Fragment::KiteWindow: return Formula::window(gen(depth - 1, false));
                    case Fragment::YieldsDecl:
                        return Formula::yields(gen(depth - 1, false), gen(depth - 1, true));
                    case Fragment::Full:
                        return Formula::yields(gen(depth - 1, false), gen(depth - 1, false));
                }
        }
        return pick_atom();
    };
    return gen(max_depth, options.declarative_only);
}

}  // namespace inqnl
