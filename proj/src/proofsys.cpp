#include "inqnl/proofsys.hpp"

#include <algorithm>

#include "inqnl/semantics.hpp"

namespace inqnl {

namespace {

struct SchemaDef {
    Schema id;
    std::string_view name;
    std::string_view pattern;         // metavariable atoms: p q r a
    std::string_view declarative;     // metavariables with the declarative side condition
};

// Patterns are written in the surface syntax and parsed once; the atoms
// p, q, r, a act as metavariables, with a constrained to declaratives.
constexpr SchemaDef kSchemas[] = {
    {Schema::K, "K", "p -> (q -> p)", ""},
    {Schema::S, "S", "(p -> (q -> r)) -> ((p -> q) -> (p -> r))", ""},
    {Schema::AndE1, "AndE1", "p & q -> p", ""},
    {Schema::AndE2, "AndE2", "p & q -> q", ""},
    {Schema::AndI, "AndI", "p -> (q -> p & q)", ""},
    {Schema::OrI1, "OrI1", "p -> p // q", ""},
    {Schema::OrI2, "OrI2", "q -> p // q", ""},
    {Schema::OrE, "OrE", "(p -> r) -> ((q -> r) -> (p // q -> r))", ""},
    {Schema::EFQ, "EFQ", "bot -> p", ""},
    {Schema::DDN, "DDN", "~~a -> a", "a"},
    {Schema::Split, "Split", "(a -> p // q) -> (a -> p) // (a -> q)", "a"},
    {Schema::Trans, "Trans", "(p => q) & (q => r) -> (p => r)", ""},
    {Schema::RConj, "RConj", "(p => q) & (p => r) -> (p => q & r)", ""},
    {Schema::LDisj, "LDisj", "(p => r) & (q => r) -> (p // q => r)", ""},
    {Schema::DownMono, "DownMono", "(p => q) -> [+](p -> q)", ""},
    {Schema::FinUnion, "FinUnion", "(a => p // q) -> (a => p) \\/ (a => q)", "a"},
    {Schema::Refl, "Refl", "[+]a -> a", "a"},
    {Schema::NonTriv, "NonTriv", "~[+]bot", ""},
    {Schema::Decr, "Decr", "(p => q) -> [+](p => q)", ""},
    {Schema::Incr, "Incr", "~(p => q) -> [+]~(p => q)", ""},
};

const SchemaDef& def_of(Schema s) {
    for (const auto& d : kSchemas)
        if (d.id == s) return d;
    throw ArgError("unknown schema");
}

Formula pattern_of(Schema s) {
    static std::map<Schema, Formula> cache;
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    Formula f = parse_formula(def_of(s).pattern);
    cache.emplace(s, f);
    return f;
}

bool is_metavar(Formula f) {
    if (f.kind() != Kind::Atom) return false;
    const std::string& n = f.atom_name();
    return n == "p" || n == "q" || n == "r" || n == "a";
}

bool unify(Formula pattern, Formula target, std::map<std::string, Formula>& subst) {
    if (is_metavar(pattern)) {
        auto it = subst.find(pattern.atom_name());
        if (it != subst.end()) return it->second == target;
        subst.emplace(pattern.atom_name(), target);
        return true;
    }
    if (pattern.kind() != target.kind()) return false;
    switch (pattern.kind()) {
        case Kind::Atom: return pattern.atom_name() == target.atom_name();
        case Kind::Bottom:
        case Kind::Odot: return true;
        default:
            return unify(pattern.left(), target.left(), subst) &&
                   unify(pattern.right(), target.right(), subst);
    }
}

}  // namespace

SchemaSet base_schemas() {
    return {Schema::K,     Schema::S,    Schema::AndE1, Schema::AndE2, Schema::AndI,
            Schema::OrI1,  Schema::OrI2, Schema::OrE,   Schema::EFQ,   Schema::DDN,
            Schema::Split, Schema::Trans, Schema::RConj, Schema::LDisj};
}

SchemaSet frame_schemas() {
    return {Schema::DownMono, Schema::FinUnion, Schema::Refl,
            Schema::NonTriv,  Schema::Decr,     Schema::Incr};
}

Schema schema_from_name(std::string_view name) {
    for (const auto& d : kSchemas)
        if (d.name == name) return d.id;
    throw ArgError("unknown axiom schema: " + std::string(name));
}

std::string_view to_string(Schema s) { return def_of(s).name; }

FrameCondition paired_condition(Schema s) {
    switch (s) {
        case Schema::DownMono: return FrameCondition::DownwardMonotonicity;
        case Schema::FinUnion: return FrameCondition::FiniteUnionClosure;
        case Schema::Refl: return FrameCondition::Reflexivity;
        case Schema::NonTriv: return FrameCondition::NonTriviality;
        case Schema::Decr: return FrameCondition::Decreasingness;
        case Schema::Incr: return FrameCondition::Increasingness;
        default: throw ArgError("schema has no paired frame condition");
    }
}

bool matches_schema(Formula f, Schema s, std::map<std::string, Formula>* subst_out) {
    std::map<std::string, Formula> subst;
    if (!unify(pattern_of(s), f, subst)) return false;
    const SchemaDef& d = def_of(s);
    for (char c : d.declarative) {
        auto it = subst.find(std::string(1, c));
        if (it != subst.end() && !it->second.is_declarative()) return false;
    }
    if (subst_out) *subst_out = std::move(subst);
    return true;
}

std::optional<AxiomMatch> match_axiom(Formula f, const SchemaSet& enabled) {
    for (const auto& d : kSchemas) {
        if (std::find(enabled.begin(), enabled.end(), d.id) == enabled.end()) continue;
        std::map<std::string, Formula> subst;
        if (matches_schema(f, d.id, &subst)) return AxiomMatch{d.id, std::move(subst)};
    }
    return std::nullopt;
}

CheckReport check_derivation(const Derivation& d, std::span<const Formula> premises,
                             const SchemaSet& enabled) {
    CheckReport report;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Step& step = d.steps[i];
        int number = static_cast<int>(i) + 1;
        auto fail = [&](const std::string& msg) {
            report.ok = false;
            report.failed_step = number;
            report.message = msg;
            return report;
        };
        if (!step.formula.valid()) return fail("step has no formula");
        switch (step.by) {
            case Step::By::Premise: {
                bool found = false;
                for (Formula p : premises)
                    if (p == step.formula) {
                        found = true;
                        break;
                    }
                if (!found) return fail("formula is not among the premises");
                break;
            }
            case Step::By::Axiom: {
                if (std::find(enabled.begin(), enabled.end(), step.axiom) == enabled.end())
                    return fail(std::string("axiom ") + std::string(to_string(step.axiom)) +
                                " is not enabled");
                if (!matches_schema(step.formula, step.axiom))
                    return fail("formula does not instantiate schema " +
                                std::string(to_string(step.axiom)));
                break;
            }
            case Step::By::MP: {
                if (step.from < 1 || step.from > static_cast<int>(i) || step.via < 1 ||
                    step.via > static_cast<int>(i))
                    return fail("MP references must point at earlier steps");
                Formula minor = d.steps[step.from - 1].formula;
                Formula major = d.steps[step.via - 1].formula;
                if (major.kind() != Kind::Impl)
                    return fail("MP major premise is not an implication");
                if (major.left() != minor)
                    return fail("MP minor premise does not match the implication antecedent");
                if (major.right() != step.formula)
                    return fail("MP conclusion does not match the implication consequent");
                break;
            }
            case Step::By::CN: {
                if (step.from < 1 || step.from > static_cast<int>(i))
                    return fail("CN reference must point at an earlier step");
                Formula source = d.steps[step.from - 1].formula;
                if (source.kind() != Kind::Impl) return fail("CN source is not an implication");
                if (step.formula.kind() != Kind::Yields ||
                    step.formula.left() != source.left() ||
                    step.formula.right() != source.right())
                    return fail("CN conclusion must turn the implication into a modal conditional");
                break;
            }
        }
    }
    if (d.steps.empty()) {
        report.ok = false;
        report.failed_step = 0;
        report.message = "empty derivation";
        return report;
    }
    report.ok = true;
    report.failed_step = 0;
    report.end_formula = d.steps.back().formula;
    return report;
}

Formula turnstile_goal(std::span<const Formula> left, std::span<const Formula> right) {
    std::vector<Formula> l(left.begin(), left.end());
    std::vector<Formula> r(right.begin(), right.end());
    return Formula::impl(conj_all(l), inq_disj_all(r));
}

CheckReport check_turnstile(std::span<const Formula> left, std::span<const Formula> right,
                            const Derivation& d, const SchemaSet& enabled) {
    CheckReport report = check_derivation(d, {}, enabled);
    if (!report.ok) return report;
    Formula goal = turnstile_goal(left, right);
    if (report.end_formula != goal) {
        report.ok = false;
        report.failed_step = static_cast<int>(d.steps.size());
        report.message = "derivation ends in " + print_formula(report.end_formula) +
                         " but the sequent requires " + print_formula(goal);
        report.end_formula = Formula();
    }
    return report;
}

// ---------------------------------------------------------------------------
// Soundness fuzzing
// ---------------------------------------------------------------------------

FuzzReport soundness_fuzz(const FuzzConfig& config) {
    FuzzReport report;
    std::mt19937 rng(config.seed);

    std::vector<NeighborhoodModel> models =
        enumerate_models_collect(config.model_bound, config.atoms, false);
    report.models_swept = static_cast<int>(models.size());

    auto instantiate = [&](Schema s) {
        std::map<std::string, Formula> subst;
        GenOptions decl_options{Fragment::Full, true, false};
        for (const char* v : {"p", "q", "r"})
            subst.emplace(v, random_formula(rng, config.atoms, 2, {}));
        subst.emplace("a", random_formula(rng, config.atoms, 2, decl_options));
        std::function<Formula(Formula)> apply = [&](Formula f) -> Formula {
            switch (f.kind()) {
                case Kind::Atom: {
                    auto it = subst.find(f.atom_name());
                    return it == subst.end() ? f : it->second;
                }
                case Kind::Bottom:
                case Kind::Odot: return f;
                case Kind::Conj: return Formula::conj(apply(f.left()), apply(f.right()));
                case Kind::InqDisj: return Formula::inq_disj(apply(f.left()), apply(f.right()));
                case Kind::Impl: return Formula::impl(apply(f.left()), apply(f.right()));
                case Kind::Yields: return Formula::yields(apply(f.left()), apply(f.right()));
            }
            return f;
        };
        return apply(pattern_of(s));
    };

    auto sweep = [&](Formula f, const std::vector<const NeighborhoodModel*>& against,
                     const std::string& context) {
        ++report.formulas_checked;
        for (const auto* m : against) {
            Evaluator ev(*m);
            StateMask full = m->full_mask();
            for (StateMask s = 0; s <= full; ++s) {
                if (!state_subset(s, full)) continue;
                if (!ev.supports(s, f)) {
                    report.violations.push_back({f, m->to_json_text(0), s, context});
                    break;
                }
            }
        }
    };

    std::vector<const NeighborhoodModel*> all_models;
    for (const auto& m : models) all_models.push_back(&m);

    // Base schema instances must be valid outright.
    for (Schema s : base_schemas())
        for (int i = 0; i < config.schema_samples; ++i)
            sweep(instantiate(s), all_models, std::string(to_string(s)) + " instance");

    // Frame axiom instances must be valid on models satisfying their condition.
    for (Schema s : config.frame_axioms) {
        FrameCondition cond = paired_condition(s);
        std::vector<const NeighborhoodModel*> filtered;
        for (const auto& m : models)
            if (m.check_frame_condition(cond).holds) filtered.push_back(&m);
        for (int i = 0; i < config.schema_samples; ++i)
            sweep(instantiate(s), filtered,
                  std::string(to_string(s)) + " on " + std::string(to_string(cond)) + " models");
    }

    // Random derivations from the base system; every derived formula must be
    // valid on every model.
    Derivation deriv;
    SchemaSet base = base_schemas();
    std::uniform_int_distribution<std::size_t> schema_pick(0, base.size() - 1);
    std::uniform_int_distribution<int> move_pick(0, 3);
    while (static_cast<int>(deriv.steps.size()) < config.derivation_steps) {
        int move = move_pick(rng);
        if (move <= 1 || deriv.steps.empty()) {
            Step step;
            step.by = Step::By::Axiom;
            step.axiom = base[schema_pick(rng)];
            step.formula = instantiate(step.axiom);
            deriv.steps.push_back(step);
        } else if (move == 2) {
            // MP: look for an implication whose antecedent is already proved.
            bool applied = false;
            for (std::size_t j = deriv.steps.size(); j-- > 0 && !applied;) {
                Formula major = deriv.steps[j].formula;
                if (major.kind() != Kind::Impl) continue;
                for (std::size_t i = 0; i < deriv.steps.size() && !applied; ++i) {
                    if (deriv.steps[i].formula != major.left()) continue;
                    Step step;
                    step.by = Step::By::MP;
                    step.from = static_cast<int>(i) + 1;
                    step.via = static_cast<int>(j) + 1;
                    step.formula = major.right();
                    deriv.steps.push_back(step);
                    applied = true;
                }
            }
            if (!applied) continue;
        } else {
            bool applied = false;
            for (std::size_t j = deriv.steps.size(); j-- > 0;) {
                Formula source = deriv.steps[j].formula;
                if (source.kind() != Kind::Impl) continue;
                Step step;
                step.by = Step::By::CN;
                step.from = static_cast<int>(j) + 1;
                step.formula = Formula::yields(source.left(), source.right());
                deriv.steps.push_back(step);
                applied = true;
                break;
            }
            if (!applied) continue;
        }
    }
    CheckReport check = check_derivation(deriv, {}, base);
    if (!check.ok) {
        report.violations.push_back(
            {Formula::bottom(), "", 0,
             "generated derivation failed to check at step " + std::to_string(check.failed_step) +
                 ": " + check.message});
        return report;
    }
    for (const Step& step : deriv.steps) sweep(step.formula, all_models, "derived formula");

    return report;
}

}  // namespace inqnl
