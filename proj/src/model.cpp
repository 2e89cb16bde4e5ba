#include "inqnl/model.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace inqnl {

int popcount(StateMask s) { return std::popcount(s); }
bool state_subset(StateMask a, StateMask b) { return (a & ~b) == 0; }

bool state_less(StateMask a, StateMask b) {
    while (a != 0 && b != 0) {
        int la = std::countr_zero(a);
        int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

namespace {
std::vector<StateMask> states_ordered(StateMask full, bool include_empty) {
    std::vector<StateMask> out;
    for (StateMask t = include_empty ? 0 : 1; t <= full; ++t)
        if (state_subset(t, full)) out.push_back(t);
    std::sort(out.begin(), out.end(), state_less);
    return out;
}
}  // namespace

ClosureKind closure_kind_from_name(std::string_view name) {
    if (name == "up") return ClosureKind::Up;
    if (name == "down") return ClosureKind::Down;
    if (name == "convex") return ClosureKind::Convex;
    if (name == "union") return ClosureKind::Union;
    throw ArgError("unknown closure kind: " + std::string(name));
}

std::string_view to_string(ClosureKind k) {
    switch (k) {
        case ClosureKind::Up: return "up";
        case ClosureKind::Down: return "down";
        case ClosureKind::Convex: return "convex";
        case ClosureKind::Union: return "union";
    }
    return "?";
}

namespace {
struct CondName {
    FrameCondition cond;
    std::string_view name;
};
constexpr CondName kCondNames[] = {
    {FrameCondition::DownwardMonotonicity, "downward-monotonicity"},
    {FrameCondition::FiniteUnionClosure, "finite-union-closure"},
    {FrameCondition::Reflexivity, "reflexivity"},
    {FrameCondition::NonTriviality, "non-triviality"},
    {FrameCondition::Decreasingness, "decreasingness"},
    {FrameCondition::Increasingness, "increasingness"},
    {FrameCondition::UpwardMonotonicity, "upward-monotonicity"},
    {FrameCondition::Convexity, "convexity"},
    {FrameCondition::FiniteIntersectionClosure, "finite-intersection-closure"},
    {FrameCondition::FullUnionClosure, "full-union-closure"},
    {FrameCondition::FullIntersectionClosure, "full-intersection-closure"},
    {FrameCondition::Nestedness, "nestedness"},
    {FrameCondition::WeakCentering, "weak-centering"},
};
}  // namespace

FrameCondition frame_condition_from_name(std::string_view name) {
    for (const auto& c : kCondNames)
        if (c.name == name) return c.cond;
    throw ArgError("unknown frame condition: " + std::string(name));
}

std::string_view to_string(FrameCondition c) {
    for (const auto& n : kCondNames)
        if (n.cond == c) return n.name;
    return "?";
}

NeighborhoodModel::NeighborhoodModel(std::vector<std::string> world_names,
                                     AtomSignature signature, bool allow_empty_neighborhoods)
    : worlds(std::move(world_names)),
      atoms(std::move(signature)),
      allow_empty(allow_empty_neighborhoods) {
    if (worlds.size() > static_cast<std::size_t>(kMaxWorlds))
        throw CapError("models are capped at " + std::to_string(kMaxWorlds) + " worlds");
    sigma.assign(worlds.size(), {});
    valuation.assign(atoms.size(), 0);
}

int NeighborhoodModel::world_index(std::string_view name) const {
    auto i = find_world(name);
    if (!i) throw ArgError("unknown world: " + std::string(name));
    return *i;
}

std::optional<int> NeighborhoodModel::find_world(std::string_view name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

void NeighborhoodModel::set_atom(int world, int atom, bool value) {
    if (value)
        valuation[atom] |= (1u << world);
    else
        valuation[atom] &= ~(1u << world);
}

void NeighborhoodModel::add_neighborhood(int world, StateMask s) {
    auto& fam = sigma[world];
    auto it = std::lower_bound(fam.begin(), fam.end(), s, state_less);
    if (it == fam.end() || *it != s) fam.insert(it, s);
}

bool NeighborhoodModel::has_neighborhood(int world, StateMask s) const {
    const auto& fam = sigma[world];
    auto it = std::lower_bound(fam.begin(), fam.end(), s, state_less);
    return it != fam.end() && *it == s;
}

void NeighborhoodModel::normalize() {
    for (auto& fam : sigma) {
        std::sort(fam.begin(), fam.end(), state_less);
        fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    }
}

StateMask NeighborhoodModel::state_from_names(std::string_view csv) const {
    StateMask s = 0;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        std::string_view part = csv.substr(start, end - start);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (!part.empty()) s |= (1u << world_index(part));
        if (end == csv.size()) break;
        start = end + 1;
    }
    return s;
}

std::vector<std::string> NeighborhoodModel::state_names(StateMask s) const {
    std::vector<std::string> out;
    for (int w = 0; w < world_count(); ++w)
        if ((s >> w) & 1u) out.push_back(worlds[w]);
    return out;
}

std::vector<std::string> NeighborhoodModel::validate() const {
    std::vector<std::string> issues = load_issues;
    std::set<std::string_view> seen;
    for (const auto& w : worlds)
        if (!seen.insert(w).second) issues.push_back("duplicate world name: " + w);
    if (worlds.empty()) issues.push_back("model has no worlds");
    StateMask full = full_mask();
    for (int w = 0; w < world_count(); ++w) {
        for (StateMask s : sigma[w]) {
            if (!state_subset(s, full))
                issues.push_back("neighborhood of " + worlds[w] + " is not a subset of the universe");
            if (s == 0 && !allow_empty)
                issues.push_back("empty neighborhood of " + worlds[w] +
                                 " but empty neighborhoods are disallowed");
        }
    }
    return issues;
}

std::vector<StateMask> NeighborhoodModel::underlying_kripke() const {
    std::vector<StateMask> succ(worlds.size(), 0);
    for (int w = 0; w < world_count(); ++w)
        for (StateMask s : sigma[w]) succ[w] |= s;
    return succ;
}

NeighborhoodModel NeighborhoodModel::closure(ClosureKind kind) const {
    NeighborhoodModel out = *this;
    StateMask full = full_mask();
    for (int w = 0; w < world_count(); ++w) {
        const auto& fam = sigma[w];
        std::vector<StateMask> next;
        // Closures range over nonempty states; an empty neighborhood already
        // present is kept but never introduced.
        bool keep_empty = std::find(fam.begin(), fam.end(), 0u) != fam.end();
        for (StateMask t = 1; t <= full; ++t) {
            if (!state_subset(t, full)) continue;
            bool in = false;
            switch (kind) {
                case ClosureKind::Up:
                    for (StateMask s : fam)
                        if (state_subset(s, t)) { in = true; break; }
                    break;
                case ClosureKind::Down:
                    for (StateMask s : fam)
                        if (state_subset(t, s)) { in = true; break; }
                    break;
                case ClosureKind::Convex:
                    for (StateMask s : fam) {
                        if (!state_subset(s, t)) continue;
                        for (StateMask s2 : fam)
                            if (state_subset(t, s2)) { in = true; break; }
                        if (in) break;
                    }
                    break;
                case ClosureKind::Union: {
                    // t is a union of a subfamily iff it is the union of all
                    // members below it and every bit is covered.
                    StateMask covered = 0;
                    bool any = false;
                    for (StateMask s : fam)
                        if (state_subset(s, t)) { covered |= s; any = true; }
                    in = any && covered == t;
                    break;
                }
            }
            if (in) next.push_back(t);
        }
        if (keep_empty) next.push_back(0);
        std::sort(next.begin(), next.end(), state_less);
        out.sigma[w] = std::move(next);
    }
    return out;
}

FrameCheckResult NeighborhoodModel::check_frame_condition(FrameCondition cond,
                                                          std::optional<int> only_world) const {
    StateMask full = full_mask();
    auto kripke = underlying_kripke();
    std::vector<StateMask> all_nonempty = states_ordered(full, false);

    FrameCheckResult bad;
    bad.holds = false;

    for (int w = 0; w < world_count(); ++w) {
        if (only_world && *only_world != w) continue;
        const auto& fam = sigma[w];
        bad.world = w;
        bad.states.clear();
        bad.successor.reset();
        bad.missing.reset();
        switch (cond) {
            case FrameCondition::DownwardMonotonicity:
                for (StateMask s : fam)
                    for (StateMask t : all_nonempty)
                        if (state_subset(t, s) && !has_neighborhood(w, t)) {
                            bad.states = {s};
                            bad.missing = t;
                            return bad;
                        }
                break;
            case FrameCondition::FiniteUnionClosure:
                for (StateMask s : fam)
                    for (StateMask t : fam)
                        if (!has_neighborhood(w, s | t)) {
                            bad.states = {s, t};
                            bad.missing = s | t;
                            return bad;
                        }
                break;
            case FrameCondition::Reflexivity:
                if (!((kripke[w] >> w) & 1u)) return bad;
                break;
            case FrameCondition::NonTriviality:
                if (fam.empty()) return bad;
                break;
            case FrameCondition::Decreasingness:
                for (int v = 0; v < world_count(); ++v) {
                    if (!((kripke[w] >> v) & 1u)) continue;
                    for (StateMask s : sigma[v])
                        if (!has_neighborhood(w, s)) {
                            bad.successor = v;
                            bad.states = {s};
                            bad.missing = s;
                            return bad;
                        }
                }
                break;
            case FrameCondition::Increasingness:
                for (int v = 0; v < world_count(); ++v) {
                    if (!((kripke[w] >> v) & 1u)) continue;
                    for (StateMask s : fam)
                        if (!has_neighborhood(v, s)) {
                            bad.successor = v;
                            bad.states = {s};
                            bad.missing = s;
                            return bad;
                        }
                }
                break;
            case FrameCondition::UpwardMonotonicity:
                for (StateMask s : fam)
                    for (StateMask t : all_nonempty)
                        if (state_subset(s, t) && !has_neighborhood(w, t)) {
                            bad.states = {s};
                            bad.missing = t;
                            return bad;
                        }
                break;
            case FrameCondition::Convexity:
                for (StateMask s : fam)
                    for (StateMask s2 : fam)
                        for (StateMask t : all_nonempty)
                            if (state_subset(s, t) && state_subset(t, s2) &&
                                !has_neighborhood(w, t)) {
                                bad.states = {s, s2};
                                bad.missing = t;
                                return bad;
                            }
                break;
            case FrameCondition::FiniteIntersectionClosure:
                for (StateMask s : fam)
                    for (StateMask t : fam)
                        if (!has_neighborhood(w, s & t)) {
                            bad.states = {s, t};
                            bad.missing = s & t;
                            return bad;
                        }
                break;
            case FrameCondition::FullUnionClosure:
            case FrameCondition::FullIntersectionClosure: {
                // Quantifies over nonempty subfamilies.
                if (fam.size() > 20)
                    throw CapError("full closure checks are capped at 20 neighborhoods per world");
                std::uint32_t count = 1u << fam.size();
                for (std::uint32_t pick = 1; pick < count; ++pick) {
                    StateMask acc = cond == FrameCondition::FullUnionClosure ? 0 : full;
                    std::vector<StateMask> chosen;
                    for (std::size_t k = 0; k < fam.size(); ++k)
                        if ((pick >> k) & 1u) {
                            chosen.push_back(fam[k]);
                            if (cond == FrameCondition::FullUnionClosure)
                                acc |= fam[k];
                            else
                                acc &= fam[k];
                        }
                    if (!has_neighborhood(w, acc)) {
                        bad.states = std::move(chosen);
                        bad.missing = acc;
                        return bad;
                    }
                }
                break;
            }
            case FrameCondition::Nestedness:
                for (StateMask s : fam)
                    for (StateMask t : fam)
                        if (!state_subset(s, t) && !state_subset(t, s)) {
                            bad.states = {s, t};
                            return bad;
                        }
                break;
            case FrameCondition::WeakCentering:
                for (StateMask s : fam)
                    if (!((s >> w) & 1u)) {
                        bad.states = {s};
                        return bad;
                    }
                break;
        }
    }
    FrameCheckResult ok;
    ok.holds = true;
    return ok;
}

}  // namespace inqnl
