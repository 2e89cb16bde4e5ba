#include "inqnl/bisim.hpp"

namespace inqnl {

bool em_lift(const Relation& rel, StateMask a, StateMask b) {
    for (int i = 0; i < rel.rows(); ++i) {
        if (!((a >> i) & 1u)) continue;
        bool matched = false;
        for (int j = 0; j < rel.cols() && !matched; ++j)
            if (((b >> j) & 1u) && rel.at(i, j)) matched = true;
        if (!matched) return false;
    }
    for (int j = 0; j < rel.cols(); ++j) {
        if (!((b >> j) & 1u)) continue;
        bool matched = false;
        for (int i = 0; i < rel.rows() && !matched; ++i)
            if (((a >> i) & 1u) && rel.at(i, j)) matched = true;
        if (!matched) return false;
    }
    return true;
}

namespace {

bool forth_back(const NeighborhoodModel& m1, int w1, const NeighborhoodModel& m2, int w2,
                const Relation& prev) {
    for (StateMask s : m1.sigma[w1]) {
        bool matched = false;
        for (StateMask s2 : m2.sigma[w2])
            if (em_lift(prev, s, s2)) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    for (StateMask s2 : m2.sigma[w2]) {
        bool matched = false;
        for (StateMask s : m1.sigma[w1])
            if (em_lift(prev, s, s2)) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

StratifiedBisim stratified_bisim(const NeighborhoodModel& m1, const NeighborhoodModel& m2,
                                 std::optional<int> depth) {
    if (!(m1.atoms == m2.atoms))
        throw ArgError("bisimulation requires models over the same atom signature");

    StratifiedBisim out;
    out.left = &m1;
    out.right = &m2;

    int n1 = m1.world_count(), n2 = m2.world_count();
    Relation z0(n1, n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            bool same = true;
            for (std::size_t a = 0; a < m1.atoms.size() && same; ++a)
                same = m1.atom_true(i, static_cast<int>(a)) ==
                       m2.atom_true(j, static_cast<int>(a));
            z0.set(i, j, same);
        }
    out.layers.push_back(z0);

    auto refine = [&](const Relation& prev) {
        Relation next(n1, n2);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                next.set(i, j, prev.at(i, j) && forth_back(m1, i, m2, j, prev));
        return next;
    };

    if (depth) {
        for (int k = 1; k <= *depth; ++k) {
            Relation next = refine(out.layers.back());
            if (next == out.layers.back() && !out.stabilized) {
                out.stabilized = true;
                out.stabilization_index = k - 1;
            }
            out.layers.push_back(std::move(next));
        }
        // A bounded run may or may not have reached the fixpoint.
        if (!out.stabilized && out.layers.size() >= 2 &&
            out.layers.back() == out.layers[out.layers.size() - 2]) {
            out.stabilized = true;
            out.stabilization_index = static_cast<int>(out.layers.size()) - 2;
        }
    } else {
        while (true) {
            Relation next = refine(out.layers.back());
            if (next == out.layers.back()) {
                out.stabilized = true;
                out.stabilization_index = static_cast<int>(out.layers.size()) - 1;
                break;
            }
            out.layers.push_back(std::move(next));
        }
    }
    return out;
}

const Relation& StratifiedBisim::layer(int n) const {
    if (n < 0) throw ArgError("negative bisimulation depth");
    if (n < static_cast<int>(layers.size())) return layers[n];
    if (stabilized) return layers.back();
    throw ArgError("bisimulation layer " + std::to_string(n) + " was not computed");
}

bool StratifiedBisim::world_pair(int w_left, int w_right, std::optional<int> depth) const {
    const Relation& r = depth ? layer(*depth) : layers.back();
    if (!depth && !stabilized) throw ArgError("full bisimilarity requires an until-stable run");
    return r.at(w_left, w_right);
}

bool StratifiedBisim::state_pair(StateMask left_state, StateMask right_state,
                                 std::optional<int> depth) const {
    const Relation& r = depth ? layer(*depth) : layers.back();
    if (!depth && !stabilized) throw ArgError("full bisimilarity requires an until-stable run");
    return em_lift(r, left_state, right_state);
}

bool bisimilar(const NeighborhoodModel& m1, int w1, const NeighborhoodModel& m2, int w2,
               std::optional<int> depth) {
    StratifiedBisim b = stratified_bisim(m1, m2, depth);
    return b.world_pair(w1, w2, depth);
}

bool bisimilar_states(const NeighborhoodModel& m1, StateMask s1, const NeighborhoodModel& m2,
                      StateMask s2, std::optional<int> depth) {
    StratifiedBisim b = stratified_bisim(m1, m2, depth);
    return b.state_pair(s1, s2, depth);
}

}  // namespace inqnl
