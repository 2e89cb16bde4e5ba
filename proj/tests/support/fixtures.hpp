#pragma once

#include <string>

#include "inqnl/model.hpp"

namespace inqnl::testing {

// The three-pointed fixture: w1 sees the four valuation singletons, w2 adds
// their union, w3 also adds the two p-settled pairs. The pictured worlds
// carry all-false valuations; the four subscripted worlds spell out the four
// valuations of {p, q}.
inline NeighborhoodModel fig1_model() {
    NeighborhoodModel m({"w1", "w2", "w3", "wpq", "wpnq", "wnpq", "wnpnq"},
                        AtomSignature({"p", "q"}));
    int wpq = 3, wpnq = 4, wnpq = 5, wnpnq = 6;
    m.set_atom(wpq, 0, true);
    m.set_atom(wpq, 1, true);
    m.set_atom(wpnq, 0, true);
    m.set_atom(wnpq, 1, true);
    StateMask all4 = (1u << wpq) | (1u << wpnq) | (1u << wnpq) | (1u << wnpnq);
    for (int w : {0, 1, 2})
        for (int v : {wpq, wpnq, wnpq, wnpnq}) m.add_neighborhood(w, 1u << v);
    m.add_neighborhood(1, all4);
    m.add_neighborhood(2, all4);
    m.add_neighborhood(2, (1u << wpq) | (1u << wpnq));
    m.add_neighborhood(2, (1u << wnpq) | (1u << wnpnq));
    return m;
}

inline std::string data_path(const std::string& name) {
    return std::string(INQNL_DATA_DIR) + "/" + name;
}

// Chain of the given length: v0 -> {v1} -> ... -> {vk}, terminal family
// empty, all atoms false.
inline NeighborhoodModel chain_model(int length, const AtomSignature& atoms) {
    std::vector<std::string> names;
    for (int i = 0; i <= length; ++i) names.push_back("v" + std::to_string(i));
    NeighborhoodModel m(names, atoms);
    for (int i = 0; i < length; ++i) m.add_neighborhood(i, 1u << (i + 1));
    return m;
}

}  // namespace inqnl::testing
