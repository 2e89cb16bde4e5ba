#pragma once

#include <optional>
#include <vector>

#include "inqnl/model.hpp"

namespace inqnl {

// Boolean relation between the worlds of two models.
class Relation {
public:
    Relation() = default;
    Relation(int rows, int cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool at(int i, int j) const { return bits_[i * cols_ + j] != 0; }
    void set(int i, int j, bool v) { bits_[i * cols_ + j] = v ? 1 : 0; }
    bool operator==(const Relation&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<char> bits_;
};

// Egli-Milner lifting: every world of a matches one of b and conversely.
bool em_lift(const Relation& rel, StateMask a, StateMask b);

// Refinement chain Z0 ⊇ Z1 ⊇ ... between two models: Z0 is atomic
// equivalence, and each refinement keeps the pairs whose neighborhoods match
// under the lifting of the previous layer. On finite models the chain
// stabilizes and the stable layer is the greatest bisimulation.
struct StratifiedBisim {
    const NeighborhoodModel* left = nullptr;
    const NeighborhoodModel* right = nullptr;
    std::vector<Relation> layers;
    bool stabilized = false;
    // Least k with Z_k = Z_{k+1}; meaningful when stabilized.
    int stabilization_index = -1;

    const Relation& layer(int n) const;  // clamps to the stable layer
    bool world_pair(int w_left, int w_right, std::optional<int> depth) const;
    bool state_pair(StateMask left_state, StateMask right_state, std::optional<int> depth) const;
};

// Computes layers up to the given depth, or until stable when depth is empty.
// Requires models over the same atom signature.
StratifiedBisim stratified_bisim(const NeighborhoodModel& m1, const NeighborhoodModel& m2,
                                 std::optional<int> depth = {});

// World-pointed and state-pointed bisimilarity queries; depth empty means
// full bisimilarity.
bool bisimilar(const NeighborhoodModel& m1, int w1, const NeighborhoodModel& m2, int w2,
               std::optional<int> depth = {});
bool bisimilar_states(const NeighborhoodModel& m1, StateMask s1, const NeighborhoodModel& m2,
                      StateMask s2, std::optional<int> depth = {});

}  // namespace inqnl
