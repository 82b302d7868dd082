#pragma once

#include <Eigen/Core>
#include <vector>

namespace ganlab {

struct Assignment {
  std::vector<int> col_of_row;  // col_of_row[i] = column matched to row i
  double cost;                  // sum of matched entries (order-independent)
};

/// Exact minimum-cost assignment on a dense square cost matrix via shortest
/// augmenting paths with dual potentials (Jonker-Volgenant style, O(n^3)
/// worst case). Uses only comparisons and additions of cost entries, so the
/// optimal matching is invariant under positive rescaling of the costs.
Assignment solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace ganlab
