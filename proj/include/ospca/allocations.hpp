#pragma once

#include <vector>

namespace ospca {

/// All integer tuples k_1 >= ... >= k_r >= 1 with sum k_total and k_1 <= p,
/// in lexicographically increasing order.
std::vector<std::vector<int>> enumerate_allocations(int k_total, int r, int p);

/// KL divergence of the raw allocation tuple from the uniform tuple
/// (k/r,...,k/r), normalized by the maximum over all feasible allocations.
double kl_asymmetry(const std::vector<int>& allocation, int k_total, int r, int p);

}  // namespace ospca
