#include "ospca/allocations.hpp"

#include "ospca/types.hpp"

#include <algorithm>
#include <cmath>

namespace ospca {

namespace {

void recurse(int remaining, int parts, int max_part, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (remaining >= 1 && remaining <= max_part) {
      cur.push_back(remaining);
      std::vector<int> sorted(cur.rbegin(), cur.rend());  // nonincreasing
      out.push_back(std::move(sorted));
      cur.pop_back();
    }
    return;
  }
  // build nondecreasing tuples (k_r <= ... <= k_1), reversed on emit
  const int lo = cur.empty() ? 1 : cur.back();
  for (int v = lo; v * parts <= remaining && v <= max_part; ++v) {
    cur.push_back(v);
    recurse(remaining - v, parts - 1, max_part, cur, out);
    cur.pop_back();
  }
}

double kl_raw(const std::vector<int>& alloc, double uniform) {
  double v = 0.0;
  for (int k : alloc) v += k * std::log(k / uniform);
  return v;
}

}  // namespace

std::vector<std::vector<int>> enumerate_allocations(int k_total, int r, int p) {
  if (k_total < r || r < 1) throw BudgetIllPosed("k_total must be at least r");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  recurse(k_total, r, p, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

double kl_asymmetry(const std::vector<int>& allocation, int k_total, int r, int p) {
  const double uniform = double(k_total) / r;
  const double mine = kl_raw(allocation, uniform);
  double max_kl = 0.0;
  for (const auto& alloc : enumerate_allocations(k_total, r, p))
    max_kl = std::max(max_kl, kl_raw(alloc, uniform));
  if (max_kl <= 0.0) return 0.0;
  return mine / max_kl;
}

}  // namespace ospca
