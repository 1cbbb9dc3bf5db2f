#include "l0screen/selection.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "l0screen/instance.hpp"

namespace l0screen {

namespace {

// Rearranges v so that v[target] holds the (target+1)-th largest value,
// everything before it is >= and everything after it is <=.
void select_descending(std::vector<double>& v, std::size_t target) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::size_t lo = 0;
  std::size_t hi = v.size();
  while (hi - lo > 1) {
    const double pivot = v[lo + rng() % (hi - lo)];
    // Three-way partition: [lo, gt) > pivot, [gt, i) == pivot, [lt, hi) < pivot.
    std::size_t gt = lo;
    std::size_t i = lo;
    std::size_t lt = hi;
    while (i < lt) {
      if (v[i] > pivot) {
        std::swap(v[i++], v[gt++]);
      } else if (v[i] < pivot) {
        std::swap(v[i], v[--lt]);
      } else {
        ++i;
      }
    }
    if (target < gt) {
      hi = gt;
    } else if (target < lt) {
      return;
    } else {
      lo = lt;
    }
  }
}

}  // namespace

KthPair kth_largest_pair(std::span<const double> values, int k) {
  const auto n = static_cast<int>(values.size());
  if (k < 1 || k > n)
    throw InvalidInput("k=" + std::to_string(k) + " outside [1, " +
                       std::to_string(n) + "]");
  std::vector<double> v(values.begin(), values.end());
  const auto t = static_cast<std::size_t>(k - 1);
  select_descending(v, t);
  KthPair out{v[t], -std::numeric_limits<double>::infinity()};
  if (k < n) out.delta_k1 = *std::max_element(v.begin() + k, v.end());
  return out;
}

double sum_k_largest(std::span<const double> values, int k) {
  const auto n = static_cast<int>(values.size());
  if (k <= 0 || n == 0) return 0.0;
  double sum = 0.0;
  if (k >= n) {
    for (double d : values) sum += d;
    return sum;
  }
  std::vector<double> v(values.begin(), values.end());
  select_descending(v, static_cast<std::size_t>(k - 1));
  for (int i = 0; i < k; ++i) sum += v[static_cast<std::size_t>(i)];
  return sum;
}

}  // namespace l0screen
