#pragma once

#include <span>

namespace l0screen {

/// k-th and (k+1)-st largest entries of a multiset, 1 <= k <= n.
/// delta_k1 is -infinity when k == n.
struct KthPair {
  double delta_k;
  double delta_k1;
};

/// Expected linear time: randomized quickselect with a fixed seed.
KthPair kth_largest_pair(std::span<const double> values, int k);

/// Sum of the k largest entries (0 for k <= 0), linear expected time.
double sum_k_largest(std::span<const double> values, int k);

}  // namespace l0screen
