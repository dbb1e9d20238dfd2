#pragma once

// Small helpers for sums over symmetric groups.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "holodet/error.hpp"

namespace holodet {

inline long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Cycles of a permutation in one-line notation, each starting at its
// smallest element, ordered by that element. Fixed points are included.
inline std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& sigma) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(sigma[j])) {
      seen[j] = true;
      cyc.push_back(static_cast<int>(j));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

inline int permutation_sign(const std::vector<int>& sigma) {
  int sign = 1;
  for (const auto& c : permutation_cycles(sigma)) {
    if (c.size() % 2 == 0) sign = -sign;
  }
  return sign;
}

// Calls visit(sigma, sign) for every permutation of {0..n-1} in
// lexicographic order.
template <class Visitor>
void for_each_permutation(int n, Visitor&& visit) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    visit(static_cast<const std::vector<int>&>(sigma), permutation_sign(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace holodet
