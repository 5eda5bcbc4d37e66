#pragma once

#include <cstddef>
#include <vector>

namespace polylo {

/// {0, 1, ..., k−1}, the lexicographically first k-subset.
inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t t = 0; t < k; ++t) c[t] = t;
  return c;
}

/// Advances c to the next k-subset of [0, n) in lexicographic order.
/// Returns false (leaving c unspecified) once c was the last one.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t t = k;
  while (t > 0) {
    --t;
    if (c[t] < n - k + t) {
      ++c[t];
      for (std::size_t u = t + 1; u < k; ++u) c[u] = c[u - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Calls f(c) for every k-subset of [0, n) in lexicographic order; stops
/// early when f returns false.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  auto c = first_combination(k);
  do {
    if (!f(static_cast<const std::vector<std::size_t>&>(c))) return;
  } while (next_combination(c, n));
}

}  // namespace polylo
