#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace polylo {

/// Deterministic 64-bit generator.
///
/// A (seed, stream) pair is expanded with std::seed_seq into the state of a
/// std::mt19937_64; both algorithms are fixed by the C++ standard, so a given
/// pair produces the same sequence on every conforming platform. Bounded
/// integers are drawn by rejection from the raw 64-bit output (the standard
/// distributions are implementation-defined and are never used here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  bool coin() { return (next() >> 63U) != 0; }

  /// k distinct indices from [0, n), returned in increasing order.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t k = items.size(); k > 1; --k) {
      std::size_t j = static_cast<std::size_t>(below(k));
      std::swap(items[k - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polylo
