#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polylo/scalar.hpp"

namespace polylo::detail {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

// Entries multiplied by the lcm of all denominators. Scaling by a nonzero
// constant preserves singularity, rank and rank ≤ 1, which is all the fast
// paths ask. Parts are bounded by 2^62 in magnitude so products fit in __int128.
struct IntegerImage {
  std::vector<std::int64_t> re;
  std::vector<std::int64_t> im;  // empty when every entry is real
  bool real() const { return im.empty(); }
};

std::optional<IntegerImage> integer_image(std::span<const Scalar> entries);

// Fraction-free elimination in __int128 on a gathered row-major block.
// nullopt on overflow; the caller falls back to exact arithmetic.
std::optional<std::size_t> int_rank(std::vector<int128>& block, std::size_t rows, std::size_t cols);

}  // namespace polylo::detail
