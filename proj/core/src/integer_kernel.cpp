#include <limits>
#include <numeric>

#include "polylo/detail/integer_image.hpp"
#include "polylo/errors.hpp"
#include "polylo/minor_oracle.hpp"

namespace polylo::detail {

namespace {

constexpr std::int64_t kPartLimit = std::int64_t{1} << 62;

bool fits(const mpz_class& z) {
  return z.fits_slong_p() && z < kPartLimit && z > -kPartLimit;
}

}  // namespace

std::optional<IntegerImage> integer_image(std::span<const Scalar> entries) {
  mpz_class lcm = 1;
  bool real = true;
  for (const auto& s : entries) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.re().get_den_mpz_t());
    if (!s.is_real()) {
      real = false;
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.im().get_den_mpz_t());
    }
  }
  IntegerImage img;
  img.re.reserve(entries.size());
  if (!real) img.im.reserve(entries.size());
  for (const auto& s : entries) {
    mpz_class a = s.re().get_num() * (lcm / s.re().get_den());
    if (!fits(a)) return std::nullopt;
    img.re.push_back(a.get_si());
    if (!real) {
      mpz_class b = s.im().get_num() * (lcm / s.im().get_den());
      if (!fits(b)) return std::nullopt;
      img.im.push_back(b.get_si());
    }
  }
  return img;
}

std::optional<std::size_t> int_rank(std::vector<int128>& a, std::size_t rows, std::size_t cols) {
  auto at = [&](std::size_t i, std::size_t j) -> int128& { return a[i * cols + j]; };
  std::size_t r = 0;
  int128 prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(at(r, j), at(p, j));
    }
    const int128 piv = at(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const int128 lead = at(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        int128 x;
        int128 y;
        if (__builtin_mul_overflow(at(i, j), piv, &x)) return std::nullopt;
        if (__builtin_mul_overflow(lead, at(r, j), &y)) return std::nullopt;
        if (__builtin_sub_overflow(x, y, &x)) return std::nullopt;
        at(i, j) = x / prev;  // exact by Sylvester's identity
      }
      at(i, c) = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

}  // namespace polylo::detail

namespace polylo {

MinorOracle::MinorOracle(Matrix m) : m_(std::move(m)) {
  auto img = detail::integer_image(m_.entries());
  if (img && img->real()) image_ = std::move(img);
}

std::size_t MinorOracle::rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  for (auto i : rows) {
    if (i >= m_.rows()) throw DimensionError("MinorOracle: row index out of range");
  }
  for (auto j : cols) {
    if (j >= m_.cols()) throw DimensionError("MinorOracle: column index out of range");
  }
  if (image_) {
    std::vector<detail::int128> block(rows.size() * cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = 0; b < cols.size(); ++b) {
        block[a * cols.size() + b] = image_->re[rows[a] * m_.cols() + cols[b]];
      }
    }
    if (auto r = detail::int_rank(block, rows.size(), cols.size())) return *r;
  }
  return polylo::rank(submatrix(m_, IndexSet(rows.begin(), rows.end()), IndexSet(cols.begin(), cols.end())));
}

}  // namespace polylo
