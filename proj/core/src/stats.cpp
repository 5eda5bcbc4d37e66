#include "polylo/stats.hpp"
#include "polylo/detail/integer_image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

namespace polylo {

double normal_quantile_two_sided(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must be in (0,1)");
  boost::math::normal standard;
  return boost::math::quantile(standard, 0.5 + level / 2.0);
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
  const double z = normal_quantile_two_sided(level);
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // The Wilson bounds are exact at the degenerate ends.
  if (hits == 0) out.low = 0.0;
  if (hits == trials) out.high = 1.0;
  return out;
}

double binomial_cdf(std::uint64_t k, std::uint64_t trials, double p) {
  if (k >= trials) return 1.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  return boost::math::cdf(dist, static_cast<double>(k));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  detail::uint128 acc = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    acc = acc * (n - k + j) / j;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace polylo
