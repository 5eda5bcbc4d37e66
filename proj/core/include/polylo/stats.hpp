#pragma once

#include <cstdint>

namespace polylo {

struct Interval {
  double low = 0.0;
  double high = 1.0;
  bool contains(double x) const { return low <= x && x <= high; }
};

/// Wilson score interval for a binomial proportion hits/trials at the given
/// two-sided confidence level (e.g. 0.99). trials must be positive.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double level);

/// Two-sided standard normal quantile z with P(|Z| ≤ z) = level.
double normal_quantile_two_sided(double level);

/// Exact P[Binomial(trials, p) ≤ k], computed in long double.
double binomial_cdf(std::uint64_t k, std::uint64_t trials, double p);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);  // saturates at UINT64_MAX

}  // namespace polylo
