#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polylo/polynomial.hpp"
#include "polylo/scalar.hpp"
#include "polylo/stats.hpp"
#include "polylo/tensor.hpp"

namespace polylo {

enum class CoordinateKind { rademacher, lazy, shifted };

struct CoordinateLaw {
  CoordinateKind kind = CoordinateKind::rademacher;
  Scalar shift;  // shifted only: values shift ± 1

  /// Atoms with their probabilities, values ascending.
  std::vector<std::pair<Scalar, mpq_class>> support() const;
};

/// Independent coordinates. Coordinates without an explicit law use the default.
class RandomModel {
 public:
  RandomModel() = default;
  explicit RandomModel(CoordinateLaw default_law, std::vector<CoordinateLaw> per_coordinate = {})
      : default_(std::move(default_law)), per_(std::move(per_coordinate)) {}

  static RandomModel rademacher() { return RandomModel({CoordinateKind::rademacher, {}}); }
  static RandomModel lazy() { return RandomModel({CoordinateKind::lazy, {}}); }
  static RandomModel shifted(const std::vector<Scalar>& shifts);

  const CoordinateLaw& law(std::size_t i) const { return i < per_.size() ? per_[i] : default_; }
  std::string name() const;

 private:
  CoordinateLaw default_;
  std::vector<CoordinateLaw> per_;
};

/// "rademacher", "lazy" or "shifted" (every coordinate shifted by `shift`).
RandomModel parse_model(std::string_view name, const Scalar& shift = Scalar());

using ValueDistribution = std::map<Scalar, mpq_class, CanonicalLess>;

inline constexpr std::uint64_t kDefaultOutcomeCap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultValueCap = std::uint64_t{1} << 22;

/// Full distribution of f(ξ) by enumeration over the variables f uses.
/// CapExceeded when the outcome count exceeds the cap.
ValueDistribution exact_distribution(const PolynomialSpec& f, const RandomModel& model,
                                     std::uint64_t cap = kDefaultOutcomeCap);

struct PointProbabilityReport {
  Scalar z;
  bool exact = true;
  mpq_class probability = 0;  // exact mode
  // Monte Carlo mode
  double estimate = 0.0;
  Interval interval;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  double level = 0.99;
};

/// Largest atom; ties go to the smallest value in (re, im) order.
PointProbabilityReport argmax(const ValueDistribution& dist);

PointProbabilityReport max_point_probability(const PolynomialSpec& f, const RandomModel& model,
                                             std::uint64_t cap = kDefaultOutcomeCap);

/// Distribution of Σ aᵢξᵢ by sequential convolution. CapExceeded when the
/// number of distinct partial sums exceeds the cap.
ValueDistribution linear_distribution(std::span<const Scalar> coeffs, const RandomModel& model,
                                      std::uint64_t cap = kDefaultValueCap);
PointProbabilityReport linear_max_point_probability(std::span<const Scalar> coeffs, const RandomModel& model,
                                                    std::uint64_t cap = kDefaultValueCap);

/// Frequency of f(ξ) = z with a Wilson interval at `level`.
PointProbabilityReport monte_carlo_point_probability(const PolynomialSpec& f, const Scalar& z,
                                                     const RandomModel& model, std::uint64_t samples,
                                                     std::uint64_t seed, double level = 0.99);

/// Pr[collapse(T, x) is reducible] with x distributed by the model on the
/// last axis. DomainError if d < 3.
mpq_class collapse_reducible_probability(const Tensor& t, const RandomModel& model,
                                         std::uint64_t cap = kDefaultOutcomeCap);

}  // namespace polylo
