#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polylo {

/// Exact Gaussian rational a + b·i with a, b ∈ ℚ.
///
/// Both parts are kept in lowest terms with positive denominators, so equality
/// is structural. Real numbers are the im() == 0 subcase.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  /// Parses "p", "p/q", "-p/q"; throws DomainError on malformed input or q = 0.
  static Scalar parse_rational(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_gaussian_integer() const {
    return re_.get_den() == 1 && im_.get_den() == 1;
  }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|² = a² + b², always rational.
  mpq_class norm_squared() const { return re_ * re_ + im_ * im_; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // DomainError on division by zero

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "p/q" for reals; "a+bi" style otherwise. Used for display and CSV cells.
  std::string to_string() const;

  std::size_t hash() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// Total order on Scalars: lexicographic on (re, im). Used for deterministic
/// tie-breaking and as the ordering of value distributions.
struct CanonicalLess {
  bool operator()(const Scalar& a, const Scalar& b) const {
    int c = cmp(a.re(), b.re());
    if (c != 0) return c < 0;
    return cmp(a.im(), b.im()) < 0;
  }
};

std::size_t hash_value(const mpz_class& z);
std::size_t hash_value(const mpq_class& q);

/// Canonical "p/q" (or "p" when q = 1) form of a rational.
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(std::string_view text);

/// Exact x^k for k ≥ 0.
mpq_class pow(const mpq_class& x, unsigned k);
Scalar pow(const Scalar& x, unsigned k);

}  // namespace polylo

template <>
struct std::hash<polylo::Scalar> {
  std::size_t operator()(const polylo::Scalar& s) const noexcept { return s.hash(); }
};
