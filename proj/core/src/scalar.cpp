#include "polylo/scalar.hpp"

#include <cctype>

#include "polylo/errors.hpp"

namespace polylo {

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("Scalar: division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  // (a+bi)/(c+di) = (a+bi)(c-di) / (c²+d²)
  mpq_class den = o.norm_squared();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(10); }

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = !s.empty();
  std::size_t slash = 0;
  for (std::size_t k = 0; k < s.size() && valid; ++k) {
    char c = s[k];
    if (c == '/') {
      valid = ++slash == 1 && k > 0 && k + 1 < s.size();
    } else if (c == '-' || c == '+') {
      valid = k == 0 || s[k - 1] == '/';
    } else {
      valid = std::isdigit(static_cast<unsigned char>(c)) != 0;
    }
  }
  if (!valid) throw DomainError("malformed rational: '" + s + "'");
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Scalar Scalar::parse_rational(std::string_view text) { return Scalar(polylo::parse_rational(text)); }

std::string Scalar::to_string() const {
  if (is_real()) return rational_to_string(re_);
  std::string out;
  if (sgn(re_) != 0) out = rational_to_string(re_);
  if (sgn(im_) > 0 && !out.empty()) out += '+';
  if (im_ == 1) {
    out += "i";
  } else if (im_ == -1) {
    out += "-i";
  } else {
    out += rational_to_string(im_) + "i";
  }
  return out;
}

std::size_t hash_value(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < limbs; ++k) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), k)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t hash_value(const mpq_class& q) {
  std::size_t h = hash_value(q.get_num());
  return h ^ (hash_value(q.get_den()) + 0x517cc1b727220a95ULL + (h << 6) + (h >> 2));
}

std::size_t Scalar::hash() const {
  std::size_t h = hash_value(re_);
  return h ^ (hash_value(im_) * 31 + 0x2545f4914f6cdd1dULL + (h << 6) + (h >> 2));
}

mpq_class pow(const mpq_class& x, unsigned k) {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

Scalar pow(const Scalar& x, unsigned k) {
  Scalar out(1);
  Scalar base = x;
  while (k > 0) {
    if (k & 1U) out *= base;
    base *= base;
    k >>= 1U;
  }
  return out;
}

}  // namespace polylo
