#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dtorsion {

using Rational = mpq_class;

/// Element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N), kept
/// as a polynomial in zeta_N of degree below phi(N) (reduced modulo the N-th
/// cyclotomic polynomial), so equal numbers have equal coefficient vectors.
class Cyclotomic {
 public:
  explicit Cyclotomic(std::int64_t modulus = 1);

  static Cyclotomic rational(std::int64_t modulus, const Rational& q);
  /// zeta_N^k.
  static Cyclotomic root(std::int64_t modulus, std::int64_t k);

  std::int64_t modulus() const { return n_; }
  /// Coefficients of 1, zeta, zeta^2, ... (length phi(N)).
  const std::vector<Rational>& coefficients() const { return c_; }

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& q) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }

  /// Same number viewed in Q(zeta_M); M must be a multiple of N.
  Cyclotomic over(std::int64_t modulus) const;

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  /// Compares values; operands of different moduli are lifted to a common field.
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  /// "5/2", or a sum such as "1/2 - 1/2*e(1/4)" with e(k/N) = zeta_N^k.
  std::string str() const;

 private:
  static Cyclotomic from_poly(std::int64_t modulus, std::vector<Rational> poly);
  void check_same(const Cyclotomic& o) const;
  std::int64_t n_;
  std::vector<Rational> c_;
};

/// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n);

}  // namespace dtorsion
