#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace dtorsion {

/// exp(2 pi i k / N), stored as the residue k mod N. Products add exponents
/// after rescaling both sides to the lcm of the moduli.
class Phase {
 public:
  Phase() = default;
  Phase(std::int64_t k, std::int64_t modulus);

  static Phase one() { return {}; }
  /// Parses "k/N" (k may be negative).
  static Phase parse(std::string_view text);

  std::int64_t exponent() const { return k_; }
  std::int64_t modulus() const { return n_; }

  Phase operator*(const Phase& o) const;
  Phase operator/(const Phase& o) const { return *this * o.inverse(); }
  Phase& operator*=(const Phase& o) { return *this = *this * o; }
  Phase inverse() const {
    Phase r = *this;
    if (r.k_ != 0) r.k_ = n_ - r.k_;
    return r;
  }
  Phase pow(std::int64_t e) const;

  /// Lowest terms; the identity phase becomes 0/1.
  Phase reduced() const;
  /// Same phase over a modulus that must be a multiple of the reduced modulus.
  Phase over(std::int64_t modulus) const;
  bool is_one() const { return k_ == 0; }

  /// Equality of the underlying roots of unity.
  bool operator==(const Phase& o) const;
  bool operator!=(const Phase& o) const { return !(*this == o); }

  /// Reduced fraction of a full turn, e.g. "1/2".
  std::string str() const;

 private:
  std::int64_t k_ = 0;
  std::int64_t n_ = 1;
};

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace dtorsion
