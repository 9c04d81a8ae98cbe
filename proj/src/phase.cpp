#include "dtorsion/phase.hpp"

#include <charconv>

#include "dtorsion/error.hpp"

namespace dtorsion {

Phase::Phase(std::int64_t k, std::int64_t modulus) : n_(modulus) {
  require(modulus > 0, ErrorKind::Argument, "phase modulus must be positive");
  k_ = mod_floor(k, modulus);
}

Phase Phase::parse(std::string_view text) {
  auto slash = text.find('/');
  require(slash != std::string_view::npos, ErrorKind::Parse,
          "phase must be written k/N, got '" + std::string(text) + "'");
  std::int64_t k = 0, n = 0;
  auto num = text.substr(0, slash), den = text.substr(slash + 1);
  auto r1 = std::from_chars(num.data(), num.data() + num.size(), k);
  auto r2 = std::from_chars(den.data(), den.data() + den.size(), n);
  require(r1.ec == std::errc() && r1.ptr == num.data() + num.size() && r2.ec == std::errc() &&
              r2.ptr == den.data() + den.size(),
          ErrorKind::Parse, "malformed phase '" + std::string(text) + "'");
  require(n > 0, ErrorKind::Parse, "phase modulus must be positive in '" + std::string(text) + "'");
  return Phase(k, n);
}

Phase Phase::operator*(const Phase& o) const {
  if (n_ == o.n_) {
    Phase r = *this;
    r.k_ += o.k_;
    if (r.k_ >= n_) r.k_ -= n_;
    return r;
  }
  std::int64_t l = std::lcm(n_, o.n_);
  return Phase(k_ * (l / n_) + o.k_ * (l / o.n_), l);
}

Phase Phase::pow(std::int64_t e) const {
  // k * e mod n without overflow for the moduli used here (n < 2^31)
  return Phase(mod_floor(k_, n_) * mod_floor(e, n_) % n_, n_);
}

Phase Phase::reduced() const {
  std::int64_t g = std::gcd(k_, n_);
  return Phase(k_ / g, n_ / g);
}

Phase Phase::over(std::int64_t modulus) const {
  Phase r = reduced();
  require(modulus > 0 && modulus % r.n_ == 0, ErrorKind::Argument,
          "phase " + str() + " is not expressible over modulus " + std::to_string(modulus));
  return Phase(r.k_ * (modulus / r.n_), modulus);
}

bool Phase::operator==(const Phase& o) const {
  if (n_ == o.n_) return k_ == o.k_;
  Phase a = reduced(), b = o.reduced();
  return a.k_ == b.k_ && a.n_ == b.n_;
}

std::string Phase::str() const {
  Phase r = reduced();
  return std::to_string(r.k_) + "/" + std::to_string(r.n_);
}

}  // namespace dtorsion
