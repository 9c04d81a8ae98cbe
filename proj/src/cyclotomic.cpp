#include "dtorsion/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <mutex>

#include "dtorsion/error.hpp"
#include "dtorsion/phase.hpp"

namespace dtorsion {

namespace {

constexpr std::int64_t kMaxCyclotomicModulus = 1 << 16;

// Exact division of integer polynomials by a monic divisor.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<std::int64_t> q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    std::int64_t c = num[i];
    q[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return q;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1 && n <= kMaxCyclotomicModulus, ErrorKind::Limit,
          "cyclotomic modulus out of range: " + std::to_string(n));
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<std::int64_t> p(std::size_t(n) + 1, 0);
  p[0] = -1;
  p[std::size_t(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(std::int64_t modulus) : n_(modulus) {
  c_.assign(cyclotomic_polynomial(modulus).size() - 1, Rational(0));
}

Cyclotomic Cyclotomic::from_poly(std::int64_t modulus, std::vector<Rational> poly) {
  const auto& phi = cyclotomic_polynomial(modulus);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    Rational c = poly[i];
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg, Rational(0));
  Cyclotomic out(modulus);
  out.c_ = std::move(poly);
  return out;
}

Cyclotomic Cyclotomic::rational(std::int64_t modulus, const Rational& q) {
  Cyclotomic out(modulus);
  out.c_[0] = q;
  return out;
}

Cyclotomic Cyclotomic::root(std::int64_t modulus, std::int64_t k) {
  std::vector<Rational> poly(std::size_t(modulus), Rational(0));
  poly[std::size_t(mod_floor(k, modulus))] = 1;
  return from_poly(modulus, std::move(poly));
}

void Cyclotomic::check_same(const Cyclotomic& o) const {
  require(n_ == o.n_, ErrorKind::Argument, "cyclotomic numbers over different fields");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  check_same(o);
  Cyclotomic r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same(o);
  if (c_.size() == 1) return o * c_[0];
  std::vector<Rational> poly(2 * c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) poly[i + j] += c_[i] * o.c_[j];
  }
  return from_poly(n_, std::move(poly));
}

Cyclotomic Cyclotomic::operator*(const Rational& q) const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

Cyclotomic Cyclotomic::over(std::int64_t modulus) const {
  require(modulus % n_ == 0, ErrorKind::Argument,
          "Q(zeta_" + std::to_string(n_) + ") does not embed in Q(zeta_" + std::to_string(modulus) + ")");
  const std::int64_t f = modulus / n_;
  std::vector<Rational> poly(std::size_t(modulus), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) poly[i * std::size_t(f)] = c_[i];
  return from_poly(modulus, std::move(poly));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  const std::int64_t m = std::lcm(n_, o.n_);
  return over(m).c_ == o.over(m).c_;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_[0];
}

std::string Cyclotomic::str() const {
  if (auto q = as_rational()) return q->get_str();
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += "e(" + Phase(std::int64_t(i), n_).str() + ")";
    }
  }
  return out;
}

}  // namespace dtorsion
