#include "dtorsion/torsion.hpp"

#include <algorithm>
#include <numeric>

#include "dtorsion/error.hpp"

namespace dtorsion {

namespace {

void require_degree(const Cochain& c, int p, const char* what) {
  require(c.degree() == p, ErrorKind::Argument,
          std::string(what) + " needs a " + std::to_string(p) + "-cochain, got degree " +
              std::to_string(c.degree()));
}

void require_element(const FiniteGroup& g, Element x) {
  require(x >= 0 && x < g.order(), ErrorKind::Argument,
          "element " + std::to_string(x) + " out of range for a group of order " +
              std::to_string(g.order()));
}

std::string sector_str(const Sector& s) {
  return "Z(" + std::to_string(s.g) + "," + std::to_string(s.h) + ")";
}

}  // namespace

Sector make_sector(const FiniteGroup& group, Element g, Element h) {
  require_element(group, g);
  require_element(group, h);
  require(group.commute(g, h), ErrorKind::Invalid,
          "elements " + std::to_string(g) + " and " + std::to_string(h) + " do not commute");
  return {g, h};
}

Phase epsilon(const Cochain& omega, Element g, Element h) {
  require_degree(omega, 2, "epsilon");
  make_sector(*omega.group(), g, h);
  return Phase(omega({g, h}) - omega({h, g}), omega.modulus());
}

std::vector<EpsilonEntry> epsilon_table(const Cochain& omega) {
  require_degree(omega, 2, "epsilon table");
  require(is_cocycle(omega), ErrorKind::Invalid, "epsilon table needs a 2-cocycle");
  std::vector<EpsilonEntry> out;
  for (auto [g, h] : commuting_pairs(*omega.group()))
    out.push_back({{g, h}, Phase(omega({g, h}) - omega({h, g}), omega.modulus())});
  return out;
}

std::vector<std::vector<Sector>> sector_orbits(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<char> seen(std::size_t(n) * n, 0);
  std::vector<std::vector<Sector>> out;
  for (auto [g, h] : commuting_pairs(group)) {
    if (seen[std::size_t(g) * n + h]) continue;
    std::vector<Sector> orbit;
    for (Element k = 0; k < n; ++k) {
      Element a = group.conjugate(k, g), b = group.conjugate(k, h);
      if (!seen[std::size_t(a) * n + b]) {
        seen[std::size_t(a) * n + b] = 1;
        orbit.push_back({a, b});
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Sector modular_transform(const FiniteGroup& group, Sector s, const Matrix2& m) {
  require(m.det() == 1, ErrorKind::Argument,
          "modular transformation needs determinant 1, got " + std::to_string(m.det()));
  make_sector(group, s.g, s.h);
  return {group.mul(group.pow(s.g, m.a), group.pow(s.h, m.c)),
          group.mul(group.pow(s.g, m.b), group.pow(s.h, m.d))};
}

// ---------------------------------------------------------------------------

std::string Partition::symbolic() const {
  std::string body;
  for (const auto& t : terms) {
    Phase r = t.phase.reduced();
    bool minus = r.modulus() == 2;
    std::string term;
    if (t.multiplicity != 1) term += std::to_string(t.multiplicity) + "*";
    if (!minus && !r.is_one()) term += "e(" + r.str() + ")*";
    term += sector_str(t.sector);
    if (body.empty())
      body = (minus ? "-" : "") + term;
    else
      body += (minus ? " - " : " + ") + term;
  }
  if (group->order() == 1) return body;
  return "1/" + std::to_string(group->order()) + " * ( " + body + " )";
}

Cyclotomic Partition::evaluate(const std::map<Sector, Rational>& amplitudes) const {
  std::int64_t n = 1;
  for (const auto& t : terms) n = std::lcm(n, t.phase.modulus());
  Cyclotomic sum(n);
  for (const auto& t : terms) {
    auto it = amplitudes.find(t.sector);
    require(it != amplitudes.end(), ErrorKind::Argument,
            "no amplitude given for sector " + sector_str(t.sector));
    Phase p = t.phase.over(n);
    sum += Cyclotomic::root(n, p.exponent()) * (it->second * t.multiplicity);
  }
  return sum * Rational(1, group->order());
}

Cyclotomic Partition::evaluate_uniform(const Rational& a) const {
  std::map<Sector, Rational> amp;
  for (const auto& t : terms) amp[t.sector] = a;
  return evaluate(amp);
}

Partition assemble_partition(const GroupPtr& group, const std::optional<Cochain>& omega,
                             bool quotient_conjugation) {
  require(group != nullptr, ErrorKind::Argument, "partition needs a group");
  Partition out;
  out.group = group;
  std::map<Sector, Phase> phase;
  if (omega) {
    require(omega->group()->order() == group->order(), ErrorKind::Argument,
            "cocycle over a different group");
    for (const auto& e : epsilon_table(*omega)) phase[e.sector] = e.phase;
  } else {
    for (auto [g, h] : commuting_pairs(*group)) phase[{g, h}] = Phase();
  }
  if (!quotient_conjugation) {
    for (const auto& [s, p] : phase) out.terms.push_back({s, p, 1});
    return out;
  }
  for (const auto& orbit : sector_orbits(*group)) {
    const Phase& p = phase.at(orbit.front());
    for (const auto& s : orbit)
      require(phase.at(s) == p, ErrorKind::Internal, "epsilon is not constant on a conjugation orbit");
    out.terms.push_back({orbit.front(), p, std::int64_t(orbit.size())});
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  require(group->order() == o.group->order(), ErrorKind::Argument, "group algebras differ");
  GroupAlgebraElement r{group, std::vector<Rational>(coeff.size(), Rational(0))};
  for (std::size_t g = 0; g < coeff.size(); ++g) {
    if (coeff[g] == 0) continue;
    for (std::size_t h = 0; h < o.coeff.size(); ++h)
      if (o.coeff[h] != 0) r.coeff[group->mul(Element(g), Element(h))] += coeff[g] * o.coeff[h];
  }
  return r;
}

int GroupAlgebraElement::regular_rank() const {
  const int n = group->order();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
  for (int g = 0; g < n; ++g)
    for (int y = 0; y < n; ++y) m[group->mul(g, y)][y] += coeff[g];
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = rank + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::string GroupAlgebraElement::str() const {
  std::string out;
  for (std::size_t g = 0; g < coeff.size(); ++g) {
    if (coeff[g] == 0) continue;
    if (!out.empty()) out += " + ";
    out += coeff[g].get_str() + "*[" + std::to_string(g) + "]";
  }
  return out.empty() ? "0" : out;
}

GroupAlgebraElement projection_operator(const GroupPtr& group) {
  require(group != nullptr, ErrorKind::Argument, "projection needs a group");
  return {group, std::vector<Rational>(std::size_t(group->order()), Rational(1, group->order()))};
}

// ---------------------------------------------------------------------------

WilsonData::WilsonData(Cochain w) : omega(std::move(w)) {
  require_degree(omega, 2, "Wilson data");
  const int n = omega.group()->order();
  holonomy.assign(std::size_t(n) * n, Phase());
}

Phase WilsonData::along(Element g, Element h) const {
  const int n = omega.group()->order();
  require_element(*omega.group(), g);
  require_element(*omega.group(), h);
  return holonomy[std::size_t(g) * n + h];
}

void WilsonData::set_along(Element g, Element h, Phase p) {
  const int n = omega.group()->order();
  require_element(*omega.group(), g);
  require_element(*omega.group(), h);
  holonomy[std::size_t(g) * n + h] = p;
}

Phase holonomy_phase(const WilsonData& data, Element g, Element h) {
  make_sector(*data.omega.group(), g, h);
  Phase corners(data.omega({g, h}) - data.omega({h, g}), data.omega.modulus());
  return corners * data.along(g, h) / data.along(h, g);
}

Phase membrane_phase(const Cochain& w, Element g1, Element g2, Element g3) {
  require_degree(w, 3, "membrane phase");
  const FiniteGroup& g = *w.group();
  make_sector(g, g1, g2);
  make_sector(g, g1, g3);
  make_sector(g, g2, g3);
  std::int64_t k = w({g1, g2, g3}) - w({g2, g1, g3}) - w({g3, g2, g1}) + w({g3, g1, g2}) +
                   w({g2, g3, g1}) - w({g1, g3, g2});
  return Phase(k, w.modulus());
}

std::int64_t det3(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<Element, 3> sl3_transform(const FiniteGroup& group, const std::array<Element, 3>& t,
                                     const Matrix3& m) {
  require(det3(m) == 1, ErrorKind::Argument,
          "SL(3,Z) transformation needs determinant 1, got " + std::to_string(det3(m)));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) make_sector(group, t[i], t[j]);
  std::array<Element, 3> out{};
  for (int i = 0; i < 3; ++i) {
    Element x = group.identity();
    for (int j = 0; j < 3; ++j) x = group.mul(x, group.pow(t[j], m[i][j]));
    out[i] = x;
  }
  return out;
}

bool check_sl3_invariance(const Cochain& omega3, const std::array<Element, 3>& t, const Matrix3& m) {
  auto u = sl3_transform(*omega3.group(), t, m);
  return membrane_phase(omega3, t[0], t[1], t[2]) == membrane_phase(omega3, u[0], u[1], u[2]);
}

std::vector<Matrix3> sl3_generators() {
  std::vector<Matrix3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Matrix3 m{};
      for (int k = 0; k < 3; ++k) m[k][k] = 1;
      m[i][j] = 1;
      out.push_back(m);
    }
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Matrix3 m{};
      for (int i = 0; i < 3; ++i) m[i][perm[i]] = (signs >> i) & 1 ? -1 : 1;
      if (det3(m) == 1) out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::array<Element, 3>> commuting_triples(const FiniteGroup& group) {
  std::vector<std::array<Element, 3>> out;
  const int n = group.order();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!group.commute(a, b)) continue;
      for (Element c = 0; c < n; ++c)
        if (group.commute(a, c) && group.commute(b, c)) out.push_back({a, b, c});
    }
  return out;
}

}  // namespace dtorsion
