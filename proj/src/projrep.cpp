#include "dtorsion/projrep.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>

#include "dtorsion/error.hpp"
#include "dtorsion/torsion.hpp"

namespace dtorsion {

namespace {

void require_cocycle2(const Cochain& omega) {
  require(omega.degree() == 2, ErrorKind::Argument,
          "projective representations need a 2-cochain, got degree " + std::to_string(omega.degree()));
  require(is_cocycle(omega), ErrorKind::Invalid, "omega is not a 2-cocycle");
}

void require_order(const FiniteGroup& g) {
  require(g.order() <= kMaxProjrepOrder, ErrorKind::Limit,
          "group order " + std::to_string(g.order()) + " exceeds the projective representation limit " +
              std::to_string(kMaxProjrepOrder));
}

void require_same_group(const GroupPtr& rep, const Cochain& omega, std::size_t matrices) {
  require(rep != nullptr, ErrorKind::Argument, "representation has no group");
  const auto& g = *omega.group();
  require(rep->order() == g.order() && std::ranges::equal(rep->table(), g.table()), ErrorKind::Argument,
          "representation and cocycle are over different groups");
  require(matrices == std::size_t(g.order()), ErrorKind::Argument,
          "expected " + std::to_string(g.order()) + " matrices, got " + std::to_string(matrices));
}

void require_monomial(const MonomialMatrix& m, int dim) {
  require(m.dim() == dim && m.phase.size() == m.row.size(), ErrorKind::Argument,
          "monomial matrix shape mismatch");
  std::vector<char> seen(std::size_t(dim), 0);
  for (int r : m.row) {
    require(r >= 0 && r < dim && !seen[std::size_t(r)], ErrorKind::Argument,
            "monomial matrix rows do not form a permutation");
    seen[std::size_t(r)] = 1;
  }
}

using CMatrix = Eigen::MatrixXcd;

std::complex<double> to_complex(const Phase& p) {
  const double t = 2.0 * M_PI * double(p.exponent()) / double(p.modulus());
  return {std::cos(t), std::sin(t)};
}

// Right multiplication e_x -> e_x e_h = omega(x,h) e_{xh}; these span the
// commutant of the twisted regular representation.
CMatrix right_regular(const Cochain& omega, Element h) {
  const auto& g = *omega.group();
  CMatrix m = CMatrix::Zero(g.order(), g.order());
  for (Element x = 0; x < g.order(); ++x) m(g.mul(x, h), x) = to_complex(omega.phase({x, h}));
  return m;
}

// Dimensions from eigenvalue clusters: an irrep of dimension d contributes d
// clusters of multiplicity d. Empty when the multiplicities are inconsistent.
std::vector<int> dimensions_from_spectrum(const Eigen::VectorXd& ev) {
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::map<int, int> clusters;  // multiplicity -> number of clusters
  int run = 1;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev[i] - ev[i - 1] <= kEigenTolerance * scale) {
      ++run;
      continue;
    }
    ++clusters[run];
    run = 1;
  }
  std::vector<int> dims;
  for (auto [mult, count] : clusters) {
    if (count % mult != 0) return {};
    dims.insert(dims.end(), std::size_t(count / mult), mult);
  }
  return dims;
}

}  // namespace

MonomialMatrix MonomialMatrix::identity(int dim) {
  MonomialMatrix m;
  m.row.resize(std::size_t(dim));
  std::iota(m.row.begin(), m.row.end(), 0);
  m.phase.assign(std::size_t(dim), Phase::one());
  return m;
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
  require(dim() == o.dim(), ErrorKind::Argument, "monomial matrix shape mismatch");
  MonomialMatrix m;
  m.row.resize(o.row.size());
  m.phase.resize(o.row.size());
  for (std::size_t c = 0; c < o.row.size(); ++c) {
    const auto mid = std::size_t(o.row[c]);
    m.row[c] = row[mid];
    m.phase[c] = phase[mid] * o.phase[c];
  }
  return m;
}

MonomialMatrix MonomialMatrix::scaled(const Phase& p) const {
  MonomialMatrix m = *this;
  for (auto& x : m.phase) x *= p;
  return m;
}

bool MonomialMatrix::operator==(const MonomialMatrix& o) const {
  return row == o.row && phase == o.phase;
}

std::optional<Phase> MonomialMatrix::entry(int r, int c) const {
  require(c >= 0 && c < dim() && r >= 0 && r < dim(), ErrorKind::Argument, "matrix index out of range");
  if (row[std::size_t(c)] != r) return std::nullopt;
  return phase[std::size_t(c)];
}

Cyclotomic MonomialMatrix::trace(std::int64_t modulus) const {
  Cyclotomic t(modulus);
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] == int(c)) t += Cyclotomic::root(modulus, phase[c].over(modulus).exponent());
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  require(dim == o.dim, ErrorKind::Argument, "matrix shape mismatch");
  const auto n = std::size_t(dim);
  const std::int64_t mod = std::lcm(modulus(), o.modulus());
  ExactMatrix a = over(mod), b = o.over(mod);
  ExactMatrix out{dim, std::vector<Cyclotomic>(n * n, Cyclotomic(mod))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = a.entries[i * n + k];
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out.entries[i * n + j] += x * b.entries[k * n + j];
    }
  return out;
}

ExactMatrix ExactMatrix::scaled(const Cyclotomic& c) const {
  const std::int64_t mod = std::lcm(modulus(), c.modulus());
  ExactMatrix out = over(mod);
  const Cyclotomic s = c.over(mod);
  for (auto& x : out.entries) x = x * s;
  return out;
}

ExactMatrix ExactMatrix::over(std::int64_t modulus) const {
  ExactMatrix out{dim, {}};
  out.entries.reserve(entries.size());
  for (const auto& x : entries) out.entries.push_back(x.over(modulus));
  return out;
}

ExactMatrix to_exact(const MonomialMatrix& m, std::int64_t modulus) {
  const auto n = std::size_t(m.dim());
  ExactMatrix out{m.dim(), std::vector<Cyclotomic>(n * n, Cyclotomic(modulus))};
  for (std::size_t c = 0; c < n; ++c)
    out.entries[std::size_t(m.row[c]) * n + c] = Cyclotomic::root(modulus, m.phase[c].over(modulus).exponent());
  return out;
}

MonomialRep twisted_regular_rep(const Cochain& omega) {
  require_cocycle2(omega);
  const auto& g = *omega.group();
  MonomialRep rep{omega.group(), {}};
  rep.matrices.reserve(std::size_t(g.order()));
  for (Element a = 0; a < g.order(); ++a) {
    MonomialMatrix m;
    for (Element x = 0; x < g.order(); ++x) {
      m.row.push_back(g.mul(a, x));
      m.phase.push_back(omega.phase({a, x}));
    }
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

ProjectiveCheck verify_projective_relation(const MonomialRep& rep, const Cochain& omega) {
  require(omega.degree() == 2, ErrorKind::Argument, "omega must be a 2-cochain");
  require_same_group(rep.group, omega, rep.matrices.size());
  for (const auto& m : rep.matrices) require_monomial(m, rep.dimension());
  const auto& g = *omega.group();
  ProjectiveCheck out;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (!(rep[a] * rep[b] == rep[g.mul(a, b)].scaled(omega.phase({a, b}))))
        out.violations.emplace_back(a, b);
  return out;
}

ProjectiveCheck verify_projective_relation(const ExactRep& rep, const Cochain& omega) {
  require(omega.degree() == 2, ErrorKind::Argument, "omega must be a 2-cochain");
  require_same_group(rep.group, omega, rep.matrices.size());
  const int dim = rep.matrices.front().dim;
  std::int64_t mod = omega.modulus();
  for (const auto& m : rep.matrices) {
    require(m.dim == dim && m.entries.size() == std::size_t(dim) * std::size_t(dim), ErrorKind::Argument,
            "matrix shape mismatch");
    for (const auto& x : m.entries) mod = std::lcm(mod, x.modulus());
  }
  std::vector<ExactMatrix> ms;
  for (const auto& m : rep.matrices) ms.push_back(m.over(mod));
  const auto& g = *omega.group();
  ProjectiveCheck out;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const auto w = Cyclotomic::root(mod, omega.phase({a, b}).over(mod).exponent());
      if (!(ms[std::size_t(a)] * ms[std::size_t(b)] == ms[std::size_t(g.mul(a, b))].scaled(w)))
        out.violations.emplace_back(a, b);
    }
  return out;
}

std::vector<std::vector<Element>> omega_regular_classes(const Cochain& omega) {
  require_cocycle2(omega);
  const auto& g = *omega.group();
  const auto cd = conjugacy_classes(g);
  auto regular = [&](const Cochain& w, Element x) {
    for (Element h : cd.centralizers[std::size_t(x)])
      if (!epsilon(w, x, h).is_one()) return false;
    return true;
  };
  // fixed non-trivial shift; regularity depends only on the class of omega
  const auto b = Cochain::from_function(omega.group(), 1, omega.modulus(), [&](std::span<const Element> t) {
    return t[0] == g.identity() ? 0 : (7 * std::int64_t(t[0]) + 3) % omega.modulus();
  });
  const Cochain shifted = omega + coboundary(b);
  std::vector<std::vector<Element>> out;
  for (const auto& cls : cd.classes) {
    const bool r = regular(omega, cls.front());
    for (Element x : cls)
      if (regular(omega, x) != r || regular(shifted, x) != r)
        fail(ErrorKind::Internal, "omega-regularity is not a class invariant at element " + std::to_string(x));
    if (r) out.push_back(cls);
  }
  return out;
}

IrrepDimensions irrep_dimensions(const Cochain& omega) {
  require_cocycle2(omega);
  const auto& g = *omega.group();
  require_order(g);
  const auto expected = omega_regular_classes(omega).size();
  std::vector<CMatrix> right;
  for (Element h = 0; h < g.order(); ++h) right.push_back(right_regular(omega, h));

  constexpr int kAttempts = 8;
  for (int attempt = 1; attempt <= kAttempts; ++attempt) {
    std::mt19937_64 rng(0xd15c7 + std::uint64_t(attempt));
    std::normal_distribution<double> normal;
    CMatrix a = CMatrix::Zero(g.order(), g.order());
    for (const auto& r : right) a += std::complex<double>(normal(rng), normal(rng)) * r;
    const CMatrix h = a + a.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) continue;
    auto dims = dimensions_from_spectrum(solver.eigenvalues());
    int squares = 0;
    for (int d : dims) squares += d * d;
    if (!dims.empty() && squares == g.order() && dims.size() == expected) return {std::move(dims), attempt};
  }
  fail(ErrorKind::Numerical, "eigenvalue multiplicities unresolved at tolerance after " +
                                 std::to_string(kAttempts) + " attempts");
}

TwistedRepReport twisted_rep_report(const CohomologyGroup& h2, std::int64_t class_index) {
  require(h2.degree() == 2 && h2.coefficients() == Coefficients::U1, ErrorKind::Argument,
          "report needs H^2 with U(1) coefficients");
  auto r = twisted_rep_report(h2.representative(class_index));
  r.class_index = class_index;
  return r;
}

TwistedRepReport twisted_rep_report(const Cochain& omega) {
  require_cocycle2(omega);
  const auto& group = omega.group();
  const int n = group->order();
  require_order(*group);
  const std::int64_t mod = std::lcm(std::int64_t(n), omega.modulus());
  TwistedRepReport r{.group = group, .modulus = mod, .cocycle = omega.over(mod)};
  if (n <= cohomology_order_ceiling(2)) {
    auto h2 = cohomology_u1(group, 2, mod == n ? std::nullopt : std::optional<std::int64_t>(mod));
    r.class_index = h2.class_index(r.cocycle);
  }
  r.rep = twisted_regular_rep(r.cocycle);
  r.projective_relation = verify_projective_relation(r.rep, r.cocycle).ok();
  r.regular_character = true;
  for (Element x = 0; x < n; ++x) {
    const auto t = r.rep[x].trace(mod).as_rational();
    r.regular_character = r.regular_character && t && *t == (x == group->identity() ? n : 0);
  }
  r.regular_classes = omega_regular_classes(r.cocycle);
  r.dimensions = irrep_dimensions(r.cocycle).dimensions;
  int squares = 0;
  for (int d : r.dimensions) squares += d * d;
  r.sum_of_squares = squares == n;
  r.count_matches = r.dimensions.size() == r.regular_classes.size();
  return r;
}

}  // namespace dtorsion
