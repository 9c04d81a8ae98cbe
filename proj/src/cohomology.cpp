#include "dtorsion/cohomology.hpp"

#include <numeric>

#include "dtorsion/error.hpp"

namespace dtorsion {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t(1) << 20;

std::int64_t mod_big(const BigInt& x, std::int64_t n) {
  return std::int64_t(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(n)));
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return std::int64_t((__int128)a * b % n);
}

// Returns g = gcd(a, b) >= 0 with s*a + t*b = g.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t s, t;
  std::int64_t g = xgcd(mod_floor(a, n), n, s, t);
  require(g == 1, ErrorKind::Internal, "inverse of a non-unit");
  return mod_floor(s, n);
}

// Cochain values of sum_k coeff[k] * vecs[k] mod n.
std::vector<std::int64_t> combine(const std::vector<std::vector<std::int64_t>>& vecs,
                                  const std::vector<std::int64_t>& coeff, std::size_t len,
                                  std::int64_t n) {
  std::vector<std::int64_t> out(len, 0);
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    std::int64_t a = mod_floor(coeff[k], n);
    if (a == 0) continue;
    for (std::size_t i = 0; i < len; ++i) out[i] = (out[i] + mulmod(a, vecs[k][i], n)) % n;
  }
  return out;
}

std::vector<std::vector<std::int64_t>> sparse_columns(const SparseMatrix& m, std::int64_t n) {
  std::vector<std::vector<std::int64_t>> cols(m.cols(), std::vector<std::int64_t>(m.rows(), 0));
  for (int r = 0; r < m.rows(); ++r)
    for (auto [c, v] : m.row(r)) cols[c][r] = mod_floor(v, n);
  return cols;
}

void check_degree_and_size(const FiniteGroup& g, int p) {
  require(p >= 1 && p <= 3, ErrorKind::Argument, "cohomology degree must be 1, 2 or 3");
  require(g.order() <= cohomology_order_ceiling(p), ErrorKind::Limit,
          "H^" + std::to_string(p) + " supports groups of order at most " +
              std::to_string(cohomology_order_ceiling(p)) + ", got " + std::to_string(g.order()));
}

// H^p(G, Z/N) via the Smith forms of D_p and D_{p-1}.
struct ZnLevel {
  GroupPtr group;
  int p = 0;
  std::int64_t n = 0;
  std::size_t m = 0;  // length of a p-cochain table

  // ker D_p mod N = sum over kept coordinates of Z/c_i, spanned by t_i V e_i.
  std::vector<std::int64_t> c, t;
  std::vector<std::vector<std::int64_t>> kernel_vecs;  // t_i * V[:, i] mod N
  std::vector<std::vector<std::int64_t>> vinv_rows;    // V^{-1}[i, :] mod N

  // Quotient by im D_{p-1}.
  std::vector<std::int64_t> factors;
  std::vector<std::vector<std::int64_t>> factor_rows;  // rows of U, reduced mod d_j
  std::vector<std::vector<std::int64_t>> generators;   // cochain tables
  std::vector<std::vector<std::int64_t>> boundary_cols;  // columns of D_{p-1} mod N

  // Solving D_{p-1} b = x mod N.
  std::vector<std::vector<std::int64_t>> solve_u;  // U mod N, m x m
  std::vector<std::vector<std::int64_t>> solve_v;  // V mod N
  std::vector<BigInt> solve_diag;
  int solve_rank = 0;

  std::vector<std::int64_t> kernel_coords(std::span<const std::int64_t> x) const {
    std::vector<std::int64_t> z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t y = 0;
      const auto& row = vinv_rows[i];
      for (std::size_t l = 0; l < m; ++l)
        if (x[l] != 0) y = (y + mulmod(row[l], x[l], n)) % n;
      require(y % t[i] == 0, ErrorKind::Internal, "cocycle outside the computed kernel");
      z[i] = (y / t[i]) % c[i];
    }
    return z;
  }

  std::vector<std::int64_t> coords(std::span<const std::int64_t> x) const {
    auto z = kernel_coords(x);
    std::vector<std::int64_t> w(factors.size(), 0);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t l = 0; l < z.size(); ++l)
        acc = (acc + mulmod(factor_rows[j][l], z[l], factors[j])) % factors[j];
      w[j] = acc;
    }
    return w;
  }

  std::optional<std::vector<std::int64_t>> solve(std::span<const std::int64_t> x) const {
    const std::size_t cols = solve_v.size();
    std::vector<std::int64_t> y(cols, 0);
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t r = 0;
      for (std::size_t l = 0; l < m; ++l)
        if (x[l] != 0) r = (r + mulmod(solve_u[i][l], x[l], n)) % n;
      if (int(i) >= solve_rank) {
        if (r != 0) return std::nullopt;
        continue;
      }
      std::int64_t s = mod_big(solve_diag[i], n);
      std::int64_t g = std::gcd(s, n);
      if (r % g != 0) return std::nullopt;
      std::int64_t ng = n / g;
      y[i] = mulmod(r / g, inverse_mod(s / g, ng), ng);
    }
    std::vector<std::int64_t> b(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
      std::int64_t acc = 0;
      for (std::size_t l = 0; l < cols; ++l)
        if (y[l] != 0) acc = (acc + mulmod(solve_v[i][l], y[l], n)) % n;
      b[i] = acc;
    }
    return b;
  }
};

std::shared_ptr<const ZnLevel> build_zn(const GroupPtr& g, int p, std::int64_t n) {
  auto lv = std::make_shared<ZnLevel>();
  lv->group = g;
  lv->p = p;
  lv->n = n;

  SparseMatrix dp = bar_differential(*g, p);
  lv->m = std::size_t(dp.cols());
  const std::size_t m = lv->m;
  SmithOptions ro;
  ro.right = ro.right_inverse = true;
  SmithResult snf = smith_normal_form(dp, ro);
  const BigMatrix& v = *snf.right;
  const BigMatrix& vinv = *snf.right_inverse;
  std::vector<int> kept;
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t ci = std::gcd(mod_big(snf.diagonal_at(int(i)), n), n);
    if (ci == 1) continue;
    kept.push_back(int(i));
    lv->c.push_back(ci);
    lv->t.push_back(n / ci);
    std::vector<std::int64_t> kv(m), vr(m);
    for (std::size_t l = 0; l < m; ++l) {
      kv[l] = mulmod(mod_big(v(int(l), int(i)), n), n / ci, n);
      vr[l] = mod_big(vinv(int(i), int(l)), n);
    }
    lv->kernel_vecs.push_back(std::move(kv));
    lv->vinv_rows.push_back(std::move(vr));
  }
  const std::size_t k = kept.size();

  SparseMatrix dprev = bar_differential(*g, p - 1);
  lv->boundary_cols = sparse_columns(dprev, n);

  SmithOptions lo;
  lo.left = lo.right = true;
  SmithResult ssolve = smith_normal_form(dprev, lo);
  lv->solve_rank = ssolve.rank;
  lv->solve_diag = ssolve.diagonal;
  lv->solve_u.assign(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l) lv->solve_u[i][l] = mod_big((*ssolve.left)(int(i), int(l)), n);
  const std::size_t pc = std::size_t(dprev.cols());
  lv->solve_v.assign(pc, std::vector<std::int64_t>(pc));
  for (std::size_t i = 0; i < pc; ++i)
    for (std::size_t l = 0; l < pc; ++l) lv->solve_v[i][l] = mod_big((*ssolve.right)(int(i), int(l)), n);

  if (k == 0) return lv;

  // Relations among kernel coordinates: images of boundaries, then c_i e_i.
  SparseMatrix rel(int(k), int(pc + k));
  std::vector<std::vector<SparseMatrix::Entry>> rows(k);
  for (std::size_t b = 0; b < pc; ++b) {
    auto z = lv->kernel_coords(lv->boundary_cols[b]);
    for (std::size_t i = 0; i < k; ++i)
      if (z[i] != 0) rows[i].emplace_back(int(b), z[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    rows[i].emplace_back(int(pc + i), lv->c[i]);
    rel.set_row(int(i), std::move(rows[i]));
  }
  SmithOptions qo;
  qo.left = qo.left_inverse = true;
  SmithResult q = smith_normal_form(rel, qo);
  require(q.rank == int(k), ErrorKind::Internal, "relation matrix lost rank");
  for (std::size_t j = 0; j < k; ++j) {
    const BigInt& d = q.diagonal[j];
    if (d == 1) continue;
    require(d.fits_slong_p(), ErrorKind::Internal, "invariant factor out of range");
    std::int64_t dj = d.get_si();
    lv->factors.push_back(dj);
    std::vector<std::int64_t> urow(k), z(k);
    for (std::size_t l = 0; l < k; ++l) {
      urow[l] = mod_big((*q.left)(int(j), int(l)), dj);
      z[l] = mulmod(mod_big((*q.left_inverse)(int(l), int(j)), lv->c[l]), 1, n);
    }
    lv->factor_rows.push_back(std::move(urow));
    lv->generators.push_back(combine(lv->kernel_vecs, z, m, n));
  }
  return lv;
}

Cochain make_cochain(const GroupPtr& g, int p, std::int64_t n, std::vector<std::int64_t> vals) {
  Cochain c(g, p, n);
  c.assign(std::move(vals));
  return c;
}

}  // namespace

int cohomology_order_ceiling(int p) {
  switch (p) {
    case 1: return 120;
    case 2: return 24;
    case 3: return 8;
    default: return 0;
  }
}

struct CohomologyGroup::Impl {
  GroupPtr group;
  int p = 0;
  Coefficients coeff = Coefficients::ZmodN;
  std::int64_t n = 0;
  std::shared_ptr<const ZnLevel> zn;

  std::vector<std::int64_t> factors;
  std::vector<Cochain> generators;

  // U(1) only: H^{p-1}(Z/N) generators, their Bocksteins, and the quotient data.
  std::vector<Cochain> prev_generators;
  std::vector<Cochain> bocksteins;
  std::optional<BigMatrix> u2, v2;
  std::vector<BigInt> diag2;
  std::vector<std::int64_t> factor_index;  // U(1) factor -> row of U2

  std::optional<HowellReducer> reducer;

  std::vector<std::int64_t> coords(const Cochain& x) const {
    auto w = zn->coords(x.values());
    if (coeff == Coefficients::ZmodN || p == 1) return w;
    std::vector<std::int64_t> e(factors.size());
    for (std::size_t l = 0; l < factors.size(); ++l) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < w.size(); ++j) acc += (*u2)(int(factor_index[l]), int(j)) * w[j];
      e[l] = mod_big(acc, factors[l]);
    }
    return e;
  }
};

namespace {

std::vector<std::vector<std::int64_t>> span_vectors(const CohomologyGroup::Impl& im) {
  auto span = im.zn->boundary_cols;
  for (const auto& b : im.bocksteins) span.emplace_back(b.values().begin(), b.values().end());
  return span;
}

}  // namespace

CohomologyGroup cohomology_zn(GroupPtr g, int p, std::int64_t modulus) {
  require(g != nullptr, ErrorKind::Argument, "cohomology needs a group");
  check_degree_and_size(*g, p);
  require(modulus >= 1 && modulus <= kMaxModulus, ErrorKind::Argument,
          "modulus must be in 1.." + std::to_string(kMaxModulus));
  auto im = std::make_shared<CohomologyGroup::Impl>();
  im->group = g;
  im->p = p;
  im->coeff = Coefficients::ZmodN;
  im->n = modulus;
  im->zn = build_zn(g, p, modulus);
  im->factors = im->zn->factors;
  im->reducer.emplace(modulus, im->zn->m, span_vectors(*im));
  for (const auto& gen : im->zn->generators) {
    auto v = gen;
    im->reducer->reduce(v);
    im->generators.push_back(make_cochain(g, p, modulus, std::move(v)));
  }
  return CohomologyGroup(std::move(im));
}

CohomologyGroup cohomology_u1(GroupPtr g, int p, std::optional<std::int64_t> modulus) {
  require(g != nullptr, ErrorKind::Argument, "cohomology needs a group");
  check_degree_and_size(*g, p);
  std::int64_t n = modulus.value_or(g->order());
  require(n >= 1 && n <= kMaxModulus, ErrorKind::Argument,
          "modulus must be in 1.." + std::to_string(kMaxModulus));
  require(n % exponent(*g) == 0, ErrorKind::Argument,
          "U(1) modulus must be a multiple of the group exponent " + std::to_string(exponent(*g)));
  auto im = std::make_shared<CohomologyGroup::Impl>();
  im->group = g;
  im->p = p;
  im->coeff = Coefficients::U1;
  im->n = n;
  im->zn = build_zn(g, p, n);
  const ZnLevel& zn = *im->zn;

  std::vector<std::vector<std::int64_t>> gens;
  if (p == 1) {
    im->factors = zn.factors;
    gens = zn.generators;
  } else {
    auto prev = build_zn(g, p - 1, n);
    for (const auto& a : prev->generators) {
      im->prev_generators.push_back(make_cochain(g, p - 1, n, a));
      im->bocksteins.push_back(bockstein(im->prev_generators.back()));
    }
    const std::size_t r = zn.factors.size(), kb = im->bocksteins.size();
    if (r > 0) {
      SparseMatrix rel(int(r), int(r + kb));
      std::vector<std::vector<SparseMatrix::Entry>> rows(r);
      for (std::size_t j = 0; j < r; ++j) rows[j].emplace_back(int(j), zn.factors[j]);
      for (std::size_t k = 0; k < kb; ++k) {
        auto w = zn.coords(im->bocksteins[k].values());
        for (std::size_t j = 0; j < r; ++j)
          if (w[j] != 0) rows[j].emplace_back(int(r + k), w[j]);
      }
      for (std::size_t j = 0; j < r; ++j) rel.set_row(int(j), std::move(rows[j]));
      SmithOptions o;
      o.left = o.left_inverse = o.right = true;
      SmithResult s = smith_normal_form(rel, o);
      require(s.rank == int(r), ErrorKind::Internal, "Bockstein relation matrix lost rank");
      for (std::size_t l = 0; l < r; ++l) {
        if (s.diagonal[l] == 1) continue;
        std::int64_t e = s.diagonal[l].get_si();
        im->factors.push_back(e);
        im->factor_index.push_back(std::int64_t(l));
        std::vector<std::int64_t> w(r);
        for (std::size_t j = 0; j < r; ++j) w[j] = mod_big((*s.left_inverse)(int(j), int(l)), zn.factors[j]);
        gens.push_back(combine(zn.generators, w, zn.m, n));
      }
      im->u2 = std::move(s.left);
      im->v2 = std::move(s.right);
      im->diag2 = std::move(s.diagonal);
    }
  }
  im->reducer.emplace(n, zn.m, span_vectors(*im));
  for (auto& v : gens) {
    im->reducer->reduce(v);
    im->generators.push_back(make_cochain(g, p, n, std::move(v)));
  }
  return CohomologyGroup(std::move(im));
}

std::vector<std::int64_t> cohomology_z_oracle(const GroupPtr& g, int p) {
  require(g != nullptr, ErrorKind::Argument, "cohomology needs a group");
  require(p >= 1 && p <= 4, ErrorKind::Argument, "integral oracle supports degrees 1..4");
  static constexpr int ceiling[5] = {0, 120, 120, 24, 8};
  require(g->order() <= ceiling[p], ErrorKind::Limit,
          "integral H^" + std::to_string(p) + " supports groups of order at most " +
              std::to_string(ceiling[p]));
  // H^p(G, Z) is finite for p >= 1, hence equal to the torsion of C^p / im D_{p-1}.
  SmithResult s = smith_normal_form(bar_differential(*g, p - 1));
  std::vector<std::int64_t> out;
  for (const auto& d : s.invariant_factors()) {
    require(d.fits_slong_p(), ErrorKind::Internal, "invariant factor out of range");
    out.push_back(d.get_si());
  }
  return out;
}

// ---------------------------------------------------------------------------

const GroupPtr& CohomologyGroup::group() const { return impl_->group; }
int CohomologyGroup::degree() const { return impl_->p; }
Coefficients CohomologyGroup::coefficients() const { return impl_->coeff; }
std::int64_t CohomologyGroup::modulus() const { return impl_->n; }
const std::vector<std::int64_t>& CohomologyGroup::invariant_factors() const { return impl_->factors; }
const std::vector<Cochain>& CohomologyGroup::generators() const { return impl_->generators; }

std::int64_t CohomologyGroup::order() const {
  std::int64_t o = 1;
  for (auto d : impl_->factors)
    require(!__builtin_mul_overflow(o, d, &o), ErrorKind::Limit, "cohomology group too large to count");
  return o;
}

std::vector<Cochain> CohomologyGroup::coboundary_basis() const {
  std::vector<Cochain> out;
  for (const auto& col : impl_->zn->boundary_cols) {
    Cochain c = make_cochain(impl_->group, impl_->p, impl_->n, col);
    if (!c.is_zero()) out.push_back(std::move(c));
  }
  for (const auto& b : impl_->bocksteins)
    if (!b.is_zero()) out.push_back(b);
  return out;
}

Cochain CohomologyGroup::lift_modulus(const Cochain& c) const {
  require(c.group()->order() == impl_->group->order(), ErrorKind::Argument,
          "cochain over a different group");
  require(c.degree() == impl_->p, ErrorKind::Argument,
          "expected a " + std::to_string(impl_->p) + "-cochain, got degree " +
              std::to_string(c.degree()));
  if (c.modulus() == impl_->n) return c;
  require(impl_->n % c.modulus() == 0, ErrorKind::Argument,
          "cochain modulus " + std::to_string(c.modulus()) + " does not divide " +
              std::to_string(impl_->n));
  return c.over(impl_->n);
}

std::vector<std::int64_t> CohomologyGroup::coordinates(const Cochain& cocycle) const {
  Cochain x = lift_modulus(cocycle);
  require(is_cocycle(x), ErrorKind::Invalid, "cochain is not a cocycle");
  return impl_->coords(x);
}

bool CohomologyGroup::is_trivial(const Cochain& cocycle) const {
  for (auto v : coordinates(cocycle))
    if (v != 0) return false;
  return true;
}

std::optional<Cochain> CohomologyGroup::coboundary_witness(const Cochain& cocycle) const {
  const Impl& im = *impl_;
  Cochain x = lift_modulus(cocycle);
  if (!is_cocycle(x)) return std::nullopt;
  const std::int64_t n = im.n;
  if (im.coeff == Coefficients::ZmodN) {
    auto b = im.zn->solve(x.values());
    if (!b) return std::nullopt;
    return make_cochain(im.group, im.p - 1, n, std::move(*b));
  }
  // U(1): split off the Bockstein part, solve the rest over Z/N, then combine
  // into a mu_{N^2}-valued cochain b' = N b + a whose differential is N x.
  Cochain a(im.group, im.p - 1, n);
  if (im.p > 1 && !im.bocksteins.empty() && im.u2) {
    auto w = im.zn->coords(x.values());
    const std::size_t r = w.size();
    std::vector<BigInt> u(im.v2->rows, 0);
    for (std::size_t l = 0; l < r; ++l) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < r; ++j) acc += (*im.u2)(int(l), int(j)) * w[j];
      if (!mpz_divisible_p(acc.get_mpz_t(), im.diag2[l].get_mpz_t())) return std::nullopt;
      u[l] = acc / im.diag2[l];
    }
    for (std::size_t k = 0; k < im.bocksteins.size(); ++k) {
      BigInt lam = 0;
      for (int l = 0; l < im.v2->cols; ++l) lam += (*im.v2)(int(r + k), l) * u[l];
      a = a + im.prev_generators[k].scaled(mod_big(lam, n));
    }
  } else if (!is_trivial(x)) {
    return std::nullopt;
  }
  Cochain rest = im.p > 1 ? x - bockstein(a) : x;
  auto b = im.zn->solve(rest.values());
  require(b.has_value(), ErrorKind::Internal, "U(1) coboundary split failed");
  std::vector<std::int64_t> vals(b->size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = n * (*b)[i] + a.values()[i];
  return make_cochain(im.group, im.p - 1, n * n, std::move(vals));
}

Cochain CohomologyGroup::canonical(const Cochain& cocycle) const {
  Cochain x = lift_modulus(cocycle);
  require(is_cocycle(x), ErrorKind::Invalid, "cochain is not a cocycle");
  std::vector<std::int64_t> v(x.values().begin(), x.values().end());
  impl_->reducer->reduce(v);
  return make_cochain(impl_->group, impl_->p, impl_->n, std::move(v));
}

std::int64_t CohomologyGroup::class_index(const Cochain& cocycle) const {
  auto w = coordinates(cocycle);
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < w.size(); ++j) idx = idx * impl_->factors[j] + w[j];
  return idx;
}

Cochain CohomologyGroup::representative(std::int64_t index) const {
  const std::int64_t total = order();
  require(index >= 0 && index < total, ErrorKind::Argument,
          "class index " + std::to_string(index) + " out of range 0.." + std::to_string(total - 1));
  const auto& f = impl_->factors;
  Cochain x(impl_->group, impl_->p, impl_->n);
  for (std::size_t j = f.size(); j-- > 0;) {
    x = x + impl_->generators[j].scaled(index % f[j]);
    index /= f[j];
  }
  return canonical(x);
}

std::vector<Cochain> CohomologyGroup::enumerate_representatives() const {
  const std::int64_t total = order();
  require(total <= kMaxEnumeratedClasses, ErrorKind::Limit,
          "cohomology group has " + std::to_string(total) + " classes; enumeration is capped at " +
              std::to_string(kMaxEnumeratedClasses));
  std::vector<Cochain> out;
  out.reserve(std::size_t(total));
  for (std::int64_t i = 0; i < total; ++i) out.push_back(representative(i));
  return out;
}

// ---------------------------------------------------------------------------

HowellReducer::HowellReducer(std::int64_t modulus, std::size_t length,
                             const std::vector<std::vector<std::int64_t>>& generators)
    : n_(modulus), len_(length) {
  using Row = std::vector<std::int64_t>;
  auto nonzero = [](const Row& r) {
    for (auto v : r)
      if (v) return true;
    return false;
  };
  std::vector<Row> pending;
  for (const auto& gen : generators) {
    require(gen.size() == length, ErrorKind::Internal, "Howell generator length mismatch");
    Row r(length);
    for (std::size_t i = 0; i < length; ++i) r[i] = mod_floor(gen[i], n_);
    if (nonzero(r)) pending.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < length && !pending.empty(); ++j) {
    std::vector<Row> rest;
    std::optional<Row> piv;
    for (auto& r : pending) {
      if (r[j] == 0) {
        rest.push_back(std::move(r));
        continue;
      }
      if (!piv) {
        piv = std::move(r);
        continue;
      }
      // unimodular 2x2 step putting gcd(a, b) into the pivot row
      std::int64_t a = (*piv)[j], b = r[j], s, t;
      std::int64_t g = xgcd(a, b, s, t);
      std::int64_t ag = a / g, bg = b / g;
      for (std::size_t i = j; i < length; ++i) {
        std::int64_t x = (*piv)[i], y = r[i];
        (*piv)[i] = mod_floor(mulmod(mod_floor(s, n_), x, n_) + mulmod(mod_floor(t, n_), y, n_), n_);
        r[i] = mod_floor(mulmod(mod_floor(-bg, n_), x, n_) + mulmod(ag, y, n_), n_);
      }
      if (nonzero(r)) rest.push_back(std::move(r));
    }
    pending = std::move(rest);
    if (!piv) continue;
    // scale by a unit so that the pivot becomes gcd(a, N)
    std::int64_t a = (*piv)[j];
    std::int64_t g = std::gcd(a, n_);
    std::int64_t ng = n_ / g;
    std::int64_t u0 = inverse_mod(a / g, ng), u = u0;
    while (std::gcd(u, n_) != 1) u += ng;
    for (std::size_t i = j; i < length; ++i) (*piv)[i] = mulmod(u, (*piv)[i], n_);
    Row ann(length);
    for (std::size_t i = j; i < length; ++i) ann[i] = mulmod(ng, (*piv)[i], n_);
    if (nonzero(ann)) pending.push_back(std::move(ann));
    rows_.emplace_back(j, std::move(*piv));
  }
}

void HowellReducer::reduce(std::vector<std::int64_t>& v) const {
  require(v.size() == len_, ErrorKind::Internal, "Howell reduction length mismatch");
  for (auto& x : v) x = mod_floor(x, n_);
  for (const auto& [j, row] : rows_) {
    std::int64_t q = v[j] / row[j];
    if (q == 0) continue;
    for (std::size_t i = j; i < len_; ++i) v[i] = mod_floor(v[i] - mulmod(q, row[i], n_), n_);
  }
}

std::int64_t HowellReducer::span_order() const {
  std::int64_t o = 1;
  for (const auto& [j, row] : rows_)
    require(!__builtin_mul_overflow(o, n_ / row[j], &o), ErrorKind::Limit, "span too large to count");
  return o;
}

}  // namespace dtorsion
