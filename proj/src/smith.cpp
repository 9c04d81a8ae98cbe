#include "dtorsion/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "dtorsion/error.hpp"

namespace dtorsion {

SparseMatrix::SparseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(rows) {}

void SparseMatrix::set_row(int r, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    require(e.first >= 0 && e.first < cols_, ErrorKind::Argument,
            "sparse matrix column out of range");
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  data_[r] = std::move(merged);
}

std::int64_t SparseMatrix::at(int r, int c) const {
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, int col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? it->second : 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

BigMatrix BigMatrix::identity(int n) {
  BigMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<BigInt> SmithResult::invariant_factors() const {
  std::vector<BigInt> out;
  for (const auto& d : diagonal)
    if (d != 1) out.push_back(d);
  return out;
}

namespace {

struct Overflow {};

// 64-bit integer whose arithmetic throws Overflow instead of wrapping.
struct Checked {
  std::int64_t v = 0;
  Checked() = default;
  Checked(std::int64_t x) : v(x) {}
};

inline Checked operator+(Checked a, Checked b) {
  std::int64_t r;
  if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
  return r;
}
inline Checked operator-(Checked a, Checked b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
  return r;
}
inline Checked operator*(Checked a, Checked b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
  return r;
}
inline Checked operator-(Checked a) {
  if (a.v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return -a.v;
}

inline bool is_zero(const Checked& a) { return a.v == 0; }
inline bool is_zero(const BigInt& a) { return sgn(a) == 0; }
inline bool is_negative(const Checked& a) { return a.v < 0; }
inline bool is_negative(const BigInt& a) { return sgn(a) < 0; }
inline bool is_unit(const Checked& a) { return a.v == 1 || a.v == -1; }
inline bool is_unit(const BigInt& a) { return a == 1 || a == -1; }

inline int cmp_abs(const Checked& a, const Checked& b) {
  std::uint64_t x = a.v < 0 ? std::uint64_t(0) - std::uint64_t(a.v) : std::uint64_t(a.v);
  std::uint64_t y = b.v < 0 ? std::uint64_t(0) - std::uint64_t(b.v) : std::uint64_t(b.v);
  return x < y ? -1 : (x > y ? 1 : 0);
}
inline int cmp_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline Checked div_trunc(const Checked& a, const Checked& b) {
  if (b.v == -1) return -a;
  return a.v / b.v;
}
inline BigInt div_trunc(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Checked exact_div(const Checked& a, const Checked& b) { return div_trunc(a, b); }
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Checked& a, const Checked& b) { return b.v % a.v == 0; }
inline bool divides(const BigInt& a, const BigInt& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
inline void gcdext(const Checked& a, const Checked& b, Checked& g, Checked& s, Checked& t) {
  Checked r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!is_zero(r1)) {
    Checked q = div_trunc(r0, r1);
    Checked r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Checked s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Checked t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (is_negative(r0)) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}
inline void gcdext(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline BigInt to_big(const Checked& a) { return BigInt(static_cast<long>(a.v)); }
inline BigInt to_big(const BigInt& a) { return a; }

template <class Int>
struct DenseTransform {
  int n = 0;
  std::vector<Int> d;
  bool enabled = false;

  void init(int size, bool on) {
    enabled = on;
    n = size;
    if (!on) return;
    d.assign(std::size_t(n) * n, Int(0));
    for (int i = 0; i < n; ++i) d[std::size_t(i) * n + i] = Int(1);
  }
  Int& at(int r, int c) { return d[std::size_t(r) * n + c]; }

  // row_i -= q * row_r
  void row_axpy(int i, int r, const Int& q) {
    if (!enabled) return;
    for (int c = 0; c < n; ++c) {
      const Int& x = at(r, c);
      if (!is_zero(x)) at(i, c) = at(i, c) - q * x;
    }
  }
  // col_j -= q * col_c
  void col_axpy(int j, int c, const Int& q) {
    if (!enabled) return;
    for (int r = 0; r < n; ++r) {
      const Int& x = at(r, c);
      if (!is_zero(x)) at(r, j) = at(r, j) - q * x;
    }
  }
  void row_negate(int r) {
    if (!enabled) return;
    for (int c = 0; c < n; ++c) at(r, c) = -at(r, c);
  }
  void col_negate(int c) {
    if (!enabled) return;
    for (int r = 0; r < n; ++r) at(r, c) = -at(r, c);
  }
  // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + e*row_j)
  void row_mix(int i, int j, const Int& a, const Int& b, const Int& c, const Int& e) {
    if (!enabled) return;
    for (int k = 0; k < n; ++k) {
      Int x = at(i, k), y = at(j, k);
      at(i, k) = a * x + b * y;
      at(j, k) = c * x + e * y;
    }
  }
  // (col_i, col_j) <- (a*col_i + c*col_j, b*col_i + e*col_j)
  void col_mix(int i, int j, const Int& a, const Int& b, const Int& c, const Int& e) {
    if (!enabled) return;
    for (int k = 0; k < n; ++k) {
      Int x = at(k, i), y = at(k, j);
      at(k, i) = a * x + c * y;
      at(k, j) = b * x + e * y;
    }
  }
  std::optional<BigMatrix> export_rows(const std::vector<int>& order) const {
    if (!enabled) return std::nullopt;
    BigMatrix out(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out(r, c) = to_big(d[std::size_t(order[r]) * n + c]);
    return out;
  }
  std::optional<BigMatrix> export_cols(const std::vector<int>& order) const {
    if (!enabled) return std::nullopt;
    BigMatrix out(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out(r, c) = to_big(d[std::size_t(r) * n + order[c]]);
    return out;
  }
};

template <class Int>
class Eliminator {
 public:
  using Entry = std::pair<int, Int>;

  Eliminator(const SparseMatrix& m, const SmithOptions& opts)
      : R_(m.rows()), C_(m.cols()), rows_(R_), col_rows_(C_), col_count_(C_, 0),
        row_done_(R_, false), col_done_(C_, false) {
    for (int r = 0; r < R_; ++r) {
      for (const auto& [c, v] : m.row(r)) {
        rows_[r].emplace_back(c, Int(v));
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
      if (!rows_[r].empty()) active_.push_back(r);
    }
    U_.init(R_, opts.left);
    Uinv_.init(R_, opts.left_inverse);
    V_.init(C_, opts.right);
    Vinv_.init(C_, opts.right_inverse);
  }

  SmithResult run() {
    while (true) {
      int r = -1, c = -1;
      if (!choose_pivot(r, c)) break;
      eliminate(r, c);
    }
    return finish();
  }

 private:
  int R_, C_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_count_;
  std::vector<bool> row_done_, col_done_;
  std::vector<int> active_;
  std::vector<std::pair<int, int>> pivots_;
  std::vector<Int> pivot_values_;
  DenseTransform<Int> U_, Uinv_, V_, Vinv_;

  Int* find(int r, int c) {
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  bool choose_pivot(int& pr, int& pc) {
    std::erase_if(active_, [&](int r) { return row_done_[r] || rows_[r].empty(); });
    const Int* best = nullptr;
    long best_cost = 0;
    for (int r : active_) {
      const auto& row = rows_[r];
      long rl = long(row.size()) - 1;
      for (const auto& [c, v] : row) {
        long cost = rl * long(col_count_[c] - 1);
        int cmp = best ? cmp_abs(v, *best) : -1;
        if (cmp < 0 || (cmp == 0 && cost < best_cost)) {
          best = &v;
          best_cost = cost;
          pr = r;
          pc = c;
          if (is_unit(v) && cost == 0) return true;
        }
      }
    }
    return best != nullptr;
  }

  // row_i -= q * row_r on the working matrix and the left transforms.
  void row_sub(int i, int r, const Int& q) {
    const auto& src = rows_[r];
    auto& dst = rows_[i];
    std::vector<Entry> out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
      if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
        out.push_back(std::move(dst[a++]));
      } else if (a == dst.size() || src[b].first < dst[a].first) {
        int c = src[b].first;
        out.emplace_back(c, -(q * src[b].second));
        col_rows_[c].push_back(i);
        ++col_count_[c];
        ++b;
      } else {
        int c = dst[a].first;
        Int v = dst[a].second - q * src[b].second;
        if (is_zero(v))
          --col_count_[c];
        else
          out.emplace_back(c, std::move(v));
        ++a;
        ++b;
      }
    }
    dst = std::move(out);
    U_.row_axpy(i, r, q);
    Uinv_.col_axpy(r, i, -q);
  }

  void eliminate(int r, int c) {
    while (true) {
      Int p = *find(r, c);
      bool restart = false;
      // Clear column c below/above the pivot with row operations.
      std::vector<int> candidates = col_rows_[c];
      for (int i : candidates) {
        if (i == r || row_done_[i]) continue;
        Int* a = find(i, c);
        if (!a) continue;
        Int q = div_trunc(*a, p);
        if (!is_zero(q)) row_sub(i, r, q);
        Int* rem = find(i, c);
        if (rem) {
          r = i;
          restart = true;
          break;
        }
      }
      if (restart) continue;
      col_rows_[c].assign(1, r);

      // Column c is now zero off the pivot, so column operations only touch row r.
      auto& row = rows_[r];
      int new_c = -1;
      for (auto& [j, b] : row) {
        if (j == c) continue;
        Int q = div_trunc(b, p);
        if (!is_zero(q)) {
          b = b - q * p;
          V_.col_axpy(j, c, q);
          Vinv_.row_axpy(c, j, -q);
        }
        if (!is_zero(b) && new_c < 0) new_c = j;
      }
      std::erase_if(row, [&](const Entry& e) {
        if (e.first != c && is_zero(e.second)) {
          --col_count_[e.first];
          return true;
        }
        return false;
      });
      if (new_c >= 0) {
        c = new_c;
        continue;
      }
      // Row r now holds only the pivot.
      Int& pv = row.front().second;
      if (is_negative(pv)) {
        pv = -pv;
        U_.row_negate(r);
        Uinv_.col_negate(r);
      }
      pivots_.emplace_back(r, c);
      pivot_values_.push_back(pv);
      row_done_[r] = true;
      col_done_[c] = true;
      col_count_[c] = 0;
      return;
    }
  }

  SmithResult finish() {
    const int k = int(pivots_.size());
    std::vector<int> row_order, col_order;
    for (auto [r, c] : pivots_) {
      row_order.push_back(r);
      col_order.push_back(c);
    }
    for (int r = 0; r < R_; ++r)
      if (!row_done_[r]) row_order.push_back(r);
    for (int c = 0; c < C_; ++c)
      if (!col_done_[c]) col_order.push_back(c);

    // Apply the permutations to the transforms by relabelling.
    permute_rows(U_, row_order);
    permute_cols(Uinv_, row_order);
    permute_cols(V_, col_order);
    permute_rows(Vinv_, col_order);

    std::vector<Int> d = pivot_values_;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (divides(d[i], d[j])) continue;
        Int a = d[i], b = d[j], g, s, t;
        gcdext(a, b, g, s, t);
        Int ag = exact_div(a, g), bg = exact_div(b, g);
        // [s t; -b/g a/g] * diag(a,b) * [1 -t*b/g; 1 s*a/g] = diag(g, a*b/g)
        U_.row_mix(i, j, s, t, -bg, ag);
        Uinv_.col_mix(i, j, ag, -t, bg, s);
        Int x = -(t * bg), y = s * ag;
        V_.col_mix(i, j, Int(1), x, Int(1), y);
        Vinv_.row_mix(i, j, y, -x, Int(-1), Int(1));
        d[i] = g;
        d[j] = ag * b;
      }
    }

    SmithResult res;
    res.rows = R_;
    res.cols = C_;
    res.rank = k;
    for (const auto& x : d) res.diagonal.push_back(to_big(x));
    std::vector<int> id_r(R_), id_c(C_);
    for (int i = 0; i < R_; ++i) id_r[i] = i;
    for (int i = 0; i < C_; ++i) id_c[i] = i;
    res.left = U_.export_rows(id_r);
    res.left_inverse = Uinv_.export_rows(id_r);
    res.right = V_.export_rows(id_c);
    res.right_inverse = Vinv_.export_rows(id_c);
    return res;
  }

  static void permute_rows(DenseTransform<Int>& t, const std::vector<int>& order) {
    if (!t.enabled) return;
    std::vector<Int> out(t.d.size());
    for (int r = 0; r < t.n; ++r)
      for (int c = 0; c < t.n; ++c)
        out[std::size_t(r) * t.n + c] = t.d[std::size_t(order[r]) * t.n + c];
    t.d = std::move(out);
  }
  static void permute_cols(DenseTransform<Int>& t, const std::vector<int>& order) {
    if (!t.enabled) return;
    std::vector<Int> out(t.d.size());
    for (int r = 0; r < t.n; ++r)
      for (int c = 0; c < t.n; ++c)
        out[std::size_t(r) * t.n + c] = t.d[std::size_t(r) * t.n + order[c]];
    t.d = std::move(out);
  }
};

}  // namespace

SmithResult smith_normal_form(const SparseMatrix& m, SmithOptions opts) {
  try {
    return Eliminator<Checked>(m, opts).run();
  } catch (const Overflow&) {
    return smith_normal_form_bignum(m, opts);
  }
}

SmithResult smith_normal_form_bignum(const SparseMatrix& m, SmithOptions opts) {
  SmithResult res = Eliminator<BigInt>(m, opts).run();
  res.used_bignum = true;
  return res;
}

SmithResult smith_normal_form(const std::vector<std::vector<std::int64_t>>& m,
                              SmithOptions opts) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  SparseMatrix s(rows, cols);
  for (int r = 0; r < rows; ++r) {
    require(int(m[r].size()) == cols, ErrorKind::Argument, "ragged matrix");
    std::vector<SparseMatrix::Entry> e;
    for (int c = 0; c < cols; ++c)
      if (m[r][c] != 0) e.emplace_back(c, m[r][c]);
    s.set_row(r, std::move(e));
  }
  return smith_normal_form(s, opts);
}

}  // namespace dtorsion
