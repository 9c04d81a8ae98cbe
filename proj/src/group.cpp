#include "dtorsion/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dtorsion/error.hpp"
#include "dtorsion/smith.hpp"

namespace dtorsion {

FiniteGroup::FiniteGroup(std::string name, int order, std::vector<Element> table)
    : name_(std::move(name)), n_(order), table_(std::move(table)) {
  require(n_ >= 1, ErrorKind::Invalid, "group order must be positive");
  require(n_ <= kMaxGroupOrder, ErrorKind::Limit,
          "group order " + std::to_string(n_) + " exceeds ceiling " +
              std::to_string(kMaxGroupOrder));
  require(table_.size() == std::size_t(n_) * n_, ErrorKind::Invalid,
          "Cayley table must have order^2 entries");
  for (Element x : table_)
    require(x >= 0 && x < n_, ErrorKind::Invalid, "Cayley table entry out of range");

  // Latin square: every row and column is a permutation.
  for (int a = 0; a < n_; ++a) {
    std::vector<bool> row(n_, false), col(n_, false);
    for (int b = 0; b < n_; ++b) {
      Element r = mul(a, b), c = mul(b, a);
      require(!row[r] && !col[c], ErrorKind::Invalid,
              "Cayley table is not a Latin square (row/column " + std::to_string(a) + ")");
      row[r] = col[c] = true;
    }
  }

  identity_ = -1;
  for (int e = 0; e < n_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n_ && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity_ = e;
  }
  require(identity_ >= 0, ErrorKind::Invalid, "Cayley table has no identity element");

  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == identity_) inv_[a] = b;
  for (int a = 0; a < n_; ++a)
    require(mul(inv_[a], a) == identity_, ErrorKind::Invalid,
            "element " + std::to_string(a) + " has no two-sided inverse");

  auto check = [&](int a, int b, int c) {
    require(mul(mul(a, b), c) == mul(a, mul(b, c)), ErrorKind::Invalid,
            "Cayley table is not associative at (" + std::to_string(a) + "," +
                std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    for (int t = 0; t < 10000; ++t) check(pick(rng), pick(rng), pick(rng));
  }

  orders_.assign(n_, 0);
  for (int g = 0; g < n_; ++g) {
    int k = 1;
    for (Element x = g; x != identity_; x = mul(x, g)) ++k;
    orders_[g] = k;
  }

  rank_.assign(n_, -1);
  for (int g = 0; g < n_; ++g) {
    if (g == identity_) continue;
    rank_[g] = int(nonid_.size());
    nonid_.push_back(g);
  }
}

Element FiniteGroup::pow(Element g, std::int64_t k) const {
  int o = orders_[g];
  k %= o;
  if (k < 0) k += o;
  Element r = identity_;
  for (std::int64_t i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (!commute(a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

bool is_even(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

GroupPtr from_permutations(std::vector<Perm> elems, std::string name) {
  std::sort(elems.begin(), elems.end());
  int n = int(elems.size());
  require(n <= kMaxGroupOrder, ErrorKind::Limit,
          "permutation group of order " + std::to_string(n) + " exceeds ceiling");
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<Element> table(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[std::size_t(a) * n + b] = index.at(compose(elems[a], elems[b]));
  return std::make_shared<FiniteGroup>(std::move(name), n, std::move(table));
}

}  // namespace

GroupPtr cyclic_group(int n) {
  require(n >= 1, ErrorKind::Invalid, "cyclic group order must be positive");
  require(n <= kMaxGroupOrder, ErrorKind::Limit, "Z" + std::to_string(n) + " exceeds ceiling");
  std::vector<Element> t(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = (a + b) % n;
  return std::make_shared<FiniteGroup>("Z" + std::to_string(n), n, std::move(t));
}

GroupPtr dihedral_group(int n) {
  require(n >= 1, ErrorKind::Invalid, "dihedral parameter must be positive");
  require(2 * n <= kMaxGroupOrder, ErrorKind::Limit, "D" + std::to_string(n) + " exceeds ceiling");
  int order = 2 * n;
  std::vector<Element> t(std::size_t(order) * order);
  for (int x = 0; x < order; ++x) {
    int a = x % n, e = x / n;
    for (int y = 0; y < order; ++y) {
      int b = y % n, f = y / n;
      int k = ((e ? a - b : a + b) % n + n) % n;
      t[std::size_t(x) * order + y] = k + n * ((e + f) % 2);
    }
  }
  return std::make_shared<FiniteGroup>("D" + std::to_string(n), order, std::move(t));
}

GroupPtr quaternion_group() {
  // unit u in {1,i,j,k} = {0,1,2,3}; element index 2u + (negative ? 1 : 0)
  static const int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_prod[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<Element> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign_prod[ux][uy];
      t[std::size_t(x) * 8 + y] = 2 * unit_prod[ux][uy] + (sign < 0 ? 1 : 0);
    }
  return std::make_shared<FiniteGroup>("Q8", 8, std::move(t));
}

GroupPtr symmetric_group(int n) {
  require(n >= 1 && n <= 5, ErrorKind::Unsupported, "S<n> supported for 1 <= n <= 5");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> all;
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(std::move(all), "S" + std::to_string(n));
}

GroupPtr alternating_group(int n) {
  require(n >= 1 && n <= 5, ErrorKind::Unsupported, "A<n> supported for 1 <= n <= 5");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> all;
  do
    if (is_even(p)) all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(std::move(all), "A" + std::to_string(n));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.order(), nb = b.order();
  require(na * nb <= kMaxGroupOrder, ErrorKind::Limit,
          "direct product of order " + std::to_string(na * nb) + " exceeds ceiling");
  int n = na * nb;
  std::vector<Element> t(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[std::size_t(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return std::make_shared<FiniteGroup>(a.name() + "x" + b.name(), n, std::move(t));
}

GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& generators,
                           std::string name) {
  require(degree >= 1, ErrorKind::Invalid, "permutation degree must be positive");
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : generators) {
    require(int(g.size()) == degree, ErrorKind::Invalid, "generator has wrong degree");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    require(sorted == id, ErrorKind::Invalid, "generator is not a permutation");
  }
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& g : generators) {
        Perm q = compose(p, g);
        if (seen.insert(q).second) {
          require(int(seen.size()) <= kMaxGroupOrder, ErrorKind::Limit,
                  "permutation group exceeds order ceiling");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  return from_permutations(std::vector<Perm>(seen.begin(), seen.end()), std::move(name));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

int parse_int(const std::string& tok, const std::string& what) {
  require(!tok.empty() && std::all_of(tok.begin(), tok.end(),
                                      [](unsigned char c) { return std::isdigit(c); }),
          ErrorKind::Parse, "expected integer for " + what + ", got '" + tok + "'");
  require(tok.size() <= 6, ErrorKind::Parse, "integer too large for " + what);
  return std::stoi(tok);
}

GroupPtr parse_family(const std::string& tok) {
  require(!tok.empty(), ErrorKind::Parse, "empty group factor");
  char head = tok[0];
  std::string rest = tok.substr(1);
  if (tok == "Q8") return quaternion_group();
  switch (head) {
    case 'Z':
      return cyclic_group(parse_int(rest, "Z<n>"));
    case 'D':
      return dihedral_group(parse_int(rest, "D<n>"));
    case 'S':
      return symmetric_group(parse_int(rest, "S<n>"));
    case 'A':
      return alternating_group(parse_int(rest, "A<n>"));
    case 'Q':
      fail(ErrorKind::Unsupported, "only Q8 is supported among quaternion groups");
    default:
      fail(ErrorKind::Parse, "unknown group family '" + tok + "'");
  }
}

GroupPtr parse_perm(const std::string& text, int degree) {
  // Generators are separated by whitespace or commas between cycles; cycles
  // written back to back, e.g. (1 2)(3 4), form a single generator.
  std::vector<std::vector<int>> gens;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  Perm current;
  bool open = false, have_current = false, separated = true;
  std::vector<int> cycle;
  std::string num;
  auto flush_num = [&] {
    if (num.empty()) return;
    int v = parse_int(num, "cycle point");
    require(v >= 1 && v <= degree, ErrorKind::Parse,
            "cycle point " + num + " outside 1.." + std::to_string(degree));
    cycle.push_back(v - 1);
    num.clear();
  };
  auto finish_generator = [&] {
    if (have_current) gens.push_back(current);
    have_current = false;
  };
  for (char ch : text) {
    if (ch == '(') {
      require(!open, ErrorKind::Parse, "nested '(' in cycle notation");
      if (separated) finish_generator();
      if (!have_current) {
        current = id;
        have_current = true;
      }
      open = true;
      cycle.clear();
    } else if (ch == ')') {
      require(open, ErrorKind::Parse, "unmatched ')' in cycle notation");
      flush_num();
      std::vector<bool> seen(degree, false);
      for (int x : cycle) {
        require(!seen[x], ErrorKind::Parse, "repeated point in a cycle");
        seen[x] = true;
      }
      Perm c = id;
      for (std::size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = cycle[(i + 1) % cycle.size()];
      current = compose(current, c);
      open = false;
      separated = false;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      require(open, ErrorKind::Parse, "digit outside a cycle");
      num.push_back(ch);
    } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (open)
        flush_num();
      else
        separated = true;
    } else {
      fail(ErrorKind::Parse, std::string("unexpected character '") + ch + "' in cycle notation");
    }
  }
  require(!open, ErrorKind::Parse, "unterminated cycle");
  finish_generator();
  return permutation_group(degree, gens, "perm");
}

}  // namespace

GroupPtr parse_group_spec(std::string_view text_view) {
  std::string text(text_view);
  std::istringstream in(text);
  std::string first;
  require(bool(in >> first), ErrorKind::Parse, "empty group specification");

  if (first == "perm") {
    std::string deg;
    require(bool(in >> deg), ErrorKind::Parse, "perm: missing degree");
    int degree = parse_int(deg, "perm degree");
    require(degree <= 32, ErrorKind::Limit, "perm degree above 32");
    std::string rest;
    std::getline(in, rest, '\0');
    auto g = parse_perm(rest, degree);
    std::string name = text;
    std::replace_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }, ' ');
    return std::make_shared<FiniteGroup>(name, g->order(),
                                         std::vector<Element>(g->table().begin(), g->table().end()));
  }
  if (first == "table") {
    std::string ntok;
    require(bool(in >> ntok), ErrorKind::Parse, "table: missing order");
    int n = parse_int(ntok, "table order");
    require(n >= 1, ErrorKind::Parse, "table order must be positive");
    require(n <= kMaxGroupOrder, ErrorKind::Limit, "table order exceeds ceiling");
    std::vector<Element> t;
    std::string tok;
    while (in >> tok) t.push_back(parse_int(tok, "table entry"));
    require(t.size() == std::size_t(n) * n, ErrorKind::Parse,
            "table: expected " + std::to_string(n * n) + " entries, got " + std::to_string(t.size()));
    return std::make_shared<FiniteGroup>("table" + std::to_string(n), n, std::move(t));
  }

  // Named family product; whitespace inside is ignored.
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  std::vector<std::string> factors;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = compact.find('x', start);
    factors.push_back(compact.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  GroupPtr g = parse_family(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(*g, *parse_family(factors[i]));
  return g;
}

// ---------------------------------------------------------------------------
// Structure

ConjugacyData conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyData d;
  d.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (d.class_of[x] >= 0) continue;
    std::set<Element> cls;
    for (int k = 0; k < n; ++k) cls.insert(g.conjugate(k, x));
    int idx = int(d.classes.size());
    for (Element y : cls) d.class_of[y] = idx;
    d.classes.emplace_back(cls.begin(), cls.end());
  }
  d.centralizers.reserve(n);
  for (int x = 0; x < n; ++x) d.centralizers.push_back(centralizer(g, x));
  return d;
}

std::vector<Element> centralizer(const FiniteGroup& g, Element x) {
  require(x >= 0 && x < g.order(), ErrorKind::Argument, "element out of range");
  std::vector<Element> c;
  for (int h = 0; h < g.order(); ++h)
    if (g.commute(x, h)) c.push_back(h);
  return c;
}

std::vector<std::pair<Element, Element>> commuting_pairs(const FiniteGroup& g) {
  std::vector<std::pair<Element, Element>> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (g.commute(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<Element> generated_subgroup(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : gens) {
      Element y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::vector<Element>> two_generated_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Element>> subs;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b) {
      Element gens[2] = {a, b};
      subs.insert(generated_subgroup(g, gens));
    }
  return {subs.begin(), subs.end()};
}

Abelianization abelianization(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Element> comms;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  Abelianization out;
  out.commutator_subgroup = generated_subgroup(g, comms);

  // Cosets x[G,G], numbered by least member.
  std::vector<int> coset(n, -1);
  int m = 0;
  for (int x = 0; x < n; ++x) {
    if (coset[x] >= 0) continue;
    for (Element c : out.commutator_subgroup) coset[g.mul(x, c)] = m;
    ++m;
  }
  std::vector<Element> rep(m);
  for (int x = n - 1; x >= 0; --x) rep[coset[x]] = x;

  // Presentation: generators e_c for each coset, relations e_a + e_b - e_ab.
  SparseMatrix rel(m, m * m);
  std::vector<std::vector<SparseMatrix::Entry>> rows(m);
  int col = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b, ++col) {
      int ab = coset[g.mul(rep[a], rep[b])];
      rows[a].emplace_back(col, 1);
      rows[b].emplace_back(col, 1);
      rows[ab].emplace_back(col, -1);
    }
  for (int r = 0; r < m; ++r) rel.set_row(r, std::move(rows[r]));
  SmithOptions opts;
  opts.left = true;
  SmithResult snf = smith_normal_form(rel, opts);
  require(snf.rank == m, ErrorKind::Internal, "abelianization presentation is not of full rank");

  std::vector<int> keep;
  for (int k = 0; k < m; ++k)
    if (snf.diagonal[k] != 1) {
      keep.push_back(k);
      out.invariant_factors.push_back(snf.diagonal[k].get_si());
    }
  out.projection.assign(n, std::vector<std::int64_t>(keep.size(), 0));
  for (int x = 0; x < n; ++x)
    for (std::size_t i = 0; i < keep.size(); ++i) {
      BigInt v = (*snf.left)(keep[i], coset[x]);
      BigInt d = snf.diagonal[keep[i]];
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
      out.projection[x][i] = r.get_si();
    }
  return out;
}

std::int64_t exponent(const FiniteGroup& g) {
  std::int64_t e = 1;
  for (int x = 0; x < g.order(); ++x) e = std::lcm(e, std::int64_t(g.element_order(x)));
  return e;
}

}  // namespace dtorsion
