#include "dtorsion/orbifold.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dtorsion/error.hpp"

namespace dtorsion {

namespace {

constexpr std::size_t kMaxCells = 1 << 20;

using Perm = std::vector<int>;

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::int64_t sign(int dim) { return dim % 2 == 0 ? 1 : -1; }

// Builds a standalone group from a closed subset of elements (sorted).
GroupPtr subgroup_group(const FiniteGroup& g, const std::vector<Element>& elements, std::string name) {
  std::vector<int> index(std::size_t(g.order()), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) index[std::size_t(elements[i])] = int(i);
  const int m = int(elements.size());
  std::vector<Element> table(std::size_t(m) * std::size_t(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int k = index[std::size_t(g.mul(elements[std::size_t(i)], elements[std::size_t(j)]))];
      require(k >= 0, ErrorKind::Argument, "element set is not closed under multiplication");
      table[std::size_t(i) * std::size_t(m) + std::size_t(j)] = k;
    }
  return std::make_shared<const FiniteGroup>(std::move(name), m, std::move(table));
}

void require_subgroup(const FiniteGroup& g, std::span<const Element> h) {
  std::vector<char> in(std::size_t(g.order()), 0);
  for (Element x : h) {
    require(x >= 0 && x < g.order(), ErrorKind::Argument, "subgroup element out of range");
    in[std::size_t(x)] = 1;
  }
  require(in[std::size_t(g.identity())], ErrorKind::Argument, "subgroup must contain the identity");
  for (Element a : h)
    for (Element b : h)
      require(in[std::size_t(g.mul(a, b))], ErrorKind::Argument, "element set is not closed under multiplication");
}

// Closes generator actions under products; elements outside the generated
// subgroup are added as trivially acting generators.
std::vector<Perm> close_action(const FiniteGroup& g, std::map<int, Perm> generators, std::size_t n) {
  std::vector<Perm> action(std::size_t(g.order()), identity_perm(n));
  std::vector<char> known(std::size_t(g.order()), 0);
  known[std::size_t(g.identity())] = 1;
  while (true) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < g.order(); ++a) {
        if (!known[std::size_t(a)]) continue;
        for (const auto& [s, ps] : generators) {
          int as = g.mul(a, s);
          Perm comp(n);
          for (std::size_t c = 0; c < n; ++c) comp[c] = action[std::size_t(a)][std::size_t(ps[c])];
          if (!known[std::size_t(as)]) {
            action[std::size_t(as)] = std::move(comp);
            known[std::size_t(as)] = 1;
            grew = true;
          } else if (action[std::size_t(as)] != comp) {
            fail(ErrorKind::Invalid, "act lines do not define a group action (element " + std::to_string(as) +
                                         " is reached inconsistently)");
          }
        }
      }
    }
    int next = 0;
    while (next < g.order() && known[std::size_t(next)]) ++next;
    if (next == g.order()) break;
    generators.emplace(next, identity_perm(n));
  }
  return action;
}

}  // namespace

GComplex::GComplex(GroupPtr group, std::vector<Cell> cells, std::vector<std::vector<int>> action)
    : group_(std::move(group)), cells_(std::move(cells)), action_(std::move(action)) {
  require(group_ != nullptr, ErrorKind::Argument, "complex needs a group");
  const std::size_t n = cells_.size();
  require(n <= kMaxCells, ErrorKind::Limit,
          "complex has " + std::to_string(n) + " cells, ceiling is " + std::to_string(kMaxCells));
  for (std::size_t c = 0; c < n; ++c) {
    const auto& cell = cells_[c];
    require(cell.dim >= 0, ErrorKind::Invalid, "cell " + std::to_string(c) + " has negative dimension");
    for (int b : cell.boundary) {
      if (b < 0 || std::size_t(b) >= n)
        fail(ErrorKind::Invalid, "cell " + std::to_string(c) + " has boundary cell " + std::to_string(b) +
                                     " out of range");
      if (cells_[std::size_t(b)].dim >= cell.dim)
        fail(ErrorKind::Invalid, "cell " + std::to_string(c) + " has boundary cell " + std::to_string(b) +
                                     " of dimension not below its own");
    }
  }
  const int order = group_->order();
  if (action_.empty()) action_.assign(std::size_t(order), identity_perm(n));
  require(action_.size() == std::size_t(order), ErrorKind::Invalid, "action must list every group element");
  for (int g = 0; g < order; ++g) {
    const auto& p = action_[std::size_t(g)];
    std::vector<char> seen(n, 0);
    bool ok = p.size() == n;
    for (std::size_t c = 0; ok && c < n; ++c) {
      ok = p[c] >= 0 && std::size_t(p[c]) < n && !seen[std::size_t(p[c])];
      if (ok) seen[std::size_t(p[c])] = 1;
    }
    if (!ok) fail(ErrorKind::Invalid, "action of element " + std::to_string(g) + " is not a permutation of cells");
  }
  if (action_[std::size_t(group_->identity())] != identity_perm(n))
    fail(ErrorKind::Invalid, "the identity must act trivially");
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const auto &pab = action_[std::size_t(group_->mul(a, b))], &pa = action_[std::size_t(a)],
                 &pb = action_[std::size_t(b)];
      for (std::size_t c = 0; c < n; ++c)
        if (pab[c] != pa[std::size_t(pb[c])])
          fail(ErrorKind::Invalid, "action law fails for elements " + std::to_string(a) + " and " +
                                       std::to_string(b) + " on cell " + std::to_string(c));
    }
  std::vector<std::vector<int>> sorted_bnd(n);
  for (std::size_t c = 0; c < n; ++c) {
    sorted_bnd[c] = cells_[c].boundary;
    std::sort(sorted_bnd[c].begin(), sorted_bnd[c].end());
  }
  for (int g = 0; g < order; ++g) {
    const auto& p = action_[std::size_t(g)];
    for (std::size_t c = 0; c < n; ++c) {
      auto gc = std::size_t(p[c]);
      if (cells_[gc].dim != cells_[c].dim)
        fail(ErrorKind::Invalid, "element " + std::to_string(g) + " changes the dimension of cell " +
                                     std::to_string(c));
      std::vector<int> img;
      for (int b : cells_[c].boundary) img.push_back(p[std::size_t(b)]);
      std::sort(img.begin(), img.end());
      if (img != sorted_bnd[gc])
        fail(ErrorKind::Invalid, "element " + std::to_string(g) + " does not map the boundary of cell " +
                                     std::to_string(c) + " onto the boundary of its image");
      if (gc == c)
        for (int b : cells_[c].boundary)
          if (p[std::size_t(b)] != b)
            fail(ErrorKind::Invalid, "inadmissible action: element " + std::to_string(g) + " fixes cell " +
                                         std::to_string(c) + " but moves its boundary cell " + std::to_string(b));
    }
  }
}

std::vector<std::int64_t> GComplex::cell_counts() const {
  std::vector<std::int64_t> out;
  for (const auto& c : cells_) {
    if (std::size_t(c.dim) >= out.size()) out.resize(std::size_t(c.dim) + 1, 0);
    ++out[std::size_t(c.dim)];
  }
  return out;
}

std::int64_t euler_char(const GComplex& x) {
  std::int64_t e = 0;
  for (const auto& c : x.cells()) e += sign(c.dim);
  return e;
}

FixedLocus fixed_subcomplex(const GComplex& x, std::span<const Element> s) {
  const FiniteGroup& g = *x.group();
  for (Element e : s)
    require(e >= 0 && e < g.order(), ErrorKind::Argument, "element " + std::to_string(e) + " out of range");
  std::vector<Element> cent;
  for (Element k = 0; k < g.order(); ++k) {
    bool ok = true;
    for (Element e : s) ok = ok && g.commute(k, e);
    if (ok) cent.push_back(k);
  }
  std::vector<int> keep, index(x.size(), -1);
  for (std::size_t c = 0; c < x.size(); ++c) {
    bool fixed = true;
    for (Element e : s) fixed = fixed && x.fixes(e, int(c));
    if (fixed) {
      index[c] = int(keep.size());
      keep.push_back(int(c));
    }
  }
  std::vector<Cell> cells;
  for (int c : keep) {
    Cell cell{x.cells()[std::size_t(c)].dim, {}};
    for (int b : x.cells()[std::size_t(c)].boundary) {
      require(index[std::size_t(b)] >= 0, ErrorKind::Internal, "fixed locus is not closed under boundary");
      cell.boundary.push_back(index[std::size_t(b)]);
    }
    cells.push_back(std::move(cell));
  }
  std::vector<std::vector<int>> action;
  for (Element k : cent) {
    Perm p;
    for (int c : keep) p.push_back(index[std::size_t(x.image(k, c))]);
    action.push_back(std::move(p));
  }
  auto sub = subgroup_group(g, cent, "C");
  return {GComplex(sub, std::move(cells), std::move(action)), std::move(keep), std::move(cent)};
}

std::int64_t quotient_orbit_euler(const GComplex& x) {
  std::vector<Element> all(std::size_t(x.group()->order()));
  std::iota(all.begin(), all.end(), 0);
  return quotient_orbit_euler(x, all);
}

std::int64_t quotient_orbit_euler(const GComplex& x, std::span<const Element> subgroup) {
  require_subgroup(*x.group(), subgroup);
  std::vector<char> seen(x.size(), 0);
  std::int64_t e = 0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (seen[c]) continue;
    e += sign(x.cells()[c].dim);
    for (Element h : subgroup) seen[std::size_t(x.image(h, int(c)))] = 1;
  }
  return e;
}

Rational orbifold_euler_sum(const GComplex& x) {
  const FiniteGroup& g = *x.group();
  std::int64_t total = 0;
  for (auto [a, b] : commuting_pairs(g))
    for (std::size_t c = 0; c < x.size(); ++c)
      if (x.fixes(a, int(c)) && x.fixes(b, int(c))) total += sign(x.cells()[c].dim);
  Rational out(total, g.order());
  out.canonicalize();
  require(out.get_den() == 1, ErrorKind::Internal,
          "orbifold Euler characteristic " + out.get_str() + " is not an integer");
  return out;
}

InertiaReport inertia_components(const GComplex& x) {
  const FiniteGroup& g = *x.group();
  auto cd = conjugacy_classes(g);
  InertiaReport rep;
  for (const auto& cls : cd.classes) {
    InertiaComponent comp;
    comp.representative = cls.front();
    comp.conjugacy_class = cls;
    const Element s[] = {comp.representative};
    auto fixed = fixed_subcomplex(x, s);
    comp.centralizer_order = std::int64_t(fixed.centralizer.size());
    comp.fixed_cell_counts = fixed.complex.cell_counts();
    comp.fixed_euler = euler_char(fixed.complex);
    comp.quotient_euler = quotient_orbit_euler(fixed.complex);
    rep.conjugacy_total += comp.quotient_euler;
    rep.components.push_back(std::move(comp));
  }
  rep.pair_sum = orbifold_euler_sum(x);
  return rep;
}

std::int64_t orbifold_euler_conjugacy(const GComplex& x) { return inertia_components(x).conjugacy_total; }

GComplex product_complex(const GComplex& x, const GComplex& y) {
  require(x.group()->order() == y.group()->order() &&
              std::ranges::equal(x.group()->table(), y.group()->table()),
          ErrorKind::Argument, "product factors must share the group");
  const std::size_t ny = y.size();
  require(x.size() * ny <= kMaxCells, ErrorKind::Limit, "product complex exceeds the cell ceiling");
  auto id = [ny](std::size_t a, std::size_t b) { return int(a * ny + b); };
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      Cell c{x.cells()[a].dim + y.cells()[b].dim, {}};
      for (int da : x.cells()[a].boundary) c.boundary.push_back(id(std::size_t(da), b));
      for (int db : y.cells()[b].boundary) c.boundary.push_back(id(a, std::size_t(db)));
      cells.push_back(std::move(c));
    }
  std::vector<std::vector<int>> action;
  for (Element g = 0; g < x.group()->order(); ++g) {
    Perm p(cells.size());
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < ny; ++b)
        p[std::size_t(id(a, b))] = id(std::size_t(x.image(g, int(a))), std::size_t(y.image(g, int(b))));
    action.push_back(std::move(p));
  }
  return GComplex(x.group(), std::move(cells), std::move(action));
}

GComplex circle_with_involution() {
  // v0 v1, e0 e1 both from v0 to v1
  std::vector<Cell> cells{{0, {}}, {0, {}}, {1, {0, 1}}, {1, {0, 1}}};
  return GComplex(cyclic_group(2), cells, {{0, 1, 2, 3}, {0, 1, 3, 2}});
}

GComplex circle_with_rotation(int m) {
  require(m >= 2 && m <= kMaxGroupOrder, ErrorKind::Argument, "rotation order must be in 2.." +
                                                                   std::to_string(kMaxGroupOrder));
  std::vector<Cell> cells;
  for (int i = 0; i < m; ++i) cells.push_back({0, {}});
  for (int i = 0; i < m; ++i) cells.push_back({1, {i, (i + 1) % m}});
  std::vector<std::vector<int>> action;
  for (int k = 0; k < m; ++k) {
    Perm p(std::size_t(2 * m));
    for (int i = 0; i < m; ++i) {
      p[std::size_t(i)] = (i + k) % m;
      p[std::size_t(m + i)] = m + (i + k) % m;
    }
    action.push_back(std::move(p));
  }
  return GComplex(cyclic_group(m), std::move(cells), std::move(action));
}

GComplex sphere_octahedral(SphereAction kind) {
  // vertex 2*axis + (negative ? 1 : 0)
  auto flip = [kind](int v) {
    if (kind == SphereAction::Antipodal) return v ^ 1;
    return v / 2 == 2 ? v ^ 1 : v;
  };
  std::vector<Cell> cells;
  for (int v = 0; v < 6; ++v) cells.push_back({0, {}});
  std::map<std::pair<int, int>, int> edge;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (a / 2 != b / 2) {
        edge[{a, b}] = int(cells.size());
        cells.push_back({1, {a, b}});
      }
  auto edge_of = [&](int a, int b) { return edge.at({std::min(a, b), std::max(a, b)}); };
  std::map<std::array<int, 3>, int> face;
  for (int s = 0; s < 8; ++s) {
    std::array<int, 3> v{(s & 1), 2 + ((s >> 1) & 1), 4 + ((s >> 2) & 1)};
    face[v] = int(cells.size());
    cells.push_back({2, {edge_of(v[0], v[1]), edge_of(v[1], v[2]), edge_of(v[0], v[2])}});
  }
  Perm p(cells.size());
  for (int v = 0; v < 6; ++v) p[std::size_t(v)] = flip(v);
  for (const auto& [ab, e] : edge) p[std::size_t(e)] = edge_of(flip(ab.first), flip(ab.second));
  for (const auto& [v, f] : face) {
    std::array<int, 3> w{flip(v[0]), flip(v[1]), flip(v[2])};
    std::sort(w.begin(), w.end());
    p[std::size_t(f)] = face.at(w);
  }
  return GComplex(cyclic_group(2), std::move(cells), {identity_perm(p.size()), p});
}

GComplex torus_power(int k) {
  require(k >= 1 && k <= 8, ErrorKind::Argument, "torus power must be in 1..8");
  GComplex out = circle_with_involution();
  for (int i = 1; i < k; ++i) out = product_complex(out, circle_with_involution());
  return out;
}

namespace {

bool parse_suffix(std::string_view name, std::string_view prefix, int& value) {
  if (name.substr(0, prefix.size()) != prefix) return false;
  auto rest = name.substr(prefix.size());
  auto r = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  return !rest.empty() && r.ec == std::errc() && r.ptr == rest.data() + rest.size();
}

}  // namespace

GComplex builtin_complex(std::string_view name) {
  int k = 0;
  if (name == "circle-involution") return circle_with_involution();
  if (name == "circle-rotation") return circle_with_rotation(2);
  if (parse_suffix(name, "circle-rotation", k)) return circle_with_rotation(k);
  if (name == "sphere-antipodal") return sphere_octahedral(SphereAction::Antipodal);
  if (name == "sphere-reflection") return sphere_octahedral(SphereAction::Reflection);
  if (parse_suffix(name, "torus", k)) return torus_power(k);
  fail(ErrorKind::Argument, "unknown built-in complex '" + std::string(name) + "'");
}

std::vector<std::string> builtin_complex_names() {
  return {"circle-involution", "circle-rotation<m>", "sphere-antipodal", "sphere-reflection", "torus<k>"};
}

GComplex random_admissible_complex(GroupPtr group, std::uint64_t seed, int max_dim, int max_orbits_per_dim) {
  require(group != nullptr, ErrorKind::Argument, "complex needs a group");
  require(max_dim >= 0 && max_dim <= 6 && max_orbits_per_dim >= 1 && max_orbits_per_dim <= 64,
          ErrorKind::Argument, "random complex bounds out of range");
  const FiniteGroup& g = *group;
  const int n = g.order();
  std::mt19937_64 rng(seed);
  auto subgroups = two_generated_subgroups(g);
  const std::vector<Element> trivial{g.identity()};
  if (std::find(subgroups.begin(), subgroups.end(), trivial) == subgroups.end()) subgroups.push_back(trivial);

  std::vector<Cell> cells;
  auto action = std::vector<Perm>(std::size_t(n));
  for (int d = 0; d <= max_dim; ++d) {
    const std::size_t lower = cells.size();
    int orbits = int(rng() % std::uint64_t(max_orbits_per_dim)) + (d == 0 ? 1 : 0);
    for (int o = 0; o < orbits; ++o) {
      const auto& h = subgroups[rng() % subgroups.size()];
      // left cosets r_i H
      std::vector<int> coset(std::size_t(n), -1);
      std::vector<Element> reps;
      for (Element x = 0; x < n; ++x) {
        if (coset[std::size_t(x)] >= 0) continue;
        for (Element y : h) coset[std::size_t(g.mul(x, y))] = int(reps.size());
        reps.push_back(x);
      }
      std::vector<int> boundary;
      for (std::size_t c = 0; c < lower && boundary.size() < 6; ++c) {
        bool fixed = true;
        for (Element y : h) fixed = fixed && action[std::size_t(y)][c] == int(c);
        if (fixed && rng() % 2 == 0) boundary.push_back(int(c));
      }
      const int base = int(cells.size());
      for (Element r : reps) {
        Cell cell{d, {}};
        for (int b : boundary) cell.boundary.push_back(action[std::size_t(r)][std::size_t(b)]);
        cells.push_back(std::move(cell));
      }
      for (Element x = 0; x < n; ++x)
        for (Element r : reps) action[std::size_t(x)].push_back(base + coset[std::size_t(g.mul(x, r))]);
    }
  }
  return GComplex(std::move(group), std::move(cells), std::move(action));
}

GComplex parse_complex(GroupPtr group, std::string_view text) {
  require(group != nullptr, ErrorKind::Argument, "complex needs a group");
  struct Pending {
    int line;
    std::vector<std::string> words;
  };
  std::map<long long, int> index;
  std::vector<Cell> cells;
  std::vector<Pending> bnd, act;
  int number = 0;
  auto error = [&](int line, const std::string& msg) {
    fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
  };
  auto integer = [&](int line, std::string_view w, const char* what) {
    long long v = 0;
    auto r = std::from_chars(w.data(), w.data() + w.size(), v);
    if (r.ec != std::errc() || r.ptr != w.data() + w.size())
      error(line, std::string("expected ") + what + ", got '" + std::string(w) + "'");
    return v;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> w;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) w.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (w.empty()) continue;
    if (w[0] == "cell") {
      if (w.size() != 3) error(number, "'cell' expects an id and a dimension");
      long long id = integer(number, w[1], "cell id");
      long long dim = integer(number, w[2], "dimension");
      if (dim < 0 || dim > 64) error(number, "dimension out of range");
      if (!index.emplace(id, int(cells.size())).second) error(number, "cell " + w[1] + " declared twice");
      if (cells.size() >= kMaxCells) fail(ErrorKind::Limit, "complex exceeds the cell ceiling");
      cells.push_back({int(dim), {}});
    } else if (w[0] == "bnd") {
      if (w.size() < 2) error(number, "'bnd' expects a cell id");
      bnd.push_back({number, std::move(w)});
    } else if (w[0] == "act") {
      if (w.size() < 2) error(number, "'act' expects an element");
      act.push_back({number, std::move(w)});
    } else {
      error(number, "unknown statement '" + w[0] + "'");
    }
  }
  auto cell_index = [&](int line, std::string_view w) {
    auto it = index.find(integer(line, w, "cell id"));
    if (it == index.end()) error(line, "unknown cell " + std::string(w));
    return it->second;
  };
  std::vector<char> has_bnd(cells.size(), 0);
  for (const auto& p : bnd) {
    int c = cell_index(p.line, p.words[1]);
    if (has_bnd[std::size_t(c)]) error(p.line, "boundary of cell " + p.words[1] + " given twice");
    has_bnd[std::size_t(c)] = 1;
    for (std::size_t i = 2; i < p.words.size(); ++i) cells[std::size_t(c)].boundary.push_back(cell_index(p.line, p.words[i]));
  }
  std::map<int, Perm> generators;
  for (const auto& p : act) {
    long long g = integer(p.line, p.words[1], "group element");
    if (g < 0 || g >= group->order()) error(p.line, "group element out of range");
    if (p.words.size() - 2 != cells.size())
      error(p.line, "'act' expects " + std::to_string(cells.size()) + " images");
    Perm img;
    for (std::size_t i = 2; i < p.words.size(); ++i) img.push_back(cell_index(p.line, p.words[i]));
    if (!generators.emplace(int(g), std::move(img)).second) error(p.line, "action of element given twice");
  }
  for (const auto& [g, img] : generators) {
    std::vector<char> seen(cells.size(), 0);
    for (int c : img) {
      if (seen[std::size_t(c)])
        fail(ErrorKind::Invalid, "action of element " + std::to_string(g) + " is not a permutation of cells");
      seen[std::size_t(c)] = 1;
    }
  }
  auto action = close_action(*group, std::move(generators), cells.size());
  return GComplex(std::move(group), std::move(cells), std::move(action));
}

std::string complex_to_text(const GComplex& x) {
  std::string out;
  for (std::size_t c = 0; c < x.size(); ++c)
    out += "cell " + std::to_string(c) + " " + std::to_string(x.cells()[c].dim) + "\n";
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (x.cells()[c].boundary.empty()) continue;
    out += "bnd " + std::to_string(c);
    for (int b : x.cells()[c].boundary) out += " " + std::to_string(b);
    out += "\n";
  }
  for (Element g = 0; g < x.group()->order(); ++g) {
    if (g == x.group()->identity()) continue;
    out += "act " + std::to_string(g);
    for (std::size_t c = 0; c < x.size(); ++c) out += " " + std::to_string(x.image(g, int(c)));
    out += "\n";
  }
  return out;
}

}  // namespace dtorsion
