#include "dtorsion/cech.hpp"

#include <charconv>
#include <map>
#include <numeric>

#include "dtorsion/error.hpp"

namespace dtorsion {

namespace {

using Perm = std::vector<int>;

std::string pair_str(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
std::string triple_str(int p, int q, int r) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}
std::string comp_str(int c) { return " comp " + std::to_string(c); }

void require_map(const std::vector<int>& m, std::size_t size, int target, const std::string& what) {
  if (m.size() != size) fail(ErrorKind::Invalid, what + ": expected " + std::to_string(size) + " entries");
  for (int x : m)
    if (x < 0 || x >= target) fail(ErrorKind::Invalid, what + ": restriction target out of range");
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || std::size_t(x) >= p.size() || seen[std::size_t(x)]) return false;
    seen[std::size_t(x)] = 1;
  }
  return true;
}

std::vector<std::size_t> overlap_sizes(const DiscreteSite& s) {
  std::vector<std::size_t> out;
  for (const auto& o : s.overlaps) out.push_back(o.to_p.size());
  return out;
}
std::vector<std::size_t> triple_sizes(const DiscreteSite& s) {
  std::vector<std::size_t> out;
  for (const auto& t : s.triples) out.push_back(t.to_pq.size());
  return out;
}
std::vector<std::size_t> quad_sizes(const DiscreteSite& s) {
  std::vector<std::size_t> out;
  for (const auto& q : s.quads) out.push_back(q.to_pqr.size());
  return out;
}
std::vector<std::size_t> patch_sizes(const DiscreteSite& s) {
  return {s.patch_components.begin(), s.patch_components.end()};
}

ComponentPhases blank(const std::vector<std::size_t>& sizes) {
  ComponentPhases out;
  for (auto n : sizes) out.emplace_back(n, Phase());
  return out;
}

void check_shape(const ComponentPhases& f, const std::vector<std::size_t>& sizes, const char* what) {
  bool ok = f.size() == sizes.size();
  for (std::size_t i = 0; ok && i < sizes.size(); ++i) ok = f[i].size() == sizes[i];
  if (!ok) fail(ErrorKind::Argument, std::string(what) + " does not match the site");
}

void check_family(const std::vector<ComponentPhases>& f, std::size_t count,
                  const std::vector<std::size_t>& sizes, const char* what) {
  if (f.size() != count)
    fail(ErrorKind::Argument, std::string(what) + ": expected " + std::to_string(count) + " entries, got " +
                                  std::to_string(f.size()));
  for (const auto& x : f) check_shape(x, sizes, what);
}

const std::vector<Perm>& layer(const DiscreteSite::Action& a, int k) {
  switch (k) {
    case 0: return a.patch;
    case 1: return a.overlap;
    case 2: return a.triple;
    default: return a.quad;
  }
}

// action[g1 g2] == action[g1] o action[g2]
bool law_holds(const DiscreteSite::Action& ab, const DiscreteSite::Action& a, const DiscreteSite::Action& b) {
  for (int k = 0; k < 4; ++k) {
    const auto &x = layer(ab, k), &y = layer(a, k), &z = layer(b, k);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t c = 0; c < x[i].size(); ++c)
        if (x[i][c] != y[i][std::size_t(z[i][c])]) return false;
  }
  return true;
}

DiscreteSite::Action identity_action(const DiscreteSite& s) {
  DiscreteSite::Action a;
  auto iota = [](std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  };
  for (auto n : patch_sizes(s)) a.patch.push_back(iota(n));
  for (auto n : overlap_sizes(s)) a.overlap.push_back(iota(n));
  for (auto n : triple_sizes(s)) a.triple.push_back(iota(n));
  for (auto n : quad_sizes(s)) a.quad.push_back(iota(n));
  return a;
}

// (a o b)(c) = a(b(c))
DiscreteSite::Action compose(const DiscreteSite::Action& a, const DiscreteSite::Action& b) {
  auto comp = [](const std::vector<Perm>& x, const std::vector<Perm>& y) {
    std::vector<Perm> out = y;
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t c = 0; c < y[i].size(); ++c) out[i][c] = x[i][std::size_t(y[i][c])];
    return out;
  };
  return {comp(a.patch, b.patch), comp(a.overlap, b.overlap), comp(a.triple, b.triple),
          comp(a.quad, b.quad)};
}

bool same_action(const DiscreteSite::Action& a, const DiscreteSite::Action& b) {
  return a.patch == b.patch && a.overlap == b.overlap && a.triple == b.triple && a.quad == b.quad;
}

}  // namespace

void VerifyReport::add(std::string relation, std::string location) {
  ++total;
  if (violations.size() < kMaxListed) violations.push_back({std::move(relation), std::move(location)});
}

int DiscreteSite::overlap_index(int p, int q) const {
  for (std::size_t i = 0; i < overlaps.size(); ++i)
    if (overlaps[i].p == p && overlaps[i].q == q) return int(i);
  return -1;
}

int DiscreteSite::triple_index(int p, int q, int r) const {
  for (std::size_t i = 0; i < triples.size(); ++i)
    if (triples[i].p == p && triples[i].q == q && triples[i].r == r) return int(i);
  return -1;
}

void DiscreteSite::validate() const {
  if (!(group != nullptr)) fail(ErrorKind::Invalid, "site has no group");
  const int np = int(patch_components.size());
  if (!(np >= 1)) fail(ErrorKind::Invalid, "site has no patches");
  for (int p = 0; p < np; ++p)
    if (!(patch_components[std::size_t(p)] >= 1)) fail(ErrorKind::Invalid, "patch " + std::to_string(p) + " has no components");
  for (std::size_t i = 0; i < overlaps.size(); ++i) {
    const auto& o = overlaps[i];
    auto name = "overlap " + pair_str(o.p, o.q);
    if (!(0 <= o.p && o.p < o.q && o.q < np)) fail(ErrorKind::Invalid, name + ": bad patch indices");
    if (!(overlap_index(o.p, o.q) == int(i))) fail(ErrorKind::Invalid, name + " declared twice");
    if (!(!o.to_p.empty())) fail(ErrorKind::Invalid, name + " has no components");
    require_map(o.to_p, o.to_p.size(), patch_components[std::size_t(o.p)], name);
    require_map(o.to_q, o.to_p.size(), patch_components[std::size_t(o.q)], name);
  }
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    std::string name = "triple " + triple_str(t.p, t.q, t.r);
    if (!(0 <= t.p && t.p < t.q && t.q < t.r && t.r < np)) fail(ErrorKind::Invalid, name + ": bad patch indices");
    if (!(triple_index(t.p, t.q, t.r) == int(i))) fail(ErrorKind::Invalid, name + " declared twice");
    int pq = overlap_index(t.p, t.q), qr = overlap_index(t.q, t.r), pr = overlap_index(t.p, t.r);
    if (!(pq >= 0 && qr >= 0 && pr >= 0)) fail(ErrorKind::Invalid, name + " lacks a double overlap");
    const auto &opq = overlaps[std::size_t(pq)], &oqr = overlaps[std::size_t(qr)],
               &opr = overlaps[std::size_t(pr)];
    const std::size_t n = t.to_pq.size();
    if (!(n > 0)) fail(ErrorKind::Invalid, name + " has no components");
    require_map(t.to_pq, n, int(opq.to_p.size()), name);
    require_map(t.to_qr, n, int(oqr.to_p.size()), name);
    require_map(t.to_pr, n, int(opr.to_p.size()), name);
    for (std::size_t c = 0; c < n; ++c) {
      auto a = std::size_t(t.to_pq[c]), b = std::size_t(t.to_qr[c]), d = std::size_t(t.to_pr[c]);
      if (!(opq.to_p[a] == opr.to_p[d] && opq.to_q[a] == oqr.to_p[b] && oqr.to_q[b] == opr.to_q[d])) fail(ErrorKind::Invalid, name + comp_str(int(c)) + " restricts inconsistently");
    }
  }
  for (const auto& q : quads) {
    std::string name = "quad (" + std::to_string(q.p) + "," + std::to_string(q.q) + "," +
                       std::to_string(q.r) + "," + std::to_string(q.s) + ")";
    if (!(0 <= q.p && q.p < q.q && q.q < q.r && q.r < q.s && q.s < np)) fail(ErrorKind::Invalid, name + ": bad patch indices");
    int a = triple_index(q.p, q.q, q.r), b = triple_index(q.p, q.q, q.s), c = triple_index(q.p, q.r, q.s),
        d = triple_index(q.q, q.r, q.s);
    if (!(a >= 0 && b >= 0 && c >= 0 && d >= 0)) fail(ErrorKind::Invalid, name + " lacks a triple overlap");
    const auto &tpqr = triples[std::size_t(a)], &tpqs = triples[std::size_t(b)],
               &tprs = triples[std::size_t(c)], &tqrs = triples[std::size_t(d)];
    const std::size_t n = q.to_pqr.size();
    if (!(n > 0)) fail(ErrorKind::Invalid, name + " has no components");
    require_map(q.to_pqr, n, int(tpqr.to_pq.size()), name);
    require_map(q.to_pqs, n, int(tpqs.to_pq.size()), name);
    require_map(q.to_prs, n, int(tprs.to_pq.size()), name);
    require_map(q.to_qrs, n, int(tqrs.to_pq.size()), name);
    for (std::size_t k = 0; k < n; ++k) {
      auto x = std::size_t(q.to_pqr[k]), y = std::size_t(q.to_pqs[k]), z = std::size_t(q.to_prs[k]),
           w = std::size_t(q.to_qrs[k]);
      bool ok = tpqr.to_pq[x] == tpqs.to_pq[y] && tpqr.to_pr[x] == tprs.to_pq[z] &&
                tpqr.to_qr[x] == tqrs.to_pq[w] && tpqs.to_pr[y] == tprs.to_pr[z] &&
                tpqs.to_qr[y] == tqrs.to_pr[w] && tprs.to_qr[z] == tqrs.to_qr[w];
      if (!(ok)) fail(ErrorKind::Invalid, name + comp_str(int(k)) + " restricts inconsistently");
    }
  }

  const int n = group->order();
  if (!(int(action.size()) == n)) fail(ErrorKind::Invalid, "site action must list every group element");
  const auto id = identity_action(*this);
  for (int g = 0; g < n; ++g) {
    const auto& a = action[std::size_t(g)];
    for (int k = 0; k < 4; ++k) {
      const auto &want = layer(id, k), &got = layer(a, k);
      if (!(got.size() == want.size())) fail(ErrorKind::Invalid, "action of element " + std::to_string(g) + " does not match the site");
      for (std::size_t i = 0; i < got.size(); ++i)
        if (!(got[i].size() == want[i].size() && is_permutation(got[i]))) fail(ErrorKind::Invalid, "action of element " + std::to_string(g) + " is not a permutation of components");
    }
  }
  if (!(same_action(action[std::size_t(group->identity())], id))) fail(ErrorKind::Invalid, "the identity must act trivially");
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2)
      if (!(law_holds(action[std::size_t(group->mul(g1, g2))], action[std::size_t(g1)],
                        action[std::size_t(g2)]))) fail(ErrorKind::Invalid, "action law fails for elements " + std::to_string(g1) + " and " + std::to_string(g2));
  for (int g = 0; g < n; ++g) {
    const auto& a = action[std::size_t(g)];
    auto who = [g] { return "action of element " + std::to_string(g); };
    for (std::size_t i = 0; i < overlaps.size(); ++i) {
      const auto& o = overlaps[i];
      for (std::size_t c = 0; c < o.to_p.size(); ++c) {
        auto gc = std::size_t(a.overlap[i][c]);
        if (!(o.to_p[gc] == a.patch[std::size_t(o.p)][std::size_t(o.to_p[c])] &&
                    o.to_q[gc] == a.patch[std::size_t(o.q)][std::size_t(o.to_q[c])])) fail(ErrorKind::Invalid, who() + " does not commute with restriction on overlap " + pair_str(o.p, o.q));
      }
    }
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto& t = triples[i];
      int pq = overlap_index(t.p, t.q), qr = overlap_index(t.q, t.r), pr = overlap_index(t.p, t.r);
      for (std::size_t c = 0; c < t.to_pq.size(); ++c) {
        auto gc = std::size_t(a.triple[i][c]);
        if (!(t.to_pq[gc] == a.overlap[std::size_t(pq)][std::size_t(t.to_pq[c])] &&
                    t.to_qr[gc] == a.overlap[std::size_t(qr)][std::size_t(t.to_qr[c])] &&
                    t.to_pr[gc] == a.overlap[std::size_t(pr)][std::size_t(t.to_pr[c])])) fail(ErrorKind::Invalid, who() + " does not commute with restriction on triple " + triple_str(t.p, t.q, t.r));
      }
    }
    for (std::size_t i = 0; i < quads.size(); ++i) {
      const auto& q = quads[i];
      int ia = triple_index(q.p, q.q, q.r), ib = triple_index(q.p, q.q, q.s),
          ic = triple_index(q.p, q.r, q.s), id2 = triple_index(q.q, q.r, q.s);
      for (std::size_t c = 0; c < q.to_pqr.size(); ++c) {
        auto gc = std::size_t(a.quad[i][c]);
        if (!(q.to_pqr[gc] == a.triple[std::size_t(ia)][std::size_t(q.to_pqr[c])] &&
                    q.to_pqs[gc] == a.triple[std::size_t(ib)][std::size_t(q.to_pqs[c])] &&
                    q.to_prs[gc] == a.triple[std::size_t(ic)][std::size_t(q.to_prs[c])] &&
                    q.to_qrs[gc] == a.triple[std::size_t(id2)][std::size_t(q.to_qrs[c])])) fail(ErrorKind::Invalid, who() + " does not commute with restriction on a quadruple overlap");
      }
    }
  }
}

std::vector<std::vector<int>> DiscreteSite::connected_components(int& count) const {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (int k : patch_components) {
    offset.push_back(total);
    total += std::size_t(k);
  }
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& o : overlaps)
    for (std::size_t c = 0; c < o.to_p.size(); ++c) {
      auto a = find(offset[std::size_t(o.p)] + std::size_t(o.to_p[c]));
      auto b = find(offset[std::size_t(o.q)] + std::size_t(o.to_q[c]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, int> label;
  std::vector<std::vector<int>> out(patch_components.size());
  for (std::size_t p = 0; p < patch_components.size(); ++p)
    for (int c = 0; c < patch_components[p]; ++c) {
      auto root = find(offset[p] + std::size_t(c));
      auto it = label.try_emplace(root, int(label.size())).first;
      out[p].push_back(it->second);
    }
  count = int(label.size());
  return out;
}

DiscreteSite DiscreteSite::point(GroupPtr group) { return simplex(std::move(group), 1); }

DiscreteSite DiscreteSite::simplex(GroupPtr group, int k) {
  require(group != nullptr, ErrorKind::Argument, "site needs a group");
  require(k >= 1 && k <= 16, ErrorKind::Argument, "simplex site needs 1 to 16 patches");
  DiscreteSite s;
  s.group = std::move(group);
  s.patch_components.assign(std::size_t(k), 1);
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q) s.overlaps.push_back({p, q, {0}, {0}});
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      for (int r = q + 1; r < k; ++r) s.triples.push_back({p, q, r, {0}, {0}, {0}});
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      for (int r = q + 1; r < k; ++r)
        for (int t = r + 1; t < k; ++t) s.quads.push_back({p, q, r, t, {0}, {0}, {0}, {0}});
  s.action.assign(std::size_t(s.group->order()), identity_action(s));
  return s;
}

// ---------------------------------------------------------------------------

BundleCocycle trivial_bundle(const DiscreteSite& site) { return {blank(overlap_sizes(site))}; }

BundleEquivariantStructure trivial_bundle_structure(const DiscreteSite& site) {
  return {std::vector<ComponentPhases>(std::size_t(site.group->order()), blank(patch_sizes(site)))};
}

GerbeCocycle trivial_gerbe(const DiscreteSite& site) { return {blank(triple_sizes(site))}; }

GerbeEquivariantStructure trivial_gerbe_structure(const DiscreteSite& site) {
  const auto n = std::size_t(site.group->order());
  return {std::vector<ComponentPhases>(n, blank(overlap_sizes(site))),
          std::vector<ComponentPhases>(n * n, blank(patch_sizes(site)))};
}

VerifyReport verify_bundle_equivariance(const DiscreteSite& site, const BundleCocycle& cocycle,
                                        const BundleEquivariantStructure& s) {
  site.validate();
  const int n = site.group->order();
  check_shape(cocycle.g, overlap_sizes(site), "bundle cocycle");
  check_family(s.h, std::size_t(n), patch_sizes(site), "bundle structure");
  VerifyReport rep;
  for (const auto& t : site.triples) {
    const auto& gpq = cocycle.g[std::size_t(site.overlap_index(t.p, t.q))];
    const auto& gqr = cocycle.g[std::size_t(site.overlap_index(t.q, t.r))];
    const auto& gpr = cocycle.g[std::size_t(site.overlap_index(t.p, t.r))];
    for (std::size_t c = 0; c < t.to_pq.size(); ++c)
      if (!(gpq[std::size_t(t.to_pq[c])] * gqr[std::size_t(t.to_qr[c])] / gpr[std::size_t(t.to_pr[c])]).is_one())
        rep.add("bundle.cocycle", "triple " + triple_str(t.p, t.q, t.r) + comp_str(int(c)));
  }
  for (int g = 0; g < n; ++g) {
    const auto& a = site.action[std::size_t(g)];
    const auto& h = s.h[std::size_t(g)];
    for (std::size_t i = 0; i < site.overlaps.size(); ++i) {
      const auto& o = site.overlaps[i];
      for (std::size_t c = 0; c < o.to_p.size(); ++c) {
        Phase lhs = cocycle.g[i][std::size_t(a.overlap[i][c])];
        Phase rhs = cocycle.g[i][c] * h[std::size_t(o.p)][std::size_t(o.to_p[c])] /
                    h[std::size_t(o.q)][std::size_t(o.to_q[c])];
        if (lhs != rhs)
          rep.add("bundle.transition",
                  "g=" + std::to_string(g) + " overlap " + pair_str(o.p, o.q) + comp_str(int(c)));
      }
    }
  }
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      const auto& a2 = site.action[std::size_t(g2)];
      const auto& h12 = s.h[std::size_t(site.group->mul(g1, g2))];
      const auto& h1 = s.h[std::size_t(g1)];
      const auto& h2 = s.h[std::size_t(g2)];
      for (std::size_t p = 0; p < h12.size(); ++p)
        for (std::size_t c = 0; c < h12[p].size(); ++c)
          if (h12[p][c] != h1[p][std::size_t(a2.patch[p][c])] * h2[p][c])
            rep.add("bundle.composition", "g=(" + std::to_string(g1) + "," + std::to_string(g2) +
                                              ") patch " + std::to_string(p) + comp_str(int(c)));
    }
  return rep;
}

VerifyReport verify_gerbe_equivariance(const DiscreteSite& site, const GerbeCocycle& cocycle,
                                       const GerbeEquivariantStructure& s) {
  site.validate();
  const int n = site.group->order();
  const FiniteGroup& G = *site.group;
  check_shape(cocycle.h, triple_sizes(site), "gerbe cocycle");
  check_family(s.nu, std::size_t(n), overlap_sizes(site), "gerbe structure nu");
  check_family(s.h, std::size_t(n) * std::size_t(n), patch_sizes(site), "gerbe structure h");
  VerifyReport rep;
  for (const auto& q : site.quads) {
    const auto& a = cocycle.h[std::size_t(site.triple_index(q.p, q.q, q.r))];
    const auto& b = cocycle.h[std::size_t(site.triple_index(q.p, q.q, q.s))];
    const auto& c = cocycle.h[std::size_t(site.triple_index(q.p, q.r, q.s))];
    const auto& d = cocycle.h[std::size_t(site.triple_index(q.q, q.r, q.s))];
    for (std::size_t k = 0; k < q.to_pqr.size(); ++k) {
      Phase x = d[std::size_t(q.to_qrs[k])] / c[std::size_t(q.to_prs[k])] * b[std::size_t(q.to_pqs[k])] /
                a[std::size_t(q.to_pqr[k])];
      if (!x.is_one())
        rep.add("gerbe.cocycle", "quad (" + std::to_string(q.p) + "," + std::to_string(q.q) + "," +
                                     std::to_string(q.r) + "," + std::to_string(q.s) + ")" + comp_str(int(k)));
    }
  }
  for (int g = 0; g < n; ++g) {
    const auto& a = site.action[std::size_t(g)];
    const auto& nu = s.nu[std::size_t(g)];
    for (std::size_t i = 0; i < site.triples.size(); ++i) {
      const auto& t = site.triples[i];
      auto pq = std::size_t(site.overlap_index(t.p, t.q)), qr = std::size_t(site.overlap_index(t.q, t.r)),
           pr = std::size_t(site.overlap_index(t.p, t.r));
      for (std::size_t c = 0; c < t.to_pq.size(); ++c) {
        Phase lhs = cocycle.h[i][std::size_t(a.triple[i][c])];
        Phase rhs = cocycle.h[i][c] * nu[pq][std::size_t(t.to_pq[c])] * nu[qr][std::size_t(t.to_qr[c])] /
                    nu[pr][std::size_t(t.to_pr[c])];
        if (lhs != rhs)
          rep.add("gerbe.triple",
                  "g=" + std::to_string(g) + " triple " + triple_str(t.p, t.q, t.r) + comp_str(int(c)));
      }
    }
  }
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      const auto& a2 = site.action[std::size_t(g2)];
      const auto& nu12 = s.nu[std::size_t(G.mul(g1, g2))];
      const auto& nu1 = s.nu[std::size_t(g1)];
      const auto& nu2 = s.nu[std::size_t(g2)];
      const auto& h = s.h[std::size_t(g1) * std::size_t(n) + std::size_t(g2)];
      for (std::size_t i = 0; i < site.overlaps.size(); ++i) {
        const auto& o = site.overlaps[i];
        for (std::size_t c = 0; c < o.to_p.size(); ++c) {
          Phase rhs = nu2[i][c] * nu1[i][std::size_t(a2.overlap[i][c])] *
                      h[std::size_t(o.p)][std::size_t(o.to_p[c])] / h[std::size_t(o.q)][std::size_t(o.to_q[c])];
          if (nu12[i][c] != rhs)
            rep.add("gerbe.nu-composition", "g=(" + std::to_string(g1) + "," + std::to_string(g2) +
                                                ") overlap " + pair_str(o.p, o.q) + comp_str(int(c)));
        }
      }
    }
  auto hh = [&](int a, int b) -> const ComponentPhases& {
    return s.h[std::size_t(a) * std::size_t(n) + std::size_t(b)];
  };
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2)
      for (int g3 = 0; g3 < n; ++g3) {
        const auto& a3 = site.action[std::size_t(g3)];
        const auto &x = hh(g1, G.mul(g2, g3)), &y = hh(g2, g3), &z = hh(g1, g2), &w = hh(G.mul(g1, g2), g3);
        for (std::size_t p = 0; p < x.size(); ++p)
          for (std::size_t c = 0; c < x[p].size(); ++c)
            if (x[p][c] * y[p][c] != z[p][std::size_t(a3.patch[p][c])] * w[p][c])
              rep.add("gerbe.h-cocycle", "g=(" + std::to_string(g1) + "," + std::to_string(g2) + "," +
                                             std::to_string(g3) + ") patch " + std::to_string(p) +
                                             comp_str(int(c)));
      }
  return rep;
}

namespace {

void require_valid(const VerifyReport& r, const std::string& what) {
  if (r.ok()) return;
  const auto& v = r.violations.front();
  fail(ErrorKind::Invalid, what + " is not valid: " + v.relation + " fails at " + v.location);
}

ComponentPhases ratio(const ComponentPhases& a, const ComponentPhases& b) {
  ComponentPhases out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t c = 0; c < a[i].size(); ++c) out[i][c] = a[i][c] / b[i][c];
  return out;
}

ComponentPhases product(const ComponentPhases& a, const ComponentPhases& b) {
  ComponentPhases out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t c = 0; c < a[i].size(); ++c) out[i][c] = a[i][c] * b[i][c];
  return out;
}

}  // namespace

BundleDifference bundle_difference_character(const DiscreteSite& site, const BundleCocycle& cocycle,
                                             const BundleEquivariantStructure& s1,
                                             const BundleEquivariantStructure& s2) {
  require_valid(verify_bundle_equivariance(site, cocycle, s1), "first bundle structure");
  require_valid(verify_bundle_equivariance(site, cocycle, s2), "second bundle structure");
  const int n = site.group->order();
  int count = 0;
  auto cc = site.connected_components(count);
  BundleDifference out;
  out.characters.assign(std::size_t(count), std::vector<Phase>(std::size_t(n)));
  std::vector<std::vector<char>> set(std::size_t(count), std::vector<char>(std::size_t(n), 0));
  for (int g = 0; g < n; ++g)
    for (std::size_t p = 0; p < cc.size(); ++p)
      for (std::size_t c = 0; c < cc[p].size(); ++c) {
        auto k = std::size_t(cc[p][c]);
        Phase phi = s1.h[std::size_t(g)][p][c] / s2.h[std::size_t(g)][p][c];
        if (!set[k][std::size_t(g)]) {
          out.characters[k][std::size_t(g)] = phi.reduced();
          set[k][std::size_t(g)] = 1;
        } else {
          require(out.characters[k][std::size_t(g)] == phi, ErrorKind::Internal,
                  "difference is not constant on a connected component");
        }
      }
  for (const auto& chi : out.characters)
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2)
        if (chi[std::size_t(site.group->mul(g1, g2))] != chi[std::size_t(g1)] * chi[std::size_t(g2)])
          out.homomorphism = false;
  return out;
}

BundleEquivariantStructure act(const BundleEquivariantStructure& s, const std::vector<Phase>& chi) {
  require(chi.size() == s.h.size(), ErrorKind::Argument, "character must have one value per group element");
  BundleEquivariantStructure out = s;
  for (std::size_t g = 0; g < s.h.size(); ++g)
    for (auto& patch : out.h[g])
      for (auto& x : patch) x = x * chi[g];
  return out;
}

GerbeDifferenceData gerbe_difference_data(const DiscreteSite& site, const GerbeCocycle& cocycle,
                                          const GerbeEquivariantStructure& s1,
                                          const GerbeEquivariantStructure& s2) {
  require_valid(verify_gerbe_equivariance(site, cocycle, s1), "first gerbe structure");
  require_valid(verify_gerbe_equivariance(site, cocycle, s2), "second gerbe structure");
  GerbeDifferenceData d;
  for (std::size_t g = 0; g < s1.nu.size(); ++g) d.transition.push_back(ratio(s1.nu[g], s2.nu[g]));
  for (std::size_t k = 0; k < s1.h.size(); ++k) d.omega.push_back(ratio(s1.h[k], s2.h[k]));
  for (auto& f : d.transition)
    for (auto& v : f)
      for (auto& x : v) x = x.reduced();
  for (auto& f : d.omega)
    for (auto& v : f)
      for (auto& x : v) x = x.reduced();
  return d;
}

GerbeEquivariantStructure act(const GerbeEquivariantStructure& s, const GerbeDifferenceData& d) {
  require(d.transition.size() == s.nu.size() && d.omega.size() == s.h.size(), ErrorKind::Argument,
          "difference data does not match the structure");
  GerbeEquivariantStructure out;
  for (std::size_t g = 0; g < s.nu.size(); ++g) {
    require(d.transition[g].size() == s.nu[g].size(), ErrorKind::Argument,
            "difference data does not match the structure");
    out.nu.push_back(product(s.nu[g], d.transition[g]));
  }
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    require(d.omega[k].size() == s.h[k].size(), ErrorKind::Argument,
            "difference data does not match the structure");
    out.h.push_back(product(s.h[k], d.omega[k]));
  }
  return out;
}

VerifyReport verify_group_law_diagram(const DiscreteSite& site, const GerbeDifferenceData& d) {
  site.validate();
  const int n = site.group->order();
  const FiniteGroup& G = *site.group;
  check_family(d.transition, std::size_t(n), overlap_sizes(site), "difference transition data");
  check_family(d.omega, std::size_t(n) * std::size_t(n), patch_sizes(site), "difference omega data");
  VerifyReport rep;
  for (int g = 0; g < n; ++g) {
    const auto& T = d.transition[std::size_t(g)];
    for (const auto& t : site.triples) {
      auto pq = std::size_t(site.overlap_index(t.p, t.q)), qr = std::size_t(site.overlap_index(t.q, t.r)),
           pr = std::size_t(site.overlap_index(t.p, t.r));
      for (std::size_t c = 0; c < t.to_pq.size(); ++c)
        if (!(T[pq][std::size_t(t.to_pq[c])] * T[qr][std::size_t(t.to_qr[c])] / T[pr][std::size_t(t.to_pr[c])])
                 .is_one())
          rep.add("diff.T-closure",
                  "g=" + std::to_string(g) + " triple " + triple_str(t.p, t.q, t.r) + comp_str(int(c)));
    }
  }
  auto om = [&](int a, int b) -> const ComponentPhases& {
    return d.omega[std::size_t(a) * std::size_t(n) + std::size_t(b)];
  };
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      const auto& a2 = site.action[std::size_t(g2)];
      const auto& T12 = d.transition[std::size_t(G.mul(g1, g2))];
      const auto& T1 = d.transition[std::size_t(g1)];
      const auto& T2 = d.transition[std::size_t(g2)];
      const auto& w = om(g1, g2);
      for (std::size_t i = 0; i < site.overlaps.size(); ++i) {
        const auto& o = site.overlaps[i];
        for (std::size_t c = 0; c < o.to_p.size(); ++c) {
          Phase rhs = T2[i][c] * T1[i][std::size_t(a2.overlap[i][c])] * w[std::size_t(o.p)][std::size_t(o.to_p[c])] /
                      w[std::size_t(o.q)][std::size_t(o.to_q[c])];
          if (T12[i][c] != rhs)
            rep.add("diff.T-composition", "g=(" + std::to_string(g1) + "," + std::to_string(g2) +
                                              ") overlap " + pair_str(o.p, o.q) + comp_str(int(c)));
        }
      }
    }
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2)
      for (int g3 = 0; g3 < n; ++g3) {
        const auto& a3 = site.action[std::size_t(g3)];
        const auto &x = om(g1, G.mul(g2, g3)), &y = om(g2, g3), &z = om(g1, g2), &w = om(G.mul(g1, g2), g3);
        for (std::size_t p = 0; p < x.size(); ++p)
          for (std::size_t c = 0; c < x[p].size(); ++c)
            if (x[p][c] * y[p][c] != z[p][std::size_t(a3.patch[p][c])] * w[p][c])
              rep.add("diff.omega-diagram", "g=(" + std::to_string(g1) + "," + std::to_string(g2) + "," +
                                                std::to_string(g3) + ") patch " + std::to_string(p) +
                                                comp_str(int(c)));
      }
  return rep;
}

GerbeDifferenceData embed_cocycle(const DiscreteSite& site, const Cochain& omega) {
  require(omega.degree() == 2, ErrorKind::Argument, "embedding needs a 2-cochain");
  require(omega.group()->order() == site.group->order(), ErrorKind::Argument, "cochain over a different group");
  const int n = site.group->order();
  GerbeDifferenceData d;
  d.transition.assign(std::size_t(n), blank(overlap_sizes(site)));
  for (int g1 = 0; g1 < n; ++g1)
    for (int g2 = 0; g2 < n; ++g2) {
      ComponentPhases f = blank(patch_sizes(site));
      for (auto& v : f)
        for (auto& x : v) x = omega.phase({g1, g2});
      d.omega.push_back(std::move(f));
    }
  return d;
}

DiscreteTorsion extract_discrete_torsion(const DiscreteSite& site, const GerbeDifferenceData& d) {
  require_valid(verify_group_law_diagram(site, d), "difference data");
  const int n = site.group->order();
  for (std::size_t g = 0; g < d.transition.size(); ++g)
    for (const auto& v : d.transition[g])
      for (const auto& x : v)
        require(x.is_one(), ErrorKind::Invalid,
                "transition data for element " + std::to_string(g) + " is not trivialized");
  std::vector<Phase> w(std::size_t(n) * std::size_t(n));
  std::int64_t modulus = n;
  for (std::size_t k = 0; k < d.omega.size(); ++k) {
    const Phase& first = d.omega[k].front().front();
    for (const auto& v : d.omega[k])
      for (const auto& x : v)
        require(x == first, ErrorKind::Invalid,
                "omega for (" + std::to_string(k / std::size_t(n)) + "," + std::to_string(k % std::size_t(n)) +
                    ") is not constant over the site");
    w[k] = first.reduced();
    modulus = std::lcm(modulus, w[k].modulus());
  }
  const Element e = site.group->identity();
  const Phase shift = w[std::size_t(e) * std::size_t(n) + std::size_t(e)];
  Cochain cocycle = Cochain::from_function(site.group, 2, modulus, [&](std::span<const Element> t) {
    return (w[std::size_t(t[0]) * std::size_t(n) + std::size_t(t[1])] / shift).over(modulus).exponent();
  });
  auto h = cohomology_u1(site.group, 2, modulus == n ? std::nullopt : std::optional<std::int64_t>(modulus));
  return {cocycle, h, h.class_index(cocycle), h.canonical(cocycle)};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct LineReader {
  int number = 0;
  std::string where() const { return "line " + std::to_string(number) + ": "; }
  [[noreturn]] void error(const std::string& msg) const { fail(ErrorKind::Parse, where() + msg); }

  int integer(std::string_view w, int lo, int hi, const char* what) const {
    int v = 0;
    auto r = std::from_chars(w.data(), w.data() + w.size(), v);
    if (r.ec != std::errc() || r.ptr != w.data() + w.size())
      error(std::string("expected ") + what + ", got '" + std::string(w) + "'");
    if (v < lo || v > hi)
      error(std::string(what) + " " + std::to_string(v) + " out of range");
    return v;
  }

  Phase phase(std::string_view w) const {
    if (w == "0") return Phase();
    try {
      return Phase::parse(w);
    } catch (const Error& e) {
      error(e.what());
    }
  }

  void arity(const std::vector<std::string_view>& w, std::size_t n) const {
    if (w.size() != n)
      error("'" + std::string(w[0]) + "' expects " + std::to_string(n - 1) + " fields, got " +
            std::to_string(w.size() - 1));
  }
};

}  // namespace

CechDocument parse_cech(std::string_view text) {
  CechDocument doc;
  DiscreteSite& site = doc.site;
  LineReader in;
  enum class Section { Top, Site, Bundle, Gerbe, Equiv } section = Section::Top;
  bool have_site = false;
  std::map<int, DiscreteSite::Action> generators;
  std::vector<std::pair<int, std::vector<std::string>>> pending_acts;
  int n = 0;

  auto need_site = [&] {
    if (!have_site) in.error("a site section must come first");
  };
  auto element = [&](std::string_view w) { return in.integer(w, 0, n - 1, "group element"); };
  auto patch = [&](std::string_view w) {
    return in.integer(w, 0, int(site.patch_components.size()) - 1, "patch");
  };
  auto overlap = [&](std::string_view p, std::string_view q) {
    int i = site.overlap_index(patch(p), patch(q));
    if (i < 0) in.error("no overlap " + pair_str(patch(p), patch(q)));
    return std::size_t(i);
  };
  auto triple = [&](std::string_view p, std::string_view q, std::string_view r) {
    int i = site.triple_index(patch(p), patch(q), patch(r));
    if (i < 0) in.error("no triple overlap " + triple_str(patch(p), patch(q), patch(r)));
    return std::size_t(i);
  };
  auto component = [&](std::string_view w, std::size_t size) {
    return std::size_t(in.integer(w, 0, int(size) - 1, "component"));
  };

  auto finish_site = [&] {
    if (site.patch_components.empty()) in.error("site has no patches");
    auto id = identity_action(site);
    const int saved_line = in.number;
    for (const auto& [line, words] : pending_acts) {
      in.number = line;
      std::vector<std::string_view> w(words.begin(), words.end());
      auto& a = generators.try_emplace(element(w[1]), id).first->second;
      std::vector<int>* target = nullptr;
      std::size_t first = 0;
      if (w[2] == "patch" && w.size() >= 4) {
        target = &a.patch[std::size_t(patch(w[3]))];
        first = 4;
      } else if (w[2] == "overlap" && w.size() >= 5) {
        target = &a.overlap[overlap(w[3], w[4])];
        first = 5;
      } else if (w[2] == "triple" && w.size() >= 6) {
        target = &a.triple[triple(w[3], w[4], w[5])];
        first = 6;
      } else {
        in.error("'act' target must be patch <p>, overlap <p> <q> or triple <p> <q> <r>");
      }
      if (w.size() - first != target->size())
        in.error("'act' expects " + std::to_string(target->size()) + " images");
      for (std::size_t i = 0; i < target->size(); ++i)
        (*target)[i] = in.integer(w[first + i], 0, int(target->size()) - 1, "image");
      if (!is_permutation(*target)) in.error("'act' images must form a permutation");
    }
    in.number = saved_line;
    site.action.assign(std::size_t(n), id);
    if (!generators.empty()) {
      std::vector<char> known(std::size_t(n), 0);
      known[std::size_t(site.group->identity())] = 1;
      while (true) {
        bool grew = true;
        while (grew) {
          grew = false;
          for (int a = 0; a < n; ++a) {
            if (!known[std::size_t(a)]) continue;
            for (const auto& [s, act_s] : generators) {
              int as = site.group->mul(a, s);
              auto comp = compose(site.action[std::size_t(a)], act_s);
              if (!known[std::size_t(as)]) {
                site.action[std::size_t(as)] = std::move(comp);
                known[std::size_t(as)] = 1;
                grew = true;
              } else if (!same_action(site.action[std::size_t(as)], comp)) {
                fail(ErrorKind::Invalid, "act lines do not define a group action (element " +
                                             std::to_string(as) + " is reached inconsistently)");
              }
            }
          }
        }
        // elements outside the generated subgroup act trivially
        int next = 0;
        while (next < n && known[std::size_t(next)]) ++next;
        if (next == n) break;
        generators.emplace(next, id);
      }
    }
    site.validate();
    have_site = true;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++in.number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto w = split_words(line);
    if (w.empty()) continue;
    const std::string_view key = w[0];

    if (key == "end") {
      in.arity(w, 1);
      if (section == Section::Top) in.error("'end' outside a section");
      if (section == Section::Site) finish_site();
      section = Section::Top;
      continue;
    }

    switch (section) {
      case Section::Top:
        if (key == "group") {
          if (site.group) in.error("group given twice");
          if (w.size() < 2) in.error("'group' expects a group spec");
          std::string spec;
          for (std::size_t i = 1; i < w.size(); ++i) spec += (i > 1 ? " " : "") + std::string(w[i]);
          site.group = parse_group_spec(spec);
          n = site.group->order();
        } else if (key == "site") {
          in.arity(w, 1);
          if (!site.group) in.error("'group' must precede 'site'");
          if (have_site) in.error("site given twice");
          section = Section::Site;
        } else if (key == "bundle") {
          in.arity(w, 1);
          need_site();
          if (doc.bundle) in.error("bundle given twice");
          doc.bundle = trivial_bundle(site);
          section = Section::Bundle;
        } else if (key == "gerbe") {
          in.arity(w, 1);
          need_site();
          if (doc.gerbe) in.error("gerbe given twice");
          doc.gerbe = trivial_gerbe(site);
          section = Section::Gerbe;
        } else if (key == "equiv") {
          in.arity(w, 1);
          need_site();
          section = Section::Equiv;
        } else {
          in.error("unknown statement '" + std::string(key) + "'");
        }
        break;

      case Section::Site:
        if (key == "patch") {
          in.arity(w, 3);
          int p = in.integer(w[1], 0, 1 << 16, "patch");
          if (p != int(site.patch_components.size())) in.error("patches must be declared in order 0, 1, ...");
          site.patch_components.push_back(in.integer(w[2], 1, 1 << 16, "component count"));
        } else if (key == "overlap") {
          in.arity(w, 6);
          int p = patch(w[1]), q = patch(w[2]);
          if (p >= q) in.error("overlap patches must be increasing");
          int i = site.overlap_index(p, q);
          if (i < 0) {
            site.overlaps.push_back({p, q, {}, {}});
            i = int(site.overlaps.size()) - 1;
          }
          auto& o = site.overlaps[std::size_t(i)];
          if (in.integer(w[3], 0, 1 << 16, "component") != int(o.to_p.size()))
            in.error("overlap components must be declared in order 0, 1, ...");
          o.to_p.push_back(in.integer(w[4], 0, site.patch_components[std::size_t(p)] - 1, "component"));
          o.to_q.push_back(in.integer(w[5], 0, site.patch_components[std::size_t(q)] - 1, "component"));
        } else if (key == "triple") {
          in.arity(w, 8);
          int p = patch(w[1]), q = patch(w[2]), r = patch(w[3]);
          if (!(p < q && q < r)) in.error("triple patches must be increasing");
          int i = site.triple_index(p, q, r);
          if (i < 0) {
            site.triples.push_back({p, q, r, {}, {}, {}});
            i = int(site.triples.size()) - 1;
          }
          auto& t = site.triples[std::size_t(i)];
          if (in.integer(w[4], 0, 1 << 16, "component") != int(t.to_pq.size()))
            in.error("triple components must be declared in order 0, 1, ...");
          t.to_pq.push_back(in.integer(w[5], 0, 1 << 16, "component"));
          t.to_qr.push_back(in.integer(w[6], 0, 1 << 16, "component"));
          t.to_pr.push_back(in.integer(w[7], 0, 1 << 16, "component"));
        } else if (key == "quad") {
          in.arity(w, 10);
          int p = patch(w[1]), q = patch(w[2]), r = patch(w[3]), s = patch(w[4]);
          if (!(p < q && q < r && r < s)) in.error("quad patches must be increasing");
          DiscreteSite::Quad* qd = nullptr;
          for (auto& x : site.quads)
            if (x.p == p && x.q == q && x.r == r && x.s == s) qd = &x;
          if (!qd) {
            site.quads.push_back({p, q, r, s, {}, {}, {}, {}});
            qd = &site.quads.back();
          }
          if (in.integer(w[5], 0, 1 << 16, "component") != int(qd->to_pqr.size()))
            in.error("quad components must be declared in order 0, 1, ...");
          qd->to_pqr.push_back(in.integer(w[6], 0, 1 << 16, "component"));
          qd->to_pqs.push_back(in.integer(w[7], 0, 1 << 16, "component"));
          qd->to_prs.push_back(in.integer(w[8], 0, 1 << 16, "component"));
          qd->to_qrs.push_back(in.integer(w[9], 0, 1 << 16, "component"));
        } else if (key == "act") {
          if (w.size() < 3) in.error("'act' expects an element, a target and images");
          pending_acts.push_back({in.number, std::vector<std::string>(w.begin(), w.end())});
        } else {
          in.error("unknown site statement '" + std::string(key) + "'");
        }
        break;

      case Section::Bundle: {
        if (key != "g") in.error("bundle lines start with 'g'");
        in.arity(w, 5);
        auto i = overlap(w[1], w[2]);
        doc.bundle->g[i][component(w[3], doc.bundle->g[i].size())] = in.phase(w[4]);
        break;
      }

      case Section::Gerbe: {
        if (key != "h") in.error("gerbe lines start with 'h'");
        in.arity(w, 6);
        auto i = triple(w[1], w[2], w[3]);
        doc.gerbe->h[i][component(w[4], doc.gerbe->h[i].size())] = in.phase(w[5]);
        break;
      }

      case Section::Equiv:
        if (key == "hg") {
          in.arity(w, 5);
          if (!doc.bundle_structure) doc.bundle_structure = trivial_bundle_structure(site);
          auto& f = doc.bundle_structure->h[std::size_t(element(w[1]))][std::size_t(patch(w[2]))];
          f[component(w[3], f.size())] = in.phase(w[4]);
        } else if (key == "nu") {
          in.arity(w, 6);
          if (!doc.gerbe_structure) doc.gerbe_structure = trivial_gerbe_structure(site);
          auto& f = doc.gerbe_structure->nu[std::size_t(element(w[1]))][overlap(w[2], w[3])];
          f[component(w[4], f.size())] = in.phase(w[5]);
        } else if (key == "h2") {
          in.arity(w, 6);
          if (!doc.gerbe_structure) doc.gerbe_structure = trivial_gerbe_structure(site);
          auto k = std::size_t(element(w[1])) * std::size_t(n) + std::size_t(element(w[2]));
          auto& f = doc.gerbe_structure->h[k][std::size_t(patch(w[3]))];
          f[component(w[4], f.size())] = in.phase(w[5]);
        } else {
          in.error("equiv lines start with 'hg', 'nu' or 'h2'");
        }
        break;
    }
  }
  if (section != Section::Top) fail(ErrorKind::Parse, "unterminated section at end of input");
  if (!site.group) fail(ErrorKind::Parse, "missing 'group' statement");
  if (!have_site) fail(ErrorKind::Parse, "missing 'site' section");
  return doc;
}

}  // namespace dtorsion
