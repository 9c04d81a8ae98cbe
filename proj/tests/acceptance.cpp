// Acceptance suite: one line per criterion. A criterion whose stated value
// contradicts an exact computation is reported UNATTAINABLE (with the
// computed value) rather than passed; every other check in it still has to hold.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cech_fixtures.hpp"
#include "cli_runner.hpp"
#include "dtorsion/cech.hpp"
#include "dtorsion/cohomology.hpp"
#include "dtorsion/orbifold.hpp"
#include "dtorsion/projrep.hpp"
#include "dtorsion/torsion.hpp"
#include "oracles.hpp"

using namespace dtorsion;

namespace {

using Factors = std::vector<std::int64_t>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> unattainable;  // stated value vs computed value
  std::int64_t checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && failures.size() < 8) failures.push_back(what);
    else if (!cond) failures.back() = "(more failures)";
  }
  void stated(bool holds, const std::string& note) {
    ++checks;
    if (!holds) unattainable.push_back(note);
  }
};

std::string str(const Factors& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "]";
}

Cochain random_cochain(const GroupPtr& g, int p, std::int64_t n, std::mt19937_64& rng) {
  Cochain c(g, p, n);
  std::vector<std::int64_t> v(c.size());
  for (auto& x : v) x = std::int64_t(rng() % std::uint64_t(n));
  c.assign(std::move(v));
  return c;
}

// epsilon straight from the table: omega(g,h) - omega(h,g) as a fraction of a turn.
Phase table_epsilon(const Cochain& w, Element g, Element h) {
  return Phase(mod_floor(w({g, h}) - w({h, g}), w.modulus()), w.modulus());
}

// 4 * x1 * y2 * z3 mod 8 on (Z2)^3, element index 4*x1 + 2*x2 + x3.
std::int64_t type3_value(int a, int b, int c) { return 4 * ((a >> 2) & 1) * ((b >> 1) & 1) * (c & 1); }

void schur_multipliers(Outcome& o) {
  std::vector<std::pair<std::string, Factors>> cases;
  for (int n = 1; n <= 12; ++n) cases.emplace_back("Z" + std::to_string(n), Factors{});
  cases.insert(cases.end(), {{"Z2xZ2", {2}},
                             {"Z3xZ3", {3}},
                             {"Z2xZ2xZ2", {2, 2, 2}},
                             {"D4", {2}},
                             {"Q8", {}},
                             {"S3", {}},
                             {"S4", {2}},
                             {"A4", {2}}});
  for (const auto& [name, expected] : cases) {
    const auto t = Clock::now();
    auto g = parse_group_spec(name);
    const auto got = cohomology_u1(g, 2).invariant_factors();
    o.expect(got == expected, name + ": H^2 = " + str(got) + ", expected " + str(expected));
    const auto oracle = cohomology_z_oracle(g, 3);
    o.expect(oracle == expected, name + ": integral oracle H^3(G,Z) = " + str(oracle));
    if (g->order() <= 4) {
      const std::int64_t n = g->order();
      const auto z = oracle::all_2cocycles(*g, n);
      const auto b = oracle::u1_coboundaries(*g, n);
      std::int64_t order = 1;
      for (auto f : expected) order *= f;
      o.expect(std::int64_t(z.size()) == order * std::int64_t(b.size()),
               name + ": enumeration gives " + std::to_string(z.size()) + "/" + std::to_string(b.size()));
    }
    o.expect(seconds_since(t) < 60, name + ": over 60 s");
  }
}

void h3_suite(Outcome& o) {
  for (int n : {2, 3, 4}) {
    auto g = parse_group_spec("Z" + std::to_string(n));
    const auto f = cohomology_u1(g, 3).invariant_factors();
    o.expect(f == Factors{n}, "H^3(Z" + std::to_string(n) + ") = " + str(f));
    o.expect(cohomology_z_oracle(g, 4) == Factors{n}, "integral oracle for Z" + std::to_string(n));
  }
  auto v4 = parse_group_spec("Z2xZ2");
  const auto h = cohomology_u1(v4, 3);
  o.expect(h.order() == 8, "H^3(Z2xZ2) has order " + std::to_string(h.order()));
  o.expect(h.invariant_factors() == cohomology_z_oracle(v4, 4),
           "Bockstein quotient " + str(h.invariant_factors()) + " vs integral " + str(cohomology_z_oracle(v4, 4)));
}

void epsilon_laws(Outcome& o) {
  std::mt19937_64 rng(2024);
  const char* abelian[] = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z3xZ3"};
  const char* other[] = {"S3", "D4", "Q8"};
  auto laws = [&](const std::string& name, bool bicharacter, bool modular) {
    auto g = parse_group_spec(name);
    auto h = cohomology_u1(g, 2);
    for (const auto& w : h.enumerate_representatives()) {
      const auto table = epsilon_table(w);
      for (const auto& e : table) {
        o.expect(e.phase == table_epsilon(w, e.sector.g, e.sector.h), name + ": epsilon differs from the table");
        o.expect(epsilon(w, e.sector.g, e.sector.g).is_one(), name + ": epsilon(g,g) != 1");
        o.expect((e.phase * epsilon(w, e.sector.h, e.sector.g)).is_one(), name + ": epsilon(g,h) epsilon(h,g) != 1");
      }
      if (bicharacter)
        for (auto t : commuting_triples(*g))
          o.expect(epsilon(w, g->mul(t[0], t[1]), t[2]) == epsilon(w, t[0], t[2]) * epsilon(w, t[1], t[2]),
                   name + ": bicharacter law");
      if (modular)
        for (const Matrix2& m : {kModularT, kModularS, kModularT * kModularS, kModularS * kModularT})
          for (const auto& e : table) {
            const Sector s = modular_transform(*g, e.sector, m);
            o.expect(epsilon(w, s.g, s.h) == e.phase, name + ": SL(2,Z) invariance");
          }
    }
  };
  for (const char* name : abelian) laws(name, true, std::string(name) == "Z2xZ2" || std::string(name) == "Z3xZ3");
  for (const char* name : other) laws(name, false, false);

  // coboundary invariance over 200 random shifts per group
  for (const char* name : {"Z2xZ2", "Z3xZ3", "D4"}) {
    auto g = parse_group_spec(name);
    auto h = cohomology_u1(g, 2);
    const auto reps = h.enumerate_representatives();
    for (int i = 0; i < 200; ++i) {
      const auto& w = reps[std::size_t(i) % reps.size()];
      const auto base = epsilon_table(w);
      const auto shifted = epsilon_table(w + coboundary(random_cochain(g, 1, w.modulus(), rng)));
      for (std::size_t k = 0; k < base.size(); ++k)
        o.expect(shifted[k].phase == base[k].phase, std::string(name) + ": coboundary shift changes epsilon");
    }
  }

  auto v4 = parse_group_spec("Z2xZ2");
  const auto w = cohomology_u1(v4, 2).representative(1);
  const Element a = 2, b = 1;
  o.expect(epsilon(w, a, b) == Phase(1, 2), "V4: epsilon(a,b) != -1");
  int minus = 0;
  for (const auto& e : epsilon_table(w)) minus += e.phase == Phase(1, 2);
  // the pairs with x1 y2 != x2 y1 are the 6 ordered pairs of distinct non-identity elements
  int rule = 0;
  for (Element g = 0; g < 4; ++g)
    for (Element h = 0; h < 4; ++h) rule += ((g >> 1) * (h & 1) + (g & 1) * (h >> 1)) % 2;
  o.expect(minus == rule, "V4: -1 entries " + std::to_string(minus) + " vs rule " + std::to_string(rule));
  o.stated(minus == 8, "V4 nontrivial class: " + std::to_string(minus) +
                           " entries equal -1 (stated 8; the stated rule x1y2 != x2y1 selects " +
                           std::to_string(rule) + ")");
}

void partition_structure(Outcome& o) {
  for (const char* name : {"Z2", "Z2xZ2", "S3", "D4", "Q8", "A4", "Z3xZ3"}) {
    auto g = parse_group_spec(name);
    const auto p = assemble_partition(g, std::nullopt);
    const auto pairs = commuting_pairs(*g);
    o.expect(p.terms.size() == pairs.size(), std::string(name) + ": one term per commuting pair");
    o.expect(p.symbolic().starts_with("1/" + std::to_string(g->order()) + " * ( Z(0,0) + "),
             std::string(name) + ": symbolic shape " + p.symbolic().substr(0, 20));
    // Burnside: #commuting pairs / |G| = #conjugacy classes, counted by brute force
    std::set<std::set<Element>> classes;
    for (Element x = 0; x < g->order(); ++x) {
      std::set<Element> c;
      for (Element k = 0; k < g->order(); ++k) c.insert(g->conjugate(k, x));
      classes.insert(c);
    }
    o.expect(pairs.size() == classes.size() * std::size_t(g->order()), std::string(name) + ": Burnside count");
    o.expect(p.evaluate_uniform(1).as_rational() == std::optional<Rational>(std::int64_t(classes.size())),
             std::string(name) + ": unit amplitudes give " + p.evaluate_uniform(1).str());
  }
  auto v4 = parse_group_spec("Z2xZ2");
  const auto w = cohomology_u1(v4, 2).representative(1);
  const auto value = assemble_partition(v4, w).evaluate_uniform(1);
  // (1/|G|) sum over commuting pairs of the table epsilon, as an exact rational
  std::int64_t sum = 0;
  for (Element g = 0; g < 4; ++g)
    for (Element h = 0; h < 4; ++h) sum += table_epsilon(w, g, h).is_one() ? 1 : -1;
  o.expect(value.as_rational() == std::optional<Rational>(Rational(sum) / 4), "V4 twisted value " + value.str() + " vs oracle");
  o.expect(value != assemble_partition(v4, std::nullopt).evaluate_uniform(1), "V4 twisted value equals untwisted");
  o.stated(value.is_zero(), "V4 nontrivial class with unit amplitudes: value " + value.str() +
                                " (stated 0; (1/4) * (10 - 6) = 1, the number of omega-regular classes)");
}

void kummer(Outcome& o) {
  const auto t4 = torus_power(4);
  const auto sum = orbifold_euler_sum(t4);
  o.expect(sum == 24, "orbifold_euler_sum = " + sum.get_str());
  o.expect(orbifold_euler_conjugacy(t4) == 24, "orbifold_euler_conjugacy");
  const auto rep = inertia_components(t4);
  o.expect(rep.components.size() == 2 && rep.components[0].quotient_euler == 8 &&
               rep.components[1].quotient_euler == 16,
           "components are not 8 + 16");
}

void euler_equality(Outcome& o) {
  auto check = [&](const GComplex& x, const std::string& what) {
    const auto sum = orbifold_euler_sum(x);
    o.expect(sum.get_den() == 1, what + ": non-integral sum " + sum.get_str());
    o.expect(sum == orbifold_euler_conjugacy(x), what + ": formulas disagree");
  };
  std::vector<std::pair<std::string, GComplex>> builders;
  for (const char* name : {"circle-involution", "sphere-antipodal", "sphere-reflection", "torus1", "torus2", "torus3",
                           "torus4", "circle-rotation2", "circle-rotation3", "circle-rotation5"})
    builders.emplace_back(name, builtin_complex(name));
  for (const auto& [name, x] : builders) check(x, name);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      check(product_complex(builders[i].second, builders[j].second), builders[i].first + " x " + builders[j].first);
  for (const char* name : {"Z2", "Z3", "Z2xZ2", "S3"}) {
    auto g = parse_group_spec(name);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto x = random_admissible_complex(g, seed);
      check(x, std::string(name) + " seed " + std::to_string(seed));
      // Burnside count of orbits, by brute force
      std::int64_t fixed = 0;
      for (Element e = 0; e < g->order(); ++e)
        for (std::size_t c = 0; c < x.size(); ++c)
          if (x.image(e, int(c)) == int(c)) fixed += x.cells()[c].dim % 2 ? -1 : 1;
      o.expect(fixed == quotient_orbit_euler(x) * g->order(), std::string(name) + ": orbit count");
    }
  }
}

void projectivization(Outcome& o) {
  const char* groups[] = {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "S3", "D4", "Q8"};
  for (const char* name : groups) {
    auto g = parse_group_spec(name);
    const int n = g->order();
    for (const auto& w : cohomology_u1(g, 2).enumerate_representatives()) {
      const auto rep = twisted_regular_rep(w);
      o.expect(verify_projective_relation(rep, w).ok(), std::string(name) + ": projective relation");
      // independent: gamma(g) gamma(h) e_x against omega(g,h) gamma(gh) e_x entry by entry
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (int x = 0; x < n; ++x) {
            const auto& gb = rep[b];
            const auto& ga = rep[a];
            const int mid = gb.row[std::size_t(x)];
            const int lhs_row = ga.row[std::size_t(mid)];
            const Phase lhs = ga.phase[std::size_t(mid)] * gb.phase[std::size_t(x)];
            const auto& gab = rep[g->mul(a, b)];
            o.expect(lhs_row == gab.row[std::size_t(x)] &&
                         lhs == w.phase({a, b}) * gab.phase[std::size_t(x)],
                     std::string(name) + ": entry mismatch");
          }
      for (Element x = 0; x < n; ++x) {
        const auto t = rep[x].trace(w.modulus()).as_rational();
        o.expect(t && *t == (x == g->identity() ? n : 0), std::string(name) + ": trace");
      }
    }
  }
  auto v4 = parse_group_spec("Z2xZ2");
  const auto w = cohomology_u1(v4, 2).representative(1);
  o.expect(omega_regular_classes(w).size() == 1, "V4: regular classes");
  o.expect(irrep_dimensions(w).dimensions == std::vector<int>{2}, "V4: irrep dimensions");
}

void membranes(Outcome& o) {
  auto g = parse_group_spec("Z2xZ2xZ2");
  const auto w = Cochain::from_function(g, 3, 8, [](std::span<const Element> a) {
    return type3_value(a[0], a[1], a[2]);
  });
  o.expect(oracle::is_3cocycle(*g, type3_value, 8), "type-III table is not a 3-cocycle");
  o.expect(membrane_phase(w, 4, 2, 1) == Phase(1, 2), "phase on (e1,e2,e3) is " + membrane_phase(w, 4, 2, 1).str());
  const auto gens = sl3_generators();
  for (auto t : commuting_triples(*g)) {
    // six-term alternating sum written out
    const int p[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    std::int64_t s = 0;
    for (int i = 0; i < 6; ++i) s += (i < 3 ? 1 : -1) * type3_value(t[p[i][0]], t[p[i][1]], t[p[i][2]]);
    o.expect(membrane_phase(w, t[0], t[1], t[2]) == Phase(mod_floor(s, 8), 8), "membrane phase vs direct sum");
    o.expect(membrane_phase(w, t[0], t[0], t[1]).is_one() && membrane_phase(w, t[0], t[1], t[0]).is_one() &&
                 membrane_phase(w, t[1], t[0], t[0]).is_one(),
             "repeated arguments");
    for (const auto& m : gens) o.expect(check_sl3_invariance(w, t, m), "SL(3,Z) invariance");
  }
}

void cech_round_trips(Outcome& o) {
  using namespace fixtures;
  for (auto [name, mod] : {std::pair{"Z2xZ2", 2}, std::pair{"Z3", 3}}) {
    auto g = parse_group_spec(name);
    const auto pt = DiscreteSite::point(g);
    const auto cocycles = all_full_2cocycles(*g, mod);
    for (const auto& ts : cocycles) {
      const auto s = single_patch(pt, ts, mod);
      o.expect(verify_gerbe_equivariance(pt, trivial_gerbe(pt), s).ok(), std::string(name) + ": point structure");
      for (const auto& td : cocycles) {
        const GerbeDifferenceData d{std::vector<ComponentPhases>(std::size_t(g->order())), single_patch(pt, td, mod).h};
        o.expect(gerbe_difference_data(pt, trivial_gerbe(pt), act(s, d), s) == d, std::string(name) + ": point round trip");
      }
    }
    const auto two = DiscreteSite::simplex(g, 2);
    const auto data = two_patch_data(two, mod);
    for (const auto& sd : data) {
      const auto s = structure_of(two, sd);
      o.expect(verify_gerbe_equivariance(two, trivial_gerbe(two), s).ok(), std::string(name) + ": two-patch structure");
      for (const auto& d : data)
        o.expect(gerbe_difference_data(two, trivial_gerbe(two), act(s, d), s) == d,
                 std::string(name) + ": two-patch round trip");
    }
  }
  // bundles: every character of V4 acts and is recovered
  auto v4 = parse_group_spec("Z2xZ2");
  for (const auto& site : {DiscreteSite::point(v4), DiscreteSite::simplex(v4, 2), parse_cech(kCircle).site}) {
    const auto s = trivial_bundle_structure(site);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        std::vector<Phase> chi;
        for (Element x = 0; x < 4; ++x) chi.emplace_back(a * (x >> 1) + b * (x & 1), 2);
        const auto d = bundle_difference_character(site, trivial_bundle(site), act(s, chi), s);
        o.expect(d.homomorphism && d.characters.size() == 1 && d.characters[0] == chi, "bundle round trip");
      }
  }
  for (const char* name : {"Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8", "Z2xZ4", "Z2xZ2xZ2", "Z3xZ3"}) {
    auto g = parse_group_spec(name);
    const auto reps = cohomology_u1(g, 2).enumerate_representatives();
    for (const auto& site : {DiscreteSite::point(g), DiscreteSite::simplex(g, 2)})
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto t = extract_discrete_torsion(site, embed_cocycle(site, reps[i]));
        o.expect(t.class_index == std::int64_t(i) && t.canonical == reps[i], std::string(name) + ": extraction");
      }
  }
}

void determinism(Outcome& o) {
  const auto corpus = cli::load_corpus(DTORSION_CLI_CORPUS);
  o.expect(!corpus.empty(), "empty corpus");
  for (const auto& inv : corpus) {
    const auto a = cli::run(inv.args), b = cli::run(inv.args);
    o.expect(a.exit_code == inv.expected_exit, "'" + inv.args + "' exit " + std::to_string(a.exit_code));
    o.expect(a.exit_code == b.exit_code && a.out == b.out, "'" + inv.args + "' differs between runs");
  }
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Schur multipliers", 60 * 21, schur_multipliers},
      {2, "H^3 suite", 120, h3_suite},
      {3, "epsilon laws", 10, epsilon_laws},
      {4, "partition structure", 1, partition_structure},
      {5, "Kummer check", 5, kummer},
      {6, "Euler formula equality", 60, euler_equality},
      {7, "projectivization", 30, projectivization},
      {8, "membrane phases", 30, membranes},
      {9, "Cech round trips", 30, cech_round_trips},
      {10, "CLI determinism", 60, determinism},
  };
  int failed = 0, unattainable = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t);
    if (s > c.limit_s) o.failures.push_back("took " + std::to_string(s) + " s");
    const char* status = !o.failures.empty() ? "FAIL" : !o.unattainable.empty() ? "UNATTAINABLE" : "PASS";
    std::printf("criterion %2d  %-12s  %-24s %8.3f s  %lld checks", c.id, status, c.title, s,
                static_cast<long long>(o.checks));
    for (const auto& f : o.failures) std::printf("\n    failure: %s", f.c_str());
    for (const auto& u : o.unattainable) std::printf("\n    unattainable: %s", u.c_str());
    std::printf("\n");
    failed += !o.failures.empty();
    unattainable += o.failures.empty() && !o.unattainable.empty();
  }
  std::printf("summary: %d passed, %d unattainable, %d failed\n",
              int(criteria.size()) - failed - unattainable, unattainable, failed);
  return failed == 0 ? 0 : 1;
}
