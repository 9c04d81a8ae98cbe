#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dtorsion/cohomology.hpp"
#include "dtorsion/error.hpp"
#include "oracles.hpp"

using namespace dtorsion;

namespace {

using Factors = std::vector<std::int64_t>;

Cochain random_cochain(const GroupPtr& g, int p, std::int64_t n, std::mt19937_64& rng) {
  Cochain c(g, p, n);
  std::vector<std::int64_t> v(c.size());
  for (auto& x : v) x = std::int64_t(rng() % std::uint64_t(n));
  c.assign(std::move(v));
  return c;
}

// Normalized table of a full n*n oracle table.
Cochain from_full2(const GroupPtr& g, const oracle::Table& t, std::int64_t n) {
  return Cochain::from_function(g, 2, n, [&](std::span<const Element> a) {
    return t[std::size_t(a[0]) * g->order() + a[1]];
  });
}

oracle::Table to_full2(const Cochain& c) {
  const int n = c.group()->order();
  oracle::Table t(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[std::size_t(x) * n + y] = c({x, y});
  return t;
}

// V4 cocycle 2 * x1 * y2 mod 4 with element index 2*x1 + x2.
Cochain v4_cocycle(const GroupPtr& g) {
  return Cochain::from_function(g, 2, 4, [](std::span<const Element> a) {
    return std::int64_t(2 * ((a[0] >> 1) & 1) * (a[1] & 1));
  });
}

const char* kSmallGroups[] = {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2",
                              "Z2xZ4", "Z2xZ2xZ2", "S3", "D4", "Q8"};

}  // namespace

TEST_CASE("phase arithmetic") {
  CHECK(Phase::parse("3/4").str() == "3/4");
  CHECK(Phase::parse("2/4").str() == "1/2");
  CHECK(Phase::parse("-1/4").str() == "3/4");
  CHECK(Phase::parse("4/4").str() == "0/1");
  CHECK((Phase(1, 2) * Phase(1, 4)).str() == "3/4");
  CHECK((Phase(1, 6) * Phase(1, 4)).str() == "5/12");
  CHECK(Phase(1, 2) == Phase(2, 4));
  CHECK(Phase(1, 3).pow(3).is_one());
  CHECK(Phase(1, 4).inverse().str() == "3/4");
  CHECK(Phase(1, 2).over(6).exponent() == 3);
  CHECK_THROWS_AS(Phase(1, 4).over(6), Error);
  CHECK_THROWS_AS(Phase::parse("1/0"), Error);
  CHECK_THROWS_AS(Phase::parse("half"), Error);
}

TEST_CASE("cochain storage and text form") {
  auto g = parse_group_spec("S3");
  Cochain c(g, 2, 6);
  CHECK(c.size() == 25);
  c.set({1, 2}, 5);
  c.set({2, 1}, -1);
  CHECK(c({1, 2}) == 5);
  CHECK(c({2, 1}) == 5);
  CHECK(c({0, 3}) == 0);
  CHECK_THROWS_AS(c.set({0, 3}, 1), Error);
  c.set({0, 3}, 0);
  auto back = Cochain::parse(g, c.to_text());
  CHECK(back == c);
  CHECK(c.to_text().rfind("cocycle p=2 N=6 group=S3\n", 0) == 0);
  CHECK_THROWS_AS(Cochain::parse(g, "cocycle p=2 N=6\n1 2\n"), Error);
  CHECK_THROWS_AS(Cochain(g, 5, 2), Error);
}

TEST_CASE("coboundary hand values") {
  auto z2 = parse_group_spec("Z2");
  Cochain f(z2, 1, 2);
  f.set({1}, 1);
  CHECK(coboundary(f)({1, 1}) == 0);
  Cochain f4(z2, 1, 4);
  f4.set({1}, 1);
  CHECK(coboundary(f4)({1, 1}) == 2);
  CHECK_THROWS_AS(coboundary(Cochain(z2, 4, 2)), Error);
}

TEST_CASE("d o d = 0") {
  // exhaustive over mu_2 cochains for |G| <= 4
  for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
    auto g = parse_group_spec(spec);
    for (int p = 0; p <= 2; ++p) {
      std::size_t size = Cochain::table_size(g->order(), p);
      oracle::odometer(size, 2, [&](const oracle::Table& t) {
        Cochain c(g, p, 2);
        c.assign(t);
        CHECK(coboundary(coboundary(c)).is_zero());
      });
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto g = parse_group_spec(kSmallGroups[i % std::size(kSmallGroups)]);
    int p = int(i % 3);
    std::int64_t n = 2 + std::int64_t(rng() % 11);
    Cochain c = random_cochain(g, p, n, rng);
    REQUIRE(coboundary(coboundary(c)).is_zero());
  }
}

TEST_CASE("bar differential matrix agrees with coboundary") {
  std::mt19937_64 rng(3);
  for (const char* spec : {"S3", "Q8", "Z2xZ2"}) {
    auto g = parse_group_spec(spec);
    for (int p = 0; p <= 2; ++p) {
      SparseMatrix d = bar_differential(*g, p);
      Cochain c = random_cochain(g, p, 1000003, rng);
      Cochain dc = coboundary(c);
      for (int r = 0; r < d.rows(); ++r) {
        std::int64_t acc = 0;
        for (auto [col, v] : d.row(r)) acc += v * c.values()[col];
        CHECK(mod_floor(acc, 1000003) == dc.values()[r]);
      }
    }
  }
}

TEST_CASE("bockstein") {
  auto z2 = parse_group_spec("Z2");
  CHECK(bockstein(Cochain(z2, 1, 2)).is_zero());
  Cochain f(z2, 1, 2);
  f.set({1}, 1);
  Cochain b = bockstein(f);
  CHECK(b({1, 1}) == 1);
  CHECK(is_cocycle(b));
  Cochain bad(parse_group_spec("Z3"), 1, 3);
  bad.set({1}, 1);
  CHECK_THROWS_AS(bockstein(bad), Error);

  // naturality: the Bockstein of a coboundary is a coboundary
  for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
    auto g = parse_group_spec(spec);
    const std::int64_t n = g->order();
    auto h3 = cohomology_zn(g, 3, n);
    oracle::odometer(std::size_t(n - 1), n, [&](const oracle::Table& t) {
      Cochain a(g, 1, n);
      a.assign(t);
      CHECK(h3.coboundary_witness(bockstein(coboundary(a))).has_value());
    });
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      Cochain db = coboundary(random_cochain(g, 1, 2 * n, rng));
      CHECK(is_cocycle(bockstein(db)));
    }
  }
}

TEST_CASE("H^p(G, Z/N) examples") {
  auto z2 = parse_group_spec("Z2");
  CHECK(cohomology_zn(z2, 2, 2).invariant_factors() == Factors{2});
  CHECK(cohomology_zn(z2, 1, 2).invariant_factors() == Factors{2});
  auto v4 = parse_group_spec("Z2xZ2");
  auto h = cohomology_zn(v4, 2, 4);
  CHECK_FALSE(h.is_trivial(v4_cocycle(v4)));

  // |H^2(G, Z/N)| = |Z^2| / |B^2| by enumeration
  for (auto [spec, n] : {std::pair{"Z2", 2}, {"Z2", 4}, {"Z3", 3}, {"Z3", 6}, {"Z4", 4},
                         {"Z2xZ2", 2}, {"Z2xZ2", 4}}) {
    auto g = parse_group_spec(spec);
    auto z = oracle::all_2cocycles(*g, n);
    auto b = oracle::zn_coboundaries(*g, n);
    CAPTURE(spec);
    CAPTURE(n);
    CHECK(cohomology_zn(g, 2, n).order() == std::int64_t(z.size() / b.size()));
  }
  CHECK(cohomology_zn(v4, 2, 4).order() == 8);
}

TEST_CASE("H^p(G, U(1)) examples") {
  auto z2 = parse_group_spec("Z2");
  CHECK(cohomology_u1(z2, 2).invariant_factors().empty());
  CHECK(cohomology_u1(parse_group_spec("Z2xZ2"), 2).invariant_factors() == Factors{2});
  CHECK(cohomology_u1(parse_group_spec("Z4"), 3).invariant_factors() == Factors{4});
  CHECK(cohomology_u1(parse_group_spec("Z6"), 1).invariant_factors() == Factors{6});
  CHECK(cohomology_u1(parse_group_spec("S3"), 1).invariant_factors() == Factors{2});
  CHECK(cohomology_u1(parse_group_spec("Q8"), 3).invariant_factors() == Factors{8});
  CHECK(cohomology_u1(parse_group_spec("Z2xZ2"), 2, 8).invariant_factors() == Factors{2});
  CHECK_THROWS_AS(cohomology_u1(parse_group_spec("Z4"), 2, 6), Error);

  // omega(g,g) = -1 on Z2 is the U(1) coboundary of f(g) = i
  Cochain w(z2, 2, 2);
  w.set({1, 1}, 1);
  auto h = cohomology_u1(z2, 2);
  auto wit = h.coboundary_witness(w);
  REQUIRE(wit.has_value());
  CHECK(coboundary(*wit) == w.over(4));
}

TEST_CASE("integral oracle") {
  auto z2 = parse_group_spec("Z2");
  CHECK(cohomology_z_oracle(z2, 2) == Factors{2});
  CHECK(cohomology_z_oracle(z2, 3).empty());
  CHECK(cohomology_z_oracle(parse_group_spec("Z2xZ2"), 3) == Factors{2});
  CHECK(cohomology_z_oracle(parse_group_spec("Z5"), 4) == Factors{5});
  CHECK(cohomology_z_oracle(parse_group_spec("S3"), 4) == Factors{6});
  CHECK_THROWS_AS(cohomology_z_oracle(parse_group_spec("Z9"), 4), Error);
}

TEST_CASE("U(1) cohomology agrees with the integral oracle") {
  for (const char* spec : kSmallGroups) {
    auto g = parse_group_spec(spec);
    for (int p : {1, 2}) {
      CAPTURE(spec);
      CAPTURE(p);
      CHECK(cohomology_u1(g, p).invariant_factors() == cohomology_z_oracle(g, p + 1));
    }
  }
  for (const char* spec : {"Z2", "Z3", "Z2xZ2", "S3", "D4"}) {
    auto g = parse_group_spec(spec);
    CAPTURE(spec);
    CHECK(cohomology_u1(g, 3).invariant_factors() == cohomology_z_oracle(g, 4));
  }
}

TEST_CASE("U(1) H^2 matches enumeration of mu_N cochains for |G| <= 4") {
  for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
    auto g = parse_group_spec(spec);
    const std::int64_t n = g->order();
    auto z = oracle::all_2cocycles(*g, n);
    auto s = oracle::u1_coboundaries(*g, n);
    auto h = cohomology_u1(g, 2);
    CAPTURE(spec);
    REQUIRE(h.order() == std::int64_t(z.size() / s.size()));
    auto reps = h.enumerate_representatives();
    auto diff = [&](const oracle::Table& a, const oracle::Table& b) {
      oracle::Table d(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) d[i] = mod_floor(a[i] - b[i], n);
      return d;
    };
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        CHECK(s.count(diff(to_full2(reps[i]), to_full2(reps[j]))) == 0);
    for (std::size_t i = 0; i < z.size(); i += 1 + z.size() / 500) {
      Cochain x = from_full2(g, z[i], n);
      const auto& rep = reps[std::size_t(h.class_index(x))];
      CHECK(s.count(diff(z[i], to_full2(rep))) == 1);
      CHECK(h.canonical(x) == rep);
    }
  }
}

TEST_CASE("cocycle and coboundary tests") {
  auto v4 = parse_group_spec("Z2xZ2");
  auto h = cohomology_u1(v4, 2);
  Cochain zero(v4, 2, 4);
  CHECK(is_cocycle(zero));
  auto wz = h.coboundary_witness(zero);
  REQUIRE(wz.has_value());
  CHECK(coboundary(*wz).is_zero());

  Cochain w = v4_cocycle(v4);
  CHECK(is_cocycle(w));
  CHECK_FALSE(h.coboundary_witness(w).has_value());
  CHECK_FALSE(cohomology_zn(v4, 2, 4).coboundary_witness(w).has_value());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Cochain f = random_cochain(v4, 1, 4, rng);
    Cochain df = coboundary(f);
    auto wit = cohomology_zn(v4, 2, 4).coboundary_witness(df);
    REQUIRE(wit.has_value());
    CHECK(coboundary(*wit) == df);
    CHECK(h.canonical(df) == h.canonical(zero));
    CHECK(h.canonical(w + df) == h.canonical(w));
  }
  Cochain notcocycle(v4, 2, 4);
  notcocycle.set({1, 2}, 1);
  CHECK_FALSE(is_cocycle(notcocycle));
  CHECK_FALSE(h.coboundary_witness(notcocycle).has_value());
  CHECK_THROWS_AS(h.coordinates(notcocycle), Error);
}

TEST_CASE("U(1) witnesses include Bockstein parts") {
  std::mt19937_64 rng(9);
  for (const char* spec : {"Z2", "Z4", "Z6", "Z2xZ2", "S3", "D4"}) {
    auto g = parse_group_spec(spec);
    const std::int64_t n = g->order();
    for (int p : {2, 3}) {
      if (g->order() > cohomology_order_ceiling(p)) continue;
      auto h = cohomology_u1(g, p);
      auto prev = cohomology_zn(g, p - 1, n);
      for (int i = 0; i < 20; ++i) {
        Cochain a(g, p - 1, n);
        for (const auto& gen : prev.generators()) a = a + gen.scaled(std::int64_t(rng() % n));
        Cochain x = bockstein(a) + coboundary(random_cochain(g, p - 1, n, rng));
        auto wit = h.coboundary_witness(x);
        CAPTURE(spec);
        CAPTURE(p);
        REQUIRE(wit.has_value());
        CHECK(wit->modulus() == n * n);
        CHECK(coboundary(*wit) == x.over(n * n));
        CHECK(h.is_trivial(x));
      }
    }
  }
}

TEST_CASE("class representatives") {
  CHECK(cohomology_u1(parse_group_spec("Z2"), 2).enumerate_representatives().size() == 1);
  CHECK(cohomology_u1(parse_group_spec("Z2xZ2"), 2).enumerate_representatives().size() == 2);
  CHECK(cohomology_u1(parse_group_spec("Z3xZ3"), 2).enumerate_representatives().size() == 3);

  std::mt19937_64 rng(13);
  for (const char* spec : {"Z2xZ2", "Z3xZ3", "Z2xZ4", "Z2xZ2xZ2", "D4"}) {
    auto g = parse_group_spec(spec);
    for (int p : {1, 2, 3}) {
      if (g->order() > cohomology_order_ceiling(p)) continue;
      auto h = cohomology_u1(g, p);
      auto reps = h.enumerate_representatives();
      CAPTURE(spec);
      CAPTURE(p);
      REQUIRE(std::int64_t(reps.size()) == h.order());
      CHECK(reps[0].is_zero());
      for (std::size_t i = 0; i < reps.size(); ++i) {
        CHECK(is_cocycle(reps[i]));
        CHECK(h.class_index(reps[i]) == std::int64_t(i));
        CHECK(h.canonical(reps[i]) == reps[i]);
        if (p > 1) {
          Cochain shifted = reps[i] + coboundary(random_cochain(g, p - 1, h.modulus(), rng));
          CHECK(h.canonical(shifted) == reps[i]);
        }
        for (std::size_t j = i + 1; j < reps.size() && j < i + 8; ++j)
          CHECK_FALSE(h.coboundary_witness(reps[i] - reps[j]).has_value());
      }
    }
  }
  auto big = cohomology_u1(parse_group_spec("Z2xZ2xZ2"), 3);
  CHECK(big.order() == 128);
}

TEST_CASE("ceilings") {
  CHECK_THROWS_AS(cohomology_u1(parse_group_spec("Z3xZ3"), 3), Error);
  CHECK_THROWS_AS(cohomology_u1(parse_group_spec("S5"), 2), Error);
  CHECK_THROWS_AS(cohomology_u1(parse_group_spec("Z2"), 4), Error);
  CHECK_THROWS_AS(cohomology_zn(parse_group_spec("Z2"), 0, 2), Error);
  try {
    cohomology_u1(parse_group_spec("Z3xZ3"), 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Limit);
  }
}

TEST_CASE("Howell reducer gives the least coset element") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t n = std::int64_t(2 + rng() % 11);
    std::size_t len = 1 + rng() % 3;
    std::size_t ngen = rng() % 3;
    std::vector<std::vector<std::int64_t>> gens(ngen, std::vector<std::int64_t>(len));
    for (auto& g : gens)
      for (auto& x : g) x = std::int64_t(rng() % n);
    HowellReducer red(n, len, gens);
    std::set<oracle::Table> span;
    oracle::odometer(ngen, n, [&](const oracle::Table& coeff) {
      oracle::Table v(len, 0);
      for (std::size_t k = 0; k < ngen; ++k)
        for (std::size_t i = 0; i < len; ++i) v[i] = (v[i] + coeff[k] * gens[k][i]) % n;
      span.insert(v);
    });
    CHECK(red.span_order() == std::int64_t(span.size()));
    oracle::Table x(len);
    for (auto& v : x) v = std::int64_t(rng() % n);
    oracle::Table best;
    for (const auto& s : span) {
      oracle::Table y(len);
      for (std::size_t i = 0; i < len; ++i) y[i] = (x[i] + s[i]) % n;
      if (best.empty() || y < best) best = y;
    }
    auto r = x;
    red.reduce(r);
    CHECK(r == best);
  }
}
