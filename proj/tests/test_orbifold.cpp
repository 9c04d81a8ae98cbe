#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dtorsion/error.hpp"
#include "dtorsion/orbifold.hpp"

using namespace dtorsion;

namespace {

// Burnside: orbits of H on cells of dimension d = (1/|H|) sum_h #fixed cells.
std::int64_t burnside_quotient_euler(const GComplex& x, const std::vector<Element>& h) {
  std::int64_t num = 0;
  for (Element e : h)
    for (std::size_t c = 0; c < x.size(); ++c)
      if (x.image(e, int(c)) == int(c)) num += x.cells()[c].dim % 2 ? -1 : 1;
  REQUIRE(num % std::int64_t(h.size()) == 0);
  return num / std::int64_t(h.size());
}

std::int64_t as_int(const Rational& q) {
  REQUIRE(q.get_den() == 1);
  return q.get_num().get_si();
}

std::vector<Element> all_elements(const FiniteGroup& g) {
  std::vector<Element> out(std::size_t(g.order()));
  for (int i = 0; i < g.order(); ++i) out[std::size_t(i)] = i;
  return out;
}

}  // namespace

TEST_CASE("euler characteristic") {
  CHECK(euler_char(circle_with_involution()) == 0);
  CHECK(euler_char(sphere_octahedral(SphereAction::Antipodal)) == 2);
  CHECK(sphere_octahedral(SphereAction::Reflection).cell_counts() == std::vector<std::int64_t>{6, 12, 8});
  CHECK(euler_char(GComplex(cyclic_group(2), {})) == 0);
  CHECK(euler_char(torus_power(1)) == 0);
  CHECK(euler_char(torus_power(4)) == 0);
  CHECK(torus_power(4).size() == 256);
}

TEST_CASE("fixed subcomplex") {
  auto circle = circle_with_involution();
  const Element e[] = {0}, s[] = {1};
  CHECK(fixed_subcomplex(circle, e).cells.size() == circle.size());
  auto f = fixed_subcomplex(circle, s);
  CHECK(f.complex.cell_counts() == std::vector<std::int64_t>{2});
  CHECK(euler_char(f.complex) == 2);
  CHECK(f.centralizer.size() == 2);

  auto t4 = fixed_subcomplex(torus_power(4), s);
  CHECK(t4.complex.cell_counts() == std::vector<std::int64_t>{16});

  auto eq = fixed_subcomplex(sphere_octahedral(SphereAction::Reflection), s);
  CHECK(eq.complex.cell_counts() == std::vector<std::int64_t>{4, 4});
  CHECK(euler_char(eq.complex) == 0);
  CHECK(fixed_subcomplex(sphere_octahedral(SphereAction::Antipodal), s).cells.empty());
}

TEST_CASE("quotient euler characteristic") {
  const Element e[] = {0};
  auto sphere = sphere_octahedral(SphereAction::Antipodal);
  CHECK(quotient_orbit_euler(sphere, e) == 2);
  CHECK(quotient_orbit_euler(sphere) == 1);
  CHECK(quotient_orbit_euler(circle_with_rotation(2)) == 0);
  CHECK(quotient_orbit_euler(sphere_octahedral(SphereAction::Reflection)) == 1);
  CHECK(quotient_orbit_euler(torus_power(4)) == 8);
  const Element not_closed[] = {0, 1};
  CHECK_THROWS_AS(quotient_orbit_euler(circle_with_rotation(3), not_closed), Error);
}

TEST_CASE("orbifold euler characteristic") {
  auto trivial = GComplex(cyclic_group(1), sphere_octahedral(SphereAction::Antipodal).cells());
  CHECK(as_int(orbifold_euler_sum(trivial)) == 2);
  CHECK(orbifold_euler_conjugacy(trivial) == 2);

  auto s2 = sphere_octahedral(SphereAction::Reflection);
  CHECK(as_int(orbifold_euler_sum(s2)) == 1);
  CHECK(orbifold_euler_conjugacy(s2) == 1);
  auto rep = inertia_components(s2);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].quotient_euler == 1);
  CHECK(rep.components[1].quotient_euler == 0);
  CHECK(rep.components[1].fixed_euler == 0);

  auto t4 = torus_power(4);
  CHECK(as_int(orbifold_euler_sum(t4)) == 24);
  auto k3 = inertia_components(t4);
  REQUIRE(k3.components.size() == 2);
  CHECK(k3.components[0].quotient_euler == 8);
  CHECK(k3.components[1].quotient_euler == 16);
  CHECK(k3.components[1].fixed_cell_counts == std::vector<std::int64_t>{16});
  CHECK(k3.components[1].centralizer_order == 2);
  CHECK(k3.conjugacy_total == 24);
  CHECK(k3.pair_sum == 24);
}

TEST_CASE("products") {
  std::vector<GComplex> z2{circle_with_involution(), circle_with_rotation(2),
                           sphere_octahedral(SphereAction::Antipodal),
                           sphere_octahedral(SphereAction::Reflection), torus_power(2)};
  for (const auto& x : z2)
    for (const auto& y : z2) {
      auto p = product_complex(x, y);
      CHECK(euler_char(p) == euler_char(x) * euler_char(y));
      CHECK(orbifold_euler_sum(p) == orbifold_euler_conjugacy(p));
    }
  CHECK_THROWS_AS(product_complex(circle_with_involution(), circle_with_rotation(3)), Error);
}

TEST_CASE("free actions") {
  for (int m = 2; m <= 5; ++m) {
    auto c = circle_with_rotation(m);
    CHECK(orbifold_euler_sum(c) == Rational(euler_char(c)) / m);
    auto c2 = product_complex(c, c);
    CHECK(orbifold_euler_sum(c2) == Rational(euler_char(c2)) / m);
  }
  auto s = sphere_octahedral(SphereAction::Antipodal);
  CHECK(orbifold_euler_sum(s) == 1);
}

TEST_CASE("admissibility is enforced") {
  // the involution fixes edge 2 but swaps its endpoints
  std::vector<Cell> cells{{0, {}}, {0, {}}, {1, {0, 1}}, {1, {0, 1}}};
  try {
    GComplex(cyclic_group(2), cells, {{0, 1, 2, 3}, {1, 0, 2, 3}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("inadmissible action: element 1 fixes cell 2") != std::string::npos);
  }
  CHECK_THROWS_AS(GComplex(cyclic_group(2), {{1, {}}, {0, {0}}}), Error);
  CHECK_THROWS_AS(GComplex(cyclic_group(2), cells, {{0, 1, 2, 3}, {0, 1, 2, 2}}), Error);
  CHECK_THROWS_AS(GComplex(cyclic_group(3), cells, {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 1, 3, 2}}), Error);
}

TEST_CASE("random admissible complexes") {
  for (const char* name : {"Z2", "Z3", "Z2xZ2", "S3"}) {
    auto g = parse_group_spec(name);
    auto cd = conjugacy_classes(*g);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      INFO(std::string(name) << " seed " << seed);
      auto x = random_admissible_complex(g, seed);
      auto rep = inertia_components(x);
      CHECK(rep.pair_sum == rep.conjugacy_total);
      for (const auto& comp : rep.components) {
        const Element s[] = {comp.representative};
        auto f = fixed_subcomplex(x, s);
        CHECK(comp.quotient_euler == burnside_quotient_euler(f.complex, all_elements(*f.complex.group())));
      }
      CHECK(quotient_orbit_euler(x) == burnside_quotient_euler(x, all_elements(*g)));
      // e(X^g) is a class function; X^{kgk^-1} = k . X^g
      for (Element h = 0; h < g->order(); ++h)
        for (Element k = 0; k < g->order(); ++k) {
          const Element a[] = {h}, b[] = {g->conjugate(k, h)};
          auto fa = fixed_subcomplex(x, a), fb = fixed_subcomplex(x, b);
          std::set<int> moved;
          for (int c : fa.cells) moved.insert(x.image(k, c));
          CHECK(moved == std::set<int>(fb.cells.begin(), fb.cells.end()));
        }
    }
  }
}

TEST_CASE("complex file format") {
  auto x = random_admissible_complex(parse_group_spec("S3"), 5);
  auto y = parse_complex(parse_group_spec("S3"), complex_to_text(x));
  REQUIRE(y.size() == x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    CHECK(y.cells()[c].dim == x.cells()[c].dim);
    CHECK(y.cells()[c].boundary == x.cells()[c].boundary);
    for (Element g = 0; g < 6; ++g) CHECK(y.image(g, int(c)) == x.image(g, int(c)));
  }

  auto circle = parse_complex(cyclic_group(2), R"(
# circle with a reflection; ids need not be contiguous
cell 10 0
cell 20 0
cell 30 1
cell 40 1
bnd 30 10 20
bnd 40 10 20
act 1 10 20 40 30
)");
  // (0 + 3 * 2) / 2: the interval plus two twisted points
  CHECK(orbifold_euler_sum(circle) == 3);
  CHECK(orbifold_euler_conjugacy(circle) == 3);

  // only a generator listed; the rest follows from products
  auto z4 = parse_complex(cyclic_group(4), "cell 0 0\ncell 1 0\ncell 2 0\ncell 3 0\nact 1 1 2 3 0\n");
  CHECK(z4.image(2, 0) == 2);
  CHECK(quotient_orbit_euler(z4) == 1);

  auto err = [](std::string_view text, const std::string& needle) {
    try {
      parse_complex(cyclic_group(3), text);
      return false;
    } catch (const Error& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
  };
  CHECK(err("cell 0 0\ncell 0 1\n", "declared twice"));
  CHECK(err("cell 0 0\nbnd 0 7\n", "unknown cell"));
  CHECK(err("cell 0 0\ncell 1 0\nact 1 1 0\n", "group action"));
  CHECK(err("cell 0 0\nact 5 0\n", "out of range"));
  CHECK(err("cell 0 0\nface 0\n", "line 2"));

  CHECK(builtin_complex("torus4").size() == 256);
  CHECK(builtin_complex("circle-rotation3").group()->order() == 3);
  CHECK_THROWS_AS(builtin_complex("klein-bottle"), Error);
}
