#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dtorsion/error.hpp"
#include "dtorsion/group.hpp"

using namespace dtorsion;

namespace {

std::vector<int> class_sizes(const FiniteGroup& g) {
  std::vector<int> out;
  for (const auto& c : conjugacy_classes(g).classes) out.push_back(int(c.size()));
  return out;
}

ErrorKind kind_of(const char* spec) {
  try {
    parse_group_spec(spec);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << spec);
  return ErrorKind::Internal;
}

const char* kFamilies[] = {"Z1", "Z2", "Z7", "Z2xZ2", "Z3xZ3", "Z2xZ2xZ2", "D3", "D4", "D5",
                           "Q8", "S3", "S4", "A4", "A5", "Z2xS3", "S5"};

}  // namespace

TEST_CASE("parse named families") {
  auto z2 = parse_group_spec("Z2");
  CHECK(z2->order() == 2);
  CHECK(z2->identity() == 0);
  CHECK(z2->mul(1, 1) == 0);

  auto v4 = parse_group_spec("Z2xZ2");
  CHECK(v4->order() == 4);
  for (int g = 1; g < 4; ++g) CHECK(v4->mul(g, g) == v4->identity());
  // lexicographic (i, j) -> 2i + j
  CHECK(v4->mul(2, 1) == 3);

  CHECK(parse_group_spec("D4")->order() == 8);
  CHECK(parse_group_spec("S5")->order() == 120);
  CHECK(parse_group_spec("A5")->order() == 60);
  CHECK(parse_group_spec(" Z3 x Z3 ")->order() == 9);
}

TEST_CASE("perm generators close to S3") {
  auto g = parse_group_spec("perm 3 (1 2) (1 2 3)");
  CHECK(g->order() == 6);
  CHECK(class_sizes(*g) == std::vector<int>{1, 3, 2});
  CHECK_FALSE(g->is_abelian());
  // back-to-back cycles form one generator: (1 2)(3 4) generates Z2
  CHECK(parse_group_spec("perm 4 (1 2)(3 4)")->order() == 2);
  CHECK(parse_group_spec("perm 4 (1 2)(3 4), (1 3)(2 4)")->order() == 4);
}

TEST_CASE("table input, including a non-zero identity") {
  auto g = parse_group_spec("table 2 1 0 0 1");
  CHECK(g->identity() == 1);
  CHECK(g->nonidentity_rank(1) == -1);
  CHECK(g->nonidentity_element(0) == 0);
}

TEST_CASE("parse and validation errors") {
  CHECK(kind_of("") == ErrorKind::Parse);
  CHECK(kind_of("Foo") == ErrorKind::Parse);
  CHECK(kind_of("Zq") == ErrorKind::Parse);
  CHECK(kind_of("Z0") == ErrorKind::Invalid);
  CHECK(kind_of("S6") == ErrorKind::Unsupported);
  CHECK(kind_of("Q16") == ErrorKind::Unsupported);
  CHECK(kind_of("table 2 0 1 1 1") == ErrorKind::Invalid);
  CHECK(kind_of("table 2 0 1 1") == ErrorKind::Parse);
  // Latin square but not associative (order-5 loop)
  CHECK(kind_of("table 5 0 1 2 3 4 1 0 3 4 2 2 4 0 1 3 3 2 4 0 1 4 3 1 2 0") == ErrorKind::Invalid);
  CHECK(kind_of("perm 3 (1 4)") == ErrorKind::Parse);
  CHECK(kind_of("perm 3 (1 2") == ErrorKind::Parse);
  CHECK(kind_of("Z11xZ11xZ2") == ErrorKind::Limit);
}

TEST_CASE("group axioms hold for every family") {
  for (const char* spec : kFamilies) {
    CAPTURE(spec);
    auto g = parse_group_spec(spec);
    const int n = g->order();
    for (int a = 0; a < n; ++a) {
      CHECK(g->mul(g->identity(), a) == a);
      CHECK(g->mul(a, g->inv(a)) == g->identity());
      if (n <= 24)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) REQUIRE(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(class_sizes(*parse_group_spec("Z2xZ2")) == std::vector<int>{1, 1, 1, 1});
  CHECK(class_sizes(*parse_group_spec("S3")) == std::vector<int>{1, 3, 2});
  CHECK(class_sizes(*parse_group_spec("Q8")) == std::vector<int>{1, 1, 2, 2, 2});
  auto v4 = parse_group_spec("Z2xZ2");
  for (const auto& c : conjugacy_classes(*v4).centralizers) CHECK(c.size() == 4);
}

TEST_CASE("orbit-stabilizer and Burnside count") {
  for (const char* spec : kFamilies) {
    CAPTURE(spec);
    auto g = parse_group_spec(spec);
    auto cd = conjugacy_classes(*g);
    for (int x = 0; x < g->order(); ++x)
      CHECK(cd.classes[cd.class_of[x]].size() * cd.centralizers[x].size() == std::size_t(g->order()));
    CHECK(cd.classes[cd.class_of[g->identity()]] == std::vector<Element>{g->identity()});
    CHECK(commuting_pairs(*g).size() == std::size_t(g->order()) * cd.classes.size());
  }
}

TEST_CASE("commuting pairs") {
  CHECK(commuting_pairs(*parse_group_spec("Z2")).size() == 4);
  CHECK(commuting_pairs(*parse_group_spec("S3")).size() == 18);
  CHECK(commuting_pairs(*parse_group_spec("Q8")).size() == 40);
  auto pairs = commuting_pairs(*parse_group_spec("S3"));
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));
}

TEST_CASE("centralizers") {
  auto v4 = parse_group_spec("Z2xZ2");
  for (int g = 0; g < 4; ++g) CHECK(centralizer(*v4, g).size() == 4);
  auto s3 = parse_group_spec("S3");
  CHECK(centralizer(*s3, 1) == std::vector<Element>{0, 1});
  auto q8 = parse_group_spec("Q8");
  CHECK(centralizer(*q8, 2) == std::vector<Element>{0, 1, 2, 3});
  CHECK_THROWS_AS(centralizer(*q8, 8), Error);
}

TEST_CASE("abelianization") {
  CHECK(abelianization(*parse_group_spec("Z4")).invariant_factors == std::vector<std::int64_t>{4});
  auto s3 = abelianization(*parse_group_spec("S3"));
  CHECK(s3.invariant_factors == std::vector<std::int64_t>{2});
  CHECK(s3.commutator_subgroup == std::vector<Element>{0, 3, 4});
  auto q8 = abelianization(*parse_group_spec("Q8"));
  CHECK(q8.invariant_factors == std::vector<std::int64_t>{2, 2});
  CHECK(q8.commutator_subgroup == std::vector<Element>{0, 1});
  CHECK(abelianization(*parse_group_spec("A5")).invariant_factors.empty());
  CHECK(abelianization(*parse_group_spec("Z2xZ4xZ3")).invariant_factors ==
        std::vector<std::int64_t>{2, 12});
}

TEST_CASE("abelianization projection is a homomorphism onto a group of order |G/[G,G]|") {
  for (const char* spec : kFamilies) {
    CAPTURE(spec);
    auto g = parse_group_spec(spec);
    auto ab = abelianization(*g);
    std::int64_t prod = 1;
    for (auto d : ab.invariant_factors) prod *= d;
    CHECK(prod * std::int64_t(ab.commutator_subgroup.size()) == g->order());
    for (int a = 0; a < g->order(); ++a)
      for (int b = 0; b < g->order(); ++b)
        for (std::size_t i = 0; i < ab.invariant_factors.size(); ++i) {
          auto d = ab.invariant_factors[i];
          REQUIRE((ab.projection[a][i] + ab.projection[b][i]) % d == ab.projection[g->mul(a, b)][i]);
        }
  }
}

TEST_CASE("exponent") {
  CHECK(exponent(*parse_group_spec("Z2xZ2")) == 2);
  CHECK(exponent(*parse_group_spec("S3")) == 6);
  CHECK(exponent(*parse_group_spec("Q8")) == 4);
  for (const char* spec : kFamilies) {
    auto g = parse_group_spec(spec);
    CHECK(g->order() % exponent(*g) == 0);
  }
}
