#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtorsion/cochain.hpp"
#include "dtorsion/cyclotomic.hpp"

namespace dtorsion {

/// Twisted sector with commuting boundary holonomies (g, h).
struct Sector {
  Element g = 0;
  Element h = 0;
  auto operator<=>(const Sector&) const = default;
};

/// Checks gh = hg; throws Invalid otherwise.
Sector make_sector(const FiniteGroup& group, Element g, Element h);

/// epsilon(g, h) = omega(g, h) / omega(h, g) for a commuting pair.
Phase epsilon(const Cochain& omega, Element g, Element h);

struct EpsilonEntry {
  Sector sector;
  Phase phase;
};

/// epsilon over all commuting pairs, ordered by (g, h). omega must be a 2-cocycle.
std::vector<EpsilonEntry> epsilon_table(const Cochain& omega);

/// Sectors grouped into orbits of simultaneous conjugation, each orbit sorted
/// and the orbits ordered by their least sector.
std::vector<std::vector<Sector>> sector_orbits(const FiniteGroup& group);

/// 2x2 integer matrix (a b; c d).
struct Matrix2 {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
};

inline constexpr Matrix2 kModularT{1, 0, 1, 1};
inline constexpr Matrix2 kModularS{0, -1, 1, 0};
Matrix2 operator*(const Matrix2& x, const Matrix2& y);

/// Right action (g, h) . M = (g^a h^c, g^b h^d); T gives (gh, h) and S gives
/// (h, g^-1). Throws Argument unless det M = 1.
Sector modular_transform(const FiniteGroup& group, Sector s, const Matrix2& m);

struct PartitionTerm {
  Sector sector;
  Phase phase;
  std::int64_t multiplicity = 1;  // > 1 only in the conjugation quotient
};

/// (1/|G|) sum over commuting pairs of epsilon(g,h) Z(g,h).
struct Partition {
  GroupPtr group;
  std::vector<PartitionTerm> terms;

  /// "1/|G| * ( Z(0,0) + Z(0,1) - Z(1,1) + e(1/4)*Z(1,2) )"; "Z(0,0)" for |G| = 1.
  std::string symbolic() const;
  /// Evaluates with one exact amplitude per sector; throws Argument on a missing sector.
  Cyclotomic evaluate(const std::map<Sector, Rational>& amplitudes) const;
  /// Evaluates with every amplitude equal to a.
  Cyclotomic evaluate_uniform(const Rational& a) const;
};

/// omega absent means no discrete torsion. With quotient_conjugation the
/// terms are merged per conjugation orbit (the phase is constant on orbits).
Partition assemble_partition(const GroupPtr& group, const std::optional<Cochain>& omega,
                             bool quotient_conjugation = false);

/// Rational group-algebra element sum_g coeff[g] g.
struct GroupAlgebraElement {
  GroupPtr group;
  std::vector<Rational> coeff;

  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  bool operator==(const GroupAlgebraElement& o) const { return coeff == o.coeff; }
  /// Rank of left multiplication on the regular representation.
  int regular_rank() const;
  std::string str() const;
};

/// (1/|G|) sum_g g.
GroupAlgebraElement projection_operator(const GroupPtr& group);

/// Discrete model of the boundary data in the holonomy formula: constant maps
/// omega(g,h) and, for each ordered pair, the flat holonomy of Lambda(g) along
/// the path from x to h.x. The B-field bulk term is taken to be trivial.
struct WilsonData {
  Cochain omega;
  std::vector<Phase> holonomy;  // |G|*|G| entries, holonomy[g*|G| + h]

  explicit WilsonData(Cochain omega);
  Phase along(Element g, Element h) const;
  void set_along(Element g, Element h, Phase p);
};

/// omega(g,h) - omega(h,g) + hol(g along h) - hol(h along g), additively.
Phase holonomy_phase(const WilsonData& data, Element g, Element h);

/// Six-term alternating sum of a 3-cochain over the permutations of a
/// pairwise-commuting triple.
Phase membrane_phase(const Cochain& omega3, Element g1, Element g2, Element g3);

using Matrix3 = std::array<std::array<std::int64_t, 3>, 3>;

std::int64_t det3(const Matrix3& m);
/// g'_i = prod_j g_j^{M_ij}. Throws Argument unless det M = 1.
std::array<Element, 3> sl3_transform(const FiniteGroup& group, const std::array<Element, 3>& t,
                                     const Matrix3& m);
bool check_sl3_invariance(const Cochain& omega3, const std::array<Element, 3>& t, const Matrix3& m);
/// Elementary matrices I + E_ij (i != j) followed by the 24 signed
/// permutation matrices of determinant 1.
std::vector<Matrix3> sl3_generators();

/// Pairwise-commuting ordered triples in lexicographic order.
std::vector<std::array<Element, 3>> commuting_triples(const FiniteGroup& group);

}  // namespace dtorsion
