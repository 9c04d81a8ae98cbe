#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dtorsion/cochain.hpp"
#include "dtorsion/cohomology.hpp"
#include "dtorsion/cyclotomic.hpp"

namespace dtorsion {

/// Convention throughout: gamma(g) gamma(h) = omega(g,h) gamma(gh).

/// Square monomial matrix: column j is phase[j] * e_{row[j]}.
struct MonomialMatrix {
  std::vector<int> row;
  std::vector<Phase> phase;

  static MonomialMatrix identity(int dim);
  int dim() const { return int(row.size()); }
  MonomialMatrix operator*(const MonomialMatrix& o) const;
  MonomialMatrix scaled(const Phase& p) const;
  /// Equality of the underlying complex matrices.
  bool operator==(const MonomialMatrix& o) const;
  /// Entry (r, c), zero when r is not the row of column c.
  std::optional<Phase> entry(int r, int c) const;
  Cyclotomic trace(std::int64_t modulus) const;
};

/// One monomial matrix per group element.
struct MonomialRep {
  GroupPtr group;
  std::vector<MonomialMatrix> matrices;

  int dimension() const { return matrices.empty() ? 0 : matrices.front().dim(); }
  const MonomialMatrix& operator[](Element g) const { return matrices[std::size_t(g)]; }
};

/// Dense exact matrix, row major; all entries share one modulus.
struct ExactMatrix {
  int dim = 0;
  std::vector<Cyclotomic> entries;

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix scaled(const Cyclotomic& c) const;
  ExactMatrix over(std::int64_t modulus) const;
  bool operator==(const ExactMatrix& o) const { return dim == o.dim && entries == o.entries; }
  std::int64_t modulus() const { return entries.empty() ? 1 : entries.front().modulus(); }
};

ExactMatrix to_exact(const MonomialMatrix& m, std::int64_t modulus);

struct ExactRep {
  GroupPtr group;
  std::vector<ExactMatrix> matrices;
};

/// Basis indexed by G, gamma(g) e_x = omega(g,x) e_{gx}. Throws Invalid unless
/// omega is a 2-cocycle.
MonomialRep twisted_regular_rep(const Cochain& omega);

/// Pairs (g, h) at which gamma(g) gamma(h) != omega(g,h) gamma(gh).
struct ProjectiveCheck {
  std::vector<std::pair<Element, Element>> violations;  // lexicographic
  bool ok() const { return violations.empty(); }
};

/// Throws Argument on shape mismatch or a rep over another group.
ProjectiveCheck verify_projective_relation(const MonomialRep& rep, const Cochain& omega);
ProjectiveCheck verify_projective_relation(const ExactRep& rep, const Cochain& omega);

/// Conjugacy classes [g] with epsilon(g,h) = 1 for every h in C(g), ordered
/// by least member. Regularity is checked on every conjugate and again after a
/// fixed coboundary shift; a disagreement throws Internal.
std::vector<std::vector<Element>> omega_regular_classes(const Cochain& omega);

struct IrrepDimensions {
  std::vector<int> dimensions;  // ascending
  int attempts = 0;             // random commutant elements tried
};

/// Dimensions of the irreducible omega-representations, read off the
/// eigenvalue multiplicities of a random Hermitian element of the commutant of
/// the twisted regular representation (tolerance 1e-9, fixed seeds). The count
/// must equal the number of omega-regular classes and the squares must sum to
/// |G|; if no attempt satisfies both, throws Numerical. |G| <= 32.
IrrepDimensions irrep_dimensions(const Cochain& omega);

inline constexpr int kMaxProjrepOrder = 32;
inline constexpr double kEigenTolerance = 1e-9;

struct TwistedRepReport {
  GroupPtr group;
  std::int64_t class_index = -1;  // in H^2(G, U(1)); -1 above the H^2 order ceiling
  std::int64_t modulus = 0;
  Cochain cocycle;
  std::vector<std::vector<Element>> regular_classes{};
  std::vector<int> dimensions{};
  bool projective_relation = false;  // exhaustive pair check
  bool regular_character = false;    // tr gamma(g) = |G| at e, 0 elsewhere
  bool sum_of_squares = false;       // sum d^2 = |G|
  bool count_matches = false;        // #irreps = #regular classes
  MonomialRep rep{};

  bool consistent() const {
    return projective_relation && regular_character && sum_of_squares && count_matches;
  }
};

/// Report for the canonical representative of class k of h2 (degree 2, U(1)).
TwistedRepReport twisted_rep_report(const CohomologyGroup& h2, std::int64_t class_index);
/// Report for a given cocycle; its class is computed at modulus lcm(|G|, N).
TwistedRepReport twisted_rep_report(const Cochain& omega);

}  // namespace dtorsion
