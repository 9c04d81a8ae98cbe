#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dtorsion/cochain.hpp"

namespace dtorsion {

enum class Coefficients { ZmodN, U1 };

/// Largest group order accepted for H^p, indexed by p.
int cohomology_order_ceiling(int p);

/// H^p(G, Z/N) or H^p(G, U(1)) with trivial action, presented as a direct sum
/// of cyclic groups Z/d_1 + Z/d_2 + ... with d_1 | d_2 | ... and every d_j > 1.
///
/// U(1) classes are represented by mu_N-valued cocycles: a Cochain of modulus N
/// with value k stands for exp(2 pi i k / N). Immutable and cheap to copy.
class CohomologyGroup {
 public:
  const GroupPtr& group() const;
  int degree() const;
  Coefficients coefficients() const;
  std::int64_t modulus() const;

  const std::vector<std::int64_t>& invariant_factors() const;
  /// Number of classes; throws Limit if it does not fit in 63 bits.
  std::int64_t order() const;
  bool is_trivial_group() const { return invariant_factors().empty(); }

  /// One cocycle per invariant factor; generator j has order d_j.
  const std::vector<Cochain>& generators() const;
  /// Spanning set of the coboundaries among mu_N-valued p-cochains. For U(1)
  /// this includes the Bockstein images of degree p-1 classes.
  std::vector<Cochain> coboundary_basis() const;

  /// Coordinates of the class of a cocycle, entry j reduced mod d_j. Cochains
  /// over a modulus dividing N are rescaled first. Throws Invalid on non-cocycles.
  std::vector<std::int64_t> coordinates(const Cochain& cocycle) const;
  bool is_trivial(const Cochain& cocycle) const;

  /// A (p-1)-cochain b with d(b) = c. Over Z/N, b has modulus N. Over U(1),
  /// b has modulus N^2 and d(b) equals c rescaled to N^2.
  std::optional<Cochain> coboundary_witness(const Cochain& cocycle) const;

  /// Lexicographically least table in the class of the cocycle.
  Cochain canonical(const Cochain& cocycle) const;

  /// Mixed-radix class index, first invariant factor most significant.
  std::int64_t class_index(const Cochain& cocycle) const;
  /// Canonical representative of the class with the given index.
  Cochain representative(std::int64_t index) const;
  /// Canonical representatives of every class in index order (at most 4096).
  std::vector<Cochain> enumerate_representatives() const;

  struct Impl;
  explicit CohomologyGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  Cochain lift_modulus(const Cochain& c) const;
  std::shared_ptr<const Impl> impl_;
};

inline constexpr std::int64_t kMaxEnumeratedClasses = 4096;

/// H^p(G, Z/N), p in 1..3.
CohomologyGroup cohomology_zn(GroupPtr g, int p, std::int64_t modulus);

/// H^p(G, U(1)), p in 1..3, computed as H^p(G, Z/N) modulo Bockstein images
/// of H^{p-1}(G, Z/N). N defaults to |G|; an override must be a multiple of
/// exponent(G).
CohomologyGroup cohomology_u1(GroupPtr g, int p, std::optional<std::int64_t> modulus = {});

/// Invariant factors of H^p(G, Z) for p in 1..4, from the Smith form of the
/// integral bar differential. Independent of the Z/N machinery.
std::vector<std::int64_t> cohomology_z_oracle(const GroupPtr& g, int p);

/// Howell-form reducer over Z/N: maps a vector to the lexicographically least
/// element of its coset modulo the span of the given generators.
class HowellReducer {
 public:
  HowellReducer(std::int64_t modulus, std::size_t length,
                const std::vector<std::vector<std::int64_t>>& generators);
  void reduce(std::vector<std::int64_t>& v) const;
  /// Number of elements in the span.
  std::int64_t span_order() const;

 private:
  std::int64_t n_;
  std::size_t len_;
  std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> rows_;  // (pivot column, row)
};

}  // namespace dtorsion
