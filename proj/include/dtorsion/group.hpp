#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtorsion {

/// Dense element index 0..order-1.
using Element = int;

/// Finite group given by its Cayley table. Immutable after construction.
///
/// Named families use frozen element orderings so that cocycle tables are
/// reproducible:
///   Zn      k -> k, addition mod n
///   AxB     (a, b) -> a * |B| + b  (lexicographic, left factor most significant)
///   Dn      r^k s^e -> k + n * e   (order 2n; s r s = r^-1)
///   Q8      1, -1, i, -i, j, -j, k, -k
///   Sn, An  permutations of {0..n-1} sorted lexicographically by image list;
///           product (a*b)(x) = a(b(x))
///   perm    closure of the generators, sorted the same way as Sn
class FiniteGroup {
 public:
  /// Validates closure, identity, inverses and associativity (exhaustive up to
  /// order 64, sampled above).
  FiniteGroup(std::string name, int order, std::vector<Element> table);

  int order() const { return n_; }
  Element identity() const { return identity_; }
  const std::string& name() const { return name_; }

  Element mul(Element a, Element b) const { return table_[std::size_t(a) * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element pow(Element g, std::int64_t k) const;
  Element conjugate(Element k, Element g) const { return mul(mul(k, g), inv(k)); }
  bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }
  int element_order(Element g) const { return orders_[g]; }
  bool is_abelian() const;

  std::span<const Element> table() const { return table_; }

  /// Position of g among the non-identity elements, or -1 for the identity.
  int nonidentity_rank(Element g) const { return rank_[g]; }
  Element nonidentity_element(int rank) const { return nonid_[rank]; }

 private:
  std::string name_;
  int n_;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<int> orders_;
  std::vector<int> rank_;
  std::vector<Element> nonid_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Largest group accepted by the parser.
inline constexpr int kMaxGroupOrder = 120;

/// Parses `Zn`, products joined by `x`, `Dn`, `Q8`, `Sn`, `An` (n <= 5),
/// `perm <degree> <cycles...>` (1-based points) or `table <n> <n*n entries>`.
GroupPtr parse_group_spec(std::string_view text);

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);
GroupPtr quaternion_group();
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& generators,
                           std::string name = "perm");

struct ConjugacyData {
  std::vector<std::vector<Element>> classes;     // sorted; ordered by least member
  std::vector<int> class_of;                     // element -> class index
  std::vector<std::vector<Element>> centralizers;  // per element, sorted
};

ConjugacyData conjugacy_classes(const FiniteGroup& g);

std::vector<Element> centralizer(const FiniteGroup& g, Element x);

/// All (g, h) with gh = hg, ordered by (g, h).
std::vector<std::pair<Element, Element>> commuting_pairs(const FiniteGroup& g);

struct Abelianization {
  std::vector<std::int64_t> invariant_factors;       // d1 | d2 | ..., all > 1
  std::vector<std::vector<std::int64_t>> projection;  // element -> coordinates mod d_i
  std::vector<Element> commutator_subgroup;
};

Abelianization abelianization(const FiniteGroup& g);

/// Least common multiple of element orders.
std::int64_t exponent(const FiniteGroup& g);

/// Subgroup generated by the given elements, sorted.
std::vector<Element> generated_subgroup(const FiniteGroup& g, std::span<const Element> gens);

/// All subgroups generated by at most two elements, sorted and deduplicated.
std::vector<std::vector<Element>> two_generated_subgroups(const FiniteGroup& g);

}  // namespace dtorsion
