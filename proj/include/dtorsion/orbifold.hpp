#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtorsion/cyclotomic.hpp"
#include "dtorsion/group.hpp"

namespace dtorsion {

struct Cell {
  int dim = 0;
  std::vector<int> boundary;  // cell ids, each of smaller dimension
};

/// Finite combinatorial G-CW complex: cells 0..n-1 with boundary lists and a
/// permutation action per group element. Construction validates dimensions,
/// the action law, equivariance of boundaries and admissibility (a cell fixed
/// by g has its whole boundary closure fixed by g).
class GComplex {
 public:
  /// action[g][c] is the image of cell c under g; an empty action is trivial.
  GComplex(GroupPtr group, std::vector<Cell> cells, std::vector<std::vector<int>> action = {});

  const GroupPtr& group() const { return group_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  int image(Element g, int cell) const { return action_[std::size_t(g)][std::size_t(cell)]; }
  bool fixes(Element g, int cell) const { return image(g, cell) == cell; }
  /// Number of cells of each dimension 0..max.
  std::vector<std::int64_t> cell_counts() const;

 private:
  GroupPtr group_;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> action_;
};

/// sum over cells of (-1)^dim.
std::int64_t euler_char(const GComplex& x);

/// Cells fixed by every element of S, acted on by the centralizer of S.
struct FixedLocus {
  GComplex complex;                 // over the centralizer, renumbered
  std::vector<int> cells;           // complex cell i is cells[i] in the parent
  std::vector<Element> centralizer;  // complex.group() element j is centralizer[j]
};

FixedLocus fixed_subcomplex(const GComplex& x, std::span<const Element> s);

/// sum over orbits of cells of (-1)^dim, for the whole group or a subgroup
/// (given by its elements; closure is checked).
std::int64_t quotient_orbit_euler(const GComplex& x);
std::int64_t quotient_orbit_euler(const GComplex& x, std::span<const Element> subgroup);

/// (1/|G|) sum over commuting pairs of e(X^<g,h>); throws Internal if the
/// result is not an integer.
Rational orbifold_euler_sum(const GComplex& x);

/// sum over conjugacy classes [g] of e(X^g / C(g)).
std::int64_t orbifold_euler_conjugacy(const GComplex& x);

struct InertiaComponent {
  Element representative = 0;
  std::vector<Element> conjugacy_class;
  std::int64_t centralizer_order = 0;
  std::vector<std::int64_t> fixed_cell_counts;  // per dimension
  std::int64_t fixed_euler = 0;                 // e(X^g)
  std::int64_t quotient_euler = 0;              // e(X^g / C(g))
};

struct InertiaReport {
  std::vector<InertiaComponent> components;  // one per conjugacy class, by least member
  std::int64_t conjugacy_total = 0;          // sum of quotient_euler
  Rational pair_sum;                         // orbifold_euler_sum
};

InertiaReport inertia_components(const GComplex& x);

/// Cells are pairs (a, b) with a major, dimensions add, boundary
/// (da x b) + (a x db); both factors must share the group and it acts diagonally.
GComplex product_complex(const GComplex& x, const GComplex& y);

/// Circle with two vertices and two edges; Z2 fixes the vertices and swaps the edges.
GComplex circle_with_involution();
/// Circle with m vertices and m edges; Zm rotates freely.
GComplex circle_with_rotation(int m = 2);
enum class SphereAction { Antipodal, Reflection };
/// Octahedral sphere (6 vertices, 12 edges, 8 faces) with Z2 acting by x -> -x
/// or by the reflection in the plane of the first two axes.
GComplex sphere_octahedral(SphereAction kind);
/// k-fold product of circle_with_involution with the diagonal action.
GComplex torus_power(int k);

/// Builder by name: circle-involution, circle-rotation<m>, sphere-antipodal,
/// sphere-reflection, torus<k>. Throws Argument for unknown names.
GComplex builtin_complex(std::string_view name);
std::vector<std::string> builtin_complex_names();

/// Random admissible complex assembled skeleton by skeleton from orbits G/H,
/// H ranging over the subgroups generated by at most two elements; each orbit
/// representative takes its boundary among lower cells fixed by H.
GComplex random_admissible_complex(GroupPtr group, std::uint64_t seed, int max_dim = 3,
                                   int max_orbits_per_dim = 4);

/// Format: `cell <id> <dim>`, `bnd <id> <ids...>`, `act <element> <images in
/// cell order>`; '#' comments. Act lines are closed under products and
/// elements outside the subgroup they generate act trivially.
GComplex parse_complex(GroupPtr group, std::string_view text);
std::string complex_to_text(const GComplex& x);

}  // namespace dtorsion
