#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtorsion/cohomology.hpp"
#include "dtorsion/phase.hpp"

namespace dtorsion {

/// Finite combinatorial site: patches with component sets, double, triple and
/// optional quadruple overlaps (patch indices increasing) with restriction
/// maps, and a G-action permuting components. Patches themselves are
/// G-invariant; only their components move. Pullback is (g^* f)(c) = f(g.c).
struct DiscreteSite {
  struct Overlap {
    int p = 0, q = 0;
    std::vector<int> to_p, to_q;  // component -> patch component
    bool operator==(const Overlap&) const = default;
  };
  struct Triple {
    int p = 0, q = 0, r = 0;
    std::vector<int> to_pq, to_qr, to_pr;  // component -> overlap component
    bool operator==(const Triple&) const = default;
  };
  struct Quad {
    int p = 0, q = 0, r = 0, s = 0;
    std::vector<int> to_pqr, to_pqs, to_prs, to_qrs;  // component -> triple component
    bool operator==(const Quad&) const = default;
  };
  /// Images of every component under one group element.
  struct Action {
    std::vector<std::vector<int>> patch, overlap, triple, quad;
    bool operator==(const Action&) const = default;
  };

  GroupPtr group;
  std::vector<int> patch_components;
  std::vector<Overlap> overlaps;
  std::vector<Triple> triples;
  std::vector<Quad> quads;
  std::vector<Action> action;  // one per group element

  int overlap_index(int p, int q) const;  // -1 if absent
  int triple_index(int p, int q, int r) const;
  /// Checks restriction maps, permutations, the action law and compatibility
  /// of restrictions with the action. Throws Invalid with the first problem.
  void validate() const;
  /// Connected component of each (patch, component), numbered in order of
  /// first appearance; connectivity comes from overlap components.
  std::vector<std::vector<int>> connected_components(int& count) const;

  /// One patch with one component and trivial action.
  static DiscreteSite point(GroupPtr group);
  /// Patches 0..k-1 with one component each, one overlap component per pair
  /// and one triple component per triple; trivial action.
  static DiscreteSite simplex(GroupPtr group, int k);
};

struct Violation {
  std::string relation;  // stable identifier, e.g. "gerbe.h-cocycle"
  std::string location;
};

struct VerifyReport {
  std::vector<Violation> violations;  // the first kMaxListed, in check order
  std::int64_t total = 0;
  bool ok() const { return total == 0; }
  static constexpr std::size_t kMaxListed = 64;
  void add(std::string relation, std::string location);
};

/// Phase-valued function on components: [patch or overlap or triple][component].
using ComponentPhases = std::vector<std::vector<Phase>>;

struct BundleCocycle {
  ComponentPhases g;  // per overlap (p<q): g_{pq}
};

struct BundleEquivariantStructure {
  std::vector<ComponentPhases> h;  // [g][patch][component]: h^g_alpha
};

struct GerbeCocycle {
  ComponentPhases h;  // per triple (p<q<r): h_{pqr}
};

struct GerbeEquivariantStructure {
  std::vector<ComponentPhases> nu;  // [g][overlap][component]
  std::vector<ComponentPhases> h;   // [g1*|G| + g2][patch][component]
};

struct GerbeDifferenceData {
  std::vector<ComponentPhases> transition;  // T^g = nu^g / nubar^g, per overlap
  std::vector<ComponentPhases> omega;       // omega^{g1,g2} = h / hbar, per patch
  bool operator==(const GerbeDifferenceData&) const = default;
};

BundleCocycle trivial_bundle(const DiscreteSite& site);
BundleEquivariantStructure trivial_bundle_structure(const DiscreteSite& site);
GerbeCocycle trivial_gerbe(const DiscreteSite& site);
GerbeEquivariantStructure trivial_gerbe_structure(const DiscreteSite& site);

/// Relations: bundle.cocycle (closure on triples), bundle.transition
/// (g^* g_ab = g_ab h^g_a / h^g_b), bundle.composition (h^{g1g2} = g2^* h^{g1} h^{g2}).
VerifyReport verify_bundle_equivariance(const DiscreteSite& site, const BundleCocycle& cocycle,
                                        const BundleEquivariantStructure& s);

/// Relations: gerbe.cocycle (quadruple overlaps), gerbe.triple
/// (g^* h_abc = h_abc nu_ab nu_bc nu_ca), gerbe.nu-composition
/// (nu^{g1g2} = nu^{g2} g2^*nu^{g1} h^{g1,g2}_a / h^{g1,g2}_b), gerbe.h-cocycle
/// (h^{g1,g2g3} h^{g2,g3} = g3^*h^{g1,g2} h^{g1g2,g3}).
VerifyReport verify_gerbe_equivariance(const DiscreteSite& site, const GerbeCocycle& cocycle,
                                       const GerbeEquivariantStructure& s);

/// phi(g) = h^g / hbar^g, one character per connected component of the site.
struct BundleDifference {
  std::vector<std::vector<Phase>> characters;  // [connected component][g]
  bool homomorphism = true;  // phi(g1 g2) = phi(g1) phi(g2) on every component
};

/// Both structures must verify against the cocycle (throws Invalid otherwise).
BundleDifference bundle_difference_character(const DiscreteSite& site, const BundleCocycle& cocycle,
                                             const BundleEquivariantStructure& s1,
                                             const BundleEquivariantStructure& s2);

/// Torsor action of a character: h^g_a -> h^g_a chi(g).
BundleEquivariantStructure act(const BundleEquivariantStructure& s, const std::vector<Phase>& chi);

/// Both structures must verify against the gerbe cocycle (throws Invalid otherwise).
GerbeDifferenceData gerbe_difference_data(const DiscreteSite& site, const GerbeCocycle& cocycle,
                                          const GerbeEquivariantStructure& s1,
                                          const GerbeEquivariantStructure& s2);

/// nu -> nu T, h -> h omega.
GerbeEquivariantStructure act(const GerbeEquivariantStructure& s, const GerbeDifferenceData& d);

/// Relations: diff.T-closure (T^g closes on triples), diff.T-composition
/// (omega^{g1,g2}: T^{g2} (g2^*T^{g1}) -> T^{g1g2}), diff.omega-diagram
/// (omega^{g1g2,g3} omega^{g1,g2} = omega^{g1,g2g3} omega^{g2,g3} after g3^*).
VerifyReport verify_group_law_diagram(const DiscreteSite& site, const GerbeDifferenceData& d);

/// Single-patch difference data carrying a constant 2-cocycle.
GerbeDifferenceData embed_cocycle(const DiscreteSite& site, const Cochain& omega);

struct DiscreteTorsion {
  Cochain cocycle;  // normalized constant omega
  CohomologyGroup cohomology;
  std::int64_t class_index = 0;
  Cochain canonical;
};

/// Requires every T^g trivial and omega^{g1,g2} constant over the site.
DiscreteTorsion extract_discrete_torsion(const DiscreteSite& site, const GerbeDifferenceData& d);

/// Parsed `.cech` document.
struct CechDocument {
  DiscreteSite site;
  std::optional<BundleCocycle> bundle;
  std::optional<GerbeCocycle> gerbe;
  std::optional<BundleEquivariantStructure> bundle_structure;  // from hg lines
  std::optional<GerbeEquivariantStructure> gerbe_structure;    // from nu / h2 lines
};

/// Format (one statement per line, '#' comments):
///   group <spec>
///   site
///     patch <p> <components>
///     overlap <p> <q> <c> <c_p> <c_q>
///     triple <p> <q> <r> <c> <c_pq> <c_qr> <c_pr>
///     quad <p> <q> <r> <s> <c> <c_pqr> <c_pqs> <c_prs> <c_qrs>
///     act <g> patch <p> <images...> | overlap <p> <q> ... | triple <p> <q> <r> ...
///   end
///   bundle  g <p> <q> <c> <k/N> ... end
///   gerbe   h <p> <q> <r> <c> <k/N> ... end
///   equiv   hg <g> <p> <c> <k/N> | nu <g> <p> <q> <c> <k/N> | h2 <g1> <g2> <p> <c> <k/N> ... end
/// Act lines are closed under products; elements outside the subgroup they
/// generate act trivially (so without act lines the action is trivial).
/// Unlisted values are 0.
CechDocument parse_cech(std::string_view text);

}  // namespace dtorsion
