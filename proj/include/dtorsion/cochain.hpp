#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dtorsion/group.hpp"
#include "dtorsion/phase.hpp"
#include "dtorsion/smith.hpp"

namespace dtorsion {

/// Normalized inhomogeneous p-cochain G^p -> Z/N, written additively: the
/// value k stands for the phase exp(2 pi i k / N). Only tuples of non-identity
/// elements are stored, (|G|-1)^p entries in lexicographic order of element
/// index; any tuple containing the identity reads as 0.
class Cochain {
 public:
  static constexpr int kMaxDegree = 4;

  Cochain(GroupPtr group, int degree, std::int64_t modulus);

  /// Builds a normalized cochain from f; f must vanish on tuples containing
  /// the identity (checked).
  static Cochain from_function(GroupPtr group, int degree, std::int64_t modulus,
                               const std::function<std::int64_t(std::span<const Element>)>& f);

  const GroupPtr& group() const { return group_; }
  int degree() const { return degree_; }
  std::int64_t modulus() const { return modulus_; }

  std::int64_t operator()(std::span<const Element> args) const;
  std::int64_t operator()(std::initializer_list<Element> args) const {
    return (*this)(std::span<const Element>(args.begin(), args.size()));
  }
  Phase phase(std::span<const Element> args) const { return Phase((*this)(args), modulus_); }
  Phase phase(std::initializer_list<Element> args) const {
    return phase(std::span<const Element>(args.begin(), args.size()));
  }

  /// Value on a tuple; tuples containing the identity only accept 0.
  void set(std::span<const Element> args, std::int64_t value);
  void set(std::initializer_list<Element> args, std::int64_t value) {
    set(std::span<const Element>(args.begin(), args.size()), value);
  }

  std::span<const std::int64_t> values() const { return values_; }
  /// Replaces the normalized table (values reduced mod N).
  void assign(std::vector<std::int64_t> values);
  std::size_t size() const { return values_.size(); }
  /// Element tuple for a position of the normalized table.
  std::vector<Element> tuple_at(std::size_t index) const;
  bool is_zero() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(std::int64_t k) const;
  /// Same phases over a modulus that is a multiple of the current one.
  Cochain over(std::int64_t modulus) const;

  bool operator==(const Cochain& o) const;
  bool operator!=(const Cochain& o) const { return !(*this == o); }

  /// Text form: header `cocycle p=<p> N=<N> group=<name>` then one line
  /// `<g1> ... <gp> <k>` per non-zero entry.
  std::string to_text() const;
  static Cochain parse(GroupPtr group, std::string_view text);

  static std::size_t table_size(int order, int degree);

 private:
  std::size_t index_of(std::span<const Element> args) const;
  void check_compatible(const Cochain& o) const;

  GroupPtr group_;
  int degree_;
  std::int64_t modulus_;
  std::vector<std::int64_t> values_;
};

/// Inhomogeneous bar differential on normalized cochains, p <= 3:
/// (dc)(g1..g_{p+1}) = c(g2..) + sum_i (-1)^i c(..g_i g_{i+1}..) + (-1)^{p+1} c(g1..gp).
Cochain coboundary(const Cochain& c);

bool is_cocycle(const Cochain& c);

/// Connecting map for 0 -> Z/N -> Z/N^2 -> Z/N -> 0: lift to [0, N), apply
/// the integer differential and divide by N. Throws if c is not a cocycle.
Cochain bockstein(const Cochain& c);

/// Integer matrix of the normalized differential C^p -> C^{p+1}; rows index
/// (p+1)-tuples and columns p-tuples in table order.
SparseMatrix bar_differential(const FiniteGroup& g, int p);

}  // namespace dtorsion
