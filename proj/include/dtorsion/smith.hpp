#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dtorsion {

using BigInt = mpz_class;

/// Row-major sparse integer matrix. Each row keeps its entries sorted by
/// column with no explicit zeros.
class SparseMatrix {
 public:
  using Entry = std::pair<int, std::int64_t>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Replaces row r. Duplicate columns are summed and zeros dropped.
  void set_row(int r, std::vector<Entry> entries);
  std::span<const Entry> row(int r) const { return data_[r]; }
  std::int64_t at(int r, int c) const;
  std::size_t nonzeros() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Dense matrix of arbitrary-precision integers.
struct BigMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> data;

  BigMatrix() = default;
  BigMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}

  BigInt& operator()(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const BigInt& operator()(int r, int c) const {
    return data[std::size_t(r) * cols + c];
  }
  static BigMatrix identity(int n);
};

struct SmithOptions {
  bool left = false;           // U
  bool left_inverse = false;   // U^{-1}
  bool right = false;          // V
  bool right_inverse = false;  // V^{-1}
};

/// U * M * V = D with D diagonal, D(k,k) = diagonal[k] for k < rank and
/// diagonal[0] | diagonal[1] | ... ; every diagonal entry is positive.
struct SmithResult {
  int rows = 0;
  int cols = 0;
  int rank = 0;
  std::vector<BigInt> diagonal;
  std::optional<BigMatrix> left;
  std::optional<BigMatrix> left_inverse;
  std::optional<BigMatrix> right;
  std::optional<BigMatrix> right_inverse;
  bool used_bignum = false;

  /// Diagonal entries different from 1.
  std::vector<BigInt> invariant_factors() const;
  /// d_k for k < rank, 0 beyond.
  BigInt diagonal_at(int k) const { return k < rank ? diagonal[k] : BigInt(0); }
};

/// Smith normal form by sparse elimination, pivoting on the entry of least
/// absolute value (ties broken by Markowitz cost). Runs on checked 64-bit
/// integers and restarts with GMP integers if any intermediate overflows.
SmithResult smith_normal_form(const SparseMatrix& m, SmithOptions opts = {});

/// Same elimination forced onto GMP integers from the start.
SmithResult smith_normal_form_bignum(const SparseMatrix& m, SmithOptions opts = {});

/// Dense convenience overload.
SmithResult smith_normal_form(const std::vector<std::vector<std::int64_t>>& m,
                              SmithOptions opts = {});

}  // namespace dtorsion
