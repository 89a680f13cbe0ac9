#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "chainlab/ring.hpp"

namespace chainlab {

/// Dense row-major matrix with exact entries over a CoefficientRing.
///
/// Entries are always canonical ring elements (integers over Z, residues in
/// [0, p) over F_p). Zero-area shapes (0 x n, n x 0) are legal everywhere.
class ExactMatrix {
 public:
  explicit ExactMatrix(CoefficientRing ring) : ring_(ring) {}
  ExactMatrix(CoefficientRing ring, std::size_t rows, std::size_t cols);

  static ExactMatrix zero(CoefficientRing ring, std::size_t rows, std::size_t cols) {
    return ExactMatrix(ring, rows, cols);
  }
  static ExactMatrix identity(CoefficientRing ring, std::size_t n);
  /// Builds from nested rows; every row must have the same length.
  static ExactMatrix from_rows(CoefficientRing ring, const std::vector<std::vector<Scalar>>& rows);
  static ExactMatrix from_ints(CoefficientRing ring,
                               std::initializer_list<std::initializer_list<long>> rows);
  /// r x c matrix from row-major integers.
  static ExactMatrix from_ints(CoefficientRing ring, std::size_t rows, std::size_t cols,
                               const std::vector<long>& values);
  static ExactMatrix column(CoefficientRing ring, const std::vector<Scalar>& entries);
  static ExactMatrix diagonal(CoefficientRing ring, const std::vector<Scalar>& entries);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores the canonical representative of v.
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void set(std::size_t i, std::size_t j, long v) { set(i, j, Scalar(v)); }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_identity() const;

  ExactMatrix transpose() const;
  ExactMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  ExactMatrix col_range(std::size_t col0, std::size_t ncols) const {
    return block(0, col0, rows_, ncols);
  }
  ExactMatrix row_range(std::size_t row0, std::size_t nrows) const {
    return block(row0, 0, nrows, cols_);
  }
  /// Copies `m` into this matrix with its top-left corner at (row0, col0).
  void paste(std::size_t row0, std::size_t col0, const ExactMatrix& m);
  std::vector<Scalar> column_vector(std::size_t j) const;

  ExactMatrix scaled(const Scalar& s) const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  /// Row-major bracketed rendering, e.g. "[[1,0],[0,1/2]]". Zero-area
  /// matrices render as "[]".
  std::string to_string() const;

 private:
  CoefficientRing ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix block_diagonal(const ExactMatrix& a, const ExactMatrix& b);
/// 2x2 block matrix [[a, b], [c, d]]; shapes must tile.
ExactMatrix block2x2(const ExactMatrix& a, const ExactMatrix& b, const ExactMatrix& c,
                     const ExactMatrix& d);
/// Kronecker product with the index of `a` major: (a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l].
ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace chainlab
