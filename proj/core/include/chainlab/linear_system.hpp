#pragma once

#include <optional>
#include <vector>

#include "chainlab/matrix.hpp"

namespace chainlab {

/// Linear system in matrix-valued unknowns X_k with equations of the form
/// Σ_t L_t X_{k_t} R_t = C. Variables are numbered block by block, row-major
/// inside each block, and each equation contributes its entries row-major.
class LinearSystem {
 public:
  struct Term {
    ExactMatrix left;
    std::size_t unknown;
    ExactMatrix right;
  };

  explicit LinearSystem(CoefficientRing ring) : ring_(ring) {}

  /// Returns the id of a new rows x cols unknown.
  std::size_t add_unknown(std::size_t rows, std::size_t cols);
  /// Entries that reduce to 0 = 0 are dropped unless keep_trivial is set
  /// (useful when the coefficient matrix is read as a linear operator).
  void add_equation(const std::vector<Term>& terms, const ExactMatrix& rhs, bool keep_trivial = false);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t num_variables() const { return num_vars_; }
  std::size_t num_equations() const { return rows_.size(); }

  ExactMatrix coefficient_matrix() const;
  ExactMatrix rhs() const;

  /// One solution (free variables set to zero), or nullopt if the system has
  /// none over the ring.
  std::optional<std::vector<ExactMatrix>> solve() const;
  /// Splits a num_variables x 1 column into the unknown blocks.
  std::vector<ExactMatrix> unpack(const ExactMatrix& column) const;
  /// Inverse of unpack.
  ExactMatrix pack(const std::vector<ExactMatrix>& blocks) const;

 private:
  struct Block {
    std::size_t rows, cols, offset;
  };
  using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

  CoefficientRing ring_;
  std::vector<Block> blocks_;
  std::size_t num_vars_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<Scalar> rhs_;
};

}  // namespace chainlab
