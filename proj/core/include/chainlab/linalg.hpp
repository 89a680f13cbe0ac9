#pragma once

#include <optional>
#include <vector>

#include "chainlab/matrix.hpp"

namespace chainlab {

class FgModule;

/// u * m * v = d with u, v invertible over the ring.
struct SmithForm {
  ExactMatrix u;
  ExactMatrix d;
  ExactMatrix v;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d_11 | d_22 | ...
  std::vector<Scalar> invariant_factors() const;
};

/// Smith normal form. Over Z the diagonal is nonnegative with the
/// divisibility chain; over a field it is diag(1, ..., 1, 0, ..., 0).
SmithForm smith_normal_form(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Columns form a basis of {x : m x = 0}. Over Z this is a basis of the
/// kernel lattice, not merely of its rational span.
ExactMatrix kernel_basis(const ExactMatrix& m);

/// Columns form a basis of the column span of m (over Z: of the lattice it
/// generates).
ExactMatrix image_basis(const ExactMatrix& m);

/// R^rows / (column span of m) in invariant-factor normal form.
FgModule cokernel_presentation(const ExactMatrix& m);

/// Some x with m x = b (b a column vector), or nullopt when the system has no
/// solution over the ring (over Z: no integral solution).
std::optional<ExactMatrix> solve_linear(const ExactMatrix& m, const ExactMatrix& b);

/// Solves m X = B column by column; entry j is nullopt when column j of B is
/// not in the span.
std::vector<std::optional<ExactMatrix>> solve_columns(const ExactMatrix& m, const ExactMatrix& b);

/// Solves m X = B for all columns at once, or nullopt if any column fails.
std::optional<ExactMatrix> solve_matrix(const ExactMatrix& m, const ExactMatrix& b);

/// Inverse over the ring (over Z the matrix must be unimodular).
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

}  // namespace chainlab
