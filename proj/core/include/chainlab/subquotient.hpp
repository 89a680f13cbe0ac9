#pragma once

#include <optional>
#include <vector>

#include "chainlab/module.hpp"

namespace chainlab {

/// A/B for submodules B ⊆ A ⊆ R^n, together with the coordinate machinery
/// that identifies it with its normal form. Cohomology groups, hom groups in
/// the homotopy category and kernels/images of module maps are all built this
/// way, and maps between them are induced from ambient matrices.
class Subquotient {
 public:
  /// Columns of `a_gens` generate A, columns of `b_gens` generate B. Throws
  /// ValidationError if B is not contained in A.
  static Subquotient from_generators(const ExactMatrix& a_gens, const ExactMatrix& b_gens);

  const FgModule& module() const { return module_; }
  const CoefficientRing& ring() const { return module_.ring(); }
  std::size_t ambient_rank() const { return ambient_; }

  /// ambient_rank x num_generators: representatives of the normal-form
  /// generators.
  const ExactMatrix& generators() const { return generators_; }

  /// Normal-form coordinates of each column of `v` (torsion coordinates
  /// reduced), or nullopt if some column does not lie in A.
  std::optional<ExactMatrix> coordinates(const ExactMatrix& v) const;

  /// True iff every column of v lies in B.
  bool in_boundaries(const ExactMatrix& v) const;

 private:
  explicit Subquotient(FgModule m) : module_(std::move(m)) {}

  FgModule module_;
  std::size_t ambient_ = 0;
  std::size_t a_rank_ = 0;
  ExactMatrix a_u_{CoefficientRing::integers()};  // U with U * A_gens * V = D
  std::vector<Scalar> a_diag_;
  ExactMatrix rel_u_{CoefficientRing::integers()};  // U with U * X * V = D for the relations
  std::vector<std::size_t> kept_;                  // rows of rel_u_ that survive
  ExactMatrix generators_{CoefficientRing::integers()};
};

/// The map source -> target induced by an ambient matrix sending A_source
/// into A_target and B_source into B_target. Throws ValidationError if it
/// does not.
ModuleMap induced_map(const ExactMatrix& ambient_map, const Subquotient& source,
                      const Subquotient& target);

}  // namespace chainlab
