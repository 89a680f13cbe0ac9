#include "chainlab/subquotient.hpp"

#include "chainlab/error.hpp"
#include "elimination.hpp"

namespace chainlab {

using detail::DenseMat;
using detail::Diagonalizer;
using detail::Tracking;

namespace {

// x with column-wise U v = D x (rows < rank), or nullopt when v leaves the
// lattice spanned by U^{-1} D.
std::optional<ExactMatrix> lattice_coordinates(const ExactMatrix& u, const std::vector<Scalar>& diag,
                                               const ExactMatrix& v) {
  const auto& ring = v.ring();
  ExactMatrix w = u * v;
  ExactMatrix x(ring, diag.size(), v.cols());
  for (std::size_t k = 0; k < v.cols(); ++k) {
    for (std::size_t i = diag.size(); i < w.rows(); ++i)
      if (sgn(w.at(i, k)) != 0) return std::nullopt;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      const Scalar& wi = w.at(i, k);
      if (sgn(wi) == 0) continue;
      if (!ring.divides(diag[i], wi)) return std::nullopt;
      if (ring.is_field()) {
        x.set(i, k, ring.mul(wi, ring.inverse(diag[i])));
      } else {
        x.set(i, k, Scalar(wi.get_num() / diag[i].get_num()));
      }
    }
  }
  return x;
}

}  // namespace

Subquotient Subquotient::from_generators(const ExactMatrix& a_gens, const ExactMatrix& b_gens) {
  require_same_ring(a_gens.ring(), b_gens.ring(), "Subquotient");
  if (a_gens.rows() != b_gens.rows()) throw ShapeError("Subquotient: ambient ranks differ");
  const auto& ring = a_gens.ring();
  Subquotient sq{FgModule(ring)};
  sq.ambient_ = a_gens.rows();

  detail::with_arith(ring, [&](auto ar) {
    using A = decltype(ar);
    Tracking tr;
    tr.u = tr.u_inv = true;
    Diagonalizer<A> diag(ar, DenseMat<A>::from(a_gens, ar), tr);
    sq.a_rank_ = diag.rank();
    sq.a_u_ = diag.u().to(ring, ar);
    sq.a_diag_.clear();
    for (std::size_t i = 0; i < diag.rank(); ++i) sq.a_diag_.push_back(ar.to(diag.pivot(i)));
    // Basis of A: columns of U^{-1} D.
    ExactMatrix ui = diag.u_inv().to(ring, ar);
    ExactMatrix a_basis(ring, sq.ambient_, sq.a_rank_);
    for (std::size_t k = 0; k < sq.a_rank_; ++k)
      for (std::size_t i = 0; i < sq.ambient_; ++i)
        if (sgn(ui.at(i, k)) != 0) a_basis.set(i, k, ui.at(i, k) * sq.a_diag_[k]);

    auto rel = lattice_coordinates(sq.a_u_, sq.a_diag_, b_gens);
    if (!rel) throw ValidationError("Subquotient: B is not contained in A");

    Tracking rtr;
    rtr.u = rtr.u_inv = true;
    rtr.divisibility_chain = true;
    Diagonalizer<A> rdiag(ar, DenseMat<A>::from(*rel, ar), rtr);
    sq.rel_u_ = rdiag.u().to(ring, ar);
    ExactMatrix rel_ui = rdiag.u_inv().to(ring, ar);

    std::vector<mpz_class> factors;
    std::size_t free_rank = 0;
    sq.kept_.clear();
    for (std::size_t i = 0; i < sq.a_rank_; ++i) {
      if (i < rdiag.rank()) {
        Scalar d = ar.to(rdiag.pivot(i));
        if (ring.is_unit(d)) continue;
        factors.push_back(d.get_num());
      } else {
        ++free_rank;
      }
      sq.kept_.push_back(i);
    }
    sq.module_ = FgModule(ring, free_rank, std::move(factors));
    ExactMatrix gens(ring, sq.a_rank_, sq.kept_.size());
    for (std::size_t k = 0; k < sq.kept_.size(); ++k) gens.paste(0, k, rel_ui.col_range(sq.kept_[k], 1));
    sq.generators_ = a_basis * gens;
  });
  return sq;
}

std::optional<ExactMatrix> Subquotient::coordinates(const ExactMatrix& v) const {
  if (v.rows() != ambient_) throw ShapeError("Subquotient::coordinates: wrong ambient rank");
  auto x = lattice_coordinates(a_u_, a_diag_, v);
  if (!x) return std::nullopt;
  ExactMatrix y = rel_u_ * *x;
  const auto& ring = module_.ring();
  ExactMatrix out(ring, kept_.size(), v.cols());
  for (std::size_t r = 0; r < kept_.size(); ++r) {
    const mpz_class order = module_.generator_order(r);
    for (std::size_t k = 0; k < v.cols(); ++k) {
      const Scalar& e = y.at(kept_[r], k);
      if (sgn(e) == 0) continue;
      if (order != 0) {
        mpz_class red;
        mpz_fdiv_r(red.get_mpz_t(), e.get_num_mpz_t(), order.get_mpz_t());
        if (red != 0) out.set(r, k, Scalar(red));
      } else {
        out.set(r, k, e);
      }
    }
  }
  return out;
}

bool Subquotient::in_boundaries(const ExactMatrix& v) const {
  auto c = coordinates(v);
  return c && c->is_zero();
}

ModuleMap induced_map(const ExactMatrix& ambient_map, const Subquotient& source,
                      const Subquotient& target) {
  if (ambient_map.cols() != source.ambient_rank() || ambient_map.rows() != target.ambient_rank()) {
    throw ShapeError("induced_map: ambient matrix has the wrong shape");
  }
  auto coords = target.coordinates(ambient_map * source.generators());
  if (!coords) throw ValidationError("induced_map: ambient map does not preserve the subquotient");
  return ModuleMap(source.module(), target.module(), *coords);
}

}  // namespace chainlab
