#include "chainlab/linalg.hpp"

#include "chainlab/error.hpp"
#include "chainlab/module.hpp"
#include "elimination.hpp"

namespace chainlab {

using detail::DenseMat;
using detail::Diagonalizer;
using detail::SparseEchelon;
using detail::Tracking;

namespace {

template <class A>
typename SparseEchelon<A>::Row sparse_row(const ExactMatrix& m, std::size_t i, const A& ar) {
  typename SparseEchelon<A>::Row row;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (sgn(m.at(i, j)) != 0) row.emplace_back(j, ar.from(m.at(i, j)));
  }
  return row;
}

// Echelon of [m | b] over a field.
template <class A>
SparseEchelon<A> field_echelon(const ExactMatrix& m, const ExactMatrix* b, const A& ar) {
  const std::size_t n_rhs = b ? b->cols() : 0;
  SparseEchelon<A> ech(ar, m.cols(), n_rhs);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = sparse_row(m, i, ar);
    if (b) {
      for (std::size_t j = 0; j < n_rhs; ++j)
        if (sgn(b->at(i, j)) != 0) row.emplace_back(m.cols() + j, ar.from(b->at(i, j)));
    }
    if (!row.empty()) ech.add_row(row);
  }
  return ech;
}

template <class A>
ExactMatrix column_from(const std::vector<typename A::T>& x, const CoefficientRing& ring,
                        const A& ar) {
  ExactMatrix col(ring, x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!A::is_zero(x[i])) col.set(i, 0, ar.to(x[i]));
  return col;
}

std::vector<std::optional<ExactMatrix>> solve_over_integers(const ExactMatrix& m,
                                                            const ExactMatrix& b) {
  detail::IntArith ar;
  auto rhs = DenseMat<detail::IntArith>::from(b, ar);
  Tracking tr;
  tr.v = true;
  Diagonalizer<detail::IntArith> diag(ar, DenseMat<detail::IntArith>::from(m, ar), tr, &rhs);
  const std::size_t r = diag.rank();
  std::vector<std::optional<ExactMatrix>> out;
  out.reserve(b.cols());
  for (std::size_t k = 0; k < b.cols(); ++k) {
    bool ok = true;
    for (std::size_t i = r; i < m.rows() && ok; ++i) ok = sgn(rhs(i, k)) == 0;
    std::vector<mpz_class> y(m.cols());
    for (std::size_t i = 0; i < r && ok; ++i) {
      if (!ar.divides(diag.pivot(i), rhs(i, k))) {
        ok = false;
        break;
      }
      y[i] = ar.exact_div(rhs(i, k), diag.pivot(i));
    }
    if (!ok) {
      out.emplace_back(std::nullopt);
      continue;
    }
    ExactMatrix x(m.ring(), m.cols(), 1);
    const auto& v = diag.v();
    for (std::size_t row = 0; row < m.cols(); ++row) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < r; ++i)
        if (sgn(y[i]) != 0 && sgn(v(row, i)) != 0) acc += v(row, i) * y[i];
      if (sgn(acc) != 0) x.set(row, 0, Scalar(acc));
    }
    out.emplace_back(std::move(x));
  }
  return out;
}

}  // namespace

std::vector<Scalar> SmithForm::invariant_factors() const {
  std::vector<Scalar> f;
  for (std::size_t i = 0; i < rank; ++i) f.push_back(d.at(i, i));
  return f;
}

SmithForm smith_normal_form(const ExactMatrix& m) {
  return detail::with_arith(m.ring(), [&](auto ar) {
    using A = decltype(ar);
    Tracking tr;
    tr.u = tr.v = true;
    tr.divisibility_chain = true;
    Diagonalizer<A> diag(ar, DenseMat<A>::from(m, ar), tr);
    return SmithForm{diag.u().to(m.ring(), ar), diag.d().to(m.ring(), ar),
                     diag.v().to(m.ring(), ar), diag.rank()};
  });
}

std::size_t rank(const ExactMatrix& m) {
  if (m.ring().is_field()) {
    return detail::with_field_arith(m.ring(),
                                    [&](auto ar) { return field_echelon(m, nullptr, ar).rank(); });
  }
  detail::IntArith ar;
  Diagonalizer<detail::IntArith> diag(ar, DenseMat<detail::IntArith>::from(m, ar), Tracking{});
  return diag.rank();
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
  const auto& ring = m.ring();
  if (ring.is_field()) {
    return detail::with_field_arith(ring, [&](auto ar) {
      auto ns = field_echelon(m, nullptr, ar).nullspace();
      ExactMatrix k(ring, m.cols(), ns.size());
      for (std::size_t j = 0; j < ns.size(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i)
          if (!decltype(ar)::is_zero(ns[j][i])) k.set(i, j, ar.to(ns[j][i]));
      return k;
    });
  }
  detail::IntArith ar;
  Tracking tr;
  tr.v = true;
  Diagonalizer<detail::IntArith> diag(ar, DenseMat<detail::IntArith>::from(m, ar), tr);
  ExactMatrix v = diag.v().to(ring, ar);
  return v.col_range(diag.rank(), m.cols() - diag.rank());
}

ExactMatrix image_basis(const ExactMatrix& m) {
  const auto& ring = m.ring();
  if (ring.is_field()) {
    return detail::with_field_arith(ring, [&](auto ar) {
      auto pivots = field_echelon(m.transpose(), nullptr, ar).pivot_columns();
      // Pivot columns of the transpose index independent rows of m^T, i.e.
      // independent columns of m.
      ExactMatrix basis(ring, m.rows(), pivots.size());
      for (std::size_t k = 0; k < pivots.size(); ++k)
        basis.paste(0, k, m.col_range(pivots[k], 1));
      return basis;
    });
  }
  detail::IntArith ar;
  Tracking tr;
  tr.u_inv = true;
  Diagonalizer<detail::IntArith> diag(ar, DenseMat<detail::IntArith>::from(m, ar), tr);
  ExactMatrix basis(ring, m.rows(), diag.rank());
  const auto& ui = diag.u_inv();
  for (std::size_t k = 0; k < diag.rank(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (sgn(ui(i, k)) != 0) basis.set(i, k, Scalar(ui(i, k) * diag.pivot(k)));
  return basis;
}

FgModule cokernel_presentation(const ExactMatrix& m) {
  const auto& ring = m.ring();
  if (ring.is_field()) return FgModule::free(ring, m.rows() - rank(m));
  detail::IntArith ar;
  Tracking tr;
  tr.divisibility_chain = true;
  Diagonalizer<detail::IntArith> diag(ar, DenseMat<detail::IntArith>::from(m, ar), tr);
  std::vector<mpz_class> factors;
  for (std::size_t i = 0; i < diag.rank(); ++i)
    if (diag.pivot(i) != 1) factors.push_back(diag.pivot(i));
  return FgModule(ring, m.rows() - diag.rank(), std::move(factors));
}

std::vector<std::optional<ExactMatrix>> solve_columns(const ExactMatrix& m, const ExactMatrix& b) {
  require_same_ring(m.ring(), b.ring(), "solve_linear");
  if (b.rows() != m.rows()) throw ShapeError("solve_linear: right-hand side has wrong height");
  if (!m.ring().is_field()) return solve_over_integers(m, b);
  return detail::with_field_arith(m.ring(), [&](auto ar) {
    using A = decltype(ar);
    auto ech = field_echelon(m, &b, ar);
    std::vector<std::optional<ExactMatrix>> out;
    for (std::size_t k = 0; k < b.cols(); ++k) {
      if (!ech.consistent(k)) {
        out.emplace_back(std::nullopt);
      } else {
        out.emplace_back(column_from<A>(ech.solve(k), m.ring(), ar));
      }
    }
    return out;
  });
}

std::optional<ExactMatrix> solve_linear(const ExactMatrix& m, const ExactMatrix& b) {
  if (b.cols() != 1) throw ShapeError("solve_linear: right-hand side must be a column vector");
  return solve_columns(m, b).front();
}

std::optional<ExactMatrix> solve_matrix(const ExactMatrix& m, const ExactMatrix& b) {
  auto cols = solve_columns(m, b);
  ExactMatrix x(m.ring(), m.cols(), b.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (!cols[k]) return std::nullopt;
    x.paste(0, k, *cols[k]);
  }
  return x;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (!m.is_square()) return std::nullopt;
  auto x = solve_matrix(m, ExactMatrix::identity(m.ring(), m.rows()));
  if (!x) return std::nullopt;
  if (!(m * *x).is_identity()) return std::nullopt;
  return x;
}

}  // namespace chainlab
