#include "chainlab/linear_system.hpp"

#include <algorithm>
#include <map>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"
#include "elimination.hpp"

namespace chainlab {

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  blocks_.push_back({rows, cols, num_vars_});
  num_vars_ += rows * cols;
  return blocks_.size() - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const ExactMatrix& rhs,
                                bool keep_trivial) {
  const std::size_t p = rhs.rows(), q = rhs.cols();
  struct Prepared {
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> left_rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> right_cols;
    const Block* block;
  };
  std::vector<Prepared> prepared;
  for (const auto& t : terms) {
    if (t.unknown >= blocks_.size()) throw std::out_of_range("LinearSystem: unknown id");
    const Block& b = blocks_[t.unknown];
    if (t.left.rows() != p || t.left.cols() != b.rows || t.right.rows() != b.cols ||
        t.right.cols() != q) {
      throw ShapeError("LinearSystem: term shapes do not match the equation");
    }
    require_same_ring(ring_, t.left.ring(), "LinearSystem");
    require_same_ring(ring_, t.right.ring(), "LinearSystem");
    Prepared pr{std::vector<std::vector<std::pair<std::size_t, Scalar>>>(p),
                std::vector<std::vector<std::pair<std::size_t, Scalar>>>(q), &b};
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t a = 0; a < b.rows; ++a)
        if (sgn(t.left.at(i, a)) != 0) pr.left_rows[i].emplace_back(a, t.left.at(i, a));
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t c = 0; c < b.cols; ++c)
        if (sgn(t.right.at(c, j)) != 0) pr.right_cols[j].emplace_back(c, t.right.at(c, j));
    prepared.push_back(std::move(pr));
  }

  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& pr : prepared) {
        for (const auto& [a, la] : pr.left_rows[i])
          for (const auto& [c, rc] : pr.right_cols[j])
            acc[pr.block->offset + a * pr.block->cols + c] += la * rc;
      }
      SparseRow row;
      for (auto& [col, v] : acc) {
        Scalar nv = ring_.normalize(v);
        if (sgn(nv) != 0) row.emplace_back(col, nv);
      }
      const Scalar& r = rhs.at(i, j);
      if (row.empty() && sgn(r) == 0 && !keep_trivial) continue;
      rows_.push_back(std::move(row));
      rhs_.push_back(r);
    }
  }
}

ExactMatrix LinearSystem::coefficient_matrix() const {
  ExactMatrix m(ring_, rows_.size(), num_vars_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) m.set(i, c, v);
  return m;
}

ExactMatrix LinearSystem::rhs() const {
  ExactMatrix b(ring_, rhs_.size(), 1);
  for (std::size_t i = 0; i < rhs_.size(); ++i) b.set(i, 0, rhs_[i]);
  return b;
}

std::optional<std::vector<ExactMatrix>> LinearSystem::solve() const {
  if (!ring_.is_field()) {
    auto x = solve_linear(coefficient_matrix(), rhs());
    if (!x) return std::nullopt;
    return unpack(*x);
  }
  return detail::with_field_arith(ring_, [&](auto ar) -> std::optional<std::vector<ExactMatrix>> {
    using A = decltype(ar);
    detail::SparseEchelon<A> ech(ar, num_vars_, 1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      typename detail::SparseEchelon<A>::Row row;
      for (const auto& [c, v] : rows_[i]) row.emplace_back(c, ar.from(v));
      if (sgn(rhs_[i]) != 0) row.emplace_back(num_vars_, ar.from(rhs_[i]));
      ech.add_row(row);
      if (!ech.consistent(0)) return std::nullopt;
    }
    auto sol = ech.solve(0);
    ExactMatrix x(ring_, num_vars_, 1);
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (!A::is_zero(sol[i])) x.set(i, 0, ar.to(sol[i]));
    return unpack(x);
  });
}

std::vector<ExactMatrix> LinearSystem::unpack(const ExactMatrix& column) const {
  if (column.rows() != num_vars_ || column.cols() != 1) {
    throw ShapeError("LinearSystem::unpack: wrong column shape");
  }
  std::vector<ExactMatrix> out;
  for (const auto& b : blocks_) {
    ExactMatrix m(ring_, b.rows, b.cols);
    for (std::size_t a = 0; a < b.rows; ++a)
      for (std::size_t c = 0; c < b.cols; ++c) {
        const Scalar& v = column.at(b.offset + a * b.cols + c, 0);
        if (sgn(v) != 0) m.set(a, c, v);
      }
    out.push_back(std::move(m));
  }
  return out;
}

ExactMatrix LinearSystem::pack(const std::vector<ExactMatrix>& blocks) const {
  if (blocks.size() != blocks_.size()) throw ShapeError("LinearSystem::pack: wrong block count");
  ExactMatrix column(ring_, num_vars_, 1);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    if (blocks[k].rows() != b.rows || blocks[k].cols() != b.cols) {
      throw ShapeError("LinearSystem::pack: wrong block shape");
    }
    for (std::size_t a = 0; a < b.rows; ++a)
      for (std::size_t c = 0; c < b.cols; ++c) {
        const Scalar& v = blocks[k].at(a, c);
        if (sgn(v) != 0) column.set(b.offset + a * b.cols + c, 0, v);
      }
  }
  return column;
}

}  // namespace chainlab
