#include "chainlab/matrix.hpp"

#include <sstream>

#include "chainlab/error.hpp"

namespace chainlab {

namespace {

void require_shape(bool ok, const char* op, const ExactMatrix& a, const ExactMatrix& b) {
  if (!ok) {
    throw ShapeError(std::string(op) + ": incompatible shapes " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

}  // namespace

ExactMatrix::ExactMatrix(CoefficientRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(CoefficientRing ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(CoefficientRing ring,
                                   const std::vector<std::vector<Scalar>>& rows) {
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(ring, rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw ShapeError("from_rows: ragged rows");
    for (std::size_t j = 0; j < ncols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_ints(CoefficientRing ring,
                                   std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (const auto& row : rows) {
    std::vector<Scalar> v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return from_rows(ring, r);
}

ExactMatrix ExactMatrix::from_ints(CoefficientRing ring, std::size_t rows, std::size_t cols,
                                   const std::vector<long>& values) {
  if (values.size() != rows * cols) throw ShapeError("from_ints: wrong number of entries");
  ExactMatrix m(ring, rows, cols);
  for (std::size_t k = 0; k < values.size(); ++k) m.set(k / cols, k % cols, Scalar(values[k]));
  return m;
}

ExactMatrix ExactMatrix::column(CoefficientRing ring, const std::vector<Scalar>& entries) {
  ExactMatrix m(ring, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

ExactMatrix ExactMatrix::diagonal(CoefficientRing ring, const std::vector<Scalar>& entries) {
  ExactMatrix m(ring, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  data_[i * cols_ + j] = ring_.normalize(v);
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool ExactMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = at(i, j);
  }
  return t;
}

ExactMatrix ExactMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                               std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw ShapeError("block: out of range");
  ExactMatrix b(ring_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) b.data_[i * ncols + j] = at(row0 + i, col0 + j);
  }
  return b;
}

void ExactMatrix::paste(std::size_t row0, std::size_t col0, const ExactMatrix& m) {
  require_same_ring(ring_, m.ring_, "paste");
  if (row0 + m.rows_ > rows_ || col0 + m.cols_ > cols_) throw ShapeError("paste: out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) data_[(row0 + i) * cols_ + col0 + j] = m.at(i, j);
  }
}

std::vector<Scalar> ExactMatrix::column_vector(std::size_t j) const {
  std::vector<Scalar> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
  ExactMatrix r(ring_, rows_, cols_);
  Scalar c = ring_.normalize(s);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.mul(data_[k], c);
  return r;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix product");
  require_shape(a.cols_ == b.rows_, "matrix product", a, b);
  ExactMatrix c(a.ring_, a.rows_, b.cols_);
  const bool modular = a.ring_.kind() == RingKind::PrimeField;
  const bool integral = a.ring_.kind() != RingKind::Rationals;
  if (integral) {
    // Accumulate numerators only; denominators are 1.
    std::vector<mpz_class> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (auto& x : acc) x = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const mpz_class& aik = a.data_[i * a.cols_ + k].get_num();
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const mpz_class& bkj = b.data_[k * b.cols_ + j].get_num();
          if (sgn(bkj) != 0) mpz_addmul(acc[j].get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
        }
      }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (modular) {
          mpz_fdiv_r_ui(acc[j].get_mpz_t(), acc[j].get_mpz_t(),
                        static_cast<unsigned long>(a.ring_.characteristic()));
        }
        c.data_[i * b.cols_ + j] = acc[j];
      }
    }
    return c;
  }
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.data_[i * a.cols_ + k];
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.data_[k * b.cols_ + j];
        if (sgn(bkj) != 0) c.data_[i * b.cols_ + j] += aik * bkj;
      }
    }
  }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix sum");
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum", a, b);
  ExactMatrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.add(a.data_[k], b.data_[k]);
  return c;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix difference");
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference", a, b);
  ExactMatrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.sub(a.data_[k], b.data_[k]);
  return c;
}

ExactMatrix operator-(const ExactMatrix& a) {
  ExactMatrix c(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.ring_.neg(a.data_[k]);
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ExactMatrix::to_string() const {
  if (empty()) return "[]";
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << at(i, j).get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "hstack");
  if (a.rows() != b.rows()) throw ShapeError("hstack: row counts differ");
  ExactMatrix m(a.ring(), a.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(0, a.cols(), b);
  return m;
}

ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "vstack");
  if (a.cols() != b.cols()) throw ShapeError("vstack: column counts differ");
  ExactMatrix m(a.ring(), a.rows() + b.rows(), a.cols());
  m.paste(0, 0, a);
  m.paste(a.rows(), 0, b);
  return m;
}

ExactMatrix block_diagonal(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "block_diagonal");
  ExactMatrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(a.rows(), a.cols(), b);
  return m;
}

ExactMatrix block2x2(const ExactMatrix& a, const ExactMatrix& b, const ExactMatrix& c,
                     const ExactMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols()) {
    throw ShapeError("block2x2: blocks do not tile");
  }
  ExactMatrix m(a.ring(), a.rows() + c.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(0, a.cols(), b);
  m.paste(a.rows(), 0, c);
  m.paste(a.rows(), a.cols(), d);
  return m;
}

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "kronecker");
  const auto& ring = a.ring();
  ExactMatrix m(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a.at(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (b.at(k, l) != 0) m.set(i * b.rows() + k, j * b.cols() + l, aij * b.at(k, l));
        }
      }
    }
  }
  return m;
}

}  // namespace chainlab
