#pragma once

// Arithmetic back ends and elimination kernels shared by the linear-algebra
// front end. Entries leave ExactMatrix (mpq storage) for a ring-specific
// working type, are eliminated there and converted back.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "chainlab/matrix.hpp"

namespace chainlab::detail {

struct IntArith {
  using T = mpz_class;
  static constexpr bool kField = false;

  T from(const Scalar& x) const { return x.get_num(); }
  Scalar to(const T& x) const { return Scalar(x); }
  static bool is_zero(const T& x) { return sgn(x) == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  // a -= q * b
  void submul(T& a, const T& q, const T& b) const { mpz_submul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t()); }
  void addmul(T& a, const T& q, const T& b) const { mpz_addmul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t()); }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  // Prefer the smallest absolute value.
  static bool better(const T& a, const T& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static bool best(const T& a) { return a == 1 || a == -1; }
  // Quotient rounded to nearest, so |a - q b| <= |b| / 2.
  T quotient(const T& a, const T& b) const {
    T q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    T twice = 2 * r;
    if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) > 0) q += 1;
    return q;
  }
  bool divides(const T& b, const T& a) const { return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0; }
  T exact_div(const T& a, const T& b) const {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  // Unit u with u * a canonical (nonnegative).
  T normalizing_unit(const T& a) const { return sgn(a) < 0 ? T(-1) : T(1); }
  T unit_inverse(const T& u) const { return u; }
};

struct RatArith {
  using T = mpq_class;
  static constexpr bool kField = true;

  T from(const Scalar& x) const { return x; }
  Scalar to(const T& x) const { return x; }
  static bool is_zero(const T& x) { return sgn(x) == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  void submul(T& a, const T& q, const T& b) const { a -= q * b; }
  void addmul(T& a, const T& q, const T& b) const { a += q * b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  static std::size_t height(const T& a) {
    return mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2);
  }
  static bool better(const T& a, const T& b) { return height(a) < height(b); }
  static bool best(const T& a) { return a == 1 || a == -1; }
  T quotient(const T& a, const T& b) const { return a / b; }
  bool divides(const T& b, const T&) const { return !is_zero(b); }
  T exact_div(const T& a, const T& b) const { return a / b; }
  T normalizing_unit(const T& a) const { return 1 / a; }
  T unit_inverse(const T& u) const { return 1 / u; }
};

struct ModArith {
  using T = std::uint64_t;
  static constexpr bool kField = true;
  std::uint64_t p;

  T from(const Scalar& x) const { return x.get_num().get_ui() % p; }
  Scalar to(const T& x) const { return Scalar(mpz_class(static_cast<unsigned long>(x))); }
  static bool is_zero(const T& x) { return x == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  void submul(T& a, const T& q, const T& b) const { a = (a + p - (q * b) % p) % p; }
  void addmul(T& a, const T& q, const T& b) const { a = (a + q * b) % p; }
  T mul(const T& a, const T& b) const { return (a * b) % p; }
  T neg(const T& a) const { return a == 0 ? 0 : p - a; }
  static bool better(const T&, const T&) { return false; }
  static bool best(const T&) { return true; }
  T inv(T a) const {
    // Fermat: a^(p-2)
    T result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) result = (result * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return result;
  }
  T quotient(const T& a, const T& b) const { return mul(a, inv(b)); }
  bool divides(const T& b, const T&) const { return b != 0; }
  T exact_div(const T& a, const T& b) const { return mul(a, inv(b)); }
  T normalizing_unit(const T& a) const { return inv(a); }
  T unit_inverse(const T& u) const { return inv(u); }
};

template <class A>
struct DenseMat {
  using T = typename A::T;
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  DenseMat() = default;
  DenseMat(std::size_t r, std::size_t c, const A& ar) : rows(r), cols(c), data(r * c, ar.zero()) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static DenseMat from(const ExactMatrix& m, const A& ar) {
    DenseMat d(m.rows(), m.cols(), ar);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = ar.from(m.at(i, j));
    return d;
  }
  static DenseMat identity(std::size_t n, const A& ar) {
    DenseMat d(n, n, ar);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = ar.one();
    return d;
  }
  ExactMatrix to(const CoefficientRing& ring, const A& ar) const {
    ExactMatrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!A::is_zero((*this)(i, j))) m.set(i, j, ar.to((*this)(i, j)));
    return m;
  }
};

struct Tracking {
  bool u = false;
  bool u_inv = false;
  bool v = false;
  bool v_inv = false;
  bool divisibility_chain = false;
};

/// Unimodular diagonalization U M V = D by elementary operations.
///
/// Pivots are chosen by smallest absolute value over Z. With
/// `divisibility_chain` the diagonal satisfies d_i | d_{i+1}. Nonzero pivots
/// come first and are normalized (nonnegative over Z, 1 over fields).
/// Optional right-hand sides receive every row operation, so they end up as
/// U * rhs without U being stored.
template <class A>
class Diagonalizer {
 public:
  using T = typename A::T;

  Diagonalizer(A ar, DenseMat<A> m, Tracking tr, DenseMat<A>* rhs = nullptr)
      : ar_(std::move(ar)), m_(std::move(m)), tr_(tr), rhs_(rhs) {
    if (tr_.u) u_ = DenseMat<A>::identity(m_.rows, ar_);
    if (tr_.u_inv) u_inv_ = DenseMat<A>::identity(m_.rows, ar_);
    if (tr_.v) v_ = DenseMat<A>::identity(m_.cols, ar_);
    if (tr_.v_inv) v_inv_ = DenseMat<A>::identity(m_.cols, ar_);
    run();
  }

  std::size_t rank() const { return rank_; }
  const DenseMat<A>& d() const { return m_; }
  const DenseMat<A>& u() const { return u_; }
  const DenseMat<A>& u_inv() const { return u_inv_; }
  const DenseMat<A>& v() const { return v_; }
  const DenseMat<A>& v_inv() const { return v_inv_; }
  T pivot(std::size_t i) const { return m_(i, i); }

 private:
  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const T& q, std::size_t from_col) {
    for (std::size_t c = from_col; c < m_.cols; ++c) {
      if (!A::is_zero(m_(j, c))) ar_.submul(m_(i, c), q, m_(j, c));
    }
    if (tr_.u) {
      for (std::size_t c = 0; c < u_.cols; ++c)
        if (!A::is_zero(u_(j, c))) ar_.submul(u_(i, c), q, u_(j, c));
    }
    if (rhs_) {
      for (std::size_t c = 0; c < rhs_->cols; ++c)
        if (!A::is_zero((*rhs_)(j, c))) ar_.submul((*rhs_)(i, c), q, (*rhs_)(j, c));
    }
    if (tr_.u_inv) {
      // U^{-1} <- U^{-1} (I + q e_ij): col_j += q col_i
      for (std::size_t r = 0; r < u_inv_.rows; ++r)
        if (!A::is_zero(u_inv_(r, i))) ar_.addmul(u_inv_(r, j), q, u_inv_(r, i));
    }
  }
  // row_i += row_j (used to restore divisibility)
  void row_add(std::size_t i, std::size_t j) {
    T minus_one = ar_.neg(ar_.one());
    row_sub(i, j, minus_one, 0);
  }
  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m_.cols; ++c) std::swap(m_(i, c), m_(j, c));
    if (tr_.u)
      for (std::size_t c = 0; c < u_.cols; ++c) std::swap(u_(i, c), u_(j, c));
    if (rhs_)
      for (std::size_t c = 0; c < rhs_->cols; ++c) std::swap((*rhs_)(i, c), (*rhs_)(j, c));
    if (tr_.u_inv)
      for (std::size_t r = 0; r < u_inv_.rows; ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }
  void row_scale(std::size_t i, const T& unit) {
    for (std::size_t c = 0; c < m_.cols; ++c)
      if (!A::is_zero(m_(i, c))) m_(i, c) = ar_.mul(m_(i, c), unit);
    if (tr_.u)
      for (std::size_t c = 0; c < u_.cols; ++c)
        if (!A::is_zero(u_(i, c))) u_(i, c) = ar_.mul(u_(i, c), unit);
    if (rhs_)
      for (std::size_t c = 0; c < rhs_->cols; ++c)
        if (!A::is_zero((*rhs_)(i, c))) (*rhs_)(i, c) = ar_.mul((*rhs_)(i, c), unit);
    if (tr_.u_inv) {
      T inv = ar_.unit_inverse(unit);
      for (std::size_t r = 0; r < u_inv_.rows; ++r)
        if (!A::is_zero(u_inv_(r, i))) u_inv_(r, i) = ar_.mul(u_inv_(r, i), inv);
    }
  }
  // col_j -= q * col_i
  void col_sub(std::size_t j, std::size_t i, const T& q, std::size_t from_row) {
    for (std::size_t r = from_row; r < m_.rows; ++r)
      if (!A::is_zero(m_(r, i))) ar_.submul(m_(r, j), q, m_(r, i));
    if (tr_.v)
      for (std::size_t r = 0; r < v_.rows; ++r)
        if (!A::is_zero(v_(r, i))) ar_.submul(v_(r, j), q, v_(r, i));
    if (tr_.v_inv) {
      // V^{-1} <- (I + q e_ij) V^{-1}: row_i += q row_j
      for (std::size_t c = 0; c < v_inv_.cols; ++c)
        if (!A::is_zero(v_inv_(j, c))) ar_.addmul(v_inv_(i, c), q, v_inv_(j, c));
    }
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m_.rows; ++r) std::swap(m_(r, i), m_(r, j));
    if (tr_.v)
      for (std::size_t r = 0; r < v_.rows; ++r) std::swap(v_(r, i), v_(r, j));
    if (tr_.v_inv)
      for (std::size_t c = 0; c < v_inv_.cols; ++c) std::swap(v_inv_(i, c), v_inv_(j, c));
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < m_.rows; ++i) {
      for (std::size_t j = t; j < m_.cols; ++j) {
        const T& x = m_(i, j);
        if (A::is_zero(x)) continue;
        if (!found || A::better(x, m_(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
          if (A::best(x)) return true;
        }
      }
    }
    return found;
  }

  void run() {
    const std::size_t limit = std::min(m_.rows, m_.cols);
    std::size_t t = 0;
    for (; t < limit; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m_.rows; ++i) {
          if (A::is_zero(m_(i, t))) continue;
          T q = ar_.quotient(m_(i, t), m_(t, t));
          row_sub(i, t, q, t);
          if (!A::is_zero(m_(i, t))) dirty = true;
        }
        if (dirty) {
          std::size_t best = t;
          for (std::size_t i = t + 1; i < m_.rows; ++i)
            if (!A::is_zero(m_(i, t)) && A::better(m_(i, t), m_(best, t))) best = i;
          row_swap(t, best);
          continue;
        }
        for (std::size_t j = t + 1; j < m_.cols; ++j) {
          if (A::is_zero(m_(t, j))) continue;
          T q = ar_.quotient(m_(t, j), m_(t, t));
          col_sub(j, t, q, t);
          if (!A::is_zero(m_(t, j))) dirty = true;
        }
        if (dirty) {
          std::size_t best = t;
          for (std::size_t j = t + 1; j < m_.cols; ++j)
            if (!A::is_zero(m_(t, j)) && A::better(m_(t, j), m_(t, best))) best = j;
          col_swap(t, best);
          continue;
        }
        if constexpr (!A::kField) {
          if (tr_.divisibility_chain && !A::best(m_(t, t))) {
            std::size_t bad_row = m_.rows;
            for (std::size_t i = t + 1; i < m_.rows && bad_row == m_.rows; ++i)
              for (std::size_t j = t + 1; j < m_.cols; ++j)
                if (!A::is_zero(m_(i, j)) && !ar_.divides(m_(t, t), m_(i, j))) {
                  bad_row = i;
                  break;
                }
            if (bad_row != m_.rows) {
              row_add(t, bad_row);
              continue;
            }
          }
        }
        break;
      }
      T unit = ar_.normalizing_unit(m_(t, t));
      if (!(unit == ar_.one())) row_scale(t, unit);
    }
    rank_ = t;
  }

  A ar_;
  DenseMat<A> m_;
  Tracking tr_;
  DenseMat<A>* rhs_;
  DenseMat<A> u_, u_inv_, v_, v_inv_;
  std::size_t rank_ = 0;
};

/// Incremental row echelon form over a field for sparse systems.
///
/// Columns [0, n_vars) are variables, columns [n_vars, n_vars + n_rhs) are
/// right-hand sides. Pivot rows are kept with leading coefficient 1.
template <class A>
class SparseEchelon {
 public:
  using T = typename A::T;
  using Row = std::vector<std::pair<std::size_t, T>>;

  SparseEchelon(A ar, std::size_t n_vars, std::size_t n_rhs)
      : ar_(std::move(ar)),
        n_vars_(n_vars),
        n_rhs_(n_rhs),
        pivot_of_col_(n_vars, -1),
        acc_(n_vars + n_rhs, ar_.zero()),
        touched_(n_vars + n_rhs, false),
        inconsistent_(n_rhs, false) {}

  /// Adds one equation; entries must be sorted by column and nonzero.
  void add_row(const Row& row) {
    using MinHeap = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;
    MinHeap heap;
    std::vector<std::size_t> all_touched;
    auto touch = [&](std::size_t c) {
      if (!touched_[c]) {
        touched_[c] = true;
        all_touched.push_back(c);
        if (c < n_vars_) heap.push(c);
      }
    };
    for (const auto& [c, v] : row) {
      touch(c);
      acc_[c] = v;
    }
    std::optional<std::size_t> lead;
    while (!heap.empty()) {
      std::size_t c = heap.top();
      heap.pop();
      if (A::is_zero(acc_[c])) continue;
      int p = pivot_of_col_[c];
      if (p < 0) {
        lead = c;
        break;
      }
      T q = acc_[c];
      for (const auto& [pc, pv] : rows_[static_cast<std::size_t>(p)]) {
        touch(pc);
        ar_.submul(acc_[pc], q, pv);
      }
    }
    Row reduced;
    std::sort(all_touched.begin(), all_touched.end());
    for (std::size_t c : all_touched) {
      if (!A::is_zero(acc_[c])) reduced.emplace_back(c, acc_[c]);
      acc_[c] = ar_.zero();
      touched_[c] = false;
    }
    if (!lead) {
      for (const auto& [c, v] : reduced)
        if (c >= n_vars_) inconsistent_[c - n_vars_] = true;
      return;
    }
    // Entries left of the lead are zero by construction; normalize.
    T inv = ar_.normalizing_unit(reduced.front().second);
    for (auto& [c, v] : reduced) v = ar_.mul(v, inv);
    pivot_of_col_[*lead] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(reduced));
  }

  std::size_t rank() const { return rows_.size(); }
  bool consistent(std::size_t rhs) const { return !inconsistent_[rhs]; }
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n_vars_; ++c)
      if (pivot_of_col_[c] >= 0) cols.push_back(c);
    return cols;
  }

  /// Particular solution with free variables set to zero.
  std::vector<T> solve(std::size_t rhs) const {
    std::vector<T> x(n_vars_, ar_.zero());
    back_substitute(x, [&](const Row& r) {
      for (const auto& [c, v] : r)
        if (c == n_vars_ + rhs) return v;
      return ar_.zero();
    });
    return x;
  }

  /// Nullspace basis: one vector per free column with a 1 there.
  std::vector<std::vector<T>> nullspace() const {
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < n_vars_; ++f) {
      if (pivot_of_col_[f] >= 0) continue;
      std::vector<T> x(n_vars_, ar_.zero());
      x[f] = ar_.one();
      back_substitute(x, [&](const Row&) { return ar_.zero(); });
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  template <class RhsFn>
  void back_substitute(std::vector<T>& x, RhsFn rhs_of) const {
    for (std::size_t c = n_vars_; c-- > 0;) {
      int p = pivot_of_col_[c];
      if (p < 0) continue;
      const Row& r = rows_[static_cast<std::size_t>(p)];
      T value = rhs_of(r);
      for (const auto& [rc, rv] : r) {
        if (rc <= c || rc >= n_vars_) continue;
        if (!A::is_zero(x[rc])) ar_.submul(value, rv, x[rc]);
      }
      x[c] = value;
    }
  }

  A ar_;
  std::size_t n_vars_, n_rhs_;
  std::vector<int> pivot_of_col_;
  std::vector<Row> rows_;
  std::vector<T> acc_;
  std::vector<bool> touched_;
  std::vector<bool> inconsistent_;
};

/// Calls fn(arith) with the arithmetic back end matching `ring`.
template <class Fn>
decltype(auto) with_arith(const CoefficientRing& ring, Fn&& fn) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return fn(IntArith{});
    case RingKind::Rationals:
      return fn(RatArith{});
    case RingKind::PrimeField:
      break;
  }
  return fn(ModArith{ring.characteristic()});
}

/// Calls fn(arith) for field rings only.
template <class Fn>
decltype(auto) with_field_arith(const CoefficientRing& ring, Fn&& fn) {
  if (ring.kind() == RingKind::Rationals) return fn(RatArith{});
  return fn(ModArith{ring.characteristic()});
}

}  // namespace chainlab::detail
