#include "chainlab/complex.hpp"

#include <algorithm>
#include <sstream>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"

namespace chainlab {

namespace {

std::string shape(const ExactMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Scalar sign(int k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace

ChainComplex::ChainComplex(CoefficientRing ring, int lo, std::vector<std::size_t> ranks,
                           const std::map<int, ExactMatrix>& diffs)
    : ring_(ring), lo_(lo), ranks_(std::move(ranks)) {
  std::size_t first = 0;
  while (first < ranks_.size() && ranks_[first] == 0) ++first;
  std::size_t last = ranks_.size();
  while (last > first && ranks_[last - 1] == 0) --last;
  ranks_ = std::vector<std::size_t>(ranks_.begin() + first, ranks_.begin() + last);
  lo_ = ranks_.empty() ? 0 : lo + static_cast<int>(first);

  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    int n = lo_ + static_cast<int>(i);
    diffs_.emplace_back(ring_, rank(n + 1), rank(n));
  }
  for (const auto& [n, m] : diffs) {
    require_same_ring(ring_, m.ring(), "ChainComplex");
    if (m.rows() != rank(n + 1) || m.cols() != rank(n)) {
      throw ShapeError("differential in degree " + std::to_string(n) + " is " + shape(m) +
                       ", expected " + std::to_string(rank(n + 1)) + "x" + std::to_string(rank(n)));
    }
    if (in_support(n)) diffs_[static_cast<std::size_t>(n - lo_)] = m;
  }
}

ChainComplex ChainComplex::concentrated(CoefficientRing ring, int degree, std::size_t rank) {
  return ChainComplex(ring, degree, {rank});
}

ChainComplex ChainComplex::two_term(const ExactMatrix& d, int degree) {
  return ChainComplex(d.ring(), degree, {d.cols(), d.rows()}, {{degree, d}});
}

std::size_t ChainComplex::rank(int n) const {
  return in_support(n) ? ranks_[static_cast<std::size_t>(n - lo_)] : 0;
}

ExactMatrix ChainComplex::diff(int n) const {
  if (in_support(n)) return diffs_[static_cast<std::size_t>(n - lo_)];
  return ExactMatrix(ring_, rank(n + 1), rank(n));
}

std::size_t ChainComplex::total_rank() const {
  std::size_t total = 0;
  for (auto r : ranks_) total += r;
  return total;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  return a.ring_ == b.ring_ && a.ranks_ == b.ranks_ && (a.ranks_.empty() || a.lo_ == b.lo_) &&
         a.diffs_ == b.diffs_;
}

std::string ChainComplex::to_string() const {
  std::ostringstream out;
  out << "complex over " << ring_.name();
  if (is_zero()) return out.str() + " (zero)";
  for (int n = lo(); n <= hi(); ++n) {
    out << "\n  rank " << n << " " << rank(n);
    if (n < hi()) out << "\n  d " << n << " " << diff(n).to_string();
  }
  return out.str();
}

ValidationReport validate(const ChainComplex& c) {
  for (int n = c.lo(); n + 1 < c.hi(); ++n) {
    if (!(c.diff(n + 1) * c.diff(n)).is_zero()) {
      return {false, n, "d(" + std::to_string(n + 1) + ") * d(" + std::to_string(n) + ") != 0 at degree " + std::to_string(n)};
    }
  }
  return {};
}

void require_valid(const ChainComplex& c) {
  auto r = validate(c);
  if (!r.ok) throw ValidationError(r.message);
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   const std::map<int, ExactMatrix>& components)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_ring(source_.ring(), target_.ring(), "ChainMap");
  for (const auto& [n, m] : components) {
    require_same_ring(source_.ring(), m.ring(), "ChainMap");
    if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n)) {
      throw ShapeError("chain map component in degree " + std::to_string(n) + " is " + shape(m) +
                       ", expected " + std::to_string(target_.rank(n)) + "x" +
                       std::to_string(source_.rank(n)));
    }
    if (!m.empty()) components_.insert_or_assign(n, m);
  }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  return scalar(c, Scalar(1));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return ChainMap(source, target);
}

ChainMap ChainMap::scalar(const ChainComplex& c, const Scalar& s) {
  std::map<int, ExactMatrix> comps;
  for (int n = c.lo(); n <= c.hi(); ++n)
    comps.emplace(n, ExactMatrix::identity(c.ring(), c.rank(n)).scaled(s));
  return ChainMap(c, c, comps);
}

ExactMatrix ChainMap::component(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return ExactMatrix(source_.ring(), target_.rank(n), source_.rank(n));
}

int ChainMap::lo() const {
  if (source_.is_zero()) return target_.lo();
  if (target_.is_zero()) return source_.lo();
  return std::min(source_.lo(), target_.lo());
}

int ChainMap::hi() const {
  if (source_.is_zero()) return target_.hi();
  if (target_.is_zero()) return source_.hi();
  return std::max(source_.hi(), target_.hi());
}

bool ChainMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

ChainMap operator*(const ChainMap& g, const ChainMap& f) {
  if (g.source_ != f.target_) throw ShapeError("chain map composition: complexes do not match");
  std::map<int, ExactMatrix> comps;
  for (const auto& [n, m] : f.components_) {
    auto it = g.components_.find(n);
    if (it != g.components_.end()) comps.emplace(n, it->second * m);
  }
  return ChainMap(f.source_, g.target_, comps);
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) {
    throw ShapeError("chain map sum: complexes do not match");
  }
  std::map<int, ExactMatrix> comps = a.components_;
  for (const auto& [n, m] : b.components_) {
    auto it = comps.find(n);
    if (it == comps.end()) {
      comps.emplace(n, m);
    } else {
      it->second = it->second + m;
    }
  }
  return ChainMap(a.source_, a.target_, comps);
}

ChainMap operator-(const ChainMap& a) {
  std::map<int, ExactMatrix> comps;
  for (const auto& [n, m] : a.components_) comps.emplace(n, -m);
  return ChainMap(a.source_, a.target_, comps);
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) { return a + (-b); }

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) return false;
  for (int n = a.lo(); n <= a.hi(); ++n)
    if (a.component(n) != b.component(n)) return false;
  return true;
}

ValidationReport validate(const ChainMap& f) {
  for (int n = f.lo() - 1; n <= f.hi(); ++n) {
    if (f.target().diff(n) * f.component(n) != f.component(n + 1) * f.source().diff(n)) {
      return {false, n, "chain map does not commute with the differentials at degree " + std::to_string(n)};
    }
  }
  return {};
}

void require_valid(const ChainMap& f) {
  auto r = validate(f);
  if (!r.ok) throw ValidationError(r.message);
}

Homotopy::Homotopy(ChainMap from, ChainMap to, const std::map<int, ExactMatrix>& components)
    : from_(std::move(from)), to_(std::move(to)) {
  if (from_.source() != to_.source() || from_.target() != to_.target()) {
    throw ShapeError("Homotopy: maps have different source or target");
  }
  const auto& src = from_.source();
  const auto& tgt = from_.target();
  for (const auto& [n, m] : components) {
    if (m.rows() != tgt.rank(n - 1) || m.cols() != src.rank(n)) {
      throw ShapeError("homotopy component in degree " + std::to_string(n) + " is " + shape(m) +
                       ", expected " + std::to_string(tgt.rank(n - 1)) + "x" +
                       std::to_string(src.rank(n)));
    }
    if (!m.empty()) components_.insert_or_assign(n, m);
  }
}

ExactMatrix Homotopy::component(int n) const {
  auto it = components_.find(n);
  if (it != components_.end()) return it->second;
  return ExactMatrix(from_.ring(), from_.target().rank(n - 1), from_.source().rank(n));
}

ChainMap Homotopy::boundary() const {
  const auto& src = from_.source();
  const auto& tgt = from_.target();
  std::map<int, ExactMatrix> comps;
  for (int n = from_.lo(); n <= from_.hi(); ++n) {
    comps.emplace(n, component(n + 1) * src.diff(n) + tgt.diff(n - 1) * component(n));
  }
  return ChainMap(src, tgt, comps);
}

ValidationReport validate(const Homotopy& h) {
  ChainMap diff = h.from_map() - h.to_map();
  ChainMap bd = h.boundary();
  for (int n = diff.lo(); n <= diff.hi(); ++n) {
    if (diff.component(n) != bd.component(n)) {
      return {false, n, "homotopy identity fails at degree " + std::to_string(n)};
    }
  }
  return {};
}

ChainComplex shift(const ChainComplex& c, int k) {
  if (c.is_zero()) return c;
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(c.rank(n));
    diffs.emplace(n - k, c.diff(n).scaled(sign(k)));
  }
  return ChainComplex(c.ring(), c.lo() - k, ranks, diffs);
}

ChainMap shift(const ChainMap& f, int k) {
  std::map<int, ExactMatrix> comps;
  for (int n = f.lo(); n <= f.hi(); ++n) comps.emplace(n - k, f.component(n));
  return ChainMap(shift(f.source(), k), shift(f.target(), k), comps);
}

Biproduct biproduct(const ChainComplex& a, const ChainComplex& b) {
  require_same_ring(a.ring(), b.ring(), "biproduct");
  const auto& ring = a.ring();
  int lo = std::min(a.is_zero() ? b.lo() : a.lo(), b.is_zero() ? a.lo() : b.lo());
  int hi = std::max(a.is_zero() ? b.hi() : a.hi(), b.is_zero() ? a.hi() : b.hi());
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(a.rank(n) + b.rank(n));
    diffs.emplace(n, block_diagonal(a.diff(n), b.diff(n)));
  }
  ChainComplex sum(ring, lo, ranks, diffs);
  std::map<int, ExactMatrix> ia, ib, pa, pb;
  for (int n = lo; n <= hi; ++n) {
    ExactMatrix ea = ExactMatrix::identity(ring, a.rank(n));
    ExactMatrix eb = ExactMatrix::identity(ring, b.rank(n));
    ia.emplace(n, vstack(ea, ExactMatrix(ring, b.rank(n), a.rank(n))));
    ib.emplace(n, vstack(ExactMatrix(ring, a.rank(n), b.rank(n)), eb));
    pa.emplace(n, hstack(ea, ExactMatrix(ring, a.rank(n), b.rank(n))));
    pb.emplace(n, hstack(ExactMatrix(ring, b.rank(n), a.rank(n)), eb));
  }
  return {sum, ChainMap(a, sum, ia), ChainMap(b, sum, ib), ChainMap(sum, a, pa), ChainMap(sum, b, pb)};
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
  auto src = biproduct(f.source(), g.source()).sum;
  auto tgt = biproduct(f.target(), g.target()).sum;
  std::map<int, ExactMatrix> comps;
  for (int n = std::min(f.lo(), g.lo()); n <= std::max(f.hi(), g.hi()); ++n)
    comps.emplace(n, block_diagonal(f.component(n), g.component(n)));
  return ChainMap(src, tgt, comps);
}

namespace {

// Offsets of the (i, n - i) blocks inside (a ⊗ b)^n.
struct TensorLayout {
  const ChainComplex& a;
  const ChainComplex& b;

  bool nonempty() const { return !a.is_zero() && !b.is_zero(); }
  int lo() const { return a.lo() + b.lo(); }
  int hi() const { return a.hi() + b.hi(); }

  std::size_t offset(int n, int i) const {
    std::size_t off = 0;
    for (int k = a.lo(); k < i; ++k) off += a.rank(k) * b.rank(n - k);
    return off;
  }
  std::size_t rank(int n) const { return offset(n, a.hi() + 1); }
};

}  // namespace

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  require_same_ring(a.ring(), b.ring(), "tensor");
  const auto& ring = a.ring();
  TensorLayout lay{a, b};
  if (!lay.nonempty()) return ChainComplex(ring);
  std::vector<std::size_t> ranks;
  std::map<int, ExactMatrix> diffs;
  for (int n = lay.lo(); n <= lay.hi(); ++n) {
    ranks.push_back(lay.rank(n));
    ExactMatrix d(ring, lay.rank(n + 1), lay.rank(n));
    for (int i = a.lo(); i <= a.hi(); ++i) {
      int j = n - i;
      if (a.rank(i) * b.rank(j) == 0) continue;
      std::size_t col = lay.offset(n, i);
      if (a.rank(i + 1) > 0) {
        d.paste(lay.offset(n + 1, i + 1), col,
                kronecker(a.diff(i), ExactMatrix::identity(ring, b.rank(j))));
      }
      if (b.rank(j + 1) > 0) {
        d.paste(lay.offset(n + 1, i), col,
                kronecker(ExactMatrix::identity(ring, a.rank(i)), b.diff(j)).scaled(sign(i)));
      }
    }
    diffs.emplace(n, d);
  }
  return ChainComplex(ring, lay.lo(), ranks, diffs);
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  ChainComplex src = tensor(f.source(), g.source());
  ChainComplex tgt = tensor(f.target(), g.target());
  const auto& ring = f.ring();
  TensorLayout ls{f.source(), g.source()};
  TensorLayout lt{f.target(), g.target()};
  std::map<int, ExactMatrix> comps;
  if (ls.nonempty() && lt.nonempty()) {
    for (int n = src.lo(); n <= src.hi(); ++n) {
      ExactMatrix m(ring, tgt.rank(n), src.rank(n));
      for (int i = f.source().lo(); i <= f.source().hi(); ++i) {
        int j = n - i;
        if (f.source().rank(i) * g.source().rank(j) == 0) continue;
        if (f.target().rank(i) * g.target().rank(j) == 0) continue;
        m.paste(lt.offset(n, i), ls.offset(n, i), kronecker(f.component(i), g.component(j)));
      }
      comps.emplace(n, m);
    }
  }
  return ChainMap(src, tgt, comps);
}

ChainMap tensor_swap(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex ab = tensor(a, b);
  ChainComplex ba = tensor(b, a);
  const auto& ring = a.ring();
  TensorLayout lab{a, b};
  TensorLayout lba{b, a};
  std::map<int, ExactMatrix> comps;
  if (lab.nonempty()) {
    for (int n = ab.lo(); n <= ab.hi(); ++n) {
      ExactMatrix m(ring, ba.rank(n), ab.rank(n));
      for (int i = a.lo(); i <= a.hi(); ++i) {
        int j = n - i;
        std::size_t ra = a.rank(i), rb = b.rank(j);
        if (ra * rb == 0) continue;
        std::size_t col0 = lab.offset(n, i), row0 = lba.offset(n, j);
        Scalar s = sign(i * j);
        for (std::size_t p = 0; p < ra; ++p)
          for (std::size_t q = 0; q < rb; ++q) m.set(row0 + q * ra + p, col0 + p * rb + q, s);
      }
      comps.emplace(n, m);
    }
  }
  return ChainMap(ab, ba, comps);
}

Subquotient cohomology_presentation(const ChainComplex& c, int n) {
  return Subquotient::from_generators(kernel_basis(c.diff(n)), c.diff(n - 1));
}

FgModule cohomology(const ChainComplex& c, int n) {
  if (c.rank(n) == 0) return FgModule(c.ring());
  return cohomology_presentation(c, n).module();
}

std::map<int, FgModule> cohomology_all(const ChainComplex& c) {
  std::map<int, FgModule> out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    FgModule h = cohomology(c, n);
    if (!h.is_zero()) out.emplace(n, h);
  }
  return out;
}

bool is_acyclic(const ChainComplex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (!cohomology(c, n).is_zero()) return false;
  return true;
}

ModuleMap induced_map(const ChainMap& f, int n) {
  return induced_map(f.component(n), cohomology_presentation(f.source(), n),
                     cohomology_presentation(f.target(), n));
}

bool is_quasi_iso(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n)
    if (!module_map_analysis(induced_map(f, n)).is_iso) return false;
  return true;
}

}  // namespace chainlab
