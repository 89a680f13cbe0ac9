#include "chainlab/derived.hpp"

#include <stdexcept>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"
#include "chainlab/subquotient.hpp"

namespace chainlab {

namespace {

ExactMatrix id(const CoefficientRing& ring, std::size_t n) { return ExactMatrix::identity(ring, n); }

}  // namespace

Resolution free_resolution(const FgModule& m) {
  const auto& ring = m.ring();
  const std::size_t t = m.torsion_count(), r = m.free_rank();
  ExactMatrix d(ring, r + t, t);
  for (std::size_t i = 0; i < t; ++i) d.set(r + i, i, Scalar(m.invariant_factors()[i]));
  ExactMatrix aug(ring, t + r, r + t);
  for (std::size_t j = 0; j < r; ++j) aug.set(t + j, j, 1);
  for (std::size_t i = 0; i < t; ++i) aug.set(i, r + i, 1);
  return {ChainComplex::two_term(d, -1), m, aug};
}

void ModuleComplex::set_term(int n, std::size_t generators, const ExactMatrix& relations) {
  require_same_ring(ring_, relations.ring(), "ModuleComplex");
  if (relations.rows() != generators) throw ShapeError("ModuleComplex: relations do not match generators");
  if (generators == 0) {
    gens_.erase(n);
    rels_.erase(n);
    return;
  }
  gens_[n] = generators;
  rels_.insert_or_assign(n, relations);
}

void ModuleComplex::set_diff(int n, const ExactMatrix& d) {
  require_same_ring(ring_, d.ring(), "ModuleComplex");
  if (d.rows() != generators(n + 1) || d.cols() != generators(n)) {
    throw ShapeError("ModuleComplex: differential shape does not match the terms");
  }
  diffs_.insert_or_assign(n, d);
}

int ModuleComplex::lo() const { return gens_.empty() ? 0 : gens_.begin()->first; }
int ModuleComplex::hi() const { return gens_.empty() ? -1 : gens_.rbegin()->first; }

std::size_t ModuleComplex::generators(int n) const {
  auto it = gens_.find(n);
  return it == gens_.end() ? 0 : it->second;
}

ExactMatrix ModuleComplex::relations(int n) const {
  auto it = rels_.find(n);
  return it == rels_.end() ? ExactMatrix(ring_, 0, 0) : it->second;
}

ExactMatrix ModuleComplex::diff(int n) const {
  auto it = diffs_.find(n);
  return it == diffs_.end() ? ExactMatrix(ring_, generators(n + 1), generators(n)) : it->second;
}

ValidationReport validate(const ModuleComplex& c) {
  for (int n = c.lo() - 1; n <= c.hi(); ++n) {
    const ExactMatrix rel_next = c.relations(n + 1);
    auto in_relations = [&](const ExactMatrix& v) {
      if (v.is_zero()) return true;
      return solve_matrix(rel_next, v).has_value();
    };
    if (!in_relations(c.diff(n) * c.relations(n))) {
      return {false, n, "differential does not preserve relations in degree " + std::to_string(n)};
    }
    if (!in_relations(c.diff(n) * c.diff(n - 1))) {
      return {false, n - 1, "d^2 is not zero modulo relations in degree " + std::to_string(n - 1)};
    }
  }
  return {};
}

ModuleComplex as_module_complex(const ChainComplex& c) {
  ModuleComplex out(c.ring());
  for (int n = c.lo(); n <= c.hi(); ++n) out.set_term(n, c.rank(n), ExactMatrix(c.ring(), c.rank(n), 0));
  for (int n = c.lo(); n < c.hi(); ++n) out.set_diff(n, c.diff(n));
  return out;
}

FgModule cohomology(const ModuleComplex& c, int n) {
  const auto& ring = c.ring();
  const std::size_t g = c.generators(n);
  if (g == 0) return FgModule::zero(ring);
  // cycles: x with d x in the relations of the next term
  ExactMatrix k = kernel_basis(hstack(c.diff(n), c.relations(n + 1)));
  ExactMatrix cycles = k.row_range(0, g);
  ExactMatrix bounds = hstack(c.diff(n - 1), c.relations(n));
  return Subquotient::from_generators(cycles, bounds).module();
}

ModuleComplex tensor(const ChainComplex& c, const FgModule& n) {
  require_same_ring(c.ring(), n.ring(), "tensor");
  const auto& ring = c.ring();
  const std::size_t g = n.num_generators();
  const ExactMatrix rel = n.relation_matrix();
  ModuleComplex out(ring);
  for (int k = c.lo(); k <= c.hi(); ++k) out.set_term(k, c.rank(k) * g, kronecker(id(ring, c.rank(k)), rel));
  for (int k = c.lo(); k < c.hi(); ++k) out.set_diff(k, kronecker(c.diff(k), id(ring, g)));
  return out;
}

ModuleComplex hom_complex(const ChainComplex& p, const FgModule& n) {
  require_same_ring(p.ring(), n.ring(), "hom_complex");
  const auto& ring = p.ring();
  const std::size_t g = n.num_generators();
  const ExactMatrix rel = n.relation_matrix();
  ModuleComplex out(ring);
  for (int k = -p.hi(); k <= -p.lo(); ++k)
    out.set_term(k, p.rank(-k) * g, kronecker(id(ring, p.rank(-k)), rel));
  for (int k = -p.hi(); k < -p.lo(); ++k)
    out.set_diff(k, kronecker(p.diff(-k - 1).transpose().scaled(-1), id(ring, g)));
  return out;
}

ChainComplex derived_tensor(const ChainComplex& a, const ChainComplex& b) { return tensor(a, b); }

ChainComplex derived_tensor(const FgModule& a, const FgModule& b) {
  return tensor(free_resolution(a).complex, free_resolution(b).complex);
}

ChainComplex derived_tensor(const ChainComplex& a, const FgModule& b) {
  return tensor(a, free_resolution(b).complex);
}

ChainComplex derived_tensor(const FgModule& a, const ChainComplex& b) {
  return tensor(free_resolution(a).complex, b);
}

ModuleComplex derived_tensor_one_sided(const FgModule& a, const FgModule& b) {
  return tensor(free_resolution(a).complex, b);
}

FgModule tor(const FgModule& m, const FgModule& n, int i) {
  if (i < 0) throw std::invalid_argument("tor: negative index");
  return cohomology(derived_tensor(m, n), -i);
}

FgModule ext(const FgModule& m, const FgModule& n, int i) {
  if (i < 0) throw std::invalid_argument("ext: negative index");
  return cohomology(hom_complex(free_resolution(m).complex, n), i);
}

FgModule hom_derived(const ChainComplex& b, const ChainComplex& c, int i) {
  require_same_ring(b.ring(), c.ring(), "hom_derived");
  if (!b.ring().is_field()) {
    for (const auto& [n, h] : cohomology_all(b)) {
      if (!h.is_free()) {
        throw Unsupported("hom_derived over Z needs a source with free cohomology (H^" + std::to_string(n) +
                          " = " + h.to_string() + ")");
      }
    }
  }
  return hom_in_K(b, shift(c, i));
}

}  // namespace chainlab
