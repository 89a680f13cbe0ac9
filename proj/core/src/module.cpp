#include "chainlab/module.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "chainlab/error.hpp"
#include "chainlab/linalg.hpp"
#include "chainlab/subquotient.hpp"

namespace chainlab {

FgModule::FgModule(CoefficientRing ring, std::size_t free_rank,
                   std::vector<mpz_class> invariant_factors)
    : ring_(ring), free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  if (ring_.is_field() && !factors_.empty()) {
    throw ValidationError("modules over " + ring_.name() + " carry no invariant factors");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw ValidationError("invariant factors must be >= 2");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t())) {
      throw ValidationError("invariant factors must form a divisibility chain");
    }
  }
}

FgModule FgModule::cyclic(CoefficientRing ring, const mpz_class& d) {
  return from_orders(ring, 0, {d});
}

FgModule FgModule::from_orders(CoefficientRing ring, std::size_t free_rank,
                               const std::vector<mpz_class>& orders) {
  ExactMatrix rel(ring, orders.size() + free_rank, orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) rel.set(i, i, Scalar(orders[i]));
  return cokernel_presentation(rel);
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  std::string_view oplus = "⊕";
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, oplus.size()) == oplus) {
      out.push_back('+');
      i += oplus.size();
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[i]))) out.push_back(text[i]);
    ++i;
  }
  return out;
}

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  out = mpz_class(std::string(s));
  return true;
}

}  // namespace

FgModule FgModule::parse(const CoefficientRing& ring, std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty module description");
  const std::string symbol = ring.name();
  std::size_t free_rank = 0;
  std::vector<mpz_class> orders;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    if (next == std::string::npos) next = s.size();
    std::string term = s.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) throw std::invalid_argument("malformed module description '" + std::string(text) + "'");
    mpz_class n;
    if (parse_integer(term, n)) {
      if (n < 0) throw std::invalid_argument("negative order in module description");
      if (n == 0) {
        ++free_rank;
      } else {
        orders.push_back(n);
      }
      continue;
    }
    std::size_t multiplicity = 1;
    if (auto caret = term.find('^'); caret != std::string::npos) {
      auto digits = std::string_view(term).substr(caret + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), multiplicity);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("bad exponent in '" + term + "'");
      }
      term = term.substr(0, caret);
    }
    if (term == symbol) {
      free_rank += multiplicity;
    } else if (term.rfind(symbol + "/", 0) == 0 &&
               parse_integer(std::string_view(term).substr(symbol.size() + 1), n) && n >= 0) {
      for (std::size_t k = 0; k < multiplicity; ++k) {
        if (n == 0) {
          ++free_rank;
        } else {
          orders.push_back(n);
        }
      }
    } else {
      throw std::invalid_argument("cannot parse module term '" + term + "' over " + symbol);
    }
    if (next == s.size()) break;
  }
  return from_orders(ring, free_rank, orders);
}

mpz_class FgModule::order() const {
  if (free_rank_ > 0) return 0;
  if (ring_.is_field()) return 1;
  mpz_class n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

ExactMatrix FgModule::relation_matrix() const {
  ExactMatrix rel(ring_, num_generators(), factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) rel.set(i, i, Scalar(factors_[i]));
  return rel;
}

std::string FgModule::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  const std::string symbol = ring_.name();
  for (const auto& d : factors_) {
    if (!out.empty()) out += " + ";
    out += symbol + "/" + d.get_str();
  }
  if (free_rank_ > 0) {
    if (!out.empty()) out += " + ";
    out += symbol;
    if (free_rank_ > 1) out += "^" + std::to_string(free_rank_);
  }
  return out;
}

FgModule direct_sum(const FgModule& a, const FgModule& b) {
  require_same_ring(a.ring(), b.ring(), "direct_sum");
  std::vector<mpz_class> orders = a.invariant_factors();
  orders.insert(orders.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return FgModule::from_orders(a.ring(), a.free_rank() + b.free_rank(), orders);
}

ModuleMap::ModuleMap(FgModule source, FgModule target, const ExactMatrix& matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(matrix.ring()) {
  require_same_ring(source_.ring(), target_.ring(), "ModuleMap");
  require_same_ring(source_.ring(), matrix.ring(), "ModuleMap");
  if (matrix.rows() != target_.num_generators() || matrix.cols() != source_.num_generators()) {
    throw ShapeError("ModuleMap: matrix is " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + ", expected " +
                     std::to_string(target_.num_generators()) + "x" +
                     std::to_string(source_.num_generators()));
  }
  const auto& ring = source_.ring();
  matrix_ = ExactMatrix(ring, matrix.rows(), matrix.cols());
  for (std::size_t j = 0; j < matrix.rows(); ++j) {
    const mpz_class e = target_.generator_order(j);
    for (std::size_t i = 0; i < matrix.cols(); ++i) {
      const Scalar& x = matrix.at(j, i);
      if (sgn(x) == 0) continue;
      if (e != 0) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), e.get_mpz_t());
        if (r != 0) matrix_.set(j, i, Scalar(r));
      } else {
        matrix_.set(j, i, x);
      }
    }
  }
  for (std::size_t i = 0; i < source_.torsion_count(); ++i) {
    const mpz_class d = source_.generator_order(i);
    for (std::size_t j = 0; j < matrix_.rows(); ++j) {
      const mpz_class e = target_.generator_order(j);
      const mpz_class& x = matrix_.at(j, i).get_num();
      bool ok = (e == 0) ? (x == 0) : mpz_divisible_p(mpz_class(d * x).get_mpz_t(), e.get_mpz_t()) != 0;
      if (!ok) {
        throw ValidationError("ModuleMap: generator " + std::to_string(i) + " of order " +
                              d.get_str() + " is not sent to an element killed by " + d.get_str());
      }
    }
  }
}

ModuleMap ModuleMap::identity(const FgModule& m) {
  return ModuleMap(m, m, ExactMatrix::identity(m.ring(), m.num_generators()));
}

ModuleMap ModuleMap::zero(const FgModule& source, const FgModule& target) {
  return ModuleMap(source, target,
                   ExactMatrix(source.ring(), target.num_generators(), source.num_generators()));
}

ModuleMap operator*(const ModuleMap& g, const ModuleMap& f) {
  if (g.source_ != f.target_) throw ShapeError("ModuleMap composition: modules do not match");
  return ModuleMap(f.source_, g.target_, g.matrix_ * f.matrix_);
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) {
    throw ShapeError("ModuleMap sum: modules do not match");
  }
  return ModuleMap(a.source_, a.target_, a.matrix_ + b.matrix_);
}

ModuleMap operator-(const ModuleMap& a) { return ModuleMap(a.source_, a.target_, -a.matrix_); }

std::string ModuleMap::to_string() const {
  return source_.to_string() + " -> " + target_.to_string() + " " + matrix_.to_string();
}

namespace {

// Generators of {x : F x ∈ span(rel)} inside the source ambient space.
ExactMatrix preimage_of_relations(const ExactMatrix& f, const ExactMatrix& rel) {
  ExactMatrix k = kernel_basis(hstack(f, rel));
  return k.row_range(0, f.cols());
}

}  // namespace

MapAnalysis module_map_analysis(const ModuleMap& f) {
  const ExactMatrix& fm = f.matrix();
  const ExactMatrix rel_src = f.source().relation_matrix();
  const ExactMatrix rel_tgt = f.target().relation_matrix();
  const ExactMatrix spanned = hstack(fm, rel_tgt);

  MapAnalysis out{FgModule(f.source().ring()), FgModule(f.source().ring()),
                  FgModule(f.source().ring()), false};
  out.kernel = Subquotient::from_generators(preimage_of_relations(fm, rel_tgt), rel_src).module();
  out.image = Subquotient::from_generators(spanned, rel_tgt).module();
  out.cokernel = cokernel_presentation(spanned);
  out.is_iso = out.kernel.is_zero() && out.cokernel.is_zero();
  return out;
}

bool is_exact_at(const ModuleMap& f, const ModuleMap& g) {
  if (f.target() != g.source()) throw ShapeError("is_exact_at: maps are not composable");
  if (!(g * f).is_zero()) return false;
  ExactMatrix ker_gens = preimage_of_relations(g.matrix(), g.target().relation_matrix());
  if (ker_gens.cols() == 0) return true;
  auto sol = solve_matrix(hstack(f.matrix(), f.target().relation_matrix()), ker_gens);
  return sol.has_value();
}

FgModule hom_module(const FgModule& m, const FgModule& n) {
  require_same_ring(m.ring(), n.ring(), "hom_module");
  std::size_t free_rank = 0;
  std::vector<mpz_class> orders;
  for (std::size_t i = 0; i < m.num_generators(); ++i) {
    const mpz_class d = m.generator_order(i);
    for (std::size_t j = 0; j < n.num_generators(); ++j) {
      const mpz_class e = n.generator_order(j);
      if (d == 0 && e == 0) {
        ++free_rank;
      } else if (d == 0) {
        orders.push_back(e);
      } else if (e != 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
        orders.push_back(g);
      }
    }
  }
  return FgModule::from_orders(m.ring(), free_rank, orders);
}

}  // namespace chainlab
