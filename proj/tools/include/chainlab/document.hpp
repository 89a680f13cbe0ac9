#pragma once

// Text format for complexes and chain maps.
//
//   # comment
//   ring Z                       Z, Q or F<p>; optional, defaults to the caller's ring
//   complex X                    name optional for a lone complex
//     rank 0 1                   rank DEG RANK
//     rank 1 1
//     d 0 [[2]]                  d DEG MATRIX, rows of length rank(DEG)
//   end
//   map f X -> Y
//     f 0 [[1]]                  component DEG MATRIX
//   end
//
// Matrix entries are integers or a/b; [] is a matrix with no entries.
// Differentials and components that are not listed are zero.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainlab/complex.hpp"
#include "chainlab/error.hpp"

namespace chainlab {

/// Syntax, shape or validation problem in a document. line/column are
/// 1-based; column 0 means the whole line.
class DocumentError : public Error {
 public:
  DocumentError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_, column_;
  std::string detail_;
};

struct NamedComplex {
  std::string name;
  ChainComplex complex;
};

struct NamedMap {
  std::string name;
  std::string source, target;
  ChainMap map;
};

struct Document {
  CoefficientRing ring = CoefficientRing::integers();
  std::vector<NamedComplex> complexes;
  std::vector<NamedMap> maps;

  /// Throws std::invalid_argument for an unknown name.
  const ChainComplex& complex(const std::string& name) const;
  const ChainMap& map(const std::string& name) const;
  /// The only (or first) complex / map; throws std::invalid_argument if none.
  const ChainComplex& first_complex() const;
  const ChainMap& first_map() const;
};

/// Parses and validates (d² = 0, chain-map squares) a document.
Document parse_document(std::string_view text,
                        const CoefficientRing& default_ring = CoefficientRing::integers());
/// A document holding exactly one complex.
ChainComplex parse_complex(std::string_view text,
                           const CoefficientRing& default_ring = CoefficientRing::integers());

std::string render(const ChainComplex& c, const std::string& name = "X");
/// Map block only; the complexes must be rendered separately.
std::string render(const NamedMap& m);
std::string render(const Document& doc);

}  // namespace chainlab
