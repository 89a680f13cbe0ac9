#include "chainlab/document.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace chainlab {

DocumentError::DocumentError(int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
            message),
      line_(line),
      column_(column),
      detail_(message) {}

const ChainComplex& Document::complex(const std::string& name) const {
  for (const auto& c : complexes)
    if (c.name == name) return c.complex;
  throw std::invalid_argument("no complex named '" + name + "'");
}

const ChainMap& Document::map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.name == name) return m.map;
  throw std::invalid_argument("no map named '" + name + "'");
}

const ChainComplex& Document::first_complex() const {
  if (complexes.empty()) throw std::invalid_argument("document contains no complex");
  return complexes.front().complex;
}

const ChainMap& Document::first_map() const {
  if (maps.empty()) throw std::invalid_argument("document contains no map");
  return maps.front().map;
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Words up to the first '[' (which starts a matrix running to end of line).
std::vector<Token> tokenize(const std::string& line, std::optional<Token>& matrix) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    if (line[i] == '[') {
      std::size_t end = line.find('#', i);
      std::string body = line.substr(i, end == std::string::npos ? std::string::npos : end - i);
      while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
      matrix = Token{body, static_cast<int>(i) + 1};
      break;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#' && line[j] != '[')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(const Token& t, int line, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw DocumentError(line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
  return v;
}

struct RawMatrix {
  std::vector<std::vector<Scalar>> rows;
  int line, column;
};

RawMatrix parse_matrix(const Token& t, int line, const CoefficientRing& ring) {
  RawMatrix m{{}, line, t.column};
  const std::string& s = t.text;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw DocumentError(line, t.column + static_cast<int>(i), msg); };
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  expect('[');
  skip();
  if (i < s.size() && s[i] == ']') {
    ++i;
  } else {
    while (true) {
      expect('[');
      std::vector<Scalar> row;
      skip();
      if (i < s.size() && s[i] == ']') {
        ++i;
      } else {
        while (true) {
          skip();
          std::size_t start = i;
          while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' || s[i] == '+' ||
                                  s[i] == '/'))
            ++i;
          std::string num = s.substr(start, i - start);
          if (!num.empty() && num[0] == '+') num.erase(0, 1);
          Scalar v;
          bool ok = !num.empty() && v.set_str(num, 10) == 0;
          if (ok && num.find('/') != std::string::npos && v.get_den() == 0) ok = false;
          if (!ok) {
            i = start;
            fail("bad matrix entry '" + s.substr(start, std::max<std::size_t>(1, num.size())) + "'");
          }
          v.canonicalize();
          if (ring.kind() == RingKind::Integers && v.get_den() != 1) {
            i = start;
            fail("non-integral entry over Z");
          }
          row.push_back(v);
          skip();
          if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
          }
          expect(']');
          break;
        }
      }
      m.rows.push_back(std::move(row));
      skip();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip();
  if (i != s.size()) fail("trailing characters after matrix");
  return m;
}

ExactMatrix to_matrix(const RawMatrix& raw, const CoefficientRing& ring, std::size_t rows, std::size_t cols,
                      const std::string& what) {
  auto shape_error = [&](const std::string& got) {
    return DocumentError(raw.line, raw.column,
                         what + " is " + got + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  };
  if (raw.rows.empty()) {
    if (rows != 0 && cols != 0) throw shape_error("empty");
    return ExactMatrix(ring, rows, cols);
  }
  for (const auto& r : raw.rows)
    if (r.size() != raw.rows.front().size()) throw DocumentError(raw.line, raw.column, "ragged matrix rows");
  const std::size_t got_r = raw.rows.size(), got_c = raw.rows.front().size();
  // [[]] style rows without columns
  if (got_c == 0 && cols == 0 && got_r == rows) return ExactMatrix(ring, rows, cols);
  if (got_r != rows || got_c != cols) throw shape_error(std::to_string(got_r) + "x" + std::to_string(got_c));
  ExactMatrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, raw.rows[i][j]);
  return m;
}

struct PendingComplex {
  std::string name;
  int line;
  std::map<int, std::pair<std::size_t, int>> ranks;  // degree -> (rank, line)
  std::map<int, RawMatrix> diffs;
};

struct PendingMap {
  std::string name, source, target;
  int line;
  std::map<int, RawMatrix> comps;
};

ChainComplex build(const PendingComplex& p, const CoefficientRing& ring) {
  auto rank = [&](int n) -> std::size_t {
    auto it = p.ranks.find(n);
    return it == p.ranks.end() ? 0 : it->second.first;
  };
  std::map<int, ExactMatrix> diffs;
  for (const auto& [n, raw] : p.diffs)
    diffs.emplace(n, to_matrix(raw, ring, rank(n + 1), rank(n), "d " + std::to_string(n)));
  if (p.ranks.empty()) {
    for (const auto& [n, d] : diffs)
      if (!d.empty()) throw DocumentError(p.diffs.at(n).line, 0, "differential without ranks");
    return ChainComplex(ring);
  }
  const int lo = p.ranks.begin()->first, hi = p.ranks.rbegin()->first;
  std::vector<std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks.push_back(rank(n));
  std::map<int, ExactMatrix> kept;
  for (auto& [n, d] : diffs)
    if (!d.empty()) kept.emplace(n, d);
  ChainComplex c(ring, lo, ranks, kept);
  auto report = validate(c);
  if (!report.ok) {
    int n = report.degree.value_or(0);
    auto it = p.diffs.find(n + 1);
    int line = it != p.diffs.end() ? it->second.line : p.line;
    throw DocumentError(line, 0,
                        "d(" + std::to_string(n + 1) + ") d(" + std::to_string(n) + ") != 0 at degree " +
                            std::to_string(n) + " in complex '" + p.name + "'");
  }
  return c;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '.')) return false;
  return true;
}

}  // namespace

Document parse_document(std::string_view text, const CoefficientRing& default_ring) {
  Document doc;
  doc.ring = default_ring;
  bool ring_seen = false, content_seen = false;
  std::optional<PendingComplex> cx;
  std::optional<PendingMap> mp;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::optional<Token> matrix;
    auto toks = tokenize(raw, matrix);
    if (toks.empty()) {
      if (matrix) throw DocumentError(line, matrix->column, "matrix without a statement");
      continue;
    }
    const std::string& kw = toks[0].text;
    auto arity = [&](std::size_t n, bool with_matrix) {
      if (toks.size() != n || matrix.has_value() != with_matrix) {
        int col = toks.size() > n ? toks[n].column : (matrix && !with_matrix ? matrix->column : 0);
        throw DocumentError(line, col, "malformed '" + kw + "' statement");
      }
    };

    if (kw == "ring") {
      arity(2, false);
      if (ring_seen) throw DocumentError(line, toks[0].column, "ring given twice");
      if (content_seen) throw DocumentError(line, toks[0].column, "ring must come before any complex");
      try {
        doc.ring = CoefficientRing::parse(toks[1].text);
      } catch (const std::exception& e) {
        throw DocumentError(line, toks[1].column, e.what());
      }
      ring_seen = true;
    } else if (kw == "complex") {
      if (cx || mp) throw DocumentError(line, toks[0].column, "missing 'end' before 'complex'");
      if (toks.size() > 2 || matrix) throw DocumentError(line, 0, "malformed 'complex' statement");
      std::string name = toks.size() == 2 ? toks[1].text : "X";
      if (!valid_name(name)) throw DocumentError(line, toks[1].column, "bad name '" + name + "'");
      for (const auto& c : doc.complexes)
        if (c.name == name) throw DocumentError(line, toks.size() == 2 ? toks[1].column : 0, "duplicate name '" + name + "'");
      cx = PendingComplex{name, line, {}, {}};
      content_seen = true;
    } else if (kw == "rank") {
      if (!cx) throw DocumentError(line, toks[0].column, "'rank' outside a complex");
      arity(3, false);
      int n = parse_int(toks[1], line, "a degree");
      int r = parse_int(toks[2], line, "a rank");
      if (r < 0) throw DocumentError(line, toks[2].column, "negative rank");
      if (!cx->ranks.emplace(n, std::make_pair(static_cast<std::size_t>(r), line)).second)
        throw DocumentError(line, toks[1].column, "rank of degree " + std::to_string(n) + " given twice");
    } else if (kw == "d") {
      if (!cx) throw DocumentError(line, toks[0].column, "'d' outside a complex");
      arity(2, true);
      int n = parse_int(toks[1], line, "a degree");
      if (!cx->diffs.emplace(n, parse_matrix(*matrix, line, doc.ring)).second)
        throw DocumentError(line, toks[1].column, "d " + std::to_string(n) + " given twice");
    } else if (kw == "map") {
      if (cx || mp) throw DocumentError(line, toks[0].column, "missing 'end' before 'map'");
      if (toks.size() != 5 || toks[3].text != "->" || matrix)
        throw DocumentError(line, 0, "expected 'map NAME SOURCE -> TARGET'");
      if (!valid_name(toks[1].text)) throw DocumentError(line, toks[1].column, "bad name '" + toks[1].text + "'");
      for (const auto& m : doc.maps)
        if (m.name == toks[1].text) throw DocumentError(line, toks[1].column, "duplicate name '" + toks[1].text + "'");
      mp = PendingMap{toks[1].text, toks[2].text, toks[4].text, line, {}};
      for (int k : {2, 4}) {
        bool found = false;
        for (const auto& c : doc.complexes) found = found || c.name == toks[k].text;
        if (!found) throw DocumentError(line, toks[k].column, "unknown complex '" + toks[k].text + "'");
      }
      content_seen = true;
    } else if (kw == "f") {
      if (!mp) throw DocumentError(line, toks[0].column, "'f' outside a map");
      arity(2, true);
      int n = parse_int(toks[1], line, "a degree");
      if (!mp->comps.emplace(n, parse_matrix(*matrix, line, doc.ring)).second)
        throw DocumentError(line, toks[1].column, "component " + std::to_string(n) + " given twice");
    } else if (kw == "end") {
      arity(1, false);
      if (cx) {
        doc.complexes.push_back({cx->name, build(*cx, doc.ring)});
        cx.reset();
      } else if (mp) {
        const auto& src = doc.complex(mp->source);
        const auto& tgt = doc.complex(mp->target);
        std::map<int, ExactMatrix> comps;
        for (const auto& [n, rm] : mp->comps)
          comps.emplace(n, to_matrix(rm, doc.ring, tgt.rank(n), src.rank(n), "f " + std::to_string(n)));
        ChainMap f(src, tgt, comps);
        auto report = validate(f);
        if (!report.ok)
          throw DocumentError(mp->line, 0,
                              "map '" + mp->name + "' is not a chain map at degree " +
                                  std::to_string(report.degree.value_or(0)));
        doc.maps.push_back({mp->name, mp->source, mp->target, f});
        mp.reset();
      } else {
        throw DocumentError(line, toks[0].column, "'end' without an open block");
      }
    } else {
      throw DocumentError(line, toks[0].column, "unknown statement '" + kw + "'");
    }
  }
  if (cx) throw DocumentError(cx->line, 0, "complex '" + cx->name + "' is missing 'end'");
  if (mp) throw DocumentError(mp->line, 0, "map '" + mp->name + "' is missing 'end'");
  return doc;
}

ChainComplex parse_complex(std::string_view text, const CoefficientRing& default_ring) {
  Document doc = parse_document(text, default_ring);
  if (doc.complexes.size() != 1)
    throw DocumentError(1, 0, "expected exactly one complex, found " + std::to_string(doc.complexes.size()));
  return doc.complexes.front().complex;
}

namespace {

void render_block(std::ostringstream& out, const ChainComplex& c, const std::string& name) {
  out << "complex " << name << '\n';
  if (!c.is_zero()) {
    for (int n = c.lo(); n <= c.hi(); ++n) out << "  rank " << n << ' ' << c.rank(n) << '\n';
    for (int n = c.lo(); n < c.hi(); ++n) {
      auto d = c.diff(n);
      if (!d.is_zero()) out << "  d " << n << ' ' << d.to_string() << '\n';
    }
  }
  out << "end\n";
}

}  // namespace

std::string render(const ChainComplex& c, const std::string& name) {
  std::ostringstream out;
  out << "ring " << c.ring().name() << '\n';
  render_block(out, c, name);
  return out.str();
}

std::string render(const NamedMap& m) {
  std::ostringstream out;
  out << "map " << m.name << ' ' << m.source << " -> " << m.target << '\n';
  for (int n = m.map.lo(); n <= m.map.hi(); ++n) {
    auto f = m.map.component(n);
    if (!f.is_zero()) out << "  f " << n << ' ' << f.to_string() << '\n';
  }
  out << "end\n";
  return out.str();
}

std::string render(const Document& doc) {
  std::ostringstream out;
  out << "ring " << doc.ring.name() << '\n';
  for (const auto& c : doc.complexes) render_block(out, c.complex, c.name);
  for (const auto& m : doc.maps) out << render(m);
  return out.str();
}

}  // namespace chainlab
