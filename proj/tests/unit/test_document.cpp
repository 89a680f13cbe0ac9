#include <doctest.h>

#include "chainlab/document.hpp"
#include "chainlab/random.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;

TEST_CASE("canonical two-term document") {
  auto c = parse_complex(
      "# [Z -2-> Z]\n"
      "ring Z\n"
      "complex X\n"
      "  rank 0 1\n"
      "  rank 1 1\n"
      "  d 0 [[2]]\n"
      "end\n");
  CHECK(c == disk(ZZ, 2, 0));
  CHECK(cohomology(c, 1) == FgModule::cyclic(ZZ, 2));
}

TEST_CASE("empty and default documents") {
  CHECK(parse_complex("complex\nend\n").is_zero());
  auto doc = parse_document("", QQ);
  CHECK(doc.complexes.empty());
  CHECK(doc.ring == QQ);
  CHECK(parse_complex("complex A\n rank 0 2\nend", QQ) == sphere(QQ, 0, 2));
  CHECK(parse_complex("complex A\n rank 0 1\n rank 1 1\n d 0 [[2]]\nend", CoefficientRing::prime_field(2)) ==
        ChainComplex(CoefficientRing::prime_field(2), 0, {1, 1}));
}

TEST_CASE("d squared is checked on load") {
  const char* text =
      "complex X\n"
      "  rank 0 1\n"
      "  rank 1 1\n"
      "  rank 2 1\n"
      "  d 0 [[1]]\n"
      "  d 1 [[1]]\n"
      "end\n";
  try {
    parse_document(text);
    FAIL("expected an error");
  } catch (const DocumentError& e) {
    CHECK(std::string(e.what()).find("degree 0") != std::string::npos);
    CHECK(e.line() == 6);
  }
}

TEST_CASE("syntax errors carry positions") {
  auto position = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_document(text);
    } catch (const DocumentError& e) {
      return {e.line(), e.column()};
    }
    return {-1, -1};
  };
  CHECK(position("complex X\n  rank 0 x\nend\n") == std::pair{2, 10});
  CHECK(position("complex X\n  rank 0 1\n  rank 1 1\n  d 0 [[2,]]\nend\n") == std::pair{4, 11});
  CHECK(position("ring R\n") == std::pair{1, 6});
  CHECK(position("complex X\n  rank 0 1\n  rank 1 1\n  d 0 [[1,2]]\nend\n").first == 4);
  CHECK(position("complex X\n  rank 0 1\n").first == 1);
  CHECK(position("banana\n") == std::pair{1, 1});
  CHECK(position("complex X\nend\nmap f X -> Y\nend\n") == std::pair{3, 12});
  CHECK(position("complex X\n rank 0 1\n rank 1 1\n d 0 [[1/2]]\nend\n").first == 4);
  CHECK(position("end\n") == std::pair{1, 1});
}

TEST_CASE("rational and residue entries") {
  auto q = parse_complex("ring Q\ncomplex X\n rank 0 2\n rank 1 1\n d 0 [[1/2, -3/4]]\nend\n");
  CHECK(q.diff(0).at(0, 0) == Scalar(1, 2));
  auto f5 = parse_complex("ring F5\ncomplex X\n rank 0 1\n rank 1 1\n d 0 [[7]]\nend\n");
  CHECK(f5.diff(0).at(0, 0) == 2);
}

TEST_CASE("maps") {
  auto doc = parse_document(
      "complex X\n rank 0 1\nend\n"
      "complex Y\n rank -1 1\n rank 0 1\n d -1 [[2]]\nend\n"
      "map f X -> Y\n f 0 [[3]]\nend\n");
  CHECK(doc.map("f").component(0) == one_by_one(ZZ, 3));
  CHECK_THROWS_AS(doc.map("g"), std::invalid_argument);
  // X -> Y with d f != f d
  CHECK_THROWS_AS(parse_document("complex X\n rank 0 1\nend\n"
                                 "complex Y\n rank 0 1\n rank 1 1\n d 0 [[1]]\nend\n"
                                 "map f X -> Y\n f 0 [[1]]\nend\n"),
                  DocumentError);
}

TEST_CASE("render round trip") {
  RandomProfile p;
  p.max_torsion_disks = 2;
  for (const auto& ring : {ZZ, QQ, CoefficientRing::prime_field(3)}) {
    if (ring.is_field()) p.max_torsion_disks = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto c = random_complex(seed, ring, p).complex;
      auto text = render(c, "C");
      CHECK(parse_complex(text) == c);
      CHECK(render(parse_complex(text), "C") == text);
    }
  }
  Rng rng(5);
  auto x = random_cell_complex(rng, ZZ, RandomProfile{});
  auto y = random_cell_complex(rng, ZZ, RandomProfile{});
  Document doc;
  doc.complexes = {{"X", x.complex}, {"Y", y.complex}};
  doc.maps = {{"f", "X", "Y", random_chain_map(rng, x, y)}};
  auto back = parse_document(render(doc));
  CHECK(back.map("f") == doc.maps[0].map);
  CHECK(render(back) == render(doc));
  CHECK(render(ChainComplex(QQ)) == "ring Q\ncomplex X\nend\n");
}
