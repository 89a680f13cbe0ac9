#include <benchmark/benchmark.h>

#include "chainlab/homotopy.hpp"
#include "chainlab/linalg.hpp"
#include "chainlab/random.hpp"

using namespace chainlab;

namespace {

ExactMatrix random_matrix(Rng& rng, std::size_t n, long bound) {
  ExactMatrix m(CoefficientRing::integers(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Scalar(rng.uniform(-bound, bound)));
  return m;
}

RandomProfile sized(std::size_t rank) {
  RandomProfile p;
  p.max_rank = rank;
  p.max_spheres = rank / 2 + 1;
  p.max_disks = rank / 2 + 1;
  p.max_torsion_disks = 1;
  return p;
}

void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(1);
  auto m = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Cohomology(benchmark::State& state) {
  auto p = sized(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 7;
  auto c = random_complex(seed, CoefficientRing::integers(), p).complex;
  while (c.total_rank() < static_cast<std::size_t>(state.range(0))) c = random_complex(++seed, CoefficientRing::integers(), p).complex;
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_all(c));
}
BENCHMARK(BM_Cohomology)->Arg(2)->Arg(4)->Arg(8);

void BM_CertifyCone(benchmark::State& state) {
  Rng rng(3);
  auto p = sized(static_cast<std::size_t>(state.range(0)));
  auto x = random_cell_complex(rng, CoefficientRing::integers(), p);
  auto y = random_cell_complex(rng, CoefficientRing::integers(), p);
  auto t = rotate(cone_triangle(random_chain_map(rng, x, y)));
  for (auto _ : state) benchmark::DoNotOptimize(certify_exact(t));
}
BENCHMARK(BM_CertifyCone)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
