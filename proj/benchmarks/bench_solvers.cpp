#include <benchmark/benchmark.h>

#include "riccati/io.hpp"
#include "riccati/sdare_solvers.hpp"

namespace {

using riccati::Index;
using riccati::Matrix;

riccati::SdareGram make_gram(Index n, Index m, Index r, std::uint64_t seed) {
  const riccati::InstanceFile file = riccati::gen_instance("sdare", n, m, r, seed);
  return riccati::gram_form(riccati::reduce_sdare(file.to_sdare()));
}

void bm_ltimes(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix a = Matrix::Random(2 * n, n);
  const Matrix b = Matrix::Random(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::ltimes(a, b));
  }
}
BENCHMARK(bm_ltimes)->Arg(8)->Arg(32)->Arg(128);

void bm_fixed_point(benchmark::State& state) {
  const auto gram = make_gram(state.range(0), 2, 2, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::fixed_point_solve(gram, 1e-10, 20000));
  }
}
BENCHMARK(bm_fixed_point)->Arg(2)->Arg(4)->Arg(6);

void bm_doubling(benchmark::State& state) {
  const auto gram = make_gram(state.range(0), 2, 2, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::doubling_solve(gram, 1e-10, 4096));
  }
}
BENCHMARK(bm_doubling)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
