#include <benchmark/benchmark.h>

#include "cltlab/approx.hpp"
#include "cltlab/binomial.hpp"
#include "cltlab/decompose.hpp"
#include "cltlab/dml.hpp"
#include "cltlab/finite_dist.hpp"
#include "cltlab/lattice.hpp"
#include "cltlab/normal.hpp"

namespace {

using namespace cltlab;

FiniteDist three_atom() {
  return standardize(make_dist({{Rational(2), Rational(BigInt(1), BigInt(4))},
                                {Rational(0), Rational(BigInt(1), BigInt(4))},
                                {Rational(-1), Rational(BigInt(1), BigInt(2))}}));
}

void BM_LatticePower(benchmark::State& state) {
  const FiniteDist d = three_atom();
  for (auto _ : state) benchmark::DoNotOptimize(convolve_power_lattice(d, state.range(0)));
}
BENCHMARK(BM_LatticePower)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMillisecond);

void BM_ExactPower(benchmark::State& state) {
  const FiniteDist d = three_atom();
  for (auto _ : state) benchmark::DoNotOptimize(convolve_power_exact(d, state.range(0)));
}
BENCHMARK(BM_ExactPower)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  std::vector<Atom> atoms;
  const long k = state.range(0);
  for (long i = 0; i < k; ++i) atoms.push_back({Rational(i), Rational(BigInt(1), BigInt(k))});
  const FiniteDist d = make_dist(std::move(atoms));
  const FiniteDist centered = make_dist([&] {
    std::vector<Atom> c;
    for (const auto& a : d.atoms()) c.push_back({a.value - mean(d), a.prob});
    return c;
  }());
  for (auto _ : state) benchmark::DoNotOptimize(decompose(centered));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(4)->Range(4, 256);

void BM_Phi(benchmark::State& state) {
  double x = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(x));
    x = x > 6.0 ? -6.0 : x + 0.001;
  }
}
BENCHMARK(BM_Phi);

void BM_DmlKolmogorov(benchmark::State& state) {
  const BinomialSpec spec = BinomialSpec::make(state.range(0), Rational(BigInt(3), BigInt(10)));
  for (auto _ : state) benchmark::DoNotOptimize(dml_kolmogorov(spec));
}
BENCHMARK(BM_DmlKolmogorov)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMillisecond);

void BM_Quantize(benchmark::State& state) {
  const ContinuousSource src = ContinuousSource::from_name("exp");
  for (auto _ : state) benchmark::DoNotOptimize(quantize(src, 1e-3));
}
BENCHMARK(BM_Quantize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
