#include <benchmark/benchmark.h>

#include "torsionlab/numerics.hpp"
#include "torsionlab/rs_torsion.hpp"
#include "torsionlab/spaces.hpp"
#include "torsionlab/spectral.hpp"

namespace {

using namespace torsionlab;

void BM_LensTorsion(benchmark::State& state) {
  ChainComplex c = lens_complex(lens_model(7, 2, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion_def(c).log_tau);
  }
}
BENCHMARK(BM_LensTorsion);

void BM_TwistedCircleTorsion(benchmark::State& state) {
  auto [k, rho] = circle_model(3, 2.0 * 3.14159265358979323846 / 7.0);
  for (long i = 0; i < state.range(0); ++i) {
    std::tie(k, rho) = barycentric_subdivide(k, rho);
  }
  ChainComplex twisted = twist(k, rho, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion_def(twisted).log_tau);
  }
}
BENCHMARK(BM_TwistedCircleTorsion)->Arg(0)->Arg(2)->Arg(4);

void BM_Subdivide(benchmark::State& state) {
  auto [k, rho] = circle_model(3, 1.0);
  for (auto _ : state) {
    auto next = barycentric_subdivide(k, rho);
    benchmark::DoNotOptimize(next.first.vertices.size());
  }
}
BENCHMARK(BM_Subdivide);

void BM_ZetaPrimeZero(benchmark::State& state) {
  GradedSpectrum s = circle_spectrum(1.0, 2.0 * 3.14159265358979323846 / 7.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta_prime_zero(s[1]).value);
  }
}
BENCHMARK(BM_ZetaPrimeZero);

void BM_HurwitzZeta(benchmark::State& state) {
  double s = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::hurwitz_zeta(s, 0.3).value);
  }
}
BENCHMARK(BM_HurwitzZeta);

void BM_HurwitzZetaExtended(benchmark::State& state) {
  double s = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        numerics::hurwitz_zeta(s, 0.3, Precision::kExtended).value);
  }
}
BENCHMARK(BM_HurwitzZetaExtended);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
