// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "gravdirac/eigensolver.hpp"
#include "gravdirac/radial_operator.hpp"
#include "gravdirac/spacetime.hpp"

using namespace gravdirac;

namespace {

struct Fixture {
  TortoiseMap map;
  DiracGrid grid;
  CoefficientFn fn;
  Tridiag T;

  Fixture()
      : map(TortoiseMap::build(SpacetimeProfile::build(VacuumLaw::maxwell(), hydrogen(), PhysicalConstants{}))) {
    GridOptions go;
    go.nodes = 100000;
    grid = make_grid(go);
    RadialOperatorSpec s;
    fn = operator_coefficients(s, map);
    T = assemble(tabulate_coefficients(fn, grid), grid, s.theta);
  }

  static NucleusParams hydrogen() {
    NucleusParams n;
    n.Z = 1;
    n.N = 0;
    return n;
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Bisection(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(eigenvalues_in(f.T, 0.0, 0.9999, 16));
}

void BM_BisectionSerial(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(eigenvalues_in_serial(f.T, 0.0, 0.9999, 16));
}

void BM_Coefficients(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(tabulate_coefficients(f.fn, f.grid));
}

void BM_CoefficientsSerial(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(tabulate_coefficients_serial(f.fn, f.grid));
}

void BM_Fields(benchmark::State& st) {
  const FieldIntegrals fi(VacuumLaw::born(), Fixture::hydrogen().charge(PhysicalConstants{}));
  for (auto _ : st) benchmark::DoNotOptimize(tabulate_fields(fi, 400, 1e-8, 1e8));
}

void BM_FieldsSerial(benchmark::State& st) {
  const FieldIntegrals fi(VacuumLaw::born(), Fixture::hydrogen().charge(PhysicalConstants{}));
  for (auto _ : st) benchmark::DoNotOptimize(tabulate_fields_serial(fi, 400, 1e-8, 1e8));
}

}  // namespace

BENCHMARK(BM_Bisection)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BisectionSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Coefficients)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CoefficientsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Fields)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FieldsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
