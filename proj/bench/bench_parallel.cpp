// OpenMP kernels against their serial references.

#include "skin/materials.hpp"
#include "skin/params.hpp"
#include "skin/permittivity.hpp"
#include "skin/profile.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = a + (b - a) * i / (n - 1);
  return v;
}

const skin::PlasmaParams& params() {
  static const auto p = skin::from_dimensionless(1e-2, 1e-4, skin::MaterialTable::builtin().find("na"));
  return p;
}

void BM_profile_serial(benchmark::State& st) {
  const auto xs = linspace(0.0, 2e-4, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(skin::profile_reference(xs, params(), skin::Method::rescaled));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_profile_openmp(benchmark::State& st) {
  const auto xs = linspace(0.0, 2e-4, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(skin::profile(xs, params(), skin::Method::rescaled));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_derivative_serial(benchmark::State& st) {
  const auto qs = linspace(0.02, 0.2, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(skin::derivative_magnitudes_reference(qs, 0.1, 1e-4));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_derivative_openmp(benchmark::State& st) {
  const auto qs = linspace(0.02, 0.2, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(skin::derivative_magnitudes(qs, 0.1, 1e-4));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

} // namespace

BENCHMARK(BM_profile_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_profile_openmp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_derivative_serial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_derivative_openmp)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
