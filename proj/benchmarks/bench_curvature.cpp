#include <benchmark/benchmark.h>

#include "flagcurv/flag.hpp"
#include "flagcurv/standard_algebras.hpp"

using namespace flagcurv;

namespace {

Matrix berger_phi(int n) {
  Matrix phi = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) phi(i, i) = 1.0 + 0.25 * i;
  return phi;
}

LieAlgebra algebra_for(int which) { return which == 0 ? standard::u2() : standard::su2xsu2(); }

RandersStructure u2_randers() {
  return RandersStructure(HomogeneousSpace(standard::u2(), MetricStructure::identity(4)), 0.5 * Vector::Unit(4, 3));
}

}  // namespace

// connection + curvature tensor + validation for a left-invariant metric
static void BM_SpaceAssembly(benchmark::State& state) {
  const LieAlgebra alg = algebra_for(static_cast<int>(state.range(0)));
  const int n = alg.dim();
  const MetricStructure m = MetricStructure::from_phi(Matrix::Identity(n, n), berger_phi(n));
  for (auto _ : state) {
    HomogeneousSpace s(alg, m);
    benchmark::DoNotOptimize(s.curvature_tensor().max_abs());
  }
  state.SetLabel(n == 4 ? "u2" : "su2xsu2");
}
BENCHMARK(BM_SpaceAssembly)->Arg(0)->Arg(1);

static void BM_FlagOracle(benchmark::State& state) {
  const RandersStructure r = u2_randers();
  const std::vector<Flag> flags = sample_flags(r.space(), 256, 1);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flag_curvature_oracle(r, flags[i++ % flags.size()]));
  }
}
BENCHMARK(BM_FlagOracle);

static void BM_FlagReport(benchmark::State& state) {
  const RandersStructure r = u2_randers();
  const std::vector<Flag> flags = sample_flags(r.space(), 256, 1);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flag_curvature_printed(r, flags[i++ % flags.size()]).k_corrected);
  }
}
BENCHMARK(BM_FlagReport);

static void BM_Scan(benchmark::State& state) {
  const RandersStructure r = u2_randers();
  const int n = static_cast<int>(state.range(0));
  const unsigned threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_flags(r, n, 7, threads).mean);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Scan)->Args({1000, 1})->Args({1000, 4})->Args({10000, 4})->Unit(benchmark::kMillisecond);

static void BM_FundamentalTensor(benchmark::State& state) {
  const RandersStructure r = u2_randers();
  const Vector y = Vector::Ones(4), u = Vector::Unit(4, 1), v = Vector::Unit(4, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(r.fundamental_tensor_closed(y, u, v));
    benchmark::DoNotOptimize(r.fundamental_tensor_fd(y, u, v));
  }
}
BENCHMARK(BM_FundamentalTensor);
BENCHMARK_MAIN();
