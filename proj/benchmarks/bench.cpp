#include <benchmark/benchmark.h>

#include "hypspec/assembly2d.hpp"
#include "hypspec/domains.hpp"
#include "hypspec/sturm_liouville.hpp"

namespace {

void BM_SturmLiouville(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  hypspec::SLProblem prob;
  prob.p = [](double) { return 1.0; };
  prob.q = [](double) { return 0.0; };
  prob.w = [](double) { return 1.0; };
  prob.a = 0.0;
  prob.b = 1.0;
  for (auto _ : state) {
    auto sol = hypspec::sl_eigs(prob, 4, grid);
    benchmark::DoNotOptimize(sol.eigenvalues);
  }
}
BENCHMARK(BM_SturmLiouville)->Arg(512)->Arg(2048)->Arg(8192);

void BM_Assemble2d(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  auto dom = hypspec::make_wedge(1.0, 1.0471975511965976, 2.0943951023931953,
                                 hypspec::tensor_sin_theta());
  auto chart = hypspec::conformal_chart(dom);
  auto tensor = hypspec::tensor_sin_theta();
  auto drift = hypspec::constant_drift();
  for (auto _ : state) {
    auto pencil = hypspec::assemble(chart, tensor, drift, g, g);
    benchmark::DoNotOptimize(pencil.Mdiag);
  }
}
BENCHMARK(BM_Assemble2d)->Arg(32)->Arg(64)->Arg(128);

void BM_Spectrum2d(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  auto dom = hypspec::make_rectangle(0, 1, 0, 1, hypspec::Model::euclidean());
  auto chart = hypspec::conformal_chart(dom);
  auto tensor = hypspec::tensor_const(1.0);
  auto drift = hypspec::constant_drift();
  auto pencil = hypspec::assemble(chart, tensor, drift, g, g);
  for (auto _ : state) {
    auto spec = hypspec::spectrum_2d(pencil, 6);
    benchmark::DoNotOptimize(spec.eigenvalues);
  }
}
BENCHMARK(BM_Spectrum2d)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
