// Micro-benchmarks for the stages of one solve-estimate cycle on a fixed
// 2048-element mesh of the moderate-diffusion benchmark.
#include <benchmark/benchmark.h>

#include "dgrec/assemble.hpp"
#include "dgrec/estimators.hpp"
#include "dgrec/norms.hpp"
#include "dgrec/recovery.hpp"

namespace {

struct Pipeline {
  dgrec::BenchmarkCase bc = dgrec::make_homogeneous_case(1e-2);
  dgrec::MeshHierarchy hier{dgrec::create_mesh(bc.domain, 1.0 / 32)};
  dgrec::DgSpace space{hier.finest(), 1};
  dgrec::SchemeParams scheme;
  dgrec::SparseSystem sys;
  dgrec::DgSolution uh;
  dgrec::OswaldInterpolant ios;
  dgrec::RecoveredGradient G;
  dgrec::PatchSet patches;

  Pipeline() {
    scheme.penalty = 250.0;
    scheme.gamma_a = 1e-2;
    sys = dgrec::assemble_system(space, bc.coeffs, bc.f, scheme);
    uh.space = &space;
    uh.coeffs = dgrec::solve(sys);
    ios = dgrec::oswald_interpolate(uh);
    G = dgrec::recover_gradient(uh, bc.coeffs);
    patches = dgrec::build_patches(hier.finest());
  }
};

Pipeline& pipeline() {
  static Pipeline p;
  return p;
}

void BM_Assemble(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    auto sys = dgrec::assemble_system(p.space, p.bc.coeffs, p.bc.f, p.scheme);
    benchmark::DoNotOptimize(sys.b.sum());
  }
  state.SetItemsProcessed(state.iterations() * p.hier.finest().num_tris());
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    Eigen::VectorXd x = dgrec::solve(p.sys);
    benchmark::DoNotOptimize(x.sum());
  }
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

void BM_Recovery(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    auto ios = dgrec::oswald_interpolate(p.uh);
    auto G = dgrec::recover_gradient(p.uh, p.bc.coeffs);
    benchmark::DoNotOptimize(G.crosspoint_fallbacks);
    benchmark::DoNotOptimize(ios.values.sum());
  }
}
BENCHMARK(BM_Recovery)->Unit(benchmark::kMillisecond);

void BM_Indicators(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    auto li = dgrec::local_indicators(p.uh, p.ios, p.G, p.bc.coeffs);
    benchmark::DoNotOptimize(li.eta);
  }
}
BENCHMARK(BM_Indicators)->Unit(benchmark::kMillisecond);

void BM_SecurityTerms(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    auto st = dgrec::security_terms(p.hier, p.uh, p.ios, p.G, p.bc, p.patches);
    benchmark::DoNotOptimize(st.rho_bar);
  }
}
BENCHMARK(BM_SecurityTerms)->Unit(benchmark::kMillisecond);

void BM_ErrorNorms(benchmark::State& state) {
  Pipeline& p = pipeline();
  for (auto _ : state) {
    auto err = dgrec::error_norms(p.uh, p.bc);
    benchmark::DoNotOptimize(err.dg);
  }
}
BENCHMARK(BM_ErrorNorms)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
