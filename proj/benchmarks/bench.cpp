#include <benchmark/benchmark.h>

#include "gnplate/decay.hpp"
#include "gnplate/dynamics.hpp"

namespace {

using namespace gnplate;

MaterialParams mat_a() {
  MaterialParams p;
  p.lambda = 1.0;
  p.mu = 1.0;
  p.d1 = 0.1;
  p.d2 = 0.1;
  p.c = 1.0;
  p.kappa = 0.2;
  p.r = 1.0;
  p.k1 = 1.0;
  p.h1 = 1.0;
  p.hbar1 = 0.2;
  p.k2 = 0.5;
  p.h2 = 0.5;
  p.hbar2 = 0.1;
  p.rho = 1.0;
  p.half_thickness = 0.5;
  p.model_type = ModelType::TypeIII;
  return p;
}

State bump(const Grid& g) {
  InitialCondition ic;
  ic.preset = IcPreset::gaussian_bump;
  ic.center_x = 0.5 * g.Lx();
  ic.center_y = 0.5 * g.Ly();
  ic.width = 0.1;
  return make_initial_state(g, ic);
}

void BM_Assemble(benchmark::State& st) {
  const Grid g(1.0, 1.0, static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble(mat_a(), g));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_StepperFactorize(benchmark::State& st) {
  const Grid g(1.0, 1.0, static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  const OperatorMatrices m = assemble(mat_a(), g);
  for (auto _ : st) benchmark::DoNotOptimize(MidpointStepper(m, 1e-3));
}
BENCHMARK(BM_StepperFactorize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& st) {
  const Grid g(1.0, 1.0, static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  const OperatorMatrices m = assemble(mat_a(), g);
  const MidpointStepper stepper(m, 1e-3);
  State U = bump(g);
  for (auto _ : st) {
    U = stepper.step(U, Sources{});
    benchmark::DoNotOptimize(U.vector().data());
  }
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_CutFluxes(benchmark::State& st) {
  const Grid g(1.0, 8.0, 32, 256);
  const State U = bump(g);
  const MaterialParams p = mat_a();
  for (auto _ : st) benchmark::DoNotOptimize(cut_fluxes(U, p));
}
BENCHMARK(BM_CutFluxes)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
