#include "salsa/frames.hpp"
#include "salsa/operators.hpp"
#include "salsa/problems.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace salsa;

Vector seeded(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = std::sin(0.37 * static_cast<double>(i));
  return v;
}

void run_solve(benchmark::State& state, const LinearOperator& op) {
  const auto solver = op.gram_solver(0.05);
  const Vector rhs = seeded(op.in_dim());
  for (auto _ : state) benchmark::DoNotOptimize(solver->solve(rhs));
  state.SetItemsProcessed(state.iterations() * op.in_dim());
}

void BM_CirculantSolve(benchmark::State& state) {
  const Index n = state.range(0);
  run_solve(state, CirculantConvolution(make_blur(BlurId::uniform_9), n, n));
}
BENCHMARK(BM_CirculantSolve)->Arg(64)->Arg(128)->Arg(256);

void BM_MaskSolve(benchmark::State& state) {
  const Index n = state.range(0);
  run_solve(state, make_missing_pixel_mask(n, n, 0.4, 1));
}
BENCHMARK(BM_MaskSolve)->Arg(64)->Arg(256);

void BM_PartialFourierSolve(benchmark::State& state) {
  const Index n = state.range(0);
  run_solve(state, PartialFourier(make_radial_mask(n, n, 22)));
}
BENCHMARK(BM_PartialFourierSolve)->Arg(64)->Arg(128);

void BM_FrameSynthesisSolve(benchmark::State& state) {
  const Index n = state.range(0);
  const auto blur = std::make_shared<CirculantConvolution>(make_blur(BlurId::gaussian_a), n, n);
  run_solve(state, SynthesisComposite(blur, make_frame(FrameKind::undecimated_haar, n, n, 4)));
}
BENCHMARK(BM_FrameSynthesisSolve)->Arg(64)->Arg(128);

}  // namespace
