#include <benchmark/benchmark.h>

#include "commring/ba_basis.hpp"
#include "commring/synthesis.hpp"
#include "fixtures.hpp"

namespace {

using namespace commring;

void BM_SynthesizeGenus2(benchmark::State& state) {
  const Divisor div = Divisor::standard(fixtures::omega_g2(), 1);
  const BABasis basis = assemble_basis(div, MultiplierSystem::scalar(2, 1), std::nullopt, fixtures::kBasisSeed);
  auto rng = RandomStreams(fixtures::kPointSeed).stream("bench-g2");
  const auto pts = random_points_off_divisor(div, 80, rng, 5e-2);
  CollocationProblem p;
  p.basis = basis.elements;
  p.divisor = &div;
  p.lambda = MeromorphicFunction::log_derivative({2, 0});
  p.z_train = {pts.begin(), pts.begin() + 40};
  p.z_test = {pts.begin() + 40, pts.end()};
  p.frame = JetFrame::full(2);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(p));
}
BENCHMARK(BM_SynthesizeGenus2)->Unit(benchmark::kMillisecond);

void BM_PointJetsGenus3(benchmark::State& state) {
  const Divisor div = Divisor::standard(fixtures::omega_g3(), 1);
  const BABasis basis = assemble_basis(div, MultiplierSystem::scalar(3, 1), std::nullopt, fixtures::kBasisSeed);
  auto rng = RandomStreams(fixtures::kPointSeed).stream("bench-g3");
  const auto pts = random_points_off_divisor(div, 4, rng, 5e-2);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_point_jets(basis.elements, div, pts, JetFrame::leading(3, 2), order, 2));
  }
}
BENCHMARK(BM_PointJetsGenus3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
