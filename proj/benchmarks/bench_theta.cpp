#include <benchmark/benchmark.h>

#include <memory>

#include "commring/vector_theta.hpp"
#include "fixtures.hpp"

namespace {

using namespace commring;

void BM_ThetaEvaluate(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto space =
      std::make_shared<const ThetaSpace>(jordan_example(2, 2, {{0.5, 0.5}}, s), fixtures::omega_g2());
  const VectorTheta th = VectorTheta::unit(space, 0);
  auto rng = RandomStreams(4).stream("bench-theta");
  const CVec z = random_torus_point(space->omega(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(th.evaluate(z));
}
BENCHMARK(BM_ThetaEvaluate)->Arg(1)->Arg(2);

void BM_ThetaJets(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const RiemannMatrix om = g == 2 ? fixtures::omega_g2() : fixtures::omega_g3();
  const ThetaSpace space(MultiplierSystem::scalar(g, 2), om);
  auto rng = RandomStreams(5).stream("bench-jets");
  const CVec z = random_torus_point(om, rng);
  const CMat dir = CMat::Identity(g, g) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(space.jets(z, dir, order, 1e-14));
}
BENCHMARK(BM_ThetaJets)->Args({2, 4})->Args({2, 6})->Args({3, 4})->Args({3, 6});

}  // namespace
