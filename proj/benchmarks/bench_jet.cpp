#include <benchmark/benchmark.h>

#include "commring/jet.hpp"
#include "commring/matrix_diff_op.hpp"
#include "commring/random.hpp"

namespace {

using namespace commring;

Jet random_jet(std::mt19937_64& rng, int vars, int order) {
  Jet j(vars, order);
  for (int i = 0; i < j.size(); ++i) j[i] = complex_normal(rng);
  return j;
}

void BM_JetMul(benchmark::State& state) {
  const int vars = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  auto rng = RandomStreams(1).stream("bench-jet");
  const Jet a = random_jet(rng, vars, order);
  const Jet b = random_jet(rng, vars, order);
  for (auto _ : state) benchmark::DoNotOptimize(jet_mul(a, b));
  state.counters["coeffs"] = a.size();
}
BENCHMARK(BM_JetMul)->Args({1, 6})->Args({2, 6})->Args({3, 6})->Args({4, 6})->Args({3, 10});

void BM_JetExp(benchmark::State& state) {
  auto rng = RandomStreams(2).stream("bench-exp");
  const Jet a = random_jet(rng, static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(jet_exp(a));
}
BENCHMARK(BM_JetExp)->Arg(2)->Arg(3);

void BM_Compose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = RandomStreams(3).stream("bench-compose");
  MatrixDiffOp a(n, 2, 2, 3);
  MatrixDiffOp b(n, 2, 2, 3);
  for (auto* op : {&a, &b}) {
    for (int ia = 0; ia < op->derivs().size(); ++ia) {
      for (int d = 0; d < op->jets().size(); ++d) {
        op->coeff(ia, d) = CMat::NullaryExpr(n, n, [&] { return complex_normal(rng); });
      }
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(commutator(a, b));
}
BENCHMARK(BM_Compose)->Arg(2)->Arg(6);

}  // namespace
