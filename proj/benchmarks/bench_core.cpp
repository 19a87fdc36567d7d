#include <benchmark/benchmark.h>

#include "pvconv/gibbs.hpp"
#include "pvconv/multifractal.hpp"

using namespace pvconv;

static void BM_BuildIsetCubic(benchmark::State& state) {
  auto f = NumberField::parse("x^3-3x^2+1@2.8");
  auto params = DigitParams::make(f, 3);
  for (auto _ : state) {
    auto out = build_iset(f, params);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BuildIsetCubic);

static void BM_SignQuery(benchmark::State& state) {
  auto f = NumberField::parse("x^3-3x^2+1@2.8");
  AlgebraicNumber x(f, {Int(1), Int(-3), Int(1)});
  for (auto _ : state) benchmark::DoNotOptimize(sign(x));
}
BENCHMARK(BM_SignQuery);

static void BM_WordProductExact(benchmark::State& state) {
  auto mm = MultinacciModel<Rat>::make(2, Rat(2, 5));
  std::vector<int> w;
  for (int i = 0; i < int(state.range(0)); ++i) w.push_back(i % 3);
  for (auto _ : state) benchmark::DoNotOptimize(mm.mu_star(w));
}
BENCHMARK(BM_WordProductExact)->Arg(16)->Arg(64);

static void BM_OracleDepth16(benchmark::State& state) {
  auto f = golden_field();
  auto a = RationalCombination::of(f, Rat(1));
  auto b = RationalCombination::of(AlgebraicNumber::beta(f));
  std::vector<Rat> probs{Rat(1, 2), Rat(1, 2)};
  for (auto _ : state) {
    auto enc = brute_force_enclosure(f, 2, probs, a, b, 16);
    benchmark::DoNotOptimize(enc);
  }
}
BENCHMARK(BM_OracleDepth16);

static void BM_SupGapSweep(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) {
    auto rep = convergence_report(2, 0.3, n, n);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_SupGapSweep)->Arg(8)->Arg(10);

static void BM_TauEstimate(benchmark::State& state) {
  auto em = ErdosModel<double>::make(0.5);
  auto nm = NetMeasure::on_net(MeasureWalk::erdos_mu(em), scaled_erdos_net());
  for (auto _ : state) {
    auto t = tau_estimate(nm, 2.0, int(state.range(0)));
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TauEstimate)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
