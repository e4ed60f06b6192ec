#include <benchmark/benchmark.h>

#include <random>

#include "anholkit/sigma.hpp"
#include "anholkit/spaces.hpp"
#include "anholkit/spinor.hpp"

using namespace anholkit;

static void BM_JetMultiply(benchmark::State& state) {
  const int nvars = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const auto& L = JetLayout::get(nvars, order);
  Jet a = sin(Jet::variable(L, order, 0, 0.3)), b = exp(Jet::variable(L, order, nvars - 1, -0.2));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["coeffs"] = static_cast<double>(L.count(order));
}
BENCHMARK(BM_JetMultiply)->Args({2, 4})->Args({4, 4})->Args({4, 6})->Args({6, 6});

static void BM_FinslerCurvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BundleChart tm(n, n, Variance::vector);
  std::string F = "sqrt(y1^2";
  for (int i = 2; i <= n; ++i) F += " + sin(x1)^2*y" + std::to_string(i) + "^2";
  FinslerSpace space(parse(F + ") + 0.2*y1", tm.context));
  PointU u{std::vector<double>(static_cast<std::size_t>(n), 0.7), std::vector<double>(static_cast<std::size_t>(n), 0.4)};
  const int order = required_order(space, Stage::curvature);
  for (auto _ : state) {
    auto f = space.evaluate(u, order);
    auto conn = canonical_connection(f);
    auto R = d_curvatures(conn, f.nconn);
    benchmark::DoNotOptimize(ricci(R, f.metric).scalar);
  }
}
BENCHMARK(BM_FinslerCurvature)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SpinorCrossCheck(benchmark::State& state) {
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace space(parse("sqrt(y1^2 + sin(x1)^2*y2^2) + 0.2*y1", tm.context));
  PointU u{{0.8, 0.3}, {0.5, -0.7}};
  for (auto _ : state)
    benchmark::DoNotOptimize(spinor_tensor_cross_check(space, ConnectionKind::canonical, u).scalar_diff);
}
BENCHMARK(BM_SpinorCrossCheck)->Unit(benchmark::kMillisecond);

static void BM_CliffordProduct(benchmark::State& state) {
  const Signature sig{static_cast<int>(state.range(0)), 0};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector a(sig), b(sig);
  for (Blade k = 0; k < (Blade{1} << sig.dim()); ++k) {
    a.set(k, d(rng));
    b.set(k, d(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CliffordProduct)->Arg(3)->Arg(5)->Arg(8);

static void BM_MatrixRep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_rep(Signature{n, 0}).spinor_dim);
}
BENCHMARK(BM_MatrixRep)->Arg(4)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
