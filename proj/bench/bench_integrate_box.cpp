#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gbessel/bessel.hpp"
#include "gbessel/quadrature.hpp"

namespace {

double smooth(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return std::exp(0.3 * s) * std::cos(x[0] - x[x.size() - 1]);
}

void run_box(benchmark::State& state, bool parallel) {
  const int order = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  const std::vector<double> lam{3.0, 1.5, 0.5, -1.0, -4.0};
  const gbessel::Box box =
      gbessel::interlacing_box(std::span<const double>(lam).first(dim + 1));
  const gbessel::JacobiRule& rule = gbessel::gauss_jacobi(order, 0.5, 0.5);
  const std::vector<const gbessel::JacobiRule*> rules(dim, &rule);
  for (auto _ : state) {
    const double v = parallel ? gbessel::integrate_box_parallel(smooth, box, rules)
                              : gbessel::integrate_box_serial(smooth, box, rules);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(std::pow(order, dim)));
}

void BM_BoxSerial(benchmark::State& state) { run_box(state, false); }
void BM_BoxParallel(benchmark::State& state) { run_box(state, true); }

void BM_BesselN3(benchmark::State& state) {
  gbessel::BesselParams p;
  p.k = 2.0;
  p.quad_order = static_cast<int>(state.range(0));
  const std::vector<double> mu{1.0, 0.0, -1.0}, lam{2.0, 0.5, -2.5};
  for (auto _ : state) benchmark::DoNotOptimize(gbessel::bessel_recursive(mu, lam, p).value);
}

void BM_BesselN4(benchmark::State& state) {
  gbessel::BesselParams p;
  p.k = 1.0;
  const std::vector<double> mu{2.0, 1.0, -1.0, -2.0}, lam{3.0, 1.0, -1.0, -3.0};
  for (auto _ : state) benchmark::DoNotOptimize(gbessel::bessel_recursive(mu, lam, p).value);
}

}  // namespace

BENCHMARK(BM_BoxSerial)->Args({64, 2})->Args({16, 3})->Args({8, 4});
BENCHMARK(BM_BoxParallel)->Args({64, 2})->Args({16, 3})->Args({8, 4});
BENCHMARK(BM_BesselN3)->Arg(32)->Arg(64);
BENCHMARK(BM_BesselN4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
