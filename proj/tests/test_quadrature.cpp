#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbessel/errors.hpp"
#include "gbessel/quadrature.hpp"

using namespace gbessel;

namespace {

double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double sum(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

}  // namespace

TEST_CASE("Gauss-Jacobi examples") {
  const JacobiRule& mid = gauss_jacobi(1, 0.0, 0.0);
  CHECK(mid.nodes[0] == doctest::Approx(0.0));
  CHECK(mid.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  for (int n : {1, 3, 10, 64}) CHECK(sum(gauss_jacobi(n, 1.0, 1.0).weights) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  const JacobiRule& two = gauss_jacobi(2, 0.0, 0.0);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(jacobi_mass(1.0, 1.0) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), InvalidInput);
}

TEST_CASE("Gauss-Jacobi rules are exact to degree 2n-1") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ab(-0.9, 3.0);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 20;
    const double a = ab(rng), b = ab(rng);
    const MappedRule r = map_to_interval(gauss_jacobi(n, a, b), 0.0, 1.0);
    for (int m = 0; m <= 2 * n - 1; m += std::max(1, n / 3)) {
      double q = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], m);
      // int_0^1 x^m (1-x)^a x^b dx
      CHECK(q == doctest::Approx(beta(m + b + 1.0, a + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("nodes are increasing and symmetric for alpha = beta") {
  const JacobiRule& r = gauss_jacobi(33, -0.5, -0.5);
  for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    CHECK(r.nodes[i] == -r.nodes[r.nodes.size() - 1 - i]);
    CHECK(r.weights[i] == r.weights[r.nodes.size() - 1 - i]);
    // Chebyshev rule of the first kind: x_i = cos((2i+1)pi/(2n)), w_i = pi/n
    CHECK(r.weights[i] == doctest::Approx(M_PI / 33).epsilon(1e-13));
  }
}

TEST_CASE("affine map") {
  const JacobiRule& g = gauss_jacobi(5, 0.3, 1.2);
  const MappedRule id = map_to_interval(g, -1.0, 1.0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(id.nodes[i] == doctest::Approx(g.nodes[i]));
    CHECK(id.weights[i] == doctest::Approx(g.weights[i]));
  }
  CHECK(sum(map_to_interval(gauss_jacobi(4, 0.0, 0.0), 0.0, 2.0).weights) == doctest::Approx(2.0));
  CHECK(sum(map_to_interval(gauss_jacobi(8, -0.4, -0.4), 0.0, 1.0).weights) ==
        doctest::Approx(beta(0.6, 0.6)).epsilon(1e-13));
  CHECK(map_to_interval(g, 1.0, 1.0).nodes.empty());
}

TEST_CASE("box integrals") {
  const JacobiRule& leg = gauss_jacobi(4, 0.0, 0.0);
  const std::vector<const JacobiRule*> two(2, &leg);
  Box b02{{{0.0, 1.0}, {0.0, 2.0}}};
  CHECK(integrate_box([](std::span<const double>) { return 1.0; }, b02, two) == doctest::Approx(2.0));
  Box unit{{{0.0, 1.0}, {0.0, 1.0}}};
  CHECK(integrate_box([](std::span<const double> x) { return x[0] * x[1]; }, unit, two) ==
        doctest::Approx(0.25));
  const JacobiRule& k2 = gauss_jacobi(3, 1.0, 1.0);
  const std::vector<const JacobiRule*> one(1, &k2);
  CHECK(integrate_box([](std::span<const double>) { return 1.0; }, Box{{{0.0, 1.0}}}, one) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("serial and parallel box sums agree bit for bit") {
  const std::vector<double> lam{2.0, 0.5, -0.5, -2.0};
  const Box box = interlacing_box(lam);
  CHECK(box.dim() == 3);
  CHECK(box.intervals[0] == std::pair<double, double>{0.5, 2.0});
  const JacobiRule& r = gauss_jacobi(9, 0.7, 0.7);
  const std::vector<const JacobiRule*> rules(3, &r);
  auto f = [](std::span<const double> x) { return std::exp(x[0] - 0.3 * x[1]) * std::cos(x[2]); };
  CHECK(integrate_box_serial(f, box, rules) == integrate_box_parallel(f, box, rules));
}

TEST_CASE("non-finite integrand values are reported") {
  const JacobiRule& r = gauss_jacobi(4, 0.0, 0.0);
  const std::vector<const JacobiRule*> rules(2, &r);
  auto bad = [](std::span<const double> x) { return x[0] > 0.5 ? NAN : 1.0; };
  CHECK_THROWS_AS(integrate_box_serial(bad, Box{{{0.0, 1.0}, {0.0, 1.0}}}, rules), EvaluationError);
  CHECK_THROWS_AS(integrate_box_parallel(bad, Box{{{0.0, 1.0}, {0.0, 1.0}}}, rules), EvaluationError);
}

TEST_CASE("adaptive integration") {
  AdaptiveOptions o;
  o.exponent_lo = -0.5;
  const QuadResult r = integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, o);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  AdaptiveOptions kink;
  kink.breakpoints = {0.0};
  CHECK(integrate_adaptive([](double t) { return std::abs(t); }, -1.0, 1.0, kink).value ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double t) { return std::exp(t); }, 0.0, 3.0).value ==
        doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("polytope integration") {
  const std::vector<HalfSpace> simplex{{{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}, {{1.0, 1.0}, 1.0}};
  auto one = [](std::span<const double>, double, double) { return 1.0; };
  CHECK(integrate_polytope(one, 2, simplex, {}).value == doctest::Approx(0.5).epsilon(1e-14));
  auto prod = [](std::span<const double> t, double, double) { return t[0] * t[1]; };
  CHECK(integrate_polytope(prod, 2, simplex, {}).value == doctest::Approx(1.0 / 24.0).epsilon(1e-14));

  // |t1 - t2| on the unit square is smooth on either side of the diagonal.
  const std::vector<HalfSpace> square{{{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}, {{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
  auto kinked = [](std::span<const double> t, double, double) { return std::abs(t[0] - t[1]); };
  PolytopeOptions two;
  two.orders = {2};
  CHECK(integrate_polytope(kinked, 2, square, {{{1.0, -1.0}, 0.0}}, two).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}
