#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbessel/errors.hpp"
#include "gbessel/okounkov.hpp"

using namespace gbessel;

TEST_CASE("U coefficients") {
  CHECK(U_coeff(Partition({0}), 2, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(U_coeff(Partition({1}), 2, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(U_coeff(Partition(std::vector<int>{0, 0}), 3, 2.0) ==
        doctest::Approx(1.0 / 120.0).epsilon(1e-14));
  CHECK(beta_fn(0.6, 0.6) == doctest::Approx(2.41534420800247).epsilon(1e-13));
  CHECK_THROWS_AS(U_coeff(Partition({1, 1}), 2, 1.0), InvalidInput);
}

TEST_CASE("Vandermonde product") {
  CHECK(vandermonde(std::vector<double>{2, 1, 0}) == 2.0);
  CHECK(vandermonde(std::vector<double>{2, 1, 1}) == 0.0);
  CHECK(vandermonde(std::vector<double>{1, 0}) == 1.0);
  CHECK(std::exp(log_vandermonde(std::vector<double>{3, 1, -0.5, -2})) ==
        doctest::Approx(vandermonde(std::vector<double>{3, 1, -0.5, -2})));
}

TEST_CASE("Pi kernel") {
  const std::vector<double> lam{1, 0}, nu{0.5};
  CHECK(Pi_kernel(lam, nu, 1.0) == 1.0);
  CHECK(Pi_kernel(lam, nu, 2.0) == doctest::Approx(0.25));
  CHECK(Pi_kernel(lam, nu, 0.5) == doctest::Approx(2.0));
  CHECK(Pi_kernel(std::vector<double>{3, 1, 0}, std::vector<double>{2, 0.5}, 1.0) == 1.0);
  CHECK_THROWS_AS(Pi_kernel(lam, std::vector<double>{1.0}, 0.5), SingularEvaluation);
  CHECK_THROWS_AS(Pi_kernel(lam, std::vector<double>{1.5}, 2.0), InvalidInput);
}

TEST_CASE("branching integral examples") {
  CHECK(oo_rhs(Partition({1}), std::vector<double>{2, 0}, 1.0, 16) == doctest::Approx(2.0).epsilon(1e-13));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> gap(0.3, 1.5), kk(0.2, 4.0);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> lam{0.0, 0.0, -1.0};
    lam[1] = lam[2] + gap(rng);
    lam[0] = lam[1] + gap(rng);
    CHECK(oo_rhs(Partition(), lam, kk(rng), 64) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const OOReport trivial = verify_oo(Partition(), std::vector<double>{1, 0}, 1.0, 8, 1e-12, Rational(1));
  CHECK(trivial.passed);
  CHECK(trivial.rel_error < 1e-14);

  struct Case {
    std::vector<int> mu;
    std::vector<double> lam;
    Rational k;
  };
  const std::vector<Case> cases{{{3}, {2, -1}, Rational(1, 2)},
                                {{2, 2}, {3, 2, -5}, Rational(7, 2)},
                                {{2, 1}, {3, 1, 0}, Rational(2)}};
  for (const Case& c : cases) {
    const OOReport r = verify_oo(Partition(c.mu), c.lam, c.k.get_d(), 64, 1e-7, c.k);
    CHECK(r.passed);
    CHECK(r.rel_error <= 1e-7);
  }
}

TEST_CASE("quadrature error falls as the order doubles") {
  const Partition mu({3, 1});
  const std::vector<double> lam{2.1, 0.7, -0.4};
  double previous = 1.0;
  for (int order : {2, 4, 8}) {
    const OOReport r = verify_oo(mu, lam, 2.5, order, 1e-7, Rational(5, 2));
    CHECK(r.rel_error < previous);
    previous = r.rel_error;
  }
  CHECK(previous < 1e-12);
}

TEST_CASE("real and exact k give the same right-hand side") {
  const std::vector<double> lam{1.7, 0.2, -1.1};
  const double exact = oo_rhs(Partition({2, 1}), lam, 1.5, 32, Rational(3, 2));
  const double real = oo_rhs(Partition({2, 1}), lam, 1.5, 32);
  CHECK(real == doctest::Approx(exact).epsilon(1e-12));
}
