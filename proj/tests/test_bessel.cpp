#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "gbessel/bessel.hpp"
#include "gbessel/errors.hpp"
#include "gbessel/okounkov.hpp"

using namespace gbessel;

namespace {

/// prod_{p<N} p! det(exp(mu_i lambda_j)) / (V(mu) V(lambda)), the k = 1 value.
double k1_oracle(const std::vector<double>& mu, const std::vector<double>& lam) {
  const Eigen::Index n = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = std::exp(mu[i] * lam[j]);
  double c = 1.0;
  for (int p = 2; p < n; ++p) c *= std::tgamma(p + 1.0);
  return c * m.determinant() / (vandermonde(mu) * vandermonde(lam));
}

}  // namespace

TEST_CASE("normalized modified Bessel function") {
  CHECK(bessel_modified(1.7, 0.0) == 1.0);
  CHECK(bessel_modified(1.0, 1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
  // mpmath: Gamma(k+1/2) (z/2)^(1/2-k) I_{k-1/2}(z)
  CHECK(bessel_modified(2.5, 3.0) == doctest::Approx(1.99574439193773435966709189834).epsilon(1e-14));
  CHECK(bessel_modified(0.3, 0.7) == doctest::Approx(1.1584121055092435430311362816).epsilon(1e-14));
  CHECK(bessel_modified(7.0, 12.5) == doctest::Approx(68.8519164412702814853220426737).epsilon(1e-14));
  CHECK(bessel_modified(1.0, 40.0) == doctest::Approx(2942315835462749.81759874888436).epsilon(1e-14));
  CHECK(bessel_modified(1.0, -2.0) == bessel_modified(1.0, 2.0));
  CHECK_THROWS_AS(bessel_modified(1.0, 701.0), OverflowError);
  CHECK_THROWS_AS(bessel_modified(0.0, 1.0), InvalidInput);
}

TEST_CASE("A1 closed form and the generic N = 2 path") {
  const std::vector<double> mu{0.5, -0.5}, lam{1, -1};
  CHECK(bessel_A1(mu, lam, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  BesselParams p;
  p.k = 1.0;
  const BesselResult r = bessel_eval(mu, lam, p);
  CHECK(r.method == Method::closed_form);
  CHECK(r.value == doctest::Approx(1.1752011936438014).epsilon(1e-15));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 2.0), kk(0.3, 4.0);
  for (int t = 0; t < 20; ++t) {
    const double a = u(rng), b = u(rng);
    p.k = kk(rng);
    p.tol = 1e-12;
    const std::vector<double> m{a, -a}, l{b, -b};
    const BesselResult g = bessel_recursive(m, l, p);
    CHECK(g.method == Method::recursive);
    CHECK(g.value == doctest::Approx(bessel_A1(m, l, p.k)).epsilon(1e-10));
  }
}

TEST_CASE("normalization at mu = 0") {
  BesselParams p;
  p.k = 2.0;
  CHECK(bessel_eval(std::vector<double>{0, 0, 0}, std::vector<double>{2, 0, -2}, p).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  p.k = 0.5;
  CHECK(bessel_eval(std::vector<double>{0, 0, 0}, std::vector<double>{1.5, 0.2, -1.7}, p).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("k = 1 determinant formula") {
  BesselParams p;
  p.k = 1.0;
  p.tol = 1e-10;
  const std::vector<double> mu{1, 0, -1}, lam{2, 0, -2};
  CHECK(bessel_eval(mu, lam, p).value == doctest::Approx(k1_oracle(mu, lam)).epsilon(1e-9));

  const std::vector<double> mu2{0.7, -0.7}, lam2{1.3, -1.3};
  CHECK(k1_oracle(mu2, lam2) == doctest::Approx(std::sinh(2 * 0.7 * 1.3) / (2 * 0.7 * 1.3)).epsilon(1e-14));

  const std::vector<double> mu4{2, 1, -1, -2}, lam4{3, 1, -1, -3};
  CHECK(bessel_eval(mu4, lam4, p).value == doctest::Approx(k1_oracle(mu4, lam4)).epsilon(1e-6));
}

TEST_CASE("functional equations at N = 3") {
  BesselParams p;
  p.k = 1.5;
  p.tol = 1e-11;
  const std::vector<double> mu{1.1, -0.2, -0.9}, lam{1.6, 0.3, -1.9};
  const double base = bessel_eval(mu, lam, p).value;
  CHECK(bessel_eval(lam, mu, p).value == doctest::Approx(base).epsilon(1e-8));
  std::vector<double> shuffled(mu);
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(bessel_eval(shuffled, lam, p).value == base);
  std::vector<double> half_mu(mu), twice_lam(lam);
  for (double& v : half_mu) v *= 0.5;
  for (double& v : twice_lam) v *= 2.0;
  CHECK(bessel_eval(half_mu, twice_lam, p).value == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("density route agrees with the recursion") {
  BesselParams p;
  p.k = 2.0;
  const std::vector<double> mu{0.8, 0.1, -0.9}, lam{1.2, -0.1, -1.1};
  const double rec = bessel_recursive(mu, lam, p).value;
  const BesselResult den = bessel_via_density(mu, lam, p);
  CHECK(den.method == Method::density);
  CHECK(den.value == doctest::Approx(rec).epsilon(1e-8));
}

TEST_CASE("input validation") {
  BesselParams p;
  CHECK_THROWS_AS(bessel_eval(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0, -1}, p),
                  InvalidInput);
  CHECK_THROWS_AS(bessel_eval(std::vector<double>{1, -1}, std::vector<double>{1, 0, -1}, p),
                  InvalidInput);
  CHECK_THROWS_AS(bessel_eval(std::vector<double>{1, 0, -1}, std::vector<double>{1, 1, -2}, p),
                  DegenerateInput);
  CHECK_THROWS_AS(bessel_eval(std::vector<double>(5, 0.0), std::vector<double>{2, 1, 0, -1, -2}, p),
                  InvalidInput);
  p.project = true;
  CHECK(bessel_eval(std::vector<double>{1, 0, 0}, std::vector<double>{2, 1, 0}, p).value ==
        doctest::Approx(bessel_eval(project_v(std::vector<double>{1, 0, 0}),
                                    std::vector<double>{1, 0, -1}, BesselParams{})
                            .value));
  CHECK(parse_method("density") == Method::density);
  CHECK_THROWS_AS(parse_method("fast"), InvalidInput);
}
