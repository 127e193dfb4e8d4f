#include "gbessel/okounkov.hpp"

#include <algorithm>
#include <cmath>

#include "gbessel/errors.hpp"
#include "gbessel/quadrature.hpp"

namespace gbessel {

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("Beta function arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double log_U_coeff(const Partition& mu, int n_vars, double k) {
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  if (mu.length() > n_vars - 1) throw InvalidInput("mu must have fewer than N parts");
  double s = 0.0;
  for (int j = 1; j <= n_vars - 1; ++j) {
    const double a = mu.part(j - 1) + (n_vars - j) * k;
    s += std::lgamma(a) + std::lgamma(k) - std::lgamma(a + k);
  }
  return s;
}

double U_coeff(const Partition& mu, int n_vars, double k) {
  return std::exp(log_U_coeff(mu, n_vars, k));
}

double vandermonde(std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  return v;
}

double log_vandermonde(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s += std::log(x[i] - x[j]);
  return s;
}

double Pi_kernel(std::span<const double> lambda, std::span<const double> nu, double k) {
  if (nu.size() + 1 != lambda.size())
    throw InvalidInput("Pi kernel: nu must have one entry less than lambda");
  if (!interlace_check(nu, lambda)) throw InvalidInput("Pi kernel: nu does not interlace lambda");
  if (k == 1.0) return 1.0;
  double p = 1.0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double d = std::abs(lambda[i] - nu[j]);
      if (d == 0.0 && k < 1.0)
        throw SingularEvaluation("Pi kernel evaluated on the boundary with k < 1");
      p *= std::pow(d, k - 1.0);
    }
  return p;
}

double log_Pi_residual(std::span<const double> lambda, std::span<const double> nu, double k) {
  if (k == 1.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      if (i != j && i != j + 1) s += std::log(std::abs(lambda[i] - nu[j]));
  return (k - 1.0) * s;
}

namespace {

void check_lambda(std::span<const double> lambda) {
  if (lambda.size() < 2) throw InvalidInput("lambda needs at least two coordinates");
  for (double v : lambda)
    if (!std::isfinite(v)) throw InvalidInput("lambda has a non-finite coordinate");
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] > lambda[i - 1]) throw InvalidInput("lambda must be sorted decreasingly");
  require_regular(lambda);
}

}  // namespace

double oo_rhs(const Partition& mu, std::span<const double> lambda, double k, int order,
              const std::optional<Rational>& exact_k) {
  check_lambda(lambda);
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  const int n = static_cast<int>(lambda.size());
  if (mu.length() > n - 1) throw InvalidInput("mu must have fewer than N parts");

  const JackEvaluator jmu = exact_k ? JackEvaluator(*jack_construct(mu, n - 1, *exact_k))
                                    : JackEvaluator(*jack_construct_real(mu, n - 1, k));
  const std::vector<double> lam(lambda.begin(), lambda.end());
  auto integrand = [&](std::span<const double> nu) {
    return jmu(nu) * vandermonde(nu) * std::exp(log_Pi_residual(lam, nu, k));
  };
  const JacobiRule& rule = gauss_jacobi(order, k - 1.0, k - 1.0);
  const std::vector<const JacobiRule*> rules(n - 1, &rule);
  const double integral = integrate_box(integrand, interlacing_box(lambda), rules);
  return integral * std::exp(-log_U_coeff(mu, n, k) - (2.0 * k - 1.0) * log_vandermonde(lambda));
}

OOReport verify_oo(const Partition& mu, std::span<const double> lambda, double k, int order,
                   double tol, const std::optional<Rational>& exact_k) {
  OOReport r;
  r.mu = mu;
  r.lambda.assign(lambda.begin(), lambda.end());
  r.k = k;
  r.quad_order = order;
  r.tol = tol;
  r.rhs = oo_rhs(mu, lambda, k, order, exact_k);
  const int n = static_cast<int>(lambda.size());
  if (exact_k) {
    std::vector<Rational> x;
    for (double v : lambda) x.emplace_back(v);
    r.lhs = jack_eval(*jack_construct(mu, n, *exact_k), std::span<const Rational>(x)).get_d();
  } else {
    r.lhs = jack_eval(*jack_construct_real(mu, n, k), lambda);
  }
  r.rel_error = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1e-300);
  r.passed = r.rel_error <= tol;
  return r;
}

}  // namespace gbessel
