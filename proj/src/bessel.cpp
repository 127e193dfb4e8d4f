#include "gbessel/bessel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "gbessel/errors.hpp"
#include "gbessel/okounkov.hpp"
#include "gbessel/quadrature.hpp"

namespace gbessel {

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::recursive: return "recursive";
    case Method::density: return "density";
    case Method::closed_form: return "closed_form";
  }
  return "auto";
}

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::automatic;
  if (name == "recursive") return Method::recursive;
  if (name == "density") return Method::density;
  if (name == "closed_form") return Method::closed_form;
  throw InvalidInput("unknown method '" + name + "' (auto, recursive, density, closed_form)");
}

double bessel_modified(double k, double z) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("multiplicity k must be positive");
  if (!std::isfinite(z)) throw InvalidInput("Bessel argument must be finite");
  if (std::abs(z) > 700.0)
    throw OverflowError("modified Bessel series argument |z| > 700 overflows double precision");
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= q / ((n + 1.0) * (n + k + 0.5));
    sum += term;
    if (term < 1e-17 * sum && (n + 1.0) * (n + k + 0.5) > q) return sum;
  }
  throw InternalError("modified Bessel series failed to converge");
}

double bessel_A1(std::span<const double> mu, std::span<const double> lambda, double k) {
  if (mu.size() != 2 || lambda.size() != 2)
    throw InvalidInput("bessel_A1 takes two-coordinate points");
  return bessel_modified(k, 2.0 * std::abs(mu[0]) * std::abs(lambda[0]));
}

namespace {

int default_order(std::size_t n) {
  if (n <= 3) return 64;
  if (n == 4) return 16;
  return 8;
}

/// J_N by the dimension recursion; mu and lambda sorted decreasingly, zero-sum.
/// `orders[0]` is used at this level, the tail for the inner levels.
double recursive_value(const std::vector<double>& mu, const std::vector<double>& lam, double k,
                       std::span<const int> orders, bool top, bool generic_base, long& evals) {
  const std::size_t n = lam.size();
  if (n == 1) return 1.0;
  if (n == 2 && !generic_base) {
    ++evals;
    return bessel_modified(k, 2.0 * mu[0] * lam[0]);
  }
  const std::size_t m = n - 1;
  std::vector<double> mubar(m);
  for (std::size_t i = 0; i < m; ++i) mubar[i] = mu[i] - mu[n - 1];
  const std::vector<double> inner_mu = project_v(mubar);
  const double rate = -static_cast<double>(n) * mu[n - 1] / static_cast<double>(m);
  double top_sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) top_sum += lam[j];
  const double shift = rate * top_sum;

  std::atomic_long count{0};
  auto integrand = [&](std::span<const double> nu) {
    double s = 0.0;
    for (double v : nu) s += v;
    double lg = rate * s - shift + log_Pi_residual(lam, nu, k);
    double inner = 1.0;
    long c = 1;
    if (m > 1) {
      c = 0;
      lg += log_vandermonde(nu);
      inner = recursive_value(inner_mu, project_v(nu), k, orders.subspan(1), false, false, c);
    }
    count += c;
    return std::exp(lg) * inner;
  };
  const JacobiRule& rule = gauss_jacobi(orders[0], k - 1.0, k - 1.0);
  const std::vector<const JacobiRule*> rules(m, &rule);
  const Box box = interlacing_box(lam);
  const double integral = top ? integrate_box_parallel(integrand, box, rules)
                              : integrate_box_serial(integrand, box, rules);
  evals += count.load();
  if (!(integral > 0.0)) throw InternalError("recursion integral is not positive");
  const double log_value = std::log(integral) + shift + std::lgamma(n * k) - n * std::lgamma(k) -
                           (2.0 * k - 1.0) * log_vandermonde(lam);
  if (log_value > 709.0) throw OverflowError("Bessel function value exceeds the double range");
  return std::exp(log_value);
}

BesselResult run_recursive(const CanonicalPair& cp, const BesselParams& p, bool generic_base) {
  const std::size_t n = cp.lambda.size();
  BesselResult res;
  res.method = Method::recursive;
  if (n == 1) {
    res.value = 1.0;
    return res;
  }
  int order = p.quad_order > 0 ? p.quad_order : default_order(n);
  const int inner = p.inner_order > 0 ? p.inner_order : default_order(n);
  std::vector<int> orders(n, inner);
  auto eval = [&](int top_order) {
    orders[0] = top_order;
    return recursive_value(cp.mu, cp.lambda, p.k, orders, true, generic_base, res.evaluations);
  };
  double coarse = eval(std::max(order / 2, 1));
  double fine = eval(order);
  while (std::abs(fine - coarse) > p.tol * std::abs(fine) && 2 * order <= p.max_order) {
    order *= 2;
    coarse = fine;
    fine = eval(order);
  }
  res.value = fine;
  res.err_estimate = std::abs(fine - coarse);
  res.quad_order = order;
  return res;
}

}  // namespace

CanonicalPair canonicalize(std::span<const double> mu, std::span<const double> lambda,
                           const BesselParams& params) {
  if (mu.size() != lambda.size()) throw InvalidInput("mu and lambda must have the same length");
  if (mu.empty()) throw InvalidInput("mu and lambda must be nonempty");
  if (!(params.k > 0.0) || !std::isfinite(params.k))
    throw InvalidInput("multiplicity k must be positive");
  if (mu.size() >= 5 && !params.allow_large_n)
    throw InvalidInput("N >= 5 is disabled by default (nested quadrature cost grows like "
                       "order^(N(N-1)/2)); enable it explicitly");
  std::vector<double> m(mu.begin(), mu.end()), l(lambda.begin(), lambda.end());
  for (double v : m)
    if (!std::isfinite(v)) throw InvalidInput("mu has a non-finite coordinate");
  for (double v : l)
    if (!std::isfinite(v)) throw InvalidInput("lambda has a non-finite coordinate");
  if (params.project) {
    m = project_v(m);
    l = project_v(l);
  } else {
    if (!is_zero_sum(m, params.tolerances)) throw InvalidInput("mu must have zero coordinate sum");
    if (!is_zero_sum(l, params.tolerances))
      throw InvalidInput("lambda must have zero coordinate sum");
  }
  CanonicalPair cp{sort_descending(m).coords, sort_descending(l).coords};
  if (cp.lambda.size() >= 2) require_regular(cp.lambda);
  return cp;
}

BesselResult bessel_recursive(std::span<const double> mu, std::span<const double> lambda,
                              const BesselParams& params) {
  return run_recursive(canonicalize(mu, lambda, params), params, true);
}

BesselResult bessel_via_density(std::span<const double> mu, std::span<const double> lambda,
                                const BesselParams& params) {
  const CanonicalPair cp = canonicalize(mu, lambda, params);
  const std::size_t n = cp.lambda.size();
  BesselResult res;
  res.method = Method::density;
  if (n == 1) {
    res.value = 1.0;
    return res;
  }
  std::vector<int> orders = params.density_orders;
  if (orders.empty()) orders.assign(n - 1, n == 2 ? 64 : (n == 3 ? 12 : 4));
  std::vector<int> half(orders);
  for (int& o : half) o = std::max(o / 2, 1);
  const DensityRoute route = (n == 3) ? DensityRoute::explicit_A2 : DensityRoute::recursive;
  const QuadResult fine = laplace_density(cp.mu, cp.lambda, params.k, orders, params.density, route);
  const QuadResult coarse = laplace_density(cp.mu, cp.lambda, params.k, half, params.density, route);
  res.value = fine.value;
  res.err_estimate = std::abs(fine.value - coarse.value);
  res.evaluations = fine.evaluations + coarse.evaluations;
  res.quad_order = orders.front();
  return res;
}

BesselResult bessel_eval(std::span<const double> mu, std::span<const double> lambda,
                         const BesselParams& params) {
  switch (params.method) {
    case Method::recursive:
      return bessel_recursive(mu, lambda, params);
    case Method::density:
      return bessel_via_density(mu, lambda, params);
    case Method::closed_form:
    case Method::automatic: {
      const CanonicalPair cp = canonicalize(mu, lambda, params);
      if (cp.lambda.size() == 2) {
        BesselResult res;
        res.method = Method::closed_form;
        res.value = bessel_modified(params.k, 2.0 * cp.mu[0] * cp.lambda[0]);
        res.evaluations = 1;
        return res;
      }
      if (params.method == Method::closed_form)
        throw InvalidInput("the closed form is available for N = 2 only");
      if (cp.lambda.size() == 1) {
        BesselResult res;
        res.method = Method::closed_form;
        res.value = 1.0;
        return res;
      }
      return run_recursive(cp, params, false);
    }
  }
  throw InvalidInput("unknown method");
}

}  // namespace gbessel
