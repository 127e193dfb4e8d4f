#include "gbessel/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "gbessel/core_types.hpp"
#include "gbessel/errors.hpp"
#include "gbessel/okounkov.hpp"

namespace gbessel {

namespace {

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void check_inputs(std::span<const double> lambda, std::span<const double> Z, std::size_t n) {
  if (lambda.size() != n || Z.size() != n)
    throw InvalidInput("density: lambda and Z must have " + std::to_string(n) + " coordinates");
  for (double v : lambda)
    if (!std::isfinite(v)) throw InvalidInput("density: non-finite lambda");
  for (double v : Z)
    if (!std::isfinite(v)) throw InvalidInput("density: non-finite Z");
  for (std::size_t i = 1; i < n; ++i)
    if (lambda[i] > lambda[i - 1]) throw InvalidInput("density: lambda must be sorted decreasingly");
  if (!is_zero_sum(lambda) || !is_zero_sum(Z))
    throw InvalidInput("density: lambda and Z must have zero coordinate sum");
  require_regular(lambda);
}

/// Indices subsets of {0..n-1} with exactly m elements, as bit masks.
std::vector<unsigned> subsets_of_size(int n, int m) {
  std::vector<unsigned> out;
  for (unsigned s = 0; s < (1u << n); ++s)
    if (std::popcount(s) == m) out.push_back(s);
  return out;
}

/// Representative masks for walls sum_J x = sum_I c: the complement of a wall
/// gives the same hyperplane when both vectors have equal sums.
bool keep_wall_side(unsigned mask, int n) {
  const int m = std::popcount(mask);
  return 2 * m < n || (2 * m == n && (mask & 1u));
}

double delta_A1(const std::vector<double>& lam, const std::vector<double>& z, double k) {
  const double z1 = z[0];
  const double a = std::max(lam[0] - z1, 0.0);
  const double b = std::max(z1 - lam[1], 0.0);
  if (z1 > lam[0] || z1 < lam[1]) return 0.0;
  const double logc = std::lgamma(2.0 * k) - 2.0 * std::lgamma(k) -
                      (2.0 * k - 1.0) * std::log(lam[0] - lam[1]);
  if (k == 1.0) return std::exp(logc);
  if ((a == 0.0 || b == 0.0) && k < 1.0)
    throw SingularEvaluation("density evaluated on the boundary of its support with k < 1");
  return std::exp(logc + (k - 1.0) * (std::log(a) + std::log(b)));
}

double delta_A2(const std::vector<double>& lam, const std::vector<double>& z, double k,
                const DensityOptions& opts) {
  if (!in_convex_hull(z, lam)) return 0.0;
  const double x = 0.5 * (z[0] + z[1]);
  const double y = std::abs(0.5 * (z[0] - z[1]));
  const double lo = std::max(y, std::abs(x - lam[1]));
  const double hi = std::min(x - lam[2], lam[0] - x);
  if (!(lo < hi)) return 0.0;
  const double logc = std::lgamma(2.0 * k) + std::lgamma(3.0 * k) - 5.0 * std::lgamma(k) -
                      (2.0 * k - 1.0) * log_vandermonde(lam);
  if (k == 1.0) return std::exp(logc) * (hi - lo);
  const MappedRule mr = map_to_interval(gauss_jacobi(opts.order, k - 1.0, k - 1.0), lo, hi);
  double sum = 0.0;
  for (std::size_t i = 0; i < mr.nodes.size(); ++i) {
    const double t = mr.nodes[i];
    double s = std::log(t - y) + std::log(t + y);
    for (int j = 0; j < 3; ++j) {
      const double a = lam[j] - x;
      s += std::log(std::abs(a - t)) + std::log(std::abs(a + t));
    }
    s -= std::log(t - lo) + std::log(hi - t);
    sum += mr.weights[i] * std::exp((2.0 - 2.0 * k) * std::log(2.0 * t) + (k - 1.0) * s);
  }
  return std::exp(logc) * sum;
}

double delta_rec(const std::vector<double>& lam, const std::vector<double>& zin, double k,
                 const DensityOptions& opts) {
  const int n = static_cast<int>(lam.size());
  const std::vector<double> z = sorted_desc(zin);
  if (n == 2) return delta_A1(lam, z, k);
  if (!in_convex_hull(z, lam)) return 0.0;

  const int m = n - 1;   // length of x and w
  const int d = n - 2;   // free coordinates of x
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += z[i];
  const double c = s / m;
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) w[i] = z[i] - c;
  std::sort(w.begin(), w.end(), std::greater<>());

  // x_i = a_i . u, with x_{m-1} = -(u_0 + ... + u_{d-1}).
  auto form = [&](int i) {
    std::vector<double> a(d, 0.0);
    if (i < d) a[i] = 1.0;
    else std::fill(a.begin(), a.end(), -1.0);
    return a;
  };
  auto neg = [](std::vector<double> a) {
    for (double& v : a) v = -v;
    return a;
  };
  std::vector<HalfSpace> cons;
  for (int i = 0; i < m; ++i) {
    cons.push_back({form(i), lam[i] - c});
    cons.push_back({neg(form(i)), -(lam[i + 1] - c)});
  }
  {
    std::vector<double> acc(d, 0.0);
    double wsum = 0.0;
    for (int j = 0; j < d; ++j) {
      const std::vector<double> a = form(j);
      for (int t = 0; t < d; ++t) acc[t] += a[t];
      wsum += w[j];
      cons.push_back({neg(acc), -wsum});
    }
  }
  std::vector<HalfSpace> kinks;
  for (int size = 1; size < m; ++size)
    for (unsigned J : subsets_of_size(m, size)) {
      if (!keep_wall_side(J, m)) continue;
      std::vector<double> a(d, 0.0);
      for (int j = 0; j < m; ++j)
        if (J & (1u << j)) {
          const std::vector<double> f = form(j);
          for (int t = 0; t < d; ++t) a[t] += f[t];
        }
      for (unsigned I : subsets_of_size(m, size)) {
        double b = 0.0;
        for (int i = 0; i < m; ++i)
          if (I & (1u << i)) b += w[i];
        kinks.push_back({a, b});
      }
    }

  const double logc = std::lgamma(n * k) - n * std::lgamma(k) -
                      (2.0 * k - 1.0) * log_vandermonde(lam);
  const double e = (k == 1.0) ? 0.0 : k - 1.0;
  auto integrand = [&](std::span<const double> u, double lo, double hi) {
    std::vector<double> x(m);
    double sum_u = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = u[i];
      sum_u += u[i];
    }
    x[m - 1] = -sum_u;
    const double v = vandermonde(x);
    if (!(v > 0.0)) return 0.0;
    const double inner = delta_rec(x, w, k, opts);
    if (inner == 0.0) return 0.0;
    double lg = std::log(v);
    if (k != 1.0) {
      double p = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) p += std::log(std::abs(lam[i] - (x[j] + c)));
      lg += (k - 1.0) * p;
      lg -= e * (std::log(u[d - 1] - lo) + std::log(hi - u[d - 1]));
    }
    return inner * std::exp(logc + lg);
  };
  PolytopeOptions po;
  po.orders = {d == 1 ? opts.order : opts.cell_order};
  po.inner_exponent = e;
  return integrate_polytope(integrand, d, cons, kinks, po).value;
}

}  // namespace

bool support_predicate(std::span<const double> lambda, std::span<const double> Z) {
  return in_convex_hull(Z, lambda);
}

double density_A1(std::span<const double> lambda, std::span<const double> Z, double k) {
  check_inputs(lambda, Z, 2);
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  const std::vector<double> lam(lambda.begin(), lambda.end());
  if (!support_predicate(lambda, Z)) return 0.0;
  return delta_A1(lam, sorted_desc(Z), k);
}

double density_A2(std::span<const double> lambda, std::span<const double> Z, double k,
                  const DensityOptions& opts) {
  check_inputs(lambda, Z, 3);
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  return delta_A2({lambda.begin(), lambda.end()}, sorted_desc(Z), k, opts);
}

double density_general(std::span<const double> lambda, std::span<const double> Z, double k,
                       const DensityOptions& opts) {
  if (lambda.size() < 3) throw InvalidInput("density_general needs N >= 3");
  check_inputs(lambda, Z, lambda.size());
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  return delta_rec({lambda.begin(), lambda.end()}, {Z.begin(), Z.end()}, k, opts);
}

std::vector<HalfSpace> hull_constraints(std::span<const double> lambda_desc) {
  const int n = static_cast<int>(lambda_desc.size());
  std::vector<HalfSpace> out;
  for (unsigned I = 1; I + 1 < (1u << n); ++I) {
    const int m = std::popcount(I);
    HalfSpace h{std::vector<double>(n - 1, 0.0), 0.0};
    for (int i = 0; i < n; ++i)
      if (I & (1u << i)) {
        if (i < n - 1) h.a[i] += 1.0;
        else
          for (double& v : h.a) v -= 1.0;
      }
    for (int j = 0; j < m; ++j) h.b += lambda_desc[j];
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<HalfSpace> density_walls(std::span<const double> lambda_desc) {
  const int n = static_cast<int>(lambda_desc.size());
  std::vector<HalfSpace> out;
  std::set<std::pair<std::vector<double>, double>> seen;
  for (int size = 1; size < n; ++size)
    for (unsigned I : subsets_of_size(n, size)) {
      if (!keep_wall_side(I, n)) continue;
      std::vector<double> a(n - 1, 0.0);
      for (int i = 0; i < n; ++i)
        if (I & (1u << i)) {
          if (i < n - 1) a[i] += 1.0;
          else
            for (double& v : a) v -= 1.0;
        }
      for (unsigned J : subsets_of_size(n, size)) {
        double b = 0.0;
        for (int j = 0; j < n; ++j)
          if (J & (1u << j)) b += lambda_desc[j];
        if (seen.insert({a, b}).second) out.push_back({a, b});
      }
    }
  return out;
}

QuadResult laplace_density(std::span<const double> mu, std::span<const double> lambda, double k,
                           const std::vector<int>& orders, const DensityOptions& opts,
                           DensityRoute route) {
  const std::size_t n = lambda.size();
  if (mu.size() != n) throw InvalidInput("laplace_density: mu and lambda differ in length");
  if (n < 2) throw InvalidInput("laplace_density needs N >= 2");
  if (!(k > 0.0)) throw InvalidInput("multiplicity k must be positive");
  const std::vector<double> lam = sorted_desc(lambda);
  require_regular(lam);
  if (route == DensityRoute::explicit_A2 && n != 3)
    throw InvalidInput("the explicit density is available for N = 3 only");

  const std::vector<double> mus = sorted_desc(mu);
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) shift += mus[i] * lam[i];
  const std::vector<double> mv(mu.begin(), mu.end());

  QuadResult res;
  if (n == 2) {
    const MappedRule mr =
        map_to_interval(gauss_jacobi(orders.front(), k - 1.0, k - 1.0), lam[1], lam[0]);
    const double logc = std::lgamma(2.0 * k) - 2.0 * std::lgamma(k) -
                        (2.0 * k - 1.0) * std::log(lam[0] - lam[1]);
    for (std::size_t i = 0; i < mr.nodes.size(); ++i) {
      const double z1 = mr.nodes[i];
      res.value += mr.weights[i] * std::exp(mv[0] * z1 - mv[1] * z1 - shift + logc);
    }
    res.evaluations = static_cast<long>(mr.nodes.size());
    res.value *= std::exp(shift);
    return res;
  }

  auto integrand = [&](std::span<const double> zp, double, double) {
    std::vector<double> z(n);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      z[i] = zp[i];
      sum += zp[i];
    }
    z[n - 1] = -sum;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += mv[i] * z[i];
    const std::vector<double> zs = sorted_desc(z);
    const double dens = (route == DensityRoute::explicit_A2) ? delta_A2(lam, zs, k, opts)
                                                              : delta_rec(lam, zs, k, opts);
    return dens == 0.0 ? 0.0 : dens * std::exp(dot - shift);
  };
  PolytopeOptions po;
  po.orders = orders;
  res = integrate_polytope(integrand, static_cast<int>(n) - 1, hull_constraints(lam),
                           density_walls(lam), po);
  const double log_value = std::log(res.value) + shift;
  if (res.value > 0.0 && log_value > 709.0)
    throw OverflowError("Laplace integral exceeds the double range");
  res.value *= std::exp(shift);
  return res;
}

}  // namespace gbessel
