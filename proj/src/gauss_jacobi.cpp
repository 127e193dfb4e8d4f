#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "gbessel/errors.hpp"
#include "gbessel/quadrature.hpp"

namespace gbessel {

namespace {

/// P_n^{(a,b)}(t) and P_{n-1}^{(a,b)}(t) by the three-term recurrence.
std::pair<double, double> jacobi_p(int n, double a, double b, double t) {
  double p0 = 1.0;
  if (n == 0) return {p0, 0.0};
  double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + a + b;
    const double c0 = 2.0 * m * (m + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * t + a * a - b * b);
    const double c2 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
    const double p2 = (c1 * p1 - c2 * p0) / c0;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

double jacobi_dp(int n, double a, double b, double t) {
  if (n == 0) return 0.0;
  return 0.5 * (n + a + b + 1.0) * jacobi_p(n - 1, a + 1.0, b + 1.0, t).first;
}

JacobiRule build_rule(int n, double a, double b) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int m = 0; m < n; ++m) {
    const double s = 2.0 * m + a + b;
    diag(m) = (m == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int m = 1; m < n; ++m) {
    const double s = 2.0 * m + a + b;
    double b2;
    if (m == 1)
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      b2 = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(m - 1) = std::sqrt(b2);
  }

  JacobiRule rule;
  rule.order = n;
  rule.alpha = a;
  rule.beta = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw InternalError("Jacobi matrix eigensolver failed");
    for (int i = 0; i < n; ++i) rule.nodes[i] = es.eigenvalues()(i);
  }

  const double log_const = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                           std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0) +
                           (a + b + 1.0) * std::log(2.0);
  for (int i = 0; i < n; ++i) {
    double t = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const double p = jacobi_p(n, a, b, t).first;
      const double dp = jacobi_dp(n, a, b, t);
      if (dp == 0.0) break;
      const double step = p / dp;
      const double next = t - step;
      if (!(next > -1.0 && next < 1.0)) break;
      t = next;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    rule.nodes[i] = t;
    const double dp = jacobi_dp(n, a, b, t);
    rule.weights[i] = std::exp(log_const - std::log1p(-t * t) - 2.0 * std::log(std::abs(dp)));
  }

  if (a == b) {
    for (int i = 0; i < n / 2; ++i) {
      const int j = n - 1 - i;
      const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
      rule.nodes[i] = -t;
      rule.nodes[j] = t;
      rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  }
  for (int i = 0; i < n; ++i)
    if (!(rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0) || !(rule.weights[i] > 0.0) ||
        (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])))
      throw InternalError("Gauss-Jacobi rule failed its node/weight checks");
  return rule;
}

using RuleKey = std::tuple<int, std::uint64_t, std::uint64_t>;
std::shared_mutex g_rule_mutex;
std::map<RuleKey, std::unique_ptr<const JacobiRule>> g_rule_cache;

std::string describe_node(std::span<const double> x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

/// Contribution of outer node `i`: the full tensor sum over the inner coordinates.
double outer_partial(const BoxIntegrand& f, const std::vector<MappedRule>& mapped, std::size_t i) {
  const std::size_t d = mapped.size();
  std::vector<double> x(d);
  std::vector<std::size_t> idx(d, 0);
  x[0] = mapped[0].nodes[i];
  const double w0 = mapped[0].weights[i];
  for (std::size_t j = 1; j < d; ++j)
    if (mapped[j].nodes.empty()) return 0.0;
  double sum = 0.0;
  for (;;) {
    double w = w0;
    for (std::size_t j = 1; j < d; ++j) {
      x[j] = mapped[j].nodes[idx[j]];
      w *= mapped[j].weights[idx[j]];
    }
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand returned " << v << " at node " << describe_node(x);
      throw EvaluationError(os.str());
    }
    sum += w * v;
    std::size_t j = d;
    while (j > 1) {
      --j;
      if (++idx[j] < mapped[j].nodes.size()) break;
      idx[j] = 0;
      if (j == 1) return sum;
    }
    if (d == 1) return sum;
  }
}

std::vector<MappedRule> map_box(const Box& box, std::span<const JacobiRule* const> rules) {
  if (rules.size() != box.dim())
    throw InvalidInput("integrate_box: one rule per box dimension is required");
  std::vector<MappedRule> mapped;
  for (std::size_t j = 0; j < box.dim(); ++j)
    mapped.push_back(map_to_interval(*rules[j], box.intervals[j].first, box.intervals[j].second));
  return mapped;
}

double ordered_sum(const std::vector<double>& parts) {
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

}  // namespace

const JacobiRule& gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw InvalidInput("Gauss-Jacobi order must be at least 1");
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw InvalidInput("Gauss-Jacobi exponents must exceed -1 (k must be positive)");
  const RuleKey key{n, std::bit_cast<std::uint64_t>(alpha), std::bit_cast<std::uint64_t>(beta)};
  {
    std::shared_lock lock(g_rule_mutex);
    if (auto it = g_rule_cache.find(key); it != g_rule_cache.end()) return *it->second;
  }
  auto rule = std::make_unique<const JacobiRule>(build_rule(n, alpha, beta));
  std::unique_lock lock(g_rule_mutex);
  return *g_rule_cache.emplace(key, std::move(rule)).first->second;
}

double jacobi_mass(double alpha, double beta) {
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                  std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0));
}

MappedRule map_to_interval(const JacobiRule& rule, double lo, double hi) {
  if (!(lo <= hi)) throw InvalidInput("map_to_interval: lo must not exceed hi");
  MappedRule out;
  if (lo == hi) return out;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const double scale = std::pow(half, rule.alpha + rule.beta + 1.0);
  out.nodes.resize(rule.order);
  out.weights.resize(rule.order);
  for (int i = 0; i < rule.order; ++i) {
    out.nodes[i] = mid + half * rule.nodes[i];
    out.weights[i] = scale * rule.weights[i];
  }
  return out;
}

Box interlacing_box(std::span<const double> lambda_desc) {
  Box box;
  for (std::size_t j = 0; j + 1 < lambda_desc.size(); ++j)
    box.intervals.emplace_back(lambda_desc[j + 1], lambda_desc[j]);
  return box;
}

double integrate_box_serial(const BoxIntegrand& f, const Box& box,
                            std::span<const JacobiRule* const> rules) {
  const std::vector<MappedRule> mapped = map_box(box, rules);
  if (mapped.empty()) return f({});
  std::vector<double> parts(mapped[0].nodes.size());
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = outer_partial(f, mapped, i);
  return ordered_sum(parts);
}

double integrate_box_parallel(const BoxIntegrand& f, const Box& box,
                              std::span<const JacobiRule* const> rules) {
  const std::vector<MappedRule> mapped = map_box(box, rules);
  if (mapped.empty()) return f({});
  const long n = static_cast<long>(mapped[0].nodes.size());
  std::vector<double> parts(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      parts[i] = outer_partial(f, mapped, static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ordered_sum(parts);
}

}  // namespace gbessel
