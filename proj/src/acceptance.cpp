#include "gbessel/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "gbessel/bessel.hpp"
#include "gbessel/density.hpp"
#include "gbessel/errors.hpp"
#include "gbessel/jack.hpp"
#include "gbessel/okounkov.hpp"

namespace gbessel {

namespace {

using Rng = std::mt19937_64;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Zero-sum, strictly decreasing point with gaps in [gap_lo, gap_hi].
std::vector<double> random_chamber(Rng& rng, std::size_t n, double gap_lo, double gap_hi) {
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i + 1] + uniform(rng, gap_lo, gap_hi);
  return project_v(x);
}

Partition random_partition(Rng& rng, int max_weight, int max_parts) {
  const int w = std::uniform_int_distribution<int>(0, max_weight)(rng);
  const std::vector<Partition> all = partitions_of(w, max_parts);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CriterionResult jack_exactness() {
  CriterionResult c{1, "Jack exactness", true, "", 0.0, 30.0};
  const std::vector<Rational> ks{Rational(1, 2), Rational(1), Rational(2), Rational(7, 2)};
  const std::vector<Rational> point{Rational(1, 2), Rational(-1, 3), Rational(2), Rational(5, 7)};
  const Rational scale(3, 2);
  long checked = 0;
  std::string failure;
  for (int n = 2; n <= 4 && failure.empty(); ++n) {
    for (const Rational& k : ks) {
      for (int w = 0; w <= 6; ++w) {
        for (const Partition& lam : partitions_of(w, n)) {
          const auto jp = jack_construct(lam, n, k);
          std::string tag = "N=" + std::to_string(n) + " k=" + to_string(k) + " weight " +
                            std::to_string(w);
          auto lead = jp->expansion.find(lam);
          if (lead == jp->expansion.end() || lead->second != 1) failure = tag + ": not monic";
          for (const auto& [nu, coeff] : jp->expansion)
            if (!dominance_leq(nu, lam)) failure = tag + ": coefficient outside the dominance order";
          const SymPoly p = jp->polynomial();
          const SymPoly residual = apply_Lk(p, k) - p * jp->eigenvalue;
          if (!residual.terms().empty()) failure = tag + ": nonzero eigen-residual";
          std::span<const Rational> x(point.data(), static_cast<std::size_t>(n));
          std::vector<Rational> cx(x.begin(), x.end());
          for (Rational& v : cx) v *= scale;
          Rational factor(1);
          for (int i = 0; i < w; ++i) factor *= scale;
          if (jack_eval(*jp, std::span<const Rational>(cx)) != factor * jack_eval(*jp, x))
            failure = tag + ": not homogeneous";
          if (lam.length() <= n - 1) {
            const auto lower = jack_construct(lam, n - 1, k);
            if (!(p.drop_last_variable() == lower->polynomial()))
              failure = tag + ": restriction to N-1 variables differs";
          }
          ++checked;
          if (!failure.empty()) break;
        }
        if (!failure.empty()) break;
      }
      if (!failure.empty()) break;
    }
  }
  c.passed = failure.empty();
  c.detail = c.passed ? std::to_string(checked) + " polynomials exact" : failure;
  return c;
}

CriterionResult oo_identity(Rng& rng) {
  CriterionResult c{2, "Okounkov-Olshanski identity", true, "", 0.0, 60.0};
  const std::vector<Rational> ks{Rational(1, 2), Rational(1), Rational(2), Rational(7, 2)};
  double worst = 0.0;
  int cases = 0, failed = 0;
  for (int n = 2; n <= 3; ++n) {
    for (const Rational& k : ks) {
      for (int i = 0; i < 20; ++i) {
        const Partition mu = random_partition(rng, 5, n - 1);
        std::vector<double> lam(n);
        lam[n - 1] = uniform(rng, 0.3, 1.0);
        for (int j = n - 1; j-- > 0;) lam[j] = lam[j + 1] + uniform(rng, 0.3, 1.5);
        const OOReport r = verify_oo(mu, lam, k.get_d(), 64, 1e-7, k);
        worst = std::max(worst, r.rel_error);
        ++cases;
        if (!r.passed) ++failed;
      }
    }
  }
  c.passed = failed == 0;
  c.detail = std::to_string(cases) + " cases, " + std::to_string(failed) +
             " failed, max rel error " + sci(worst);
  return c;
}

CriterionResult a1_closed_form(Rng& rng) {
  CriterionResult c{3, "A1 closed form", true, "", 0.0, 0.0};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = uniform(rng, 0.05, 2.0), b = uniform(rng, 0.05, 2.0);
    BesselParams p;
    p.k = uniform(rng, 0.3, 4.0);
    p.tol = 1e-12;
    const std::vector<double> mu{a, -a}, lam{b, -b};
    const double generic = bessel_recursive(mu, lam, p).value;
    worst = std::max(worst, rel_diff(generic, bessel_A1(mu, lam, p.k)));
  }
  const double spot = std::abs(bessel_modified(1.0, 1.0) - std::sinh(1.0));
  c.passed = worst <= 1e-10 && spot <= 1e-12;
  c.detail = "max rel error " + sci(worst) + " over 50 cases, sinh spot check " + sci(spot);
  return c;
}

CriterionResult normalization() {
  CriterionResult c{4, "Density normalization", true, "", 0.0, 180.0};
  const std::vector<double> zero3(3, 0.0), zero4(4, 0.0);
  const std::vector<std::vector<double>> lams{{2.0, 0.0, -2.0}, {1.5, 0.2, -1.7}};
  double worst3 = 0.0;
  for (double k : {1.0, 2.0})
    for (const auto& lam : lams)
      for (DensityRoute route : {DensityRoute::explicit_A2, DensityRoute::recursive}) {
        const QuadResult q = laplace_density(zero3, lam, k, {12, 12}, {}, route);
        worst3 = std::max(worst3, std::abs(q.value - 1.0));
      }
  DensityOptions coarse;
  coarse.order = 4;
  coarse.cell_order = 3;
  const std::vector<double> lam4{3.0, 1.0, -1.0, -3.0};
  const double worst4 =
      std::abs(laplace_density(zero4, lam4, 1.0, {3, 3, 3}, coarse).value - 1.0);
  c.passed = worst3 <= 1e-6 && worst4 <= 1e-4;
  c.detail = "N=3 max |mass-1| " + sci(worst3) + ", N=4 |mass-1| " + sci(worst4);
  return c;
}

/// Random point of co(lambda): a Dirichlet mixture of the orbit.
std::vector<double> hull_sample(Rng& rng, const std::vector<double>& lam) {
  std::vector<double> perm(lam);
  std::sort(perm.begin(), perm.end());
  std::vector<double> z(lam.size(), 0.0);
  double total = 0.0;
  std::exponential_distribution<double> expo(1.0);
  do {
    const double w = expo(rng);
    total += w;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += w * perm[i];
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : z) v /= total;
  return z;
}

/// Point outside co(lambda): the j-th prefix sum of lambda pushed up by delta, then shuffled.
std::vector<double> outside_sample(Rng& rng, const std::vector<double>& lam) {
  const std::size_t n = lam.size();
  const std::size_t j = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
  const double delta = (lam.front() - lam.back()) * std::pow(10.0, uniform(rng, -6.0, 0.0));
  std::vector<double> z(lam);
  for (std::size_t i = 0; i < n; ++i)
    z[i] += i < j ? delta * static_cast<double>(n - j) / static_cast<double>(n)
                  : -delta * static_cast<double>(j) / static_cast<double>(n);
  std::shuffle(z.begin(), z.end(), rng);
  return z;
}

CriterionResult support(Rng& rng) {
  CriterionResult c{5, "Density support", true, "", 0.0, 0.0};
  struct Config {
    std::vector<double> lam;
    double k;
    std::function<double(std::span<const double>, std::span<const double>, double)> density;
  };
  const std::vector<Config> configs{
      {{2.0, 0.0, -2.0}, 2.0,
       [](auto l, auto z, double k) { return density_A2(l, z, k); }},
      {{1.5, 0.2, -1.7}, 0.5,
       [](auto l, auto z, double k) { return density_A2(l, z, k); }},
      {{2.0, 0.0, -2.0}, 1.0,
       [](auto l, auto z, double k) { return density_general(l, z, k); }},
      {{3.0, 1.0, -1.0, -3.0}, 1.0,
       [](auto l, auto z, double k) {
         DensityOptions o;
         o.order = 8;
         o.cell_order = 4;
         return density_general(l, z, k, o);
       }},
  };
  int nonzero_outside = 0, negative_inside = 0, evaluated = 0;
  for (const Config& cfg : configs) {
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> z = outside_sample(rng, cfg.lam);
      if (cfg.density(cfg.lam, z, cfg.k) != 0.0)
        ++nonzero_outside;
      const std::vector<double> y = hull_sample(rng, cfg.lam);
      const double v = cfg.density(cfg.lam, y, cfg.k);
      if (!(v >= 0.0)) ++negative_inside;
      evaluated += 2;
    }
  }
  c.passed = nonzero_outside == 0 && negative_inside == 0;
  c.detail = std::to_string(evaluated) + " points, " + std::to_string(nonzero_outside) +
             " nonzero outside, " + std::to_string(negative_inside) + " negative inside";
  return c;
}

CriterionResult route_equivalence(Rng& rng) {
  CriterionResult c{6, "Route equivalence", true, "", 0.0, 0.0};
  double worst = 0.0;
  for (double k : {1.0, 2.0}) {
    for (int i = 0; i < 10; ++i) {
      const std::vector<double> mu = random_chamber(rng, 3, 0.0, 1.2);
      const std::vector<double> lam = random_chamber(rng, 3, 0.3, 1.5);
      BesselParams p;
      p.k = k;
      p.tol = 1e-10;
      const double rec = bessel_recursive(mu, lam, p).value;
      const double den = bessel_via_density(mu, lam, p).value;
      worst = std::max(worst, rel_diff(den, rec));
    }
  }
  c.passed = worst <= 1e-5;
  c.detail = "max rel difference " + sci(worst) + " over 20 pairs";
  return c;
}

CriterionResult functional_equations(Rng& rng) {
  CriterionResult c{7, "Functional equations", true, "", 0.0, 0.0};
  double sym = 0.0, scal = 0.0, at_zero = 0.0;
  bool perm_exact = true;
  for (double k : {0.5, 2.0}) {
    BesselParams p;
    p.k = k;
    p.tol = 1e-11;
    auto J = [&](const std::vector<double>& a, const std::vector<double>& b) {
      return bessel_eval(a, b, p).value;
    };
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> mu = random_chamber(rng, 3, 0.3, 1.2);
      const std::vector<double> lam = random_chamber(rng, 3, 0.3, 1.5);
      const double base = J(mu, lam);
      sym = std::max(sym, rel_diff(J(lam, mu), base));
      for (double r : {0.5, 2.0}) {
        std::vector<double> rmu(mu), rlam(lam);
        for (double& v : rmu) v *= r;
        for (double& v : rlam) v *= r;
        scal = std::max(scal, rel_diff(J(rmu, lam), J(mu, rlam)));
      }
      std::vector<double> pm(mu), pl(lam);
      std::reverse(pm.begin(), pm.end());
      std::rotate(pl.begin(), pl.begin() + 1, pl.end());
      if (J(pm, lam) != base || J(mu, pl) != base || J(pm, pl) != base) perm_exact = false;
      at_zero = std::max(at_zero, std::abs(J({0.0, 0.0, 0.0}, lam) - 1.0));
    }
  }
  c.passed = sym <= 1e-5 && scal <= 1e-8 && perm_exact && at_zero <= 1e-8;
  c.detail = "symmetry " + sci(sym) + ", scaling " + sci(scal) + ", permutation " +
             (perm_exact ? "exact" : "inexact") + ", |J(0,l)-1| " + sci(at_zero);
  return c;
}

double det_ratio(const std::vector<double>& mu, const std::vector<double>& lam, double j) {
  const Eigen::Index n = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = std::exp(mu[a] * lam[b]);
  return j * vandermonde(mu) * vandermonde(lam) / m.determinant();
}

CriterionResult k1_determinant(Rng& rng) {
  CriterionResult c{8, "k=1 determinant formula", true, "", 0.0, 60.0};
  double dev2 = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::vector<double> mu = random_chamber(rng, 2, 0.1, 2.0);
    const std::vector<double> lam = random_chamber(rng, 2, 0.1, 2.0);
    dev2 = std::max(dev2, std::abs(det_ratio(mu, lam, bessel_A1(mu, lam, 1.0)) - 1.0));
  }
  std::vector<double> ratios;
  BesselParams p;
  p.k = 1.0;
  p.tol = 1e-10;
  for (int i = 0; i < 10; ++i) {
    const std::vector<double> mu = random_chamber(rng, 3, 0.3, 1.2);
    const std::vector<double> lam = random_chamber(rng, 3, 0.3, 1.5);
    ratios.push_back(det_ratio(mu, lam, bessel_eval(mu, lam, p).value));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / 10.0;
  const double spread = (*hi - *lo) / mean;
  c.passed = dev2 <= 1e-10 && spread <= 1e-5;
  c.detail = "N=2 constant deviation " + sci(dev2) + ", N=3 constant " + sci(mean) +
             " with spread " + sci(spread);
  return c;
}

CriterionResult n4_smoke() {
  CriterionResult c{9, "N=4 smoke test", true, "", 0.0, 300.0};
  BesselParams p;
  p.k = 1.0;
  const std::vector<double> lam{3.0, 1.0, -1.0, -3.0}, mu{2.0, 1.0, -1.0, -2.0};
  const double a = bessel_eval(mu, lam, p).value;
  const double b = bessel_eval(lam, mu, p).value;
  const double sym = rel_diff(a, b);
  c.passed = std::isfinite(a) && std::isfinite(b) && sym <= 1e-2;
  c.detail = "J(mu,lambda) = " + sci(a) + ", symmetry " + sci(sym);
  return c;
}

std::vector<CriterionResult> run_criteria(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::function<CriterionResult()>> jobs{
      [] { return jack_exactness(); },
      [&] { return oo_identity(rng); },
      [&] { return a1_closed_form(rng); },
      [] { return normalization(); },
      [&] { return support(rng); },
      [&] { return route_equivalence(rng); },
      [&] { return functional_equations(rng); },
      [&] { return k1_determinant(rng); },
      [] { return n4_smoke(); },
  };
  static const char* const names[] = {"Jack exactness",
                                      "Okounkov-Olshanski identity",
                                      "A1 closed form",
                                      "Density normalization",
                                      "Density support",
                                      "Route equivalence",
                                      "Functional equations",
                                      "k=1 determinant formula",
                                      "N=4 smoke test"};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = jobs[i]();
    } catch (const std::exception& e) {
      r = CriterionResult{static_cast<int>(i) + 1, names[i], false,
                          std::string("exception: ") + e.what(), 0.0, 0.0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.budget_seconds > 0.0 && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += ", over the time budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

bool AcceptanceReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

nlohmann::json to_json(const AcceptanceReport& report) {
  nlohmann::json crit = nlohmann::json::array();
  for (const CriterionResult& c : report.criteria) {
    nlohmann::json j{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    if (c.budget_seconds > 0.0) j["budget_s"] = c.budget_seconds;
    crit.push_back(std::move(j));
  }
  return {{"seed", report.seed}, {"criteria", crit}, {"passed", report.passed()}};
}

AcceptanceReport run_acceptance(std::uint64_t seed, bool check_determinism) {
  AcceptanceReport report;
  report.seed = seed;
  report.criteria = run_criteria(seed);
  if (check_determinism) {
    const auto t0 = std::chrono::steady_clock::now();
    AcceptanceReport again;
    again.seed = seed;
    again.criteria = run_criteria(seed);
    const bool same = to_json(report).dump() == to_json(again).dump();
    CriterionResult c{10, "Determinism", same,
                      same ? "repeated run is byte-identical" : "repeated run differs", 0.0, 0.0};
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.criteria.push_back(std::move(c));
  }
  return report;
}

}  // namespace gbessel
