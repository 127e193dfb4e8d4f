#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "gbessel/errors.hpp"
#include "gbessel/quadrature.hpp"

namespace gbessel {

namespace {

/// Hyperplanes restricted to the trailing coordinates: a has r entries.
struct Plane {
  std::vector<double> a;
  double b;
};

double norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

/// Solves the r x r system in place; false when (numerically) singular.
bool solve(int r, std::vector<double>& m, std::vector<double>& rhs) {
  for (int c = 0; c < r; ++c) {
    int piv = c;
    for (int i = c + 1; i < r; ++i)
      if (std::abs(m[i * r + c]) > std::abs(m[piv * r + c])) piv = i;
    if (std::abs(m[piv * r + c]) < 1e-12) return false;
    if (piv != c) {
      for (int j = 0; j < r; ++j) std::swap(m[c * r + j], m[piv * r + j]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (int i = c + 1; i < r; ++i) {
      const double f = m[i * r + c] / m[c * r + c];
      if (f == 0.0) continue;
      for (int j = c; j < r; ++j) m[i * r + j] -= f * m[c * r + j];
      rhs[i] -= f * rhs[c];
    }
  }
  for (int c = r - 1; c >= 0; --c) {
    double s = rhs[c];
    for (int j = c + 1; j < r; ++j) s -= m[c * r + j] * rhs[j];
    rhs[c] = s / m[c * r + c];
  }
  return true;
}

std::vector<Plane> substitute(const std::vector<Plane>& planes, double v, bool drop_free) {
  std::vector<Plane> out;
  out.reserve(planes.size());
  for (const Plane& p : planes) {
    Plane q{std::vector<double>(p.a.begin() + 1, p.a.end()), p.b - p.a[0] * v};
    if (drop_free && norm(q.a) == 0.0) continue;
    out.push_back(std::move(q));
  }
  return out;
}

class Nested {
 public:
  Nested(const PolytopeIntegrand& f, int dim, const PolytopeOptions& o) : f_(f), dim_(dim), o_(o) {}

  int order_at(int level) const {
    const auto& v = o_.orders;
    return v[std::min<std::size_t>(level, v.size() - 1)];
  }

  /// Coordinate range and breakpoints of the first remaining coordinate.
  bool cuts(const std::vector<Plane>& cons, const std::vector<Plane>& kinks, double scale,
            std::vector<double>& out) const {
    const int r = static_cast<int>(cons.front().a.size());
    const double eps = o_.geom_tol * scale;
    out.clear();
    if (r == 1) {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (const Plane& p : cons) {
        const double a = p.a[0];
        if (std::abs(a) <= 1e-14) {
          if (p.b < -eps) return false;
        } else if (a > 0) {
          hi = std::min(hi, p.b / a);
        } else {
          lo = std::max(lo, p.b / a);
        }
      }
      if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return false;
      out.push_back(lo);
      for (const Plane& k : kinks)
        if (std::abs(k.a[0]) > 1e-14) {
          const double t = k.b / k.a[0];
          if (t > lo && t < hi) out.push_back(t);
        }
      out.push_back(hi);
      finish(out);
      return out.size() >= 2;
    }

    const int nc = static_cast<int>(cons.size());
    std::vector<const Plane*> all;
    for (const Plane& p : cons) all.push_back(&p);
    for (const Plane& p : kinks) all.push_back(&p);
    const int m = static_cast<int>(all.size());
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    std::vector<double> mat(r * r), rhs(r);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    if (m < r) return false;
    for (;;) {
      for (int i = 0; i < r; ++i) {
        const Plane& p = *all[idx[i]];
        for (int j = 0; j < r; ++j) mat[i * r + j] = p.a[j] / norm_of(p);
        rhs[i] = p.b / norm_of(p);
      }
      if (solve(r, mat, rhs)) {
        bool ok = true;
        for (int c = 0; c < nc && ok; ++c) {
          double s = 0.0;
          for (int j = 0; j < r; ++j) s += cons[c].a[j] * rhs[j];
          ok = s <= cons[c].b + eps * std::max(norm(cons[c].a), 1.0);
        }
        if (ok) {
          out.push_back(rhs[0]);
          lo = std::min(lo, rhs[0]);
          hi = std::max(hi, rhs[0]);
        }
      }
      int i = r - 1;
      while (i >= 0 && idx[i] == m - r + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!(lo < hi)) return false;
    finish(out);
    return out.size() >= 2;
  }

  static double norm_of(const Plane& p) {
    const double n = norm(p.a);
    return n > 0.0 ? n : 1.0;
  }

  void finish(std::vector<double>& v) const {
    std::sort(v.begin(), v.end());
    const double lo = v.front(), hi = v.back();
    const double tol = o_.geom_tol * std::max({std::abs(lo), std::abs(hi), hi - lo, 1e-300}) * 16.0;
    std::vector<double> out{lo};
    for (double x : v)
      if (x - out.back() > tol && hi - x > tol) out.push_back(x);
    if (hi - out.back() > tol) out.push_back(hi);
    else out.back() = hi;
    v = std::move(out);
  }

  double level(int l, std::vector<double>& t, const std::vector<Plane>& cons,
               const std::vector<Plane>& kinks, double scale, long& evals) const {
    std::vector<double> bp;
    if (!cuts(cons, kinks, scale, bp)) return 0.0;
    const bool inner = (l == dim_ - 1);
    const double e = inner ? o_.inner_exponent : 0.0;
    const double lo = bp.front(), hi = bp.back();
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
      const double a = bp[p], b = bp[p + 1];
      const bool fold_lo = (e != 0.0 && p == 0);
      const bool fold_hi = (e != 0.0 && p + 2 == bp.size());
      const JacobiRule& rule = gauss_jacobi(order_at(l), fold_hi ? e : 0.0, fold_lo ? e : 0.0);
      const MappedRule mr = map_to_interval(rule, a, b);
      for (std::size_t i = 0; i < mr.nodes.size(); ++i) {
        t[l] = mr.nodes[i];
        double v;
        if (inner) {
          v = f_(t, lo, hi);
          ++evals;
          if (e != 0.0 && !fold_lo) v *= std::pow(t[l] - lo, e);
          if (e != 0.0 && !fold_hi) v *= std::pow(hi - t[l], e);
          if (!std::isfinite(v))
            throw EvaluationError("polytope integrand is not finite at coordinate " +
                                  std::to_string(t[l]));
        } else {
          v = level(l + 1, t, substitute(cons, t[l], false), substitute(kinks, t[l], true), scale,
                    evals);
        }
        total += mr.weights[i] * v;
      }
    }
    return total;
  }

  QuadResult run(const std::vector<Plane>& cons, const std::vector<Plane>& kinks, double scale) const {
    QuadResult res;
    std::vector<double> bp;
    if (!cuts(cons, kinks, scale, bp)) return res;
    if (dim_ == 1) {
      std::vector<double> t(1);
      long evals = 0;
      res.value = level(0, t, cons, kinks, scale, evals);
      res.evaluations = evals;
      return res;
    }
    struct Node {
      double t, w;
    };
    std::vector<Node> nodes;
    const JacobiRule& rule = gauss_jacobi(order_at(0), 0.0, 0.0);
    for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
      const MappedRule mr = map_to_interval(rule, bp[p], bp[p + 1]);
      for (std::size_t i = 0; i < mr.nodes.size(); ++i) nodes.push_back({mr.nodes[i], mr.weights[i]});
    }
    const long n = static_cast<long>(nodes.size());
    std::vector<double> parts(n);
    std::vector<long> counts(n, 0);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        std::vector<double> t(dim_);
        t[0] = nodes[i].t;
        parts[i] = nodes[i].w * level(1, t, substitute(cons, t[0], false),
                                      substitute(kinks, t[0], true), scale, counts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (long i = 0; i < n; ++i) {
      res.value += parts[i];
      res.evaluations += counts[i];
    }
    return res;
  }

 private:
  const PolytopeIntegrand& f_;
  int dim_;
  const PolytopeOptions& o_;
};

}  // namespace

QuadResult integrate_polytope(const PolytopeIntegrand& f, int dim,
                              const std::vector<HalfSpace>& constraints,
                              const std::vector<HalfSpace>& kinks, const PolytopeOptions& opts) {
  if (dim < 1) throw InvalidInput("integrate_polytope: dimension must be positive");
  if (opts.orders.empty()) throw InvalidInput("integrate_polytope: no quadrature order given");
  if (constraints.empty()) throw InvalidInput("integrate_polytope: the polytope is unbounded");
  std::vector<Plane> cons, kk;
  double scale = 1.0;
  for (const HalfSpace& h : constraints) {
    if (static_cast<int>(h.a.size()) != dim)
      throw InvalidInput("integrate_polytope: constraint dimension mismatch");
    cons.push_back({h.a, h.b});
    const double n = norm(h.a);
    if (n > 0.0) scale = std::max(scale, std::abs(h.b) / n);
  }
  for (const HalfSpace& h : kinks) {
    if (static_cast<int>(h.a.size()) != dim)
      throw InvalidInput("integrate_polytope: kink dimension mismatch");
    if (norm(h.a) > 0.0) kk.push_back({h.a, h.b});
  }
  return Nested(f, dim, opts).run(cons, kk, scale);
}

}  // namespace gbessel
