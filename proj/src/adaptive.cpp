#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gbessel/errors.hpp"
#include "gbessel/quadrature.hpp"

namespace gbessel {

namespace {

struct Piece {
  double value;
  double err;
};

class Adaptive {
 public:
  Adaptive(const std::function<double(double)>& f, double lo, double hi, const AdaptiveOptions& o)
      : f_(f), lo_(lo), hi_(hi), o_(o) {}

  /// f times whichever endpoint powers are not folded into the rule on [a,b].
  double full(double t, bool fold_lo, bool fold_hi) const {
    double v = f_(t);
    if (o_.exponent_lo != 0.0 && !fold_lo) v *= std::pow(t - lo_, o_.exponent_lo);
    if (o_.exponent_hi != 0.0 && !fold_hi) v *= std::pow(hi_ - t, o_.exponent_hi);
    return v;
  }

  double rule_sum(int n, double a, double b) {
    const bool fold_lo = (a == lo_) && o_.exponent_lo != 0.0;
    const bool fold_hi = (b == hi_) && o_.exponent_hi != 0.0;
    const JacobiRule& r = gauss_jacobi(n, fold_hi ? o_.exponent_hi : 0.0,
                                       fold_lo ? o_.exponent_lo : 0.0);
    const MappedRule m = map_to_interval(r, a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
      const double v = full(m.nodes[i], fold_lo, fold_hi);
      if (!std::isfinite(v))
        throw EvaluationError("adaptive integrand is not finite at t = " + std::to_string(m.nodes[i]));
      s += m.weights[i] * v;
    }
    evaluations += static_cast<long>(m.nodes.size());
    return s;
  }

  Piece piece(double a, double b, int depth, double coarse) {
    const double fine = rule_sum(2 * o_.order, a, b);
    const double err = std::abs(fine - coarse);
    if (depth >= o_.max_depth || err <= std::max(o_.rel_tol * std::abs(fine), o_.abs_tol) ||
        !(b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))))
      return {fine, err};
    const double mid = 0.5 * (a + b);
    const Piece left = piece(a, mid, depth + 1, rule_sum(o_.order, a, mid));
    const Piece right = piece(mid, b, depth + 1, rule_sum(o_.order, mid, b));
    return {left.value + right.value, left.err + right.err};
  }

  long evaluations = 0;

 private:
  const std::function<double(double)>& f_;
  double lo_, hi_;
  const AdaptiveOptions& o_;
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const AdaptiveOptions& opts) {
  if (!(lo <= hi)) throw InvalidInput("integrate_adaptive: lo must not exceed hi");
  if (opts.order < 1) throw InvalidInput("integrate_adaptive: order must be positive");
  QuadResult out;
  if (lo == hi) return out;
  std::vector<double> cuts{lo};
  std::vector<double> bps = opts.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double b : bps)
    if (b > cuts.back() && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  Adaptive ad(f, lo, hi, opts);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Piece p = ad.piece(cuts[i], cuts[i + 1], 0, ad.rule_sum(opts.order, cuts[i], cuts[i + 1]));
    out.value += p.value;
    out.err_estimate += p.err;
  }
  out.evaluations = ad.evaluations;
  return out;
}

}  // namespace gbessel
