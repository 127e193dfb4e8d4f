#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace gbessel {

/// Gauss rule for the weight (1-t)^alpha (1+t)^beta on [-1,1].
struct JacobiRule {
  int order = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;    // increasing
  std::vector<double> weights;
};

/// Golub-Welsch eigenvalues of the Jacobi matrix, Newton-polished against the
/// three-term recurrence, with Christoffel weights. Rules are cached; the
/// returned reference stays valid for the life of the program.
const JacobiRule& gauss_jacobi(int n, double alpha, double beta);

/// 2^(alpha+beta+1) B(alpha+1, beta+1).
double jacobi_mass(double alpha, double beta);

/// Nodes and weights after the affine map [-1,1] -> [lo,hi]; integrates
/// f(t) (hi-t)^alpha (t-lo)^beta dt. Empty when lo == hi.
struct MappedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
MappedRule map_to_interval(const JacobiRule& rule, double lo, double hi);

/// Product of intervals [lo_j, hi_j].
struct Box {
  std::vector<std::pair<double, double>> intervals;
  std::size_t dim() const { return intervals.size(); }
};

/// Interlacing box [lambda_{j+1}, lambda_j], j = 0..N-2, of a decreasing vector.
Box interlacing_box(std::span<const double> lambda_desc);

using BoxIntegrand = std::function<double(std::span<const double>)>;

/// Tensor-product rule over `box`, one Jacobi rule per coordinate. The sum over
/// each outer node is formed separately and the partial sums are added in node
/// order, so the serial and parallel versions agree bit for bit. A non-finite
/// integrand value raises EvaluationError naming the node.
double integrate_box_serial(const BoxIntegrand& f, const Box& box,
                            std::span<const JacobiRule* const> rules);
double integrate_box_parallel(const BoxIntegrand& f, const Box& box,
                              std::span<const JacobiRule* const> rules);
inline double integrate_box(const BoxIntegrand& f, const Box& box,
                            std::span<const JacobiRule* const> rules) {
  return integrate_box_parallel(f, box, rules);
}

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evaluations = 0;
};

/// One-dimensional adaptive Gauss integration of f(t) (t-lo)^e_lo (hi-t)^e_hi.
/// `f` is the smooth residual; the endpoint powers are folded into Jacobi
/// weights on the pieces that touch lo or hi and multiplied in elsewhere.
struct AdaptiveOptions {
  int order = 16;
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_depth = 12;
  double exponent_lo = 0.0;
  double exponent_hi = 0.0;
  std::vector<double> breakpoints;
};
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const AdaptiveOptions& opts = {});

/// Half-space a.t <= b.
struct HalfSpace {
  std::vector<double> a;
  double b = 0.0;
};

/// Integrand for integrate_polytope: called with the point t and the range
/// [lo, hi] of the innermost coordinate at the current outer coordinates.
using PolytopeIntegrand = std::function<double(std::span<const double> t, double lo, double hi)>;

struct PolytopeOptions {
  /// Gauss-Legendre order per piece, outermost coordinate first; the last entry
  /// is reused for deeper levels.
  std::vector<int> orders{8};
  /// Exponent e of the innermost factors (t-lo)^e (hi-t)^e; when nonzero the
  /// integrand must return the residual with those factors removed.
  double inner_exponent = 0.0;
  /// Relative tolerance for feasibility tests and breakpoint merging.
  double geom_tol = 1e-12;
};

/// Nested integration over the bounded polytope {t : a.t <= b}. Each coordinate
/// range is split at the projections of the vertices of the polytope cut by
/// the `kinks` hyperplanes (a.t = b), so integrands that are smooth on every
/// cell of that arrangement are integrated at Gauss accuracy.
QuadResult integrate_polytope(const PolytopeIntegrand& f, int dim,
                              const std::vector<HalfSpace>& constraints,
                              const std::vector<HalfSpace>& kinks,
                              const PolytopeOptions& opts = {});

}  // namespace gbessel
