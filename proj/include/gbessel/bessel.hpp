#pragma once

#include <span>
#include <string>
#include <vector>

#include "gbessel/core_types.hpp"
#include "gbessel/density.hpp"

namespace gbessel {

enum class Method { automatic, recursive, density, closed_form };

std::string to_string(Method m);
/// Throws InvalidInput for unknown names.
Method parse_method(const std::string& name);

struct BesselParams {
  double k = 1.0;
  /// Gauss-Jacobi points per coordinate of the outermost box; 0 picks the
  /// default (64 for N <= 3, 16 for N = 4, 8 beyond).
  int quad_order = 0;
  /// Points per coordinate for the inner recursion levels; 0 picks the default.
  int inner_order = 0;
  /// Relative tolerance for order doubling at the outermost level.
  double tol = 1e-8;
  int max_order = 256;
  Method method = Method::automatic;
  /// Replace inputs by their projection onto the zero-sum hyperplane.
  bool project = false;
  /// Permit N >= 5 (cost grows like order^(N(N-1)/2)).
  bool allow_large_n = false;
  /// Per-cell orders for the density route; empty picks the default.
  std::vector<int> density_orders;
  DensityOptions density;
  Tolerances tolerances;
};

struct BesselResult {
  double value = 0.0;
  double err_estimate = 0.0;
  Method method = Method::automatic;
  long evaluations = 0;
  int quad_order = 0;
};

/// Normalized modified Bessel function
///   Gamma(k+1/2) sum_n (z/2)^(2n) / (n! Gamma(n+k+1/2)),
/// summed until a term drops below 1e-17 of the partial sum. Raises
/// OverflowError for |z| > 700.
double bessel_modified(double k, double z);

/// J_{k,2}(mu, lambda) for zero-sum pairs: bessel_modified(k, 2 mu_1 lambda_1).
double bessel_A1(std::span<const double> mu, std::span<const double> lambda, double k);

/// Dimension recursion
///   J_N(mu, lambda) = Gamma(Nk)/(V(lambda)^(2k-1) Gamma(k)^N)
///     int_box exp(|mubar| |nu|/(N-1)) J_{N-1}(pi(mubar), pi(nu)) V(nu) Pi(lambda, nu) dnu
/// with mu, lambda sorted decreasingly and mubar_i = mu_i - mu_N. The N = 2 level
/// inside the recursion uses the closed form; at the top level N = 2 runs
/// through the same quadrature. The outer order doubles until the difference
/// from the half-order value is within tol.
BesselResult bessel_recursive(std::span<const double> mu, std::span<const double> lambda,
                              const BesselParams& params);

/// Laplace integral of the density over co(lambda).
BesselResult bessel_via_density(std::span<const double> mu, std::span<const double> lambda,
                                const BesselParams& params);

/// Dispatch: N = 2 closed form, otherwise the recursion, unless params.method
/// asks for a specific route.
BesselResult bessel_eval(std::span<const double> mu, std::span<const double> lambda,
                         const BesselParams& params);

/// Validated, canonical (decreasingly sorted, zero-sum) copies of the inputs.
struct CanonicalPair {
  std::vector<double> mu;
  std::vector<double> lambda;
};
CanonicalPair canonicalize(std::span<const double> mu, std::span<const double> lambda,
                           const BesselParams& params);

}  // namespace gbessel
