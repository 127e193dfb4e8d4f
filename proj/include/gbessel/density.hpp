#pragma once

#include <span>
#include <vector>

#include "gbessel/quadrature.hpp"

namespace gbessel {

// Naming. Functions here are keyed by the Bessel dimension N (the number of
// coordinates of lambda and Z); the density of J_{k,N} has N-1 free coordinates.
//   density_A1(lambda, Z)      N = 2, closed form Beta-type weight
//   density_A2(lambda, Z)      N = 3, explicit one-dimensional z-integral
//   density_general(lambda, Z) N >= 3, recursion over N-2 interlacing coordinates
// Z is passed with all N coordinates (zero sum); densities are with respect to
// dZ_1 ... dZ_{N-1}.

struct DensityOptions {
  /// Gauss-Jacobi order for one-dimensional inner integrals.
  int order = 64;
  /// Gauss-Legendre order per cell for multi-dimensional inner integrals.
  int cell_order = 8;
};

/// Closed support test: Z lies in the convex hull of the orbit of lambda.
bool support_predicate(std::span<const double> lambda, std::span<const double> Z);

double density_A1(std::span<const double> lambda, std::span<const double> Z, double k);

/// Explicit type A_2 density:
///   Gamma(2k)Gamma(3k)/(Gamma(k)^5 V(lambda)^(2k-1))
///     int_lo^hi (2z)^(2-2k) (z^2-y^2)^(k-1) prod_i |(lambda_i-x)^2-z^2|^(k-1) dz
/// with x = (Z_1+Z_2)/2, y = (Z_1-Z_2)/2, lo = max(|y|, |x-lambda_2|) and
/// hi = min(x-lambda_3, lambda_1-x).
double density_A2(std::span<const double> lambda, std::span<const double> Z, double k,
                  const DensityOptions& opts = {});

/// Recursive density: with s = Z_1+...+Z_{N-1}, w = (Z_i - s/(N-1))_{i<N} and
/// theta = x + s/(N-1),
///   delta_N(lambda, Z) = Gamma(Nk)/(V(lambda)^(2k-1) Gamma(k)^N)
///     int delta_{N-1}(x, w) V(x) Pi(lambda, theta) Omega(lambda, theta) dx
/// over zero-sum x in R^(N-1); Omega restricts theta to the interlacing box.
double density_general(std::span<const double> lambda, std::span<const double> Z, double k,
                       const DensityOptions& opts = {});

/// Hull of the orbit of lambda in the coordinates Z_1..Z_{N-1} (Z_N = -sum),
/// and the hyperplanes sum_{i in I} Z_i = sum_{j in J} lambda_j, |I| = |J|,
/// across which the density can fail to be smooth.
std::vector<HalfSpace> hull_constraints(std::span<const double> lambda_desc);
std::vector<HalfSpace> density_walls(std::span<const double> lambda_desc);

enum class DensityRoute { explicit_A2, recursive };

/// int exp(<mu, Z>) delta(lambda, Z) dZ over co(lambda), each coordinate split
/// at the density walls and integrated with `orders` Gauss-Legendre points per
/// cell. With mu = 0 this is the total mass of the density.
QuadResult laplace_density(std::span<const double> mu, std::span<const double> lambda, double k,
                           const std::vector<int>& orders, const DensityOptions& opts = {},
                           DensityRoute route = DensityRoute::recursive);

}  // namespace gbessel
