#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gbessel/jack.hpp"

namespace gbessel {

/// U(mu) = prod_{j=1}^{N-1} B(mu_j + (N-j) k, k), via log-Gamma.
double U_coeff(const Partition& mu, int n_vars, double k);
double log_U_coeff(const Partition& mu, int n_vars, double k);

/// Euler Beta function B(a, b) for a, b > 0.
double beta_fn(double a, double b);

/// V(x) = prod_{i<j} (x_i - x_j).
double vandermonde(std::span<const double> x);
/// log V(x) for a strictly decreasing vector.
double log_vandermonde(std::span<const double> x);

/// Pi(lambda, nu) = prod_{i<=j} (lambda_i - nu_j)^(k-1) prod_{i>j} (nu_j - lambda_i)^(k-1)
/// for nu interlacing lambda. Raises SingularEvaluation on the boundary when k < 1.
double Pi_kernel(std::span<const double> lambda, std::span<const double> nu, double k);

/// log of Pi without the factors (lambda_j - nu_j) and (nu_j - lambda_{j+1}), which
/// the Gauss-Jacobi weights absorb.
double log_Pi_residual(std::span<const double> lambda, std::span<const double> nu, double k);

/// Right-hand side of the branching integral
///   j_mu(lambda) = 1/(U(mu) V(lambda)^(2k-1)) int_box j_mu(nu) V(nu) Pi(lambda, nu) dnu
/// by tensor Gauss-Jacobi quadrature with alpha = beta = k-1 on each coordinate.
/// `exact_k` selects the exact Jack coefficients; otherwise they are built in double.
double oo_rhs(const Partition& mu, std::span<const double> lambda, double k, int order,
              const std::optional<Rational>& exact_k = std::nullopt);

struct OOReport {
  Partition mu;
  std::vector<double> lambda;
  double k = 0.0;
  int quad_order = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Compares oo_rhs with j_mu(lambda), evaluated from exact coefficients at the
/// exact binary value of lambda when `exact_k` is given.
OOReport verify_oo(const Partition& mu, std::span<const double> lambda, double k, int order,
                   double tol, const std::optional<Rational>& exact_k = std::nullopt);

}  // namespace gbessel
