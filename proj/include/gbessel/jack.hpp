#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "gbessel/sympoly.hpp"

namespace gbessel {

/// Jack polynomial j_lambda in N variables, monic in m_lambda, with exact
/// rational coefficients for a rational multiplicity k.
struct JackPolynomial {
  Partition index;
  int n_vars = 0;
  Rational k;
  MonomialExpansion expansion;
  Rational eigenvalue;

  SymPoly polynomial(const SymPolyLimits& limits = {}) const { return assemble(expansion, n_vars, limits); }
};

/// Same object for real k, coefficients in double precision.
struct JackPolynomialReal {
  Partition index;
  int n_vars = 0;
  double k = 0.0;
  std::map<Partition, double> expansion;
  double eigenvalue = 0.0;
};

/// Builds j_lambda by back-substitution down the dominance order: the
/// eigenvalue is the m_lambda coefficient of L_k m_lambda, and a zero pivot
/// raises DegenerateParameter. Results are cached per (lambda, N, k).
std::shared_ptr<const JackPolynomial> jack_construct(const Partition& lambda, int n_vars,
                                                     const Rational& k,
                                                     const SymPolyLimits& limits = {});
std::shared_ptr<const JackPolynomialReal> jack_construct_real(const Partition& lambda, int n_vars,
                                                              double k,
                                                              const SymPolyLimits& limits = {});

/// Matrix of L_k on the monomial basis of degree `weight`, split as A + 2k B.
/// Row mu holds the m_nu coefficients of the image of m_mu.
struct LkMatrices {
  std::vector<Partition> basis;  // lexicographically decreasing
  std::vector<std::map<int, Rational>> second_order;
  std::vector<std::map<int, Rational>> divided_difference;
};
const LkMatrices& lk_matrices(int weight, int n_vars, const SymPolyLimits& limits = {});

/// m_mu(x) by summing over the distinct rearrangements of mu.
double monomial_eval(const Partition& mu, std::span<const double> x);
Rational monomial_eval(const Partition& mu, std::span<const Rational> x);

double jack_eval(const JackPolynomial& jp, std::span<const double> x);
Rational jack_eval(const JackPolynomial& jp, std::span<const Rational> x);
double jack_eval(const JackPolynomialReal& jp, std::span<const double> x);

/// Term list of a Jack polynomial for repeated fast evaluation in double.
class JackEvaluator {
 public:
  explicit JackEvaluator(const JackPolynomial& jp);
  explicit JackEvaluator(const JackPolynomialReal& jp);
  double operator()(std::span<const double> x) const;
  int n_vars() const { return n_; }

 private:
  void add(const Partition& mu, double c);
  int n_ = 0;
  int max_pow_ = 0;
  std::vector<int> exps_;  // row-major, n_ per term
  std::vector<double> coeffs_;
};

}  // namespace gbessel
