#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gbessel/core_types.hpp"

namespace gbessel {

using Rational = mpq_class;

/// Exponent multi-index of a monomial x_1^a_1 ... x_N^a_N.
using Exponent = std::vector<int>;

/// Coefficients of a symmetric polynomial in the monomial basis m_lambda.
using MonomialExpansion = std::map<Partition, Rational>;

/// Size limits for dense orbit expansion; the defaults refuse |lambda| > 12 or N > 6.
struct SymPolyLimits {
  int max_weight = 12;
  int max_vars = 6;
  bool override_limits = false;
};

void check_limits(int weight, int n_vars, const SymPolyLimits& limits);

/// Exact symmetric polynomial in N variables with rational coefficients, stored
/// term by term. Every stored term has a nonzero coefficient and the term set
/// is closed under permutation of the variables.
class SymPoly {
 public:
  explicit SymPoly(int n_vars) : n_(n_vars) {}
  /// Validates S_N-closure; throws InvalidInput otherwise.
  SymPoly(int n_vars, std::map<Exponent, Rational> terms);

  int n_vars() const { return n_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;

  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator*(const Rational& c) const;
  friend bool operator==(const SymPoly&, const SymPoly&) = default;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  /// Substitutes x_N = 0, giving a symmetric polynomial in N-1 variables.
  SymPoly drop_last_variable() const;

  std::string to_string() const;

 private:
  int n_;
  std::map<Exponent, Rational> terms_;
  friend SymPoly make_sympoly_unchecked(int, std::map<Exponent, Rational>);
};

/// m_lambda in `n_vars` variables: each distinct rearrangement of lambda once.
SymPoly expand_monomial_symmetric(const Partition& lambda, int n_vars,
                                  const SymPolyLimits& limits = {});

/// Sum_lambda c_lambda m_lambda.
SymPoly assemble(const MonomialExpansion& expansion, int n_vars,
                 const SymPolyLimits& limits = {});

/// Reads off the m_lambda coefficients of a symmetric polynomial.
MonomialExpansion to_monomial_basis(const SymPoly& p);

/// The two k-independent pieces of L_k = second_order + 2k * divided_difference:
///   second_order       = sum_i x_i^2 d^2/dx_i^2
///   divided_difference = sum_{i<j} (x_i^2 d_i - x_j^2 d_j) / (x_i - x_j)
SymPoly apply_second_order(const SymPoly& p);
SymPoly apply_divided_difference(const SymPoly& p);

/// L_k p computed exactly; each divided difference is an exact polynomial
/// division, and a nonzero remainder raises InternalError.
SymPoly apply_Lk(const SymPoly& p, const Rational& k);

/// Distinct permutations of `parts`, in lexicographic order.
std::vector<Exponent> distinct_permutations(std::vector<int> parts);

/// Canonical "p/q" (or "p") text of a rational.
std::string to_string(const Rational& q);

}  // namespace gbessel
