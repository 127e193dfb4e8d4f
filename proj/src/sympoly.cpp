#include "gbessel/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbessel/errors.hpp"

namespace gbessel {

void check_limits(int weight, int n_vars, const SymPolyLimits& limits) {
  if (limits.override_limits) return;
  if (weight > limits.max_weight || n_vars > limits.max_vars)
    throw InvalidInput("symmetric polynomial size beyond guardrail (|lambda| <= " +
                       std::to_string(limits.max_weight) + ", N <= " +
                       std::to_string(limits.max_vars) + "); pass the override flag");
}

SymPoly make_sympoly_unchecked(int n, std::map<Exponent, Rational> terms) {
  SymPoly p(n);
  for (auto it = terms.begin(); it != terms.end();)
    it = (it->second == 0) ? terms.erase(it) : std::next(it);
  p.terms_ = std::move(terms);
  return p;
}

SymPoly::SymPoly(int n_vars, std::map<Exponent, Rational> terms) : n_(n_vars) {
  *this = make_sympoly_unchecked(n_vars, std::move(terms));
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(e.size()) != n_) throw InvalidInput("exponent length differs from N");
    for (const Exponent& p : distinct_permutations(e)) {
      auto it = terms_.find(p);
      if (it == terms_.end() || it->second != c)
        throw InvalidInput("polynomial is not symmetric");
    }
  }
}

int SymPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  std::map<Exponent, Rational> t = terms_;
  for (const auto& [e, c] : o.terms_) t[e] += c;
  return make_sympoly_unchecked(n_, std::move(t));
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + o * Rational(-1); }

SymPoly SymPoly::operator*(const Rational& c) const {
  std::map<Exponent, Rational> t;
  if (c != 0)
    for (const auto& [e, v] : terms_) t.emplace(e, v * c);
  return make_sympoly_unchecked(n_, std::move(t));
}

Rational SymPoly::evaluate(std::span<const Rational> x) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i) {
      Rational pw = 1;
      for (int a = 0; a < e[i]; ++a) pw *= x[i];
      term *= pw;
    }
    sum += term;
  }
  return sum;
}

double SymPoly::evaluate(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < n_; ++i) term *= std::pow(x[i], e[i]);
    sum += term;
  }
  return sum;
}

SymPoly SymPoly::drop_last_variable() const {
  std::map<Exponent, Rational> t;
  for (const auto& [e, c] : terms_)
    if (e.back() == 0) t.emplace(Exponent(e.begin(), e.end() - 1), c);
  return make_sympoly_unchecked(n_ - 1, std::move(t));
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '(' << gbessel::to_string(it->second) << ')';
    for (int i = 0; i < n_; ++i)
      if (it->first[i] > 0) {
        os << "*x" << (i + 1);
        if (it->first[i] > 1) os << '^' << it->first[i];
      }
  }
  return os.str();
}

std::vector<Exponent> distinct_permutations(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end());
  std::vector<Exponent> out;
  do {
    out.push_back(parts);
  } while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

SymPoly expand_monomial_symmetric(const Partition& lambda, int n_vars,
                                  const SymPolyLimits& limits) {
  if (lambda.length() > n_vars)
    throw InvalidInput("partition has more parts than variables");
  check_limits(lambda.weight(), n_vars, limits);
  std::map<Exponent, Rational> t;
  for (Exponent& e : distinct_permutations(lambda.padded(n_vars))) t.emplace(std::move(e), 1);
  return make_sympoly_unchecked(n_vars, std::move(t));
}

SymPoly assemble(const MonomialExpansion& expansion, int n_vars, const SymPolyLimits& limits) {
  std::map<Exponent, Rational> t;
  for (const auto& [lam, c] : expansion) {
    if (c == 0) continue;
    if (lam.length() > n_vars) throw InvalidInput("partition has more parts than variables");
    check_limits(lam.weight(), n_vars, limits);
    for (Exponent& e : distinct_permutations(lam.padded(n_vars))) t[std::move(e)] += c;
  }
  return make_sympoly_unchecked(n_vars, std::move(t));
}

MonomialExpansion to_monomial_basis(const SymPoly& p) {
  MonomialExpansion out;
  for (const auto& [e, c] : p.terms())
    if (std::is_sorted(e.begin(), e.end(), std::greater<>())) out.emplace(Partition(e), c);
  return out;
}

SymPoly apply_second_order(const SymPoly& p) {
  std::map<Exponent, Rational> t;
  for (const auto& [e, c] : p.terms()) {
    int s = 0;
    for (int a : e) s += a * (a - 1);
    if (s != 0) t[e] += c * s;
  }
  return make_sympoly_unchecked(p.n_vars(), std::move(t));
}

namespace {

/// x_i^2 d/dx_i applied to p (not symmetric on its own).
std::map<Exponent, Rational> euler_square(const SymPoly& p, int i) {
  std::map<Exponent, Rational> t;
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] += 1;
    t[f] += c * e[i];
  }
  return t;
}

/// Exact quotient of `num` by (x_i - x_j), by synthetic division in x_i.
std::map<Exponent, Rational> divide_by_difference(std::map<Exponent, Rational> num, int i, int j) {
  std::map<Exponent, Rational> quot;
  for (;;) {
    auto lead = num.end();
    for (auto it = num.begin(); it != num.end(); ++it)
      if (it->second != 0 && it->first[i] > 0 && (lead == num.end() || it->first[i] > lead->first[i]))
        lead = it;
    if (lead == num.end()) break;
    const Rational c = lead->second;
    Exponent q = lead->first;
    q[i] -= 1;
    quot[q] += c;
    num.erase(lead);
    Exponent carry = q;
    carry[j] += 1;
    num[carry] += c;
  }
  for (const auto& [e, c] : num)
    if (c != 0)
      throw InternalError("divided difference left a nonzero remainder; input is not symmetric");
  return quot;
}

}  // namespace

SymPoly apply_divided_difference(const SymPoly& p) {
  const int n = p.n_vars();
  std::map<Exponent, Rational> t;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::map<Exponent, Rational> num = euler_square(p, i);
      for (const auto& [e, c] : euler_square(p, j)) num[e] -= c;
      for (auto it = num.begin(); it != num.end();)
        it = (it->second == 0) ? num.erase(it) : std::next(it);
      for (const auto& [e, c] : divide_by_difference(std::move(num), i, j)) t[e] += c;
    }
  return make_sympoly_unchecked(n, std::move(t));
}

SymPoly apply_Lk(const SymPoly& p, const Rational& k) {
  return apply_second_order(p) + apply_divided_difference(p) * (Rational(2) * k);
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace gbessel
