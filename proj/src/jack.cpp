#include "gbessel/jack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "gbessel/errors.hpp"

namespace gbessel {

namespace {

std::map<int, Rational> row_of(const SymPoly& image, const std::map<Partition, int>& pos) {
  std::map<int, Rational> row;
  for (const auto& [nu, c] : to_monomial_basis(image)) {
    auto it = pos.find(nu);
    if (it == pos.end()) throw InternalError("L_k left the homogeneous component");
    row.emplace(it->second, c);
  }
  return row;
}

template <class T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>)
    return q;
  else
    return q.get_d();
}

template <class T>
bool is_zero(const T& v) {
  return v == 0;
}

/// Back-substitution shared by the exact and floating-point constructions.
template <class T>
std::pair<std::vector<std::pair<Partition, T>>, T> solve_jack(const Partition& lambda, int n_vars,
                                                              const T& k,
                                                              const SymPolyLimits& limits) {
  if (lambda.length() > n_vars)
    throw InvalidInput("partition has more parts than variables");
  if (!(k > 0)) throw InvalidInput("multiplicity k must be positive");
  const LkMatrices& mats = lk_matrices(lambda.weight(), n_vars, limits);

  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(mats.basis.size()); ++i)
    if (dominance_leq(mats.basis[i], lambda)) order.push_back(i);
  if (order.empty() || mats.basis[order.front()] != lambda)
    throw InternalError("dominance order does not start at lambda");

  const T two_k = T(2) * k;
  auto coeff = [&](int mu, int nu) {
    T c = T(0);
    if (auto it = mats.second_order[mu].find(nu); it != mats.second_order[mu].end())
      c += convert<T>(it->second);
    if (auto it = mats.divided_difference[mu].find(nu); it != mats.divided_difference[mu].end())
      c += two_k * convert<T>(it->second);
    return c;
  };

  const T eigenvalue = coeff(order.front(), order.front());
  std::vector<T> a(order.size(), T(0));
  a[0] = T(1);
  for (std::size_t t = 1; t < order.size(); ++t) {
    T rhs = T(0);
    for (std::size_t s = 0; s < t; ++s)
      if (!is_zero(a[s])) rhs += a[s] * coeff(order[s], order[t]);
    const T pivot = eigenvalue - coeff(order[t], order[t]);
    if (is_zero(pivot))
      throw DegenerateParameter("eigenvalue collision while building the Jack polynomial");
    a[t] = rhs / pivot;
  }

  std::vector<std::pair<Partition, T>> out;
  for (std::size_t t = 0; t < order.size(); ++t)
    if (!is_zero(a[t])) out.emplace_back(mats.basis[order[t]], a[t]);
  return {std::move(out), eigenvalue};
}

using ExactKey = std::tuple<std::vector<int>, int, std::string>;
using RealKey = std::tuple<std::vector<int>, int, std::uint64_t>;

std::shared_mutex g_lk_mutex;
std::map<std::pair<int, int>, LkMatrices> g_lk_cache;

std::shared_mutex g_exact_mutex;
std::map<ExactKey, std::shared_ptr<const JackPolynomial>> g_exact_cache;

std::shared_mutex g_real_mutex;
std::map<RealKey, std::shared_ptr<const JackPolynomialReal>> g_real_cache;

template <class Map, class Key, class Make>
auto cached(std::shared_mutex& mu, Map& cache, const Key& key, Make make) {
  {
    std::shared_lock lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto value = make();
  std::unique_lock lock(mu);
  return cache.emplace(key, std::move(value)).first->second;
}

template <class T>
T ipow(T base, int e) {
  T r = T(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

const LkMatrices& lk_matrices(int weight, int n_vars, const SymPolyLimits& limits) {
  check_limits(weight, n_vars, limits);
  const auto key = std::make_pair(weight, n_vars);
  {
    std::shared_lock lock(g_lk_mutex);
    if (auto it = g_lk_cache.find(key); it != g_lk_cache.end()) return it->second;
  }
  LkMatrices m;
  m.basis = partitions_of(weight, n_vars);
  std::map<Partition, int> pos;
  for (int i = 0; i < static_cast<int>(m.basis.size()); ++i) pos.emplace(m.basis[i], i);
  for (const Partition& mu : m.basis) {
    const SymPoly p = expand_monomial_symmetric(mu, n_vars, limits);
    m.second_order.push_back(row_of(apply_second_order(p), pos));
    m.divided_difference.push_back(row_of(apply_divided_difference(p), pos));
  }
  std::unique_lock lock(g_lk_mutex);
  return g_lk_cache.emplace(key, std::move(m)).first->second;
}

std::shared_ptr<const JackPolynomial> jack_construct(const Partition& lambda, int n_vars,
                                                     const Rational& k,
                                                     const SymPolyLimits& limits) {
  ExactKey key{lambda.parts(), n_vars, to_string(k)};
  return cached(g_exact_mutex, g_exact_cache, key, [&] {
    auto [coeffs, eigenvalue] = solve_jack<Rational>(lambda, n_vars, k, limits);
    auto jp = std::make_shared<JackPolynomial>();
    jp->index = lambda;
    jp->n_vars = n_vars;
    jp->k = k;
    jp->eigenvalue = eigenvalue;
    for (auto& [mu, c] : coeffs) jp->expansion.emplace(mu, c);
    return std::shared_ptr<const JackPolynomial>(std::move(jp));
  });
}

std::shared_ptr<const JackPolynomialReal> jack_construct_real(const Partition& lambda, int n_vars,
                                                              double k,
                                                              const SymPolyLimits& limits) {
  RealKey key{lambda.parts(), n_vars, std::bit_cast<std::uint64_t>(k)};
  return cached(g_real_mutex, g_real_cache, key, [&] {
    auto [coeffs, eigenvalue] = solve_jack<double>(lambda, n_vars, k, limits);
    auto jp = std::make_shared<JackPolynomialReal>();
    jp->index = lambda;
    jp->n_vars = n_vars;
    jp->k = k;
    jp->eigenvalue = eigenvalue;
    for (auto& [mu, c] : coeffs) jp->expansion.emplace(mu, c);
    return std::shared_ptr<const JackPolynomialReal>(std::move(jp));
  });
}

double monomial_eval(const Partition& mu, std::span<const double> x) {
  double sum = 0.0;
  for (const Exponent& e : distinct_permutations(mu.padded(x.size()))) {
    double t = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) t *= ipow(x[i], e[i]);
    sum += t;
  }
  return sum;
}

Rational monomial_eval(const Partition& mu, std::span<const Rational> x) {
  Rational sum = 0;
  for (const Exponent& e : distinct_permutations(mu.padded(x.size()))) {
    Rational t = 1;
    for (std::size_t i = 0; i < x.size(); ++i) t *= ipow(x[i], e[i]);
    sum += t;
  }
  return sum;
}

double jack_eval(const JackPolynomial& jp, std::span<const double> x) {
  return JackEvaluator(jp)(x);
}

Rational jack_eval(const JackPolynomial& jp, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != jp.n_vars) throw InvalidInput("point dimension differs from N");
  Rational sum = 0;
  for (const auto& [mu, c] : jp.expansion) sum += c * monomial_eval(mu, x);
  return sum;
}

double jack_eval(const JackPolynomialReal& jp, std::span<const double> x) {
  return JackEvaluator(jp)(x);
}

JackEvaluator::JackEvaluator(const JackPolynomial& jp) : n_(jp.n_vars) {
  for (const auto& [mu, c] : jp.expansion) add(mu, c.get_d());
}

JackEvaluator::JackEvaluator(const JackPolynomialReal& jp) : n_(jp.n_vars) {
  for (const auto& [mu, c] : jp.expansion) add(mu, c);
}

void JackEvaluator::add(const Partition& mu, double c) {
  for (const Exponent& e : distinct_permutations(mu.padded(n_))) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coeffs_.push_back(c);
    max_pow_ = std::max(max_pow_, mu.part(0));
  }
}

double JackEvaluator::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidInput("point dimension differs from N");
  const int stride = max_pow_ + 1;
  std::vector<double> pw(static_cast<std::size_t>(n_ * stride));
  for (int i = 0; i < n_; ++i) {
    pw[i * stride] = 1.0;
    for (int p = 1; p <= max_pow_; ++p) pw[i * stride + p] = pw[i * stride + p - 1] * x[i];
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const int* e = &exps_[t * n_];
    for (int i = 0; i < n_; ++i) term *= pw[i * stride + e[i]];
    sum += term;
  }
  return sum;
}

}  // namespace gbessel
