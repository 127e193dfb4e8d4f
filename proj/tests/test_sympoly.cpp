#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbessel/errors.hpp"
#include "gbessel/sympoly.hpp"

using namespace gbessel;

namespace {

SymPoly m(std::vector<int> parts, int n) { return expand_monomial_symmetric(Partition(parts), n); }

}  // namespace

TEST_CASE("monomial symmetric polynomials") {
  const SymPoly p1 = m({1}, 2);
  CHECK(p1.terms() == std::map<Exponent, Rational>{{{1, 0}, 1}, {{0, 1}, 1}});
  const SymPoly p11 = m({1, 1}, 2);
  CHECK(p11.terms() == std::map<Exponent, Rational>{{{1, 1}, 1}});
  const SymPoly p21 = m({2, 1}, 3);
  CHECK(p21.terms().size() == 6);
  for (const auto& [e, c] : p21.terms()) {
    CHECK(c == 1);
    CHECK(e[0] + e[1] + e[2] == 3);
  }
  CHECK(p21.degree() == 3);
  CHECK(distinct_permutations({2, 1, 1}).size() == 3);
  CHECK_THROWS_AS(m({13}, 2), InvalidInput);
  CHECK_THROWS_AS(m({1}, 7), InvalidInput);
}

TEST_CASE("symmetry is validated") {
  CHECK_THROWS_AS(SymPoly(2, {{{1, 0}, 1}}), InvalidInput);
  CHECK_NOTHROW(SymPoly(2, {{{1, 0}, 1}, {{0, 1}, 1}}));
}

TEST_CASE("L_k on the monomial basis, N = 2") {
  const Rational k(3, 5);
  const SymPoly l2 = apply_Lk(m({2}, 2), k);
  const MonomialExpansion e2 = to_monomial_basis(l2);
  CHECK(e2.at(Partition({2})) == 2 + 4 * k);
  CHECK(e2.at(Partition({1, 1})) == 4 * k);
  CHECK(e2.size() == 2);

  const MonomialExpansion e11 = to_monomial_basis(apply_Lk(m({1, 1}, 2), k));
  CHECK(e11.size() == 1);
  CHECK(e11.at(Partition({1, 1})) == 2 * k);

  const SymPoly one(2, {{{0, 0}, 1}});
  CHECK(apply_Lk(one, k).is_zero());
}

TEST_CASE("monomial basis round trip") {
  CHECK(to_monomial_basis(m({1}, 2)) == MonomialExpansion{{Partition({1}), 1}});
  const SymPoly sq(2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
  const MonomialExpansion e = to_monomial_basis(sq);
  CHECK(e == MonomialExpansion{{Partition({2}), 1}, {Partition({1, 1}), 2}});
  CHECK(to_monomial_basis(SymPoly(3)).empty());

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int n = 1; n <= 4; ++n) {
    MonomialExpansion in;
    for (int w = 0; w <= 4; ++w)
      for (const Partition& p : partitions_of(w, n))
        if (int c = coef(rng); c != 0) in[p] = Rational(c, 1 + w);
    CHECK(to_monomial_basis(assemble(in, n)) == in);
  }
}

TEST_CASE("L_k is linear and homogeneous of degree zero") {
  const Rational k(7, 2);
  const SymPoly a = m({3, 1}, 3), b = m({2, 2}, 3);
  const SymPoly lhs = apply_Lk(a * Rational(2) + b, k);
  const SymPoly rhs = apply_Lk(a, k) * Rational(2) + apply_Lk(b, k);
  CHECK(lhs == rhs);
  const SymPoly la = apply_Lk(a, k);
  for (const auto& [e, c] : la.terms()) CHECK(e[0] + e[1] + e[2] == 4);
}

TEST_CASE("evaluation and restriction") {
  const SymPoly p = m({2, 1}, 3);
  const std::vector<Rational> x{1, 2, 3};
  // m_(2,1)(1,2,3) = sum_{i != j} x_i^2 x_j
  CHECK(p.evaluate(std::span<const Rational>(x)) == 48);
  const std::vector<double> xd{1, 2, 3};
  CHECK(p.evaluate(std::span<const double>(xd)) == doctest::Approx(48.0));
  CHECK(p.drop_last_variable() == m({2, 1}, 2));
  CHECK(m({1, 1, 1}, 3).drop_last_variable().is_zero());
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(4)) == "4");
}
