#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbessel/core_types.hpp"
#include "gbessel/errors.hpp"

using namespace gbessel;

TEST_CASE("sort_descending examples") {
  const std::vector<double> a{1, 3, 2};
  const SortedVector s = sort_descending(a);
  CHECK(s.coords == std::vector<double>{3, 2, 1});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(s.coords[s.perm[i]] == a[i]);

  const SortedVector z = sort_descending(std::vector<double>{0, 0, 0});
  CHECK(z.coords == std::vector<double>{0, 0, 0});
  CHECK(z.perm == std::vector<std::size_t>{0, 1, 2});

  CHECK(sort_descending(std::vector<double>{-1, 1, 0}).coords == std::vector<double>{1, 0, -1});
  CHECK_THROWS_AS(sort_descending(std::vector<double>{1, NAN}), InvalidInput);
}

TEST_CASE("project_v") {
  const std::vector<double> p = project_v(std::vector<double>{1, 0, 0});
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  for (double v : project_v(std::vector<double>{2.5, 2.5, 2.5, 2.5})) CHECK(v == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(1 + t % 6);
    for (double& v : x) v = u(rng);
    const std::vector<double> once = project_v(x);
    CHECK(is_zero_sum(once));
    const std::vector<double> twice = project_v(once);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-13));
  }
}

TEST_CASE("partitions and dominance") {
  CHECK(Partition({2, 1, 0}) == Partition({2, 1}));
  CHECK_THROWS_AS(Partition({1, 2}), InvalidInput);
  CHECK_THROWS_AS(Partition({1, -1}), InvalidInput);
  const std::vector<Partition> p4 = partitions_of(4, 2);
  REQUIRE(p4.size() == 3);
  CHECK(p4[0] == Partition({4}));
  CHECK(p4[1] == Partition({3, 1}));
  CHECK(p4[2] == Partition({2, 2}));
  CHECK(partitions_of(6, 6).size() == 11);
  CHECK(partitions_of(0, 3).size() == 1);

  CHECK(dominance_leq(Partition({1, 1}), Partition({2})));
  CHECK_FALSE(dominance_leq(Partition({2}), Partition({1, 1})));
  CHECK_FALSE(dominance_leq(Partition({3}), Partition({2, 1})));
  CHECK_FALSE(dominance_leq(Partition({1}), Partition({2})));
}

TEST_CASE("convex hull of an orbit") {
  const std::vector<double> lam{2, 0.5, -2.5};
  CHECK(in_convex_hull(lam, lam));
  CHECK(in_convex_hull(std::vector<double>{0, 0, 0}, lam));
  CHECK(in_convex_hull(std::vector<double>{-2.5, 2, 0.5}, lam));
  const double eps = 1e-6;
  CHECK_FALSE(in_convex_hull(std::vector<double>{2 + eps, 0.5, -2.5 - eps}, lam));
  CHECK_FALSE(in_convex_hull(std::vector<double>{2.1, 0.0, -2.1}, lam));
}

TEST_CASE("interlacing") {
  CHECK(interlace_check(std::vector<double>{2, 0.5}, std::vector<double>{3, 1, 0}));
  CHECK_FALSE(interlace_check(std::vector<double>{0.5, 2}, std::vector<double>{3, 1, 0}));
  CHECK(interlace_check(std::vector<double>{1}, std::vector<double>{1, 1}));
}

TEST_CASE("chamber points and regularity") {
  CHECK_NOTHROW(ChamberPoint({1, 0, -1}));
  CHECK_THROWS_AS(ChamberPoint({0, 1, -1}), InvalidInput);
  CHECK_THROWS_AS(ChamberPoint({1, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(MultiplicityK(0.0), InvalidInput);
  CHECK(MultiplicityK(0.5).singular());
  CHECK_THROWS_AS(require_regular(std::vector<double>{1, 1, -2}), DegenerateInput);
  CHECK_THROWS_AS(require_regular(std::vector<double>{0, 0}), DegenerateInput);
  CHECK_NOTHROW(require_regular(std::vector<double>{1, 0, -1}));
}
