#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace gbessel {

/// Weakly decreasing tuple of nonnegative integers. Trailing zeros are dropped
/// so (2,1,0) and (2,1) compare equal.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidInput when `parts` is not weakly decreasing and nonnegative.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  /// i-th part (0-based), zero past the length.
  int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  /// Parts padded with zeros to `n` entries; requires length() <= n.
  std::vector<int> padded(std::size_t n) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of `n` with at most `max_parts` parts, lexicographically decreasing.
std::vector<Partition> partitions_of(int n, int max_parts);

/// Tolerances for zero-sum and hull tests, relative to the largest |coordinate|.
struct Tolerances {
  double sum_rel = 1e-12;
  double hull_rel = 1e-12;
};

/// A point of the zero-sum hyperplane lying in the closed chamber
/// x_1 >= x_2 >= ... >= x_N.
class ChamberPoint {
 public:
  /// Throws InvalidInput when coords are non-finite, unsorted or not zero-sum.
  explicit ChamberPoint(std::vector<double> coords, const Tolerances& tol = {});

  const std::vector<double>& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// Multiplicity parameter k > 0.
class MultiplicityK {
 public:
  explicit MultiplicityK(double k);
  double value() const { return k_; }
  /// k < 1: the endpoint factors (.)^(k-1) are singular.
  bool singular() const { return k_ < 1.0; }

 private:
  double k_;
};

struct SortedVector {
  std::vector<double> coords;
  /// perm[i] is the sorted position of input entry i.
  std::vector<std::size_t> perm;
};

/// Decreasing sort; ties keep input order. Throws InvalidInput on non-finite input.
SortedVector sort_descending(std::span<const double> v);

/// Orthogonal projection along e = (1,...,1) onto the zero-sum hyperplane.
std::vector<double> project_v(std::span<const double> x);

/// Dominance order: equal weight and every prefix sum of `a` <= that of `b`.
bool dominance_leq(const Partition& a, const Partition& b);

/// True iff `nu` lies in the convex hull of the S_N-orbit of `lambda`
/// (majorization test on decreasingly sorted copies).
bool in_convex_hull(std::span<const double> nu, std::span<const double> lambda,
                    const Tolerances& tol = {});

/// lambda_{j+1} <= nu_j <= lambda_j for all j; `nu` has one entry less than `lambda`.
bool interlace_check(std::span<const double> nu, std::span<const double> lambda);

/// Sum of coordinates; within tolerance of zero for points of the hyperplane.
double coordinate_sum(std::span<const double> x);
bool is_zero_sum(std::span<const double> x, const Tolerances& tol = {});

/// Throws DegenerateInput when the smallest gap of a decreasing vector is below
/// `rel_gap` times its span (or when the span is zero).
void require_regular(std::span<const double> sorted_desc, double rel_gap = 1e-9);

}  // namespace gbessel
