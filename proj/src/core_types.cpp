#include "gbessel/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gbessel/errors.hpp"

namespace gbessel {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw InvalidInput("partition has a negative part");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw InvalidInput("partition parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::padded(std::size_t n) const {
  if (parts_.size() > n)
    throw InvalidInput("partition of length " + std::to_string(parts_.size()) +
                       " does not fit in " + std::to_string(n) + " variables");
  std::vector<int> out(parts_);
  out.resize(n, 0);
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, int slots, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, slots - 1, cur, out);
    cur.pop_back();
  }
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_parts) {
  std::vector<Partition> out;
  if (n < 0 || max_parts < 0) return out;
  std::vector<int> cur;
  partitions_rec(n, n, max_parts, cur, out);
  return out;
}

ChamberPoint::ChamberPoint(std::vector<double> coords, const Tolerances& tol)
    : coords_(std::move(coords)) {
  for (double v : coords_)
    if (!std::isfinite(v)) throw InvalidInput("chamber point has a non-finite coordinate");
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] > coords_[i - 1])
      throw InvalidInput("chamber point coordinates must be decreasing");
  if (!is_zero_sum(coords_, tol))
    throw InvalidInput("chamber point coordinates must sum to zero");
}

MultiplicityK::MultiplicityK(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("multiplicity k must be positive");
}

SortedVector sort_descending(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidInput("non-finite coordinate");
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  SortedVector out;
  out.coords.resize(v.size());
  out.perm.resize(v.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out.coords[pos] = v[order[pos]];
    out.perm[order[pos]] = pos;
  }
  return out;
}

std::vector<double> project_v(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  if (x.empty()) return out;
  const double mean = coordinate_sum(x) / static_cast<double>(x.size());
  for (double& v : out) v -= mean;
  return out;
}

bool dominance_leq(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight()) return false;
  const std::size_t n = std::max(a.parts().size(), b.parts().size());
  int sa = 0, sb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += a.part(i);
    sb += b.part(i);
    if (sa > sb) return false;
  }
  return true;
}

double coordinate_sum(std::span<const double> x) {
  // Sum in decreasing-magnitude order keeps roundoff symmetric under permutation.
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  double s = 0.0;
  for (double t : v) s += t;
  return s;
}

bool is_zero_sum(std::span<const double> x, const Tolerances& tol) {
  const double scale = std::max(max_abs(x), 1e-300);
  return std::abs(coordinate_sum(x)) <= tol.sum_rel * scale;
}

bool in_convex_hull(std::span<const double> nu, std::span<const double> lambda,
                    const Tolerances& tol) {
  if (nu.size() != lambda.size())
    throw InvalidInput("convex hull test: dimension mismatch");
  const std::size_t n = nu.size();
  if (n == 0) return true;
  const SortedVector ns = sort_descending(nu);
  const SortedVector ls = sort_descending(lambda);
  const double scale = std::max({max_abs(nu), max_abs(lambda), 1e-300});
  const double eps = tol.hull_rel * scale;
  if (std::abs(coordinate_sum(nu) - coordinate_sum(lambda)) >
      std::max(tol.sum_rel, tol.hull_rel) * scale)
    return false;
  double pn = 0.0, pl = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    pn += ns.coords[j];
    pl += ls.coords[j];
    if (pn > pl + eps) return false;
  }
  return true;
}

bool interlace_check(std::span<const double> nu, std::span<const double> lambda) {
  if (nu.size() + 1 != lambda.size())
    throw InvalidInput("interlacing test: nu must have one entry less than lambda");
  for (std::size_t j = 0; j < nu.size(); ++j)
    if (!(lambda[j + 1] <= nu[j] && nu[j] <= lambda[j])) return false;
  return true;
}

void require_regular(std::span<const double> sorted_desc, double rel_gap) {
  if (sorted_desc.size() < 2) return;
  const double span = sorted_desc.front() - sorted_desc.back();
  double gap = span;
  for (std::size_t i = 1; i < sorted_desc.size(); ++i)
    gap = std::min(gap, sorted_desc[i - 1] - sorted_desc[i]);
  if (!(span > 0.0) || gap < rel_gap * span)
    throw DegenerateInput("lambda has (nearly) repeated coordinates; the 1/V(lambda)^(2k-1) "
                          "normalization is singular");
}

}  // namespace gbessel
