#ifndef BOXNC_CORE_HPP
#define BOXNC_CORE_HPP

#include <limits>
#include <span>
#include <vector>

#include "boxnc/errors.hpp"

namespace boxnc {

// Open interval with possibly infinite endpoints.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded() const;
  double width() const { return hi - lo; }
};

// Axis-aligned product of open intervals, the common domain of every
// d-variate function handled here.
class Box {
 public:
  explicit Box(std::vector<Interval> axes);
  static Box unbounded(int dim);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Interval& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<Interval>& axes() const { return axes_; }
  bool contains(std::span<const double> x) const;

 private:
  std::vector<Interval> axes_;
};

// Convexity order vector n = (n_1, ..., n_d).
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> entries);

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  int min_entry() const;
  int max_entry() const;

 private:
  std::vector<int> entries_;
};

// Subset A of the axis set {1,...,d}, stored 0-based and sorted ascending.
// 1-based indices appear only at the JSON/CLI boundary.
class AxisSubset {
 public:
  AxisSubset(std::vector<int> members, int dim);
  static AxisSubset empty(int dim) { return AxisSubset({}, dim); }
  static AxisSubset full(int dim);
  static AxisSubset from_mask(unsigned mask, int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int axis) const;
  AxisSubset complement() const;
  unsigned mask() const;

  bool operator==(const AxisSubset& other) const {
    return dim_ == other.dim_ && members_ == other.members_;
  }

 private:
  std::vector<int> members_;
  int dim_;
};

// Per-axis node tuples (x_{i0}, ..., x_{i n_i}) feeding a multiple divided
// difference. Coordinates within one tuple must be pairwise distinct.
class PointSystem {
 public:
  explicit PointSystem(std::vector<std::vector<double>> nodes);

  int dim() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& axis_nodes(int i) const {
    return nodes_[static_cast<std::size_t>(i)];
  }
  const std::vector<std::vector<double>>& nodes() const { return nodes_; }

 private:
  std::vector<std::vector<double>> nodes_;
};

// Throws Error(invalid_argument/domain_error) unless every tuple i holds
// exactly n_i + 1 pairwise distinct nodes inside axis i of the box. The
// message names the offending axis (1-based) and nodes.
void validate_point_system(const PointSystem& system, const Box& box,
                           const MultiIndex& n);

}  // namespace boxnc

#endif
