#include "boxnc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace boxnc {

bool Interval::bounded() const {
  return std::isfinite(lo) && std::isfinite(hi);
}

Box::Box(std::vector<Interval> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) fail(ErrorCode::invalid_argument, "box needs at least one axis");
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (std::isnan(axes_[i].lo) || std::isnan(axes_[i].hi) || !(axes_[i].lo < axes_[i].hi)) {
      fail(ErrorCode::invalid_argument,
           "axis " + std::to_string(i + 1) + ": interval endpoints must satisfy lo < hi");
    }
  }
}

Box Box::unbounded(int dim) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "box dimension must be >= 1");
  return Box(std::vector<Interval>(static_cast<std::size_t>(dim)));
}

bool Box::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!axes_[static_cast<std::size_t>(i)].contains(x[static_cast<std::size_t>(i)])) return false;
  }
  return true;
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::invalid_argument, "order vector must have length >= 1");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0) {
      fail(ErrorCode::invalid_argument,
           "order entry n" + std::to_string(i + 1) + " must be >= 0");
    }
  }
}

int MultiIndex::min_entry() const {
  return *std::min_element(entries_.begin(), entries_.end());
}

int MultiIndex::max_entry() const {
  return *std::max_element(entries_.begin(), entries_.end());
}

AxisSubset::AxisSubset(std::vector<int> members, int dim)
    : members_(std::move(members)), dim_(dim) {
  if (dim_ < 1) fail(ErrorCode::invalid_argument, "axis subset dimension must be >= 1");
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= dim_) {
      fail(ErrorCode::invalid_argument,
           "axis index " + std::to_string(members_[i] + 1) + " outside {1,...," +
               std::to_string(dim_) + "}");
    }
    if (i > 0 && members_[i] == members_[i - 1]) {
      fail(ErrorCode::invalid_argument,
           "duplicate axis index " + std::to_string(members_[i] + 1) + " in subset");
    }
  }
}

AxisSubset AxisSubset::full(int dim) {
  std::vector<int> all(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return AxisSubset(std::move(all), dim);
}

AxisSubset AxisSubset::from_mask(unsigned mask, int dim) {
  std::vector<int> members;
  for (int i = 0; i < dim; ++i) {
    if (mask & (1u << i)) members.push_back(i);
  }
  return AxisSubset(std::move(members), dim);
}

bool AxisSubset::contains(int axis) const {
  return std::binary_search(members_.begin(), members_.end(), axis);
}

AxisSubset AxisSubset::complement() const {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(dim_ - size()));
  for (int i = 0; i < dim_; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return AxisSubset(std::move(rest), dim_);
}

unsigned AxisSubset::mask() const {
  unsigned m = 0;
  for (int a : members_) m |= (1u << a);
  return m;
}

PointSystem::PointSystem(std::vector<std::vector<double>> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) fail(ErrorCode::invalid_argument, "point system needs at least one axis");
}

void validate_point_system(const PointSystem& system, const Box& box, const MultiIndex& n) {
  if (system.dim() != n.dim() || system.dim() != box.dim()) {
    fail(ErrorCode::invalid_argument, "point system, box and order vector disagree on dimension");
  }
  for (int i = 0; i < system.dim(); ++i) {
    const auto& tuple = system.axis_nodes(i);
    const std::size_t want = static_cast<std::size_t>(n[i]) + 1;
    if (tuple.size() != want) {
      fail(ErrorCode::invalid_argument,
           "axis " + std::to_string(i + 1) + ": expected " + std::to_string(want) +
               " nodes, got " + std::to_string(tuple.size()));
    }
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      if (!std::isfinite(tuple[j])) {
        fail(ErrorCode::invalid_argument,
             "axis " + std::to_string(i + 1) + ": node is not finite");
      }
      if (!box.axis(i).contains(tuple[j])) {
        fail(ErrorCode::domain_error,
             "axis " + std::to_string(i + 1) + ": node " + std::to_string(tuple[j]) +
                 " outside the axis interval");
      }
      for (std::size_t l = j + 1; l < tuple.size(); ++l) {
        if (tuple[j] == tuple[l]) {
          fail(ErrorCode::invalid_argument,
               "axis " + std::to_string(i + 1) + ": duplicate node " + std::to_string(tuple[j]) +
                   " at positions " + std::to_string(j) + " and " + std::to_string(l));
        }
      }
    }
  }
}

}  // namespace boxnc
