#include "boxnc/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

namespace boxnc {

namespace {

void require_distinct(std::span<const double> points) {
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t l = j + 1; l < points.size(); ++l) {
      if (points[j] == points[l]) {
        fail(ErrorCode::invalid_argument,
             "duplicate node " + std::to_string(points[j]) + " in divided difference");
      }
    }
  }
}

}  // namespace

double divdiff_from_values(std::span<const double> points, std::span<double> values) {
  const std::size_t n = points.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t j = 0; j + level < n; ++j) {
      values[j] = (values[j + 1] - values[j]) / (points[j + level] - points[j]);
    }
  }
  return values[0];
}

double divdiff_1d(std::span<const double> points, const std::function<double(double)>& f,
                  DdMethod method) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "divided difference needs >= 1 node");
  require_distinct(points);
  if (method == DdMethod::expanded) return divdiff_1d_expanded(points, f).value;
  std::vector<double> values(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) values[j] = f(points[j]);
  return divdiff_from_values(points, values);
}

ExpandedValue divdiff_1d_expanded(std::span<const double> points,
                                  const std::function<double(double)>& f) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "divided difference needs >= 1 node");
  require_distinct(points);
  ExpandedValue out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    double denom = 1.0;
    for (std::size_t l = 0; l < points.size(); ++l) {
      if (l != j) denom *= points[j] - points[l];
    }
    const double term = f(points[j]) / denom;
    out.value += term;
    out.max_term = std::max(out.max_term, std::abs(term));
  }
  return out;
}

namespace {

std::vector<int> effective_order(const PointSystem& system, std::span<const int> axis_order) {
  const int d = system.dim();
  std::vector<int> order(axis_order.begin(), axis_order.end());
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != d) {
    fail(ErrorCode::invalid_argument, "axis order must list every axis exactly once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int a : order) {
    if (a < 0 || a >= d || seen[static_cast<std::size_t>(a)]) {
      fail(ErrorCode::invalid_argument, "axis order must be a permutation of 1..d");
    }
    seen[static_cast<std::size_t>(a)] = true;
  }
  return order;
}

// Applies 1-d divided differences to successive axes; order.back() is the
// outermost reduction.
double nested_divdiff(const PointSystem& system, const FunctionSpec& f,
                      std::span<const int> order, std::vector<double>& point) {
  const int axis = order.back();
  const auto& nodes = system.axis_nodes(axis);
  std::vector<double> values(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    point[static_cast<std::size_t>(axis)] = nodes[j];
    values[j] = order.size() == 1 ? f(point)
                                  : nested_divdiff(system, f, order.first(order.size() - 1), point);
  }
  return divdiff_from_values(nodes, values);
}

}  // namespace

double divdiff_multi(const PointSystem& system, const FunctionSpec& f, DdMethod method,
                     std::span<const int> axis_order) {
  if (system.dim() != f.arity()) {
    fail(ErrorCode::invalid_argument, "point system dimension does not match function arity");
  }
  for (int i = 0; i < system.dim(); ++i) {
    if (system.axis_nodes(i).empty()) {
      fail(ErrorCode::invalid_argument, "every axis needs at least one node");
    }
    require_distinct(system.axis_nodes(i));
  }
  const std::vector<int> order = effective_order(system, axis_order);
  if (method == DdMethod::expanded) return divdiff_multi_expanded(system, f).value;
  std::vector<double> point(static_cast<std::size_t>(system.dim()), 0.0);
  return nested_divdiff(system, f, order, point);
}

ExpandedValue divdiff_multi_expanded(const PointSystem& system, const FunctionSpec& f) {
  const int d = system.dim();
  // Per-axis denominators prod_{l != j} (x_{ij} - x_{il}).
  std::vector<std::vector<double>> denom(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto& nodes = system.axis_nodes(i);
    require_distinct(nodes);
    denom[static_cast<std::size_t>(i)].resize(nodes.size(), 1.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      for (std::size_t l = 0; l < nodes.size(); ++l) {
        if (l != j) denom[static_cast<std::size_t>(i)][j] *= nodes[j] - nodes[l];
      }
    }
  }

  ExpandedValue out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> point(static_cast<std::size_t>(d));
  for (;;) {
    double den = 1.0;
    for (int i = 0; i < d; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      point[ii] = system.axis_nodes(i)[idx[ii]];
      den *= denom[ii][idx[ii]];
    }
    const double term = f(point) / den;
    out.value += term;
    out.max_term = std::max(out.max_term, std::abs(term));

    int axis = d - 1;
    while (axis >= 0) {
      std::size_t& j = idx[static_cast<std::size_t>(axis)];
      if (++j < system.axis_nodes(axis).size()) break;
      j = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

double divdiff_right_limit(std::span<const double> points, int k,
                           const std::function<double(double)>& f,
                           const std::function<double(double)>& f_right_derivative) {
  const int n = static_cast<int>(points.size());
  if (n < 2) fail(ErrorCode::invalid_argument, "right-limit formula needs >= 2 nodes");
  if (k < 0 || k >= n) fail(ErrorCode::invalid_argument, "node index out of range");
  require_distinct(points);

  auto excluded_product = [&](int j) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i != j) prod *= points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(i)];
    }
    return prod;
  };

  const double xk = points[static_cast<std::size_t>(k)];
  const double fk_over = f(xk) / excluded_product(k);
  double value = f_right_derivative(xk) / excluded_product(k);
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    const double xj = points[static_cast<std::size_t>(j)];
    value += (f(xj) / excluded_product(j) + fk_over) / (xj - xk);
  }
  return value;
}

SystemSampler::SystemSampler(const Box& box, const MultiIndex& n, const CertifyOptions& options,
                             const FunctionSpec* f)
    : box_(box), n_(n), min_separation_(options.min_separation) {
  if (box.dim() != n.dim()) {
    fail(ErrorCode::invalid_argument, "box and order vector disagree on dimension");
  }
  if (options.sampler == SamplerKind::grid) {
    use_grid_ = true;
    if (options.grid.has_value()) {
      grid_ = *options.grid;
    } else if (f != nullptr && f->serializable() && f->to_json().contains("tabulated")) {
      grid_ = f->to_json().at("tabulated").at("nodes").get<std::vector<std::vector<double>>>();
    } else {
      // Equally spaced interior points.
      grid_.resize(static_cast<std::size_t>(box.dim()));
      for (int i = 0; i < box.dim(); ++i) {
        const Interval& ax = box.axis(i);
        if (!ax.bounded()) {
          fail(ErrorCode::invalid_argument,
               "grid sampler needs a bounded axis " + std::to_string(i + 1));
        }
        const int g = std::max(options.grid_points, n[i] + 1);
        for (int j = 0; j < g; ++j) {
          grid_[static_cast<std::size_t>(i)].push_back(ax.lo + ax.width() * (j + 1) / (g + 1));
        }
      }
    }
    if (static_cast<int>(grid_.size()) != box.dim()) {
      fail(ErrorCode::invalid_argument, "grid must provide nodes for every axis");
    }
    for (int i = 0; i < box.dim(); ++i) {
      if (static_cast<int>(grid_[static_cast<std::size_t>(i)].size()) < n[i] + 1) {
        fail(ErrorCode::invalid_argument,
             "grid on axis " + std::to_string(i + 1) + " has fewer than n+1 nodes");
      }
    }
  } else {
    for (int i = 0; i < box.dim(); ++i) {
      if (!box.axis(i).bounded()) {
        fail(ErrorCode::invalid_argument,
             "random sampler needs a bounded axis " + std::to_string(i + 1));
      }
    }
  }
}

PointSystem SystemSampler::next(Rng& rng) const {
  std::vector<std::vector<double>> nodes(static_cast<std::size_t>(box_.dim()));
  for (int i = 0; i < box_.dim(); ++i) {
    const std::size_t want = static_cast<std::size_t>(n_[i]) + 1;
    auto& tuple = nodes[static_cast<std::size_t>(i)];
    if (use_grid_) {
      std::vector<double> pool = grid_[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < want; ++j) {
        const std::size_t pick = j + static_cast<std::size_t>(rng.next_index(pool.size() - j));
        std::swap(pool[j], pool[pick]);
      }
      tuple.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
      std::sort(tuple.begin(), tuple.end());
    } else {
      const Interval& ax = box_.axis(i);
      const double sep = min_separation_ * ax.width();
      int attempts = 0;
      while (tuple.size() < want) {
        if (++attempts > 10000) {
          fail(ErrorCode::invalid_argument,
               "cannot sample distinct nodes on axis " + std::to_string(i + 1) +
                   " with the requested separation");
        }
        const double cand = rng.uniform(ax.lo, ax.hi);
        bool ok = true;
        for (double existing : tuple) {
          if (std::abs(cand - existing) < sep) {
            ok = false;
            break;
          }
        }
        if (ok) tuple.push_back(cand);
      }
      std::sort(tuple.begin(), tuple.end());
    }
  }
  return PointSystem(std::move(nodes));
}

namespace {

struct SampleScan {
  double min_value = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  bool refuted = false;
  bool nonaffine = false;
  std::optional<PointSystem> min_witness;
  std::optional<PointSystem> abs_witness;
  int trials = 0;
};

SampleScan scan_samples(const FunctionSpec& f, const MultiIndex& n, const Box& box,
                        const CertifyOptions& options) {
  if (options.trials < 1) fail(ErrorCode::invalid_argument, "trial count must be >= 1");
  if (f.arity() != n.dim()) {
    fail(ErrorCode::invalid_argument, "function arity does not match order vector");
  }
  SystemSampler sampler(box, n, options, &f);
  Rng rng(options.seed);
  SampleScan scan;
  scan.trials = options.trials;
  for (int t = 0; t < options.trials; ++t) {
    PointSystem system = sampler.next(rng);
    const ExpandedValue ev = divdiff_multi_expanded(system, f);
    const double threshold = options.tol * std::max(1.0, ev.max_term);
    if (ev.value < scan.min_value) {
      scan.min_value = ev.value;
      if (ev.value < -threshold) scan.min_witness = system;
    }
    if (ev.value < -threshold) scan.refuted = true;
    if (std::abs(ev.value) > scan.max_abs) {
      scan.max_abs = std::abs(ev.value);
      if (std::abs(ev.value) > threshold) scan.abs_witness = system;
    }
    if (std::abs(ev.value) > threshold) scan.nonaffine = true;
  }
  return scan;
}

}  // namespace

ConvexityCertificate certify_box_convexity(const FunctionSpec& f, const MultiIndex& n,
                                           const Box& box, const CertifyOptions& options) {
  const SampleScan scan = scan_samples(f, n, box, options);
  ConvexityCertificate cert;
  cert.refuted = scan.refuted;
  cert.trials = scan.trials;
  cert.min_value = scan.min_value;
  cert.tol = options.tol;
  if (scan.refuted) cert.witness = scan.min_witness;
  return cert;
}

AffinityReport check_box_affine(const FunctionSpec& f, const MultiIndex& n, const Box& box,
                                const CertifyOptions& options) {
  const SampleScan scan = scan_samples(f, n, box, options);
  AffinityReport report;
  report.affine = !scan.nonaffine;
  report.trials = scan.trials;
  report.max_abs_value = scan.max_abs;
  if (scan.nonaffine) report.witness = scan.abs_witness;
  return report;
}

}  // namespace boxnc
