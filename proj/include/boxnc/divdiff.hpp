#ifndef BOXNC_DIVDIFF_HPP
#define BOXNC_DIVDIFF_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "boxnc/core.hpp"
#include "boxnc/function.hpp"
#include "boxnc/rng.hpp"

namespace boxnc {

enum class DdMethod { recursive, expanded };

// [x_0,...,x_n; f] for a function of one variable. The recursive method runs
// the defining recursion on a Neville-style table; the expanded method sums
// f(x_j) / prod_{l != j} (x_j - x_l).
double divdiff_1d(std::span<const double> points, const std::function<double(double)>& f,
                  DdMethod method = DdMethod::recursive);

// Divided difference of already-evaluated values (consumed in place).
double divdiff_from_values(std::span<const double> points, std::span<double> values);

struct ExpandedValue {
  double value = 0.0;
  double max_term = 0.0;  // largest |summand|, the cancellation scale
};

ExpandedValue divdiff_1d_expanded(std::span<const double> points,
                                  const std::function<double(double)>& f);

// Multiple divided difference [x_1; ...; x_d; f] of order n (implied by the
// system's tuple lengths). The nested method reduces one axis at a time in
// axis_order (last entry outermost); the expanded method evaluates the d-fold
// sum directly. axis_order is 0-based; empty means (0, ..., d-1).
double divdiff_multi(const PointSystem& system, const FunctionSpec& f,
                     DdMethod method = DdMethod::expanded,
                     std::span<const int> axis_order = {});

ExpandedValue divdiff_multi_expanded(const PointSystem& system, const FunctionSpec& f);

// Closed form of lim_{x_0 -> x_k+} [x_0, x_1, ..., x_n; f], taking the
// right-derivative as data rather than estimating it numerically. k is
// 0-based into `points`; points.size() = n >= 2.
double divdiff_right_limit(std::span<const double> points, int k,
                           const std::function<double(double)>& f,
                           const std::function<double(double)>& f_right_derivative);

enum class SamplerKind { random, grid };

struct CertifyOptions {
  SamplerKind sampler = SamplerKind::random;
  int trials = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  // Minimum pairwise node separation as a fraction of the axis width.
  double min_separation = 1e-3;
  // Grid sampler: nodes per axis when no explicit grid is given and the
  // function is not tabulated.
  int grid_points = 9;
  std::optional<std::vector<std::vector<double>>> grid;
};

struct ConvexityCertificate {
  bool refuted = false;  // verdict: certified-on-samples unless a witness was found
  int trials = 0;
  double min_value = 0.0;             // smallest sampled divided difference
  std::optional<PointSystem> witness;  // present iff refuted
  double tol = 0.0;                    // base tolerance used
};

// Samples `trials` point systems and evaluates the multiple divided
// difference on each. Refutes when some value drops below -tol scaled by that
// system's largest expanded-sum term; otherwise reports
// certified-on-samples. Sampling evidence, not a proof.
ConvexityCertificate certify_box_convexity(const FunctionSpec& f, const MultiIndex& n,
                                           const Box& box, const CertifyOptions& options);

struct AffinityReport {
  bool affine = false;
  int trials = 0;
  double max_abs_value = 0.0;
  std::optional<PointSystem> witness;  // system attaining max_abs_value when not affine
};

// Sampling evidence that every divided difference of order n vanishes.
AffinityReport check_box_affine(const FunctionSpec& f, const MultiIndex& n, const Box& box,
                                const CertifyOptions& options);

// One random point system for (box, n); exposed for tests and samplers.
class SystemSampler {
 public:
  SystemSampler(const Box& box, const MultiIndex& n, const CertifyOptions& options,
                const FunctionSpec* f = nullptr);
  PointSystem next(Rng& rng) const;

 private:
  const Box& box_;
  const MultiIndex& n_;
  double min_separation_;
  bool use_grid_ = false;
  std::vector<std::vector<double>> grid_;
};

}  // namespace boxnc

#endif
