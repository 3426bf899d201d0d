#ifndef BOXNC_ORDERS_HPP
#define BOXNC_ORDERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "boxnc/core.hpp"
#include "boxnc/measures.hpp"

namespace boxnc {

// Global sign of u -> H(gamma, u) = integral of (x-u)_+^{q-1}/(q-1)! dgamma.
// Between consecutive support points H is a polynomial; the classification
// examines piece endpoints plus interior critical points, and the closed-form
// polynomial left of the support hull out to beyond its last root. For q = 1
// the integrand degenerates to the survival indicator 1_{x >= u}.
struct SignClass {
  enum class Kind { nonneg, nonpos, mixed } kind = Kind::nonneg;
  double min_value = 0.0, min_arg = 0.0;
  double max_value = 0.0, max_arg = 0.0;
};

struct OrderCheckOptions {
  double moment_tol = 1e-9;  // absolute, after normalizing by total variation
  double spline_tol = 1e-9;
  int extra_probes_per_piece = 0;  // grid density added on top of the exact scheme
};

SignClass classify_spline_sign(const DiscreteSignedMeasure& gamma, int q,
                               const OrderCheckOptions& options = {});

struct OrderVerdict {
  bool holds = false;
  // none | probability | moment | spline | sign_mixed | parity | projection
  std::string failed_condition = "none";
  std::optional<int> failed_axis;           // 1-based in reports, 0-based here
  std::optional<int> failed_moment_k;
  std::optional<double> witness_u;          // spline witness
  std::optional<std::vector<double>> witness_point;  // joint-order witness
  std::optional<unsigned> witness_subset_mask;
  double witness_value = 0.0;
  std::vector<SignClass> factor_classes;    // product / rasa checks
};

// X <= Y in the k-convex order, k = n: moment equality for k = 1..n plus
// nonnegativity of t -> E(Y-t)^n_+ - E(X-t)^n_+ decided piece by piece.
OrderVerdict check_nconvex_order(const DiscreteSignedMeasure& x, const DiscreteSignedMeasure& y,
                                 int n, const OrderCheckOptions& options = {});

// gamma >= 0 against the n-convex cone: vanishing moments k = 1..n plus
// global nonnegativity of the plus-side spline integral; the minus-side
// variant is evaluated as a cross-check and must agree. Requires zero total
// mass.
OrderVerdict check_signed_positive(const DiscreteSignedMeasure& gamma, int n,
                                   const OrderCheckOptions& options = {});

// Product criterion: per-factor vanishing moments k = 0..n_i-1, single-signed
// spline factors, and an even count of nonpositive ones.
OrderVerdict check_box_order_product(const std::vector<DiscreteSignedMeasure>& factors,
                                     const MultiIndex& n,
                                     const OrderCheckOptions& options = {});

// Joint criterion for d-dimensional probability measures. Condition (a):
// for every axis i and k <= n_i-1 the projection of x_i^k d(PY - PX) onto the
// remaining coordinates cancels atomwise. Condition (b): expectation
// dominance of the spline basis over every subset A and every u in the tensor
// grid spanned by u_axes.
OrderVerdict check_box_order_joint(const DiscreteSignedMeasure& px,
                                   const DiscreteSignedMeasure& py, const MultiIndex& n,
                                   const std::vector<std::vector<double>>& u_axes,
                                   const OrderCheckOptions& options = {});

// Per-axis default grid for the joint check: support coordinates, midpoints
// between consecutive ones, and one exterior probe each side.
std::vector<std::vector<double>> default_u_axes(const DiscreteSignedMeasure& px,
                                                const DiscreteSignedMeasure& py);

}  // namespace boxnc

#endif
