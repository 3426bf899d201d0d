#include "boxnc/orders.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "boxnc/polyseg.hpp"
#include "boxnc/represent.hpp"

namespace boxnc {

namespace {

double binomial_coeff(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1.0);
  return c;
}

// Polynomial in u matching sum_j w_j (x_j - u)^p over the listed atoms.
Poly shifted_power_sum(const std::vector<Atom>& atoms, std::size_t begin, std::size_t end,
                       int p) {
  // (x - u)^p = sum_i C(p,i) x^{p-i} (-u)^i; coefficient of u^i is
  // (-1)^i C(p,i) sum_j w_j x_j^{p-i}.
  std::vector<double> power_sums(static_cast<std::size_t>(p) + 1, 0.0);
  for (std::size_t j = begin; j < end; ++j) {
    for (int e = 0; e <= p; ++e) {
      power_sums[static_cast<std::size_t>(e)] +=
          atoms[j].weight * ipow(atoms[j].location[0], e);
    }
  }
  std::vector<double> coeffs(static_cast<std::size_t>(p) + 1, 0.0);
  for (int i = 0; i <= p; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    coeffs[static_cast<std::size_t>(i)] =
        sign * binomial_coeff(p, i) * power_sums[static_cast<std::size_t>(p - i)];
  }
  return Poly(std::move(coeffs));
}

struct SplineScan {
  double min_value = 0.0, min_arg = 0.0;
  double max_value = 0.0, max_arg = 0.0;
};

void merge(SplineScan& scan, const RangeExtrema& e) {
  if (e.min_value < scan.min_value) {
    scan.min_value = e.min_value;
    scan.min_arg = e.min_arg;
  }
  if (e.max_value > scan.max_value) {
    scan.max_value = e.max_value;
    scan.max_arg = e.max_arg;
  }
}

void consider(SplineScan& scan, double u, double v) {
  if (v < scan.min_value) {
    scan.min_value = v;
    scan.min_arg = u;
  }
  if (v > scan.max_value) {
    scan.max_value = v;
    scan.max_arg = u;
  }
}

// Global extrema of u -> sum_j w_j (x_j - u)_+^p for a 1-d measure, exact up
// to floating point. The exterior piece left of the hull is the full shifted
// power sum, a polynomial; its extrema are scanned out to beyond its last
// critical point, past which the sign is frozen.
SplineScan scan_plus_spline(const DiscreteSignedMeasure& gamma, int p, int extra_probes) {
  SplineScan scan;  // H vanishes right of the hull, so 0 is always attained
  if (gamma.empty()) return scan;
  const auto& atoms = gamma.atoms();
  const std::size_t m = atoms.size();
  scan.min_arg = scan.max_arg = atoms.back().location[0] + 1.0;

  if (p == 0) {
    // Survival indicator: step function, constant between support points.
    double running = 0.0;
    consider(scan, atoms.back().location[0] + 1.0, 0.0);
    for (std::size_t j = m; j-- > 0;) {
      running += atoms[j].weight;
      consider(scan, atoms[j].location[0], running);  // value on (prev, x_j]
    }
    consider(scan, atoms.front().location[0] - 1.0, running);  // = mass
    return scan;
  }

  // Piece between x_k and x_{k+1}: only atoms at or above x_{k+1} are active.
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const Poly piece = shifted_power_sum(atoms, k + 1, m, p);
    const double lo = atoms[k].location[0];
    const double hi = atoms[k + 1].location[0];
    merge(scan, poly_extrema_on(piece, lo, hi));
    for (int t = 0; t < extra_probes; ++t) {
      const double u = lo + (hi - lo) * (t + 1.0) / (extra_probes + 1.0);
      consider(scan, u, piece(u));
    }
  }

  // Left exterior: all atoms active. Coefficients below the cancellation
  // noise floor are dropped so the root bound stays finite.
  Poly raw_full = shifted_power_sum(atoms, 0, m, p);
  double gross = 0.0;
  for (const auto& a : atoms) gross += std::abs(a.weight) * ipow(1.0 + std::abs(a.location[0]), p);
  std::vector<double> trimmed = raw_full.coeffs();
  for (double& c : trimmed) {
    if (std::abs(c) <= 1e-13 * std::max(1.0, gross)) c = 0.0;
  }
  const Poly full(std::move(trimmed));
  const double hull_lo = atoms.front().location[0];
  if (full.degree() <= 0) {
    consider(scan, hull_lo - 1.0, full(hull_lo));
  } else {
    double bound = std::abs(hull_lo) + 1.0;
    for (Poly q = full; q.degree() >= 1; q = q.derivative()) {
      const auto& c = q.coeffs();
      double b = 0.0;
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        b = std::max(b, std::abs(c[i] / c.back()));
      }
      bound = std::max(bound, 1.0 + b);
    }
    merge(scan, poly_extrema_on(full, -bound, hull_lo));
  }
  return scan;
}

SignClass classify_from_scan(const SplineScan& scan, const OrderCheckOptions& options) {
  SignClass out;
  out.min_value = scan.min_value;
  out.min_arg = scan.min_arg;
  out.max_value = scan.max_value;
  out.max_arg = scan.max_arg;
  const double scale = std::max(std::abs(scan.min_value), std::abs(scan.max_value));
  const double threshold = 1e-12 + options.spline_tol * scale;
  const bool neg = scan.min_value < -threshold;
  const bool pos = scan.max_value > threshold;
  if (neg && pos) {
    out.kind = SignClass::Kind::mixed;
  } else if (neg) {
    out.kind = SignClass::Kind::nonpos;
  } else {
    out.kind = SignClass::Kind::nonneg;
  }
  return out;
}

double normalized_moment_gap(const DiscreteSignedMeasure& gamma, int k) {
  const double tv = gamma.total_variation();
  if (tv == 0.0) return 0.0;
  return std::abs(moment1(gamma, k)) / tv;
}

}  // namespace

SignClass classify_spline_sign(const DiscreteSignedMeasure& gamma, int q,
                               const OrderCheckOptions& options) {
  if (q < 1) fail(ErrorCode::invalid_argument, "spline order must be >= 1");
  if (gamma.dim() != 1) fail(ErrorCode::invalid_argument, "sign classification is 1-d");
  SplineScan scan = scan_plus_spline(gamma, q - 1, options.extra_probes_per_piece);
  const double scale = 1.0 / factorial(q - 1);
  scan.min_value *= scale;
  scan.max_value *= scale;
  return classify_from_scan(scan, options);
}

OrderVerdict check_nconvex_order(const DiscreteSignedMeasure& x, const DiscreteSignedMeasure& y,
                                 int n, const OrderCheckOptions& options) {
  if (n < 1) fail(ErrorCode::invalid_argument, "convex order index must be >= 1");
  if (x.dim() != 1 || y.dim() != 1) fail(ErrorCode::invalid_argument, "order check is 1-d");
  OrderVerdict verdict;
  if (!x.is_probability() || !y.is_probability()) {
    fail(ErrorCode::invalid_argument,
         "order check needs probability measures (nonnegative weights, mass 1)");
  }
  const DiscreteSignedMeasure gamma = y - x;
  for (int k = 1; k <= n; ++k) {
    if (normalized_moment_gap(gamma, k) > options.moment_tol) {
      verdict.failed_condition = "moment";
      verdict.failed_moment_k = k;
      verdict.witness_value = moment1(gamma, k);
      return verdict;
    }
  }
  const SplineScan scan = scan_plus_spline(gamma, n, options.extra_probes_per_piece);
  const double threshold =
      1e-12 + options.spline_tol * std::max(std::abs(scan.min_value), std::abs(scan.max_value));
  if (scan.min_value < -threshold) {
    verdict.failed_condition = "spline";
    verdict.witness_u = scan.min_arg;
    verdict.witness_value = scan.min_value;
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

OrderVerdict check_signed_positive(const DiscreteSignedMeasure& gamma, int n,
                                   const OrderCheckOptions& options) {
  if (n < 1) fail(ErrorCode::invalid_argument, "convex order index must be >= 1");
  if (gamma.dim() != 1) fail(ErrorCode::invalid_argument, "positivity check is 1-d");
  if (std::abs(gamma.mass()) > options.moment_tol * std::max(1.0, gamma.total_variation())) {
    fail(ErrorCode::invalid_argument,
         "positivity against the n-convex cone requires zero total mass");
  }
  OrderVerdict verdict;
  for (int k = 1; k <= n; ++k) {
    if (normalized_moment_gap(gamma, k) > options.moment_tol) {
      verdict.failed_condition = "moment";
      verdict.failed_moment_k = k;
      verdict.witness_value = moment1(gamma, k);
      return verdict;
    }
  }
  const SplineScan plus = scan_plus_spline(gamma, n, options.extra_probes_per_piece);
  // Minus-side variant: integral of (-1)^{n+1} (x-u)^n_- equals the plus side
  // once the moments vanish; computed independently on the mirrored measure.
  std::vector<Atom> mirrored = gamma.atoms();
  for (auto& a : mirrored) a.location[0] = -a.location[0];
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  DiscreteSignedMeasure reflected = DiscreteSignedMeasure::from_atoms(1, std::move(mirrored));
  SplineScan minus = scan_plus_spline(reflected, n, options.extra_probes_per_piece);
  if (sign < 0.0) {
    std::swap(minus.min_value, minus.max_value);
    minus.min_value = -minus.min_value;
    minus.max_value = -minus.max_value;
    std::swap(minus.min_arg, minus.max_arg);
  }
  const auto threshold = [&](const SplineScan& s) {
    return 1e-12 +
           options.spline_tol * std::max(std::abs(s.min_value), std::abs(s.max_value));
  };
  const bool plus_ok = plus.min_value >= -threshold(plus);
  const bool minus_ok = minus.min_value >= -threshold(minus);
  if (!plus_ok || !minus_ok) {
    verdict.failed_condition = "spline";
    const SplineScan& bad = plus_ok ? minus : plus;
    verdict.witness_u = plus_ok ? -bad.min_arg : bad.min_arg;
    verdict.witness_value = bad.min_value;
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

OrderVerdict check_box_order_product(const std::vector<DiscreteSignedMeasure>& factors,
                                     const MultiIndex& n, const OrderCheckOptions& options) {
  if (static_cast<int>(factors.size()) != n.dim()) {
    fail(ErrorCode::invalid_argument, "need one factor measure per axis");
  }
  if (n.min_entry() < 1) fail(ErrorCode::invalid_argument, "product order needs n_i >= 1");
  OrderVerdict verdict;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].dim() != 1) fail(ErrorCode::invalid_argument, "factors must be 1-d");
    if (factors[i].empty()) {
      fail(ErrorCode::invalid_argument,
           "factor " + std::to_string(i + 1) + " is the zero measure");
    }
  }
  for (int i = 0; i < n.dim(); ++i) {
    const auto& gamma = factors[static_cast<std::size_t>(i)];
    for (int k = 0; k <= n[i] - 1; ++k) {
      if (normalized_moment_gap(gamma, k) > options.moment_tol) {
        verdict.failed_condition = "moment";
        verdict.failed_axis = i;
        verdict.failed_moment_k = k;
        verdict.witness_value = moment1(gamma, k);
        return verdict;
      }
    }
  }
  int nonpos_count = 0;
  for (int i = 0; i < n.dim(); ++i) {
    SignClass cls = classify_spline_sign(factors[static_cast<std::size_t>(i)], n[i], options);
    if (cls.kind == SignClass::Kind::mixed) {
      verdict.factor_classes.push_back(cls);
      verdict.failed_condition = "sign_mixed";
      verdict.failed_axis = i;
      verdict.witness_u = cls.min_arg;
      verdict.witness_value = cls.min_value;
      return verdict;
    }
    if (cls.kind == SignClass::Kind::nonpos) ++nonpos_count;
    verdict.factor_classes.push_back(cls);
  }
  if (nonpos_count % 2 != 0) {
    verdict.failed_condition = "parity";
    verdict.witness_value = nonpos_count;
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

std::vector<std::vector<double>> default_u_axes(const DiscreteSignedMeasure& px,
                                                const DiscreteSignedMeasure& py) {
  const int d = px.dim();
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::set<double> coords;
    for (const auto& a : px.atoms()) coords.insert(a.location[static_cast<std::size_t>(i)]);
    for (const auto& a : py.atoms()) coords.insert(a.location[static_cast<std::size_t>(i)]);
    std::vector<double> sorted(coords.begin(), coords.end());
    auto& axis = axes[static_cast<std::size_t>(i)];
    if (sorted.empty()) {
      axis.push_back(0.0);
      continue;
    }
    axis.push_back(sorted.front() - 1.0);
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      axis.push_back(sorted[j]);
      if (j + 1 < sorted.size()) axis.push_back(0.5 * (sorted[j] + sorted[j + 1]));
    }
    axis.push_back(sorted.back() + 1.0);
  }
  return axes;
}

OrderVerdict check_box_order_joint(const DiscreteSignedMeasure& px,
                                   const DiscreteSignedMeasure& py, const MultiIndex& n,
                                   const std::vector<std::vector<double>>& u_axes,
                                   const OrderCheckOptions& options) {
  const int d = n.dim();
  if (px.dim() != d || py.dim() != d) {
    fail(ErrorCode::invalid_argument, "measure dimension does not match n");
  }
  if (n.min_entry() < 1) fail(ErrorCode::invalid_argument, "joint order needs n_i >= 1");
  if (static_cast<int>(u_axes.size()) != d) {
    fail(ErrorCode::invalid_argument, "need one u-grid per axis");
  }
  if (!px.is_probability() || !py.is_probability()) {
    fail(ErrorCode::invalid_argument,
         "joint order check needs probability measures (nonnegative weights, mass 1)");
  }
  OrderVerdict verdict;
  const DiscreteSignedMeasure gamma = py - px;
  const double tv = std::max(1.0, gamma.total_variation());

  // Condition (a): projections of x_i^k d(PY - PX) cancel.
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k <= n[i] - 1; ++k) {
      double residual = 0.0;
      std::vector<double> where;
      if (d == 1) {
        residual = std::abs(moment1(gamma, k));
      } else {
        const DiscreteSignedMeasure projected = gamma.project_out(i, k);
        for (const auto& atom : projected.atoms()) {
          if (std::abs(atom.weight) > residual) {
            residual = std::abs(atom.weight);
            where = atom.location;
          }
        }
      }
      if (residual > options.moment_tol * tv) {
        verdict.failed_condition = "projection";
        verdict.failed_axis = i;
        verdict.failed_moment_k = k;
        verdict.witness_value = residual;
        if (!where.empty()) verdict.witness_point = where;
        return verdict;
      }
    }
  }

  // Condition (b): spline dominance over every subset and grid point.
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> u(static_cast<std::size_t>(d));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    const AxisSubset a = AxisSubset::from_mask(mask, d);
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (int i = 0; i < d; ++i) {
        u[static_cast<std::size_t>(i)] =
            u_axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      }
      const FunctionSpec basis = spline_basis(a, u, n);
      double gap = 0.0;
      for (const auto& atom : gamma.atoms()) gap += atom.weight * basis(atom.location);
      if (gap < -(1e-12 + options.spline_tol)) {
        verdict.failed_condition = "spline";
        verdict.witness_point = u;
        verdict.witness_subset_mask = mask;
        verdict.witness_value = gap;
        return verdict;
      }
      int axis = d - 1;
      while (axis >= 0) {
        std::size_t& j = idx[static_cast<std::size_t>(axis)];
        if (++j < u_axes[static_cast<std::size_t>(axis)].size()) break;
        j = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  verdict.holds = true;
  return verdict;
}

}  // namespace boxnc
