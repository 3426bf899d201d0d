#include "boxnc/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "boxnc/quadrature.hpp"

namespace boxnc {

Marginal Marginal::from_atoms(DiscreteSignedMeasure m) {
  if (m.dim() != 1) fail(ErrorCode::invalid_argument, "marginals are 1-d");
  if (!m.is_probability()) {
    fail(ErrorCode::invalid_argument, "atom marginal must be a probability measure");
  }
  Marginal out;
  out.kind = Kind::atoms;
  out.atoms = std::move(m);
  return out;
}

Marginal Marginal::from_uniform(double a, double b, int resolution) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "uniform marginal needs a < b");
  if (resolution < 2) fail(ErrorCode::invalid_argument, "uniform resolution must be >= 2");
  Marginal out;
  out.kind = Kind::uniform;
  out.uniform = UniformSegment{a, b, resolution};
  return out;
}

Marginal Marginal::point_mass(double x) {
  Marginal out;
  out.kind = Kind::point;
  out.point = x;
  return out;
}

double Marginal::mean() const {
  switch (kind) {
    case Kind::atoms:
      return moment1(atoms, 1);
    case Kind::uniform:
      return 0.5 * (uniform.a + uniform.b);
    case Kind::point:
      return point;
  }
  fail(ErrorCode::internal_error, "unhandled marginal kind");
}

std::vector<std::pair<double, double>> Marginal::discretize(int resolution_override) const {
  switch (kind) {
    case Kind::atoms: {
      std::vector<std::pair<double, double>> out;
      out.reserve(atoms.atoms().size());
      for (const auto& a : atoms.atoms()) out.emplace_back(a.location[0], a.weight);
      return out;
    }
    case Kind::uniform: {
      const int panels = resolution_override > 0 ? resolution_override : uniform.resolution;
      return uniform_quadrature(uniform.a, uniform.b, panels);
    }
    case Kind::point:
      return {{point, 1.0}};
  }
  fail(ErrorCode::internal_error, "unhandled marginal kind");
}

namespace {

double tensor_expectation(const FunctionSpec& f,
                          const std::vector<std::vector<std::pair<double, double>>>& axes) {
  const int d = static_cast<int>(axes.size());
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> point(static_cast<std::size_t>(d));
  double total = 0.0;
  for (;;) {
    double weight = 1.0;
    for (int i = 0; i < d; ++i) {
      const auto& [x, w] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      point[static_cast<std::size_t>(i)] = x;
      weight *= w;
    }
    total += weight * f(point);
    int axis = d - 1;
    while (axis >= 0) {
      std::size_t& j = idx[static_cast<std::size_t>(axis)];
      if (++j < axes[static_cast<std::size_t>(axis)].size()) break;
      j = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return total;
}

}  // namespace

GapReport alternating_gap(const FunctionSpec& f, const std::vector<Marginal>& x_marginals,
                          const std::vector<Marginal>& y_marginals, int resolution, double tol) {
  const int d = f.arity();
  if (static_cast<int>(x_marginals.size()) != d || static_cast<int>(y_marginals.size()) != d) {
    fail(ErrorCode::invalid_argument, "need one X and one Y marginal per axis");
  }
  std::vector<std::vector<std::pair<double, double>>> xs, ys;
  xs.reserve(static_cast<std::size_t>(d));
  ys.reserve(static_cast<std::size_t>(d));
  int used_resolution = 0;
  for (int i = 0; i < d; ++i) {
    xs.push_back(x_marginals[static_cast<std::size_t>(i)].discretize(resolution));
    ys.push_back(y_marginals[static_cast<std::size_t>(i)].discretize(resolution));
    for (const Marginal* m : {&x_marginals[static_cast<std::size_t>(i)],
                              &y_marginals[static_cast<std::size_t>(i)]}) {
      if (m->kind == Marginal::Kind::uniform) {
        used_resolution = std::max(
            used_resolution, resolution > 0 ? resolution : m->uniform.resolution);
      }
    }
  }

  GapReport report;
  report.resolution = used_resolution;
  report.tol = tol;
  std::vector<std::vector<std::pair<double, double>>> axes(static_cast<std::size_t>(d));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    for (int i = 0; i < d; ++i) {
      axes[static_cast<std::size_t>(i)] =
          (mask & (1u << i)) ? xs[static_cast<std::size_t>(i)] : ys[static_cast<std::size_t>(i)];
    }
    const double term = tensor_expectation(f, axes);
    report.subset_terms.emplace_back(mask, term);
    report.value += (std::popcount(mask) % 2 == 0 ? 1.0 : -1.0) * term;
  }
  report.holds = report.value >= -tol;
  return report;
}

GapReport hh_check(const FunctionSpec& f, std::span<const double> a, std::span<const double> b,
                   HermiteHadamardKind kind, int resolution, double tol) {
  const int d = f.arity();
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d) {
    fail(ErrorCode::invalid_argument, "need one corner pair per axis");
  }
  std::vector<Marginal> xs, ys;
  for (int i = 0; i < d; ++i) {
    const double lo = a[static_cast<std::size_t>(i)];
    const double hi = b[static_cast<std::size_t>(i)];
    if (!(lo < hi)) fail(ErrorCode::invalid_argument, "hh needs a_i < b_i");
    if (kind == HermiteHadamardKind::first) {
      xs.push_back(Marginal::point_mass(0.5 * (lo + hi)));
      ys.push_back(Marginal::from_uniform(lo, hi, resolution));
    } else {
      xs.push_back(Marginal::from_uniform(lo, hi, resolution));
      ys.push_back(Marginal::from_atoms(
          DiscreteSignedMeasure::from_points({{lo, 0.5}, {hi, 0.5}})));
    }
  }
  return alternating_gap(f, xs, ys, resolution, tol);
}

GapReport jensen_gap(const FunctionSpec& f, const std::vector<Marginal>& marginals,
                     int resolution, double tol) {
  std::vector<Marginal> xs;
  xs.reserve(marginals.size());
  for (const auto& m : marginals) xs.push_back(Marginal::point_mass(m.mean()));
  return alternating_gap(f, xs, marginals, resolution, tol);
}

RasaReport rasa_check(const std::vector<DiscreteSignedMeasure>& mu,
                      const std::vector<DiscreteSignedMeasure>& nu, const MultiIndex& n,
                      const std::vector<std::vector<double>>& a_grid,
                      const OrderCheckOptions& options) {
  const int d = n.dim();
  if (static_cast<int>(mu.size()) != d || static_cast<int>(nu.size()) != d) {
    fail(ErrorCode::invalid_argument, "need one mu and one nu per axis");
  }
  if (!a_grid.empty() && static_cast<int>(a_grid.size()) != d) {
    fail(ErrorCode::invalid_argument, "a_grid must list one probe set per axis");
  }
  if (n.min_entry() < 2) fail(ErrorCode::invalid_argument, "rasa check needs n_i >= 2");
  RasaReport report;
  int nonpos_count = 0;
  bool any_mixed = false;
  for (int i = 0; i < d; ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    if (!mu[ii].is_probability() || !nu[ii].is_probability()) {
      fail(ErrorCode::invalid_argument,
           "axis " + std::to_string(i + 1) + ": mu and nu must be probability measures");
    }
    RasaFactor factor;
    const DiscreteSignedMeasure tau = nu[ii] - mu[ii];
    factor.power = tau.empty() ? tau : convolution_power(tau, n[i]);

    // Zero-mass convolution identities; failures indicate arithmetic trouble,
    // not a verdict.
    const double tv = std::max(1.0, factor.power.total_variation());
    if (std::abs(factor.power.mass()) > 1e-9 * tv) {
      fail(ErrorCode::internal_error, "convolution power lost the zero-mass identity");
    }
    for (int k = 1; k < n[i]; ++k) {
      if (std::abs(moment1(factor.power, k)) > 1e-8 * tv) {
        fail(ErrorCode::internal_error, "convolution power lost a vanishing moment");
      }
    }

    factor.sign = classify_spline_sign(factor.power, n[i], options);
    if (factor.sign.kind == SignClass::Kind::mixed) any_mixed = true;
    if (factor.sign.kind == SignClass::Kind::nonpos) ++nonpos_count;

    // Reported factor values: the truncated-power bridge evaluated on the
    // requested grid, or on support midpoints plus exterior probes.
    std::vector<double> grid;
    if (!a_grid.empty() && !a_grid[ii].empty()) {
      grid = a_grid[ii];
    } else if (!factor.power.empty()) {
      const auto& atoms = factor.power.atoms();
      grid.push_back(atoms.front().location[0] - 1.0);
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        grid.push_back(atoms[j].location[0]);
        if (j + 1 < atoms.size()) {
          grid.push_back(0.5 * (atoms[j].location[0] + atoms[j + 1].location[0]));
        }
      }
      grid.push_back(atoms.back().location[0] + 1.0);
    }
    for (double a : grid) {
      factor.values.emplace_back(
          a, truncated_power_moment(factor.power, a, n[i] - 1, TruncationSide::plus) /
                 factorial(n[i] - 1));
    }
    report.factors.push_back(std::move(factor));
  }
  if (any_mixed) {
    report.failed_condition = "sign_mixed";
  } else if (nonpos_count % 2 != 0) {
    report.failed_condition = "parity";
  } else {
    report.holds = true;
  }
  return report;
}

ConvexityCertificate strongly_convex_check(const FunctionSpec& f, double modulus,
                                           const MultiIndex& n, const Box& box,
                                           const CertifyOptions& options) {
  if (modulus < 0.0) fail(ErrorCode::invalid_argument, "strong convexity modulus must be >= 0");
  if (f.arity() != n.dim()) {
    fail(ErrorCode::invalid_argument, "function arity does not match the order vector");
  }
  auto order = std::make_shared<const MultiIndex>(n);
  FunctionSpec g = FunctionSpec::from_callable(
      f.arity(), [f, modulus, order](std::span<const double> x) {
        double monomial = modulus;
        for (int i = 0; i < order->dim() && monomial != 0.0; ++i) {
          monomial *= ipow(x[static_cast<std::size_t>(i)], (*order)[i]);
        }
        return f(x) - monomial;
      });
  return certify_box_convexity(g, n, box, options);
}

}  // namespace boxnc
