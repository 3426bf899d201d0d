#ifndef BOXNC_INEQUALITIES_HPP
#define BOXNC_INEQUALITIES_HPP

#include <string>
#include <vector>

#include "boxnc/divdiff.hpp"
#include "boxnc/measures.hpp"
#include "boxnc/orders.hpp"

namespace boxnc {

// One axis marginal of a product mixture: a discrete probability measure, a
// uniform segment handled by composite Gauss-Legendre quadrature, or a point
// mass.
struct Marginal {
  enum class Kind { atoms, uniform, point } kind = Kind::point;
  DiscreteSignedMeasure atoms{1};
  UniformSegment uniform;
  double point = 0.0;

  static Marginal from_atoms(DiscreteSignedMeasure m);
  static Marginal from_uniform(double a, double b, int resolution = 8);
  static Marginal point_mass(double x);

  double mean() const;
  // (node, weight) pairs with weights summing to 1. resolution_override > 0
  // replaces a uniform marginal's stored resolution.
  std::vector<std::pair<double, double>> discretize(int resolution_override = 0) const;
};

struct GapReport {
  double value = 0.0;
  // Expectation per subset A (mask over axes, bit i set = axis i+1 in A);
  // value = sum over masks of (-1)^popcount * expectation.
  std::vector<std::pair<unsigned, double>> subset_terms;
  int resolution = 0;
  bool holds = false;  // value >= -tol
  double tol = 1e-8;
};

// sum_{A subset {1..d}} (-1)^{|A|} E f(Z_{1,A}, ..., Z_{d,A}) where Z_{i,A}
// draws from y_marginals[i] off A and from x_marginals[i] on A, independently
// across axes. Subset terms are accumulated in ascending mask order.
GapReport alternating_gap(const FunctionSpec& f, const std::vector<Marginal>& x_marginals,
                          const std::vector<Marginal>& y_marginals, int resolution = 0,
                          double tol = 1e-8);

enum class HermiteHadamardKind { first, second };

// first:  X_i = midpoint mass, Y_i = uniform on [a_i, b_i]
// second: X_i = uniform,       Y_i = (delta_a + delta_b)/2
GapReport hh_check(const FunctionSpec& f, std::span<const double> a, std::span<const double> b,
                   HermiteHadamardKind kind, int resolution = 8, double tol = 1e-8);

// X_i = point mass at the marginal mean, Y_i = the marginal itself.
GapReport jensen_gap(const FunctionSpec& f, const std::vector<Marginal>& marginals,
                     int resolution = 0, double tol = 1e-8);

struct RasaFactor {
  DiscreteSignedMeasure power{1};  // (nu_i - mu_i)^{* n_i}
  SignClass sign;
  std::vector<std::pair<double, double>> values;  // factor function on the A grid
};

struct RasaReport {
  bool holds = false;
  std::string failed_condition = "none";  // none | sign_mixed | parity
  std::vector<RasaFactor> factors;
};

// Convolution-power product criterion: builds tau_i = nu_i - mu_i, takes the
// n_i-th convolution power, checks the vanishing-moment identities, and
// classifies each factor's truncated-power integral by the exact piecewise
// scheme. a_grid (optional, per axis) only feeds the reported value tables;
// empty lists get support midpoints plus exterior probes.
RasaReport rasa_check(const std::vector<DiscreteSignedMeasure>& mu,
                      const std::vector<DiscreteSignedMeasure>& nu, const MultiIndex& n,
                      const std::vector<std::vector<double>>& a_grid = {},
                      const OrderCheckOptions& options = {});

// Certifies f - C * prod_i x_i^{n_i} box-n-convex.
ConvexityCertificate strongly_convex_check(const FunctionSpec& f, double modulus,
                                           const MultiIndex& n, const Box& box,
                                           const CertifyOptions& options);

}  // namespace boxnc

#endif
