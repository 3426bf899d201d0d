#ifndef BOXNC_REPRESENT_HPP
#define BOXNC_REPRESENT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxnc/core.hpp"
#include "boxnc/function.hpp"
#include "boxnc/measures.hpp"
#include "boxnc/pseudopoly.hpp"

namespace boxnc {

enum class ChiSide { L, r };

// Signed half-open interval indicator: +1 between x and y, -1 between y and
// x, closed on the left (L) or on the right (r).
int chi(ChiSide side, double x, double y, double u);

ChiSide chi_side_from_char(char c);

// Data of the integral representation of a box-n-convex function: an anchor,
// a pseudo-polynomial of degree (n_1-1, ..., n_d-1), and one nonnegative
// discrete measure per corner label b in {L,r}^d. Canonical mode restricts L
// to axes with n_i = 1.
struct RepresentationSpec {
  MultiIndex n;
  std::vector<double> alpha;
  Box box;
  std::optional<PseudoPolynomial> w;
  std::vector<std::pair<std::string, DiscreteSignedMeasure>> parts;  // sorted by key
  bool canonical = true;

  RepresentationSpec(MultiIndex n_, std::vector<double> alpha_, Box box_)
      : n(std::move(n_)), alpha(std::move(alpha_)), box(std::move(box_)) {}

  void validate() const;
};

// Evaluator of
//   W(x) + sum_b sum_atoms w * prod_j (x_j-u_j)^{n_j-1}/(n_j-1)! * chi^{b_j}(alpha_j, x_j; u_j)
// with 0^0 = 1. Box-n-convex by construction.
FunctionSpec synthesize(const RepresentationSpec& spec);

// prod_{j in A'} (x_j-u_j)_+^{n_j-1}/(n_j-1)! * prod_{j in A} (-1)^{n_j} (x_j-u_j)_-^{n_j-1}/(n_j-1)!
FunctionSpec spline_basis(const AxisSubset& a, std::span<const double> u, const MultiIndex& n);

struct ExtractedCell {
  std::vector<double> lo;
  std::vector<double> hi;
  double mass = 0.0;
};

struct ExtractionResult {
  std::vector<ExtractedCell> cells;
  DiscreteSignedMeasure recovered;  // cell masses placed at cell centers
};

// For n = (1,...,1): evaluates the rectangle-mass corner sums of the
// synthesized function over the grid of cells cut by `cuts` (sorted
// coordinates per axis). When the cells separate the spec's atoms, the cell
// masses reproduce the atom weights.
ExtractionResult roundtrip_extract(const RepresentationSpec& spec,
                                   const std::vector<std::vector<double>>& cuts);

}  // namespace boxnc

#endif
