#ifndef BOXNC_PSEUDOPOLY_HPP
#define BOXNC_PSEUDOPOLY_HPP

#include <vector>

#include "boxnc/divdiff.hpp"
#include "boxnc/function.hpp"

namespace boxnc {

// W(x) = sum_i sum_{k=0}^{deg_i} A_{ik}(x_{{i}'}) x_i^k, the general
// box-affine form. Each axis block interpolates a source function through its
// nodes; evaluation runs the barycentric formula over slice values, so the
// coefficient functions A_{ik} stay exact closures rather than tabulated
// arrays. A degree of -1 means the axis contributes no terms.
class PseudoPolynomial {
 public:
  struct AxisBlock {
    int axis = -1;
    std::vector<double> nodes;
    std::vector<double> bary_weights;
    FunctionSpec source;  // evaluated with x_axis replaced by each node
  };

  static PseudoPolynomial zero(int dim);

  int dim() const { return dim_; }
  const std::vector<int>& degree() const { return degree_; }
  const std::vector<AxisBlock>& blocks() const { return blocks_; }

  double evaluate(std::span<const double> x) const;
  FunctionSpec as_function() const;

  // Coefficient evaluator A_{ik} as a function of the d-1 remaining
  // coordinates (ascending axis order).
  FunctionSpec coefficient(int axis, int k) const;

  friend PseudoPolynomial lagrange_slice_interpolant(const FunctionSpec& f, int axis,
                                                     std::vector<double> nodes);
  friend PseudoPolynomial grid_interpolant(const FunctionSpec& f,
                                           const std::vector<std::vector<double>>& nodes);

 private:
  explicit PseudoPolynomial(int dim);
  void add_block(AxisBlock block);

  int dim_ = 0;
  std::vector<int> degree_;
  std::vector<AxisBlock> blocks_;
};

// Lemma-style single-axis interpolant: W agrees with f wherever x_axis hits
// one of the nodes; degree is nodes.size()-1 on that axis, -1 elsewhere.
PseudoPolynomial lagrange_slice_interpolant(const FunctionSpec& f, int axis,
                                            std::vector<double> nodes);

// Inductive construction over all axes: W agrees with f on every hyperplane
// x_i = u_{ij}. nodes[i] may be empty (degree -1 on that axis).
PseudoPolynomial grid_interpolant(const FunctionSpec& f,
                                  const std::vector<std::vector<double>>& nodes);

struct Regularization {
  PseudoPolynomial interpolant;
  FunctionSpec residual;  // f - W; vanishes on all node hyperplanes
};

Regularization regularize(const FunctionSpec& f, const MultiIndex& n,
                          const std::vector<std::vector<double>>& nodes);

}  // namespace boxnc

#endif
