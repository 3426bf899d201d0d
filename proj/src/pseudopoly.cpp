#include "boxnc/pseudopoly.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace boxnc {

namespace {

std::vector<double> barycentric_weights(const std::vector<double>& nodes) {
  std::vector<double> w(nodes.size(), 1.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t l = 0; l < nodes.size(); ++l) {
      if (l != j) w[j] /= nodes[j] - nodes[l];
    }
  }
  return w;
}

double barycentric_eval(const std::vector<double>& nodes, const std::vector<double>& weights,
                        const std::vector<double>& values, double t) {
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (t == nodes[j]) return values[j];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double c = weights[j] / (t - nodes[j]);
    num += c * values[j];
    den += c;
  }
  return num / den;
}

void require_distinct_nodes(const std::vector<double>& nodes, int axis) {
  if (nodes.empty()) {
    fail(ErrorCode::invalid_argument,
         "axis " + std::to_string(axis + 1) + ": interpolation needs >= 1 node");
  }
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!std::isfinite(nodes[j])) {
      fail(ErrorCode::invalid_argument, "axis " + std::to_string(axis + 1) + ": node not finite");
    }
    for (std::size_t l = j + 1; l < nodes.size(); ++l) {
      if (nodes[j] == nodes[l]) {
        fail(ErrorCode::invalid_argument,
             "axis " + std::to_string(axis + 1) + ": duplicate interpolation node " +
                 std::to_string(nodes[j]));
      }
    }
  }
}

double eval_block(const PseudoPolynomial::AxisBlock& block, std::span<const double> x) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> values(block.nodes.size());
  for (std::size_t j = 0; j < block.nodes.size(); ++j) {
    probe[static_cast<std::size_t>(block.axis)] = block.nodes[j];
    values[j] = block.source(probe);
  }
  return barycentric_eval(block.nodes, block.bary_weights, values,
                          x[static_cast<std::size_t>(block.axis)]);
}

// Monomial coefficients of the Lagrange basis polynomial l_j over `nodes`.
std::vector<double> lagrange_basis_coeffs(const std::vector<double>& nodes, std::size_t j) {
  std::vector<double> poly{1.0};
  double denom = 1.0;
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    if (l == j) continue;
    denom *= nodes[j] - nodes[l];
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= nodes[l] * poly[i];
    }
    poly = std::move(next);
  }
  for (double& c : poly) c /= denom;
  return poly;
}

}  // namespace

PseudoPolynomial::PseudoPolynomial(int dim)
    : dim_(dim), degree_(static_cast<std::size_t>(dim), -1) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "pseudo-polynomial dimension must be >= 1");
}

PseudoPolynomial PseudoPolynomial::zero(int dim) { return PseudoPolynomial(dim); }

void PseudoPolynomial::add_block(AxisBlock block) {
  degree_[static_cast<std::size_t>(block.axis)] = static_cast<int>(block.nodes.size()) - 1;
  blocks_.push_back(std::move(block));
}

double PseudoPolynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    fail(ErrorCode::invalid_argument, "pseudo-polynomial evaluated at wrong dimension");
  }
  double v = 0.0;
  for (const auto& block : blocks_) v += eval_block(block, x);
  return v;
}

FunctionSpec PseudoPolynomial::as_function() const {
  auto self = std::make_shared<const PseudoPolynomial>(*this);
  return FunctionSpec::from_callable(
      dim_, [self](std::span<const double> x) { return self->evaluate(x); });
}

FunctionSpec PseudoPolynomial::coefficient(int axis, int k) const {
  if (axis < 0 || axis >= dim_) fail(ErrorCode::invalid_argument, "axis out of range");
  if (k < 0 || k > degree_[static_cast<std::size_t>(axis)]) {
    fail(ErrorCode::invalid_argument, "term exponent exceeds the axis degree");
  }
  const AxisBlock* found = nullptr;
  for (const auto& block : blocks_) {
    if (block.axis == axis) found = &block;
  }
  if (found == nullptr) fail(ErrorCode::internal_error, "axis block missing");

  // A_{ik}(y) = sum_j c_{jk} * source(y with node j inserted), with c the
  // monomial coefficients of the Lagrange basis.
  std::vector<double> combination(found->nodes.size());
  for (std::size_t j = 0; j < found->nodes.size(); ++j) {
    combination[j] = lagrange_basis_coeffs(found->nodes, j)[static_cast<std::size_t>(k)];
  }
  auto block = std::make_shared<const AxisBlock>(*found);
  auto coeffs = std::make_shared<const std::vector<double>>(std::move(combination));
  const int dim = dim_;
  return FunctionSpec::from_callable(
      dim - 1, [block, coeffs, dim](std::span<const double> y) {
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (int i = 0, j = 0; i < dim; ++i) {
          if (i != block->axis) x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(j++)];
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < block->nodes.size(); ++j) {
          x[static_cast<std::size_t>(block->axis)] = block->nodes[j];
          acc += (*coeffs)[j] * block->source(x);
        }
        return acc;
      });
}

PseudoPolynomial lagrange_slice_interpolant(const FunctionSpec& f, int axis,
                                            std::vector<double> nodes) {
  if (!f.valid()) fail(ErrorCode::invalid_argument, "empty function");
  if (axis < 0 || axis >= f.arity()) fail(ErrorCode::invalid_argument, "axis out of range");
  require_distinct_nodes(nodes, axis);
  PseudoPolynomial w(f.arity());
  PseudoPolynomial::AxisBlock block;
  block.axis = axis;
  block.bary_weights = barycentric_weights(nodes);
  block.nodes = std::move(nodes);
  block.source = f;
  w.add_block(std::move(block));
  return w;
}

PseudoPolynomial grid_interpolant(const FunctionSpec& f,
                                  const std::vector<std::vector<double>>& nodes) {
  if (!f.valid()) fail(ErrorCode::invalid_argument, "empty function");
  if (static_cast<int>(nodes.size()) != f.arity()) {
    fail(ErrorCode::invalid_argument, "need one node tuple per axis (possibly empty)");
  }
  const int d = f.arity();
  PseudoPolynomial w(d);
  FunctionSpec residual = f;  // g_i = f - sum_{j<i} W_j
  for (int i = 0; i < d; ++i) {
    if (nodes[static_cast<std::size_t>(i)].empty()) continue;
    require_distinct_nodes(nodes[static_cast<std::size_t>(i)], i);
    PseudoPolynomial::AxisBlock block;
    block.axis = i;
    block.nodes = nodes[static_cast<std::size_t>(i)];
    block.bary_weights = barycentric_weights(block.nodes);
    block.source = residual;
    auto shared = std::make_shared<const PseudoPolynomial::AxisBlock>(block);
    FunctionSpec prev = residual;
    residual = FunctionSpec::from_callable(d, [prev, shared](std::span<const double> x) {
      return prev(x) - eval_block(*shared, x);
    });
    w.add_block(std::move(block));
  }
  return w;
}

Regularization regularize(const FunctionSpec& f, const MultiIndex& n,
                          const std::vector<std::vector<double>>& nodes) {
  if (n.dim() != f.arity()) {
    fail(ErrorCode::invalid_argument, "order vector does not match function arity");
  }
  if (static_cast<int>(nodes.size()) != n.dim()) {
    fail(ErrorCode::invalid_argument, "need one node tuple per axis");
  }
  for (int i = 0; i < n.dim(); ++i) {
    if (static_cast<int>(nodes[static_cast<std::size_t>(i)].size()) != n[i]) {
      fail(ErrorCode::invalid_argument,
           "axis " + std::to_string(i + 1) + ": regularization needs exactly n_i nodes");
    }
  }
  Regularization out{grid_interpolant(f, nodes), FunctionSpec()};
  FunctionSpec w = out.interpolant.as_function();
  out.residual = FunctionSpec::from_callable(
      f.arity(), [f, w](std::span<const double> x) { return f(x) - w(x); });
  return out;
}

}  // namespace boxnc
