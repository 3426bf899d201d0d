#ifndef BOXNC_FUNCTION_HPP
#define BOXNC_FUNCTION_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "boxnc/core.hpp"

namespace boxnc {

// Integer power with the 0^0 = 1 convention used throughout.
double ipow(double base, int exponent);

// Truncated power max(e, 0)^k; tpow(e, 0) == 1 for every e.
double tpow(double e, int k);

double factorial(int n);

// Expression AST produced by parse_expression. Nodes are immutable and shared.
struct ExprNode {
  enum class Kind {
    constant,
    variable,   // x1..xd, var_index 0-based
    neg,
    exp_fn,
    abs_fn,
    add,
    sub,
    mul,
    div,
    pow_fn,     // lhs ^ ipow
    tpow_plus,  // max(lhs, 0)^ipow
    tpow_minus  // max(-lhs, 0)^ipow
  };

  Kind kind;
  double value = 0.0;
  int var_index = -1;
  int ipow_exponent = 0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;

  double eval(std::span<const double> x) const;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

// Parses infix arithmetic with precedence ^  >  unary -  >  * /  >  + -,
// parentheses, and the calls exp(e), abs(e), tpow_plus(e,k), tpow_minus(e,k).
// Variables are x1..x<d>; anything above d is rejected. Errors carry the
// source position.
ExprPtr parse_expression(std::string_view text, int arity);

// Canonical printer; parse(print(parse(t))) reproduces the same text.
std::string print_expression(const ExprNode& node);

// A d-variate real function. One value type covers every function the library
// manipulates: parsed expressions, named builtins, tabulated grids, weighted
// sums, and opaque closures produced by other modules (interpolants,
// synthesized representations). Evaluation is pure; instances are immutable
// and safe to share across threads.
class FunctionSpec {
 public:
  FunctionSpec() = default;

  int arity() const { return arity_; }
  bool valid() const { return static_cast<bool>(eval_); }

  double operator()(std::span<const double> x) const;
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }
  // Convenience for arity-1 specs.
  double eval1(double x) const { return (*this)(std::span<const double>(&x, 1)); }

  static FunctionSpec from_expression(std::string_view text, int arity);
  static FunctionSpec from_expression_tree(ExprPtr tree, int arity);
  // Catalog: const(c); monomial(i,k); tensor_monomial(k1..kd);
  // hinge_plus(i,u,k); hinge_minus(i,u,k); exp_sum(c1..cd).
  static FunctionSpec from_builtin(const std::string& name, std::vector<double> params,
                                   int arity);
  // Values laid out with the last axis varying fastest. Evaluation is exact at
  // grid nodes and an error anywhere else: no silent interpolation.
  static FunctionSpec from_tabulated(std::vector<std::vector<double>> nodes,
                                     std::vector<double> values);
  static FunctionSpec weighted_sum(std::vector<std::pair<double, FunctionSpec>> parts);
  static FunctionSpec from_callable(int arity,
                                    std::function<double(std::span<const double>)> fn);
  static FunctionSpec constant(int arity, double value);

  // JSON forms: {"expr": "..."} | {"builtin": "...", "params": [...]}
  //           | {"tabulated": {"nodes": [[...]], "values": [...]}}
  //           | {"sum": [{"w": ..., "f": ...}, ...]}
  // expected_arity < 0 means "take it from the document".
  static FunctionSpec from_json(const nlohmann::json& doc, int expected_arity);
  nlohmann::json to_json() const;  // Error for closure-backed specs
  bool serializable() const { return descriptor_ != nullptr; }

  const ExprPtr& expression() const { return expr_; }

 private:
  int arity_ = -1;
  std::function<double(std::span<const double>)> eval_;
  ExprPtr expr_;
  std::shared_ptr<const nlohmann::json> descriptor_;
};

// f_A^z: fixes the coordinates listed in complement(A) at z and exposes the
// rest, in ascending axis order. If a box is supplied, z is checked against
// the fixed axes' intervals.
FunctionSpec slice_function(const FunctionSpec& f, const AxisSubset& a,
                            std::vector<double> fixed, const Box* box = nullptr);

// Antiderivative along one axis: x -> integral of f from anchor to x_axis in
// the axis coordinate, by fixed-order composite Gauss-Legendre quadrature.
FunctionSpec integrate_along_axis(const FunctionSpec& f, int axis, double anchor,
                                  int panels = 16);

}  // namespace boxnc

#endif
