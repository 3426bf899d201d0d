#include "boxnc/function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "boxnc/quadrature.hpp"

namespace boxnc {

double ipow(double base, int exponent) {
  if (exponent == 0) return 1.0;  // includes 0^0 = 1
  if (exponent < 0) return 1.0 / ipow(base, -exponent);
  double result = 1.0;
  double b = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

double tpow(double e, int k) {
  if (k == 0) return 1.0;
  return e > 0.0 ? ipow(e, k) : 0.0;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double ExprNode::eval(std::span<const double> x) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::variable:
      return x[static_cast<std::size_t>(var_index)];
    case Kind::neg:
      return -lhs->eval(x);
    case Kind::exp_fn:
      return std::exp(lhs->eval(x));
    case Kind::abs_fn:
      return std::abs(lhs->eval(x));
    case Kind::add:
      return lhs->eval(x) + rhs->eval(x);
    case Kind::sub:
      return lhs->eval(x) - rhs->eval(x);
    case Kind::mul:
      return lhs->eval(x) * rhs->eval(x);
    case Kind::div: {
      const double denom = rhs->eval(x);
      if (denom == 0.0) fail(ErrorCode::evaluation_error, "division by zero");
      return lhs->eval(x) / denom;
    }
    case Kind::pow_fn:
      return ipow(lhs->eval(x), ipow_exponent);
    case Kind::tpow_plus:
      return tpow(lhs->eval(x), ipow_exponent);
    case Kind::tpow_minus:
      return tpow(-lhs->eval(x), ipow_exponent);
  }
  fail(ErrorCode::internal_error, "unhandled expression node");
}

double FunctionSpec::operator()(std::span<const double> x) const {
  if (!eval_) fail(ErrorCode::invalid_argument, "empty function");
  if (static_cast<int>(x.size()) != arity_) {
    fail(ErrorCode::invalid_argument,
         "function of arity " + std::to_string(arity_) + " evaluated at a point of dimension " +
             std::to_string(x.size()));
  }
  return eval_(x);
}

FunctionSpec FunctionSpec::from_expression(std::string_view text, int arity) {
  return from_expression_tree(parse_expression(text, arity), arity);
}

FunctionSpec FunctionSpec::from_expression_tree(ExprPtr tree, int arity) {
  FunctionSpec f;
  f.arity_ = arity;
  f.expr_ = tree;
  f.eval_ = [tree](std::span<const double> x) { return tree->eval(x); };
  f.descriptor_ = std::make_shared<const nlohmann::json>(
      nlohmann::json{{"expr", print_expression(*tree)}, {"arity", arity}});
  return f;
}

namespace {

int as_axis(double p, int arity, const char* name) {
  const int i = static_cast<int>(p);
  if (static_cast<double>(i) != p || i < 1 || i > arity) {
    fail(ErrorCode::invalid_argument,
         std::string(name) + ": axis parameter must be an integer in 1..d");
  }
  return i - 1;
}

int as_exponent(double p, const char* name) {
  const int k = static_cast<int>(p);
  if (static_cast<double>(k) != p || k < 0) {
    fail(ErrorCode::invalid_argument, std::string(name) + ": exponent must be an integer >= 0");
  }
  return k;
}

}  // namespace

FunctionSpec FunctionSpec::from_builtin(const std::string& name, std::vector<double> params,
                                        int arity) {
  if (arity < 0) fail(ErrorCode::invalid_argument, "builtin arity must be >= 0");
  FunctionSpec f;
  f.arity_ = arity;

  if (name == "const") {
    if (params.size() != 1) fail(ErrorCode::invalid_argument, "const expects 1 parameter");
    const double c = params[0];
    f.eval_ = [c](std::span<const double>) { return c; };
  } else if (name == "monomial") {
    if (params.size() != 2) fail(ErrorCode::invalid_argument, "monomial expects (axis, k)");
    const int axis = as_axis(params[0], arity, "monomial");
    const int k = as_exponent(params[1], "monomial");
    f.eval_ = [axis, k](std::span<const double> x) {
      return ipow(x[static_cast<std::size_t>(axis)], k);
    };
  } else if (name == "tensor_monomial") {
    if (static_cast<int>(params.size()) != arity) {
      fail(ErrorCode::invalid_argument, "tensor_monomial expects one exponent per axis");
    }
    std::vector<int> ks;
    ks.reserve(params.size());
    for (double p : params) ks.push_back(as_exponent(p, "tensor_monomial"));
    f.eval_ = [ks](std::span<const double> x) {
      double v = 1.0;
      for (std::size_t i = 0; i < ks.size(); ++i) v *= ipow(x[i], ks[i]);
      return v;
    };
  } else if (name == "hinge_plus" || name == "hinge_minus") {
    if (params.size() != 3) {
      fail(ErrorCode::invalid_argument, name + " expects (axis, threshold, k)");
    }
    const int axis = as_axis(params[0], arity, name.c_str());
    const double u = params[1];
    const int k = as_exponent(params[2], name.c_str());
    const bool plus = name == "hinge_plus";
    f.eval_ = [axis, u, k, plus](std::span<const double> x) {
      const double e = x[static_cast<std::size_t>(axis)] - u;
      return tpow(plus ? e : -e, k);
    };
  } else if (name == "exp_sum") {
    if (static_cast<int>(params.size()) != arity) {
      fail(ErrorCode::invalid_argument, "exp_sum expects one coefficient per axis");
    }
    const std::vector<double> cs = params;
    f.eval_ = [cs](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < cs.size(); ++i) s += cs[i] * x[i];
      return std::exp(s);
    };
  } else {
    fail(ErrorCode::invalid_argument, "unknown builtin '" + name + "'");
  }

  f.descriptor_ = std::make_shared<const nlohmann::json>(
      nlohmann::json{{"builtin", name}, {"params", params}, {"arity", arity}});
  return f;
}

FunctionSpec FunctionSpec::from_tabulated(std::vector<std::vector<double>> nodes,
                                          std::vector<double> values) {
  if (nodes.empty()) fail(ErrorCode::invalid_argument, "tabulated function needs >= 1 axis");
  std::size_t count = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].empty()) {
      fail(ErrorCode::invalid_argument,
           "tabulated axis " + std::to_string(i + 1) + " has no nodes");
    }
    for (std::size_t j = 0; j < nodes[i].size(); ++j) {
      for (std::size_t l = j + 1; l < nodes[i].size(); ++l) {
        if (nodes[i][j] == nodes[i][l]) {
          fail(ErrorCode::invalid_argument,
               "tabulated axis " + std::to_string(i + 1) + " has duplicate nodes");
        }
      }
    }
    count *= nodes[i].size();
  }
  if (values.size() != count) {
    fail(ErrorCode::invalid_argument,
         "tabulated value count " + std::to_string(values.size()) + " != product of node counts " +
             std::to_string(count));
  }

  auto grid = std::make_shared<const std::vector<std::vector<double>>>(std::move(nodes));
  auto vals = std::make_shared<const std::vector<double>>(std::move(values));
  FunctionSpec f;
  f.arity_ = static_cast<int>(grid->size());
  f.eval_ = [grid, vals](std::span<const double> x) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const auto& axis = (*grid)[i];
      auto it = std::find(axis.begin(), axis.end(), x[i]);
      if (it == axis.end()) {
        fail(ErrorCode::evaluation_error,
             "tabulated function probed off-grid on axis " + std::to_string(i + 1));
      }
      flat = flat * axis.size() + static_cast<std::size_t>(it - axis.begin());
    }
    return (*vals)[flat];
  };
  f.descriptor_ = std::make_shared<const nlohmann::json>(nlohmann::json{
      {"tabulated", {{"nodes", *grid}, {"values", *vals}}}, {"arity", f.arity_}});
  return f;
}

FunctionSpec FunctionSpec::weighted_sum(std::vector<std::pair<double, FunctionSpec>> parts) {
  if (parts.empty()) fail(ErrorCode::invalid_argument, "weighted sum needs >= 1 part");
  const int arity = parts.front().second.arity();
  bool all_serializable = true;
  for (const auto& [w, g] : parts) {
    if (!g.valid() || g.arity() != arity) {
      fail(ErrorCode::invalid_argument, "weighted sum parts must share one arity");
    }
    if (!std::isfinite(w)) fail(ErrorCode::invalid_argument, "weighted sum weight must be finite");
    all_serializable = all_serializable && g.serializable();
  }
  auto shared = std::make_shared<const std::vector<std::pair<double, FunctionSpec>>>(parts);
  FunctionSpec f;
  f.arity_ = arity;
  f.eval_ = [shared](std::span<const double> x) {
    double s = 0.0;
    for (const auto& [w, g] : *shared) s += w * g(x);
    return s;
  };
  if (all_serializable) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, g] : parts) terms.push_back({{"w", w}, {"f", g.to_json()}});
    f.descriptor_ = std::make_shared<const nlohmann::json>(
        nlohmann::json{{"sum", terms}, {"arity", arity}});
  }
  return f;
}

FunctionSpec FunctionSpec::from_callable(int arity,
                                         std::function<double(std::span<const double>)> fn) {
  if (arity < 0) fail(ErrorCode::invalid_argument, "arity must be >= 0");
  FunctionSpec f;
  f.arity_ = arity;
  f.eval_ = std::move(fn);
  return f;
}

FunctionSpec FunctionSpec::constant(int arity, double value) {
  return from_builtin("const", {value}, arity);
}

FunctionSpec FunctionSpec::from_json(const nlohmann::json& doc, int expected_arity) {
  if (!doc.is_object()) fail(ErrorCode::invalid_argument, "function document must be an object");
  int arity = expected_arity;
  if (doc.contains("arity")) {
    const int declared = doc.at("arity").get<int>();
    if (arity >= 0 && declared != arity) {
      fail(ErrorCode::invalid_argument,
           "function declares arity " + std::to_string(declared) + " but context expects " +
               std::to_string(arity));
    }
    arity = declared;
  }
  if (doc.contains("expr")) {
    if (arity < 0) fail(ErrorCode::invalid_argument, "expression function needs an arity");
    return from_expression(doc.at("expr").get<std::string>(), arity);
  }
  if (doc.contains("builtin")) {
    std::vector<double> params;
    if (doc.contains("params")) params = doc.at("params").get<std::vector<double>>();
    if (arity < 0) fail(ErrorCode::invalid_argument, "builtin function needs an arity");
    return from_builtin(doc.at("builtin").get<std::string>(), std::move(params), arity);
  }
  if (doc.contains("tabulated")) {
    const auto& t = doc.at("tabulated");
    auto f = from_tabulated(t.at("nodes").get<std::vector<std::vector<double>>>(),
                            t.at("values").get<std::vector<double>>());
    if (arity >= 0 && f.arity() != arity) {
      fail(ErrorCode::invalid_argument, "tabulated arity does not match context");
    }
    return f;
  }
  if (doc.contains("sum")) {
    std::vector<std::pair<double, FunctionSpec>> parts;
    for (const auto& item : doc.at("sum")) {
      parts.emplace_back(item.at("w").get<double>(), from_json(item.at("f"), arity));
    }
    return weighted_sum(std::move(parts));
  }
  fail(ErrorCode::invalid_argument,
       "function document needs one of: expr, builtin, tabulated, sum");
}

nlohmann::json FunctionSpec::to_json() const {
  if (!descriptor_) {
    fail(ErrorCode::invalid_argument, "closure-backed function has no serialized form");
  }
  return *descriptor_;
}

FunctionSpec slice_function(const FunctionSpec& f, const AxisSubset& a,
                            std::vector<double> fixed, const Box* box) {
  if (!f.valid()) fail(ErrorCode::invalid_argument, "empty function");
  if (a.dim() != f.arity()) {
    fail(ErrorCode::invalid_argument, "axis subset dimension does not match function arity");
  }
  const AxisSubset rest = a.complement();
  if (static_cast<int>(fixed.size()) != rest.size()) {
    fail(ErrorCode::invalid_argument,
         "expected " + std::to_string(rest.size()) + " fixed coordinates, got " +
             std::to_string(fixed.size()));
  }
  if (box != nullptr) {
    if (box->dim() != f.arity()) {
      fail(ErrorCode::invalid_argument, "box dimension does not match function arity");
    }
    for (int j = 0; j < rest.size(); ++j) {
      const int axis = rest.members()[static_cast<std::size_t>(j)];
      if (!box->axis(axis).contains(fixed[static_cast<std::size_t>(j)])) {
        fail(ErrorCode::domain_error,
             "fixed coordinate for axis " + std::to_string(axis + 1) + " outside the box");
      }
    }
  }

  auto kept = std::make_shared<const std::vector<int>>(a.members());
  auto held = std::make_shared<const std::vector<int>>(rest.members());
  auto z = std::make_shared<const std::vector<double>>(std::move(fixed));
  const int full_dim = f.arity();
  FunctionSpec g = FunctionSpec::from_callable(
      a.size(), [f, kept, held, z, full_dim](std::span<const double> y) {
        std::vector<double> x(static_cast<std::size_t>(full_dim));
        for (std::size_t j = 0; j < kept->size(); ++j) {
          x[static_cast<std::size_t>((*kept)[j])] = y[j];
        }
        for (std::size_t j = 0; j < held->size(); ++j) {
          x[static_cast<std::size_t>((*held)[j])] = (*z)[j];
        }
        return f(x);
      });
  return g;
}

FunctionSpec integrate_along_axis(const FunctionSpec& f, int axis, double anchor, int panels) {
  if (axis < 0 || axis >= f.arity()) fail(ErrorCode::invalid_argument, "axis out of range");
  if (panels < 1) fail(ErrorCode::invalid_argument, "panel count must be >= 1");
  return FunctionSpec::from_callable(
      f.arity(), [f, axis, anchor, panels](std::span<const double> x) {
        std::vector<double> probe(x.begin(), x.end());
        return gauss_legendre_integrate(
            anchor, x[static_cast<std::size_t>(axis)],
            [&](double t) {
              probe[static_cast<std::size_t>(axis)] = t;
              return f(probe);
            },
            panels);
      });
}

}  // namespace boxnc
