#include <doctest.h>

#include <nlohmann/json.hpp>

#include "boxnc/function.hpp"
#include "boxnc/rng.hpp"

using namespace boxnc;

TEST_CASE("parser builds the expected trees") {
  const auto product = parse_expression("x1*x2", 2);
  CHECK(product->kind == ExprNode::Kind::mul);
  CHECK(product->lhs->kind == ExprNode::Kind::variable);
  CHECK(product->rhs->var_index == 1);

  const auto hinge = parse_expression("tpow_plus(x1-0.5,1)", 1);
  CHECK(hinge->kind == ExprNode::Kind::tpow_plus);
  CHECK(hinge->ipow_exponent == 1);
  CHECK(hinge->lhs->kind == ExprNode::Kind::sub);
}

TEST_CASE("parser rejects bad input with positions") {
  CHECK_THROWS_WITH_AS(parse_expression("x3", 2), doctest::Contains("out of range"), Error);
  CHECK_THROWS_WITH_AS(parse_expression("x1+", 1), doctest::Contains("position"), Error);
  CHECK_THROWS_WITH_AS(parse_expression("foo(x1)", 1), doctest::Contains("unknown identifier"),
                       Error);
  CHECK_THROWS_AS(parse_expression("x1^x1", 1), Error);  // integer exponent required
  CHECK_THROWS_AS(parse_expression("tpow_plus(x1)", 1), Error);
  CHECK_THROWS_AS(parse_expression("(x1", 1), Error);
}

TEST_CASE("evaluation semantics") {
  CHECK(FunctionSpec::from_expression("x1*x2", 2)({2.0, 3.0}) == 6.0);
  CHECK(FunctionSpec::from_expression("exp(x1)", 1)({0.0}) == 1.0);
  CHECK(FunctionSpec::from_expression("tpow_plus(x1-0.5,1)", 1)({0.25}) == 0.0);
  CHECK(FunctionSpec::from_expression("tpow_plus(x1-0.5,1)", 1)({0.75}) == doctest::Approx(0.25));
  CHECK(FunctionSpec::from_expression("-x1^2", 1)({3.0}) == -9.0);  // pow binds tighter than neg
  CHECK(FunctionSpec::from_expression("2/x1", 1)({4.0}) == 0.5);
  CHECK_THROWS_AS(FunctionSpec::from_expression("1/x1", 1)({0.0}), Error);
}

TEST_CASE("0^0 convention") {
  CHECK(ipow(0.0, 0) == 1.0);
  CHECK(tpow(0.0, 0) == 1.0);
  CHECK(tpow(-5.0, 0) == 1.0);
  CHECK(tpow(-5.0, 2) == 0.0);
  CHECK(FunctionSpec::from_expression("x1^0", 1)({0.0}) == 1.0);
}

TEST_CASE("truncated powers recombine to plain powers") {
  Rng rng(3);
  for (int k = 1; k <= 5; ++k) {
    for (int trial = 0; trial < 40; ++trial) {
      const double e = rng.uniform(-3.0, 3.0);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      const double combined = tpow(e, k) + sign * tpow(-e, k);
      CHECK(combined == doctest::Approx(ipow(e, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("canonical printer is a parse fixpoint") {
  const char* samples[] = {
      "x1*x2",        "x1+x2*x3",            "(x1+x2)*x3",
      "-x1^2",        "-(x1*x2)",            "x1-(x2-x3)",
      "x1/x2/x3",     "exp(x1+0.5)",         "abs(-x1)",
      "tpow_plus(x1-0.5,1)",                 "tpow_minus(2*x2-1,3)",
      "x1^2*x2^2",    "1.5e-3+x1",           "x1^-2",
  };
  Rng rng(99);
  for (const char* text : samples) {
    const int arity = 3;
    const auto tree = parse_expression(text, arity);
    const std::string printed = print_expression(*tree);
    const auto reparsed = parse_expression(printed, arity);
    CHECK(print_expression(*reparsed) == printed);
    // and the printed form evaluates identically
    const auto f = FunctionSpec::from_expression_tree(tree, arity);
    const auto g = FunctionSpec::from_expression_tree(reparsed, arity);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> x{rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)};
      CHECK(f(x) == g(x));
    }
  }
}

TEST_CASE("evaluation is deterministic") {
  const auto f = FunctionSpec::from_expression("exp(x1)*x2-abs(x1-x2)^3", 2);
  const std::vector<double> x{0.773, -1.218};
  const double first = f(x);
  for (int i = 0; i < 5; ++i) CHECK(f(x) == first);
}

TEST_CASE("builtin catalog") {
  CHECK(FunctionSpec::from_builtin("monomial", {2, 3}, 2)({5.0, 2.0}) == 8.0);
  CHECK(FunctionSpec::from_builtin("tensor_monomial", {2, 2}, 2)({2.0, 3.0}) == 36.0);
  CHECK(FunctionSpec::from_builtin("hinge_plus", {1, 0.5, 1}, 1)({0.25}) == 0.0);
  CHECK(FunctionSpec::from_builtin("hinge_minus", {1, 0.5, 2}, 1)({-0.5}) == 1.0);
  CHECK(FunctionSpec::from_builtin("exp_sum", {1, 1}, 2)({0.0, 0.0}) == 1.0);
  CHECK(FunctionSpec::from_builtin("const", {7}, 3)({1.0, 2.0, 3.0}) == 7.0);
  CHECK_THROWS_AS(FunctionSpec::from_builtin("nope", {}, 1), Error);
  CHECK_THROWS_AS(FunctionSpec::from_builtin("monomial", {5, 1}, 2), Error);
}

TEST_CASE("tabulated functions are exact at nodes and reject anything else") {
  // last axis fastest: values[i1*2 + i2]
  const auto f = FunctionSpec::from_tabulated({{0.0, 1.0}, {10.0, 20.0}}, {1, 2, 3, 4});
  CHECK(f({0.0, 10.0}) == 1.0);
  CHECK(f({0.0, 20.0}) == 2.0);
  CHECK(f({1.0, 10.0}) == 3.0);
  CHECK(f({1.0, 20.0}) == 4.0);
  CHECK_THROWS_WITH_AS(f({0.5, 10.0}), doctest::Contains("off-grid"), Error);
  CHECK_THROWS_AS(FunctionSpec::from_tabulated({{0.0, 0.0}}, {1, 2}), Error);
  CHECK_THROWS_AS(FunctionSpec::from_tabulated({{0.0, 1.0}}, {1, 2, 3}), Error);
}

TEST_CASE("weighted sums") {
  auto f = FunctionSpec::weighted_sum({{2.0, FunctionSpec::from_expression("x1", 1)},
                                       {-1.0, FunctionSpec::from_expression("x1^2", 1)}});
  CHECK(f({3.0}) == doctest::Approx(-3.0));
}

TEST_CASE("function JSON round trip") {
  const char* docs[] = {
      R"({"expr":"x1*x2+exp(x1)","arity":2})",
      R"({"builtin":"tensor_monomial","params":[2,2],"arity":2})",
      R"({"tabulated":{"nodes":[[0,1]],"values":[3,4]}})",
      R"({"sum":[{"w":1.5,"f":{"expr":"x1","arity":1}},{"w":-0.5,"f":{"builtin":"monomial","params":[1,2],"arity":1}}]})",
  };
  for (const char* text : docs) {
    const auto doc = nlohmann::json::parse(text);
    const auto f = FunctionSpec::from_json(doc, -1);
    const auto g = FunctionSpec::from_json(f.to_json(), -1);
    CHECK(g.arity() == f.arity());
    for (double probe : {0.0, 1.0}) {
      std::vector<double> x(static_cast<std::size_t>(f.arity()), probe);
      CHECK(f(x) == g(x));
    }
  }
  CHECK_THROWS_AS(FunctionSpec::from_json(nlohmann::json{{"expr", "x1"}}, -1), Error);
  CHECK_THROWS_AS(FunctionSpec::from_json(nlohmann::json{{"expr", "x1"}, {"arity", 1}}, 2),
                  Error);
}

TEST_CASE("arity-0 slices behave as constants") {
  const auto f = FunctionSpec::constant(0, 4.5);
  CHECK(f(std::span<const double>{}) == 4.5);
}
