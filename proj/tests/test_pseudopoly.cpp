#include <doctest.h>

#include <cmath>

#include "boxnc/pseudopoly.hpp"
#include "testutil.hpp"

using namespace boxnc;
using namespace boxnc::testutil;

TEST_CASE("single-axis interpolants") {
  // one node: the constant slice
  const auto xy = FunctionSpec::from_expression("x1*x2", 2);
  const auto w0 = lagrange_slice_interpolant(xy, 0, {0.0});
  CHECK(w0.evaluate(std::vector<double>{2.0, 5.0}) == doctest::Approx(0.0));
  CHECK(w0.degree() == std::vector<int>{0, -1});

  const auto ex = FunctionSpec::from_expression("exp(x1)", 1);
  const auto w1 = lagrange_slice_interpolant(ex, 0, {0.0});
  CHECK(w1.evaluate(std::vector<double>{3.7}) == doctest::Approx(1.0));

  // line through (1,1),(2,4) is 3x-2, scaled by y
  const auto x2y = FunctionSpec::from_expression("x1^2*x2", 2);
  const auto w2 = lagrange_slice_interpolant(x2y, 0, {1.0, 2.0});
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform(-2.0, 3.0), y = rng.uniform(-2.0, 3.0);
    CHECK(w2.evaluate(std::vector<double>{x, y}) == doctest::Approx((3.0 * x - 2.0) * y));
  }
  CHECK(w2.evaluate(std::vector<double>{1.0, 0.8}) == doctest::Approx(0.8));
  CHECK(w2.evaluate(std::vector<double>{2.0, 0.8}) == doctest::Approx(4.0 * 0.8));

  CHECK_THROWS_AS(lagrange_slice_interpolant(xy, 0, {1.0, 1.0}), Error);
}

TEST_CASE("grid interpolants reproduce the inductive construction") {
  const auto sum = FunctionSpec::from_expression("x1+x2", 2);
  const auto w = grid_interpolant(sum, {{0.0}, {0.0}});
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    CHECK(w.evaluate(x) == doctest::Approx(sum(x)));  // W = f exactly here
  }

  const auto c = FunctionSpec::constant(3, 4.25);
  const auto wc = grid_interpolant(c, {{0.1}, {0.2}, {0.3}});
  CHECK(wc.evaluate(std::vector<double>{-1.0, 5.0, 0.0}) == doctest::Approx(4.25));

  const auto ee = FunctionSpec::from_builtin("exp_sum", {1.0, 1.0}, 2);
  const auto wee = grid_interpolant(ee, {{0.0}, {0.0}});
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
    CHECK(wee.evaluate(std::vector<double>{x, y}) ==
          doctest::Approx(std::exp(y) + std::exp(x) - 1.0));
  }
}

TEST_CASE("interpolation holds on every node hyperplane") {
  Rng rng(13);
  const std::vector<std::vector<double>> nodes{{0.2, 0.9, 1.6}, {0.4, 1.2}};
  for (const auto& f : base_catalog(2)) {
    const auto w = grid_interpolant(f, nodes);
    for (int axis = 0; axis < 2; ++axis) {
      for (double node : nodes[static_cast<std::size_t>(axis)]) {
        for (int probe = 0; probe < 10; ++probe) {
          std::vector<double> x{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
          x[static_cast<std::size_t>(axis)] = node;
          CHECK(close_rel(w.evaluate(x), f(x), 1e-9));
        }
      }
    }
  }
}

TEST_CASE("box-affinity verdicts") {
  const Box box = cube_box(2, 0.0, 2.0);
  CertifyOptions opts;
  opts.trials = 60;
  opts.seed = 3;

  const auto xy = FunctionSpec::from_expression("x1*x2", 2);
  CHECK(check_box_affine(xy, MultiIndex({2, 2}), box, opts).affine);

  // x^2 y = A_{2,1}(x) y: a pseudo-polynomial of degree (., 1)
  const auto x2y = FunctionSpec::from_expression("x1^2*x2", 2);
  CHECK(check_box_affine(x2y, MultiIndex({2, 2}), box, opts).affine);

  const auto f22 = FunctionSpec::from_expression("x1^2*x2^2", 2);
  const auto report = check_box_affine(f22, MultiIndex({2, 2}), box, opts);
  CHECK(!report.affine);
  CHECK(report.max_abs_value == doctest::Approx(1.0));
}

TEST_CASE("rigidity: interpolating a box-affine function reproduces it") {
  Rng rng(19);
  const std::vector<std::vector<double>> nodes{{0.3, 1.4}, {0.2, 1.0}};
  const auto f = FunctionSpec::from_builtin("exp_sum", {0.8, -0.5}, 2);
  const auto w1 = grid_interpolant(f, nodes);
  const auto w2 = grid_interpolant(w1.as_function(), nodes);
  for (int probe = 0; probe < 100; ++probe) {
    std::vector<double> x{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    CHECK(close_rel(w2.evaluate(x), w1.evaluate(x), 1e-8));
  }
}

TEST_CASE("regularization residuals") {
  // e^x e^y with single nodes at 0: residual is (e^x - 1)(e^y - 1)
  const auto ee = FunctionSpec::from_builtin("exp_sum", {1.0, 1.0}, 2);
  const auto reg = regularize(ee, MultiIndex({1, 1}), {{0.0}, {0.0}});
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
    CHECK(reg.residual({x, y}) ==
          doctest::Approx((std::exp(x) - 1.0) * (std::exp(y) - 1.0)).epsilon(1e-12));
    CHECK(std::abs(reg.residual({0.0, y})) < 1e-12);
    CHECK(std::abs(reg.residual({x, 0.0})) < 1e-12);
  }

  // f vanishing on the hyperplanes is untouched: g = f pointwise
  const auto xy = FunctionSpec::from_expression("x1*x2", 2);
  const auto reg_xy = regularize(xy, MultiIndex({1, 1}), {{0.0}, {0.0}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    CHECK(reg_xy.residual(x) == doctest::Approx(xy(x)).epsilon(1e-12));
  }
}

TEST_CASE("regularization is idempotent") {
  Rng rng(31);
  const std::vector<std::vector<double>> nodes{{0.25, 1.5}, {0.75}};
  const MultiIndex n({2, 1});
  for (const auto& f : base_catalog(2)) {
    const auto once = regularize(f, n, nodes);
    const auto twice = regularize(once.residual, n, nodes);
    for (int probe = 0; probe < 25; ++probe) {
      std::vector<double> x{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
      const double a = once.residual(x);
      const double b = twice.residual(x);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("coefficient closures match the double-sum form") {
  Rng rng(37);
  const auto f = FunctionSpec::from_expression("exp(x1)*x2+x1*x2^2", 2);
  const std::vector<std::vector<double>> nodes{{0.2, 0.9, 1.7}, {0.5, 1.3}};
  const auto w = grid_interpolant(f, nodes);
  for (int probe = 0; probe < 30; ++probe) {
    std::vector<double> x{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    double via_terms = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      const std::vector<double> rest{x[static_cast<std::size_t>(1 - axis)]};
      for (int k = 0; k <= w.degree()[static_cast<std::size_t>(axis)]; ++k) {
        via_terms +=
            w.coefficient(axis, k)(rest) * ipow(x[static_cast<std::size_t>(axis)], k);
      }
    }
    CHECK(close_rel(via_terms, w.evaluate(x), 1e-9));
  }
}

TEST_CASE("degree bookkeeping") {
  const auto f = FunctionSpec::from_expression("x1+x2+x3", 3);
  const auto w = grid_interpolant(f, {{0.1, 0.9}, {}, {0.4}});
  CHECK(w.degree() == std::vector<int>{1, -1, 0});
  CHECK(PseudoPolynomial::zero(2).evaluate(std::vector<double>{1.0, 2.0}) == 0.0);
}
