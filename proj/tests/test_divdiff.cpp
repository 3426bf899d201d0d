#include <doctest.h>

#include <cmath>

#include "boxnc/divdiff.hpp"
#include "boxnc/pseudopoly.hpp"
#include "boxnc/quadrature.hpp"
#include "testutil.hpp"

using namespace boxnc;
using namespace boxnc::testutil;

namespace {

std::function<double(double)> unary(const FunctionSpec& f) {
  return [f](double x) { return f.eval1(x); };
}

}  // namespace

TEST_CASE("one-dimensional divided differences") {
  const auto identity = FunctionSpec::from_expression("x1", 1);
  CHECK(divdiff_1d({{0.0, 1.0}}, unary(identity)) == doctest::Approx(1.0));

  const auto seven = FunctionSpec::constant(1, 7.0);
  CHECK(divdiff_1d({{1.0, 2.0, 4.0}}, unary(seven)) == doctest::Approx(0.0));

  // expanded-sum oracle: 1/((1)(-1)) + 8/((2)(1)) = 3
  const auto cube = FunctionSpec::from_expression("x1^3", 1);
  CHECK(divdiff_1d({{0.0, 1.0, 2.0}}, unary(cube), DdMethod::recursive) == doctest::Approx(3.0));
  CHECK(divdiff_1d({{0.0, 1.0, 2.0}}, unary(cube), DdMethod::expanded) == doctest::Approx(3.0));

  CHECK_THROWS_AS(divdiff_1d({{0.0, 0.0, 1.0}}, unary(cube)), Error);
}

TEST_CASE("multiple divided differences on closed forms") {
  const auto xy = FunctionSpec::from_expression("x1*x2", 2);
  const PointSystem unit({{0.0, 1.0}, {0.0, 1.0}});
  CHECK(divdiff_multi(unit, xy, DdMethod::recursive) == doctest::Approx(1.0));
  CHECK(divdiff_multi(unit, xy, DdMethod::expanded) == doctest::Approx(1.0));

  const auto c = FunctionSpec::constant(2, 3.25);
  CHECK(divdiff_multi(unit, c) == doctest::Approx(0.0));

  const auto x2y = FunctionSpec::from_expression("x1^2*x2", 2);
  const PointSystem sys({{0.0, 1.0, 2.0}, {0.0, 1.0}});
  CHECK(divdiff_multi(sys, x2y, DdMethod::recursive) == doctest::Approx(1.0));
  CHECK(divdiff_multi(sys, x2y, DdMethod::expanded) == doctest::Approx(1.0));
}

TEST_CASE("nested and expanded methods agree on random systems") {
  Rng rng(17);
  const auto catalog3 = base_catalog(3);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_index(3));
    std::vector<int> orders;
    for (int i = 0; i < d; ++i) orders.push_back(static_cast<int>(rng.next_index(4)));
    const MultiIndex n(orders);
    const Box box = cube_box(d, -1.5, 2.0);
    CertifyOptions opts;
    opts.seed = rng.next_u64();
    SystemSampler sampler(box, n, opts);
    Rng sample_rng(opts.seed);
    const PointSystem system = sampler.next(sample_rng);
    const auto catalog = base_catalog(d);
    const FunctionSpec& f = catalog[rng.next_index(catalog.size())];
    const double nested = divdiff_multi(system, f, DdMethod::recursive);
    const ExpandedValue expanded = divdiff_multi_expanded(system, f);
    const double scale = std::max({1.0, std::abs(nested), std::abs(expanded.value)});
    CHECK(std::abs(nested - expanded.value) <= 1e-9 * std::max(scale, expanded.max_term));
  }
  (void)catalog3;
}

TEST_CASE("axis order and within-axis node order are irrelevant") {
  Rng rng(29);
  const auto f = FunctionSpec::from_expression("exp(x1)*x2^2+x3^3*x1", 3);
  const PointSystem sys({{0.1, 0.8, 1.4}, {-0.5, 0.3}, {0.2, 0.9, 1.7, 2.4}});
  const double reference = divdiff_multi(sys, f, DdMethod::recursive);
  const std::vector<std::vector<int>> orders{{0, 1, 2}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& order : orders) {
    const double v = divdiff_multi(sys, f, DdMethod::recursive, order);
    CHECK(close_rel(v, reference, 1e-10));
  }
  // permuting nodes within one axis tuple
  const PointSystem shuffled({{1.4, 0.1, 0.8}, {0.3, -0.5}, {2.4, 0.2, 1.7, 0.9}});
  CHECK(close_rel(divdiff_multi(shuffled, f, DdMethod::recursive), reference, 1e-10));
  CHECK(close_rel(divdiff_multi_expanded(shuffled, f).value, reference, 1e-10));
}

TEST_CASE("product rule for tensor factorizations") {
  // f(x) = g(x_A) * h(x_{A'}) with A = {1,3}
  const auto f = FunctionSpec::from_expression("(x1^2+exp(x3))*(x2^3-x2)", 3);
  const auto g = FunctionSpec::from_expression("x1^2+exp(x2)", 2);  // variables of A in order
  const auto h = FunctionSpec::from_expression("x1^3-x1", 1);
  const PointSystem sys({{0.0, 0.7, 1.3}, {-1.0, -0.2, 0.4}, {0.5, 1.1}});
  const PointSystem sys_a({{0.0, 0.7, 1.3}, {0.5, 1.1}});
  const PointSystem sys_rest({{-1.0, -0.2, 0.4}});
  const double full = divdiff_multi(sys, f);
  const double split = divdiff_multi(sys_a, g) * divdiff_multi(sys_rest, h);
  CHECK(close_rel(full, split, 1e-10));
}

TEST_CASE("annihilation of pseudo-polynomials") {
  Rng rng(41);
  const MultiIndex n({2, 2});
  const Box box = cube_box(2, 0.0, 2.0);
  for (const auto& f : base_catalog(2)) {
    const PseudoPolynomial w = grid_interpolant(f, {{0.3, 1.1}, {0.5, 1.7}});
    CertifyOptions opts;
    opts.trials = 40;
    opts.seed = rng.next_u64();
    const AffinityReport report = check_box_affine(w.as_function(), n, box, opts);
    CHECK(report.affine);
  }
}

TEST_CASE("right-limit formula of the derivative") {
  const auto square = [](double x) { return x * x; };
  const auto dsquare = [](double x) { return 2.0 * x; };
  // points (0,1), k = first node
  CHECK(divdiff_right_limit({{0.0, 1.0}}, 0, square, dsquare) == doctest::Approx(1.0));

  // linear functions vanish for n >= 2
  const auto lin = [](double x) { return 3.0 * x - 1.0; };
  const auto dlin = [](double) { return 3.0; };
  CHECK(divdiff_right_limit({{0.2, 0.9, 1.7}}, 1, lin, dlin) == doctest::Approx(0.0));

  // summing over k recovers [x_1,...,x_n; f'_R]
  const double total = divdiff_right_limit({{0.0, 1.0}}, 0, square, dsquare) +
                       divdiff_right_limit({{0.0, 1.0}}, 1, square, dsquare);
  CHECK(total == doctest::Approx(2.0));  // [0,1; 2x]

  Rng rng(53);
  const auto f = [](double x) { return std::exp(x) + x * x * x; };
  const auto fp = [](double x) { return std::exp(x) + 3.0 * x * x; };
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> pts;
    while (pts.size() < 4) {
      const double cand = rng.uniform(-1.0, 1.5);
      bool ok = true;
      for (double p : pts) ok = ok && std::abs(p - cand) > 1e-2;
      if (ok) pts.push_back(cand);
    }
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += divdiff_right_limit(pts, k, f, fp);
    const double direct = divdiff_1d(pts, fp);
    CHECK(close_rel(sum, direct, 1e-9));
  }
}

TEST_CASE("certifier verdicts on closed forms") {
  const Box box = cube_box(2, 0.0, 3.0);
  CertifyOptions opts;
  opts.trials = 500;
  opts.seed = 2024;

  const auto f22 = FunctionSpec::from_expression("x1^2*x2^2", 2);
  const auto cert = certify_box_convexity(f22, MultiIndex({2, 2}), box, opts);
  CHECK(!cert.refuted);
  CHECK(cert.min_value == doctest::Approx(1.0).epsilon(1e-9));

  const auto neg = FunctionSpec::from_expression("-x1^2", 1);
  CertifyOptions opts1;
  opts1.trials = 50;
  opts1.seed = 7;
  const auto refutation =
      certify_box_convexity(neg, MultiIndex({2}), cube_box(1, 0.0, 2.0), opts1);
  CHECK(refutation.refuted);
  CHECK(refutation.min_value == doctest::Approx(-1.0).epsilon(1e-9));
  REQUIRE(refutation.witness.has_value());
  CHECK(divdiff_multi(*refutation.witness, neg) == doctest::Approx(refutation.min_value));

  const auto expsum = FunctionSpec::from_builtin("exp_sum", {1, 1}, 2);
  const auto pos = certify_box_convexity(expsum, MultiIndex({2, 2}), box, opts);
  CHECK(!pos.refuted);
  CHECK(pos.min_value > 0.0);
}

TEST_CASE("certifier determinism and failure modes") {
  const auto f = FunctionSpec::from_expression("x1^2", 1);
  CertifyOptions opts;
  opts.trials = 25;
  opts.seed = 99;
  const Box box = cube_box(1, 0.0, 1.0);
  const auto a = certify_box_convexity(f, MultiIndex({2}), box, opts);
  const auto b = certify_box_convexity(f, MultiIndex({2}), box, opts);
  CHECK(a.min_value == b.min_value);

  CHECK_THROWS_AS(certify_box_convexity(f, MultiIndex({2}), Box::unbounded(1), opts), Error);

  CertifyOptions grid_opts;
  grid_opts.sampler = SamplerKind::grid;
  grid_opts.grid = {{0.25, 0.75}};  // two nodes cannot host n+1 = 3
  CHECK_THROWS_AS(certify_box_convexity(f, MultiIndex({2}), box, grid_opts), Error);
}

TEST_CASE("grid sampler certifies tabulated functions at their own nodes") {
  // x^2 tabulated on five nodes; convex, so certified at n = 2.
  std::vector<double> nodes{0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> values;
  for (double t : nodes) values.push_back(t * t);
  const auto tab = FunctionSpec::from_tabulated({nodes}, values);
  CertifyOptions opts;
  opts.sampler = SamplerKind::grid;
  opts.trials = 30;
  opts.seed = 5;
  const auto cert = certify_box_convexity(tab, MultiIndex({2}), cube_box(1, -1.0, 3.0), opts);
  CHECK(!cert.refuted);
  CHECK(cert.min_value == doctest::Approx(1.0));
}

TEST_CASE("antiderivative identity under the integral") {
  // [x_0..x_n; F] with F(x) = integral of f from alpha, versus the
  // t-parameterized quadrature of the contracted systems.
  const double alpha = 0.0;
  const auto f = FunctionSpec::from_expression("exp(x1)", 1);
  const auto big_f = integrate_along_axis(f, 0, alpha, 24);
  const std::vector<double> pts{0.2, 0.7, 1.1, 1.6};
  const int n = static_cast<int>(pts.size()) - 1;
  const double lhs = divdiff_1d(pts, unary(big_f));
  const double rhs = gauss_legendre_integrate(
      0.0, 1.0,
      [&](double t) {
        std::vector<double> contracted;
        for (int i = 1; i <= n; ++i) contracted.push_back(t * pts[i] + (1.0 - t) * pts[0]);
        return ipow(t, n - 1) * divdiff_1d(contracted, unary(f));
      },
      32);
  CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("integration along an axis raises the certified order") {
  const auto f = FunctionSpec::from_builtin("exp_sum", {1.0, 1.0}, 2);
  const Box box = cube_box(2, 0.0, 1.5);
  CertifyOptions opts;
  opts.trials = 60;
  opts.seed = 31;
  CHECK(!certify_box_convexity(f, MultiIndex({2, 2}), box, opts).refuted);
  const auto integrated = integrate_along_axis(f, 0, 0.1, 12);
  CHECK(!certify_box_convexity(integrated, MultiIndex({3, 2}), box, opts).refuted);
}
