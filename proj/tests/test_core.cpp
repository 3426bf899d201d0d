#include <doctest.h>

#include "boxnc/core.hpp"
#include "boxnc/function.hpp"
#include "boxnc/rng.hpp"

using namespace boxnc;

TEST_CASE("complement of axis subsets") {
  // 1-based axes {1,3} of d=3 are stored 0-based.
  CHECK(AxisSubset({0, 2}, 3).complement().members() == std::vector<int>{1});
  CHECK(AxisSubset::empty(2).complement().members() == std::vector<int>{0, 1});
  CHECK(AxisSubset::full(4).complement().members().empty());
}

TEST_CASE("complement is an involution") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_index(6));
    std::vector<int> members;
    for (int i = 0; i < d; ++i) {
      if (rng.next_double() < 0.5) members.push_back(i);
    }
    const AxisSubset a(members, d);
    CHECK(a.complement().complement() == a);
  }
}

TEST_CASE("axis subset validation") {
  CHECK_THROWS_AS(AxisSubset({3}, 2), Error);
  CHECK_THROWS_AS(AxisSubset({0, 0}, 2), Error);
  CHECK_THROWS_AS(AxisSubset({-1}, 2), Error);
}

TEST_CASE("slice substitutes fixed coordinates") {
  const auto f = FunctionSpec::from_expression("x1*x2", 2);
  const auto g = slice_function(f, AxisSubset({0}, 2), {3.0});
  CHECK(g.arity() == 1);
  CHECK(g({2.0}) == doctest::Approx(6.0));

  const auto h = FunctionSpec::from_expression("x1+x2+x3", 3);
  const auto s = slice_function(h, AxisSubset({0, 2}, 3), {5.0});
  CHECK(s({0.0, 0.0}) == doctest::Approx(5.0));
  CHECK(s({1.0, 2.0}) == doctest::Approx(8.0));

  const auto identity = slice_function(f, AxisSubset::full(2), {});
  CHECK(identity({2.0, 3.0}) == f({2.0, 3.0}));
}

TEST_CASE("slice composes associatively and agrees with f exactly") {
  Rng rng(5);
  const auto f = FunctionSpec::from_expression("exp(x1)*x2+x3^2", 3);
  // Fix axis 2 at z, then axis 3 (of the remaining pair, index 1) at w.
  const auto once = slice_function(f, AxisSubset({0, 2}, 3), {0.7});
  const auto twice = slice_function(once, AxisSubset({0}, 2), {-0.4});
  const auto direct = slice_function(f, AxisSubset({0}, 3), {0.7, -0.4});
  for (int trial = 0; trial < 20; ++trial) {
    const double t = rng.uniform(-2.0, 2.0);
    CHECK(twice({t}) == direct({t}));
    // bit-exact agreement with the full function at the assembled point
    CHECK(twice({t}) == f({t, 0.7, -0.4}));
  }
}

TEST_CASE("slice rejects fixed coordinates outside the box") {
  const auto f = FunctionSpec::from_expression("x1*x2", 2);
  const Box box = Box(std::vector<Interval>{{0.0, 1.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(slice_function(f, AxisSubset({0}, 2), {3.0}, &box), Error);
  CHECK_NOTHROW(slice_function(f, AxisSubset({0}, 2), {0.5}, &box));
}

TEST_CASE("point system validation") {
  const Box box = Box(std::vector<Interval>{{-1.0, 3.0}});
  const MultiIndex n({2});
  CHECK_NOTHROW(validate_point_system(PointSystem({{0, 1, 2}}), box, n));
  CHECK_THROWS_WITH_AS(validate_point_system(PointSystem({{0, 0, 1}}), box, n),
                       doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(validate_point_system(PointSystem({{0, 1}}), box, n),
                       doctest::Contains("expected 3 nodes"), Error);
  CHECK_THROWS_WITH_AS(validate_point_system(PointSystem({{0, 1, 5}}), box, n),
                       doctest::Contains("outside"), Error);
}

TEST_CASE("box invariants") {
  CHECK_THROWS_AS(Box(std::vector<Interval>{{1.0, 1.0}}), Error);
  CHECK_THROWS_AS(Box(std::vector<Interval>{{2.0, 1.0}}), Error);
  const Box unbounded = Box::unbounded(2);
  CHECK(unbounded.contains(std::vector<double>{1e300, -1e300}));
  CHECK(!Box(std::vector<Interval>{{0.0, 1.0}}).contains(std::vector<double>{0.0}));
}
