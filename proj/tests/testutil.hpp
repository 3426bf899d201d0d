#ifndef BOXNC_TESTS_TESTUTIL_HPP
#define BOXNC_TESTS_TESTUTIL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "boxnc/divdiff.hpp"
#include "boxnc/function.hpp"
#include "boxnc/measures.hpp"
#include "boxnc/represent.hpp"
#include "boxnc/rng.hpp"

namespace boxnc::testutil {

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline Box cube_box(int dim, double lo, double hi) {
  std::vector<Interval> axes(static_cast<std::size_t>(dim), Interval{lo, hi});
  return Box(std::move(axes));
}

inline std::vector<double> random_point(Rng& rng, const Box& box) {
  std::vector<double> x(static_cast<std::size_t>(box.dim()));
  for (int i = 0; i < box.dim(); ++i) {
    x[static_cast<std::size_t>(i)] = rng.uniform(box.axis(i).lo, box.axis(i).hi);
  }
  return x;
}

// Smooth functions of the given arity used as interpolation material.
inline std::vector<FunctionSpec> base_catalog(int d) {
  std::vector<FunctionSpec> out;
  std::vector<double> ones(static_cast<std::size_t>(d), 1.0);
  out.push_back(FunctionSpec::from_builtin("exp_sum", ones, d));
  std::vector<double> alternating;
  for (int i = 0; i < d; ++i) alternating.push_back(i % 2 == 0 ? 0.5 : -0.25);
  out.push_back(FunctionSpec::from_builtin("exp_sum", alternating, d));
  std::vector<double> quad(static_cast<std::size_t>(d), 2.0);
  out.push_back(FunctionSpec::from_builtin("tensor_monomial", quad, d));
  std::vector<double> mixed;
  for (int i = 0; i < d; ++i) mixed.push_back(static_cast<double>(i % 3));
  out.push_back(FunctionSpec::from_builtin("tensor_monomial", mixed, d));
  out.push_back(FunctionSpec::from_builtin("monomial", {1.0, 3.0}, d));
  std::string expr = "x1";
  for (int i = 2; i <= d; ++i) expr += "*x" + std::to_string(i);
  out.push_back(FunctionSpec::from_expression(expr + "+0.5", d));
  return out;
}

// Random representation data whose synthesis is box-n-convex by construction.
inline RepresentationSpec random_representation(Rng& rng, int d, const MultiIndex& n,
                                                const Box& box, int max_atoms,
                                                bool with_w = true) {
  std::vector<double> alpha(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto& ax = box.axis(i);
    alpha[static_cast<std::size_t>(i)] = ax.lo + 0.15 * ax.width() +
                                         0.2 * ax.width() * rng.next_double();
  }
  RepresentationSpec spec(n, alpha, box);
  spec.canonical = true;
  if (with_w && rng.next_double() < 0.7) {
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const auto& ax = box.axis(i);
      for (int k = 0; k < n[i]; ++k) {
        nodes[static_cast<std::size_t>(i)].push_back(
            ax.lo + ax.width() * (k + 1.0 + 0.3 * rng.next_double()) / (n[i] + 2.0));
      }
    }
    const auto catalog = base_catalog(d);
    spec.w = grid_interpolant(catalog[rng.next_index(catalog.size())], nodes);
  }
  // Corner labels: 'r' everywhere except possibly axes with n_i = 1.
  std::vector<std::string> labels;
  std::string all_r(static_cast<std::size_t>(d), 'r');
  labels.push_back(all_r);
  std::string one_l = all_r;
  bool has_l = false;
  for (int i = 0; i < d; ++i) {
    if (n[i] == 1 && rng.next_double() < 0.5) {
      one_l[static_cast<std::size_t>(i)] = 'L';
      has_l = true;
      break;
    }
  }
  if (has_l) labels.push_back(one_l);
  for (const auto& label : labels) {
    const int count = 1 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(max_atoms)));
    std::vector<Atom> atoms;
    for (int a = 0; a < count; ++a) {
      Atom atom;
      atom.weight = 0.1 + rng.next_double();
      for (int i = 0; i < d; ++i) {
        const auto& ax = box.axis(i);
        atom.location.push_back(ax.lo + ax.width() * (0.1 + 0.8 * rng.next_double()));
      }
      atoms.push_back(std::move(atom));
    }
    spec.parts.emplace_back(label, DiscreteSignedMeasure::from_atoms(d, std::move(atoms)));
  }
  std::sort(spec.parts.begin(), spec.parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  spec.parts.erase(std::unique(spec.parts.begin(), spec.parts.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   spec.parts.end());
  return spec;
}

// A catalog of box-n-convex functions built from representations.
inline std::vector<FunctionSpec> convex_catalog(Rng& rng, int d, const MultiIndex& n,
                                                const Box& box, int count) {
  std::vector<FunctionSpec> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(synthesize(random_representation(rng, d, n, box, 4)));
  }
  return out;
}

// Random probability measure with atoms on a lattice inside [lo, hi].
inline DiscreteSignedMeasure random_probability(Rng& rng, double lo, double hi, int max_atoms) {
  const int count = 2 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(max_atoms - 1)));
  std::vector<std::pair<double, double>> atoms;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    const double w = 0.2 + rng.next_double();
    atoms.emplace_back(lo + (hi - lo) * (i + rng.next_double()) / count, w);
    total += w;
  }
  for (auto& [x, w] : atoms) w /= total;
  return DiscreteSignedMeasure::from_points(std::move(atoms));
}

// (mu, nu) with nu stochastically dominating mu: some mass moved right.
inline std::pair<DiscreteSignedMeasure, DiscreteSignedMeasure> dominating_pair(Rng& rng,
                                                                               double lo,
                                                                               double hi) {
  DiscreteSignedMeasure mu = random_probability(rng, lo, hi, 5);
  std::vector<std::pair<double, double>> shifted;
  const double shift = 0.1 + 0.4 * rng.next_double();
  for (const auto& a : mu.atoms()) shifted.emplace_back(a.location[0] + shift, a.weight);
  return {mu, DiscreteSignedMeasure::from_points(std::move(shifted))};
}

}  // namespace boxnc::testutil

#endif
