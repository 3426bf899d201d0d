#include "boxnc/represent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace boxnc {

int chi(ChiSide side, double x, double y, double u) {
  if (side == ChiSide::L) {
    if (x <= u && u < y) return 1;
    if (y <= u && u < x) return -1;
    return 0;
  }
  if (x < u && u <= y) return 1;
  if (y < u && u <= x) return -1;
  return 0;
}

ChiSide chi_side_from_char(char c) {
  if (c == 'L') return ChiSide::L;
  if (c == 'r') return ChiSide::r;
  fail(ErrorCode::invalid_argument, std::string("corner label character '") + c +
                                        "' must be 'L' or 'r'");
}

void RepresentationSpec::validate() const {
  const int d = n.dim();
  if (n.min_entry() < 1) {
    fail(ErrorCode::invalid_argument, "representation needs n_i >= 1 on every axis");
  }
  if (static_cast<int>(alpha.size()) != d || box.dim() != d) {
    fail(ErrorCode::invalid_argument, "anchor/box dimension does not match n");
  }
  if (!box.contains(alpha)) fail(ErrorCode::domain_error, "anchor outside the box");
  if (w.has_value() && w->dim() != d) {
    fail(ErrorCode::invalid_argument, "pseudo-polynomial dimension does not match n");
  }
  for (std::size_t p = 0; p + 1 < parts.size(); ++p) {
    if (parts[p].first >= parts[p + 1].first) {
      fail(ErrorCode::invalid_argument, "corner labels must be sorted and distinct");
    }
  }
  for (const auto& [key, measure] : parts) {
    if (static_cast<int>(key.size()) != d) {
      fail(ErrorCode::invalid_argument, "corner label '" + key + "' must have one letter per axis");
    }
    for (int i = 0; i < d; ++i) {
      const char c = key[static_cast<std::size_t>(i)];
      chi_side_from_char(c);
      if (canonical && c == 'L' && n[i] >= 2) {
        fail(ErrorCode::invalid_argument,
             "canonical mode forbids corner label 'L' on axis " + std::to_string(i + 1) +
                 " where n_i >= 2");
      }
    }
    if (measure.dim() != d) {
      fail(ErrorCode::invalid_argument, "part '" + key + "' has wrong dimension");
    }
    for (const auto& atom : measure.atoms()) {
      if (atom.weight < 0.0) {
        fail(ErrorCode::invalid_argument,
             "part '" + key + "' carries a negative weight; representing measures are nonnegative");
      }
    }
  }
}

FunctionSpec synthesize(const RepresentationSpec& spec) {
  spec.validate();
  auto shared = std::make_shared<const RepresentationSpec>(spec);
  const int d = spec.n.dim();
  return FunctionSpec::from_callable(d, [shared, d](std::span<const double> x) {
    double value = shared->w.has_value() ? shared->w->evaluate(x) : 0.0;
    for (const auto& [key, measure] : shared->parts) {
      for (const auto& atom : measure.atoms()) {
        double prod = atom.weight;
        for (int j = 0; j < d && prod != 0.0; ++j) {
          const std::size_t jj = static_cast<std::size_t>(j);
          const int c = chi(chi_side_from_char(key[jj]), shared->alpha[jj], x[jj],
                            atom.location[jj]);
          if (c == 0) {
            prod = 0.0;
            break;
          }
          const int nj = shared->n[j];
          prod *= c * ipow(x[jj] - atom.location[jj], nj - 1) / factorial(nj - 1);
        }
        value += prod;
      }
    }
    return value;
  });
}

FunctionSpec spline_basis(const AxisSubset& a, std::span<const double> u, const MultiIndex& n) {
  const int d = n.dim();
  if (a.dim() != d || static_cast<int>(u.size()) != d) {
    fail(ErrorCode::invalid_argument, "subset/knot dimension does not match n");
  }
  if (n.min_entry() < 1) fail(ErrorCode::invalid_argument, "spline basis needs n_i >= 1");
  auto knots = std::make_shared<const std::vector<double>>(u.begin(), u.end());
  auto subset = std::make_shared<const AxisSubset>(a);
  auto order = std::make_shared<const MultiIndex>(n);
  return FunctionSpec::from_callable(d, [knots, subset, order, d](std::span<const double> x) {
    double prod = 1.0;
    for (int j = 0; j < d && prod != 0.0; ++j) {
      const std::size_t jj = static_cast<std::size_t>(j);
      const int nj = (*order)[j];
      const double e = x[jj] - (*knots)[jj];
      if (subset->contains(j)) {
        const double sign = nj % 2 == 0 ? 1.0 : -1.0;
        prod *= sign * tpow(-e, nj - 1) / factorial(nj - 1);
      } else {
        prod *= tpow(e, nj - 1) / factorial(nj - 1);
      }
    }
    return prod;
  });
}

ExtractionResult roundtrip_extract(const RepresentationSpec& spec,
                                   const std::vector<std::vector<double>>& cuts) {
  spec.validate();
  if (spec.n.max_entry() != 1) {
    fail(ErrorCode::invalid_argument, "measure extraction is defined for n = (1,...,1)");
  }
  const int d = spec.n.dim();
  if (static_cast<int>(cuts.size()) != d) {
    fail(ErrorCode::invalid_argument, "need one cut list per axis");
  }
  for (int i = 0; i < d; ++i) {
    const auto& c = cuts[static_cast<std::size_t>(i)];
    if (c.size() < 2 || !std::is_sorted(c.begin(), c.end())) {
      fail(ErrorCode::invalid_argument,
           "axis " + std::to_string(i + 1) + ": cuts must be >= 2 sorted coordinates");
    }
  }

  const FunctionSpec f = synthesize(spec);
  ExtractionResult result{{}, DiscreteSignedMeasure(d)};
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<Atom> atoms;
  for (;;) {
    ExtractedCell cell;
    cell.lo.resize(static_cast<std::size_t>(d));
    cell.hi.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const auto& c = cuts[static_cast<std::size_t>(i)];
      cell.lo[static_cast<std::size_t>(i)] = c[idx[static_cast<std::size_t>(i)]];
      cell.hi[static_cast<std::size_t>(i)] = c[idx[static_cast<std::size_t>(i)] + 1];
    }
    cell.mass = rectangle_mass(f, cell.lo, cell.hi);
    if (cell.mass != 0.0) {
      Atom atom;
      atom.weight = cell.mass;
      for (int i = 0; i < d; ++i) {
        atom.location.push_back(0.5 * (cell.lo[static_cast<std::size_t>(i)] +
                                       cell.hi[static_cast<std::size_t>(i)]));
      }
      atoms.push_back(std::move(atom));
    }
    result.cells.push_back(std::move(cell));

    int axis = d - 1;
    while (axis >= 0) {
      std::size_t& j = idx[static_cast<std::size_t>(axis)];
      if (++j + 1 < cuts[static_cast<std::size_t>(axis)].size()) break;
      j = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  result.recovered = DiscreteSignedMeasure::from_atoms(d, std::move(atoms));
  return result;
}

}  // namespace boxnc
