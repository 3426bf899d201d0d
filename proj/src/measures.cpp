#include "boxnc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace boxnc {

namespace {

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool mergeable(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > DiscreteSignedMeasure::kMergeTolerance) return false;
  }
  return true;
}

}  // namespace

DiscreteSignedMeasure DiscreteSignedMeasure::from_atoms(int dim, std::vector<Atom> atoms) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "measure dimension must be >= 1");
  for (const auto& atom : atoms) {
    if (static_cast<int>(atom.location.size()) != dim) {
      fail(ErrorCode::invalid_argument, "atom location dimension mismatch");
    }
    for (double c : atom.location) {
      if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "atom location must be finite");
    }
    if (!std::isfinite(atom.weight)) {
      fail(ErrorCode::invalid_argument, "atom weight must be finite");
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.location, b.location); });
  DiscreteSignedMeasure m(dim);
  for (auto& atom : atoms) {
    if (!m.atoms_.empty() && mergeable(m.atoms_.back().location, atom.location)) {
      m.atoms_.back().weight += atom.weight;
    } else {
      m.atoms_.push_back(std::move(atom));
    }
  }
  m.atoms_.erase(std::remove_if(m.atoms_.begin(), m.atoms_.end(),
                                [](const Atom& a) { return a.weight == 0.0; }),
                 m.atoms_.end());
  return m;
}

DiscreteSignedMeasure DiscreteSignedMeasure::from_points(
    std::vector<std::pair<double, double>> atoms) {
  std::vector<Atom> list;
  list.reserve(atoms.size());
  for (auto& [x, w] : atoms) list.push_back(Atom{{x}, w});
  return from_atoms(1, std::move(list));
}

DiscreteSignedMeasure DiscreteSignedMeasure::dirac(std::vector<double> location, double weight) {
  const int dim = static_cast<int>(location.size());
  std::vector<Atom> one{Atom{std::move(location), weight}};
  return from_atoms(dim, std::move(one));
}

DiscreteSignedMeasure DiscreteSignedMeasure::binomial(int trials, double p) {
  if (trials < 0) fail(ErrorCode::invalid_argument, "binomial needs trials >= 0");
  if (p < 0.0 || p > 1.0) fail(ErrorCode::invalid_argument, "binomial needs p in [0,1]");
  std::vector<Atom> atoms;
  double coeff = 1.0;  // C(trials, k)
  for (int k = 0; k <= trials; ++k) {
    const double w = coeff * ipow(p, k) * ipow(1.0 - p, trials - k);
    atoms.push_back(Atom{{static_cast<double>(k)}, w});
    coeff = coeff * (trials - k) / (k + 1.0);
  }
  return from_atoms(1, std::move(atoms));
}

double DiscreteSignedMeasure::mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

double DiscreteSignedMeasure::total_variation() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.weight);
  return s;
}

DiscreteSignedMeasure DiscreteSignedMeasure::scaled(double c) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.weight *= c;
  return from_atoms(dim_, std::move(atoms));
}

DiscreteSignedMeasure DiscreteSignedMeasure::operator+(const DiscreteSignedMeasure& other) const {
  if (dim_ != other.dim_) fail(ErrorCode::invalid_argument, "measure dimension mismatch");
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return from_atoms(dim_, std::move(atoms));
}

DiscreteSignedMeasure DiscreteSignedMeasure::operator-(const DiscreteSignedMeasure& other) const {
  return *this + other.scaled(-1.0);
}

DiscreteSignedMeasure DiscreteSignedMeasure::product(const DiscreteSignedMeasure& a,
                                                     const DiscreteSignedMeasure& b) {
  std::vector<Atom> atoms;
  atoms.reserve(a.atoms_.size() * b.atoms_.size());
  for (const auto& pa : a.atoms_) {
    for (const auto& pb : b.atoms_) {
      Atom atom;
      atom.location = pa.location;
      atom.location.insert(atom.location.end(), pb.location.begin(), pb.location.end());
      atom.weight = pa.weight * pb.weight;
      atoms.push_back(std::move(atom));
    }
  }
  return from_atoms(a.dim_ + b.dim_, std::move(atoms));
}

DiscreteSignedMeasure DiscreteSignedMeasure::project_out(int axis, int moment_exponent) const {
  if (axis < 0 || axis >= dim_) fail(ErrorCode::invalid_argument, "axis out of range");
  if (dim_ == 1) fail(ErrorCode::invalid_argument, "cannot project a 1-d measure to dimension 0");
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    Atom out;
    out.weight = a.weight * ipow(a.location[static_cast<std::size_t>(axis)], moment_exponent);
    for (int i = 0; i < dim_; ++i) {
      if (i != axis) out.location.push_back(a.location[static_cast<std::size_t>(i)]);
    }
    atoms.push_back(std::move(out));
  }
  return from_atoms(dim_ - 1, std::move(atoms));
}

bool DiscreteSignedMeasure::is_probability(double tol) const {
  for (const auto& a : atoms_) {
    if (a.weight < 0.0) return false;
  }
  return std::abs(mass() - 1.0) <= tol;
}

DiscreteSignedMeasure convolve(const DiscreteSignedMeasure& a, const DiscreteSignedMeasure& b) {
  if (a.dim() != 1 || b.dim() != 1) {
    fail(ErrorCode::invalid_argument, "convolution is defined for 1-d measures");
  }
  std::vector<Atom> atoms;
  atoms.reserve(a.atoms().size() * b.atoms().size());
  for (const auto& pa : a.atoms()) {
    for (const auto& pb : b.atoms()) {
      atoms.push_back(Atom{{pa.location[0] + pb.location[0]}, pa.weight * pb.weight});
    }
  }
  return DiscreteSignedMeasure::from_atoms(1, std::move(atoms));
}

DiscreteSignedMeasure convolution_power(const DiscreteSignedMeasure& m, int q) {
  if (q < 1) fail(ErrorCode::invalid_argument, "convolution power must be >= 1");
  DiscreteSignedMeasure acc = m;
  for (int i = 1; i < q; ++i) acc = convolve(acc, m);
  return acc;
}

double moment(const DiscreteSignedMeasure& m, std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) != m.dim()) {
    fail(ErrorCode::invalid_argument, "moment exponent dimension mismatch");
  }
  double s = 0.0;
  for (const auto& a : m.atoms()) {
    double term = a.weight;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      term *= ipow(a.location[i], exponents[i]);
    }
    s += term;
  }
  return s;
}

double moment1(const DiscreteSignedMeasure& m, int k) {
  return moment(m, std::span<const int>(&k, 1));
}

double truncated_power_moment(const DiscreteSignedMeasure& m, double u, int q,
                              TruncationSide side) {
  if (m.dim() != 1) fail(ErrorCode::invalid_argument, "truncated moments are 1-d");
  if (q < 0) fail(ErrorCode::invalid_argument, "truncated power exponent must be >= 0");
  double s = 0.0;
  for (const auto& a : m.atoms()) {
    const double e = a.location[0] - u;
    s += a.weight * tpow(side == TruncationSide::plus ? e : -e, q);
  }
  return s;
}

double survival(const DiscreteSignedMeasure& m, double x) {
  if (m.dim() != 1) fail(ErrorCode::invalid_argument, "survival function is 1-d");
  double s = 0.0;
  for (const auto& a : m.atoms()) {
    if (a.location[0] >= x) s += a.weight;
  }
  return s;
}

PiecewisePoly survival_step(const DiscreteSignedMeasure& tau) {
  if (tau.dim() != 1) fail(ErrorCode::invalid_argument, "survival step is 1-d");
  if (tau.empty()) return PiecewisePoly();
  if (std::abs(tau.mass()) > 1e-9 * std::max(1.0, tau.total_variation())) {
    fail(ErrorCode::invalid_argument, "survival step needs a zero-mass measure");
  }
  // tau([x, inf)) is constant on (x_k, x_{k+1}]; the half-open piece
  // convention of PiecewisePoly differs only on a null set.
  std::vector<double> breaks;
  std::vector<Poly> pieces;
  const auto& atoms = tau.atoms();
  double tail = 0.0;
  for (const auto& a : atoms) tail += a.weight;  // = mass = 0
  double running = tail;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    running -= atoms[k].weight;  // value on (x_k, x_{k+1}]
    breaks.push_back(atoms[k].location[0]);
    pieces.push_back(Poly::constant(running));
  }
  breaks.push_back(atoms.back().location[0]);
  if (pieces.empty()) return PiecewisePoly();
  return PiecewisePoly(std::move(breaks), std::move(pieces), 0.0);
}

namespace {

PiecewisePoly convolve_with_step(const PiecewisePoly& g, const DiscreteSignedMeasure& tau) {
  if (g.zero() || tau.empty()) return PiecewisePoly();
  const PiecewisePoly primitive = g.antiderivative();
  const auto& atoms = tau.atoms();
  // Step values of the survival function on (x_k, x_{k+1}].
  std::vector<double> steps(atoms.size() - 1);
  double running = 0.0;
  for (std::size_t k = atoms.size(); k-- > 1;) {
    running += atoms[k].weight;
    steps[k - 1] = running;
  }

  std::vector<double> cuts;
  for (double gb : g.breaks()) {
    for (const auto& a : atoms) cuts.push_back(gb + a.location[0]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
             cuts.end());
  if (cuts.size() < 2) return PiecewisePoly();

  // On each cell, (G * F)(A) = sum_k steps[k] * (P(A - x_k) - P(A - x_{k+1}))
  // with every shifted argument staying inside one piece of P.
  auto primitive_piece = [&](double arg) -> Poly {
    const auto& br = primitive.breaks();
    if (arg < br.front()) return Poly();
    if (arg >= br.back()) return Poly::constant(primitive.tail_value());
    const auto it = std::upper_bound(br.begin(), br.end(), arg);
    return primitive.pieces()[static_cast<std::size_t>(it - br.begin()) - 1];
  };

  std::vector<Poly> pieces;
  pieces.reserve(cuts.size() - 1);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    Poly piece;
    for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
      if (steps[k] == 0.0) continue;
      const double xk = atoms[k].location[0];
      const double xk1 = atoms[k + 1].location[0];
      Poly upper = primitive_piece(mid - xk).shifted_argument(xk);
      Poly lower = primitive_piece(mid - xk1).shifted_argument(xk1);
      piece += upper.scaled(steps[k]);
      piece += lower.scaled(-steps[k]);
    }
    pieces.push_back(std::move(piece));
  }
  return PiecewisePoly(std::move(cuts), std::move(pieces), 0.0);
}

}  // namespace

double survival_convolution(std::span<const DiscreteSignedMeasure> taus, double a) {
  if (taus.empty()) fail(ErrorCode::invalid_argument, "need at least one measure");
  PiecewisePoly g = survival_step(taus[0]);
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (std::abs(taus[i].mass()) > 1e-9 * std::max(1.0, taus[i].total_variation())) {
      fail(ErrorCode::invalid_argument, "survival convolution needs zero-mass measures");
    }
    g = convolve_with_step(g, taus[i]);
  }
  return g(a);
}

double rectangle_mass(const FunctionSpec& f, std::span<const double> lo,
                      std::span<const double> hi) {
  const int d = f.arity();
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d) {
    fail(ErrorCode::invalid_argument, "rectangle dimension does not match function arity");
  }
  for (int j = 0; j < d; ++j) {
    if (!(lo[static_cast<std::size_t>(j)] < hi[static_cast<std::size_t>(j)])) {
      fail(ErrorCode::invalid_argument,
           "degenerate rectangle on axis " + std::to_string(j + 1));
    }
  }
  double sum = 0.0;
  std::vector<double> corner(static_cast<std::size_t>(d));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    int bits = 0;
    for (int j = 0; j < d; ++j) {
      const bool low = mask & (1u << j);
      corner[static_cast<std::size_t>(j)] =
          low ? lo[static_cast<std::size_t>(j)] : hi[static_cast<std::size_t>(j)];
      bits += low ? 1 : 0;
    }
    sum += (bits % 2 == 0 ? 1.0 : -1.0) * f(corner);
  }
  return sum;
}

// --- FV1Function ---

FV1Function::FV1Function() : smooth_(FunctionSpec::constant(1, 0.0)) {}

FV1Function::FV1Function(FunctionSpec smooth, std::vector<Jump> jumps)
    : smooth_(std::move(smooth)), jumps_(std::move(jumps)) {
  if (!smooth_.valid() || smooth_.arity() != 1) {
    fail(ErrorCode::invalid_argument, "smooth part must be a 1-variable function");
  }
  std::sort(jumps_.begin(), jumps_.end(),
            [](const Jump& a, const Jump& b) { return a.at < b.at; });
  for (std::size_t i = 0; i + 1 < jumps_.size(); ++i) {
    if (jumps_[i].at == jumps_[i + 1].at) {
      fail(ErrorCode::invalid_argument, "duplicate jump location " + std::to_string(jumps_[i].at));
    }
  }
  jumps_.erase(std::remove_if(jumps_.begin(), jumps_.end(),
                              [](const Jump& j) { return j.left == 0.0 && j.right == 0.0; }),
               jumps_.end());
}

FV1Function FV1Function::constant(double c) {
  return FV1Function(FunctionSpec::constant(1, c), {});
}

double FV1Function::operator()(double x) const {
  double v = smooth_.eval1(x);
  for (const auto& j : jumps_) {
    if (j.at < x) {
      v += j.left + j.right;
    } else if (j.at == x) {
      v += j.left;
    } else {
      break;
    }
  }
  return v;
}

FV1Function FV1Function::plus_constant(double c) const {
  if (c == 0.0) return *this;
  FunctionSpec base = smooth_;
  return FV1Function(FunctionSpec::from_callable(
                         1, [base, c](std::span<const double> x) { return base(x) + c; }),
                     jumps_);
}

FV1Function FV1Function::operator+(const FV1Function& other) const {
  FunctionSpec a = smooth_, b = other.smooth_;
  FunctionSpec sum = FunctionSpec::from_callable(
      1, [a, b](std::span<const double> x) { return a(x) + b(x); });
  std::map<double, Jump> merged;
  for (const auto& j : jumps_) merged[j.at] = j;
  for (const auto& j : other.jumps_) {
    auto& slot = merged[j.at];
    slot.at = j.at;
    slot.left += j.left;
    slot.right += j.right;
  }
  std::vector<Jump> jumps;
  jumps.reserve(merged.size());
  for (auto& [at, j] : merged) jumps.push_back(j);
  return FV1Function(std::move(sum), std::move(jumps));
}

FV1Parts fv1_decompose(const FV1Function& f, double alpha) {
  std::vector<Jump> left_list, right_list;
  double left_at_alpha = 0.0, right_at_alpha = 0.0;
  for (const auto& j : f.jumps()) {
    if (j.at == alpha) {
      fail(ErrorCode::invalid_argument,
           "anchor coincides with the jump at " + std::to_string(j.at));
    }
    // The left-continuous part carries the right jumps f(t+) - f(t); the
    // right-continuous part carries the left jumps f(t) - f(t-).
    if (j.right != 0.0) left_list.push_back(Jump{j.at, 0.0, j.right});
    if (j.left != 0.0) right_list.push_back(Jump{j.at, j.left, 0.0});
    if (j.at < alpha) {
      left_at_alpha += j.right;
      right_at_alpha += j.left;
    }
  }
  FV1Parts parts{
      FV1Function(FunctionSpec::constant(1, -left_at_alpha), std::move(left_list)),
      FV1Function(FunctionSpec::constant(1, -right_at_alpha), std::move(right_list)),
      FV1Function()};
  FunctionSpec base = f.smooth();
  const double shift = left_at_alpha + right_at_alpha;
  parts.continuous = FV1Function(
      FunctionSpec::from_callable(
          1, [base, shift](std::span<const double> x) { return base(x) + shift; }),
      {});
  return parts;
}

FV1Function fv1_right_part(const FV1Function& f, double alpha) {
  FV1Parts parts = fv1_decompose(f, alpha);
  return parts.right_continuous + parts.continuous;
}

FV1Function fv1_left_part(const FV1Function& f, double alpha) {
  return fv1_decompose(f, alpha).left_continuous;
}

// --- TensorFVFunction ---

TensorFVFunction::TensorFVFunction(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ < 1) fail(ErrorCode::invalid_argument, "tensor function dimension must be >= 1");
  for (const auto& term : terms_) {
    if (static_cast<int>(term.factors.size()) != dim_) {
      fail(ErrorCode::invalid_argument, "each tensor term needs one factor per axis");
    }
    if (!std::isfinite(term.coefficient)) {
      fail(ErrorCode::invalid_argument, "tensor coefficient must be finite");
    }
  }
}

double TensorFVFunction::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    fail(ErrorCode::invalid_argument, "tensor function evaluated at wrong dimension");
  }
  double s = 0.0;
  for (const auto& term : terms_) {
    double prod = term.coefficient;
    for (int i = 0; i < dim_ && prod != 0.0; ++i) {
      prod *= term.factors[static_cast<std::size_t>(i)](x[static_cast<std::size_t>(i)]);
    }
    s += prod;
  }
  return s;
}

FunctionSpec TensorFVFunction::as_function() const {
  auto self = std::make_shared<const TensorFVFunction>(*this);
  return FunctionSpec::from_callable(
      dim_, [self](std::span<const double> x) { return self->evaluate(x); });
}

std::map<std::string, TensorFVFunction> tensor_decompose(const TensorFVFunction& f,
                                                         std::span<const double> alpha,
                                                         std::span<const int> axis_order) {
  const int d = f.dim();
  if (static_cast<int>(alpha.size()) != d) {
    fail(ErrorCode::invalid_argument, "anchor dimension does not match");
  }
  std::vector<int> order(axis_order.begin(), axis_order.end());
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != d) {
    fail(ErrorCode::invalid_argument, "axis order must be a permutation of 1..d");
  }

  std::map<std::string, TensorFVFunction> parts;
  std::string all_r(static_cast<std::size_t>(d), 'r');
  parts.emplace(all_r, f);
  // Split one axis at a time; keys not yet processed keep 'r' in that slot.
  for (int axis : order) {
    if (axis < 0 || axis >= d) fail(ErrorCode::invalid_argument, "axis order entry out of range");
    std::map<std::string, TensorFVFunction> next;
    for (const auto& [key, part] : parts) {
      std::vector<TensorFVFunction::Term> left_terms, right_terms;
      for (const auto& term : part.terms()) {
        TensorFVFunction::Term lt = term, rt = term;
        lt.factors[static_cast<std::size_t>(axis)] =
            fv1_left_part(term.factors[static_cast<std::size_t>(axis)],
                          alpha[static_cast<std::size_t>(axis)]);
        rt.factors[static_cast<std::size_t>(axis)] =
            fv1_right_part(term.factors[static_cast<std::size_t>(axis)],
                           alpha[static_cast<std::size_t>(axis)]);
        left_terms.push_back(std::move(lt));
        right_terms.push_back(std::move(rt));
      }
      std::string left_key = key, right_key = key;
      left_key[static_cast<std::size_t>(axis)] = 'L';
      right_key[static_cast<std::size_t>(axis)] = 'r';
      next.emplace(left_key, TensorFVFunction(d, std::move(left_terms)));
      next.emplace(right_key, TensorFVFunction(d, std::move(right_terms)));
    }
    parts = std::move(next);
  }
  return parts;
}

}  // namespace boxnc
