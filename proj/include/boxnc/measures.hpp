#ifndef BOXNC_MEASURES_HPP
#define BOXNC_MEASURES_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "boxnc/function.hpp"
#include "boxnc/polyseg.hpp"

namespace boxnc {

struct Atom {
  std::vector<double> location;
  double weight = 0.0;
};

// Finite list of weighted atoms on R^p; weights may be negative. Construction
// canonicalizes: atoms sorted lexicographically, locations closer than 1e-12
// per coordinate merged, exact-zero weights dropped. The zero measure is the
// empty atom list.
class DiscreteSignedMeasure {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  explicit DiscreteSignedMeasure(int dim) : dim_(dim) {}
  static DiscreteSignedMeasure from_atoms(int dim, std::vector<Atom> atoms);
  // 1-d convenience.
  static DiscreteSignedMeasure from_points(std::vector<std::pair<double, double>> atoms);
  static DiscreteSignedMeasure dirac(std::vector<double> location, double weight = 1.0);
  static DiscreteSignedMeasure binomial(int trials, double p);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double mass() const;
  double total_variation() const;
  double location1(std::size_t i) const { return atoms_[i].location[0]; }

  DiscreteSignedMeasure scaled(double c) const;
  DiscreteSignedMeasure operator+(const DiscreteSignedMeasure& other) const;
  DiscreteSignedMeasure operator-(const DiscreteSignedMeasure& other) const;

  // Tensor product (dimensions add).
  static DiscreteSignedMeasure product(const DiscreteSignedMeasure& a,
                                       const DiscreteSignedMeasure& b);

  // Drops the given axis and merges collided atoms; weights may first be
  // multiplied by location[axis]^k.
  DiscreteSignedMeasure project_out(int axis, int moment_exponent = 0) const;

  bool is_probability(double tol = 1e-9) const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
};

// Convolution of two 1-d signed measures: atoms at location sums, weights
// multiplied, collisions merged.
DiscreteSignedMeasure convolve(const DiscreteSignedMeasure& a, const DiscreteSignedMeasure& b);
DiscreteSignedMeasure convolution_power(const DiscreteSignedMeasure& m, int q);

// sum_atoms w * prod_i x_i^{k_i}
double moment(const DiscreteSignedMeasure& m, std::span<const int> exponents);
double moment1(const DiscreteSignedMeasure& m, int k);

enum class TruncationSide { plus, minus };

// sum_atoms w * (x - u)_+^q  (or (x - u)_-^q), 0^0 = 1.
double truncated_power_moment(const DiscreteSignedMeasure& m, double u, int q,
                              TruncationSide side);

// Survival function tau([x, infinity)), closed at x.
double survival(const DiscreteSignedMeasure& m, double x);

// Step form of the survival function; requires zero total mass so the support
// is compact. Exposed for the convolution identity below.
PiecewisePoly survival_step(const DiscreteSignedMeasure& tau);

// q-fold convolution of the survival functions of zero-mass measures,
// evaluated at a point: exact piecewise-polynomial route, independent from
// moment arithmetic on convolution powers.
double survival_convolution(std::span<const DiscreteSignedMeasure> taus, double a);

// Alternating corner sum sum_B (-1)^{|B|} f(y_B) over a closed rectangle's
// corner set; equals prod(z_j - y_j) times the order-(1,...,1) divided
// difference and recovers the representing measure's mass on the half-open
// rectangle named by `sides` (one of 'L'/'r' per axis; reporting only).
double rectangle_mass(const FunctionSpec& f, std::span<const double> lo,
                      std::span<const double> hi);

// Uniform distribution on [a, b] with composite quadrature resolution m.
struct UniformSegment {
  double a = 0.0;
  double b = 1.0;
  int resolution = 8;
};

// --- finitely represented finite-variation functions (one variable) ---

struct Jump {
  double at = 0.0;
  double left = 0.0;   // f(t) - f(t-)
  double right = 0.0;  // f(t+) - f(t)
};

// f(x) = smooth(x) + accumulated jumps left of (and at) x. The smooth part is
// continuous by contract.
class FV1Function {
 public:
  FV1Function();  // identically zero
  FV1Function(FunctionSpec smooth, std::vector<Jump> jumps);
  static FV1Function constant(double c);

  double operator()(double x) const;
  const std::vector<Jump>& jumps() const { return jumps_; }
  const FunctionSpec& smooth() const { return smooth_; }

  FV1Function plus_constant(double c) const;
  FV1Function operator+(const FV1Function& other) const;

 private:
  FunctionSpec smooth_;
  std::vector<Jump> jumps_;
};

struct FV1Parts {
  FV1Function left_continuous;  // jump function, vanishes at alpha
  FV1Function right_continuous;  // jump function, vanishes at alpha
  FV1Function continuous;
};

// Unique decomposition f = f_L + f_R + f_c anchored at alpha. alpha at a jump
// location is rejected.
FV1Parts fv1_decompose(const FV1Function& f, double alpha);

// right-continuous remainder f_R + f_c
FV1Function fv1_right_part(const FV1Function& f, double alpha);
FV1Function fv1_left_part(const FV1Function& f, double alpha);

// Finite sum of tensor products of 1-d finite-variation functions. The
// restricted class on which the per-axis jump decomposition is computable
// from a finite description.
class TensorFVFunction {
 public:
  struct Term {
    double coefficient = 1.0;
    std::vector<FV1Function> factors;  // one per axis
  };

  explicit TensorFVFunction(int dim) : dim_(dim) {}
  TensorFVFunction(int dim, std::vector<Term> terms);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  double evaluate(std::span<const double> x) const;
  FunctionSpec as_function() const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

// All 2^d parts f_b, keyed by strings like "Lr...r" (axis 1 first). Parts sum
// to f; the L-part of axis i vanishes on x_i = alpha_i. axis_order picks the
// sequence in which the per-axis operators are applied; the result is
// order-independent.
std::map<std::string, TensorFVFunction> tensor_decompose(const TensorFVFunction& f,
                                                         std::span<const double> alpha,
                                                         std::span<const int> axis_order = {});

}  // namespace boxnc

#endif
