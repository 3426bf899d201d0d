#ifndef BOXNC_POLYSEG_HPP
#define BOXNC_POLYSEG_HPP

#include <vector>

namespace boxnc {

// Dense monomial-basis polynomial, low degree. coeffs[k] multiplies x^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  static Poly constant(double c) { return Poly({c}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero poly
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator()(double x) const;

  Poly derivative() const;
  Poly antiderivative() const;  // constant term 0
  // p(x - c) expanded back into monomial coefficients.
  Poly shifted_argument(double c) const;
  Poly& operator+=(const Poly& other);
  Poly scaled(double s) const;
  double max_abs_coeff() const;

 private:
  std::vector<double> coeffs_;
};

// All real roots of p in [a, b], found by recursive critical-point isolation
// and bisection. Tangential (even-multiplicity) roots may be missed; callers
// use the result only to enumerate candidate extrema, where such points are
// never strict optima of the antiderivative.
std::vector<double> poly_roots_in(const Poly& p, double a, double b);

struct RangeExtrema {
  double min_value, min_arg;
  double max_value, max_arg;
};

// Min and max of p over [a, b] via endpoints plus interior critical points.
RangeExtrema poly_extrema_on(const Poly& p, double a, double b);

// Compactly supported piecewise polynomial: zero left of breaks.front(),
// constant tail_value right of breaks.back(), pieces[i] on
// [breaks[i], breaks[i+1]). Used for survival functions of zero-mass signed
// measures and their iterated convolutions.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;  // identically zero
  PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces, double tail_value = 0.0);

  bool zero() const { return pieces_.empty(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  double tail_value() const { return tail_value_; }

  double operator()(double x) const;
  // Integral from breaks.front() to x; constant beyond the support when the
  // tail value is zero.
  PiecewisePoly antiderivative() const;

 private:
  std::vector<double> breaks_;
  std::vector<Poly> pieces_;
  double tail_value_ = 0.0;
};

}  // namespace boxnc

#endif
