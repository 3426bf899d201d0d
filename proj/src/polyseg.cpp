#include "boxnc/polyseg.hpp"

#include <algorithm>
#include <cmath>

#include "boxnc/errors.hpp"

namespace boxnc {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly::operator()(double x) const {
  double v = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
  return v;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  if (coeffs_.empty()) return Poly();
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Poly(std::move(a));
}

Poly Poly::shifted_argument(double c) const {
  // Horner in (x - c): repeatedly multiply by (x - c) and add the next coefficient.
  std::vector<double> out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    std::vector<double> next(out.size() + 1, 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
      next[j + 1] += out[j];
      next[j] -= c * out[j];
    }
    next[0] += coeffs_[i];
    out = std::move(next);
  }
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  return *this;
}

Poly Poly::scaled(double s) const {
  std::vector<double> out = coeffs_;
  for (double& c : out) c *= s;
  return Poly(std::move(out));
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

namespace {

double bisect_root(const Poly& p, double lo, double hi) {
  double flo = p(lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-12 * (1.0 + std::abs(lo) + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> poly_roots_in(const Poly& p, double a, double b) {
  std::vector<double> roots;
  if (a > b || p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    const double r = -p.coeffs()[0] / p.coeffs()[1];
    if (r >= a && r <= b) roots.push_back(r);
    return roots;
  }
  std::vector<double> cuts = poly_roots_in(p.derivative(), a, b);
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (lo == hi) continue;
    const double flo = p(lo), fhi = p(hi);
    if (flo == 0.0) {
      if (roots.empty() || roots.back() != lo) roots.push_back(lo);
      continue;
    }
    if ((flo < 0.0) != (fhi < 0.0)) {
      const double r = bisect_root(p, lo, hi);
      if (roots.empty() || roots.back() != r) roots.push_back(r);
    }
  }
  const double fb = p(b);
  if (fb == 0.0 && (roots.empty() || roots.back() != b)) roots.push_back(b);
  return roots;
}

RangeExtrema poly_extrema_on(const Poly& p, double a, double b) {
  RangeExtrema e{p(a), a, p(a), a};
  auto consider = [&](double x) {
    const double v = p(x);
    if (v < e.min_value) {
      e.min_value = v;
      e.min_arg = x;
    }
    if (v > e.max_value) {
      e.max_value = v;
      e.max_arg = x;
    }
  };
  consider(b);
  for (double c : poly_roots_in(p.derivative(), a, b)) consider(c);
  return e;
}

PiecewisePoly::PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces,
                             double tail_value)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), tail_value_(tail_value) {
  if (breaks_.size() != pieces_.size() + 1) {
    fail(ErrorCode::invalid_argument, "piecewise polynomial needs one more break than pieces");
  }
  if (!std::is_sorted(breaks_.begin(), breaks_.end())) {
    fail(ErrorCode::invalid_argument, "piecewise polynomial breaks must be sorted");
  }
}

double PiecewisePoly::operator()(double x) const {
  if (pieces_.empty()) return 0.0;
  if (x < breaks_.front()) return 0.0;
  if (x >= breaks_.back()) return tail_value_;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const std::size_t idx = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return pieces_[idx](x);
}

PiecewisePoly PiecewisePoly::antiderivative() const {
  if (pieces_.empty()) return PiecewisePoly();
  std::vector<Poly> anti(pieces_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Poly primitive = pieces_[i].antiderivative();
    Poly piece = primitive;
    piece += Poly::constant(acc - primitive(breaks_[i]));
    anti[i] = piece;
    acc += primitive(breaks_[i + 1]) - primitive(breaks_[i]);
  }
  return PiecewisePoly(breaks_, std::move(anti), acc);
}

}  // namespace boxnc
