#ifndef BOXNC_QUADRATURE_HPP
#define BOXNC_QUADRATURE_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace boxnc {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// and cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Composite rule: `panels` equal subdivisions of [a, b], fixed order per
// panel. Handles a > b with the usual sign flip.
double gauss_legendre_integrate(double a, double b, const std::function<double(double)>& f,
                                int panels = 1, int order = 6);

// Discretization of the uniform distribution on [a, b]: quadrature points and
// probability weights summing to 1.
std::vector<std::pair<double, double>> uniform_quadrature(double a, double b, int panels,
                                                          int order = 6);

}  // namespace boxnc

#endif
