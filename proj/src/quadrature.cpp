#include "boxnc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "boxnc/errors.hpp"

namespace boxnc {

namespace {

GaussRule compute_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_order.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) fail(ErrorCode::invalid_argument, "quadrature order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double gauss_legendre_integrate(double a, double b, const std::function<double(double)>& f,
                                int panels, int order) {
  if (panels < 1) fail(ErrorCode::invalid_argument, "panel count must be >= 1");
  if (a == b) return 0.0;
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += s * half;
  }
  return total;
}

std::vector<std::pair<double, double>> uniform_quadrature(double a, double b, int panels,
                                                          int order) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "uniform segment needs a < b");
  if (panels < 2) fail(ErrorCode::invalid_argument, "uniform segment resolution must be >= 2");
  const GaussRule& rule = gauss_legendre(order);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      // weight normalized by 1/(b-a): panel width / (b-a) / 2 per unit rule weight
      out.emplace_back(mid + half * rule.nodes[i], rule.weights[i] * 0.5 / panels);
    }
  }
  return out;
}

}  // namespace boxnc
