#include "relbell/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace relbell {

namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence. Not valid at x = +-1,
// which Gauss nodes never reach.
std::pair<double, double> legendre(std::size_t n, double x) {
  double prev = 1.0;
  double cur = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd - 1.0) * x * cur - (kd - 1.0) * prev) / kd;
    prev = cur;
    cur = next;
  }
  const double deriv = static_cast<double>(n) * (x * cur - prev) / (x * x - 1.0);
  return {cur, deriv};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, refined by Newton.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    for (int iter = 0; iter < 32; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        break;
      }
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
  QuadratureRule rule = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

}  // namespace relbell
