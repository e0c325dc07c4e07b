#pragma once

#include <cstddef>
#include <vector>

namespace relbell {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]. Nodes ascending. Exact for
// polynomials of degree 2n - 1.
QuadratureRule gauss_legendre(std::size_t n);

// The same rule mapped affinely onto [lo, hi].
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

}  // namespace relbell
