#include "pqtsim/quadrature.hpp"

#include <cmath>

namespace pqtsim {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  const int n = order;
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int m = (n + 1) / 2;
  const double pi = 4.0 * kQuarterPi;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate of the i-th root, refined by Newton steps.
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace pqtsim
