#pragma once

#include <vector>

#include "pqtsim/types.hpp"

namespace pqtsim {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre nodes and weights by Newton iteration on P_n.
QuadratureRule gauss_legendre(int order);

}  // namespace pqtsim
