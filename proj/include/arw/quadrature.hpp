#pragma once

#include <vector>

namespace arw {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes on [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Gauss-Hermite rule for the weight exp(-x^2 / 2) / sqrt(2 pi), i.e. the
// expectation against a standard normal.
GaussRule gauss_hermite_normal(int n);

}  // namespace arw
