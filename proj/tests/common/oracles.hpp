#pragma once

// Independent brute-force references shared by the unit and acceptance tests.

#include "arw/lattice.hpp"
#include "arw/quadrature.hpp"
#include "arw/chaos.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

struct TupleSums {
  std::int64_t count = 0;  // tuples summing to zero
  double sep = 0.0;        // N^-l sum over nonzero sums of 1/|v|^2
};

// Exhaustive enumeration of all l-tuples, l in {2, 4, 6}.
inline TupleSums tuples(const arw::FrequencySet& E, int ell) {
  const auto& p = E.points();
  const std::size_t n = p.size();
  TupleSums out;
  double acc = 0.0;
  std::vector<std::size_t> idx(ell, 0);
  while (true) {
    long x = 0, y = 0, z = 0;
    for (int k = 0; k < ell; ++k) {
      x += p[idx[k]].x;
      y += p[idx[k]].y;
      z += p[idx[k]].z;
    }
    long v2 = x * x + y * y + z * z;
    if (v2 == 0) ++out.count;
    else acc += 1.0 / double(v2);
    int k = ell - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  out.sep = acc / std::pow(double(n), ell);
  return out;
}

// Zero-sum quadruples with no vanishing pair.
inline std::int64_t nondegenerate_quadruples(const arw::FrequencySet& E) {
  const auto& p = E.points();
  auto zero = [](const arw::LatticePoint& a) { return a.x == 0 && a.y == 0 && a.z == 0; };
  std::int64_t c = 0;
  for (const auto& a : p)
    for (const auto& b : p)
      for (const auto& d : p) {
        arw::LatticePoint e = -(a + b + d);
        if (e.norm2() != E.m()) continue;
        if (zero(a + b) || zero(a + d) || zero(a + e) || zero(b + d) || zero(b + e) || zero(d + e)) continue;
        ++c;
      }
  return c;
}

// E[|Z| H_2n(Z1) H_2l(Z2)] in polar coordinates: trapezoid in the angle,
// Gauss-Hermite in the signed radius (the integrand is even in it).
inline double alpha(int n, int l, int radial = 40, int angular = 64) {
  auto g = arw::gauss_hermite_normal(radial);
  double total = 0.0;
  for (int a = 0; a < angular; ++a) {
    double th = 2.0 * arw::kPi * a / angular;
    double c = std::cos(th), s = std::sin(th);
    double inner = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      double x = g.nodes[i];
      inner += g.weights[i] * x * x * arw::hermite(2 * n, x * c) * arw::hermite(2 * l, x * s);
    }
    // int_0^inf rho^2 f e^{-rho^2/2} = (1/2) sqrt(2 pi) E[X^2 f]
    total += inner * 0.5 * std::sqrt(2.0 * arw::kPi) / angular;
  }
  return total;
}

}  // namespace oracle
