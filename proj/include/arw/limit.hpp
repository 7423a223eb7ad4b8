#pragma once

#include "arw/chaos.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace arw {

// Coefficients of the quadratic limit form in X = (X11, X12, X13, X22, X23, X33).
struct LimitCoefficients {
  std::array<double, 6> c_diag{};
  // pairs (p, q), p < q, in lexicographic order: (11,12), (11,13), ..., (23,33)
  std::array<double, 15> c_cross{};
  double variance_coefficients = 0.0;  // 2 sum c_ij^2 + sum c_ijlk^2
  double variance_closed = 0.0;        // (8/225)(81 I4 + 35 A^2)
  double area = 0.0;
  double i4 = 0.0;
  bool static_surface = true;
  std::string tag;  // "outside theorem hypotheses" for non-static surfaces

  static const std::array<std::pair<int, int>, 15>& cross_pairs();
  double sum_diag() const;
  // Unnormalized form: sum c_ij (X_ij^2 - 1) + sum c_ijlk X_ij X_lk.
  double form(const Vec6& x) const;
  // form / sqrt(variance_closed)
  double normalized(const Vec6& x) const;
};

LimitCoefficients limit_coefficients(const Surface& s, double static_tol = 1e-4);

// The W-polynomial limit evaluated at Z = O Delta X, used as an oracle for the
// coefficient table.
double limit_form_from_w(const Surface& s, const Vec6& x);

// Draws of the normalized limit variable, draw i from CounterStream(seed).
std::vector<double> sample_limit(const Surface& s, long count, std::uint64_t seed);
std::vector<double> sample_limit(const LimitCoefficients& c, long count, std::uint64_t seed);

}  // namespace arw
