#pragma once

#include "arw/surface.hpp"
#include "arw/wave.hpp"

#include <cstdint>
#include <string>

namespace arw {

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

// E|B| for B ~ N(0, C) in R^2, via the complete elliptic integral.
double expected_norm(const Mat2& C);

inline constexpr int kNormProductNodes = 72;
// E[|(W1,W2)| |(W3,W4)|] for W ~ N(0, theta). Written as E|A| E|B| plus a
// double integral of the Gaussian Laplace transforms, which stays accurate
// when the cross-covariance is tiny.
double expected_norm_product(const Eigen::Matrix4d& theta, int nodes = kNormProductNodes);
// Randomly shifted lattice-rule estimate of the same expectation.
Estimate expected_norm_product_qmc(const Eigen::Matrix4d& theta, long budget, std::uint64_t seed);

enum class TwoPointMethod { quadrature, qmc };

struct TwoPointOptions {
  TwoPointMethod method = TwoPointMethod::quadrature;
  int nodes = kNormProductNodes;
  long budget = 1 << 16;
  std::uint64_t seed = 1;
};

struct TwoPointValue {
  double exact = 0.0;
  double se = 0.0;  // quadrature: difference against a coarser rule
  double taylor = 0.0;
  double r = 0.0;
  KacRiceBlocks blocks;
};

// K2 = E[|W12| |W34|] / (2 pi sqrt(1 - r^2)) for the given blocks.
Estimate two_point_from_blocks(const KacRiceBlocks& b, const TwoPointOptions& opts = {});
TwoPointValue two_point_exact(const FrequencySet& E, const SurfacePoint& s, const SurfacePoint& sp,
                              const TwoPointOptions& opts = {});

enum class TaylorVariant {
  consistent,  // coefficients implied by the 4x4 expansion times 1/sqrt(1 - r^2)
  as_printed,  // r^4, quartic and cross blocks twice as large
};
double two_point_taylor(const KacRiceBlocks& b, TaylorVariant v = TaylorVariant::consistent);

struct SecondMomentOptions {
  int outer_order = 8;      // Gauss order per chart edge for sigma
  int inner_radial = 24;    // polar rule around sigma (spheres)
  int inner_angular = 32;
  int nodes = 48;           // K2 quadrature nodes
};

struct SecondMoment {
  double value = 0.0;   // E[L^2]
  double mean = 0.0;    // pi sqrt(m/3) A
  double variance = 0.0;
  long pairs = 0;
  long clamped = 0;
  std::string method;
};

// M times the double integral of K2. Spheres use geodesic polar coordinates
// around each outer node, which absorbs the 1/d diagonal singularity; other
// surfaces use the product rule with clamped pairs filled from neighbours.
SecondMoment second_moment(const FrequencySet& E, const Surface& s, const SecondMomentOptions& opts = {});

enum class MomentKind { r2, r4, tr_x, tr_yy };
MomentKind parse_moment_kind(const std::string& s);

struct MomentIntegral {
  double numeric = 0.0;
  double prediction = 0.0;
  double spectral = 0.0;  // exact identity value, r2 only
  long clamped = 0;
};

// Double surface integral of r^2, r^4, tr X or tr(Y'Y) with `order` Gauss
// nodes per chart edge.
MomentIntegral moment_integral(const FrequencySet& E, const Surface& s, MomentKind kind, int order = 12);

}  // namespace arw
