#pragma once

#include "arw/surface.hpp"
#include "arw/wave.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace arw {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Probabilists' Hermite polynomial by the three-term recursion.
double hermite(int q, double t);
double beta2k(int k);
double p_poly(int i, double t);
double alpha(int n, int l);

// Standardized tangential gradient: M |Z|^2 = |grad_Sigma F|^2.
Eigen::Vector2d z_from_gradient(const Vec3& grad, const Vec3& n, double M);
Eigen::Vector2d z_vector(const Wave& F, const Vec3& sigma, const Vec3& n);

struct ChaosProjections {
  double l0 = 0.0;
  double l2 = 0.0;
  double l4 = 0.0;
};

// L[2q] by surface quadrature of the Hermite expansion, q <= 2.
double chaos_projection(const Wave& F, const Surface& s, int q);
ChaosProjections chaos_projections(const Wave& F, const Surface& s);
// Same, batched through the basis matrices; one entry per wave.
std::vector<ChaosProjections> chaos_projections_batch(const std::vector<Wave>& waves, const Surface& s);

// Diagonal part L^a[2].
double l2_diagonal(const Wave& F, const Surface& s);
// Off-diagonal part L^b[2] by direct pair sums; O(N^2 Q), tiny m only.
double l2_offdiagonal(const Wave& F, const Surface& s);
// L^a[4] through the W statistics (cost independent of N beyond forming W).
double l4_diagonal(const Wave& F, const Surface& s);
// L^a[4] from the literal double sum over E x E; small m only.
double l4_diagonal_direct(const Wave& F, const Surface& s);

struct WStatistics {
  Mat3 w = Mat3::Zero();
  double psi = 0.0;
  double phi = 0.0;
  Mat6 sigma_w = Mat6::Zero();
  // (W11, W12, W13, W22, W23, W33)
  Vec6 vector() const;
};
WStatistics w_statistics(const Wave& F);
// Covariance of (W11, W12, W13, W22, W23, W33) from psi and phi.
Mat6 sigma_w(const FrequencySet& E);
Mat6 sigma_z();
// O with Sigma_Z = O D O^T (the transpose of the printed table).
Mat6 o_matrix();
Mat6 d_matrix();
Mat6 delta_matrix();

enum class Regime { generic, h_form, static_surface };
Regime parse_regime(const std::string& s);
std::string to_string(Regime r);

struct SurfaceFunctionals {
  double area = 0.0;
  double i2 = 0.0;
  double i4 = 0.0;
};
SurfaceFunctionals surface_functionals(const Surface& s);

double predict_variance(const FrequencySet& E, const Surface& s, Regime regime);

// Fourth-order normal tensor T[i][j][k][l] = int n_i n_j n_k n_l.
using Tensor4 = std::array<double, 81>;
Tensor4 normal_tensor4(const Surface& s);

}  // namespace arw
