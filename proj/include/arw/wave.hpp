#pragma once

#include "arw/lattice.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

namespace arw {

using FrequencyPtr = std::shared_ptr<const FrequencySet>;

// One realization F(x) = (2/sqrt N) sum_{E+} Re(a_mu e^{2 pi i <mu, x>}).
class Wave {
 public:
  Wave(FrequencyPtr E, std::vector<std::complex<double>> coefficients, std::uint64_t seed = 0);

  static Wave sample(FrequencyPtr E, std::uint64_t seed);
  // Lines "mu_x mu_y mu_z re im"; points absent from the file get a = 0.
  static Wave from_file(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  Vec3 surface_gradient(const Vec3& x, const Vec3& n) const;
  std::vector<double> evaluate(const std::vector<Vec3>& points) const;

  const FrequencySet& frequencies() const { return *E_; }
  const FrequencyPtr& frequency_ptr() const { return E_; }
  const std::vector<std::complex<double>>& coefficients() const { return a_; }
  std::uint64_t seed() const { return seed_; }
  double spectral_scale() const { return E_->spectral_scale(); }

 private:
  FrequencyPtr E_;
  std::vector<std::complex<double>> a_;
  std::uint64_t seed_ = 0;
};

// The wave x -> F(P^T x) for a signed permutation P.
Wave permuted(const Wave& F, const Mat3& P);

// r(x) = (1/N) sum_E cos(2 pi <mu, x>), its gradient D and Hessian.
double covariance(const FrequencySet& E, const Vec3& x);
Vec3 covariance_gradient(const FrequencySet& E, const Vec3& x);
Mat3 covariance_hessian(const FrequencySet& E, const Vec3& x);

// Row i holds cos(2 pi <mu_k, x_i>) in column k and sin in column |E+| + k.
Eigen::MatrixXd trig_basis(const FrequencySet& E, const std::vector<Vec3>& points);
// Column s holds (2/sqrt N) (Re a, -Im a) of waves[s]; basis * coeffs gives values.
Eigen::MatrixXd coefficient_matrix(const std::vector<Wave>& waves);

struct SurfacePoint {
  Vec3 position;
  Vec3 normal;
};

struct KacRiceBlocks {
  double r = 0.0;
  Vec3 d = Vec3::Zero();  // gradient of r at sigma - sigma', a row vector
  Mat3 hess = Mat3::Zero();
  Mat3 omega = Mat3::Identity();
  Mat3 omega_p = Mat3::Identity();
  Mat2 q = Mat2::Identity();
  Mat2 q_p = Mat2::Identity();
  Mat2 x = Mat2::Zero();
  Mat2 x_p = Mat2::Zero();
  Mat2 y = Mat2::Zero();
  Mat2 y_p = Mat2::Zero();
  // Orthonormal tangent frames Omega L Q (or a rotated frame near n3 = 0).
  Eigen::Matrix<double, 3, 2> frame = Eigen::Matrix<double, 3, 2>::Zero();
  Eigen::Matrix<double, 3, 2> frame_p = Eigen::Matrix<double, 3, 2>::Zero();

  Eigen::Matrix4d theta() const;
  // Blocks scaled by eps; r scaled too so every expansion variable shrinks.
  KacRiceBlocks scaled(double eps) const;
};

inline constexpr double kClampBand = 1e-9;

// Omega = I - n n^T.
Mat3 omega_matrix(const Vec3& n);
// Square root of (L^T Omega L)^{-1}; needs n3 != 0, -1.
Mat2 q_matrix(const Vec3& n);
// Below this |n3| the frame Omega L Q is replaced by a cross-product frame.
inline constexpr double kFrameCutoff = 1e-3;
// 3x2 orthonormal basis of the tangent plane at n. Equals Omega L Q after
// flipping n to n3 >= 0, which leaves Omega unchanged.
Eigen::Matrix<double, 3, 2> tangent_frame(const Vec3& n);

KacRiceBlocks kac_rice_blocks(const FrequencySet& E, const SurfacePoint& s, const SurfacePoint& sp);

}  // namespace arw
