#include "arw/wave.hpp"

#include <cmath>

namespace arw {

Mat3 omega_matrix(const Vec3& n) { return Mat3::Identity() - n * n.transpose(); }

Mat2 q_matrix(const Vec3& n) {
  double n3 = n.z();
  double den = n3 * n3 + n3;
  if (std::abs(den) < 1e-300) throw InvalidArgument("q_matrix needs n3 != 0, -1");
  Mat2 q;
  q << n.x() * n.x() + n3 * n3 + n3, n.x() * n.y(), n.x() * n.y(), n.y() * n.y() + n3 * n3 + n3;
  return q / den;
}

Eigen::Matrix<double, 3, 2> tangent_frame(const Vec3& n) {
  Vec3 u = n.z() < 0 ? Vec3(-n) : n;
  Eigen::Matrix<double, 3, 2> L = Eigen::Matrix<double, 3, 2>::Zero();
  L(0, 0) = 1.0;
  L(1, 1) = 1.0;
  if (u.z() >= kFrameCutoff) return omega_matrix(u) * L * q_matrix(u);
  Vec3 a = u.cross(Vec3::UnitZ());
  a.normalize();
  Vec3 b = u.cross(a);
  Eigen::Matrix<double, 3, 2> T;
  T.col(0) = a;
  T.col(1) = b;
  return T;
}

Eigen::Matrix4d KacRiceBlocks::theta() const {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t.block<2, 2>(0, 0) += x;
  t.block<2, 2>(0, 2) += y;
  t.block<2, 2>(2, 0) += y_p;
  t.block<2, 2>(2, 2) += x_p;
  return t;
}

KacRiceBlocks KacRiceBlocks::scaled(double eps) const {
  KacRiceBlocks b = *this;
  b.r *= eps;
  b.x *= eps;
  b.x_p *= eps;
  b.y *= eps;
  b.y_p *= eps;
  return b;
}

KacRiceBlocks kac_rice_blocks(const FrequencySet& E, const SurfacePoint& s, const SurfacePoint& sp) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  if (std::abs(s.normal.norm() - 1.0) > 1e-9 || std::abs(sp.normal.norm() - 1.0) > 1e-9)
    throw InvalidArgument("normals must be unit vectors");
  Vec3 delta = s.position - sp.position;
  KacRiceBlocks b;
  b.r = covariance(E, delta);
  double gap = 1.0 - b.r * b.r;
  if (gap <= kClampBand) throw RuntimeError("inside clamp band");
  b.d = covariance_gradient(E, delta);
  b.hess = covariance_hessian(E, delta);
  b.omega = omega_matrix(s.normal);
  b.omega_p = omega_matrix(sp.normal);
  auto q_or_identity = [](const Vec3& n) {
    Vec3 u = n.z() < 0 ? Vec3(-n) : n;
    return u.z() >= kFrameCutoff ? q_matrix(u) : Mat2(Mat2::Identity());
  };
  b.q = q_or_identity(s.normal);
  b.q_p = q_or_identity(sp.normal);
  b.frame = tangent_frame(s.normal);
  b.frame_p = tangent_frame(sp.normal);

  const double M = E.spectral_scale();
  Mat3 ddt = b.d * b.d.transpose();
  // D at (sigma', sigma) is -D, so D^T D is shared.
  b.x = -(b.frame.transpose() * ddt * b.frame) / (gap * M);
  b.x_p = -(b.frame_p.transpose() * ddt * b.frame_p) / (gap * M);
  Mat3 core = b.hess + (b.r / gap) * ddt;
  b.y = -(b.frame.transpose() * core * b.frame_p) / M;
  b.y_p = b.y.transpose();
  return b;
}

}  // namespace arw
