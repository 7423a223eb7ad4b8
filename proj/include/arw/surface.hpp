#pragma once

#include "arw/lattice.hpp"

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace arw {

enum class SurfaceKind { sphere, hemisphere, cap };

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::sphere;
  double radius = 0.24;
  double angle = kPi;  // polar half-angle of the retained cap (about +z)
  Vec3 center = Vec3(0.5, 0.5, 0.5);

  static SurfaceSpec sphere(double radius, Vec3 center = Vec3(0.5, 0.5, 0.5));
  static SurfaceSpec hemisphere(double radius, Vec3 center = Vec3(0.5, 0.5, 0.5));
  static SurfaceSpec cap(double radius, double angle, Vec3 center = Vec3(0.5, 0.5, 0.5));
  std::string label() const;
  // cos of the cap angle; -2 for the full sphere so nothing is clipped.
  double cos_cap() const;
  void validate() const;
};

struct SurfaceNode {
  Vec3 position;
  Vec3 normal;
  double weight = 0.0;  // quadrature weight times area density
};

// One face of the cubed sphere with equiangular coordinates
// (u, v) in [-pi/4, pi/4]^2, clipped to the cap n_z >= cos(angle).
class Chart {
 public:
  static constexpr double kHalfWidth = kPi / 4;

  Chart(int face, const Vec3& center, double radius, double cos_cap);

  int face() const { return face_; }
  Vec3 direction(double u, double v) const;
  Vec3 position(double u, double v) const { return center_ + radius_ * direction(u, v); }
  Vec3 normal(double u, double v) const { return direction(u, v); }
  double area_density(double u, double v) const;
  // Nonnegative exactly on the retained part of the face.
  double inclusion(const Vec3& normal) const { return normal.z() - cos_cap_; }
  double inclusion(double u, double v) const { return inclusion(direction(u, v)); }
  bool clipped() const { return clipped_; }
  bool empty() const { return empty_; }

  // Retained v-intervals on the line u = const.
  std::vector<std::pair<double, double>> v_intervals(double u) const;
  // u-panels on which the interval structure is constant.
  std::vector<std::pair<double, double>> u_panels() const;

 private:
  int face_;
  Vec3 center_;
  double radius_;
  double cos_cap_;
  Vec3 w_, eu_, ev_;
  bool clipped_ = false;
  bool empty_ = false;
};

class Surface {
 public:
  static constexpr int kDefaultOrder = 48;

  static Surface builtin(const SurfaceSpec& spec, int order = kDefaultOrder);
  Surface with_order(int order) const { return builtin(spec_, order); }

  const SurfaceSpec& spec() const { return spec_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const std::vector<SurfaceNode>& nodes() const { return nodes_; }
  int order() const { return order_; }
  std::string label() const { return spec_.label(); }

  // integral of n1^a n2^b n3^c over the surface
  double normal_moment(int a, int b, int c) const;
  // integral of n n^T
  Mat3 normal_tensor2() const { return tensor2_; }

 private:
  SurfaceSpec spec_;
  int order_ = kDefaultOrder;
  std::vector<Chart> charts_;
  std::vector<SurfaceNode> nodes_;
  Mat3 tensor2_ = Mat3::Zero();
};

double area(const Surface& s);

// I_k via the identity I_k = sum over |alpha| = k of multinomial(alpha) (int n^alpha)^2.
double interaction_integral(const Surface& s, int k);
// Direct double quadrature over node pairs, using every `stride`-th node.
double interaction_integral_double(const Surface& s, int k, int stride = 1);

// H(eta) = sum_theta w_theta (int <theta, n>^2)^2.
double h_functional(const Surface& s, const MeasureOnSphere& eta);
// Uniform-measure value (A^2 + 2 I) / 15, the analytic sphere average.
double h_uniform_analytic(const Surface& s);

struct StaticityReport {
  bool is_static = false;
  double target = 0.0;  // A^2 / 9
  double max_deviation = 0.0;
  std::vector<std::pair<std::string, double>> values;
};
StaticityReport is_static(const Surface& s, double tol);

std::complex<double> oscillatory_integral(const Surface& s, const LatticePoint& v);
std::complex<double> oscillatory_integral(const Surface& s, const Vec3& v);

}  // namespace arw
