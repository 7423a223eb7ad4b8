#pragma once

#include "arw/common.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace arw {

struct LatticePoint {
  int x = 0;
  int y = 0;
  int z = 0;

  long norm2() const { return long(x) * x + long(y) * y + long(z) * z; }
  int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  LatticePoint operator-() const { return {-x, -y, -z}; }
  LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y, z + o.z}; }
  LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
  auto operator<=>(const LatticePoint&) const = default;
  Vec3 vec() const { return Vec3(x, y, z); }
};

bool representable(long m);
bool admissible(long m);

// The lattice points of norm m, with the half-set E+ used to index
// independent wave coefficients.
class FrequencySet {
 public:
  static FrequencySet enumerate(long m);
  static FrequencySet from_points(long m, std::vector<LatticePoint> points);

  long m() const { return m_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const std::vector<LatticePoint>& half() const { return half_; }
  // M = 4 pi^2 m / 3, the variance of each partial derivative of F.
  double spectral_scale() const { return 4.0 * kPi * kPi * double(m_) / 3.0; }

 private:
  long m_ = 0;
  std::vector<LatticePoint> points_;
  std::vector<LatticePoint> half_;
};

// Lexicographic positivity: mu1 > 0, or mu1 = 0 and mu2 > 0, or mu = (0,0,+).
bool in_half(const LatticePoint& p);

struct SpectralMoments {
  long m = 0;
  long n = 0;
  int max_degree = 0;
  // (a,b,c) -> (1/N) sum (mu1/|mu|)^a (mu2/|mu|)^b (mu3/|mu|)^c
  std::map<std::array<int, 3>, double> moments;
  double psi = 0.0;  // (1/N) sum mu1^4
  double phi = 0.0;  // (1/N) sum mu1^2 mu2^2
  double moment(int a, int b, int c) const;
};

SpectralMoments spectral_moments(const FrequencySet& E, int max_degree);

struct MeasureOnSphere {
  std::vector<Vec3> directions;
  std::vector<double> weights;

  static MeasureOnSphere spectral(const FrequencySet& E);
  // Product Gauss rule on the unit sphere (cubed-sphere layout), weights / 4 pi.
  static MeasureOnSphere uniform(int order = 16);
  // The signed-permutation orbit of theta, 48 atoms of equal weight.
  static MeasureOnSphere orbit(const Vec3& theta);
  void validate() const;
};

// All 48 signed permutation matrices.
const std::vector<Mat3>& signed_permutations();

// Plain-text lattice cache: one "x y z" line per point, in a directory that
// carries the code version.
std::filesystem::path lattice_cache_file(const std::filesystem::path& root, long m);
std::optional<FrequencySet> read_lattice_cache(const std::filesystem::path& root, long m);
void write_lattice_cache(const std::filesystem::path& root, const FrequencySet& E);
// Reads the cache when present, otherwise enumerates and stores.
FrequencySet cached_enumerate(long m, const std::optional<std::filesystem::path>& root);

}  // namespace arw
