#include "arw/lattice.hpp"

#include "arw/quadrature.hpp"
#include "arw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace arw {

namespace {

long isqrt(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

using Int128 = __int128;

}  // namespace

bool representable(long m) {
  if (m < 1) throw InvalidArgument("m must be positive");
  while (m % 4 == 0) m /= 4;
  return m % 8 != 7;
}

bool admissible(long m) {
  if (m < 1) throw InvalidArgument("m must be positive");
  long r = m % 8;
  return r != 0 && r != 4 && r != 7;
}

bool in_half(const LatticePoint& p) {
  if (p.x != 0) return p.x > 0;
  if (p.y != 0) return p.y > 0;
  return p.z > 0;
}

FrequencySet FrequencySet::enumerate(long m) {
  if (m < 1) throw InvalidArgument("m must be positive");
  if (m > (1L << 40)) throw InvalidArgument("m too large");
  std::vector<LatticePoint> pts;
  long r = isqrt(m);
  for (long x = -r; x <= r; ++x) {
    long rest = m - x * x;
    long ry = isqrt(rest);
    for (long y = -ry; y <= ry; ++y) {
      long z2 = rest - y * y;
      long z = isqrt(z2);
      if (z * z != z2) continue;
      if (z == 0) {
        pts.push_back({int(x), int(y), 0});
      } else {
        pts.push_back({int(x), int(y), int(-z)});
        pts.push_back({int(x), int(y), int(z)});
      }
    }
  }
  return from_points(m, std::move(pts));
}

FrequencySet FrequencySet::from_points(long m, std::vector<LatticePoint> points) {
  FrequencySet E;
  E.m_ = m;
  std::sort(points.begin(), points.end());
  for (const auto& p : points) {
    if (p.norm2() != m) throw InvalidArgument("lattice point has the wrong norm");
  }
  if (std::adjacent_find(points.begin(), points.end()) != points.end())
    throw InvalidArgument("duplicate lattice point");
  E.points_ = std::move(points);
  for (const auto& p : E.points_) {
    if (in_half(p)) E.half_.push_back(p);
  }
  if (2 * E.half_.size() != E.points_.size())
    throw InvalidArgument("point set is not closed under negation");
  return E;
}

double SpectralMoments::moment(int a, int b, int c) const {
  auto it = moments.find({a, b, c});
  if (it == moments.end()) throw InvalidArgument("moment not tabulated");
  return it->second;
}

SpectralMoments spectral_moments(const FrequencySet& E, int max_degree) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  if (max_degree < 0 || max_degree > 8) throw InvalidArgument("max_degree must be in [0, 8]");
  SpectralMoments out;
  out.m = E.m();
  out.n = static_cast<long>(E.size());
  out.max_degree = max_degree;
  const double m = double(E.m());
  for (int a = 0; a <= max_degree; ++a) {
    for (int b = 0; a + b <= max_degree; ++b) {
      for (int c = 0; a + b + c <= max_degree; ++c) {
        Int128 s = 0;
        for (const auto& p : E.points()) {
          Int128 t = 1;
          for (int i = 0; i < a; ++i) t *= p.x;
          for (int i = 0; i < b; ++i) t *= p.y;
          for (int i = 0; i < c; ++i) t *= p.z;
          s += t;
        }
        out.moments[{a, b, c}] = double(s) / (double(out.n) * std::pow(m, 0.5 * (a + b + c)));
      }
    }
  }
  Int128 s4 = 0, s22 = 0;
  for (const auto& p : E.points()) {
    Int128 x2 = Int128(p.x) * p.x, y2 = Int128(p.y) * p.y;
    s4 += x2 * x2;
    s22 += x2 * y2;
  }
  // phi = m^2/6 - psi/2  <=>  6 sum x^2 y^2 = N m^2 - 3 sum x^4.
  if (6 * s22 != Int128(out.n) * E.m() * E.m() - 3 * s4)
    throw RuntimeError("moment identity phi = m^2/6 - psi/2 violated");
  out.psi = double(s4) / double(out.n);
  out.phi = double(s22) / double(out.n);
  return out;
}

const std::vector<Mat3>& signed_permutations() {
  static const std::vector<Mat3> group = [] {
    std::vector<Mat3> g;
    int perm[3] = {0, 1, 2};
    do {
      for (int s = 0; s < 8; ++s) {
        Mat3 P = Mat3::Zero();
        for (int i = 0; i < 3; ++i) P(i, perm[i]) = (s >> i & 1) ? -1.0 : 1.0;
        g.push_back(P);
      }
    } while (std::next_permutation(perm, perm + 3));
    return g;
  }();
  return group;
}

MeasureOnSphere MeasureOnSphere::spectral(const FrequencySet& E) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  MeasureOnSphere nu;
  double s = std::sqrt(double(E.m()));
  for (const auto& p : E.points()) {
    nu.directions.push_back(p.vec() / s);
    nu.weights.push_back(1.0 / double(E.size()));
  }
  return nu;
}

MeasureOnSphere MeasureOnSphere::uniform(int order) {
  // Six gnomonic faces with equiangular coordinates.
  GaussRule g = gauss_legendre(order, -kPi / 4, kPi / 4);
  MeasureOnSphere mu;
  for (int face = 0; face < 6; ++face) {
    int axis = face / 2;
    double sign = face % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < order; ++i) {
      for (int j = 0; j < order; ++j) {
        double X = std::tan(g.nodes[i]), Y = std::tan(g.nodes[j]);
        Vec3 p;
        p[axis] = sign;
        p[(axis + 1) % 3] = X;
        p[(axis + 2) % 3] = Y;
        double r2 = 1.0 + X * X + Y * Y;
        double jac = (1.0 + X * X) * (1.0 + Y * Y) / std::pow(r2, 1.5);
        mu.directions.push_back(p.normalized());
        mu.weights.push_back(g.weights[i] * g.weights[j] * jac);
      }
    }
  }
  // the rule integrates 1 to 4 pi only up to quadrature error
  double total = 0.0;
  for (double w : mu.weights) total += w;
  for (double& w : mu.weights) w /= total;
  return mu;
}

MeasureOnSphere MeasureOnSphere::orbit(const Vec3& theta) {
  if (theta.norm() == 0.0) throw InvalidArgument("orbit of the zero vector");
  MeasureOnSphere mu;
  Vec3 t = theta.normalized();
  for (const auto& P : signed_permutations()) {
    mu.directions.push_back(P * t);
    mu.weights.push_back(1.0 / 48.0);
  }
  return mu;
}

void MeasureOnSphere::validate() const {
  if (directions.size() != weights.size() || directions.empty())
    throw InvalidArgument("measure: atoms and weights differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw InvalidArgument("measure: negative weight");
    if (std::abs(directions[i].norm() - 1.0) > 1e-12) throw InvalidArgument("measure: atom not a unit vector");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("measure: total weight is not 1");
}

std::filesystem::path lattice_cache_file(const std::filesystem::path& root, long m) {
  return root / (std::string("v") + kVersion) / "lattice" / ("m_" + std::to_string(m) + ".txt");
}

std::optional<FrequencySet> read_lattice_cache(const std::filesystem::path& root, long m) {
  std::ifstream in(lattice_cache_file(root, m));
  if (!in) return std::nullopt;
  std::vector<LatticePoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    LatticePoint p;
    if (!(ss >> p.x >> p.y >> p.z)) return std::nullopt;
    pts.push_back(p);
  }
  try {
    FrequencySet E = FrequencySet::from_points(m, std::move(pts));
    // A truncated file would still pass the norm checks.
    if (E.empty() == representable(m)) return std::nullopt;
    return E;
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

void write_lattice_cache(const std::filesystem::path& root, const FrequencySet& E) {
  auto file = lattice_cache_file(root, E.m());
  std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp" + std::to_string(splitmix64(reinterpret_cast<std::uintptr_t>(&E)) % 100000);
  {
    std::ofstream out(tmp);
    for (const auto& p : E.points()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  }
  std::filesystem::rename(tmp, file);
}

FrequencySet cached_enumerate(long m, const std::optional<std::filesystem::path>& root) {
  if (root) {
    if (auto hit = read_lattice_cache(*root, m)) return *hit;
  }
  FrequencySet E = FrequencySet::enumerate(m);
  if (root) write_lattice_cache(*root, E);
  return E;
}

}  // namespace arw
