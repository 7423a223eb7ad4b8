#include "arw/surface.hpp"

#include "arw/quadrature.hpp"
#include "arw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace arw {

namespace {

constexpr int kScan = 64;

struct Frame {
  Vec3 w, eu, ev;
};

Frame face_frame(int face) {
  const Vec3 ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);
  switch (face) {
    case 0: return {ex, ey, ez};
    case 1: return {-ex, -ey, ez};
    case 2: return {ey, -ex, ez};
    case 3: return {-ey, ex, ez};
    case 4: return {ez, ex, ey};
    case 5: return {-ez, ex, -ey};
  }
  throw InvalidArgument("face index out of range");
}

// Interval structure fingerprint: per interval, whether it touches each edge.
std::vector<int> signature(const std::vector<std::pair<double, double>>& iv) {
  std::vector<int> sig;
  const double h = Chart::kHalfWidth;
  for (const auto& [a, b] : iv) sig.push_back((a <= -h ? 1 : 0) + (b >= h ? 2 : 0));
  return sig;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

}  // namespace

SurfaceSpec SurfaceSpec::sphere(double radius, Vec3 center) {
  return {SurfaceKind::sphere, radius, kPi, center};
}
SurfaceSpec SurfaceSpec::hemisphere(double radius, Vec3 center) {
  return {SurfaceKind::hemisphere, radius, kPi / 2, center};
}
SurfaceSpec SurfaceSpec::cap(double radius, double angle, Vec3 center) {
  return {SurfaceKind::cap, radius, angle, center};
}

std::string SurfaceSpec::label() const {
  std::ostringstream out;
  out.precision(10);
  switch (kind) {
    case SurfaceKind::sphere: out << "sphere:" << radius; break;
    case SurfaceKind::hemisphere: out << "hemisphere:" << radius; break;
    case SurfaceKind::cap: out << "cap:" << radius << ":" << angle; break;
  }
  return out.str();
}

double SurfaceSpec::cos_cap() const {
  switch (kind) {
    case SurfaceKind::sphere: return -2.0;
    case SurfaceKind::hemisphere: return 0.0;
    case SurfaceKind::cap: return std::cos(angle);
  }
  return -2.0;
}

void SurfaceSpec::validate() const {
  if (!(radius > 0.0)) throw InvalidArgument("surface radius must be positive");
  if (radius >= 0.5) throw InvalidArgument("does not embed in unit torus: radius must be below 1/2");
  for (int i = 0; i < 3; ++i) {
    if (center[i] - radius < 0.0 || center[i] + radius >= 1.0)
      throw InvalidArgument("surface must lie inside the fundamental cell [0,1)^3");
  }
  if (kind == SurfaceKind::cap && !(angle > 0.0 && angle < kPi))
    throw InvalidArgument("cap angle must lie in (0, pi)");
}

Chart::Chart(int face, const Vec3& center, double radius, double cos_cap)
    : face_(face), center_(center), radius_(radius), cos_cap_(cos_cap) {
  Frame f = face_frame(face);
  w_ = f.w;
  eu_ = f.eu;
  ev_ = f.ev;
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i <= kScan; ++i) {
    for (int j = 0; j <= kScan; ++j) {
      double u = -kHalfWidth + 2 * kHalfWidth * i / kScan;
      double v = -kHalfWidth + 2 * kHalfWidth * j / kScan;
      double g = inclusion(u, v);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
  }
  empty_ = hi < 0.0;
  clipped_ = !empty_ && lo < 0.0;
}

Vec3 Chart::direction(double u, double v) const {
  return (w_ + std::tan(u) * eu_ + std::tan(v) * ev_).normalized();
}

double Chart::area_density(double u, double v) const {
  double X = std::tan(u), Y = std::tan(v);
  double r2 = 1.0 + X * X + Y * Y;
  return radius_ * radius_ * (1.0 + X * X) * (1.0 + Y * Y) / (r2 * std::sqrt(r2));
}

std::vector<std::pair<double, double>> Chart::v_intervals(double u) const {
  const double h = kHalfWidth;
  if (empty_) return {};
  if (!clipped_) return {{-h, h}};
  std::vector<double> vs(kScan + 1), gs(kScan + 1);
  for (int k = 0; k <= kScan; ++k) {
    vs[k] = -h + 2 * h * k / kScan;
    gs[k] = inclusion(u, vs[k]);
  }
  std::vector<double> cuts{-h};
  for (int k = 0; k < kScan; ++k) {
    if ((gs[k] >= 0) == (gs[k + 1] >= 0)) continue;
    double a = vs[k], b = vs[k + 1];
    bool a_in = gs[k] >= 0;
    for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
      double mid = 0.5 * (a + b);
      if ((inclusion(u, mid) >= 0) == a_in)
        a = mid;
      else
        b = mid;
    }
    cuts.push_back(a_in ? a : b);
  }
  cuts.push_back(h);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    if (inclusion(u, 0.5 * (a + b)) >= 0) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::pair<double, double>> Chart::u_panels() const {
  const double h = kHalfWidth;
  if (empty_) return {};
  if (!clipped_) return {{-h, h}};
  std::vector<double> cuts{-h};
  auto sig_at = [this](double u) { return signature(v_intervals(u)); };
  double prev_u = -h;
  auto prev = sig_at(prev_u);
  for (int k = 1; k <= kScan; ++k) {
    double u = -h + 2 * h * k / kScan;
    auto cur = sig_at(u);
    if (cur != prev) {
      double a = prev_u, b = u;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        double mid = 0.5 * (a + b);
        if (sig_at(mid) == prev)
          a = mid;
        else
          b = mid;
      }
      cuts.push_back(0.5 * (a + b));
    }
    prev = cur;
    prev_u = u;
  }
  cuts.push_back(h);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 1e-15) continue;
    if (!v_intervals(0.5 * (a + b)).empty()) out.emplace_back(a, b);
  }
  return out;
}

Surface Surface::builtin(const SurfaceSpec& spec, int order) {
  spec.validate();
  if (order < 2) throw InvalidArgument("quadrature order must be at least 2");
  Surface s;
  s.spec_ = spec;
  s.order_ = order;
  const double c = spec.cos_cap();
  for (int face = 0; face < 6; ++face) {
    Chart chart(face, spec.center, spec.radius, c);
    if (chart.empty()) continue;
    s.charts_.push_back(chart);
  }
  for (const auto& chart : s.charts_) {
    for (const auto& [ua, ub] : chart.u_panels()) {
      GaussRule gu = gauss_legendre(order, ua, ub);
      for (int i = 0; i < order; ++i) {
        const double u = gu.nodes[i];
        for (const auto& [va, vb] : chart.v_intervals(u)) {
          GaussRule gv = gauss_legendre(order, va, vb);
          for (int j = 0; j < order; ++j) {
            const double v = gv.nodes[j];
            SurfaceNode node;
            node.normal = chart.normal(u, v);
            node.position = spec.center + spec.radius * node.normal;
            node.weight = gu.weights[i] * gv.weights[j] * chart.area_density(u, v);
            s.nodes_.push_back(node);
          }
        }
      }
    }
  }
  for (const auto& node : s.nodes_) s.tensor2_ += node.weight * node.normal * node.normal.transpose();
  return s;
}

double Surface::normal_moment(int a, int b, int c) const {
  double total = 0.0;
  for (const auto& node : nodes_) {
    const Vec3& n = node.normal;
    total += node.weight * std::pow(n.x(), a) * std::pow(n.y(), b) * std::pow(n.z(), c);
  }
  return total;
}

double area(const Surface& s) {
  double total = 0.0;
  for (const auto& node : s.nodes()) total += node.weight;
  return total;
}

double interaction_integral(const Surface& s, int k) {
  if (k < 0 || k % 2 != 0) throw InvalidArgument("interaction integral needs an even order k");
  double total = 0.0;
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; a + b <= k; ++b) {
      int c = k - a - b;
      double multinomial = double(binomial(k, a)) * double(binomial(k - a, b));
      double mom = s.normal_moment(a, b, c);
      total += multinomial * mom * mom;
    }
  }
  return total;
}

double interaction_integral_double(const Surface& s, int k, int stride) {
  if (k < 0 || k % 2 != 0) throw InvalidArgument("interaction integral needs an even order k");
  if (stride < 1) throw InvalidArgument("stride must be positive");
  const auto& nodes = s.nodes();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < nodes.size(); i += stride) idx.push_back(i);
  // Subsampling keeps the weights consistent by rescaling to the full area.
  double full = area(s), part = 0.0;
  for (std::size_t i : idx) part += nodes[i].weight;
  const double scale = full / part;
  double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto& p = nodes[idx[a]];
    double row = 0.0;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const auto& q = nodes[idx[b]];
      row += q.weight * std::pow(p.normal.dot(q.normal), k);
    }
    total += p.weight * row;
  }
  return total * scale * scale;
}

double h_functional(const Surface& s, const MeasureOnSphere& eta) {
  eta.validate();
  const Mat3 T = s.normal_tensor2();
  double total = 0.0;
  for (std::size_t i = 0; i < eta.directions.size(); ++i) {
    const Vec3& t = eta.directions[i];
    double proj = t.dot(T * t);
    total += eta.weights[i] * proj * proj;
  }
  return total;
}

double h_uniform_analytic(const Surface& s) {
  double A = area(s);
  return (A * A + 2.0 * interaction_integral(s, 2)) / 15.0;
}

StaticityReport is_static(const Surface& s, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  StaticityReport rep;
  const double A = area(s);
  rep.target = A * A / 9.0;
  auto record = [&](std::string name, double value) {
    rep.max_deviation = std::max(rep.max_deviation, std::abs(value - rep.target));
    rep.values.emplace_back(std::move(name), value);
  };
  record("uniform", h_functional(s, MeasureOnSphere::uniform()));
  for (long m : {2L, 3L, 5L, 6L, 9L}) record("nu_" + std::to_string(m), h_functional(s, MeasureOnSphere::spectral(FrequencySet::enumerate(m))));
  CounterStream rng(0x5eed5eedULL);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = rng.normal_pair(2 * i);
    auto [c, d] = rng.normal_pair(2 * i + 1);
    (void)d;
    record("orbit_" + std::to_string(i), h_functional(s, MeasureOnSphere::orbit(Vec3(a, b, c))));
  }
  rep.is_static = rep.max_deviation <= tol;
  return rep;
}

std::complex<double> oscillatory_integral(const Surface& s, const Vec3& v) {
  double re = 0.0, im = 0.0;
  for (const auto& node : s.nodes()) {
    double phase = 2.0 * kPi * v.dot(node.position);
    re += node.weight * std::cos(phase);
    im += node.weight * std::sin(phase);
  }
  return {re, im};
}

std::complex<double> oscillatory_integral(const Surface& s, const LatticePoint& v) {
  return oscillatory_integral(s, v.vec());
}

}  // namespace arw
