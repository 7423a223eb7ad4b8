#include "arw/wave.hpp"

#include "arw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace arw {

Wave::Wave(FrequencyPtr E, std::vector<std::complex<double>> coefficients, std::uint64_t seed)
    : E_(std::move(E)), a_(std::move(coefficients)), seed_(seed) {
  if (!E_ || E_->empty()) throw InvalidArgument("empty frequency set");
  if (a_.size() != E_->half().size()) throw InvalidArgument("one coefficient per point of E+ is required");
}

Wave Wave::sample(FrequencyPtr E, std::uint64_t seed) {
  if (!E || E->empty()) throw InvalidArgument("empty frequency set");
  CounterStream stream(seed);
  std::vector<std::complex<double>> a(E->half().size());
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [g1, g2] = stream.normal_pair(i);
    a[i] = {s * g1, s * g2};
  }
  return Wave(std::move(E), std::move(a), seed);
}

Wave Wave::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open coefficient file " + path.string());
  std::vector<std::pair<LatticePoint, std::complex<double>>> rows;
  std::string line;
  long m = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    LatticePoint p;
    double re, im;
    if (!(ss >> p.x >> p.y >> p.z >> re >> im)) throw InvalidArgument("malformed coefficient line: " + line);
    if (m < 0) m = p.norm2();
    if (p.norm2() != m || m == 0) throw InvalidArgument("coefficient file mixes norms");
    rows.push_back({p, {re, im}});
  }
  if (rows.empty()) throw InvalidArgument("coefficient file is empty");
  auto E = std::make_shared<const FrequencySet>(FrequencySet::enumerate(m));
  std::vector<std::complex<double>> a(E->half().size(), 0.0);
  const auto& half = E->half();
  for (const auto& [p, c] : rows) {
    bool positive = in_half(p);
    LatticePoint key = positive ? p : -p;
    auto it = std::lower_bound(half.begin(), half.end(), key);
    a[it - half.begin()] = positive ? c : std::conj(c);
  }
  return Wave(E, std::move(a), 0);
}

void Wave::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  out.precision(17);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const auto& p = E_->half()[i];
    out << p.x << ' ' << p.y << ' ' << p.z << ' ' << a_[i].real() << ' ' << a_[i].imag() << '\n';
  }
}

double Wave::value(const Vec3& x) const {
  const auto& half = E_->half();
  double total = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) {
    double phase = 2.0 * kPi * half[i].vec().dot(x);
    total += a_[i].real() * std::cos(phase) - a_[i].imag() * std::sin(phase);
  }
  return 2.0 / std::sqrt(double(E_->size())) * total;
}

Vec3 Wave::gradient(const Vec3& x) const {
  const auto& half = E_->half();
  Vec3 g = Vec3::Zero();
  for (std::size_t i = 0; i < half.size(); ++i) {
    Vec3 mu = half[i].vec();
    double phase = 2.0 * kPi * mu.dot(x);
    g -= (a_[i].real() * std::sin(phase) + a_[i].imag() * std::cos(phase)) * mu;
  }
  return 4.0 * kPi / std::sqrt(double(E_->size())) * g;
}

Vec3 Wave::surface_gradient(const Vec3& x, const Vec3& n) const {
  Vec3 g = gradient(x);
  return g - g.dot(n) * n;
}

std::vector<double> Wave::evaluate(const std::vector<Vec3>& points) const {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = value(points[i]);
  return out;
}

Wave permuted(const Wave& F, const Mat3& P) {
  const auto& E = F.frequencies();
  const auto& half = E.half();
  std::vector<std::complex<double>> a(half.size());
  for (std::size_t i = 0; i < half.size(); ++i) {
    Vec3 img = P * half[i].vec();
    LatticePoint q{int(std::lround(img.x())), int(std::lround(img.y())), int(std::lround(img.z()))};
    bool positive = in_half(q);
    LatticePoint key = positive ? q : -q;
    auto it = std::lower_bound(half.begin(), half.end(), key);
    if (it == half.end() || *it != key) throw InvalidArgument("P is not a symmetry of the frequency set");
    a[it - half.begin()] = positive ? F.coefficients()[i] : std::conj(F.coefficients()[i]);
  }
  return Wave(F.frequency_ptr(), std::move(a), F.seed());
}

double covariance(const FrequencySet& E, const Vec3& x) {
  double total = 0.0;
  for (const auto& p : E.half()) total += std::cos(2.0 * kPi * p.vec().dot(x));
  return 2.0 * total / double(E.size());
}

Vec3 covariance_gradient(const FrequencySet& E, const Vec3& x) {
  Vec3 g = Vec3::Zero();
  for (const auto& p : E.half()) {
    Vec3 mu = p.vec();
    g -= std::sin(2.0 * kPi * mu.dot(x)) * mu;
  }
  return 4.0 * kPi / double(E.size()) * g;
}

Mat3 covariance_hessian(const FrequencySet& E, const Vec3& x) {
  Mat3 h = Mat3::Zero();
  for (const auto& p : E.half()) {
    Vec3 mu = p.vec();
    h -= std::cos(2.0 * kPi * mu.dot(x)) * mu * mu.transpose();
  }
  return 8.0 * kPi * kPi / double(E.size()) * h;
}

Eigen::MatrixXd trig_basis(const FrequencySet& E, const std::vector<Vec3>& points) {
  const auto& half = E.half();
  const int K = int(half.size());
  const int R = int(std::floor(std::sqrt(double(E.m())) + 1e-9));
  Eigen::MatrixXd B(points.size(), 2 * K);
  std::vector<std::complex<double>> pw(3 * (R + 1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      // Direct evaluation per power keeps the error at machine precision.
      for (int j = 0; j <= R; ++j) pw[c * (R + 1) + j] = std::polar(1.0, 2.0 * kPi * j * points[i][c]);
    }
    auto e = [&](int c, int j) { return j >= 0 ? pw[c * (R + 1) + j] : std::conj(pw[c * (R + 1) - j]); };
    for (int k = 0; k < K; ++k) {
      const auto& mu = half[k];
      std::complex<double> z = e(0, mu.x) * e(1, mu.y) * e(2, mu.z);
      B(i, k) = z.real();
      B(i, K + k) = z.imag();
    }
  }
  return B;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<Wave>& waves) {
  if (waves.empty()) return {};
  const int K = int(waves[0].coefficients().size());
  const double s = 2.0 / std::sqrt(double(waves[0].frequencies().size()));
  Eigen::MatrixXd C(2 * K, waves.size());
  for (std::size_t j = 0; j < waves.size(); ++j) {
    const auto& a = waves[j].coefficients();
    if (int(a.size()) != K) throw InvalidArgument("waves with different frequency sets");
    for (int k = 0; k < K; ++k) {
      C(k, j) = s * a[k].real();
      C(K + k, j) = -s * a[k].imag();
    }
  }
  return C;
}

}  // namespace arw
