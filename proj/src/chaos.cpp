#include "arw/chaos.hpp"

#include "arw/stats.hpp"

#include <cmath>
#include <complex>

namespace arw {

double hermite(int q, double t) {
  if (q < 0) throw InvalidArgument("hermite order must be non-negative");
  double h0 = 1.0, h1 = t;
  if (q == 0) return h0;
  for (int k = 1; k < q; ++k) {
    double h2 = t * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long binomial(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double beta2k(int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  return hermite(2 * k, 0.0) / std::sqrt(2.0 * kPi);
}

double p_poly(int i, double t) {
  if (i < 0) throw InvalidArgument("i must be non-negative");
  // integer coefficients (2j+1)!/(j!)^2 are exact in double up to i ~ 15
  double s = 0.0;
  for (int j = 0; j <= i; ++j) {
    double c = double(binomial(i, j)) * factorial(2 * j + 1) / (factorial(j) * factorial(j));
    s += ((i + j) % 2 ? -1.0 : 1.0) * c * std::pow(t, j);
  }
  return s;
}

double alpha(int n, int l) {
  if (n < 0 || l < 0) throw InvalidArgument("n, l must be non-negative");
  return std::sqrt(kPi / 2.0) * factorial(2 * n) * factorial(2 * l) / (factorial(n) * factorial(l)) /
         std::ldexp(1.0, n + l) * p_poly(n + l, 0.25);
}

Eigen::Vector2d z_from_gradient(const Vec3& grad, const Vec3& n, double M) {
  if (std::abs(n.norm() - 1.0) > 1e-9) throw InvalidArgument("normal must be a unit vector");
  return tangent_frame(n).transpose() * grad / std::sqrt(M);
}

Eigen::Vector2d z_vector(const Wave& F, const Vec3& sigma, const Vec3& n) {
  return z_from_gradient(F.gradient(sigma), n, F.spectral_scale());
}

namespace {

// Weights w[q][(k, n, l)] of the Hermite products in L[2q].
struct Term {
  int k, n, l;
  double c;
};

std::vector<Term> chaos_terms(int q) {
  std::vector<Term> out;
  for (int k = 0; k <= q; ++k)
    for (int n = 0; n + k <= q; ++n) {
      int l = q - k - n;
      out.push_back({k, n, l, beta2k(k) * alpha(n, l) / (factorial(2 * k) * factorial(2 * n) * factorial(2 * l))});
    }
  return out;
}

double projection_integrand(const std::vector<Term>& terms, double f, const Eigen::Vector2d& z) {
  double s = 0.0;
  for (const auto& t : terms) s += t.c * hermite(2 * t.k, f) * hermite(2 * t.n, z[0]) * hermite(2 * t.l, z[1]);
  return s;
}

}  // namespace

double chaos_projection(const Wave& F, const Surface& s, int q) {
  if (q < 0 || q > 2) throw InvalidArgument("chaos_projection supports q in {0, 1, 2}");
  const double M = F.spectral_scale();
  auto terms = chaos_terms(q);
  double total = 0.0;
  for (const auto& node : s.nodes()) {
    double f = F.value(node.position);
    auto z = z_from_gradient(F.gradient(node.position), node.normal, M);
    total += node.weight * projection_integrand(terms, f, z);
  }
  return std::sqrt(M) * total;
}

ChaosProjections chaos_projections(const Wave& F, const Surface& s) {
  return chaos_projections_batch({F}, s).front();
}

std::vector<ChaosProjections> chaos_projections_batch(const std::vector<Wave>& waves, const Surface& s) {
  std::vector<ChaosProjections> out(waves.size());
  if (waves.empty()) return out;
  const FrequencySet& E = waves[0].frequencies();
  const double M = E.spectral_scale();
  const auto& nodes = s.nodes();
  const int K = int(E.half().size());
  const int Q = int(nodes.size());
  std::vector<Vec3> pts(Q);
  for (int i = 0; i < Q; ++i) pts[i] = nodes[i].position;
  Eigen::MatrixXd B = trig_basis(E, pts);
  // [sin | cos] for the gradient
  Eigen::MatrixXd Bs(Q, 2 * K);
  Bs << B.rightCols(K), B.leftCols(K);
  std::vector<Eigen::Matrix<double, 3, 2>> frames(Q);
  for (int i = 0; i < Q; ++i) frames[i] = tangent_frame(nodes[i].normal);
  const auto t1 = chaos_terms(1), t2 = chaos_terms(2);
  const double a = area(s);

  const int batch = 32;
  const long nb = (long(waves.size()) + batch - 1) / batch;
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < nb; ++b) {
    std::size_t lo = std::size_t(b) * batch, hi = std::min(waves.size(), lo + batch);
    std::vector<Wave> chunk(waves.begin() + lo, waves.begin() + hi);
    Eigen::MatrixXd C = coefficient_matrix(chunk);
    Eigen::MatrixXd V = B * C;
    std::array<Eigen::MatrixXd, 3> G;
    for (int c = 0; c < 3; ++c) {
      Eigen::MatrixXd Cc = C;
      for (int k = 0; k < K; ++k) {
        double mu = 2.0 * kPi * E.half()[k][c];
        Cc.row(k) *= -mu;
        Cc.row(K + k) *= mu;
      }
      G[c] = Bs * Cc;
    }
    for (std::size_t j = 0; j < hi - lo; ++j) {
      double s2 = 0.0, s4 = 0.0;
      for (int i = 0; i < Q; ++i) {
        Vec3 g(G[0](i, j), G[1](i, j), G[2](i, j));
        Eigen::Vector2d z = frames[i].transpose() * g / std::sqrt(M);
        double f = V(i, j);
        s2 += nodes[i].weight * projection_integrand(t1, f, z);
        s4 += nodes[i].weight * projection_integrand(t2, f, z);
      }
      out[lo + j] = {std::sqrt(M) * beta2k(0) * alpha(0, 0) * a, std::sqrt(M) * s2, std::sqrt(M) * s4};
    }
  }
  return out;
}

double l2_diagonal(const Wave& F, const Surface& s) {
  const auto& E = F.frequencies();
  const double N = double(E.size());
  const double A = area(s);
  const Mat3 T2 = s.normal_tensor2();
  double total = 0.0;
  for (std::size_t i = 0; i < E.half().size(); ++i) {
    Vec3 u = E.half()[i].vec().normalized();
    total += (std::norm(F.coefficients()[i]) - 1.0) * (A - 3.0 * u.dot(T2 * u));
  }
  return std::sqrt(F.spectral_scale()) / (8.0 * (N / 2.0)) * total;
}

double l2_offdiagonal(const Wave& F, const Surface& s) {
  const auto& E = F.frequencies();
  const auto& pts = E.points();
  const std::size_t N = pts.size();
  // a_mu over all of E, using a_{-mu} = conj(a_mu)
  std::vector<std::complex<double>> a(N);
  for (std::size_t i = 0; i < N; ++i) {
    bool pos = in_half(pts[i]);
    LatticePoint key = pos ? pts[i] : -pts[i];
    auto it = std::lower_bound(E.half().begin(), E.half().end(), key);
    auto c = F.coefficients()[it - E.half().begin()];
    a[i] = pos ? c : std::conj(c);
  }
  std::vector<Vec3> u(N);
  for (std::size_t i = 0; i < N; ++i) u[i] = pts[i].vec().normalized();
  std::complex<double> total = 0.0;
  for (const auto& node : s.nodes()) {
    std::vector<std::complex<double>> e(N);
    std::vector<double> un(N);
    for (std::size_t i = 0; i < N; ++i) {
      e[i] = std::polar(1.0, 2.0 * kPi * pts[i].vec().dot(node.position));
      un[i] = u[i].dot(node.normal);
    }
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (i == j) continue;
        acc += a[i] * std::conj(a[j]) * e[i] * std::conj(e[j]) * (-2.0 + 3.0 * u[i].dot(u[j]) - 3.0 * un[i] * un[j]);
      }
    total += node.weight * acc;
  }
  return std::sqrt(F.spectral_scale()) / (8.0 * double(N)) * total.real();
}

Tensor4 normal_tensor4(const Surface& s) {
  Tensor4 t{};
  for (const auto& node : s.nodes()) {
    const Vec3& n = node.normal;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) t[((i * 3 + j) * 3 + k) * 3 + l] += node.weight * n[i] * n[j] * n[k] * n[l];
  }
  return t;
}

namespace {

// int (x^T n)^2 (y^T n)^2 from the tensor
double quartic(const Tensor4& t, const Vec3& x, const Vec3& y) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += t[((i * 3 + j) * 3 + k) * 3 + l] * x[i] * x[j] * y[k] * y[l];
  return s;
}

double quartic_form(const Tensor4& t, const Mat3& W) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += t[((i * 3 + j) * 3 + k) * 3 + l] * W(i, j) * W(k, l);
  return s;
}

// -(3/(128 N^2)) sqrt M sum_E |a|^4 int (-9 - 9 <u,n>^4 + 26 <u,n>^2)
double l4_quartic_part(const Wave& F, const Surface& s, const Tensor4& t4) {
  const auto& E = F.frequencies();
  const double N = double(E.size());
  const double A = area(s);
  const Mat3 T2 = s.normal_tensor2();
  double total = 0.0;
  for (std::size_t i = 0; i < E.half().size(); ++i) {
    Vec3 u = E.half()[i].vec().normalized();
    double a4 = std::pow(std::norm(F.coefficients()[i]), 2);
    // mu and -mu give the same term
    total += 2.0 * a4 * (-9.0 * A - 9.0 * quartic(t4, u, u) + 26.0 * u.dot(T2 * u));
  }
  return -std::sqrt(F.spectral_scale()) * 3.0 / (128.0 * N * N) * total;
}

}  // namespace

double l4_diagonal(const Wave& F, const Surface& s) {
  const double N = double(F.frequencies().size());
  const double A = area(s);
  const Mat3 T2 = s.normal_tensor2();
  const Tensor4 t4 = normal_tensor4(s);
  const Mat3 W = w_statistics(F).w;
  double tr = W.trace();
  double p = -3.0 * A * tr * tr - 9.0 * quartic_form(t4, W) + 14.0 * tr * (W * T2).trace() -
             6.0 * A * W.squaredNorm() + 12.0 * (W * T2 * W).trace();
  return std::sqrt(F.spectral_scale()) * 6.0 / (128.0 * N) * p + l4_quartic_part(F, s, t4);
}

double l4_diagonal_direct(const Wave& F, const Surface& s) {
  const auto& E = F.frequencies();
  const double N = double(E.size());
  const double A = area(s);
  const Mat3 T2 = s.normal_tensor2();
  const Tensor4 t4 = normal_tensor4(s);
  std::vector<Vec3> u;
  std::vector<double> c;
  for (std::size_t i = 0; i < E.half().size(); ++i) {
    Vec3 v = E.half()[i].vec().normalized();
    double x = std::norm(F.coefficients()[i]) - 1.0;
    u.push_back(v);
    c.push_back(x);
    u.push_back(-v);
    c.push_back(x);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      double d = u[i].dot(u[j]);
      double g = -3.0 * A - 9.0 * quartic(t4, u[i], u[j]) + 14.0 * u[i].dot(T2 * u[i]) - 6.0 * A * d * d +
                 12.0 * d * u[i].dot(T2 * u[j]);
      total += c[i] * c[j] * g;
    }
  return std::sqrt(F.spectral_scale()) * 3.0 / (128.0 * N * N) * total + l4_quartic_part(F, s, t4);
}

Vec6 WStatistics::vector() const {
  Vec6 v;
  v << w(0, 0), w(0, 1), w(0, 2), w(1, 1), w(1, 2), w(2, 2);
  return v;
}

Mat6 sigma_w(const FrequencySet& E) {
  auto mom = spectral_moments(E, 4);
  double m2 = double(E.m()) * double(E.m());
  double a = mom.psi / m2, b = mom.phi / m2;
  Mat6 s = Mat6::Zero();
  const int diag[3] = {0, 3, 5};
  for (int i : diag)
    for (int j : diag) s(i, j) = i == j ? a : b;
  s(1, 1) = s(2, 2) = s(4, 4) = b;
  return s;
}

WStatistics w_statistics(const Wave& F) {
  const auto& E = F.frequencies();
  WStatistics out;
  const double m = double(E.m());
  const double scale = 1.0 / (m * std::sqrt(double(E.size()) / 2.0));
  for (std::size_t i = 0; i < E.half().size(); ++i) {
    Vec3 mu = E.half()[i].vec();
    out.w += (std::norm(F.coefficients()[i]) - 1.0) * mu * mu.transpose();
  }
  out.w *= scale;
  auto mom = spectral_moments(E, 4);
  out.psi = mom.psi;
  out.phi = mom.phi;
  out.sigma_w = sigma_w(E);
  return out;
}

Mat6 sigma_z() {
  Mat6 s = Mat6::Zero();
  const int diag[3] = {0, 3, 5};
  for (int i : diag)
    for (int j : diag) s(i, j) = i == j ? 1.0 / 5 : 1.0 / 15;
  s(1, 1) = s(2, 2) = s(4, 4) = 1.0 / 15;
  return s;
}

Mat6 o_matrix() {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  Mat6 ot;
  ot << 1 / r3, 0, 0, 1 / r3, 0, 1 / r3,
        -1 / r2, 0, 0, 0, 0, 1 / r2,
        -1 / r6, 0, 0, std::sqrt(2.0 / 3.0), 0, -1 / r6,
        0, 0, 0, 0, 1, 0,
        0, 0, 1, 0, 0, 0,
        0, 1, 0, 0, 0, 0;
  return ot.transpose();
}

Mat6 d_matrix() {
  Vec6 d;
  d << 1.0 / 3, 2.0 / 15, 2.0 / 15, 1.0 / 15, 1.0 / 15, 1.0 / 15;
  return d.asDiagonal();
}

Mat6 delta_matrix() {
  Vec6 d;
  d << 1 / std::sqrt(3.0), std::sqrt(2.0 / 15), std::sqrt(2.0 / 15), 1 / std::sqrt(15.0), 1 / std::sqrt(15.0),
      1 / std::sqrt(15.0);
  return d.asDiagonal();
}

Regime parse_regime(const std::string& s) {
  if (s == "generic") return Regime::generic;
  if (s == "h_form" || s == "h-form") return Regime::h_form;
  if (s == "static") return Regime::static_surface;
  throw InvalidArgument("unknown regime: " + s);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::generic: return "generic";
    case Regime::h_form: return "h_form";
    default: return "static";
  }
}

SurfaceFunctionals surface_functionals(const Surface& s) {
  return {area(s), interaction_integral(s, 2), interaction_integral(s, 4)};
}

double predict_variance(const FrequencySet& E, const Surface& s, Regime regime) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  const double m = double(E.m()), N = double(E.size());
  auto f = surface_functionals(s);
  const double A2 = f.area * f.area;
  switch (regime) {
    case Regime::generic: {
      double gap = 3.0 * f.i2 - A2;
      if (gap <= 1e-6 * A2) throw InvalidArgument("static or near-static surface");
      return kPi * kPi / 60.0 * m / N * gap;
    }
    case Regime::h_form:
      return kPi * kPi / 24.0 * m / N * (9.0 * h_functional(s, MeasureOnSphere::spectral(E)) - A2);
    default:
      return kPi * kPi / 9600.0 * m / (N * N) * (81.0 * f.i4 + 35.0 * A2);
  }
}

}  // namespace arw
