#include "arw/limit.hpp"

#include "arw/rng.hpp"

#include <cmath>

namespace arw {

const std::array<std::pair<int, int>, 15>& LimitCoefficients::cross_pairs() {
  static const std::array<std::pair<int, int>, 15> pairs = [] {
    std::array<std::pair<int, int>, 15> p{};
    int k = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) p[k++] = {a, b};
    return p;
  }();
  return pairs;
}

double LimitCoefficients::sum_diag() const {
  double s = 0.0;
  for (double c : c_diag) s += c;
  return s;
}

double LimitCoefficients::form(const Vec6& x) const {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += c_diag[i] * (x[i] * x[i] - 1.0);
  const auto& pairs = cross_pairs();
  for (int k = 0; k < 15; ++k) s += c_cross[k] * x[pairs[k].first] * x[pairs[k].second];
  return s;
}

double LimitCoefficients::normalized(const Vec6& x) const { return form(x) / std::sqrt(variance_closed); }

LimitCoefficients limit_coefficients(const Surface& s, double static_tol) {
  LimitCoefficients c;
  auto in = [&](auto&& f) {
    double t = 0.0;
    for (const auto& node : s.nodes()) t += node.weight * f(node.normal[0], node.normal[1], node.normal[2]);
    return t;
  };
  const double r3 = std::sqrt(3.0), r5 = std::sqrt(5.0), r15 = std::sqrt(15.0);
  c.c_diag = {
      0.0,
      -0.2 * in([](double a, double b, double e) { return 3 * std::pow(a * a - e * e, 2) + 4 * b * b; }),
      -in([](double, double b, double) { return 11.0 / 15 - 2 * b * b + 1.8 * b * b * b * b; }),
      -0.8 * in([](double a, double b, double e) { return a * a + 3 * b * b * e * e; }),
      -0.8 * in([](double a, double b, double e) { return b * b + 3 * a * a * e * e; }),
      -0.8 * in([](double a, double b, double e) { return e * e + 3 * a * a * b * b; }),
  };
  c.c_cross = {
      -16 * r15 / 15 * in([](double a, double, double e) { return a * a - e * e; }),
      -16 * r5 / 15 * in([](double, double b, double) { return 1 - 3 * b * b; }),
      32 * r15 / 15 * in([](double, double b, double e) { return b * e; }),
      32 * r15 / 5 * in([](double a, double, double e) { return a * e; }),
      32 * r15 / 5 * in([](double a, double b, double) { return a * b; }),
      2 * r3 / 15 * in([](double a, double b, double e) { return (a * a - e * e) * (1 + 9 * b * b); }),
      0.8 * in([](double a, double b, double e) { return b * e * (2 + 3 * (a * a - e * e)); }),
      2.4 * in([](double a, double, double e) { return a * e * (a * a - e * e); }),
      0.8 * in([](double a, double b, double e) { return a * b * (-2 + 3 * (a * a - e * e)); }),
      4 * r3 / 15 * in([](double, double b, double e) { return b * e * (5 - 9 * b * b); }),
      4 * r3 / 15 * in([](double a, double b, double e) { return a * e * (-1 - 9 * b * b); }),
      4 * r3 / 15 * in([](double a, double b, double) { return a * b * (5 - 9 * b * b); }),
      1.6 * in([](double a, double b, double e) { return a * b * (1 - 3 * e * e); }),
      1.6 * in([](double a, double b, double e) { return a * e * (1 - 3 * b * b); }),
      1.6 * in([](double a, double b, double e) { return b * e * (1 - 3 * a * a); }),
  };
  for (double x : c.c_diag) c.variance_coefficients += 2 * x * x;
  for (double x : c.c_cross) c.variance_coefficients += x * x;
  c.area = area(s);
  c.i4 = interaction_integral(s, 4);
  c.variance_closed = 8.0 / 225.0 * (81.0 * c.i4 + 35.0 * c.area * c.area);
  c.static_surface = is_static(s, static_tol).is_static;
  if (!c.static_surface) c.tag = "outside theorem hypotheses";
  return c;
}

double limit_form_from_w(const Surface& s, const Vec6& x) {
  Vec6 zv = o_matrix() * delta_matrix() * x;
  Mat3 Z;
  Z << zv[0], zv[1], zv[2], zv[1], zv[3], zv[4], zv[2], zv[4], zv[5];
  const double A = area(s);
  const Mat3 T2 = s.normal_tensor2();
  const Tensor4 t4 = normal_tensor4(s);
  double q4 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) q4 += t4[((i * 3 + j) * 3 + k) * 3 + l] * Z(i, j) * Z(k, l);
  double tr = Z.trace();
  return -3 * A * tr * tr - 9 * q4 + 14 * tr * (Z * T2).trace() - 6 * A * Z.squaredNorm() +
         12 * (Z * T2 * Z).trace() + 32.0 / 15.0 * A;
}

std::vector<double> sample_limit(const LimitCoefficients& c, long count, std::uint64_t seed) {
  if (count < 0) throw InvalidArgument("count must be non-negative");
  CounterStream stream(seed);
  std::vector<double> out(count);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    Vec6 x;
    for (int k = 0; k < 3; ++k) {
      auto [g1, g2] = stream.normal_pair(3 * std::uint64_t(i) + k);
      x[2 * k] = g1;
      x[2 * k + 1] = g2;
    }
    out[i] = c.normalized(x);
  }
  return out;
}

std::vector<double> sample_limit(const Surface& s, long count, std::uint64_t seed) {
  return sample_limit(limit_coefficients(s), count, seed);
}

}  // namespace arw
