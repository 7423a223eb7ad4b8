#include "arw/nodal.hpp"

#include "arw/marching.hpp"

#include <cmath>
#include <complex>

namespace arw {

int minimum_resolution(long m, double multiplier) {
  if (m < 1) throw InvalidArgument("m must be positive");
  long root = long(std::ceil(std::sqrt(double(m)) - 1e-12));
  return int(std::ceil(8.0 * double(root) * multiplier));
}

double expected_length(long m, double area) { return kPi * std::sqrt(double(m) / 3.0) * area; }

double nodal_curve_length(const Wave& F, const Surface& s, int resolution) {
  if (resolution < minimum_resolution(F.frequencies().m())) throw InvalidArgument("under-resolved");
  Eigen::MatrixXd C = coefficient_matrix({F});
  double total = 0.0;
  for (const auto& chart : s.charts()) {
    if (chart.empty()) continue;
    ChartGrid grid = make_chart_grid(chart, resolution);
    Eigen::VectorXd values = trig_basis(F.frequencies(), grid.positions) * C.col(0);
    total += marching_squares_length(grid, values.data());
  }
  return total;
}

std::vector<double> periodic_grid_values(const Wave& F, int n) {
  const auto& E = F.frequencies();
  const auto& half = E.half();
  const auto& a = F.coefficients();
  const int R = int(std::floor(std::sqrt(double(E.m())) + 1e-9));
  // e[j + R][i] = exp(2 pi i j x_i) on the grid x_i = i / n
  std::vector<std::vector<std::complex<double>>> e(2 * R + 1, std::vector<std::complex<double>>(n));
  for (int j = -R; j <= R; ++j)
    for (int i = 0; i < n; ++i) e[j + R][i] = std::polar(1.0, 2.0 * kPi * double((long(j) * i) % n) / double(n));
  const double scale = 2.0 / std::sqrt(double(E.size()));
  std::vector<double> out(std::size_t(n) * n * n, 0.0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    std::vector<std::complex<double>> row(n);
    for (std::size_t q = 0; q < half.size(); ++q) {
      const auto& mu = half[q];
      std::complex<double> az = scale * a[q] * e[mu.z + R][k];
      for (int j = 0; j < n; ++j) {
        std::complex<double> ayz = az * e[mu.y + R][j];
        double* dst = &out[(std::size_t(k) * n + j) * n];
        const auto& ex = e[mu.x + R];
        for (int i = 0; i < n; ++i) dst[i] += (ayz * ex[i]).real();
      }
    }
  }
  return out;
}

double nodal_area(const Wave& F, int resolution) {
  if (resolution < minimum_resolution(F.frequencies().m())) throw InvalidArgument("under-resolved");
  return marching_tetrahedra_area(periodic_grid_values(F, resolution), resolution);
}

}  // namespace arw
