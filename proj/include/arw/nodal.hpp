#pragma once

#include "arw/surface.hpp"
#include "arw/wave.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arw {

// 8 ceil(sqrt m) cells per edge, times the multiplier.
int minimum_resolution(long m, double multiplier = 1.0);

// Length of F^-1(0) on the surface by marching squares on every chart.
double nodal_curve_length(const Wave& F, const Surface& s, int resolution);
// Area of F^-1(0) in the unit cell by marching tetrahedra.
double nodal_area(const Wave& F, int resolution);
// F on the periodic n^3 grid, index (k * n + j) * n + i.
std::vector<double> periodic_grid_values(const Wave& F, int n);

struct SimulationOptions {
  long samples = 100;
  int resolution = 0;       // cells per chart edge; 0 means the minimum rule
  int area_resolution = 0;  // cells per torus edge; 0 means the minimum rule, no multiplier
  double multiplier = 2.0;  // on the length grid only
  std::uint64_t seed = 1;
  bool with_area = false;
  int batch = 32;           // samples per GEMM batch; fixed so results do not depend on threads
};

struct SimulationStats {
  long m = 0;
  long n = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  int resolution = 0;
  int area_resolution = 0;
  std::string surface;
  double area = 0.0;
  std::vector<double> lengths;
  std::optional<std::vector<double>> areas;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> standardized;

  double predicted_mean() const;
  double standard_error() const;
};

// Wave i uses seed derive_seed(seed, i).
SimulationStats monte_carlo(const FrequencyPtr& E, const Surface& s, const SimulationOptions& opts);

// Exact expectation pi sqrt(m/3) A.
double expected_length(long m, double area);

}  // namespace arw
