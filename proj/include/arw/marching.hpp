#pragma once

#include "arw/surface.hpp"

#include <vector>

namespace arw {

// Values on a (res+1) x (res+1) grid over a chart, row-major in v then u:
// values[j * (res + 1) + i] at (u_i, v_j), u_i = -pi/4 + i * pi / (2 res).
struct ChartGrid {
  const Chart* chart = nullptr;
  int res = 0;
  std::vector<Vec3> positions;   // grid node positions
  std::vector<double> inclusion; // cap inclusion value per node
  double u(int i) const;
};

ChartGrid make_chart_grid(const Chart& chart, int res);

// Sum of chord lengths of the zero set of the grid function, clipped to
// the retained part of the chart. Saddles use the asymptotic decider.
double marching_squares_length(const ChartGrid& grid, const double* values);

// Area of the zero set of a periodic n^3 grid function (index (i,j,k) at
// values[(k * n + j) * n + i], spacing 1/n), by marching tetrahedra on the
// six-tetrahedron split of each cell.
double marching_tetrahedra_area(const std::vector<double>& values, int n);

}  // namespace arw
