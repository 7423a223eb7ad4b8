#include "arw/marching.hpp"

#include <array>
#include <cmath>

namespace arw {

double ChartGrid::u(int i) const { return -Chart::kHalfWidth + 2.0 * Chart::kHalfWidth * double(i) / double(res); }

ChartGrid make_chart_grid(const Chart& chart, int res) {
  ChartGrid g;
  g.chart = &chart;
  g.res = res;
  int n = res + 1;
  g.positions.resize(std::size_t(n) * n);
  g.inclusion.resize(std::size_t(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Vec3 d = chart.direction(g.u(i), g.u(j));
      g.positions[j * n + i] = chart.position(g.u(i), g.u(j));
      g.inclusion[j * n + i] = chart.inclusion(d);
    }
  }
  return g;
}

namespace {

struct UV {
  double u, v;
};

// Chord between two parameter points, clipped against the cap.
double clipped_chord(const Chart& chart, bool clipped, UV a, UV b) {
  if (clipped) {
    double ga = chart.inclusion(a.u, a.v);
    double gb = chart.inclusion(b.u, b.v);
    if (ga < 0 && gb < 0) return 0.0;
    if (ga < 0 || gb < 0) {
      double t = ga / (ga - gb);
      UV c{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)};
      if (ga < 0) a = c;
      else b = c;
    }
  }
  return (chart.position(a.u, a.v) - chart.position(b.u, b.v)).norm();
}

}  // namespace

double marching_squares_length(const ChartGrid& grid, const double* f) {
  const Chart& chart = *grid.chart;
  if (chart.empty()) return 0.0;
  const bool clipped = chart.clipped();
  const int n = grid.res + 1;
  const double h = 2.0 * Chart::kHalfWidth / double(grid.res);
  double total = 0.0;
  for (int j = 0; j < grid.res; ++j) {
    for (int i = 0; i < grid.res; ++i) {
      const int k00 = j * n + i, k10 = k00 + 1, k01 = k00 + n, k11 = k01 + 1;
      if (clipped && grid.inclusion[k00] < 0 && grid.inclusion[k10] < 0 && grid.inclusion[k01] < 0 &&
          grid.inclusion[k11] < 0) {
        // all corners outside, but the cap edge may still pass through the cell
        double uc = grid.u(i) + 0.5 * h, vc = grid.u(j) + 0.5 * h;
        if (chart.inclusion(uc, vc) < 0) continue;
      }
      const double a = f[k00], b = f[k10], c = f[k11], d = f[k01];
      const int code = (a >= 0) | ((b >= 0) << 1) | ((c >= 0) << 2) | ((d >= 0) << 3);
      if (code == 0 || code == 15) continue;
      const double u0 = grid.u(i), v0 = grid.u(j);
      // edges: 0 bottom (a-b), 1 right (b-c), 2 top (d-c), 3 left (a-d)
      auto point = [&](int e) -> UV {
        switch (e) {
          case 0: return {u0 + h * a / (a - b), v0};
          case 1: return {u0 + h, v0 + h * b / (b - c)};
          case 2: return {u0 + h * d / (d - c), v0 + h};
          default: return {u0, v0 + h * a / (a - d)};
        }
      };
      auto seg = [&](int e1, int e2) { total += clipped_chord(chart, clipped, point(e1), point(e2)); };
      switch (code) {
        case 1: case 14: seg(0, 3); break;
        case 2: case 13: seg(0, 1); break;
        case 3: case 12: seg(1, 3); break;
        case 4: case 11: seg(1, 2); break;
        case 6: case 9: seg(0, 2); break;
        case 7: case 8: seg(2, 3); break;
        case 5: case 10: {
          // saddle: a and c share a sign
          double saddle = (a * c - b * d) / (a + c - b - d);
          bool joined = (saddle >= 0) == (a >= 0);
          if (joined) {
            seg(0, 1);
            seg(2, 3);
          } else {
            seg(0, 3);
            seg(1, 2);
          }
          break;
        }
        default: break;
      }
    }
  }
  return total;
}

namespace {

double triangle_area(const Vec3& p, const Vec3& q, const Vec3& r) { return 0.5 * (q - p).cross(r - p).norm(); }

// Zero-set area inside one tetrahedron.
double tet_area(const std::array<Vec3, 4>& x, const std::array<double, 4>& f) {
  int pos[4], neg[4], np = 0, nn = 0;
  for (int i = 0; i < 4; ++i) {
    if (f[i] >= 0) pos[np++] = i;
    else neg[nn++] = i;
  }
  if (np == 0 || nn == 0) return 0.0;
  auto cut = [&](int i, int j) {
    double t = f[i] / (f[i] - f[j]);
    return Vec3(x[i] + t * (x[j] - x[i]));
  };
  if (np == 1 || nn == 1) {
    int lone = np == 1 ? pos[0] : neg[0];
    const int* others = np == 1 ? neg : pos;
    return triangle_area(cut(lone, others[0]), cut(lone, others[1]), cut(lone, others[2]));
  }
  Vec3 p0 = cut(pos[0], neg[0]), p1 = cut(pos[0], neg[1]), p2 = cut(pos[1], neg[1]), p3 = cut(pos[1], neg[0]);
  return triangle_area(p0, p1, p2) + triangle_area(p0, p2, p3);
}

}  // namespace

double marching_tetrahedra_area(const std::vector<double>& values, int n) {
  if (n < 2 || values.size() != std::size_t(n) * n * n) throw InvalidArgument("grid size mismatch");
  const double h = 1.0 / double(n);
  // corner c has offset (c & 1, c >> 1 & 1, c >> 2 & 1)
  static const int tets[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};
  std::array<Vec3, 8> corner;
  for (int c = 0; c < 8; ++c) corner[c] = h * Vec3(c & 1, (c >> 1) & 1, (c >> 2) & 1);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      double layer = 0.0;
      for (int i = 0; i < n; ++i) {
        std::array<double, 8> f;
        bool any_pos = false, any_neg = false;
        for (int c = 0; c < 8; ++c) {
          int ii = (i + (c & 1)) % n, jj = (j + ((c >> 1) & 1)) % n, kk = (k + ((c >> 2) & 1)) % n;
          f[c] = values[(std::size_t(kk) * n + jj) * n + ii];
          (f[c] >= 0 ? any_pos : any_neg) = true;
        }
        if (!any_pos || !any_neg) continue;
        for (const auto& t : tets) {
          layer += tet_area({corner[t[0]], corner[t[1]], corner[t[2]], corner[t[3]]}, {f[t[0]], f[t[1]], f[t[2]], f[t[3]]});
        }
      }
      total += layer;
    }
  }
  return total;
}

}  // namespace arw
