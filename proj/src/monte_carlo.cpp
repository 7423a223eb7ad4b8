#include "arw/marching.hpp"
#include "arw/nodal.hpp"
#include "arw/rng.hpp"
#include "arw/stats.hpp"

#include <cmath>

namespace arw {

double SimulationStats::predicted_mean() const { return expected_length(m, area); }

double SimulationStats::standard_error() const {
  return samples > 0 ? std::sqrt(variance / double(samples)) : 0.0;
}

SimulationStats monte_carlo(const FrequencyPtr& E, const Surface& s, const SimulationOptions& opts) {
  if (!E || E->empty()) throw InvalidArgument("empty frequency set");
  if (opts.samples < 2) throw InvalidArgument("samples must be at least 2");
  if (opts.batch < 1) throw InvalidArgument("batch must be positive");
  SimulationStats st;
  st.m = E->m();
  st.n = long(E->size());
  st.samples = opts.samples;
  st.seed = opts.seed;
  st.surface = s.label();
  st.area = area(s);
  const int rule = minimum_resolution(st.m, opts.multiplier);
  st.resolution = opts.resolution > 0 ? opts.resolution : rule;
  if (st.resolution < minimum_resolution(st.m)) throw InvalidArgument("under-resolved");

  const long S = opts.samples;
  std::vector<Wave> waves;
  waves.reserve(S);
  for (long i = 0; i < S; ++i) waves.push_back(Wave::sample(E, derive_seed(opts.seed, std::uint64_t(i))));

  st.lengths.assign(S, 0.0);
  const long nbatch = (S + opts.batch - 1) / opts.batch;
  // chart-outer so each sample sums its charts in a fixed order
  for (const auto& chart : s.charts()) {
    if (chart.empty()) continue;
    ChartGrid grid = make_chart_grid(chart, st.resolution);
    Eigen::MatrixXd B = trig_basis(*E, grid.positions);
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = 0; b < nbatch; ++b) {
      long lo = b * opts.batch, hi = std::min(S, lo + opts.batch);
      std::vector<Wave> chunk(waves.begin() + lo, waves.begin() + hi);
      Eigen::MatrixXd V = B * coefficient_matrix(chunk);
      for (long c = 0; c < hi - lo; ++c) st.lengths[lo + c] += marching_squares_length(grid, V.col(c).data());
    }
  }

  if (opts.with_area) {
    st.area_resolution = opts.area_resolution > 0 ? opts.area_resolution : minimum_resolution(st.m);
    if (st.area_resolution < minimum_resolution(st.m)) throw InvalidArgument("under-resolved");
    std::vector<double> areas(S, 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < S; ++i) areas[i] = nodal_area(waves[i], st.area_resolution);
    st.areas = std::move(areas);
  }

  Moments mo = describe(st.lengths);
  st.mean = mo.mean;
  st.variance = mo.variance;
  double sd = std::sqrt(st.variance);
  st.standardized.resize(S);
  for (long i = 0; i < S; ++i) st.standardized[i] = sd > 0 ? (st.lengths[i] - st.mean) / sd : 0.0;
  return st;
}

}  // namespace arw
