// One PASS/FAIL line per acceptance criterion, plus diagnostics.
// Usage: arw_acceptance [--strict]

#include "../common/oracles.hpp"
#include "arw/chaos.hpp"
#include "arw/correlations.hpp"
#include "arw/kacrice.hpp"
#include "arw/limit.hpp"
#include "arw/nodal.hpp"
#include "arw/rng.hpp"
#include "arw/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <string>

using namespace arw;

namespace {

constexpr std::uint64_t kSeed = 2024;

int passed = 0, failed = 0, failed_reported = 0;

void verdict(int id, bool ok, const std::string& detail, bool gated = true) {
  if (ok) ++passed;
  else if (gated) ++failed;
  else ++failed_reported;
  std::printf("criterion %2d %s  %s%s\n", id, ok ? "PASS" : "FAIL", detail.c_str(),
              gated ? "" : "  [reported, not gated]");
  std::fflush(stdout);
}

void note(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void note(const char* fmt, ...) {
  std::printf("    ");
  va_list ap;
  va_start(ap, fmt);
  std::vprintf(fmt, ap);
  va_end(ap);
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FrequencyPtr freq(long m) { return std::make_shared<const FrequencySet>(FrequencySet::enumerate(m)); }

SimulationStats simulate(long m, const Surface& s, long samples, bool with_area = false) {
  SimulationOptions o;
  o.samples = samples;
  o.seed = kSeed;
  o.with_area = with_area;
  return monte_carlo(freq(m), s, o);
}

Surface sphere() { return Surface::builtin(SurfaceSpec::sphere(0.24)); }
Surface cap() { return Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3)); }

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / x.size();
    my += y[i] / y.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// --- criteria ---

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0, slowest = 0;
  for (long m : {2L, 3L, 26L})
    for (const auto& s : {sphere(), cap()}) {
      auto tc = std::chrono::steady_clock::now();
      auto st = simulate(m, s, 500);
      double z = (st.mean - st.predicted_mean()) / st.standard_error();
      slowest = std::max(slowest, seconds_since(tc));
      note("m=%ld %s mean=%.5f exact=%.5f z=%+.2f", m, s.label().c_str(), st.mean, st.predicted_mean(), z);
      ok = ok && std::abs(z) <= 3.0;
      worst = std::max(worst, std::abs(z));
    }
  ok = ok && slowest <= 600;
  verdict(1, ok, fmt("max |z| = %.2f <= 3, slowest cell %.1fs <= 600s (%.0fs)", worst, slowest, seconds_since(t0)));
}

std::vector<long> largest_n_admissible(long bound, int count) {
  std::vector<std::pair<long, long>> v;  // (N, m)
  for (long m = 1; m <= bound; ++m)
    if (admissible(m)) v.push_back({long(FrequencySet::enumerate(m).size()), m});
  // ties in N go to the larger m
  std::sort(v.begin(), v.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second > b.second; });
  std::vector<long> out;
  for (int i = 0; i < count; ++i) out.push_back(v[i].second);
  return out;
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  Surface s = cap();
  bool ok = true;
  std::string detail;
  for (long m : largest_n_admissible(500, 3)) {
    auto E = freq(m);
    auto st = simulate(m, s, 500);
    double pred = predict_variance(*E, s, Regime::generic);
    double ratio = st.variance / pred;
    note("m=%ld N=%zu var=%.5g predicted=%.5g ratio=%.2f (se %.2f)", m, E->size(), st.variance, pred, ratio,
         variance_standard_error(st.lengths) / pred);
    // how much of the variance the diagonal second chaos carries
    std::vector<double> a2;
    for (long i = 0; i < 200; ++i) a2.push_back(l2_diagonal(Wave::sample(E, derive_seed(kSeed, i)), s));
    note("  diagonal second chaos: var=%.5g, ratio to its own prediction %.2f", describe(a2).variance,
         describe(a2).variance / predict_variance(*E, s, Regime::h_form));
    ok = ok && ratio >= 0.7 && ratio <= 1.3;
    detail += fmt("m=%ld ratio %.2f; ", m, ratio);
  }
  verdict(2, ok, detail + fmt("band [0.7, 1.3] (%.0fs)", seconds_since(t0)));
}

struct StaticRun {
  long m = 0;
  double key = 0;
  SimulationStats st;
};

StaticRun best_static_run() {
  auto t0 = std::chrono::steady_clock::now();
  auto scan = scan_well_separated(1, 1000, 0);
  StaticRun r;
  r.m = scan.ranked.front().m;
  r.key = scan.ranked.front().rank_key();
  note("scan [1, 1000]: best m=%ld N=%ld max N^2 S = %.3f, certified=%d, %ld evaluated (%.1fs)", r.m,
       scan.ranked.front().n, r.key, int(scan.best_certified), scan.evaluated, seconds_since(t0));
  r.st = simulate(r.m, sphere(), 500);
  return r;
}

void criterion3(const StaticRun& r) {
  auto E = freq(r.m);
  Surface s = sphere();
  double pred = predict_variance(*E, s, Regime::static_surface);
  double ratio = r.st.variance / pred;
  double A = area(s), N = double(E->size()), m = double(r.m);
  double drop = r.st.variance * N / m;
  double bound = 0.1 * kPi * kPi / 60 * 2 * A * A;
  note("m=%ld var=%.5g predicted=%.5g ratio=%.2f (se %.2f)", r.m, r.st.variance, pred, ratio,
       variance_standard_error(r.st.lengths) / pred);
  note("order drop: var*N/m = %.5g vs bound %.5g", drop, bound);
  bool ok = ratio >= 0.6 && ratio <= 1.6 && drop <= bound;
  verdict(3, ok, fmt("ratio %.2f in [0.6, 1.6]: %s; var*N/m %.4g <= %.4g: %s", ratio,
                     ratio >= 0.6 && ratio <= 1.6 ? "yes" : "no", drop, bound, drop <= bound ? "yes" : "no"));
}

void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  auto xs = sample_limit(sphere(), 100000, kSeed);
  double ks = ks_distance(xs, limit_sphere_cdf);
  verdict(4, ks <= 0.01, fmt("KS = %.4f <= 0.01 (%.1fs)", ks, seconds_since(t0)));
}

void criterion5(const StaticRun& r) {
  double ks = ks_distance(r.st.standardized, limit_sphere_cdf);
  bool gated = r.key <= 0.5;
  verdict(5, ks <= 0.15, fmt("KS = %.3f <= 0.15 at m=%ld (max N^2 S = %.2f)", ks, r.m, r.key), gated);
}

void criterion6() {
  bool ok = true;
  std::string detail;
  for (const auto& s : {sphere(), Surface::builtin(SurfaceSpec::hemisphere(0.24))}) {
    auto c = limit_coefficients(s);
    double closed = 8.0 / 225 * (81 * c.i4 + 35 * c.area * c.area);
    double rel = std::abs(c.variance_coefficients - closed) / closed;
    ok = ok && rel <= 1e-6;
    detail += fmt("%s rel %.1e; ", s.label().c_str(), rel);
  }
  verdict(6, ok, detail + "tol 1e-6");
}

void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  double worst_alpha = 0;
  for (auto [n, l] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 0}})
    worst_alpha = std::max(worst_alpha, std::abs(alpha(n, l) - oracle::alpha(n, l)));

  double worst_q1 = 0;
  for (long m : {1L, 2L, 3L}) {
    auto E = freq(m);
    for (const auto& s : {sphere(), cap()})
      for (int i = 0; i < 20; ++i) {
        Wave F = Wave::sample(E, derive_seed(kSeed, i));
        worst_q1 = std::max(worst_q1, std::abs(chaos_projection(F, s, 1) - l2_diagonal(F, s) - l2_offdiagonal(F, s)));
      }
  }

  auto E = freq(26);
  std::vector<Wave> waves;
  for (int i = 0; i < 2000; ++i) waves.push_back(Wave::sample(E, derive_seed(kSeed, i)));
  auto pr = chaos_projections_batch(waves, cap());
  std::vector<double> l2, l4, prod;
  for (const auto& p : pr) {
    l2.push_back(p.l2);
    l4.push_back(p.l4);
  }
  double m2 = describe(l2).mean, m4 = describe(l4).mean;
  for (std::size_t i = 0; i < pr.size(); ++i) prod.push_back((l2[i] - m2) * (l4[i] - m4));
  Moments pm = describe(prod);
  double cov = covariance(l2, l4);
  double z = cov / pm.standard_error();

  bool ok = worst_alpha <= 1e-8 && worst_q1 <= 1e-6 && std::abs(z) <= 3;
  verdict(7, ok, fmt("alpha max err %.1e <= 1e-8; q=1 max err %.1e <= 1e-6; Cov(L[2],L[4]) = %.2e, z = %+.2f (%.0fs)",
                     worst_alpha, worst_q1, cov, z, seconds_since(t0)));
}

// Ten pairs of quadrature nodes drawn from CounterStream(key).
std::vector<std::pair<SurfacePoint, SurfacePoint>> random_pairs(const Surface& s, std::uint64_t key) {
  CounterStream cs(key);
  const auto& nd = s.nodes();
  std::vector<std::pair<SurfacePoint, SurfacePoint>> out;
  for (std::uint64_t k = 0; out.size() < 10; k += 2) {
    const auto& a = nd[std::size_t(cs.uniform(k) * nd.size())];
    const auto& b = nd[std::size_t(cs.uniform(k + 1) * nd.size())];
    if ((a.position - b.position).norm() < 1e-6) continue;
    out.push_back({{a.position, a.normal}, {b.position, b.normal}});
  }
  return out;
}

std::vector<double> taylor_slopes(const FrequencySet& E, const Surface& s, std::uint64_t key) {
  std::vector<double> slopes;
  for (const auto& [a, b] : random_pairs(s, key)) {
    auto blk = kac_rice_blocks(E, a, b);
    std::vector<double> xs, ys;
    for (double eps : {0.1, 0.05, 0.025}) {
      auto sb = blk.scaled(eps);
      xs.push_back(std::log(eps));
      ys.push_back(std::log(std::abs(two_point_from_blocks(sb).value - two_point_taylor(sb))));
    }
    slopes.push_back(ls_slope(xs, ys));
  }
  return slopes;
}

void criterion8() {
  auto E = FrequencySet::enumerate(26);
  Surface s = sphere();
  auto slopes = taylor_slopes(E, s, 1);
  double min_slope = *std::min_element(slopes.begin(), slopes.end());
  std::string list;
  for (double v : slopes) list += fmt(" %.2f", v);
  note("slopes:%s", list.c_str());
  for (std::uint64_t key = 2; key <= 5; ++key) {
    auto other = taylor_slopes(E, s, key);
    note("pair set %llu: %ld of 10 slopes >= 2.7, min %.2f", (unsigned long long)key,
         long(std::count_if(other.begin(), other.end(), [](double v) { return v >= 2.7; })),
         *std::min_element(other.begin(), other.end()));
  }
  double quad = two_point_from_blocks(KacRiceBlocks{}).value;
  TwoPointOptions q;
  q.method = TwoPointMethod::qmc;
  q.budget = 1 << 16;
  q.seed = kSeed;
  Estimate qmc = two_point_from_blocks(KacRiceBlocks{}, q);
  bool zero_ok = std::abs(quad - 0.25) <= 1e-12 && std::abs(qmc.value - 0.25) <= 3 * qmc.se + 1e-15;
  verdict(8, min_slope >= 2.7 && zero_ok,
          fmt("min slope %.2f >= 2.7; K2(0) = %.15f (quadrature), %.6f +- %.1e (lattice rule)", min_slope, quad,
              qmc.value, qmc.se));
}

void criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  long checked = 0;
  double worst = 0;
  for (long m = 1; m <= 30; ++m) {
    if (!representable(m)) continue;
    auto E = FrequencySet::enumerate(m);
    std::vector<int> levels = {2, 4};
    if (m <= 5) levels.push_back(6);
    for (int ell : levels) {
      auto bf = oracle::tuples(E, ell);
      ok = ok && correlation_counts(E, ell) == bf.count;
      double rel = std::abs(separation_sum(E, ell) - bf.sep) / bf.sep;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-9;
      ++checked;
    }
  }
  auto E1 = FrequencySet::enumerate(1);
  bool m1 = correlation_counts(E1, 4) == 90 && std::abs(separation_sum(E1, 2) - 0.375) < 1e-15;
  verdict(9, ok && m1, fmt("%ld (m, l) cases exact counts, max sum rel err %.1e; m=1: C(4) = %lld, S_2 = %.4f (%.0fs)",
                           checked, worst, (long long)correlation_counts(E1, 4), separation_sum(E1, 2), seconds_since(t0)));
}

void criterion10(const StaticRun& r) {
  auto t0 = std::chrono::steady_clock::now();
  auto st = simulate(r.m, sphere(), 200, true);
  double c = correlation(st.lengths, *st.areas);
  verdict(10, c >= 0.8, fmt("Corr(L, area) = %.3f >= 0.8 at m=%ld, area grid %d (%.0fs)", c, r.m, st.area_resolution,
                            seconds_since(t0)),
          false);
}

void criterion11() {
  bool ok = true;
  std::string detail;
  for (const auto& s : {sphere(), Surface::builtin(SurfaceSpec::hemisphere(0.24)), cap()}) {
    double A = area(s), I = interaction_integral(s, 2);
    bool in = I >= A * A / 3 * (1 - 1e-6) && I <= A * A * (1 + 1e-6);
    ok = ok && in;
    detail += fmt("%s I2/A^2 = %.4f; ", s.label().c_str(), I / (A * A));
  }
  bool st = is_static(sphere(), 1e-4).is_static && is_static(Surface::builtin(SurfaceSpec::hemisphere(0.24)), 1e-4).is_static &&
            !is_static(cap(), 1e-4).is_static;
  verdict(11, ok && st, detail + fmt("static: sphere, hemisphere yes, cap no: %s", st ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  StaticRun best = best_static_run();
  criterion3(best);
  criterion4();
  criterion5(best);
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(best);
  criterion11();
  std::printf("acceptance run complete: %d/11 PASS, %d FAIL, %d FAIL reported only (%.0fs)\n", passed, failed,
              failed_reported, seconds_since(t0));
  return strict && failed > 0 ? 1 : 0;
}
