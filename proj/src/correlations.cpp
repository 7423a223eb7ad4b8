#include "arw/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace arw {

namespace {

constexpr std::int64_t kOffset = std::int64_t(1) << 20;

std::int64_t pack(const LatticePoint& p) {
  return ((p.x + kOffset) << 42) | ((p.y + kOffset) << 21) | (p.z + kOffset);
}

LatticePoint unpack(std::int64_t k) {
  const std::int64_t mask = (std::int64_t(1) << 21) - 1;
  return {int(((k >> 42) & mask) - kOffset), int(((k >> 21) & mask) - kOffset), int((k & mask) - kOffset)};
}

using CountMap = std::unordered_map<std::int64_t, std::int64_t>;

SumTable to_table(const CountMap& map) {
  std::vector<std::pair<std::int64_t, std::int64_t>> entries(map.begin(), map.end());
  std::sort(entries.begin(), entries.end());
  SumTable t;
  t.sums.reserve(entries.size());
  t.counts.reserve(entries.size());
  for (const auto& [k, c] : entries) {
    if (c == 0) continue;
    t.sums.push_back(unpack(k));
    t.counts.push_back(c);
  }
  return t;
}

std::int64_t lookup(const CountMap& map, const LatticePoint& p) {
  auto it = map.find(pack(p));
  return it == map.end() ? 0 : it->second;
}

CountMap pair_map(const FrequencySet& E) {
  CountMap map;
  map.reserve(E.size() * E.size());
  for (const auto& a : E.points())
    for (const auto& b : E.points()) ++map[pack(a + b)];
  return map;
}

CountMap convolve(const SumTable& t, const std::vector<LatticePoint>& pts) {
  CountMap out;
  out.reserve(t.size() * 4);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& p : pts) out[pack(t.sums[i] + p)] += t.counts[i];
  return out;
}

// Neumaier compensated sum.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// sum_{i,j} a_i b_j / |u_i + w_j|^2 over pairs with nonzero sum.
double coulomb_pairs(const SumTable& a, const SumTable& b) {
  std::vector<int> bx(b.size()), by(b.size()), bz(b.size());
  std::vector<double> bc(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    bx[j] = b.sums[j].x;
    by[j] = b.sums[j].y;
    bz[j] = b.sums[j].z;
    bc[j] = double(b.counts[j]);
  }
  Accumulator acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ux = a.sums[i].x, uy = a.sums[i].y, uz = a.sums[i].z;
    double row = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      int vx = ux + bx[j], vy = uy + by[j], vz = uz + bz[j];
      int n2 = vx * vx + vy * vy + vz * vz;
      row += n2 == 0 ? 0.0 : bc[j] / double(n2);
    }
    acc.add(double(a.counts[i]) * row);
  }
  return acc.value();
}

long isqrt(long v) {
  long r = static_cast<long>(std::sqrt(double(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

double CorrelationReport::rank_key() const {
  double key = normalized(s2);
  if (s4) key = std::max(key, normalized(*s4));
  if (s6) key = std::max(key, normalized(*s6));
  return key;
}

SumTable pair_sums(const FrequencySet& E) { return to_table(pair_map(E)); }

std::int64_t correlation_counts(const FrequencySet& E, int ell) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  if (ell != 2 && ell != 4 && ell != 6) throw InvalidArgument("correlation order must be 2, 4 or 6");
  CountMap P = pair_map(E);
  if (ell == 2) return lookup(P, {0, 0, 0});
  if (ell == 4) {
    std::int64_t total = 0;
    for (const auto& [k, c] : P) total += c * lookup(P, -unpack(k));
    return total;
  }
  CountMap T = convolve(to_table(P), E.points());
  std::int64_t total = 0;
  for (const auto& [k, c] : T) total += c * lookup(T, -unpack(k));
  return total;
}

DegenerateSplit split_degenerate(const FrequencySet& E) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  // Pairings (12)(34), (13)(24), (14)(23). Each pairing set has P(0)^2
  // elements; two pairings together force (mu, -mu, -mu, mu)-type tuples,
  // one per mu with -mu in E; all three would force 2 mu = 0.
  std::int64_t zero_pairs = correlation_counts(E, 2);
  std::int64_t antipodal = 0;
  std::int64_t all_three = 0;
  for (const auto& p : E.points()) {
    if (std::binary_search(E.points().begin(), E.points().end(), -p)) {
      ++antipodal;
      if (p == -p) ++all_three;
    }
  }
  DegenerateSplit out;
  out.d4 = 3 * zero_pairs * zero_pairs - 3 * antipodal + all_three;
  out.x4 = correlation_counts(E, 4) - out.d4;
  return out;
}

double pair_sum_cost(const FrequencySet& E, int ell) {
  double n = double(E.size());
  double d = std::min(n * n, 0.5 * n * n + 1.0);
  if (ell == 2) return n * n;
  if (ell == 4) return d * d;
  double r = std::sqrt(double(E.m()));
  double d4 = std::min(d * d, 4.0 / 3.0 * kPi * std::pow(4.0 * r + 1.0, 3));
  return d * d + d4 * d;
}

double separation_sum(const FrequencySet& E, int ell, SeparationMethod method) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  if (ell != 2 && ell != 4 && ell != 6) throw InvalidArgument("separation order must be 2, 4 or 6");
  if (method == SeparationMethod::automatic) {
    double n = std::ceil(2.0 * ell * std::sqrt(double(E.m()))) + 1.0;
    double fft_cost = 20.0 * n * n * n * std::log2(n * n * n);
    method = (ell == 2 || pair_sum_cost(E, ell) <= fft_cost) ? SeparationMethod::pair_sums
                                                             : SeparationMethod::spectral;
  }
  if (method == SeparationMethod::spectral) return separation_sum_spectral(E, ell);

  const double N = double(E.size());
  SumTable P = pair_sums(E);
  if (ell == 2) {
    Accumulator acc;
    for (std::size_t i = 0; i < P.size(); ++i) {
      long n2 = P.sums[i].norm2();
      if (n2 != 0) acc.add(double(P.counts[i]) / double(n2));
    }
    return acc.value() / (N * N);
  }
  if (ell == 4) return coulomb_pairs(P, P) / std::pow(N, 4);
  SumTable Q;
  {
    CountMap q;
    q.reserve(P.size() * 8);
    for (std::size_t i = 0; i < P.size(); ++i)
      for (std::size_t j = 0; j < P.size(); ++j) q[pack(P.sums[i] + P.sums[j])] += P.counts[i] * P.counts[j];
    Q = to_table(q);
  }
  return coulomb_pairs(Q, P) / std::pow(N, 6);
}

CorrelationReport correlation_report(const FrequencySet& E, bool with_higher) {
  CorrelationReport r;
  r.m = E.m();
  r.n = long(E.size());
  if (E.empty()) return r;
  r.c2 = correlation_counts(E, 2);
  r.c4 = correlation_counts(E, 4);
  auto split = split_degenerate(E);
  r.x4 = split.x4;
  r.d4 = split.d4;
  r.s2 = separation_sum(E, 2, SeparationMethod::pair_sums);
  if (with_higher) {
    r.c6 = correlation_counts(E, 6);
    r.s4 = separation_sum(E, 4);
    r.s6 = separation_sum(E, 6);
  }
  return r;
}

ScanResult scan_well_separated(long m_lo, long m_hi, long budget) {
  if (m_lo > m_hi) throw InvalidArgument("scan: m_lo must not exceed m_hi");
  if (m_lo < 1) m_lo = 1;
  std::vector<long> ms;
  for (long m = m_lo; m <= m_hi; ++m)
    if (admissible(m)) ms.push_back(m);

  std::vector<CorrelationReport> reports(ms.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < ms.size(); ++i) reports[i] = correlation_report(FrequencySet::enumerate(ms[i]), false);

  std::vector<std::size_t> order(reports.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return reports[a].rank_key() < reports[b].rank_key(); });

  ScanResult result;
  double best = INFINITY;
  std::size_t next = 0;
  for (; next < order.size(); ++next) {
    auto& r = reports[order[next]];
    if (r.rank_key() >= best) {
      result.best_certified = true;
      break;
    }
    if (budget > 0 && result.evaluated >= budget) break;
    FrequencySet E = FrequencySet::enumerate(r.m);
    r = correlation_report(E, true);
    ++result.evaluated;
    best = std::min(best, r.rank_key());
  }
  if (next == order.size()) result.best_certified = true;

  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = reports[a];
    const auto& rb = reports[b];
    if (ra.complete() != rb.complete()) return ra.complete();
    return ra.rank_key() < rb.rank_key();
  });
  for (std::size_t i : order) result.ranked.push_back(reports[i]);
  return result;
}

long r2(long n) {
  if (n < 0) return 0;
  long count = 0;
  long r = isqrt(n);
  for (long a = -r; a <= r; ++a) {
    long b2 = n - a * a;
    long b = isqrt(b2);
    if (b * b == b2) count += b == 0 ? 1 : 2;
  }
  return count;
}

TwoSquaresBound two_squares_lower_bound(long m) {
  if (m < 1) throw InvalidArgument("m must be positive");
  long reps = r2(m - 1);
  if (reps == 0) throw InvalidArgument("construction inapplicable: m - 1 is not a sum of two squares");
  FrequencySet E = FrequencySet::enumerate(m);
  Accumulator acc;
  for (const auto& a : E.points())
    for (const auto& b : E.points())
      if (a != b) acc.add(1.0 / double((a - b).norm2()));
  TwoSquaresBound out;
  out.lhs = acc.value();
  out.rhs = double(reps) / 4.0;
  out.holds = out.lhs >= out.rhs;
  return out;
}

}  // namespace arw
