#pragma once

#include "arw/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace arw {

struct CorrelationReport {
  long m = 0;
  long n = 0;
  std::int64_t c2 = 0;
  std::int64_t c4 = 0;
  std::int64_t x4 = 0;
  std::int64_t d4 = 0;
  std::optional<std::int64_t> c6;
  double s2 = 0.0;
  std::optional<double> s4;
  std::optional<double> s6;

  double normalized(double s) const { return double(n) * double(n) * s; }
  // max over the computed levels of N^2 S_l; a lower bound when levels are missing.
  double rank_key() const;
  bool complete() const { return s4.has_value() && s6.has_value(); }
};

// Distinct vector sums mu + mu' over ordered pairs, with multiplicities.
struct SumTable {
  std::vector<LatticePoint> sums;
  std::vector<std::int64_t> counts;
  std::size_t size() const { return sums.size(); }
};

SumTable pair_sums(const FrequencySet& E);

std::int64_t correlation_counts(const FrequencySet& E, int ell);

struct DegenerateSplit {
  std::int64_t x4 = 0;
  std::int64_t d4 = 0;
};
DegenerateSplit split_degenerate(const FrequencySet& E);

enum class SeparationMethod { automatic, pair_sums, spectral };

// S_l = N^-l * sum over l-tuples with nonzero sum v of 1/|v|^2.
double separation_sum(const FrequencySet& E, int ell, SeparationMethod method = SeparationMethod::automatic);

struct SpectralSeparation {
  double s4 = 0.0;
  double s6 = 0.0;
};
// FFT route: tuple-sum counts are the Fourier coefficients of r^l, sampled
// on a grid fine enough that no sum aliases.
double separation_sum_spectral(const FrequencySet& E, int ell);

// Estimated work units of the pair-sum route.
double pair_sum_cost(const FrequencySet& E, int ell);

CorrelationReport correlation_report(const FrequencySet& E, bool with_higher = true);

struct ScanResult {
  std::vector<CorrelationReport> ranked;
  long evaluated = 0;       // reports with S_4 and S_6
  bool best_certified = false;  // every unevaluated m provably ranks below the top entry
};

// Ranks admissible m in [m_lo, m_hi] by max_l N^2 S_l. N^2 S_2 is a lower
// bound for the key, so S_4 and S_6 are computed in increasing order of it,
// at most `budget` times (budget <= 0: no cap), stopping once the next lower
// bound cannot beat the best complete key.
ScanResult scan_well_separated(long m_lo, long m_hi, long budget);

struct TwoSquaresBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
long r2(long n);
TwoSquaresBound two_squares_lower_bound(long m);

}  // namespace arw
