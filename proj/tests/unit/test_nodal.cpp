#include <doctest.h>

#include "arw/nodal.hpp"
#include "arw/rng.hpp"
#include "arw/stats.hpp"

#include <omp.h>

#include <cmath>

using namespace arw;

namespace {

FrequencyPtr freq(long m) { return std::make_shared<const FrequencySet>(FrequencySet::enumerate(m)); }

Wave cosine_fixture() {
  auto E = freq(1);
  std::vector<std::complex<double>> a(E->half().size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (E->half()[k] == LatticePoint{1, 0, 0}) a[k] = std::sqrt(6.0) / 2.0;
  return Wave(E, a);
}

}  // namespace

TEST_CASE("resolution rule") {
  CHECK(minimum_resolution(1) == 8);
  CHECK(minimum_resolution(26) == 48);
  CHECK(minimum_resolution(26, 2.0) == 96);
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  CHECK_THROWS_AS(nodal_curve_length(Wave::sample(freq(26), 1), s, 20), InvalidArgument);
}

TEST_CASE("fixture lengths from plane-sphere geometry") {
  Wave F = cosine_fixture();
  auto s3 = Surface::builtin(SurfaceSpec::sphere(0.3));
  double exact = 2 * 2 * kPi * std::sqrt(0.09 - 0.0625);
  CHECK(exact == doctest::Approx(2.0838).epsilon(1e-4));
  CHECK(nodal_curve_length(F, s3, minimum_resolution(1, 2.0)) == doctest::Approx(exact).epsilon(5e-3));
  CHECK(nodal_curve_length(F, s3, 64) == doctest::Approx(exact).epsilon(1e-3));
  auto s24 = Surface::builtin(SurfaceSpec::sphere(0.24));
  CHECK(nodal_curve_length(F, s24, 16) == 0.0);
}

TEST_CASE("cap lengths clip the nodal circles") {
  // F = cos(2 pi x1) on a hemisphere of radius 0.3: each circle is cut in half
  Wave F = cosine_fixture();
  auto h = Surface::builtin(SurfaceSpec::hemisphere(0.3));
  double exact = 2 * kPi * std::sqrt(0.09 - 0.0625);
  CHECK(nodal_curve_length(F, h, 64) == doctest::Approx(exact).epsilon(2e-3));
}

TEST_CASE("refinement convergence of lengths") {
  auto E = freq(26);
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  int res = minimum_resolution(26, 2.0);
  int ok = 0, total = 20;
  for (int i = 0; i < total; ++i) {
    Wave F = Wave::sample(E, derive_seed(77, i));
    double a = nodal_curve_length(F, s, res), b = nodal_curve_length(F, s, 2 * res);
    ok += std::abs(a - b) / b < 0.01;
  }
  CHECK(ok >= 19);
}

TEST_CASE("length is invariant under a joint signed permutation") {
  auto E = freq(26);
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  Wave F = Wave::sample(E, 5);
  int res = minimum_resolution(26, 2.0);
  double L = nodal_curve_length(F, s, res);
  // x -> P(x - c) + c fixes the centered sphere, and c - P^T c is an integer
  // vector, so F(P^T x) has the image nodal set
  for (int k : {3, 17, 40}) {
    Wave G = permuted(F, signed_permutations()[k]);
    CHECK(nodal_curve_length(G, s, res) == doctest::Approx(L).epsilon(5e-3));
  }
}

TEST_CASE("fixture nodal areas") {
  Wave F = cosine_fixture();
  CHECK(nodal_area(F, 16) == doctest::Approx(2.0).epsilon(1e-12));
  Wave G = permuted(F, signed_permutations()[29]);
  CHECK(nodal_area(G, 16) == doctest::Approx(2.0).epsilon(1e-12));
  auto E = freq(5);
  Wave H = Wave::sample(E, 3);
  double a = nodal_area(H, 32), b = nodal_area(H, 64);
  CHECK(std::abs(a - b) / b < 0.01);
}

TEST_CASE("Monte Carlo mean and determinism") {
  auto E = freq(2);
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  SimulationOptions o;
  o.samples = 500;
  o.seed = 11;
  auto st = monte_carlo(E, s, o);
  CHECK(st.predicted_mean() == doctest::Approx(1.8566).epsilon(1e-4));
  CHECK(std::abs(st.mean - st.predicted_mean()) <= 3 * st.standard_error());

  SimulationOptions small = o;
  small.samples = 40;
  small.with_area = true;
  omp_set_num_threads(1);
  auto a = monte_carlo(E, s, small);
  omp_set_num_threads(4);
  auto b = monte_carlo(E, s, small);
  omp_set_num_threads(1);
  CHECK(a.lengths == b.lengths);
  CHECK(*a.areas == *b.areas);
  double c = correlation(a.lengths, *a.areas);
  CHECK(c >= -1.0);
  CHECK(c <= 1.0);
}

TEST_CASE("batched lengths equal per-wave lengths") {
  auto E = freq(3);
  auto s = Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3));
  SimulationOptions o;
  o.samples = 5;
  o.seed = 2;
  auto st = monte_carlo(E, s, o);
  for (int i = 0; i < 5; ++i) {
    Wave F = Wave::sample(E, derive_seed(2, i));
    CHECK(st.lengths[i] == doctest::Approx(nodal_curve_length(F, s, st.resolution)).epsilon(1e-10));
  }
}
