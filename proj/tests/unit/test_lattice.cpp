#include <doctest.h>

#include "arw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

using namespace arw;

namespace {

std::set<LatticePoint> brute_points(long m) {
  std::set<LatticePoint> out;
  int r = int(std::sqrt(double(m))) + 1;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      for (int z = -r; z <= r; ++z)
        if (long(x) * x + long(y) * y + long(z) * z == m) out.insert({x, y, z});
  return out;
}

}  // namespace

TEST_CASE("representable and admissible") {
  CHECK_FALSE(representable(7));
  CHECK(representable(1));
  CHECK_FALSE(representable(28));
  CHECK(admissible(2));
  CHECK_FALSE(admissible(12));
  CHECK_FALSE(admissible(15));
}

TEST_CASE("representable matches enumeration up to 10^4") {
  for (long m = 1; m <= 10000; ++m) {
    bool rep = representable(m);
    if (rep != !FrequencySet::enumerate(m).empty()) FAIL("mismatch at m = " << m);
  }
}

TEST_CASE("enumeration sizes") {
  CHECK(FrequencySet::enumerate(1).size() == 6);
  CHECK(FrequencySet::enumerate(1).half().size() == 3);
  CHECK(FrequencySet::enumerate(2).size() == 12);
  CHECK(FrequencySet::enumerate(2).half().size() == 6);
  CHECK(FrequencySet::enumerate(26).size() == 72);
}

TEST_CASE("enumeration equals a brute-force triple scan") {
  for (long m = 1; m <= 120; ++m) {
    auto E = FrequencySet::enumerate(m);
    std::set<LatticePoint> got(E.points().begin(), E.points().end());
    REQUIRE(got.size() == E.size());
    CHECK(got == brute_points(m));
  }
}

TEST_CASE("closure, half-set partition and coordinate sums") {
  for (long m : {1L, 2L, 3L, 9L, 26L, 29L, 67L, 101L, 446L}) {
    auto E = FrequencySet::enumerate(m);
    std::set<LatticePoint> pts(E.points().begin(), E.points().end());
    for (const auto& P : signed_permutations())
      for (const auto& p : E.points()) {
        Vec3 q = P * p.vec();
        CHECK(pts.count({int(std::lround(q.x())), int(std::lround(q.y())), int(std::lround(q.z()))}) == 1);
      }
    CHECK(E.half().size() * 2 == E.size());
    std::set<LatticePoint> halves;
    for (const auto& p : E.half()) {
      CHECK(in_half(p));
      CHECK_FALSE(in_half(-p));
      halves.insert(p);
      halves.insert(-p);
    }
    CHECK(halves == pts);
    for (int i = 0; i < 3; ++i) {
      long s = 0;
      for (const auto& p : E.points()) s += long(p[i]) * p[i];
      CHECK(3 * s == m * long(E.size()));
    }
  }
}

TEST_CASE("spectral moments") {
  auto E2 = FrequencySet::enumerate(2);
  auto sm = spectral_moments(E2, 4);
  CHECK(sm.moment(2, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(sm.psi == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(sm.phi == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // psi and phi from the direct definitions, and phi = m^2/6 - psi/2
  for (long m : {3L, 5L, 26L, 29L, 101L, 446L}) {
    auto E = FrequencySet::enumerate(m);
    auto s = spectral_moments(E, 4);
    long p4 = 0, p22 = 0;
    for (const auto& p : E.points()) {
      p4 += long(p.x) * p.x * p.x * p.x;
      p22 += long(p.x) * p.x * p.y * p.y;
    }
    double n = double(E.size());
    CHECK(s.psi == doctest::Approx(p4 / n).epsilon(1e-14));
    CHECK(s.phi == doctest::Approx(p22 / n).epsilon(1e-14));
    CHECK(s.phi == doctest::Approx(double(m) * m / 6.0 - s.psi / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("fourth direction moment drifts towards 1/5") {
  double far = std::abs(spectral_moments(FrequencySet::enumerate(9997), 4).moment(4, 0, 0) - 0.2);
  double near = std::abs(spectral_moments(FrequencySet::enumerate(3), 4).moment(4, 0, 0) - 0.2);
  CHECK(far < near);
  CHECK(far < 0.02);
}

TEST_CASE("measures on the sphere") {
  auto nu = MeasureOnSphere::spectral(FrequencySet::enumerate(26));
  nu.validate();
  CHECK(nu.directions.size() == 72);
  for (std::size_t i = 0; i < nu.directions.size(); ++i) {
    CHECK(nu.directions[i].norm() == doctest::Approx(1.0));
    CHECK(nu.weights[i] == doctest::Approx(1.0 / 72));
  }
  auto u = MeasureOnSphere::uniform(8);
  u.validate();
  double w = 0, x4 = 0;
  for (std::size_t i = 0; i < u.directions.size(); ++i) {
    w += u.weights[i];
    x4 += u.weights[i] * std::pow(u.directions[i].x(), 4);
  }
  CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x4 == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(signed_permutations().size() == 48);
}

TEST_CASE("lattice cache round trip") {
  auto root = std::filesystem::temp_directory_path() / "arw_lattice_cache_test";
  std::filesystem::remove_all(root);
  auto a = cached_enumerate(29, root);
  CHECK(std::filesystem::exists(lattice_cache_file(root, 29)));
  CHECK(lattice_cache_file(root, 29).string().find(kVersion) != std::string::npos);
  auto b = read_lattice_cache(root, 29);
  REQUIRE(b.has_value());
  CHECK(b->points() == a.points());
  CHECK(b->half() == a.half());
  std::filesystem::remove_all(root);
}
