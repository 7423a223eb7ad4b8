#include <doctest.h>

#include "arw/lattice.hpp"
#include "arw/rng.hpp"
#include "arw/surface.hpp"

#include <cmath>

using namespace arw;

namespace {

std::vector<Surface> builtins() {
  return {Surface::builtin(SurfaceSpec::sphere(0.24)), Surface::builtin(SurfaceSpec::hemisphere(0.24)),
          Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3)), Surface::builtin(SurfaceSpec::cap(0.3, 2.0)),
          Surface::builtin(SurfaceSpec::sphere(0.1, Vec3(0.2, 0.3, 0.4)))};
}

}  // namespace

TEST_CASE("areas in closed form") {
  double r = 0.24;
  CHECK(area(Surface::builtin(SurfaceSpec::sphere(r))) == doctest::Approx(4 * kPi * r * r).epsilon(1e-12));
  CHECK(area(Surface::builtin(SurfaceSpec::hemisphere(r))) == doctest::Approx(2 * kPi * r * r).epsilon(1e-12));
  CHECK(area(Surface::builtin(SurfaceSpec::cap(r, kPi / 3))) == doctest::Approx(kPi * r * r).epsilon(1e-12));
  CHECK(area(Surface::builtin(SurfaceSpec::sphere(r))) == doctest::Approx(0.723823).epsilon(1e-6));
  CHECK(area(Surface::builtin(SurfaceSpec::cap(r, kPi / 3))) == doctest::Approx(0.180956).epsilon(1e-5));
}

TEST_CASE("interaction integrals on the sphere") {
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  double A = area(s);
  CHECK(interaction_integral(s, 2) == doctest::Approx(A * A / 3).epsilon(1e-12));
  CHECK(interaction_integral(s, 4) == doctest::Approx(A * A / 5).epsilon(1e-12));
  // I4 scales like rho^4; at rho = 1 it is 16 pi^2 / 5
  CHECK(interaction_integral(s, 4) / std::pow(0.24, 4) == doctest::Approx(16 * kPi * kPi / 5).epsilon(1e-12));
}

TEST_CASE("moment identity agrees with the direct double integral") {
  for (const auto& s : {Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3), 12),
                        Surface::builtin(SurfaceSpec::hemisphere(0.24), 12)}) {
    for (int k : {2, 4}) CHECK(interaction_integral(s, k) == doctest::Approx(interaction_integral_double(s, k)).epsilon(1e-10));
  }
}

TEST_CASE("bounds A^2/3 <= I2 <= A^2") {
  for (const auto& s : builtins()) {
    double A = area(s), I = interaction_integral(s, 2);
    CHECK(I >= A * A / 3 * (1 - 1e-6));
    CHECK(I <= A * A * (1 + 1e-6));
  }
  auto cap = Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3));
  double A = area(cap);
  CHECK(interaction_integral(cap, 2) > A * A / 3 * (1 + 1e-3));
}

TEST_CASE("refinement changes functionals by less than 1e-8") {
  for (const auto& s : builtins()) {
    auto f = s.with_order(2 * s.order());
    CHECK(area(f) == doctest::Approx(area(s)).epsilon(1e-8));
    for (int k : {2, 4}) CHECK(interaction_integral(f, k) == doctest::Approx(interaction_integral(s, k)).epsilon(1e-8));
    auto eta = MeasureOnSphere::orbit(Vec3(0.3, -0.5, 0.8));
    CHECK(h_functional(f, eta) == doctest::Approx(h_functional(s, eta)).epsilon(1e-8));
  }
}

TEST_CASE("staticity") {
  auto sph = Surface::builtin(SurfaceSpec::sphere(0.24));
  auto hem = Surface::builtin(SurfaceSpec::hemisphere(0.24));
  auto cap = Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3));
  double A = area(sph);
  CHECK(h_functional(sph, MeasureOnSphere::orbit(Vec3(1, 0, 0))) == doctest::Approx(A * A / 9).epsilon(1e-12));
  CHECK(h_functional(sph, MeasureOnSphere::spectral(FrequencySet::enumerate(26))) == doctest::Approx(A * A / 9).epsilon(1e-12));
  CHECK(is_static(sph, 1e-6).is_static);
  CHECK(is_static(hem, 1e-6).is_static);
  CHECK_FALSE(is_static(cap, 1e-4).is_static);
  // uniform measure two ways
  CHECK(h_functional(sph, MeasureOnSphere::uniform()) == doctest::Approx(h_uniform_analytic(sph)).epsilon(1e-8));
  CHECK(h_functional(cap, MeasureOnSphere::uniform()) == doctest::Approx(h_uniform_analytic(cap)).epsilon(1e-8));
}

TEST_CASE("spectral H approaches the uniform value on a cap") {
  auto cap = Surface::builtin(SurfaceSpec::cap(0.24, kPi / 3));
  double target = h_uniform_analytic(cap);
  double small = std::abs(h_functional(cap, MeasureOnSphere::spectral(FrequencySet::enumerate(3))) - target);
  double large = std::abs(h_functional(cap, MeasureOnSphere::spectral(FrequencySet::enumerate(9997))) - target);
  CHECK(large < small);
}

TEST_CASE("directional second moments lie in [0, A]") {
  CounterStream rng(5);
  for (const auto& s : builtins()) {
    double A = area(s);
    for (int i = 0; i < 10; ++i) {
      auto [a, b] = rng.normal_pair(2 * i);
      auto [c, d] = rng.normal_pair(2 * i + 1);
      (void)d;
      Vec3 th = Vec3(a, b, c).normalized();
      double v = th.dot(s.normal_tensor2() * th);
      CHECK(v >= -1e-14);
      CHECK(v <= A * (1 + 1e-12));
    }
  }
}

TEST_CASE("oscillatory integral") {
  auto s = Surface::builtin(SurfaceSpec::sphere(0.24));
  double A = area(s);
  auto z = oscillatory_integral(s, LatticePoint{0, 0, 0});
  CHECK(z.real() == doctest::Approx(A).epsilon(1e-12));
  CHECK(std::abs(z.imag()) < 1e-14);
  for (LatticePoint v : {LatticePoint{1, 0, 0}, LatticePoint{2, 1, 1}, LatticePoint{3, 4, 0}})
    CHECK(std::abs(oscillatory_integral(s, v)) <= A);
  // sphere closed form A e^{2 pi i v.c} sin(k rho)/(k rho), k = 2 pi |v|; the
  // envelope decays like 1/|v|
  double prev = 1e9;
  for (int k : {4, 8, 16}) {
    Vec3 v(k, 0, 0);
    double kr = 2 * kPi * k * 0.24;
    double exact = A * std::abs(std::sin(kr) / kr);
    CHECK(std::abs(oscillatory_integral(s, v)) == doctest::Approx(exact).epsilon(1e-8));
    double envelope = A / kr;
    CHECK(envelope < prev);
    prev = envelope;
  }
}

TEST_CASE("surface validation") {
  CHECK_THROWS_AS(SurfaceSpec::sphere(-1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(SurfaceSpec::cap(0.2, 0.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(SurfaceSpec::sphere(0.6).validate(), InvalidArgument);
}
