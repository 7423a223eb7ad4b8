#include "arw/correlations.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

namespace arw {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

int fast_size(int n) {
  for (int k = n;; ++k) {
    int r = k;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return k;
  }
}

struct FftwFree {
  void operator()(double* p) const { fftw_free(p); }
};

}  // namespace

double separation_sum_spectral(const FrequencySet& E, int ell) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  if (ell != 2 && ell != 4 && ell != 6) throw InvalidArgument("separation order must be 2, 4 or 6");
  const long R = static_cast<long>(std::floor(std::sqrt(double(E.m()))));
  const int n = fast_size(int(2 * ell * R + 1));
  const int nc = n / 2 + 1;
  const std::size_t total = std::size_t(n) * n * 2 * nc;
  std::unique_ptr<double, FftwFree> buf(static_cast<double*>(fftw_malloc(sizeof(double) * total)));
  if (!buf) throw RuntimeError("separation_sum_spectral: out of memory");
  double* data = buf.get();
  auto* spec = reinterpret_cast<fftw_complex*>(data);

  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_3d(n, n, n, data, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_3d(n, n, n, spec, data, FFTW_ESTIMATE);
  }
  auto at = [&](long x, long y, long z) -> double& {
    auto w = [n](long v) { return std::size_t(((v % n) + n) % n); };
    return data[(w(x) * n + w(y)) * std::size_t(2 * nc) + w(z)];
  };
  std::fill(data, data + total, 0.0);
  for (const auto& p : E.points()) at(p.x, p.y, p.z) += 1.0;
  fftw_execute(fwd);
  // The transform of a symmetric set is real: N r(k/n).
  const std::size_t ncomplex = std::size_t(n) * n * nc;
  for (std::size_t i = 0; i < ncomplex; ++i) {
    double g = spec[i][0];
    spec[i][0] = std::pow(g, ell);
    spec[i][1] = 0.0;
  }
  fftw_execute(bwd);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }

  // data(v) = n^3 * #{l-tuples with sum v}; sums lie in the ball of radius l sqrt(m).
  const double scale = 1.0 / (double(n) * n * n * std::pow(double(E.size()), ell));
  const long reach = ell * R;
  const double ball = double(ell) * ell * double(E.m());
  double sum = 0.0, comp = 0.0;
  for (long x = -reach; x <= reach; ++x) {
    for (long y = -reach; y <= reach; ++y) {
      double row = 0.0;
      for (long z = -reach; z <= reach; ++z) {
        long n2 = x * x + y * y + z * z;
        if (n2 == 0 || double(n2) > ball) continue;
        row += at(x, y, z) / double(n2);
      }
      double t = sum + row;
      comp += std::abs(sum) >= std::abs(row) ? (sum - t) + row : (row - t) + sum;
      sum = t;
    }
  }
  return (sum + comp) * scale;
}

}  // namespace arw
