#include "arw/stats.hpp"

#include "arw/common.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>

namespace arw {

double Moments::standard_error() const { return count > 0 ? std::sqrt(variance / double(count)) : 0.0; }

Moments describe(const std::vector<double>& xs) {
  Moments out;
  out.count = long(xs.size());
  if (xs.empty()) return out;
  double s = 0.0;
  for (double x : xs) s += x;
  out.mean = s / double(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0, c = 0.0;
  for (double x : xs) {
    ss += (x - out.mean) * (x - out.mean);
    c += x - out.mean;
  }
  // corrected two-pass
  out.variance = (ss - c * c / double(xs.size())) / double(xs.size() - 1);
  return out;
}

Moments describe_online(const std::vector<double>& xs) {
  Moments out;
  double m2 = 0.0;
  for (double x : xs) {
    ++out.count;
    double d = x - out.mean;
    out.mean += d / double(out.count);
    m2 += d * (x - out.mean);
  }
  if (out.count > 1) out.variance = m2 / double(out.count - 1);
  return out;
}

double covariance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InvalidArgument("covariance needs equal lengths");
  if (a.size() < 2) return 0.0;
  double ma = describe(a).mean, mb = describe(b).mean;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / double(a.size() - 1);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  double va = describe(a).variance, vb = describe(b).variance;
  if (va <= 0 || vb <= 0) return 0.0;
  return std::clamp(covariance(a, b) / std::sqrt(va * vb), -1.0, 1.0);
}

double variance_standard_error(const std::vector<double>& xs) {
  auto mo = describe(xs);
  double n = double(xs.size());
  if (n < 4) return 0.0;
  double m4 = 0.0;
  for (double x : xs) m4 += std::pow(x - mo.mean, 4);
  m4 /= n;
  double s2 = mo.variance;
  return std::sqrt(std::max(0.0, (m4 - (n - 3) / (n - 1) * s2 * s2) / n));
}

double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
  }
  return d;
}

double chi2_cdf(double x, double dof) {
  if (x <= 0) return 0.0;
  return boost::math::gamma_p(dof / 2.0, x / 2.0);
}

double limit_sphere_cdf(double t) {
  // P((5 - X)/sqrt 10 <= t) = P(X >= 5 - sqrt(10) t)
  return 1.0 - chi2_cdf(5.0 - std::sqrt(10.0) * t, 5.0);
}

}  // namespace arw
