#pragma once

#include <functional>
#include <vector>

namespace arw {

struct Moments {
  long count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double standard_error() const;
};

// Two-pass mean and unbiased variance.
Moments describe(const std::vector<double>& xs);
// Welford one-pass version, kept for the consistency check.
Moments describe_online(const std::vector<double>& xs);

double covariance(const std::vector<double>& a, const std::vector<double>& b);
double correlation(const std::vector<double>& a, const std::vector<double>& b);

// Standard error of the sample variance, from the fourth central moment.
double variance_standard_error(const std::vector<double>& xs);

// sup |F_n - F| against a continuous CDF.
double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf);

double chi2_cdf(double x, double dof);
// CDF of (5 - chi2(5)) / sqrt(10).
double limit_sphere_cdf(double t);

}  // namespace arw
