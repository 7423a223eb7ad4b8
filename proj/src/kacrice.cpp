#include "arw/kacrice.hpp"

#include "arw/nodal.hpp"
#include "arw/quadrature.hpp"
#include "arw/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <array>
#include <cmath>
#include <limits>

namespace arw {

double expected_norm(const Mat2& C) {
  double t = 0.5 * (C(0, 0) + C(1, 1));
  double d = std::sqrt(0.25 * (C(0, 0) - C(1, 1)) * (C(0, 0) - C(1, 1)) + C(0, 1) * C(1, 0));
  double l1 = t + d, l2 = std::max(0.0, t - d);
  if (l1 <= 0) return 0.0;
  double k = std::sqrt(std::max(0.0, 1.0 - l2 / l1));
  return std::sqrt(2.0 / kPi) * std::sqrt(l1) * std::comp_ellint_2(k);
}

namespace {

// s = exp(sinh u) on a uniform u grid; tails beyond |u| = 5 are below 1e-16.
struct DeRule {
  std::vector<double> s, w;  // nodes and weights for int_0^inf f(s) ds
};

DeRule de_rule(int n) {
  const double U = 5.0;
  DeRule r;
  double h = 2.0 * U / double(n - 1);
  for (int j = 0; j < n; ++j) {
    double u = -U + h * j;
    double s = std::exp(std::sinh(u));
    r.s.push_back(s);
    r.w.push_back(h * std::cosh(u) * s);
  }
  return r;
}

}  // namespace

double expected_norm_product(const Eigen::Matrix4d& theta, int nodes) {
  if (nodes < 8) throw InvalidArgument("at least 8 quadrature nodes are required");
  const Mat2 Taa = theta.block<2, 2>(0, 0), Tbb = theta.block<2, 2>(2, 2);
  const Mat2 Tab = theta.block<2, 2>(0, 2), Tba = theta.block<2, 2>(2, 0);
  const double base = expected_norm(Taa) * expected_norm(Tbb);
  if (Tab.cwiseAbs().maxCoeff() == 0.0) return base;

  DeRule rule = de_rule(nodes);
  const int n = nodes;
  std::vector<Mat2> G(n), Rinv(n);
  std::vector<double> ws(n), wt(n), detG(n), detR(n);
  for (int j = 0; j < n; ++j) {
    double s = rule.s[j];
    Mat2 P = Mat2::Identity() + 2.0 * s * Taa;
    Mat2 R = Mat2::Identity() + 2.0 * s * Tbb;
    G[j] = Tba * P.inverse() * Tab;
    Rinv[j] = R.inverse();
    detG[j] = G[j].determinant();
    detR[j] = Rinv[j].determinant();
    ws[j] = rule.w[j] * std::pow(s, -1.5) / std::sqrt(P.determinant());
    wt[j] = rule.w[j] * std::pow(s, -1.5) / std::sqrt(R.determinant());
  }
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    if (ws[a] == 0.0) continue;
    double inner = 0.0;
    for (int b = 0; b < n; ++b) {
      double c = 4.0 * rule.s[a] * rule.s[b];
      double trK = c * (Rinv[b].array() * G[a].transpose().array()).sum();
      double detK = c * c * detR[b] * detG[a];
      double rho1 = std::expm1(-0.5 * std::log1p(-trK + detK));
      inner += wt[b] * rho1;
    }
    total += ws[a] * inner;
  }
  return base + total / (4.0 * kPi);
}

Estimate expected_norm_product_qmc(const Eigen::Matrix4d& theta, long budget, std::uint64_t seed) {
  const int shifts = 16;
  if (budget < shifts) throw InvalidArgument("budget too small");
  Eigen::LLT<Eigen::Matrix4d> llt(theta);
  if (llt.info() != Eigen::Success) throw InvalidArgument("theta not positive definite");
  const Eigen::Matrix4d L = llt.matrixL();
  // Kronecker lattice from the root of x^5 = x + 1
  const double g = 1.1673039782614187;
  std::array<double, 4> gen;
  for (int i = 0; i < 4; ++i) gen[i] = 1.0 / std::pow(g, i + 1);
  const long per = budget / shifts;
  CounterStream stream(seed);
  std::vector<double> means(shifts);
  for (int r = 0; r < shifts; ++r) {
    std::array<double, 4> shift;
    for (int i = 0; i < 4; ++i) shift[i] = stream.uniform(std::uint64_t(r) * 4 + i);
    double acc = 0.0;
    for (long k = 1; k <= per; ++k) {
      Eigen::Vector4d z;
      for (int i = 0; i < 4; ++i) {
        double u = std::fmod(shift[i] + double(k) * gen[i], 1.0);
        u = std::clamp(u, 1e-16, 1.0 - 1e-16);
        z[i] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
      }
      Eigen::Vector4d w = L * z;
      acc += w.head<2>().norm() * w.tail<2>().norm();
    }
    means[r] = acc / double(per);
  }
  double mean = 0.0;
  for (double x : means) mean += x;
  mean /= shifts;
  double var = 0.0;
  for (double x : means) var += (x - mean) * (x - mean);
  var /= (shifts - 1);
  return {mean, std::sqrt(var / shifts)};
}

Estimate two_point_from_blocks(const KacRiceBlocks& b, const TwoPointOptions& opts) {
  double gap = 1.0 - b.r * b.r;
  if (gap <= kClampBand) throw RuntimeError("inside clamp band");
  Eigen::Matrix4d theta = b.theta();
  Eigen::LLT<Eigen::Matrix4d> llt(theta);
  if (llt.info() != Eigen::Success) throw InvalidArgument("theta not positive definite");
  const double norm = 1.0 / (2.0 * kPi * std::sqrt(gap));
  if (opts.method == TwoPointMethod::qmc) {
    Estimate e = expected_norm_product_qmc(theta, opts.budget, opts.seed);
    return {e.value * norm, e.se * norm};
  }
  double fine = expected_norm_product(theta, opts.nodes);
  double coarse = expected_norm_product(theta, std::max(8, (3 * opts.nodes) / 4));
  return {fine * norm, std::abs(fine - coarse) * norm};
}

TwoPointValue two_point_exact(const FrequencySet& E, const SurfacePoint& s, const SurfacePoint& sp,
                              const TwoPointOptions& opts) {
  TwoPointValue v;
  v.blocks = kac_rice_blocks(E, s, sp);
  v.r = v.blocks.r;
  Estimate e = two_point_from_blocks(v.blocks, opts);
  v.exact = e.value;
  v.se = e.se;
  v.taylor = two_point_taylor(v.blocks);
  return v;
}

double two_point_taylor(const KacRiceBlocks& b, TaylorVariant variant) {
  const double r2 = b.r * b.r;
  const double tx = b.x.trace(), txp = b.x_p.trace();
  const Mat2 yy = b.y_p * b.y;  // Y'Y
  const double tyy = yy.trace();
  const double txyy = (b.x * b.y * b.y_p).trace();
  const double txpyy = (b.x_p * b.y_p * b.y).trace();
  const double tyyyy = (yy * yy).trace();
  const double second = 0.25 * (1.0 + 0.5 * r2 + tx / 4.0 + txp / 4.0 + tyy / 8.0);
  const double bracket = 32 * tx * txp - 16 * txyy - 16 * txpyy - 24 * tx * tx - 24 * txp * txp + 2 * tyyyy +
                         tyy * tyy - 8 * tx * tyy - 8 * txp * tyy;
  const double cross = 2 * r2 * tx + 2 * r2 * txp + r2 * tyy;
  const double k = variant == TaylorVariant::as_printed ? 2.0 : 1.0;
  return second + k * (3.0 / 32.0 * r2 * r2 + bracket / 2048.0 + cross / 64.0);
}

namespace {

double k2_or_nan(const FrequencySet& E, const SurfacePoint& a, const SurfacePoint& b, int nodes) {
  KacRiceBlocks blk;
  try {
    blk = kac_rice_blocks(E, a, b);
  } catch (const RuntimeError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double gap = 1.0 - blk.r * blk.r;
  return expected_norm_product(blk.theta(), nodes) / (2.0 * kPi * std::sqrt(gap));
}

// Replace NaN entries of the pair matrix by the mean of finite entries of the
// same row over the nearest nodes of the column.
long fill_clamped(Eigen::MatrixXd& K, const std::vector<SurfaceNode>& nodes, int neighbours = 8) {
  const long Q = long(nodes.size());
  long clamped = 0;
  Eigen::MatrixXd out = K;
  for (long i = 0; i < Q; ++i)
    for (long j = 0; j < Q; ++j) {
      if (!std::isnan(K(i, j))) continue;
      ++clamped;
      std::vector<std::pair<double, long>> near;
      for (long k = 0; k < Q; ++k)
        if (k != j && !std::isnan(K(i, k))) near.push_back({(nodes[k].position - nodes[j].position).norm(), k});
      std::partial_sort(near.begin(), near.begin() + std::min<long>(neighbours, long(near.size())), near.end());
      double s = 0.0;
      int c = 0;
      for (int t = 0; t < neighbours && t < int(near.size()); ++t, ++c) s += K(i, near[t].second);
      out(i, j) = c > 0 ? s / c : 0.0;
    }
  K = out;
  return clamped;
}

}  // namespace

SecondMoment second_moment(const FrequencySet& E, const Surface& s, const SecondMomentOptions& opts) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  SecondMoment out;
  const Surface outer = s.with_order(opts.outer_order);
  const auto& nodes = outer.nodes();
  const double M = E.spectral_scale();
  out.mean = expected_length(E.m(), area(s));

  if (s.spec().kind == SurfaceKind::sphere) {
    out.method = "polar";
    const double rho = s.spec().radius;
    const Vec3 c = s.spec().center;
    GaussRule psi = gauss_legendre(opts.inner_radial, 0.0, kPi);
    const int nphi = opts.inner_angular;
    std::vector<double> inner(nodes.size(), 0.0);
    long clamped = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : clamped)
    for (long i = 0; i < long(nodes.size()); ++i) {
      const Vec3 n = nodes[i].normal;
      auto T = tangent_frame(n);
      SurfacePoint a{nodes[i].position, n};
      double acc = 0.0;
      for (std::size_t p = 0; p < psi.nodes.size(); ++p) {
        double ps = psi.nodes[p];
        double ring = 0.0;
        int good = 0;
        for (int q = 0; q < nphi; ++q) {
          double ph = 2.0 * kPi * q / nphi;
          Vec3 np = std::cos(ps) * n + std::sin(ps) * (std::cos(ph) * T.col(0) + std::sin(ph) * T.col(1));
          np.normalize();
          double k = k2_or_nan(E, a, {c + rho * np, np}, opts.nodes);
          if (std::isnan(k)) {
            ++clamped;
            continue;
          }
          ring += k;
          ++good;
        }
        if (good > 0) acc += psi.weights[p] * rho * rho * std::sin(ps) * 2.0 * kPi * ring / good;
      }
      inner[i] = acc;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) total += nodes[i].weight * inner[i];
    out.value = M * total;
    out.pairs = long(nodes.size()) * long(psi.nodes.size()) * nphi;
    out.clamped = clamped;
  } else {
    out.method = "product";
    const long Q = long(nodes.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Constant(Q, Q, std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < Q; ++i)
      for (long j = i + 1; j < Q; ++j) {
        double k = k2_or_nan(E, {nodes[i].position, nodes[i].normal}, {nodes[j].position, nodes[j].normal}, opts.nodes);
        K(i, j) = k;
        K(j, i) = k;
      }
    out.clamped = fill_clamped(K, nodes);
    double total = 0.0;
    for (long i = 0; i < Q; ++i)
      for (long j = 0; j < Q; ++j) total += nodes[i].weight * nodes[j].weight * K(i, j);
    out.value = M * total;
    out.pairs = Q * Q;
  }
  out.variance = out.value - out.mean * out.mean;
  return out;
}

MomentKind parse_moment_kind(const std::string& s) {
  if (s == "r2") return MomentKind::r2;
  if (s == "r4") return MomentKind::r4;
  if (s == "trX" || s == "trx" || s == "tr_x") return MomentKind::tr_x;
  if (s == "trYY" || s == "tryy" || s == "tr_yy") return MomentKind::tr_yy;
  throw InvalidArgument("unsupported moment kind: " + s);
}

MomentIntegral moment_integral(const FrequencySet& E, const Surface& s, MomentKind kind, int order) {
  if (E.empty()) throw InvalidArgument("empty frequency set");
  const Surface grid = s.with_order(order);
  const auto& nodes = grid.nodes();
  const long Q = long(nodes.size());
  const double N = double(E.size());
  const double A = area(s);
  MomentIntegral out;
  Eigen::MatrixXd V(Q, Q);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < Q; ++i)
    for (long j = 0; j < Q; ++j) {
      if (kind == MomentKind::r2 || kind == MomentKind::r4) {
        double r = covariance(E, nodes[i].position - nodes[j].position);
        V(i, j) = kind == MomentKind::r2 ? r * r : r * r * r * r;
        continue;
      }
      try {
        auto b = kac_rice_blocks(E, {nodes[i].position, nodes[i].normal}, {nodes[j].position, nodes[j].normal});
        V(i, j) = kind == MomentKind::tr_x ? b.x.trace() : (b.y_p * b.y).trace();
      } catch (const RuntimeError&) {
        V(i, j) = std::numeric_limits<double>::quiet_NaN();
      }
    }
  out.clamped = fill_clamped(V, nodes);
  for (long i = 0; i < Q; ++i)
    for (long j = 0; j < Q; ++j) out.numeric += nodes[i].weight * nodes[j].weight * V(i, j);
  switch (kind) {
    case MomentKind::r2: {
      out.prediction = A * A / N;
      double spec = 0.0;
      for (const auto& p : E.points())
        for (const auto& q : E.points()) spec += std::norm(oscillatory_integral(grid, p - q));
      out.spectral = spec / (N * N);
      break;
    }
    case MomentKind::r4: out.prediction = 3.0 * A * A / (N * N); break;
    case MomentKind::tr_x: out.prediction = -2.0 * A * A / N - 2.0 * A * A / (N * N); break;
    case MomentKind::tr_yy: {
      double H = h_functional(s, MeasureOnSphere::spectral(E));
      double I = interaction_integral(s, 2);
      out.prediction = 3.0 / N * (A * A + 3.0 * H) + (-2.0 * A * A - 2.0 * I) / (N * N);
      break;
    }
  }
  return out;
}

}  // namespace arw
