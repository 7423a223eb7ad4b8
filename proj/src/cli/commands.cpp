#include "cli/internal.hpp"

#include "arw/chaos.hpp"
#include "arw/correlations.hpp"
#include "arw/kacrice.hpp"
#include "arw/lattice.hpp"
#include "arw/limit.hpp"
#include "arw/nodal.hpp"
#include "arw/rng.hpp"
#include "arw/stats.hpp"

#include <cmath>

namespace arw::cli {

namespace {

FrequencyPtr frequencies(const RunConfig& cfg) {
  auto E = std::make_shared<const FrequencySet>(cached_enumerate(cfg.m, cfg.cache));
  if (E->empty()) throw InvalidArgument("m = " + std::to_string(cfg.m) + " is not a sum of three squares");
  return E;
}

Surface surface_of(const RunConfig& cfg) { return Surface::builtin(parse_surface(cfg.surface), cfg.order); }

Regime regime_for(const Surface& s) {
  return is_static(s, 1e-4).is_static ? Regime::static_surface : Regime::generic;
}

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json correlation_json(const CorrelationReport& r) {
  Json j;
  j["m"] = r.m;
  j["N"] = r.n;
  j["c2"] = r.c2;
  j["c4"] = r.c4;
  j["x4"] = r.x4;
  j["d4"] = r.d4;
  j["c6"] = r.c6 ? Json(*r.c6) : Json(nullptr);
  j["s2"] = r.s2;
  j["s4"] = r.s4 ? Json(*r.s4) : Json(nullptr);
  j["s6"] = r.s6 ? Json(*r.s6) : Json(nullptr);
  j["n2s2"] = r.normalized(r.s2);
  j["n2s4"] = r.s4 ? Json(r.normalized(*r.s4)) : Json(nullptr);
  j["n2s6"] = r.s6 ? Json(r.normalized(*r.s6)) : Json(nullptr);
  j["rank_key"] = r.rank_key();
  return j;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

}  // namespace

Json cmd_lattice(const RunConfig& cfg) {
  Json j;
  j["m"] = cfg.m;
  auto dir = output_dir(cfg);
  if (!representable(cfg.m)) {
    j["N"] = 0;
    j["representable"] = false;
  } else {
    FrequencySet E = cached_enumerate(cfg.m, cfg.cache);
    SpectralMoments sm = spectral_moments(E, 4);
    j["N"] = E.size();
    j["representable"] = true;
    j["admissible"] = admissible(cfg.m);
    j["half"] = E.half().size();
    j["psi"] = sm.psi;
    j["phi"] = sm.phi;
    Json mom = Json::object();
    for (const auto& [k, v] : sm.moments)
      mom[std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2])] = v;
    j["moments"] = mom;
  }
  write_text(dir / "lattice.json", j.dump(2) + "\n");
  write_manifest(dir, cfg, {{"outputs", {"lattice.json"}}});
  return j;
}

Json cmd_corr(const RunConfig& cfg) {
  auto E = frequencies(cfg);
  Json j = correlation_json(correlation_report(*E));
  auto dir = output_dir(cfg);
  write_text(dir / "corr.json", j.dump(2) + "\n");
  write_manifest(dir, cfg, {{"outputs", {"corr.json"}}});
  return j;
}

Json cmd_scan(const RunConfig& cfg) {
  if (cfg.m_to < cfg.m_from) throw InvalidArgument("--to must be at least --from");
  ScanResult res = scan_well_separated(cfg.m_from, cfg.m_to, cfg.budget);
  Table t;
  t.header = {"m", "N", "c4", "x4", "d4", "c6", "s2", "s4", "s6", "n2s2", "n2s4", "n2s6"};
  for (const auto& r : res.ranked) {
    auto n2 = [&](const std::optional<double>& s) { return s ? std::optional(r.normalized(*s)) : std::nullopt; };
    t.rows.push_back({fmt(r.m), fmt(r.n), fmt(long(r.c4)), fmt(long(r.x4)), fmt(long(r.d4)),
                      r.c6 ? fmt(long(*r.c6)) : "", fmt(r.s2), opt_cell(r.s4), opt_cell(r.s6),
                      fmt(r.normalized(r.s2)), opt_cell(n2(r.s4)), opt_cell(n2(r.s6))});
  }
  auto dir = output_dir(cfg);
  std::string file = write_table(dir, "scan", t, cfg);
  Json j;
  j["from"] = cfg.m_from;
  j["to"] = cfg.m_to;
  j["budget"] = cfg.budget;
  j["ranked"] = res.ranked.size();
  j["evaluated"] = res.evaluated;
  j["certified"] = res.best_certified;
  if (!res.ranked.empty()) j["best"] = correlation_json(res.ranked.front());
  j["table"] = (dir / file).string();
  write_manifest(dir, cfg, {{"outputs", {file}}});
  return j;
}

Json cmd_surface(const RunConfig& cfg) {
  SurfaceSpec spec;
  Vec3 c = parse_point(cfg.center);
  if (cfg.kind == "sphere") spec = SurfaceSpec::sphere(cfg.radius, c);
  else if (cfg.kind == "hemisphere") spec = SurfaceSpec::hemisphere(cfg.radius, c);
  else spec = SurfaceSpec::cap(cfg.radius, cfg.angle, c);
  spec.validate();
  Surface s = Surface::builtin(spec, cfg.order);
  StaticityReport st = is_static(s, 1e-4);
  Json j;
  j["surface"] = s.label();
  j["A"] = area(s);
  j["I2"] = interaction_integral(s, 2);
  j["I4"] = interaction_integral(s, 4);
  j["H_uniform"] = h_uniform_analytic(s);
  j["static"] = st.is_static;
  j["static_target"] = st.target;
  j["static_max_deviation"] = st.max_deviation;
  auto dir = output_dir(cfg);
  write_text(dir / "surface.json", j.dump(2) + "\n");
  write_manifest(dir, cfg, {{"outputs", {"surface.json"}}});
  return j;
}

Json cmd_simulate(const RunConfig& cfg) {
  auto E = frequencies(cfg);
  Surface s = surface_of(cfg);
  SimulationOptions opts;
  opts.samples = cfg.samples;
  opts.resolution = cfg.resolution;
  opts.multiplier = cfg.multiplier;
  opts.seed = cfg.seed;
  opts.with_area = cfg.with_area;
  SimulationStats st = monte_carlo(E, s, opts);

  Table t;
  t.header = {"sample", "seed", "length"};
  if (st.areas) t.header.push_back("area");
  for (long i = 0; i < st.samples; ++i) {
    std::vector<std::string> row = {fmt(i), std::to_string(derive_seed(cfg.seed, std::uint64_t(i))), fmt(st.lengths[i])};
    if (st.areas) row.push_back(fmt((*st.areas)[i]));
    t.rows.push_back(std::move(row));
  }
  auto dir = output_dir(cfg);
  std::string file = write_table(dir, "lengths", t, cfg);

  Json j;
  j["m"] = st.m;
  j["N"] = st.n;
  j["surface"] = st.surface;
  j["samples"] = st.samples;
  j["seed"] = st.seed;
  j["resolution"] = st.resolution;
  j["mean"] = st.mean;
  j["var"] = st.variance;
  j["se"] = st.standard_error();
  j["predicted_mean"] = st.predicted_mean();
  j["ratio"] = st.mean / st.predicted_mean();
  Regime rg = regime_for(s);
  j["regime"] = to_string(rg);
  try {
    double pv = predict_variance(*E, s, rg);
    j["predicted_var"] = pv;
    j["ratio_var"] = st.variance / pv;
  } catch (const InvalidArgument&) {
    j["predicted_var"] = nullptr;
    j["ratio_var"] = nullptr;
  }
  if (st.areas) {
    j["area_resolution"] = st.area_resolution;
    Moments am = describe(*st.areas);
    j["area_mean"] = am.mean;
    j["area_var"] = am.variance;
    j["corr_length_area"] = correlation(st.lengths, *st.areas);
  }
  j["table"] = (dir / file).string();
  write_manifest(dir, cfg, {{"outputs", {file}}, {"summary", j}});
  return j;
}

Json cmd_chaos(const RunConfig& cfg) {
  auto E = frequencies(cfg);
  Surface s = surface_of(cfg);
  SimulationOptions opts;
  opts.samples = cfg.samples;
  opts.multiplier = cfg.multiplier;
  opts.seed = cfg.seed;
  SimulationStats st = monte_carlo(E, s, opts);
  std::vector<Wave> waves;
  waves.reserve(cfg.samples);
  for (long i = 0; i < cfg.samples; ++i) waves.push_back(Wave::sample(E, derive_seed(cfg.seed, std::uint64_t(i))));
  std::vector<ChaosProjections> pr = chaos_projections_batch(waves, s);

  Table t;
  t.header = {"sample", "L", "L0", "L2", "L4"};
  std::vector<double> l2(cfg.samples), l4(cfg.samples), rest(cfg.samples);
  for (long i = 0; i < cfg.samples; ++i) {
    t.rows.push_back({fmt(i), fmt(st.lengths[i]), fmt(pr[i].l0), fmt(pr[i].l2), fmt(pr[i].l4)});
    l2[i] = pr[i].l2;
    l4[i] = pr[i].l4;
    rest[i] = st.lengths[i] - pr[i].l0 - pr[i].l2 - pr[i].l4;
  }
  auto dir = output_dir(cfg);
  std::string file = write_table(dir, "chaos", t, cfg);
  Json j;
  j["m"] = st.m;
  j["N"] = st.n;
  j["surface"] = st.surface;
  j["samples"] = st.samples;
  j["mean"] = st.mean;
  j["var"] = st.variance;
  j["L0"] = pr.empty() ? 0.0 : pr[0].l0;
  j["var_L2"] = describe(l2).variance;
  j["var_L4"] = describe(l4).variance;
  j["cov_L2_L4"] = covariance(l2, l4);
  j["var_remainder"] = describe(rest).variance;
  j["table"] = (dir / file).string();
  write_manifest(dir, cfg, {{"outputs", {file}}, {"summary", j}});
  return j;
}

Json cmd_limit_sample(const RunConfig& cfg) {
  Surface s = surface_of(cfg);
  LimitCoefficients c = limit_coefficients(s);
  std::vector<double> xs = sample_limit(c, cfg.samples, cfg.seed);
  Table t;
  t.header = {"sample", "M"};
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({fmt(long(i)), fmt(xs[i])});
  auto dir = output_dir(cfg);
  std::string file = write_table(dir, "limit", t, cfg);
  Moments mo = describe(xs);
  Json j;
  j["surface"] = s.label();
  j["n"] = cfg.samples;
  j["mean"] = mo.mean;
  j["var"] = mo.variance;
  j["variance_coefficients"] = c.variance_coefficients;
  j["variance_closed"] = c.variance_closed;
  j["static"] = c.static_surface;
  if (!c.tag.empty()) j["tag"] = c.tag;
  if (s.spec().kind == SurfaceKind::sphere) j["ks_chi2_5"] = ks_distance(xs, limit_sphere_cdf);
  j["table"] = (dir / file).string();
  write_manifest(dir, cfg, {{"outputs", {file}}, {"summary", j}});
  return j;
}

namespace {

SurfacePoint point_on(const Surface& s, const Vec3& p) {
  Vec3 d = p - s.spec().center;
  if (std::abs(d.norm() - s.spec().radius) > 1e-9 * std::max(1.0, s.spec().radius))
    throw InvalidArgument("point is not on the surface");
  return {p, d.normalized()};
}

Json kacrice_2pt(const RunConfig& cfg, const FrequencySet& E, const Surface& s) {
  SurfacePoint a, b;
  if (cfg.inputs.size() == 2) {
    a = point_on(s, parse_point(cfg.inputs[0]));
    b = point_on(s, parse_point(cfg.inputs[1]));
  } else {
    CounterStream rs(cfg.seed);
    const auto& nodes = s.nodes();
    auto pick = [&](std::uint64_t k) {
      const auto& nd = nodes[std::min<std::size_t>(nodes.size() - 1, std::size_t(rs.uniform(k) * nodes.size()))];
      return SurfacePoint{nd.position, nd.normal};
    };
    a = pick(0);
    b = pick(1);
  }
  TwoPointOptions o;
  if (cfg.budget > 0) {
    o.method = TwoPointMethod::qmc;
    o.budget = cfg.budget;
    o.seed = cfg.seed;
  }
  TwoPointValue v = two_point_exact(E, a, b, o);
  Json j;
  j["sigma"] = vec_json(a.position);
  j["sigma_p"] = vec_json(b.position);
  j["method"] = cfg.budget > 0 ? "qmc" : "quadrature";
  j["r"] = v.r;
  j["exact"] = v.exact;
  j["se"] = v.se;
  j["taylor"] = v.taylor;
  j["taylor_as_printed"] = two_point_taylor(v.blocks, TaylorVariant::as_printed);
  return j;
}

Json kacrice_second_moment(const FrequencySet& E, const Surface& s) {
  SecondMomentOptions o;
  SecondMoment fine = second_moment(E, s, o);
  SecondMomentOptions c = o;
  c.outer_order = std::max(2, o.outer_order * 3 / 4);
  c.inner_radial = std::max(4, o.inner_radial * 3 / 4);
  c.inner_angular = std::max(4, o.inner_angular * 3 / 4);
  SecondMoment coarse = second_moment(E, s, c);
  Json j;
  j["value"] = fine.value;
  j["se"] = std::abs(fine.value - coarse.value);
  j["mean"] = fine.mean;
  j["variance"] = fine.variance;
  j["variance_se"] = std::abs(fine.variance - coarse.variance);
  j["pairs"] = fine.pairs;
  j["clamped"] = fine.clamped;
  j["method"] = fine.method;
  Regime rg = regime_for(s);
  j["regime"] = to_string(rg);
  try {
    j["predicted_var"] = predict_variance(E, s, rg);
  } catch (const InvalidArgument&) {
    j["predicted_var"] = nullptr;
  }
  return j;
}

Json kacrice_moment(const FrequencySet& E, const Surface& s, const std::string& name) {
  MomentKind kind = parse_moment_kind(name);
  const int order = 12;
  MomentIntegral fine = moment_integral(E, s, kind, order);
  MomentIntegral coarse = moment_integral(E, s, kind, order * 3 / 4);
  Json j;
  j["moment"] = name;
  j["numeric"] = fine.numeric;
  j["se"] = std::abs(fine.numeric - coarse.numeric);
  j["prediction"] = fine.prediction;
  if (kind == MomentKind::r2) j["spectral"] = fine.spectral;
  j["clamped"] = fine.clamped;
  return j;
}

}  // namespace

Json cmd_kacrice(const RunConfig& cfg) {
  auto E = frequencies(cfg);
  Surface s = surface_of(cfg);
  Json j;
  j["m"] = cfg.m;
  j["N"] = E->size();
  j["surface"] = s.label();
  j["op"] = cfg.op;
  Json r;
  if (cfg.op == "2pt") r = kacrice_2pt(cfg, *E, s);
  else if (cfg.op == "second-moment") r = kacrice_second_moment(*E, s);
  else if (cfg.op.rfind("moment:", 0) == 0) r = kacrice_moment(*E, s, cfg.op.substr(7));
  else throw InvalidArgument("unknown --op '" + cfg.op + "'");
  for (auto it = r.begin(); it != r.end(); ++it) j[it.key()] = it.value();
  auto dir = output_dir(cfg);
  write_text(dir / "kacrice.json", j.dump(2) + "\n");
  write_manifest(dir, cfg, {{"outputs", {"kacrice.json"}}});
  return j;
}

}  // namespace arw::cli
