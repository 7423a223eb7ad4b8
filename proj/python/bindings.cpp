#include "arw/chaos.hpp"
#include "arw/correlations.hpp"
#include "arw/kacrice.hpp"
#include "arw/lattice.hpp"
#include "arw/limit.hpp"
#include "arw/nodal.hpp"
#include "arw/rng.hpp"
#include "arw/surface.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace arw;

namespace {

FrequencyPtr freq(long m) {
  auto E = std::make_shared<const FrequencySet>(FrequencySet::enumerate(m));
  if (E->empty()) throw InvalidArgument("m is not a sum of three squares");
  return E;
}

Eigen::MatrixXi point_matrix(const std::vector<LatticePoint>& pts) {
  Eigen::MatrixXi out(pts.size(), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) out.row(i) << pts[i].x, pts[i].y, pts[i].z;
  return out;
}

Surface make_surface(const std::string& kind, double radius, double angle, const Vec3& center, int order) {
  SurfaceSpec s;
  if (kind == "sphere") s = SurfaceSpec::sphere(radius, center);
  else if (kind == "hemisphere") s = SurfaceSpec::hemisphere(radius, center);
  else if (kind == "cap") s = SurfaceSpec::cap(radius, angle, center);
  else throw InvalidArgument("unknown surface kind: " + kind);
  s.validate();
  return Surface::builtin(s, order);
}

py::dict report_dict(const CorrelationReport& r) {
  py::dict d;
  d["m"] = r.m;
  d["N"] = r.n;
  d["c2"] = r.c2;
  d["c4"] = r.c4;
  d["x4"] = r.x4;
  d["d4"] = r.d4;
  d["c6"] = r.c6;
  d["s2"] = r.s2;
  d["s4"] = r.s4;
  d["s6"] = r.s6;
  d["rank_key"] = r.rank_key();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Nodal statistics of random arithmetic waves on surfaces";
  mod.attr("__version__") = kVersion;

  py::register_exception<InvalidArgument>(mod, "InvalidArgument", PyExc_ValueError);
  py::register_exception<RuntimeError>(mod, "ArwRuntimeError", PyExc_RuntimeError);

  mod.def("representable", &representable, py::arg("m"));
  mod.def("admissible", &admissible, py::arg("m"));
  mod.def("lattice_points", [](long m) { return point_matrix(FrequencySet::enumerate(m).points()); }, py::arg("m"));
  mod.def("half_points", [](long m) { return point_matrix(FrequencySet::enumerate(m).half()); }, py::arg("m"));
  mod.def("correlation_report", [](long m) { return report_dict(correlation_report(*freq(m))); }, py::arg("m"));
  mod.def("correlation_counts", [](long m, int ell) { return correlation_counts(*freq(m), ell); }, py::arg("m"), py::arg("ell"));
  mod.def("separation_sum", [](long m, int ell) { return separation_sum(*freq(m), ell); }, py::arg("m"), py::arg("ell"));
  mod.def(
      "scan",
      [](long lo, long hi, long budget) {
        py::list out;
        for (const auto& r : scan_well_separated(lo, hi, budget).ranked) out.append(report_dict(r));
        return out;
      },
      py::arg("m_lo"), py::arg("m_hi"), py::arg("budget") = 0);

  py::class_<Surface>(mod, "Surface")
      .def(py::init(&make_surface), py::arg("kind") = "sphere", py::arg("radius") = 0.24, py::arg("angle") = kPi,
           py::arg("center") = Vec3(0.5, 0.5, 0.5), py::arg("order") = int(Surface::kDefaultOrder))
      .def_property_readonly("label", &Surface::label)
      .def("area", [](const Surface& s) { return area(s); })
      .def("interaction_integral", [](const Surface& s, int k) { return interaction_integral(s, k); }, py::arg("k"))
      .def("h_uniform", [](const Surface& s) { return h_uniform_analytic(s); })
      .def("is_static", [](const Surface& s, double tol) { return is_static(s, tol).is_static; }, py::arg("tol") = 1e-4);

  py::class_<Wave>(mod, "Wave")
      .def(py::init([](long m, std::uint64_t seed) { return Wave::sample(freq(m), seed); }), py::arg("m"), py::arg("seed"))
      .def("value", &Wave::value, py::arg("x"))
      .def("gradient", &Wave::gradient, py::arg("x"))
      .def("evaluate", &Wave::evaluate, py::arg("points"))
      .def_property_readonly("m", [](const Wave& w) { return w.frequencies().m(); })
      .def_property_readonly("seed", &Wave::seed)
      .def_property_readonly("coefficients", &Wave::coefficients);

  mod.def("covariance", [](long m, const Vec3& x) { return covariance(*freq(m), x); }, py::arg("m"), py::arg("x"));
  mod.def("expected_length", &expected_length, py::arg("m"), py::arg("area"));
  mod.def("minimum_resolution", &minimum_resolution, py::arg("m"), py::arg("multiplier") = 1.0);
  mod.def("nodal_curve_length", &nodal_curve_length, py::arg("wave"), py::arg("surface"), py::arg("resolution"));
  mod.def("nodal_area", &nodal_area, py::arg("wave"), py::arg("resolution"));
  mod.def(
      "monte_carlo",
      [](long m, const Surface& s, long samples, std::uint64_t seed, bool with_area, double multiplier) {
        SimulationOptions o;
        o.samples = samples;
        o.seed = seed;
        o.with_area = with_area;
        o.multiplier = multiplier;
        SimulationStats st;
        {
          py::gil_scoped_release release;
          st = monte_carlo(freq(m), s, o);
        }
        py::dict d;
        d["lengths"] = st.lengths;
        d["areas"] = st.areas;
        d["mean"] = st.mean;
        d["var"] = st.variance;
        d["predicted_mean"] = st.predicted_mean();
        d["resolution"] = st.resolution;
        return d;
      },
      py::arg("m"), py::arg("surface"), py::arg("samples") = 100, py::arg("seed") = 1, py::arg("with_area") = false,
      py::arg("multiplier") = 2.0);

  mod.def("hermite", &hermite, py::arg("q"), py::arg("t"));
  mod.def("alpha", &alpha, py::arg("n"), py::arg("l"));
  mod.def(
      "chaos_projections",
      [](const Wave& w, const Surface& s) {
        auto p = chaos_projections(w, s);
        return py::make_tuple(p.l0, p.l2, p.l4);
      },
      py::arg("wave"), py::arg("surface"));
  mod.def(
      "predict_variance",
      [](long m, const Surface& s, const std::string& regime) { return predict_variance(*freq(m), s, parse_regime(regime)); },
      py::arg("m"), py::arg("surface"), py::arg("regime"));
  mod.def(
      "limit_coefficients",
      [](const Surface& s) {
        auto c = limit_coefficients(s);
        py::dict d;
        d["diag"] = c.c_diag;
        d["cross"] = c.c_cross;
        d["variance_coefficients"] = c.variance_coefficients;
        d["variance_closed"] = c.variance_closed;
        d["static"] = c.static_surface;
        return d;
      },
      py::arg("surface"));
  mod.def("sample_limit", py::overload_cast<const Surface&, long, std::uint64_t>(&sample_limit), py::arg("surface"),
          py::arg("count"), py::arg("seed") = 1);
  mod.def(
      "two_point",
      [](long m, const Vec3& p, const Vec3& n, const Vec3& pp, const Vec3& np) {
        auto v = two_point_exact(*freq(m), {p, n}, {pp, np});
        return py::make_tuple(v.exact, v.se, v.taylor);
      },
      py::arg("m"), py::arg("sigma"), py::arg("normal"), py::arg("sigma_p"), py::arg("normal_p"));
}
