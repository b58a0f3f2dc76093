// Python bindings: curves, sampled sets, Chebyshev solves, constants,
// transfinite diameters, Robin constants, extremal functions and the
// command-line entry points.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvecheb/commands.hpp"
#include "curvecheb/config.hpp"
#include "curvecheb/error.hpp"
#include "curvecheb/extremal.hpp"
#include "curvecheb/transfinite.hpp"

namespace py = pybind11;
using namespace curvecheb;

namespace {

using Terms = std::vector<std::tuple<int, int, cplx>>;

Terms to_terms(const BivarPoly& p) {
  Terms out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m.a, m.b, c);
  return out;
}

BivarPoly from_terms(const Terms& terms) {
  std::vector<std::pair<Monomial, cplx>> raw;
  for (const auto& [a, b, c] : terms) {
    if (a < 0 || b < 0) invalid("exponents must be nonnegative");
    raw.push_back({{a, b}, c});
  }
  return BivarPoly::from_terms(raw);
}

std::vector<std::pair<cplx, cplx>> to_pairs(const std::vector<Point>& pts) {
  std::vector<std::pair<cplx, cplx>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.z1, p.z2);
  return out;
}

std::vector<Point> from_pairs(const std::vector<std::pair<cplx, cplx>>& pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& [z1, z2] : pts) out.push_back({z1, z2});
  return out;
}

py::dict solve_dict(const ChebSolve& s) {
  py::dict d;
  d["n"] = s.n();
  d["degree"] = s.total_degree();
  d["norm"] = s.norm;
  d["tn"] = s.tn;
  d["lower_bound"] = s.lower_bound;
  d["iterations"] = s.iterations;
  d["converged"] = s.converged;
  d["ridge_used"] = s.ridge_used;
  d["error"] = s.error;
  d["minimizer"] = to_terms(s.minimizer);
  return d;
}

py::dict estimate_dict(const ConstantEstimate& e) {
  py::dict d;
  d["spec"] = e.spec;
  d["values"] = e.values;
  d["estimate"] = e.estimate;
  d["method"] = to_string(e.method);
  d["lower"] = e.lower;
  d["upper"] = e.upper;
  d["tail_mean"] = e.tail_mean;
  d["reliable"] = e.reliable;
  return d;
}

}  // namespace

PYBIND11_MODULE(curvecheb, m) {
  m.doc() = "Chebyshev constants, Robin constants, transfinite diameters and extremal-like functions on algebraic "
            "curves in C^2";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInput)
        PyErr_SetString(PyExc_ValueError, e.what());
      else
        PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  py::class_<Curve>(m, "Curve")
      .def(py::init([](const Terms& terms, bool relaxed) { return Curve::create(from_terms(terms), {.relaxed = relaxed}); }),
           py::arg("terms"), py::arg("relaxed") = false, "Curve {P = 0} from (a, b, coefficient) terms of P.")
      .def_static("hyperbola", [] { return Curve::create(curves::hyperbola()); })
      .def_static("a_eps", [](double eps) { return Curve::create(curves::a_eps(eps), {.relaxed = true}); },
                  py::arg("eps"), "z1 z2 - eps, always relaxed.")
      .def_static("random", [](int d, unsigned long long seed) { return Curve::create(curves::random_curve(d, seed)); },
                  py::arg("degree"), py::arg("seed"))
      .def_property_readonly("degree", &Curve::degree)
      .def_property_readonly("relaxed", &Curve::relaxed)
      .def_property_readonly("directions", &Curve::directions)
      .def_property_readonly("terms", [](const Curve& c) { return to_terms(c.defining()); })
      .def("v", [](const Curve& c, int k) { return to_terms(c.v(k)); }, py::arg("k"))
      .def("normal_form", [](const Curve& c, const Terms& p) { return to_terms(c.normal_form(from_terms(p))); })
      .def("cjk", [](const Curve& c) { return cjk_table(c).entries; })
      .def("__repr__", &Curve::describe);

  py::class_<SampledSet>(m, "SampledSet")
      .def_property_readonly("points", [](const SampledSet& K) { return to_pairs(K.points()); })
      .def_property_readonly("max_residual", &SampledSet::max_residual)
      .def("__len__", &SampledSet::size)
      .def("__repr__", [](const SampledSet& K) { return K.descriptor().describe(); });

  m.def(
      "sample",
      [](const Curve& curve, const std::string& kind, py::dict params, int resolution) {
        auto get = [&](const char* key, double def) { return params.contains(key) ? params[key].cast<double>() : def; };
        SetShape shape;
        if (kind == "Z1Disk")
          shape = Z1Disk{get("r", 1.0)};
        else if (kind == "Z2Interval")
          shape = Z2Interval{get("lo", -1.0), get("hi", 1.0)};
        else if (kind == "AbsV1V2Torus")
          shape = AbsV1V2Torus{get("r1", 0.5), get("r2", 0.5)};
        else if (kind == "BidiskTrace")
          shape = BidiskTrace{get("r1", 1.0), get("r2", 1.0)};
        else if (kind == "ParamCurve")
          shape = ParamCurve{params["z1"].cast<std::vector<cplx>>()};
        else if (kind == "PointCloud")
          shape = PointCloud{from_pairs(params["points"].cast<std::vector<std::pair<cplx, cplx>>>())};
        else
          invalid("unknown set kind '" + kind + "'");
        return sample(curve, {shape, resolution});
      },
      py::arg("curve"), py::arg("kind"), py::arg("params") = py::dict(), py::arg("resolution") = 1024,
      "Samples a set on the curve; params holds r, lo/hi, r1/r2, z1 or points depending on kind.");

  m.def("sup_norm", [](const Terms& p, const SampledSet& K) { return sup_norm(from_terms(p), K); });

  m.def(
      "chebyshev_solve",
      [](const Curve& curve, const SampledSet& K, const std::string& cls, int n) {
        return solve_dict(chebyshev_solve(curve, parse_class(curve, cls), n, K));
      },
      py::arg("curve"), py::arg("K"), py::arg("cls"), py::arg("n"),
      "Minimal sup norm over K of the class at parameter n. Class syntax as in the CLI, e.g. 'MQ:v1', 'Z:0'.");

  m.def(
      "estimate_class",
      [](const Curve& curve, const SampledSet& K, const std::string& cls, int max_degree) {
        return estimate_dict(estimate_class(curve, parse_class(curve, cls), K, max_degree));
      },
      py::arg("curve"), py::arg("K"), py::arg("cls"), py::arg("max_degree") = 16);

  m.def(
      "transfinite_diameter",
      [](const Curve& curve, const SampledSet& K, const std::string& basis, int max_degree) {
        const auto r = transfinite_diameter(curve, K, basis_from_string(basis), max_degree);
        py::dict d;
        d["estimate"] = r.estimate;
        d["raw"] = r.raw;
        std::vector<std::tuple<int, int, long long, double>> blocks;
        for (const auto& e : r.run.diam_estimates()) blocks.emplace_back(e.degree, e.count, e.degsum, e.value);
        d["blocks"] = blocks;
        d["points"] = to_pairs(r.run.points());
        return d;
      },
      py::arg("curve"), py::arg("K"), py::arg("basis") = "S", py::arg("max_degree") = 16);

  m.def(
      "log_vdm",
      [](const Curve& curve, const std::string& basis, const std::vector<std::pair<cplx, cplx>>& pts) {
        return log_vdm(curve, basis_from_string(basis), from_pairs(pts));
      },
      py::arg("curve"), py::arg("basis"), py::arg("points"));

  m.def(
      "robin_constants",
      [](const Curve& curve, const SampledSet& K, int max_degree) {
        const auto rep = robin_constants(curve, K, max_degree);
        py::list entries;
        for (const auto& e : rep.entries) {
          py::dict d;
          d["direction"] = e.direction.label();
          d["rho"] = e.rho;
          d["T"] = e.estimate.estimate;
          d["rho_poly"] = e.rho_poly;
          d["poly_gap"] = e.poly_gap;
          entries.append(d);
        }
        py::dict out;
        out["entries"] = entries;
        out["ordering"] = rep.ordering;
        out["strict"] = rep.strict;
        return out;
      },
      py::arg("curve"), py::arg("K"), py::arg("max_degree") = 16);

  m.def(
      "extremal",
      [](const Curve& curve, const SampledSet& K, const std::string& family, int k, int n,
         const std::vector<std::pair<cplx, cplx>>& pts) {
        const auto ap = extremal_build(curve, K, extremal_family_from_string(family), k, n);
        return extremal_eval(curve, ap, from_pairs(pts));
      },
      py::arg("curve"), py::arg("K"), py::arg("family"), py::arg("k"), py::arg("n"), py::arg("points"),
      "Values of the degree-n extremal-like function of the family (Vk or VkTilde) at the points.");

  m.def(
      "oracle",
      [](const Curve& curve, const SampledSet& K, const std::vector<std::pair<cplx, cplx>>& pts) {
        return oracle_eval(curve, K.descriptor(), from_pairs(pts));
      },
      py::arg("curve"), py::arg("K"), py::arg("points"), "Closed-form extremal function of K where one is known.");

  m.def(
      "probe_grid",
      [](const Curve& curve, const std::vector<double>& radii, int angles) {
        return to_pairs(probe_grid(curve, radii, angles));
      },
      py::arg("curve"), py::arg("radii"), py::arg("angles") = 5);

  m.def(
      "run",
      [](const std::string& command, const std::string& config_json, const std::string& out_dir) {
        RunConfig cfg = parse_config(config_json);
        cfg.out_dir = out_dir;
        cfg.validate();
        CommandResult r;
        if (command == "curve-info")
          r = cmd_curve_info(cfg);
        else if (command == "sample")
          r = cmd_sample(cfg);
        else if (command == "cheb")
          r = cmd_cheb(cfg, cfg.class_spec, 1, cfg.n_max, false);
        else if (command == "robin")
          r = cmd_robin(cfg);
        else if (command == "tfd")
          r = cmd_tfd(cfg);
        else if (command == "extremal")
          r = cmd_extremal(cfg);
        else if (command == "verify")
          r = cmd_verify(cfg);
        else
          invalid("unknown command '" + command + "'");
        return py::make_tuple(r.exit_code, r.report, r.files);
      },
      py::arg("command"), py::arg("config_json"), py::arg("out_dir"),
      "Runs a CLI command on a JSON config; returns (exit_code, report, files).");
}
