#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "tamecube/errors.hpp"
#include "tamecube/kernels.hpp"
#include "tamecube/replace.hpp"
#include "tamecube/report.hpp"
#include "tamecube/retract.hpp"
#include "tamecube/sexpr.hpp"
#include "tamecube/suites.hpp"
#include "tamecube/tame.hpp"

namespace py = pybind11;
using namespace tamecube;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ToleranceConfig tolerances(double eq_tol, double deriv_tol, int grid, std::uint64_t seed) {
  ToleranceConfig cfg{eq_tol, deriv_tol, grid, seed};
  cfg.validate();
  return cfg;
}

CubicalComplex as_complex(const py::object& k) {
  if (py::isinstance<py::str>(k)) return parse_complex(k.cast<std::string>());
  return k.cast<CubicalComplex>();
}

Region as_region(const py::object& k) { return as_complex(k); }

py::array_t<double> eval_many(const SmoothMap& f, py::array_t<double, py::array::c_style | py::array::forcecast> pts) {
  if (pts.ndim() != 2 || pts.shape(1) != f.in_dim()) {
    throw DimensionError("expected an array of shape (k, " + std::to_string(f.in_dim()) + ")");
  }
  const auto rows = pts.shape(0);
  py::array_t<double> out({rows, static_cast<py::ssize_t>(f.out_dim())});
  auto in = pts.unchecked<2>();
  auto o = out.mutable_unchecked<2>();
  for (py::ssize_t r = 0; r < rows; ++r) {
    const auto y = f(std::span<const double>(in.data(r, 0), f.in_dim()));
    for (std::size_t c = 0; c < y.size(); ++c) o(r, c) = y[c];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_tamecube, m) {
  m.doc() = "Smash functions, tame maps and admissible replacement on cubes";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<UnknownSuite>(m, "UnknownSuite", PyExc_ValueError);

  m.attr("SCHEMA_VERSION") = kReportSchemaVersion;

  m.def("flat_exp", &flat_exp, py::arg("t"));
  m.def("smooth_step", &smooth_step, py::arg("t"));
  m.def("smooth_step_integral", [](double s) { return smooth_step_integral(s); }, py::arg("s"));
  m.def("smash", [](double sigma, double tau, double t) { return smash({sigma, tau}, t); },
        py::arg("sigma"), py::arg("tau"), py::arg("t"));
  m.def("smash_profile", [](double sigma, double tau, double x) { return smash_profile({sigma, tau}, x); },
        py::arg("sigma"), py::arg("tau"), py::arg("x"));

  py::class_<SmoothMap>(m, "SmoothMap")
      .def_property_readonly("in_dim", &SmoothMap::in_dim)
      .def_property_readonly("out_dim", &SmoothMap::out_dim)
      .def("__call__", [](const SmoothMap& f, const std::vector<double>& p) { return f(p); }, py::arg("point"))
      .def("eval_many", &eval_many, py::arg("points"))
      .def("to_text", &serialize_map)
      .def("__repr__", [](const SmoothMap& f) { return "SmoothMap(" + serialize_map(f) + ")"; });

  py::class_<Homotopy>(m, "Homotopy")
      .def_property_readonly("space_dim", &Homotopy::space_dim)
      .def_property_readonly("out_dim", &Homotopy::out_dim)
      .def_property_readonly("map", &Homotopy::map)
      .def("__call__", [](const Homotopy& h, const std::vector<double>& x, double u) { return h(x, u); },
           py::arg("x"), py::arg("u"))
      .def("slice", [](const Homotopy& h, double u) { return slice(h, u); }, py::arg("u"));

  py::class_<CubicalComplex>(m, "CubicalComplex")
      .def_static("parse", [](const std::string& d) { return parse_complex(d); }, py::arg("descriptor"))
      .def_static("full", &CubicalComplex::full, py::arg("n"))
      .def_static("boundary", &CubicalComplex::boundary, py::arg("n"))
      .def_static("j_complex", &CubicalComplex::j_complex, py::arg("n"))
      .def_static("empty", &CubicalComplex::empty, py::arg("n"))
      .def_static("from_faces",
                  [](int n, const std::vector<std::string>& sigs) {
                    std::vector<Face> faces;
                    for (const auto& s : sigs) faces.push_back(Face::from_signature(s));
                    return CubicalComplex(n, std::move(faces));
                  },
                  py::arg("n"), py::arg("signatures"))
      .def_property_readonly("ambient_dim", &CubicalComplex::ambient_dim)
      .def_property_readonly("dim", &CubicalComplex::dim)
      .def_property_readonly("maximal_faces",
                             [](const CubicalComplex& k) {
                               std::vector<std::string> out;
                               for (const auto& f : k.maximal_faces()) out.push_back(f.signature());
                               return out;
                             })
      .def("contains", [](const CubicalComplex& k, const std::vector<double>& p) { return k.contains(p); },
           py::arg("point"))
      .def("skeleton", [](const CubicalComplex& k, int j) { return skeleton(k, j); }, py::arg("j"))
      .def("__eq__", [](const CubicalComplex& a, const CubicalComplex& b) { return a == b; });

  m.def("parse_map", [](const std::string& text) { return parse_map(text); }, py::arg("text"));
  m.def("serialize_map", &serialize_map, py::arg("f"));

  m.def("check_tame",
        [](const SmoothMap& f, const py::object& k, double eps, double eq_tol, double deriv_tol, int grid,
           std::uint64_t seed) {
          const Region r = as_region(k);
          const auto cfg = tolerances(eq_tol, deriv_tol, grid, seed);
          TamenessReport rep;
          {
            py::gil_scoped_release release;
            rep = check_tame(f, r, eps, cfg);
          }
          return to_python(to_json(rep));
        },
        py::arg("f"), py::arg("k"), py::arg("eps"), py::arg("eq_tol") = 1e-9, py::arg("deriv_tol") = 1e-6,
        py::arg("grid") = 33, py::arg("seed") = 0);
  m.def("check_admissible",
        [](const SmoothMap& f, const py::object& k, double eps, double eq_tol, double deriv_tol, int grid,
           std::uint64_t seed) {
          const Region r = as_region(k);
          const auto cfg = tolerances(eq_tol, deriv_tol, grid, seed);
          TamenessReport rep;
          {
            py::gil_scoped_release release;
            rep = check_admissible(f, r, eps, cfg);
          }
          return to_python(to_json(rep));
        },
        py::arg("f"), py::arg("k"), py::arg("eps"), py::arg("eq_tol") = 1e-9, py::arg("deriv_tol") = 1e-6,
        py::arg("grid") = 33, py::arg("seed") = 0);

  m.def("tame_replace",
        [](const SmoothMap& f, double sigma, double eps) {
          const Taming t = tame_replace(f, sigma, eps);
          return py::make_tuple(t.g, t.h);
        },
        py::arg("f"), py::arg("sigma"), py::arg("eps"));

  m.def("approx_retraction",
        [](int n, double eps, std::optional<double> sigma, std::optional<double> eps_prime) {
          RetractionParams p = RetractionParams::with_defaults(n, eps);
          if (sigma) p.sigma = *sigma;
          if (eps_prime) p.eps_prime = *eps_prime;
          return approx_retraction(p);
        },
        py::arg("n"), py::arg("eps"), py::arg("sigma") = py::none(), py::arg("eps_prime") = py::none());
  m.def("deformation_retraction",
        [](int n, double eps) {
          const auto d = deformation_retraction_homotopy(n, eps);
          py::dict info;
          info["retraction_eps"] = d.retraction.eps;
          info["tau_clamped"] = d.tau_clamped;
          info["retraction_capped"] = d.retraction_capped;
          info["notes"] = d.notes;
          return py::make_tuple(d.h, info);
        },
        py::arg("n"), py::arg("eps"));

  m.def("extend_tame",
        [](const SmoothMap& f, double eps, double sigma, std::optional<double> eps_prime,
           std::optional<double> sigma_prime) {
          if (!eps_prime && !sigma_prime) return extend_tame(f, eps, sigma);
          if (!eps_prime || !sigma_prime) throw DomainError("give both eps_prime and sigma_prime, or neither");
          return extend_tame(f, ExtensionParams{eps, sigma, *eps_prime, *sigma_prime});
        },
        py::arg("f"), py::arg("eps"), py::arg("sigma"), py::arg("eps_prime") = py::none(),
        py::arg("sigma_prime") = py::none());
  m.def("extend_to_jdelta", [](const SmoothMap& f, double eps) { return extend_to_jdelta(f, eps); },
        py::arg("f"), py::arg("eps"));

  m.def("concat_homotopy", [](const Homotopy& f, const Homotopy& g) { return concat_homotopy(f, g); },
        py::arg("f"), py::arg("g"));
  m.def("concat_maps", [](const SmoothMap& phi, const SmoothMap& psi) { return concat_maps(phi, psi); },
        py::arg("phi"), py::arg("psi"));

  m.def("admissible_replace",
        [](const SmoothMap& f, const py::object& k_obj, const py::object& l_obj, double eps, int grid,
           std::uint64_t seed) {
          const CubicalComplex k = as_complex(k_obj);
          const CubicalComplex l = as_complex(l_obj);
          ToleranceConfig cfg;
          cfg.grid_res = grid;
          cfg.seed = seed;
          cfg.validate();
          std::optional<Replacement> r;
          {
            py::gil_scoped_release release;
            r.emplace(admissible_replace(f, k, l, eps, cfg));
          }
          return py::make_tuple(r->g, r->h, to_python(to_json(r->trace)));
        },
        py::arg("f"), py::arg("k"), py::arg("l"), py::arg("eps"), py::arg("grid") = 33, py::arg("seed") = 0);

  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& suite, std::vector<int> n, std::vector<double> eps, int grid, double eq_tol,
           double deriv_tol, std::uint64_t seed) {
          SuiteConfig cfg;
          cfg.suite = suite;
          cfg.n = std::move(n);
          cfg.eps = std::move(eps);
          cfg.tol = {eq_tol, deriv_tol, grid, seed};
          Json report;
          {
            py::gil_scoped_release release;
            report = suite_report(cfg, run_suite(cfg));
          }
          return to_python(report);
        },
        py::arg("suite") = "all", py::arg("n") = std::vector<int>{1, 2, 3},
        py::arg("eps") = std::vector<double>{0.1, 0.25, 0.4}, py::arg("grid") = 33, py::arg("eq_tol") = 1e-9,
        py::arg("deriv_tol") = 1e-6, py::arg("seed") = 0);
}
