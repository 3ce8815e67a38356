#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radiant/serialize.hpp"

namespace py = pybind11;
using namespace radiant;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: {
      // non-finite numbers travel as strings in the JSON schema
      const auto& s = j.get_ref<const std::string&>();
      if (s == "inf" || s == "-inf" || s == "nan") return py::float_(std::stod(s));
      return py::str(s);
    }
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default: return py::none();
  }
}

py::array_t<double> array(std::span<const double> v) { return py::array_t<double>(v.size(), v.data()); }

Nonlinearity make_nl(const std::string& weight, const std::string& psi) {
  return Nonlinearity::separable(RadialWeight::parse(weight), Psi::parse(psi));
}

Tolerance make_tol(double tol) { return Tolerance{tol, tol, 2000, 200}; }

SolverOptions make_opt(double tol, double spacing) {
  SolverOptions opt;
  opt.tol.abs = tol;
  opt.spacing = spacing;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_radiant, m) {
  m.doc() = "Radial semilinear problems on Euclidean and Damek-Ricci spaces";

  static py::exception<Error> error(m, "RadiantError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Space>(m, "Space")
      .def(py::init(&Space::parse), py::arg("spec"))
      .def_static("euclidean", &Space::euclidean, py::arg("d"))
      .def_static("damek_ricci", &Space::damek_ricci, py::arg("p"), py::arg("q"))
      .def_property_readonly("n", &Space::n)
      .def_property_readonly("Q", &Space::Q)
      .def_property_readonly("spec", &Space::spec)
      .def("__eq__", &Space::operator==)
      .def("__repr__", [](const Space& s) { return "Space('" + s.spec() + "')"; });

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def(py::init(&make_nl), py::arg("weight") = "constant", py::arg("psi") = "sqrt")
      .def("__call__", &Nonlinearity::operator(), py::arg("r"), py::arg("t"))
      .def_property_readonly("spec", &Nonlinearity::spec)
      .def_property_readonly("sublinear", [](const Nonlinearity& nl) { return nl.flags().h1prime.holds; });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("r", [](const Solution& s) { return array(s.profile.grid().nodes()); })
      .def_property_readonly("u", [](const Solution& s) { return array(s.profile.values()); })
      .def_readonly("center_value", &Solution::center_value)
      .def_readonly("residual", &Solution::residual)
      .def_readonly("iterations", &Solution::iterations)
      .def_property_readonly("method", [](const Solution& s) { return to_string(s.method); })
      .def("__call__", [](const Solution& s, double r) { return s.profile(r); }, py::arg("r"))
      .def("to_dict", [](const Solution& s) { return to_python(to_json(s)); });

  m.def("volume_density", &volume_density, py::arg("space"), py::arg("r"));
  m.def("log_volume_density", &log_volume_density, py::arg("space"), py::arg("r"));
  m.def("radial_drift", &radial_drift, py::arg("space"), py::arg("r"));
  m.def("green_whole", &green_whole, py::arg("space"), py::arg("r"));
  m.def("green_ball", &green_ball, py::arg("space"), py::arg("R"), py::arg("r"));
  m.def(
      "verify_green_estimates",
      [](const Space& s, const std::string& regime, double lo, double hi, int count) {
        const GreenRegime g = regime == "large" ? GreenRegime::LargeR : GreenRegime::SmallR;
        if (regime != "large" && regime != "small") throw Error(ErrorKind::DomainError, "regime is 'large' or 'small'");
        return to_python(to_json(verify_green_estimates(s, g, RadialGrid::uniform(lo, hi, count))));
      },
      py::arg("space"), py::arg("regime"), py::arg("lo"), py::arg("hi"), py::arg("count") = 57);

  m.def(
      "classify",
      [](const Space& s, const Nonlinearity& nl, double tol) { return to_python(to_json(classify(s, nl, make_tol(tol)))); },
      py::arg("space"), py::arg("nl"), py::arg("tol") = 1e-10);
  m.def(
      "keller_osserman",
      [](const std::function<double(double)>& psi, double tol) {
        return to_python(to_json(keller_osserman(psi, make_tol(tol))));
      },
      py::arg("psi"), py::arg("tol") = 1e-10);

  m.def(
      "solve_ball",
      [](const Space& s, const Nonlinearity& nl, double R, double c, double tol, double spacing) {
        return solve_ball(s, nl, R, c, make_opt(tol, spacing));
      },
      py::arg("space"), py::arg("nl"), py::arg("R"), py::arg("c"), py::arg("tol") = 1e-10, py::arg("spacing") = 0.01);
  m.def(
      "solve_shooting",
      [](const Space& s, const Nonlinearity& nl, double alpha, double r_max, int nodes) {
        return solve_shooting(s, nl, alpha, r_max, {1e-12, 1e-12, 2000, 200}, nodes);
      },
      py::arg("space"), py::arg("nl"), py::arg("alpha"), py::arg("r_max"), py::arg("nodes") = 501);
  m.def(
      "find_lambda",
      [](const Space& s, const Nonlinearity& nl, double R, double alpha) {
        const LambdaResult l = find_lambda(s, nl, R, alpha);
        return py::make_tuple(l.lambda, l.solution);
      },
      py::arg("space"), py::arg("nl"), py::arg("R"), py::arg("alpha"));
  m.def(
      "large_solution",
      [](const Space& s, const Nonlinearity& nl, double alpha, const std::vector<double>& schedule) {
        const LargeResult l = large_solution(s, nl, alpha, schedule);
        return py::make_tuple(l.solution, to_python(to_json(l)));
      },
      py::arg("space"), py::arg("nl"), py::arg("alpha"), py::arg("schedule"));
  m.def(
      "bounded_solution",
      [](const Space& s, const Nonlinearity& nl, double c, const std::vector<double>& schedule) {
        const BoundedResult b = bounded_solution(s, nl, c, schedule);
        return py::make_tuple(b.solution ? py::cast(*b.solution) : py::none(), to_python(to_json(b)));
      },
      py::arg("space"), py::arg("nl"), py::arg("c"), py::arg("schedule"));

  m.def(
      "harnack_scan",
      [](const Space& s, const Nonlinearity& nl, double R, double r_lo, double r_hi, const std::vector<double>& lambdas) {
        return to_python(to_json(harnack_scan(s, nl, R, {r_lo, r_hi}, lambdas)));
      },
      py::arg("space"), py::arg("nl"), py::arg("R"), py::arg("r_lo"), py::arg("r_hi"), py::arg("lambdas"));
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("per_decade"));
  m.def(
      "three_g_ratio",
      [](int d, double R, const std::vector<double>& x, const std::vector<double>& y, std::uint64_t seed, int n) {
        return to_python(to_json(three_g_ratio(d, R, [](double) { return 1.0; }, x, y, seed, n)));
      },
      py::arg("d"), py::arg("R"), py::arg("x"), py::arg("y"), py::arg("seed") = 42, py::arg("n_samples") = 100000);

  m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
