#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "symiso/experiments.hpp"

namespace py = pybind11;
using namespace symiso;

namespace {

py::array_t<double> to_array(const PointSet& p) {
  py::array_t<double> a({std::size_t(p.dim()), p.size()});
  std::copy(p.raw().begin(), p.raw().end(), a.mutable_data());
  return a;
}

PointSet from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("points must be a (dim, count) array");
  PointSet p(int(a.shape(0)), std::size_t(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), p.raw().begin());
  return p;
}

Numerics make_numerics(const TorusSpec& spec, double h) {
  Numerics num;
  num.torus = spec;
  num.integrator.h = h;
  num.integrator.validate();
  return num;
}

Generator random_gen(int n, std::size_t nodes, std::uint64_t seed, bool hamiltonian) {
  std::mt19937_64 rng(seed);
  RandomGeneratorOptions opt;
  opt.hamiltonian = hamiltonian;
  return random_generator(n, nodes, rng, opt);
}

std::string run_command(const std::string& command, const std::string& config_json) {
  ExperimentConfig cfg = config_json.empty() ? ExperimentConfig{} : config_from_json(json::parse(config_json));
  cfg.validate();
  using Runner = Report (*)(const ExperimentConfig&);
  const std::vector<std::pair<std::string, Runner>> runners = {
      {"verify", run_verify},   {"flow", run_flow},       {"norms", run_norms},
      {"regularize", run_regularize}, {"equalize", run_equalize}, {"flux", run_flux},
      {"permutorus", run_permutorus}, {"converge", run_converge}, {"neighborhood", run_neighborhood}};
  for (const auto& [name, fn] : runners)
    if (name == command) return fn(cfg).to_json().dump();
  throw py::value_error("unknown command: " + command);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symplectic isotopies of the flat torus: flows, lengths, regularization and flux";

  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StabilityError>(m, "StabilityError", PyExc_ArithmeticError);

  py::class_<TorusSpec>(m, "TorusSpec")
      .def(py::init([](int n, int grid_res, int time_res) { return TorusSpec{n, grid_res, time_res}; }),
           py::arg("n") = 1, py::arg("grid_res") = 32, py::arg("time_res") = 33)
      .def_readwrite("n", &TorusSpec::n)
      .def_readwrite("grid_res", &TorusSpec::grid_res)
      .def_readwrite("time_res", &TorusSpec::time_res);

  py::class_<Generator>(m, "Generator")
      .def_static("zero", &Generator::zero, py::arg("n"), py::arg("nodes"))
      .def_static("harmonic",
                  [](std::vector<double> h, std::size_t nodes) { return Generator::harmonic(HarmonicForm(std::move(h)), nodes); },
                  py::arg("h"), py::arg("nodes"))
      .def_static("example", &example_generator, py::arg("name"), py::arg("spec"), py::arg("seed") = 1)
      .def_static("random", &random_gen, py::arg("n"), py::arg("nodes"), py::arg("seed"),
                  py::arg("hamiltonian") = false)
      .def_static("from_json", [](const std::string& s) { return generator_from_json(json::parse(s)); })
      .def("to_json", [](const Generator& g) { return to_json(g).dump(); })
      .def_property_readonly("n", &Generator::n)
      .def_property_readonly("nodes", &Generator::nodes)
      .def("is_hamiltonian", &Generator::is_hamiltonian)
      .def("harmonic_part", [](const Generator& g, double t) { return g.H.at(t).coeffs; }, py::arg("t"))
      .def("hamiltonian_value", [](const Generator& g, double t, std::vector<double> x) { return g.U.at(t).value(x); },
           py::arg("t"), py::arg("x"));

  py::class_<Isotopy>(m, "Isotopy")
      .def_property_readonly("nodes", &Isotopy::nodes)
      .def("node_time", &Isotopy::node_time)
      .def("grid", [](const Isotopy& p) { return to_array(p.grid()); })
      .def("image", [](const Isotopy& p, std::size_t j) { return to_array(p.image(j)); }, py::arg("node"))
      .def("inverse_image", [](const Isotopy& p, std::size_t j) { return to_array(p.inverse_image(j)); }, py::arg("node"))
      .def("apply", [](const Isotopy& p, double t, const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return to_array(p.apply(t, from_array(x)));
      }, py::arg("t"), py::arg("points"))
      .def("jacobian_sup", &Isotopy::jacobian_sup);

  m.def("integrate", [](const Generator& g, const TorusSpec& spec, double h) {
    return integrate(g, spec, make_numerics(spec, h).integrator);
  }, py::arg("generator"), py::arg("spec"), py::arg("h") = 1.0 / 128);
  m.def("inverse", [](const Generator& g, const TorusSpec& spec, double h) { return inverse(g, make_numerics(spec, h)); },
        py::arg("generator"), py::arg("spec"), py::arg("h") = 1.0 / 128);
  m.def("product", [](const Generator& a, const Generator& b, const TorusSpec& spec, double h) {
    return product(a, b, make_numerics(spec, h));
  }, py::arg("first"), py::arg("second"), py::arg("spec"), py::arg("h") = 1.0 / 128);
  m.def("c0_distance_to_identity", [](const Isotopy& p) { return c0_distance_to_identity(p.grid(), p.image(p.nodes() - 1)); },
        "C0 distance of the time-1 map from the identity");
  m.def("dbar_to_identity", &dbar_to_identity);
  m.def("delta_mean", [](std::vector<double> h, const Isotopy& phi, std::size_t node) {
    return delta_mean(HarmonicPath::constant(HarmonicForm(std::move(h)), phi.nodes()), phi, node);
  }, py::arg("h"), py::arg("isotopy"), py::arg("node"), "Mean of Delta_t for a constant harmonic form");

  m.def("length_l1inf", [](const Generator& g, const TorusSpec& s) { return length_l1inf(g, s); });
  m.def("length_linf", [](const Generator& g, const TorusSpec& s) { return length_linf(g, s); });
  m.def("D0", [](const Generator& a, const Generator& b, const TorusSpec& s) { return D0(a, b, s); });
  m.def("D1", [](const Generator& a, const Generator& b, const TorusSpec& spec, double h) {
    return D1(a, b, make_numerics(spec, h));
  }, py::arg("a"), py::arg("b"), py::arg("spec"), py::arg("h") = 1.0 / 128);

  m.def("regularize", [](const Generator& g, double eps, const TorusSpec& spec, double h) {
    const Regularized r = regularize(g, eps, make_numerics(spec, h));
    return py::dict(py::arg("generator") = r.generator, py::arg("certified") = r.certificate.ok,
                    py::arg("min_cost") = r.certificate.min_value, py::arg("l1inf_before") = r.l1inf_before,
                    py::arg("l1inf_after") = r.l1inf_after);
  }, py::arg("generator"), py::arg("eps"), py::arg("spec"), py::arg("h") = 1.0 / 128);
  m.def("norm_equality", [](const Generator& g, double eps, const TorusSpec& spec, double h) {
    const NormEquality r = norm_equality_experiment(g, eps, make_numerics(spec, h));
    return py::dict(py::arg("psi") = r.psi, py::arg("l1inf_g") = r.l1inf_g, py::arg("linf_g") = r.linf_g,
                    py::arg("l1inf_psi") = r.l1inf_psi, py::arg("linf_psi") = r.linf_psi,
                    py::arg("endpoint_distance") = r.endpoint_distance, py::arg("length_ok") = r.length_ok,
                    py::arg("endpoint_ok") = r.endpoint_ok);
  }, py::arg("generator"), py::arg("eps"), py::arg("spec"), py::arg("h") = 1.0 / 128);

  m.def("flux", [](const Generator& g) { return flux(g).rep.coeffs; });
  m.def("poincare_pair", [](std::vector<double> a, std::vector<double> b) {
    return poincare_pair({HarmonicForm(std::move(a))}, {HarmonicForm(std::move(b))});
  });
  m.def("mean_value_check", [](std::vector<double> alpha, const Isotopy& phi) {
    const MeanValueReport r = mean_value_check({HarmonicForm(std::move(alpha))}, phi);
    return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("magnitude_ok") = r.magnitude_ok,
                    py::arg("sign_ok") = r.sign_ok);
  }, py::arg("alpha"), py::arg("isotopy"));
  m.def("meridian_translation", &meridian_translation, py::arg("n"), py::arg("nodes"));
  m.def("hamiltonian_loop_area", [](std::vector<double> alpha, const Isotopy& loop, std::vector<double> x) {
    return hamiltonian_loop_area({HarmonicForm(std::move(alpha))}, loop, Point(std::move(x)));
  }, py::arg("alpha"), py::arg("loop"), py::arg("x"));

  m.def("run", &run_command, py::arg("command"), py::arg("config_json") = "",
        "Run a CLI experiment and return its report as a JSON string");

#ifdef VERSION_INFO
#define SYMISO_STR(x) #x
#define SYMISO_XSTR(x) SYMISO_STR(x)
  m.attr("__version__") = SYMISO_XSTR(VERSION_INFO);
#endif
}
