#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hermprod/biortho_kernel.hpp"
#include "hermprod/ensemble_density.hpp"
#include "hermprod/exact.hpp"
#include "hermprod/global_density.hpp"
#include "hermprod/hard_edge.hpp"
#include "hermprod/harness.hpp"
#include "hermprod/sampling.hpp"

namespace py = pybind11;
using namespace hermprod;

namespace {

KernelRoute finite_route(const std::string& s) {
    if (s == "sum") return KernelRoute::sum;
    if (s == "double-contour") return KernelRoute::double_contour;
    if (s == "abc-oracle") return KernelRoute::abc_oracle;
    throw ConfigError("unknown kernel route '" + s + "'");
}

HardRepresentation hard_route(const std::string& s) {
    if (s == "g-product") return HardRepresentation::g_product;
    if (s == "double-contour") return HardRepresentation::double_contour;
    if (s == "unified") return HardRepresentation::unified;
    throw ConfigError("unknown hard-edge representation '" + s + "'");
}

WeightBackend weight_backend(const std::string& s) {
    if (s == "mellin-barnes") return WeightBackend::mellin_barnes;
    if (s == "recursive") return WeightBackend::recursive_quadrature;
    if (s == "meijer-g") return WeightBackend::meijer_g;
    throw ConfigError("unknown weight backend '" + s + "'");
}

py::dict kernel_dict(const KernelValue& v) {
    py::dict d;
    d["x"] = v.x;
    d["y"] = v.y;
    d["even"] = v.even;
    d["odd"] = v.odd;
    d["total"] = v.total;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hermprod, m) {
    m.doc() = "Hermitised products of GUE and Ginibre matrices";

    // translators run newest first, so the base class goes in before its subclasses
    py::register_exception<Error>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<EnsembleParams>(m, "EnsembleParams")
        .def(py::init([](int M, int n, std::vector<int> nu) { return make_params(M, n, std::move(nu)); }),
             py::arg("M"), py::arg("n"), py::arg("nu") = std::vector<int>{})
        .def_readonly("M", &EnsembleParams::M)
        .def_readonly("n", &EnsembleParams::n)
        .def_readonly("nu", &EnsembleParams::nu)
        .def("__repr__", [](const EnsembleParams& p) {
            std::string s = "EnsembleParams(M=" + std::to_string(p.M) + ", n=" + std::to_string(p.n) + ", nu=[";
            for (std::size_t i = 0; i < p.nu.size(); ++i) s += (i ? "," : "") + std::to_string(p.nu[i]);
            return s + "])";
        });

    m.def("sample_spectra",
          [](const EnsembleParams& p, std::uint64_t seed, int repeats, int threads) {
              std::vector<std::vector<double>> out;
              for (auto& s : sample_spectra(p, seed, repeats, threads)) out.push_back(std::move(s.eigenvalues));
              return out;
          },
          py::arg("params"), py::arg("seed"), py::arg("repeats") = 1, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("map_polynomial_ensemble",
          [](std::vector<double> a, int N, std::uint64_t seed) {
              return map_polynomial_ensemble(SignedDiagonal::from(std::move(a)), N, seed).eigenvalues;
          },
          py::arg("a"), py::arg("N"), py::arg("seed"));

    m.def("rank_one_chain",
          [](std::vector<double> a, int N, std::uint64_t seed) {
              std::vector<std::vector<double>> out;
              for (auto& s : rank_one_chain(SignedDiagonal::from(std::move(a)), N, seed))
                  out.push_back(std::move(s.eigenvalues));
              return out;
          },
          py::arg("a"), py::arg("N"), py::arg("seed"));

    m.def("theorem1_pdf",
          [](const std::vector<double>& x, std::vector<double> a, int N) {
              return theorem1_pdf(x, SignedDiagonal::from(std::move(a)), N);
          },
          py::arg("points"), py::arg("a"), py::arg("N"));

    m.def("weight",
          [](int j, const EnsembleParams& p, double x, const std::string& backend) {
              return weight_g({j, p, weight_backend(backend)}, x).value;
          },
          py::arg("j"), py::arg("params"), py::arg("x"), py::arg("backend") = "mellin-barnes");

    m.def("product_jpdf", [](const EnsembleParams& p, const std::vector<double>& x) { return product_jpdf(p, x); },
          py::arg("params"), py::arg("points"));

    m.def("kernel",
          [](int n, const EnsembleParams& p, double x, double y, const std::string& route) {
              return kernel_dict(kernel_finite(n, p, x, y, finite_route(route)));
          },
          py::arg("n"), py::arg("params"), py::arg("x"), py::arg("y"), py::arg("route") = "sum");

    m.def("hard_kernel",
          [](double x, double y, const EnsembleParams& p, const std::string& route) {
              return kernel_dict(hard_kernel(x, y, p, hard_route(route)));
          },
          py::arg("x"), py::arg("y"), py::arg("params"), py::arg("route") = "double-contour");

    m.def("global_density", &global_density_parametric, py::arg("M"), py::arg("x"));
    m.def("stieltjes_density", &stieltjes_density, py::arg("M"), py::arg("x"));
    m.def("fuss_catalan_density", &fuss_catalan_density, py::arg("p"), py::arg("t"));
    m.def("support_edge", &support_edge, py::arg("M"));
    m.def("fuss_catalan_moment",
          [](int p, int k) { return py::int_(py::str(fuss_catalan_moment(p, k).get_str())); },
          py::arg("p"), py::arg("k"));
    m.def("global_ks", &global_ks, py::arg("params"), py::arg("repeats"), py::arg("seed"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("verify",
          [](const std::string& suite, const EnsembleParams& p, std::optional<std::uint64_t> seed) {
              RunConfig c;
              c.command = Command::verify;
              c.suite = suite;
              c.params = p;
              c.seed = seed;
              SuiteReport r;
              {
                  py::gil_scoped_release release;
                  r = run_suite(c);
              }
              py::list checks;
              for (const auto& k : r.checks) {
                  py::dict d;
                  d["name"] = k.name;
                  d["measured"] = k.measured;
                  d["tolerance"] = k.tolerance;
                  d["pass"] = k.pass;
                  checks.append(d);
              }
              py::dict out;
              out["suite"] = r.suite;
              out["pass"] = r.pass();
              out["checks"] = checks;
              return out;
          },
          py::arg("suite"), py::arg("params"), py::arg("seed") = py::none());
}
