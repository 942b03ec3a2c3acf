#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carleman/flow.hpp"
#include "carleman/pipeline.hpp"
#include "carleman/verification.hpp"

namespace py = pybind11;
using namespace carleman;

namespace {

PowerSeries to_series(const std::vector<Complex>& coeffs) {
  if (coeffs.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two coefficients");
  return PowerSeries(coeffs);
}

std::vector<Complex> coefficients(const PowerSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

// One map linearized at one fixed point, with the field built on first use.
class Iteration {
 public:
  Iteration(const std::vector<Complex>& coeffs, Complex guess, int dim, std::optional<double> radius,
            bool exact_fixed_point) {
    PipelineOptions o;
    o.dim = dim;
    o.chart.r_eval = radius;
    const PowerSeries f = to_series(coeffs);
    p_ = exact_fixed_point ? build_pipeline_at(f, guess, o) : build_pipeline(f, guess, o);
  }

  Complex iterate(double t, Complex x, const std::string& route, double tol) const {
    if (route == "chart") return evaluate_iterate_chart(p_.chart, t, x);
    if (route == "extended") return evaluate_iterate_extended(p_.chart, t, x);
    if (route == "matrix") {
      const IterateValue v = evaluate_iterate_matrix(p_.expansion, t, x, tol);
      if (!v.converged) throw Error(ErrorCode::NonConvergent, "matrix-route sum did not converge");
      return v.value;
    }
    throw Error(ErrorCode::InvalidArgument, "route must be chart, matrix or extended");
  }

  const FlowField& field() {
    if (!field_) field_ = build_field(matrix_log(p_.spectral, Coordinates::fixed_point), p_.chart);
    return *field_;
  }

  const Pipeline& pipeline() const { return p_; }

 private:
  Pipeline p_;
  std::optional<FlowField> field_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continuous iteration of analytic maps through truncated Carleman matrices.";

  // args = (code name, message), e.g. ("OutOfChart", "...").
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "CarlemanError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object value = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.get_stored().ptr(), value.ptr());
    }
  });

  m.def(
      "carleman_matrix",
      [](const std::vector<Complex>& coeffs, int dim, int quadrature_nodes) {
        const PowerSeries f = to_series(coeffs);
        return (quadrature_nodes > 0 ? build_matrix_quadrature(f, dim, quadrature_nodes) : build_matrix(f, dim)).entries;
      },
      py::arg("coeffs"), py::arg("dim"), py::arg("quadrature_nodes") = 0,
      "N x N Carleman matrix; quadrature_nodes > 0 selects the trapezoid builder.");

  py::class_<Iteration>(m, "Iteration")
      .def(py::init<const std::vector<Complex>&, Complex, int, std::optional<double>, bool>(), py::arg("coeffs"),
           py::arg("guess") = Complex{}, py::arg("dim") = kDefaultOrder, py::arg("radius") = py::none(),
           py::arg("exact_fixed_point") = false)
      .def_property_readonly("x_star", [](const Iteration& it) { return it.pipeline().frame.x_star; })
      .def_property_readonly("multiplier", [](const Iteration& it) { return it.pipeline().chart.lambda; })
      .def_property_readonly("log_multiplier", [](const Iteration& it) { return it.pipeline().chart.log_lambda; })
      .def_property_readonly("radius", [](const Iteration& it) { return it.pipeline().chart.r_eval; })
      .def_property_readonly("chart", [](const Iteration& it) { return coefficients(it.pipeline().chart.u); })
      .def_property_readonly("inverse_chart", [](const Iteration& it) { return coefficients(it.pipeline().chart.u_inv); })
      .def_property_readonly("matrix", [](const Iteration& it) { return it.pipeline().m.entries; })
      .def("iterate", &Iteration::iterate, py::arg("t"), py::arg("x"), py::arg("route") = "chart",
           py::arg("tol") = kTailTolerance)
      .def("chart_value", [](const Iteration& it, Complex x) { return it.pipeline().chart.u.evaluate(x); })
      .def(
          "fractional_power",
          [](const Iteration& it, double t) {
            return fractional_power(it.pipeline().spectral, it.pipeline().mg, t).entries;
          },
          py::arg("t"), "M^t about the fixed point.")
      .def(
          "generator", [](const Iteration& it) { return matrix_log(it.pipeline().spectral, Coordinates::fixed_point).entries; },
          "ln M about the fixed point.")
      .def("field_coefficients", [](Iteration& it) { return coefficients(it.field().g_coeffs); })
      .def("field", [](Iteration& it, Complex x) { return evaluate_field(it.field(), x); }, py::arg("x"))
      .def(
          "integrate",
          [](Iteration& it, Complex x0, double t_end, double dt) {
            std::vector<std::pair<double, Complex>> out;
            for (const auto& point : integrate_flow(it.field(), x0, t_end, dt)) out.emplace_back(point.t, point.x);
            return out;
          },
          py::arg("x0"), py::arg("t_end"), py::arg("dt") = 1e-3, "RK4 trajectory as (t, x) pairs.");

  m.def("validity_window", &validity_window, py::arg("x"));

  m.def(
      "lyapunov",
      [](int n, double x0) {
        const LyapunovEstimate e = lyapunov_logistic(n, x0);
        py::dict d;
        d["n"] = e.n;
        d["x0"] = e.x0;
        d["sigma_hat"] = e.sigma_hat;
        d["perturbed"] = e.perturbed;
        return d;
      },
      py::arg("n") = 100000, py::arg("x0") = 0.123456);

  m.def(
      "verify_json", [](const std::string& suite, int dim, int n) { return report_json(run_suite(suite, dim, n)); },
      py::arg("suite") = "logistic4", py::arg("dim") = kDefaultOrder, py::arg("n") = 100000);
}
