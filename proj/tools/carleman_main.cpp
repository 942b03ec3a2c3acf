// carleman: command-line front end for the Carleman-matrix iteration library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carleman/flow.hpp"
#include "carleman/io.hpp"
#include "carleman/logistic.hpp"
#include "carleman/pipeline.hpp"
#include "carleman/verification.hpp"

namespace {

using namespace carleman;

struct Config {
  std::string preset;
  std::string coeffs;
  int dim = 32;
  std::string guess = "0";
  std::optional<double> tol;
  std::string format;
  std::string output;
  std::string t_values;
  std::string x_values;
  std::optional<double> radius;
  int k_max = -1;
  bool extend = false;
  std::string route = "both";
  int quadrature_nodes = 0;
  bool check_quadrature = false;
  bool quadrature = false;
  bool factorization = false;
  std::string x0 = "0.01";
  double t_end = 1.0;
  double dt = 1e-3;
  int n = 100000;
  std::string suite = "logistic4";
};

// Output goes to --output when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  [[nodiscard]] bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

PowerSeries load_map(const Config& c) {
  if (c.preset.empty() == c.coeffs.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --preset or --coeffs");
  }
  if (!c.preset.empty()) return io::parse_preset(c.preset);
  return PowerSeries(io::parse_coefficients(c.coeffs));
}

PipelineOptions pipeline_options(const Config& c) {
  if (c.dim < 4) throw Error(ErrorCode::InvalidArgument, "--dim must be at least 4 for spectral commands");
  PipelineOptions o;
  o.dim = c.dim;
  o.k_max = c.k_max;
  o.chart.r_eval = c.radius;
  return o;
}

std::string pick_format(const Config& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw Error(ErrorCode::InvalidArgument, "--format must be csv or json");
  return f;
}

std::vector<double> grid(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " needs at least one value");
  return io::parse_reals(text);
}

// Closed-form f^t for the logistic maps that have one: mu = 4 at 0 or 3/4, mu = 2 at 0.
std::optional<Complex> reference_value(const PowerSeries& f, Complex x_star, double t, double x) {
  if (f.base_point() != Complex{} || f.degree() != 2 || f[0] != Complex{} || f[1] != -f[2]) return {};
  const Complex mu = f[1];
  const auto near = [&](double p) { return std::abs(x_star - p) < 1e-9; };
  if (mu == Complex{4.0}) {
    if (near(0.0)) return logistic::iterate_mu4_origin(t, x);
    if (near(0.75)) return logistic::iterate_mu4_three_quarters(t, x);
  }
  if (mu == Complex{2.0} && near(0.0)) return logistic::iterate_mu2_origin(t, x);
  return {};
}

int cmd_matrix(const Config& c) {
  const PowerSeries f = load_map(c);
  const CarlemanMatrix direct = build_matrix(f, c.dim);
  const CarlemanMatrix m = c.quadrature ? build_matrix_quadrature(f, c.dim, c.quadrature_nodes) : direct;
  Sink sink(c.output);
  if (pick_format(c, "csv") == "json") {
    sink.stream() << io::matrix_json(m) << '\n';
  } else {
    io::write_matrix(sink.stream(), m);
  }
  if (c.check_quadrature) {
    const int nodes = c.quadrature_nodes > 0 ? c.quadrature_nodes : default_quadrature_nodes(f, c.dim);
    const CarlemanMatrix q = build_matrix_quadrature(f, c.dim, nodes);
    std::ostream& out = sink.to_file() ? std::cout : std::cerr;
    out << "quadrature_max_deviation=" << io::format_double(max_scaled_deviation(q.entries, direct.entries))
        << " quadrature_max_abs_deviation=" << io::format_double(max_abs_deviation(q.entries, direct.entries))
        << " nodes=" << nodes << (q.underresolved ? " underresolved" : "") << '\n';
  }
  return 0;
}

int cmd_iterate(const Config& c) {
  if (c.route != "chart" && c.route != "matrix" && c.route != "both") {
    throw Error(ErrorCode::InvalidArgument, "--route must be chart, matrix or both");
  }
  // The matrix-route sum has no continuation, so --extend evaluates the chart only.
  if (c.extend && c.route == "matrix") throw Error(ErrorCode::InvalidArgument, "--extend applies to the chart route");
  const std::string route = c.extend ? "chart" : c.route;
  const PowerSeries f = load_map(c);
  const Pipeline p = build_pipeline(f, io::parse_complex(c.guess), pipeline_options(c));
  const double tail_tol = c.tol.value_or(kTailTolerance);
  std::vector<io::GridRow> rows;
  for (const double t : grid(c.t_values, "--t")) {
    for (const double x : grid(c.x_values, "--x")) {
      const std::optional<Complex> ref = reference_value(f, p.frame.x_star, t, x);
      if (route != "matrix") {
        const Complex v = c.extend ? evaluate_iterate_extended(p.chart, t, x) : evaluate_iterate_chart(p.chart, t, x);
        rows.push_back({t, x, v, "chart", true, ref});
      }
      if (route != "chart") {
        const IterateValue v = evaluate_iterate_matrix(p.expansion, t, x, tail_tol);
        rows.push_back({t, x, v.value, "matrix", v.converged, ref});
      }
    }
  }
  Sink sink(c.output);
  if (pick_format(c, "csv") == "json") {
    sink.stream() << io::iterate_grid_json(rows) << '\n';
  } else {
    io::write_iterate_grid(sink.stream(), rows);
  }
  return 0;
}

int cmd_chart(const Config& c) {
  const PowerSeries f = load_map(c);
  const Pipeline p = build_pipeline(f, io::parse_complex(c.guess), pipeline_options(c));
  Sink sink(c.output);
  std::ostream& out = sink.stream();
  if (c.factorization) {
    io::write_factorization(out, p.spectral);
    return 0;
  }
  if (pick_format(c, "csv") == "json") {
    out << "{\"x_star\":[" << io::format_double(p.frame.x_star.real()) << ','
        << io::format_double(p.frame.x_star.imag()) << "],\"lambda\":[" << io::format_double(p.chart.lambda.real())
        << ',' << io::format_double(p.chart.lambda.imag()) << "],\"r_eval\":" << io::format_double(p.chart.r_eval)
        << ",\"u\":[";
    for (int k = 0; k < p.chart.u.order(); ++k) {
      out << (k ? "," : "") << '[' << io::format_double(p.chart.u[k].real()) << ','
          << io::format_double(p.chart.u[k].imag()) << ']';
    }
    out << "],\"u_inv\":[";
    for (int k = 0; k < p.chart.u_inv.order(); ++k) {
      out << (k ? "," : "") << '[' << io::format_double(p.chart.u_inv[k].real()) << ','
          << io::format_double(p.chart.u_inv[k].imag()) << ']';
    }
    out << "]}\n";
    return 0;
  }
  out << "# x_star=" << io::format_complex(p.frame.x_star) << " lambda=" << io::format_complex(p.chart.lambda)
      << " r_eval=" << io::format_double(p.chart.r_eval) << '\n';
  out << "k,u_re,u_im,u_inv_re,u_inv_im\n";
  for (int k = 0; k < p.chart.u.order(); ++k) {
    out << k << ',' << io::format_double(p.chart.u[k].real()) << ',' << io::format_double(p.chart.u[k].imag()) << ','
        << io::format_double(p.chart.u_inv[k].real()) << ',' << io::format_double(p.chart.u_inv[k].imag()) << '\n';
  }
  return 0;
}

FlowField field_for(const Config& c, const Pipeline& p) {
  return build_field(matrix_log(p.spectral, Coordinates::fixed_point), p.chart, c.tol.value_or(1e-7));
}

int cmd_field(const Config& c) {
  const PowerSeries f = load_map(c);
  const Pipeline p = build_pipeline(f, io::parse_complex(c.guess), pipeline_options(c));
  const FlowField field = field_for(c, p);
  Sink sink(c.output);
  std::ostream& out = sink.stream();
  const bool json = pick_format(c, "csv") == "json";
  if (c.x_values.empty()) {
    out << (json ? "[" : "k,re,im\n");
    for (int k = 0; k < field.g_coeffs.order(); ++k) {
      const Complex g = field.g_coeffs[k];
      if (json) {
        out << (k ? "," : "") << '[' << io::format_double(g.real()) << ',' << io::format_double(g.imag()) << ']';
      } else {
        out << k << ',' << io::format_double(g.real()) << ',' << io::format_double(g.imag()) << '\n';
      }
    }
    if (json) out << "]\n";
    return 0;
  }
  out << (json ? "[" : "x,re,im\n");
  bool first = true;
  for (const double x : grid(c.x_values, "--x")) {
    const Complex g = evaluate_field(field, x);
    if (json) {
      out << (first ? "" : ",") << "{\"x\":" << io::format_double(x) << ",\"value\":[" << io::format_double(g.real())
          << ',' << io::format_double(g.imag()) << "]}";
    } else {
      out << io::format_double(x) << ',' << io::format_double(g.real()) << ',' << io::format_double(g.imag()) << '\n';
    }
    first = false;
  }
  if (json) out << "]\n";
  return 0;
}

int cmd_integrate(const Config& c) {
  const PowerSeries f = load_map(c);
  const Pipeline p = build_pipeline(f, io::parse_complex(c.guess), pipeline_options(c));
  const FlowField field = field_for(c, p);
  Sink sink(c.output);
  const bool json = pick_format(c, "csv") == "json";
  auto write = [&](const Trajectory& path) {
    if (json) {
      sink.stream() << io::trajectory_json(path) << '\n';
    } else {
      io::write_trajectory(sink.stream(), path);
    }
  };
  try {
    write(integrate_flow(field, io::parse_complex(c.x0), c.t_end, c.dt));
  } catch (const ChartEscape& e) {
    write(e.partial());
    throw;
  }
  return 0;
}

int cmd_lyapunov(const Config& c) {
  const LyapunovEstimate e = lyapunov_logistic(c.n, io::parse_complex(c.x0).real());
  Sink sink(c.output);
  sink.stream() << io::lyapunov_json(e) << '\n';
  return 0;
}

int cmd_verify(const Config& c) {
  const SuiteReport report = run_suite(c.suite, c.dim, c.n);
  Sink sink(c.output);
  if (pick_format(c, "json") == "json") {
    sink.stream() << report_json(report) << '\n';
  } else {
    write_report_csv(sink.stream(), report);
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous iteration of analytic maps through truncated Carleman matrices", "carleman"};
  app.set_config("--config", "", "key=value file mirroring the flags; flags given on the command line win");
  app.require_subcommand(1);

  Config c;
  auto* preset = app.add_option("--preset", c.preset, "named map, e.g. logistic:4");
  auto* coeffs = app.add_option("--coeffs", c.coeffs, "comma-separated coefficients a0,a1,... (complex as a+bi)");
  preset->excludes(coeffs);
  app.add_option("--dim", c.dim, "truncation order N (>= 4; matrix accepts >= 2)")->check(CLI::Range(2, 4096))->capture_default_str();
  app.add_option("--guess,--fixed-point", c.guess, "fixed point, or a Newton starting guess")->capture_default_str();
  app.add_option("--tol", c.tol, "series tail tolerance (iterate) or field cross-check tolerance");
  app.add_option("--format", c.format, "csv or json");
  app.add_option("--output,-o", c.output, "output file (default stdout)");
  app.add_option("--t", c.t_values, "comma-separated times");
  app.add_option("--x", c.x_values, "comma-separated evaluation points");
  app.add_option("--radius", c.radius, "trusted chart radius r_eval");
  app.add_option("--kmax", c.k_max, "highest term of the matrix-route sum (default N-1)");
  app.add_flag("--extend", c.extend, "continue the chart beyond r_eval through the functional equation");
  app.add_option("--route", c.route, "chart, matrix or both")->capture_default_str();
  app.add_option("--quadrature-nodes", c.quadrature_nodes, "trapezoid nodes for the quadrature builder");
  app.add_flag("--check-quadrature", c.check_quadrature, "report the deviation between the two matrix builders");
  app.add_flag("--quadrature", c.quadrature, "dump the quadrature-built matrix");
  app.add_flag("--factorization", c.factorization, "chart: dump V, V^-1 and the eigenvalues instead");
  app.add_option("--x0", c.x0, "initial point")->capture_default_str();
  app.add_option("--t-end", c.t_end, "integration end time")->capture_default_str();
  app.add_option("--dt", c.dt, "RK4 step")->capture_default_str();
  app.add_option("--n", c.n, "number of iterates")->capture_default_str();
  app.add_option("--suite", c.suite, "logistic4, semigroup or lyapunov")->capture_default_str();

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Command commands[] = {
      {"matrix", "write the truncated Carleman matrix", cmd_matrix},
      {"iterate", "evaluate f^t on a (t, x) grid by both routes", cmd_iterate},
      {"chart", "write the Schroeder chart coefficients", cmd_chart},
      {"field", "write the vector field G (coefficients, or values at --x)", cmd_field},
      {"integrate", "integrate dx/dt = G(x) with RK4", cmd_integrate},
      {"lyapunov", "Lyapunov exponent of the mu = 4 logistic map", cmd_lyapunov},
      {"verify", "run a verification suite", cmd_verify},
  };
  for (const auto& cmd : commands) app.add_subcommand(cmd.name, cmd.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: code=UsageError message=" << one_line(e.what()) << '\n';
    return 2;
  }

  for (const auto& cmd : commands) {
    if (!app.got_subcommand(cmd.name)) continue;
    try {
      return cmd.run(c);
    } catch (const Error& e) {
      std::cerr << "error: code=" << to_string(e.code()) << " message=" << one_line(e.what()) << '\n';
      return exit_status(e.code());
    } catch (const std::exception& e) {
      std::cerr << "error: code=Internal message=" << one_line(e.what()) << '\n';
      return 21;
    }
  }
  return 2;
}
