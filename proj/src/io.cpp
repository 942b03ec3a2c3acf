#include "carleman/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "carleman/logistic.hpp"
#include "json.hpp"

namespace carleman::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

nlohmann::ordered_json pair(Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

[[noreturn]] void parse_failure(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::ParseError, std::string(what) + ": '" + std::string(text) + "'");
}

double parse_real(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) parse_failure("invalid number", text);
  return v;
}

// "", "+", "-" stand for a unit imaginary coefficient.
double parse_imaginary_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  try {
    return parse_real(s);
  } catch (const Error&) {
    parse_failure("invalid complex number", whole);
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  out += std::signbit(im) ? '-' : '+';
  out += format_double(std::abs(im));
  out += 'i';
  return out;
}

std::string format_coefficient(Complex z) {
  return z.imag() == 0.0 ? format_double(z.real()) : format_complex(z);
}

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) parse_failure("empty complex number", text);
  if (s.back() != 'i' && s.back() != 'I') return {parse_real(s), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  if (split_at == std::string_view::npos) return {0.0, parse_imaginary_coefficient(body, text)};
  return {parse_real(body.substr(0, split_at)), parse_imaginary_coefficient(body.substr(split_at), text)};
}

std::vector<Complex> parse_coefficients(std::string_view text) {
  std::vector<Complex> out;
  for (const auto part : split(text, ',')) out.push_back(parse_complex(part));
  return out;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (const auto part : split(text, ',')) out.push_back(parse_real(part));
  return out;
}

PowerSeries parse_preset(std::string_view spec) {
  const std::string_view s = trim(spec);
  const std::size_t colon = s.find(':');
  const std::string_view name = s.substr(0, colon);
  if (name != "logistic") parse_failure("unknown preset", spec);
  if (colon == std::string_view::npos) parse_failure("preset needs a parameter, e.g. logistic:4", spec);
  return PowerSeries::logistic(parse_real(s.substr(colon + 1)), 3);
}

std::string format_coefficient_list(const PowerSeries& f) {
  std::string out;
  for (int k = 0; k < f.order(); ++k) {
    if (k > 0) out += ',';
    out += format_coefficient(f[k]);
  }
  return out;
}

void write_matrix(std::ostream& out, const CarlemanMatrix& m) {
  out << "carleman dim=" << m.dim() << " map=" << format_coefficient_list(m.source_map) << '\n';
  for (int j = 0; j < m.dim(); ++j) {
    for (int k = 0; k < m.dim(); ++k) {
      if (k > 0) out << ',';
      out << format_complex(m(j, k));
    }
    out << '\n';
  }
}

MatrixDump read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) parse_failure("missing matrix header", "");
  constexpr std::string_view tag = "carleman dim=";
  if (header.rfind(tag, 0) != 0) parse_failure("bad matrix header", header);
  const std::size_t map_at = header.find(" map=");
  if (map_at == std::string::npos) parse_failure("bad matrix header", header);

  MatrixDump dump;
  const std::string_view view(header);
  dump.dim = static_cast<int>(parse_real(view.substr(tag.size(), map_at - tag.size())));
  const std::string_view map = view.substr(map_at + 5);
  if (!map.empty()) dump.map = parse_coefficients(map);
  dump.entries = Matrix::Zero(dump.dim, dump.dim);
  std::string line;
  for (int j = 0; j < dump.dim; ++j) {
    if (!std::getline(in, line)) parse_failure("matrix dump ended early", header);
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != dump.dim) parse_failure("matrix row has the wrong width", line);
    for (int k = 0; k < dump.dim; ++k) dump.entries(j, k) = parse_complex(cells[static_cast<std::size_t>(k)]);
  }
  return dump;
}

void write_factorization(std::ostream& out, const SpectralFactorization& s) {
  auto block = [&](const Matrix& m) {
    for (int j = 0; j < m.rows(); ++j) {
      for (int k = 0; k < m.cols(); ++k) {
        if (k > 0) out << ',';
        out << format_complex(m(j, k));
      }
      out << '\n';
    }
  };
  out << "V dim=" << s.dim() << " lambda=" << format_complex(s.lambda) << '\n';
  block(s.v);
  out << "V_inv dim=" << s.dim() << '\n';
  block(s.v_inv);
  out << "diag dim=" << s.dim() << '\n';
  const auto d = s.eigenvalues();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j > 0) out << ',';
    out << format_complex(d[j]);
  }
  out << '\n';
}

void write_iterate_grid(std::ostream& out, const std::vector<GridRow>& rows) {
  bool with_reference = !rows.empty();
  for (const auto& r : rows) with_reference = with_reference && r.reference.has_value();
  out << "t,x,re,im,route,converged" << (with_reference ? ",ref_re,ref_im" : "") << '\n';
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.value.real()) << ','
        << format_double(r.value.imag()) << ',' << r.route << ',' << (r.converged ? "true" : "false");
    if (with_reference) {
      out << ',' << format_double(r.reference->real()) << ',' << format_double(r.reference->imag());
    }
    out << '\n';
  }
}

void write_trajectory(std::ostream& out, const Trajectory& path) {
  out << "t,re,im\n";
  for (const auto& p : path) {
    out << format_double(p.t) << ',' << format_double(p.x.real()) << ',' << format_double(p.x.imag()) << '\n';
  }
}

std::string matrix_json(const CarlemanMatrix& m) {
  nlohmann::ordered_json j;
  j["dim"] = m.dim();
  j["map"] = nlohmann::ordered_json::array();
  for (const Complex c : m.source_map.coeffs()) j["map"].push_back(pair(c));
  j["entries"] = nlohmann::ordered_json::array();
  for (int r = 0; r < m.dim(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(pair(m(r, k)));
    j["entries"].push_back(std::move(row));
  }
  return j.dump();
}

std::string iterate_grid_json(const std::vector<GridRow>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["t"] = r.t;
    o["x"] = r.x;
    o["value"] = pair(r.value);
    o["route"] = r.route;
    o["converged"] = r.converged;
    if (r.reference) o["reference"] = pair(*r.reference);
    j.push_back(std::move(o));
  }
  return j.dump();
}

std::string trajectory_json(const Trajectory& path) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& p : path) {
    nlohmann::ordered_json o;
    o["t"] = p.t;
    o["x"] = pair(p.x);
    j.push_back(std::move(o));
  }
  return j.dump();
}

std::string lyapunov_json(const LyapunovEstimate& estimate) {
  nlohmann::ordered_json j;
  j["n"] = estimate.n;
  j["x0"] = estimate.x0;
  j["sigma_hat"] = estimate.sigma_hat;
  j["reference"] = logistic::kLn2;
  if (estimate.perturbed) j["perturbed"] = true;
  return j.dump();
}

}  // namespace carleman::io
