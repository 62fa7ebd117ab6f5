#include "gausstv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gausstv/disprod.hpp"
#include "gausstv/error.hpp"
#include "gausstv/io.hpp"
#include "gausstv/oracle.hpp"
#include "gausstv/pipeline.hpp"

namespace gausstv {

namespace {

using nlohmann::ordered_json;

struct Settings {
  std::string input;
  std::string eps_text;
  bool diagnostics = false;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string method;
  std::int64_t samples = 1000000;
  int cells = 128;
  double extent = 8.0;
  double tol = 1e-10;
  double x = 0.0;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot open input file '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

std::string source_name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

double parse_eps(const std::string& text) {
  const double eps = io::parse_rational(text);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "--eps must lie in (0, 1), got " + text);
  }
  return eps;
}

// JSON numbers print in shortest round-trip form; plain output lists the
// same keys one per line with nested arrays space-separated.
void emit(const ordered_json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump() << '\n';
    return;
  }
  auto scalar = [](const ordered_json& v) {
    if (v.is_number_float()) return io::format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::function<void(const std::string&, const ordered_json&)> line =
      [&](const std::string& prefix, const ordered_json& v) {
        if (v.is_object()) {
          for (const auto& [k, sub] : v.items()) line(prefix.empty() ? k : prefix + "." + k, sub);
        } else if (v.is_array()) {
          out << prefix;
          for (const auto& e : v) out << ' ' << scalar(e);
          out << '\n';
        } else {
          out << prefix << ' ' << scalar(v) << '\n';
        }
      };
  line("", doc);
}

ordered_json diagnostics_json(const Diagnostics& d) {
  ordered_json j;
  j["rank_case"] = d.rank_case;
  j["dimension"] = d.dimension;
  j["delta"] = d.delta;
  j["gamma"] = d.gamma;
  j["small_delta"] = d.small_delta;
  j["m"] = d.m;
  j["alphabet_size"] = d.alphabet_size;
  j["zeta"] = d.zeta;
  j["kappa1"] = d.kappa1;
  j["kappa2"] = d.kappa2;
  j["diag_residuals"] = {d.diag_residuals.first, d.diag_residuals.second};
  j["budget_split"] = {d.budget_split.first, d.budget_split.second};
  j["disprod_delta"] = d.disprod_delta;
  j["disprod_m"] = d.disprod_m;
  j["max_product_atoms"] = d.max_product_atoms;
  j["max_discretized_atoms"] = d.max_discretized_atoms;
  j["renormalizations"] = d.renormalizations;
  j["max_endpoint_mass_error"] = d.max_endpoint_mass_error;
  j["endpoint_violations"] = d.endpoint_violations;
  return j;
}

int run_compute(const Settings& s, std::istream& in, std::ostream& out) {
  const double eps = parse_eps(s.eps_text);
  const auto [p1, p2] = io::parse_gaussian_pair(read_input(s.input, in), source_name(s.input));
  const TvResult r = mult_gaussian_tv(p1, p2, eps, PipelineOptions::from_environment());
  ordered_json doc;
  doc["tv_estimate"] = r.estimate;
  doc["eps"] = r.eps;
  if (s.diagnostics) doc["diagnostics"] = diagnostics_json(r.diagnostics);
  emit(doc, s.format, out);
  return kExitOk;
}

int run_disprod(const Settings& s, std::istream& in, std::ostream& out) {
  const double eps = parse_eps(s.eps_text);
  const auto pairs = io::parse_discrete_pairs(read_input(s.input, in), source_name(s.input));
  const DisProdReport r = disprod_tv_det_report(pairs, eps);
  ordered_json doc;
  doc["tv_estimate"] = r.estimate;
  doc["eps"] = eps;
  if (s.diagnostics) {
    ordered_json d;
    d["delta"] = r.delta;
    d["gamma"] = r.gamma;
    d["small_delta"] = r.small_delta;
    d["m"] = r.m;
    d["alphabet_size"] = r.m > 0 ? 2 * r.m + 1 : 0;
    d["max_product_atoms"] = r.max_product_atoms;
    d["max_discretized_atoms"] = r.max_discretized_atoms;
    d["renormalizations"] = r.renormalizations;
    doc["diagnostics"] = d;
  }
  emit(doc, s.format, out);
  return kExitOk;
}

int run_oracle(const Settings& s, std::istream& in, std::ostream& out) {
  ordered_json doc;
  doc["method"] = s.method;
  if (s.method == "erf") {
    doc["x"] = s.x;
    doc["erf"] = oracle::erf_reference(s.x);
    doc["digits"] = oracle::erf_reference_digits(s.x);
    emit(doc, s.format, out);
    return kExitOk;
  }
  if (s.input.empty()) throw Error(ErrorKind::InvalidInput, "--input is required for this method");
  const auto [p1, p2] = io::parse_gaussian_pair(read_input(s.input, in), source_name(s.input));
  require_valid(p1, "first Gaussian");
  require_valid(p2, "second Gaussian");
  if (p1.dimension() != p2.dimension()) {
    throw Error(ErrorKind::InvalidInput, "the two Gaussians have different dimensions");
  }
  if (s.method == "quad1d") {
    if (p1.dimension() != 1) throw Error(ErrorKind::InvalidInput, "quad1d needs 1-D input");
    doc["tv"] = oracle::quadrature_tv_1d(p1.mean(0), p1.covariance(0, 0), p2.mean(0),
                                         p2.covariance(0, 0), s.tol);
    doc["tol"] = s.tol;
  } else if (s.method == "grid") {
    const oracle::GridTvResult g = oracle::grid_tv_nd(p1, p2, s.cells, s.extent);
    doc["tv"] = g.value;
    doc["error_estimate"] = g.error_estimate;
    doc["extrapolated"] = g.extrapolated;
    doc["cells"] = s.cells;
  } else {
    const oracle::McEstimate m = oracle::mc_tv_baseline(p1, p2, s.samples, s.seed);
    doc["tv"] = m.estimate;
    doc["standard_error"] = m.standard_error;
    doc["samples"] = s.samples;
    doc["seed"] = s.seed;
  }
  emit(doc, s.format, out);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Total variation distance between Gaussians", "gausstv"};
  app.require_subcommand(1);
  Settings s;
  const auto formats = CLI::IsMember({"json", "plain"});

  auto* compute = app.add_subcommand("compute", "TV distance of two Gaussians");
  compute->add_option("--input", s.input, "JSON file, or - for stdin")->required();
  compute->add_option("--eps", s.eps_text, "relative error, e.g. 0.01 or 1/100")->required();
  compute->add_flag("--diagnostics", s.diagnostics, "include solver diagnostics");
  compute->add_option("--format", s.format)->check(formats);

  auto* disprod = app.add_subcommand("disprod", "TV distance of two product distributions");
  disprod->add_option("--input", s.input, "JSON file, or - for stdin")->required();
  disprod->add_option("--eps", s.eps_text, "relative error")->required();
  disprod->add_flag("--diagnostics", s.diagnostics, "include solver diagnostics");
  disprod->add_option("--format", s.format)->check(formats);

  auto* oracle_cmd = app.add_subcommand("oracle", "reference computations");
  oracle_cmd->add_option("--method", s.method)
      ->required()
      ->check(CLI::IsMember({"quad1d", "grid", "mc", "erf"}));
  oracle_cmd->add_option("--input", s.input, "JSON file, or - for stdin");
  oracle_cmd->add_option("--seed", s.seed, "Monte Carlo seed");
  oracle_cmd->add_option("--samples", s.samples, "Monte Carlo sample count");
  oracle_cmd->add_option("--cells", s.cells, "grid cells per axis (even)");
  oracle_cmd->add_option("--extent", s.extent, "grid half-width in standard deviations");
  oracle_cmd->add_option("--tol", s.tol, "quadrature tolerance");
  oracle_cmd->add_option("--x", s.x, "erf argument");
  oracle_cmd->add_option("--format", s.format)->check(formats);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (compute->parsed()) return run_compute(s, in, out);
    if (disprod->parsed()) return run_disprod(s, in, out);
    return run_oracle(s, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? kExitNumerical : kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace gausstv
