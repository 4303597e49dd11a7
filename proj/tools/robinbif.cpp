// Command-line front end: spectrum | coeffs | diagram | trace | verify.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "robinbif/acceptance.hpp"
#include "robinbif/branch_scenario.hpp"
#include "robinbif/config.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/spectrum.hpp"

namespace fs = std::filesystem;
using namespace robinbif;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> n, k, grid;
  std::optional<double> mu0, nu, lambda_max;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c = load_config(o.config);
  if (o.out) c.out_dir = *o.out;
  if (o.n) c.n = *o.n;
  if (o.k) c.k = *o.k;
  if (o.grid) {
    c.grid = *o.grid;
    c.verify_grid = *o.grid;
  }
  if (o.mu0) c.mu0 = *o.mu0;
  if (o.nu) c.nu = *o.nu;
  if (o.lambda_max) c.lambda_max = *o.lambda_max;
  c.validate();
  return c;
}

fs::path out_file(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("out: cannot write '" + p.string() + "'");
  f << text;
}

// Timestamps live only in this sidecar, never in the data files.
void write_meta(const RunConfig& c, const std::string& command, const std::vector<std::string>& files) {
  std::ostringstream cfg;
  write_config(cfg, c);
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::ordered_json j;
  j["command"] = command;
  j["timestamp"] = stamp;
  j["files"] = files;
  j["config"] = cfg.str();
  write_text(out_file(c, command + ".meta.json"), j.dump(2) + "\n");
}

bool builtin_reference(const RunConfig& c) { return c.homotopy == "linear" && c.nonlinearity == "lambda-u2-u3"; }

struct Selected {
  BifurcationPoint point;
  ReducedCoefficients coeffs;
  double mu = 0.0;  // boundary parameter of the operator the point lives on
};

Selected select_point(const RunConfig& c, const Nonlinearity& f, const HomotopySpec& spec) {
  Selected s;
  if (c.mu0 >= 0) {
    s.point = simple_point(c.n, c.k, c.mu0, spec);
    const GridOperator op(c.grid, c.mu0, spec);
    s.coeffs = simple_coeffs(s.point, f, op);
    s.mu = c.mu0;
  } else {
    s.point = neumann_double_point(c.n, c.k);
    s.coeffs = double_coeffs_neumann(c.n, c.k, f, ratio_and_derivative(spec, 0.0).derivative);
    s.mu = c.nu;
  }
  return s;
}

int cmd_spectrum(const RunConfig& c) {
  const auto curves = bifurcation_curves(c.lambda_max, c.homotopy_spec(), c.curve_samples);
  std::ostringstream csv;
  write_spectrum_csv(csv, curves);
  const auto p = out_file(c, "spectrum.csv");
  write_text(p, csv.str());
  write_meta(c, "spectrum", {p.filename().string()});
  std::cout << curves.size() << " curves -> " << p.string() << "\n";
  return 0;
}

int cmd_coeffs(const RunConfig& c) {
  const auto spec = c.homotopy_spec();
  const auto f = c.make_nonlinearity();
  nlohmann::ordered_json j;
  if (c.mu0 >= 0) {
    const auto s = select_point(c, f, spec);
    j["coefficients"] = to_json(s.coeffs);
  } else {
    const auto cf = double_coeffs_neumann(c.n, c.k, f, ratio_and_derivative(spec, 0.0).derivative);
    const GridOperator op(c.coeff_grid, 0.0, spec);
    const auto nf = double_coeffs_numeric(c.n, c.k, f, op);
    j["closed_form"] = to_json(cf);
    j["numeric"] = to_json(nf);
    nlohmann::ordered_json chk;
    chk["formula"] = cf.c2;
    chk["numeric"] = nf.c2;
    chk["discrepancy"] = std::abs(nf.c2 - cf.c2) > 0.05 * std::abs(cf.c2);
    if (const auto tab = tabulated_constants(c.n, c.k); tab && builtin_reference(c)) {
      const auto v = adjudicate_c2(cf.c2, tab->c2, nf.c2, 0.05);
      chk["printed"] = v.printed;
      chk["verdict"] = v.verdict;
    }
    j["c2_check"] = chk;
  }
  const auto p = out_file(c, "coeffs.json");
  write_text(p, j.dump(2) + "\n");
  write_meta(c, "coeffs", {p.filename().string()});
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_diagram(const RunConfig& c) {
  const auto spec = c.homotopy_spec();
  const auto f = c.make_nonlinearity();
  const auto s = select_point(c, f, spec);
  const double nu = c.mu0 >= 0 ? 0.0 : c.nu;
  const auto d = assemble_diagram(s.point, s.coeffs, f.odd_in_u(), nu);
  double w = c.sigma_max;
  for (const auto& l : d.secondary_loci) w = std::max(w, 1.5 * std::abs(l.ratio * nu));
  const auto pj = out_file(c, "diagram.json");
  const auto ps = out_file(c, "diagram.svg");
  write_text(pj, to_json(d).dump(2) + "\n");
  std::ostringstream svg;
  write_diagram_svg(svg, d, -0.25 * w, w);
  write_text(ps, svg.str());
  write_meta(c, "diagram", {pj.filename().string(), ps.filename().string()});
  for (const auto& b : d.branches) std::cout << b.label << ": " << b.symmetry.name << ", " << b.existence() << "\n";
  for (const auto& l : d.secondary_loci) std::cout << "secondary locus on " << l.pure << " at sigma/nu = " << l.ratio << "\n";
  return 0;
}

int cmd_trace(const RunConfig& c) {
  const auto spec = c.homotopy_spec();
  const auto f = c.make_nonlinearity();
  ContinuationOptions co;
  co.steps = c.steps;
  co.ds = c.ds;
  co.tol = c.newton_tol;
  co.lambda_min = -1.0;
  co.lambda_max = c.lambda_max;
  BranchTrace trace;
  if (c.branch == "trivial") {
    const double mu = c.mu0 >= 0 ? c.mu0 : c.nu;
    const GridOperator op(c.grid, mu, spec);
    ContinuationState seed;
    seed.u = GridFunction::Zero(op.grid().size());
    seed.lambda = 0.0;
    seed.mu = mu;
    co.lambda_min = -0.5;
    trace = continue_branch(op, f, seed, co);
  } else {
    const auto s = select_point(c, f, spec);
    const GridOperator op(c.grid, s.mu, spec);
    const double nu = c.mu0 >= 0 ? 0.0 : c.nu;
    const auto d = assemble_diagram(s.point, s.coeffs, f.odd_in_u(), nu);
    const BranchFamily* fam = nullptr;
    for (const auto& b : d.branches)
      if (b.label == c.branch) fam = &b;
    if (!fam) throw ConfigError("branch: no family '" + c.branch + "' at this point");
    const auto seed = family_seed(d, *fam, op, f, 0.02);
    co.amplitude_probe = seed.kernel;
    trace = continue_branch(op, f, seed.state, co);
  }
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  const auto p = out_file(c, "trace.csv");
  write_text(p, csv.str());
  write_meta(c, "trace", {p.filename().string()});
  std::cout << trace.points.size() << " points -> " << p.string() << "\n";
  for (const auto& sp : trace.singular) {
    std::cout << "singular point at lambda = " << sp.state.lambda << " (amplitude " << sp.amplitude << ")\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& c) {
  AcceptanceOptions opts;
  opts.grid = c.verify_grid;
  const auto rep = run_acceptance(opts, [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; });
  const auto p = out_file(c, "verify.json");
  write_text(p, to_json(rep).dump(2) + "\n");
  write_meta(c, "verify", {p.filename().string()});
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation scenarios of the Robin-homotopy semilinear problem on the square"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "key = value configuration file");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--n", o.n, "x wavenumber of the point");
  app.add_option("--k", o.k, "y wavenumber (double point) or base mode (simple point)");
  app.add_option("--mu0", o.mu0, "simple point at this mu0 in (0,1); omit for the Neumann double point");
  app.add_option("--nu", o.nu, "homotopy offset from mu0 = 0");
  app.add_option("--grid", o.grid, "grid size N");
  app.add_option("--lambda-max", o.lambda_max, "largest lambda");

  int (*run)(const RunConfig&) = nullptr;
  app.add_subcommand("spectrum", "bifurcation-point curves as CSV")->callback([&] { run = cmd_spectrum; });
  app.add_subcommand("coeffs", "reduced-equation coefficients as JSON")->callback([&] { run = cmd_coeffs; });
  app.add_subcommand("diagram", "bifurcation diagram as JSON and SVG")->callback([&] { run = cmd_diagram; });
  app.add_subcommand("trace", "continuation trace as CSV")->callback([&] { run = cmd_trace; });
  app.add_subcommand("verify", "run the acceptance criteria")->callback([&] { run = cmd_verify; });
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return run(resolve(o));
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
