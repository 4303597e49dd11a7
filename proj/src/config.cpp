#include "robinbif/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "robinbif/errors.hpp"
#include "robinbif/io.hpp"

namespace robinbif {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": not an integer: '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream ss(v);
  std::string tok;
  while (ss >> tok) out.push_back(to_double(key, tok));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

}  // namespace

HomotopySpec RunConfig::homotopy_spec() const {
  if (homotopy == "linear") return HomotopySpec::linear();
  if (homotopy == "quadratic") return HomotopySpec::quadratic();
  if (homotopy == "polynomial") return HomotopySpec::polynomial(h0_coeffs, h1_coeffs);
  throw ConfigError("homotopy: unknown family '" + homotopy + "'");
}

Nonlinearity RunConfig::make_nonlinearity() const {
  if (nonlinearity == "table") {
    if (f_table.empty()) throw ConfigError("nonlinearity.table: empty coefficient table");
    return Nonlinearity(f_table, "table");
  }
  return Nonlinearity::from_name(nonlinearity);
}

void RunConfig::validate() const {
  if (grid < 8) throw ConfigError("grid: N must be >= 8");
  if (coeff_grid < 8) throw ConfigError("coeff_grid: N must be >= 8");
  if (curve_samples < 2) throw ConfigError("curve_samples: at least 2 samples");
  for (auto [name, v] : {std::pair{"root_tol", root_tol}, {"newton_tol", newton_tol}, {"eig_tol", eig_tol},
                         {"ds", ds}, {"sigma_max", sigma_max}}) {
    if (!(v > 0)) throw ConfigError(std::string(name) + ": must be positive");
  }
  if (!(lambda_max > 0)) throw ConfigError("lambda_max: must be positive");
  if (steps < 1) throw ConfigError("steps: must be >= 1");
  if (mu0 >= 1.0) throw ConfigError("mu0: simple points need mu0 in (0,1)");
  if (n < 0 || k < 0) throw ConfigError("n/k: must be nonnegative");
  if (verify_grid != 0 && verify_grid < 8) throw ConfigError("verify_grid: N must be 0 or >= 8");
  if (out_dir.empty()) throw ConfigError("out: empty output directory");
  try {
    const auto spec = homotopy_spec();
    const auto rep = validate_homotopy(spec, 64);
    if (!rep.ok()) throw ConfigError("homotopy: " + rep.violations.front());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("homotopy: ") + e.what());
  }
  try {
    make_nonlinearity();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("nonlinearity: ") + e.what());
  }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key == "homotopy") c.homotopy = v;
    else if (key == "homotopy.h0") c.h0_coeffs = to_list(key, v);
    else if (key == "homotopy.h1") c.h1_coeffs = to_list(key, v);
    else if (key == "nonlinearity") c.nonlinearity = v;
    else if (key == "nonlinearity.table") {
      c.f_table.clear();
      std::istringstream rows(v);
      std::string row;
      while (std::getline(rows, row, ';')) c.f_table.push_back(to_list(key, row));
    }
    else if (key == "grid" || key == "N") c.grid = to_int(key, v);
    else if (key == "coeff_grid") c.coeff_grid = to_int(key, v);
    else if (key == "lambda_max") c.lambda_max = to_double(key, v);
    else if (key == "curve_samples") c.curve_samples = to_int(key, v);
    else if (key == "root_tol") c.root_tol = to_double(key, v);
    else if (key == "newton_tol") c.newton_tol = to_double(key, v);
    else if (key == "eig_tol") c.eig_tol = to_double(key, v);
    else if (key == "n") c.n = to_int(key, v);
    else if (key == "k") c.k = to_int(key, v);
    else if (key == "mu0") c.mu0 = to_double(key, v);
    else if (key == "nu") c.nu = to_double(key, v);
    else if (key == "sigma_max") c.sigma_max = to_double(key, v);
    else if (key == "steps") c.steps = to_int(key, v);
    else if (key == "ds") c.ds = to_double(key, v);
    else if (key == "branch") c.branch = v;
    else if (key == "out") c.out_dir = v;
    else if (key == "verify_grid") c.verify_grid = to_int(key, v);
    else throw ConfigError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig c = parse_config(in, path);
  c.validate();
  return c;
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "homotopy = " << c.homotopy << '\n';
  if (!c.h0_coeffs.empty()) out << "homotopy.h0 = " << join(c.h0_coeffs) << '\n';
  if (!c.h1_coeffs.empty()) out << "homotopy.h1 = " << join(c.h1_coeffs) << '\n';
  out << "nonlinearity = " << c.nonlinearity << '\n';
  if (!c.f_table.empty()) {
    out << "nonlinearity.table = ";
    for (std::size_t i = 0; i < c.f_table.size(); ++i) out << (i ? "; " : "") << join(c.f_table[i]);
    out << '\n';
  }
  out << "grid = " << c.grid << '\n'
      << "coeff_grid = " << c.coeff_grid << '\n'
      << "lambda_max = " << format_double(c.lambda_max) << '\n'
      << "curve_samples = " << c.curve_samples << '\n'
      << "root_tol = " << format_double(c.root_tol) << '\n'
      << "newton_tol = " << format_double(c.newton_tol) << '\n'
      << "eig_tol = " << format_double(c.eig_tol) << '\n'
      << "n = " << c.n << '\n'
      << "k = " << c.k << '\n'
      << "mu0 = " << format_double(c.mu0) << '\n'
      << "nu = " << format_double(c.nu) << '\n'
      << "sigma_max = " << format_double(c.sigma_max) << '\n'
      << "steps = " << c.steps << '\n'
      << "ds = " << format_double(c.ds) << '\n'
      << "branch = " << c.branch << '\n'
      << "out = " << c.out_dir << '\n'
      << "verify_grid = " << c.verify_grid << '\n';
}

}  // namespace robinbif
