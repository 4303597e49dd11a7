#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robinbif/homotopy.hpp"
#include "robinbif/nonlinearity.hpp"

namespace robinbif {

/// Plain key = value run configuration. Every key has a default, so an empty
/// file (or no file) is a valid configuration. Lines starting with '#' are
/// comments.
///
///   homotopy      linear | quadratic | polynomial
///   homotopy.h0   polynomial coefficients, lowest degree first ("0 1")
///   homotopy.h1   same for h1 ("1 -1")
///   nonlinearity  lambda-u2-u3 | u3 | table
///   nonlinearity.table  rows p = 0,1,2,... separated by ';', each row the
///                 coefficients of lambda^q in front of u^p ("0; 0; 0 1; 0 1")
struct RunConfig {
  std::string homotopy = "linear";
  std::vector<double> h0_coeffs;
  std::vector<double> h1_coeffs;
  std::string nonlinearity = "lambda-u2-u3";
  std::vector<std::vector<double>> f_table;

  int grid = 96;
  int coeff_grid = 128;
  double lambda_max = 20.0;
  int curve_samples = 101;
  double root_tol = 1e-13;
  double newton_tol = 1e-10;
  double eig_tol = 1e-10;

  int n = 1;
  int k = 2;
  double mu0 = -1.0;  // < 0: Neumann double point (n, k); otherwise simple point on curve (n, k)
  double nu = 0.01;
  double sigma_max = 0.1;
  int steps = 200;
  double ds = 0.01;
  std::string branch = "pitchfork(+)";
  std::string out_dir = "out";
  int verify_grid = 0;  // 0: acceptance criteria at their pinned resolutions

  HomotopySpec homotopy_spec() const;
  Nonlinearity make_nonlinearity() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
/// Empty path: defaults. Validates before returning.
RunConfig load_config(const std::string& path);
/// Canonical key = value dump, one key per line in declaration order.
void write_config(std::ostream& out, const RunConfig& c);

}  // namespace robinbif
