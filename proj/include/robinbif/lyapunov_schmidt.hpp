#pragma once

#include <Eigen/SparseLU>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinbif/discrete_operator.hpp"
#include "robinbif/nonlinearity.hpp"
#include "robinbif/spectrum.hpp"

namespace robinbif {

enum class CoefficientKind { Simple, Double };

/// Normal-form constants of the 3-jet of the reduced equations
///   simple:  (-sigma + a nu) z + q z^2 + c z^3 = 0
///   double:  [-sigma + d1 nu + c1 z1^2 + c2 z2^2] z1 = 0,
///            [-sigma + d2 nu + c2 z1^2 + c1 z2^2] z2 = 0.
/// Unused fields are NaN. `provenance` is "closed_form", "numeric" or
/// "richardson"; `diagnostics` carries cross-checks in insertion order.
struct ReducedCoefficients {
  CoefficientKind kind = CoefficientKind::Simple;
  int n = 0;
  int k = 0;  // base mode m for simple points
  double mu0 = 0.0;
  double lambda0 = 0.0;
  double a, c, q, d1, d2, c1, c2;
  std::string provenance;
  /// True when |q| exceeds 1e-8 of its natural scale: the point is not a
  /// pitchfork and the transcritical truncation applies.
  bool transcritical = false;
  std::vector<std::pair<std::string, double>> diagnostics;

  ReducedCoefficients();
  double diagnostic(const std::string& key) const;  // NaN when absent
};

/// Combination z . phi of closed-form modes.
struct ModeCombination {
  std::vector<double> z;
  std::vector<EigenMode> modes;

  double operator()(double x, double y) const;
  double dy(double x, double y) const;
};

/// q = <phi, 1/2 D_uu f(0, lambda0) phi^2> by 96-node Gauss quadrature.
double quadratic_coeff(const EigenMode& phi, const Nonlinearity& f, double lambda0);

/// <phi_i, T'(mu0) psi> for psi in the kernel at lambda0, by the lifted form
///   h~ 2/(lambda0+1)^2 [ <phi_i, psi>/pi + <phi_i, (2y/pi - 1) d/dy psi> ].
double tprime_pairing(const EigenMode& phi_i, const ModeCombination& psi, double h_tilde,
                      double lambda0);
/// Same pairing with the discrete T' of the grid operator.
double tprime_pairing_grid(const GridOperator& op, const GridFunction& phi_i,
                           const GridFunction& psi);

/// Bordered solver for D_u G0 v = Q T(mu0) D_uu f0 phi_i phi_j, v orthogonal to
/// the kernel. Multiplied through by (K + M) the system reads
///   [K - lambda0 M, M Phi; Phi^T M, 0] [v; alpha] = [-M Q s; 0],  s = D_uu f0 phi_i phi_j.
/// The kernel vectors must be unit-norm discrete eigenvectors at lambda0;
/// otherwise KernelMismatchError is thrown.
class W2Solver {
 public:
  W2Solver(const GridOperator& op, std::vector<GridFunction> kernel, double lambda0,
           const Nonlinearity& f);
  GridFunction solve(const GridFunction& phi_i, const GridFunction& phi_j) const;

 private:
  const GridOperator* op_;
  std::vector<GridFunction> kernel_;
  double lambda0_;
  double d2_;
  Eigen::SparseLU<SparseMatrix> lu_;
};

GridFunction solve_w2(const GridFunction& phi_i, const GridFunction& phi_j, const GridOperator& op,
                      const std::vector<GridFunction>& kernel, double lambda0,
                      const Nonlinearity& f);

/// Simple point on op's grid (op.mu() must equal point.mu0): a from the
/// closed-form quadrature, q as a diagnostic, c from the discrete kernel
/// (Rayleigh-quotient refined) and solve_w2. Diagnostics: lambda0_grid, a_grid.
ReducedCoefficients simple_coeffs(const BifurcationPoint& point, const Nonlinearity& f,
                                  const GridOperator& op);

/// Closed forms at the Neumann double point n^2 + k^2 (mu0 = 0). Diagnostics
/// hold the quartic and orthogonality quadratures next to their exact values.
ReducedCoefficients double_coeffs_neumann(int n, int k, const Nonlinearity& f, double h_tilde0);

/// Numeric route at the Neumann double point on op (op.mu() must be 0):
/// sampled cosine kernel, solve_w2 for v11, v22, v12, and d_i from the
/// discrete T'. Diagnostics: lambda0_grid, c1_phi2 (c1 evaluated on phi2), d12.
ReducedCoefficients double_coeffs_numeric(int n, int k, const Nonlinearity& f,
                                          const GridOperator& op);

/// Second-order Richardson extrapolation of every numeric field.
ReducedCoefficients richardson(const ReducedCoefficients& coarse, double h_coarse,
                               const ReducedCoefficients& fine, double h_fine);

/// Literature constants for f = lambda (u^2 + u^3) with h0 = mu, h1 = 1 - mu at
/// the double points (1,2) and (0,1). The c2 value listed for (1,2) is the
/// printed 110220/(132 pi^2).
std::optional<ReducedCoefficients> tabulated_constants(int n, int k);

/// Outcome of comparing a numeric c2 against the formula and printed values.
struct C2Verdict {
  double formula = 0.0;
  double printed = 0.0;
  double numeric = 0.0;
  double rel_formula = 0.0;
  double rel_printed = 0.0;
  std::string verdict;  // "formula", "printed", "both", "neither"
};
C2Verdict adjudicate_c2(double formula, double printed, double numeric, double rel_tol = 0.05);

nlohmann::ordered_json to_json(const ReducedCoefficients& rc);

}  // namespace robinbif
