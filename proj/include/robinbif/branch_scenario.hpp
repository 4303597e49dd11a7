#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinbif/continuation.hpp"
#include "robinbif/lyapunov_schmidt.hpp"
#include "robinbif/symmetry.hpp"

namespace robinbif {

enum class FamilyKind { Pitchfork, Transcritical, PureFirst, PureSecond, Mixed };

struct Amplitude {
  double z1 = 0.0;
  double z2 = 0.0;
};

/// Branch family of the truncated reduced equations, stored symbolically.
/// Families related by z_i -> -z_i are grouped: `amplitude` returns the
/// representative with z1 >= 0 (z2 >= 0 for pure-phi2); mixed(+,-) carries
/// z2 <= 0. Pitchfork families come as the explicit pair pitchfork(+) and
/// pitchfork(-).
struct BranchFamily {
  std::string label;
  FamilyKind kind = FamilyKind::Pitchfork;
  int sign = 1;  // sign of z for pitchfork(+/-), of z2 for mixed
  ReducedCoefficients coeffs;

  SymmetryLabel symmetry;            // computed on the leading-order function
  SymmetryLabel predicted_symmetry;
  bool symmetry_consistent = true;

  /// Amplitudes at (sigma, nu); nullopt outside the existence region.
  std::optional<Amplitude> amplitude(double sigma, double nu) const;
  /// Radicand(s) of the amplitude formula, nonnegative exactly on the
  /// existence region (transcritical: always 0).
  std::vector<double> radicands(double sigma, double nu) const;
  /// Sign conditions as text, e.g. "(sigma - 1.2732 nu)/c1 >= 0".
  std::string existence() const;
};

/// Max-norm residual of the truncated reduced equations at (z1, z2, sigma, nu);
/// the simple form includes q, so transcritical points are covered.
double reduced_residual(const ReducedCoefficients& rc, const Amplitude& z, double sigma, double nu);

/// z = +-((sigma - a nu)/c)^{1/2}. Throws DegeneracyError when c = 0 or the
/// point is transcritical.
std::vector<BranchFamily> pitchfork_branches(const ReducedCoefficients& rc);
/// Nontrivial root z = (sigma - a nu)/q of (-sigma + a nu) z + q z^2 = 0.
BranchFamily transcritical_branch(const ReducedCoefficients& rc);
/// pure-phi1, pure-phi2, mixed(+,+), mixed(+,-). Throws DegeneracyError when
/// c1 = 0 or c1^2 = c2^2.
std::vector<BranchFamily> double_branches(const ReducedCoefficients& rc);

/// Intersection of a pure family with the mixed families at sigma = ratio * nu.
struct SecondaryLocus {
  double ratio = 0.0;        // sigma / nu
  std::string pure;          // family met by the mixed branch
  std::string mixed = "mixed";
  int nu_sign = 1;           // sign of nu for which the pure family exists there
};

/// Loci where a mixed-mode amplitude vanishes on an existing pure family:
///   z1 = 0 at sigma/nu = (c1 d1 - c2 d2)/(c1 - c2)  (meets pure-phi2),
///   z2 = 0 at sigma/nu = (c1 d2 - c2 d1)/(c1 - c2)  (meets pure-phi1),
/// kept only when the pure family exists there for nu of sign `nu_sign` and
/// the locus is away from the primary root. Empty when d1 = d2. Throws
/// DegeneracyError when c1 = c2.
std::vector<SecondaryLocus> secondary_loci(const ReducedCoefficients& rc, int nu_sign = 1);

/// Isotropy of the leading-order function z1 phi1 + z2 phi2 (a point of the
/// existence region at nu) on an N x N grid, inside gamma_for(f_odd, mu0).
/// The prediction is the isotropy of phi_i for pure families and pitchforks,
/// of phi1 +- phi2 for mixed families with d1 = d2 or nu = 0, and of the
/// elements fixing both phi1 and phi2 otherwise. Stores both labels and the
/// consistency flag in `branch`.
SymmetryLabel classify_branch_symmetry(BranchFamily& branch, const BifurcationPoint& point,
                                       bool f_odd, double nu, int grid_n = 64);

struct ScenarioDiagram {
  BifurcationPoint point;
  ReducedCoefficients coeffs;
  std::vector<BranchFamily> branches;
  std::vector<SecondaryLocus> secondary_loci;
  double nu = 0.0;
  bool symmetry_preserved = true;  // d1 = d2 (double points)
  std::vector<std::string> notes;
};

ScenarioDiagram assemble_diagram(const BifurcationPoint& point, const ReducedCoefficients& coeffs,
                                 bool f_odd, double nu = 0.01, int grid_n = 64);

nlohmann::ordered_json to_json(const ScenarioDiagram& d);

/// SVG plot: lambda0 + sigma horizontal, signed amplitude |z| vertical, one
/// polyline per family and sign, secondary loci marked.
void write_diagram_svg(std::ostream& out, const ScenarioDiagram& d, double sigma_min,
                       double sigma_max, int samples = 200);

struct FamilySeed {
  ContinuationState state;
  GridFunction kernel;       // unit discrete kernel vector at the root
  double lambda_root = 0.0;  // discrete bifurcation value on op
};

/// Converged point of family `b` near its discrete root on op, at mode
/// amplitude `amplitude` along the Rayleigh-quotient refined kernel vector.
/// Tangent points away from the trivial branch. Throws ValidationError for
/// mixed families, which have no root on the trivial branch.
FamilySeed family_seed(const ScenarioDiagram& d, const BranchFamily& b, const GridOperator& op,
                       const Nonlinearity& f, double amplitude);

struct BranchValidation {
  std::string label;
  std::vector<double> sigma;
  std::vector<double> predicted;
  std::vector<double> computed;
  std::vector<double> rel_error;
  double max_rel_error = 0.0;
  bool error_decreasing = false;  // error at the smallest sigma below the largest
  double lambda_root = 0.0;       // discrete bifurcation point of the family
  std::vector<double> singular_sigma;
  std::string failure;            // empty on success
};

struct ContinuationReport {
  double nu = 0.0;
  double lambda_ref = 0.0;  // discrete lambda0 at mu0; sigma is measured from it
  std::vector<BranchValidation> branches;
};

struct ValidationOptions {
  std::vector<double> sigma_samples;  // default: 5 points spread over the window
  double seed_amplitude = 0.02;
  double ds = 0.01;
  double ds_max = 0.05;
  int max_steps = 400;
  /// Families to follow (labels); default: pitchforks and pure families.
  std::vector<std::string> families;
};

/// Follows each selected family on the discrete problem (op at mu0 + nu),
/// seeded from the trivial branch at the discrete bifurcation point along
/// the discrete kernel, and compares <phi_h, u_h> with the predicted mode
/// amplitude. Continuation failures are recorded per branch.
ContinuationReport validate_against_continuation(const ScenarioDiagram& d, const GridOperator& op,
                                               const Nonlinearity& f, double sigma_lo,
                                               double sigma_hi, double nu,
                                               const ValidationOptions& opts = {});

nlohmann::ordered_json to_json(const ContinuationReport& r);

}  // namespace robinbif
