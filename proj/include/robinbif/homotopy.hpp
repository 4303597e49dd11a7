#pragma once

#include <functional>
#include <string>
#include <vector>

namespace robinbif {

using ScalarFunction = std::function<double(double)>;

/// Boundary-condition homotopy (h0(mu), h1(mu)) on mu in [0,1].
///
/// The y-sides carry h0 u -+ h1 du/dy = 0, so mu = 0 is homogeneous Neumann
/// and mu = 1 is Dirichlet on y = 0, pi. Instances are immutable and safe to
/// share between threads.
class HomotopySpec {
 public:
  /// h0 = mu, h1 = 1 - mu.
  static HomotopySpec linear();
  /// h0 = mu^2, h1 = (1 - mu)^2.
  static HomotopySpec quadratic();
  /// Polynomial coefficient tables, lowest degree first. Derivatives are exact.
  static HomotopySpec polynomial(std::vector<double> h0_coeffs, std::vector<double> h1_coeffs,
                                 std::string tag = "poly");
  /// Arbitrary functions with analytic derivatives.
  static HomotopySpec analytic(ScalarFunction h0, ScalarFunction h1, ScalarFunction dh0,
                               ScalarFunction dh1, std::string tag);
  /// Functions without derivatives; derivatives are taken by differences with
  /// step 1e-6 and the homotopy is flagged as approximate.
  static HomotopySpec from_functions(ScalarFunction h0, ScalarFunction h1, std::string tag);

  double h0(double mu) const { return h0_(mu); }
  double h1(double mu) const { return h1_(mu); }
  double dh0(double mu) const { return dh0_(mu); }
  double dh1(double mu) const { return dh1_(mu); }

  const std::string& family_tag() const { return tag_; }
  bool approximate_derivatives() const { return approximate_; }

 private:
  HomotopySpec(ScalarFunction h0, ScalarFunction h1, ScalarFunction dh0, ScalarFunction dh1,
               std::string tag, bool approximate);

  ScalarFunction h0_, h1_, dh0_, dh1_;
  std::string tag_;
  bool approximate_ = false;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool approximate_derivatives = false;

  bool ok() const { return violations.empty(); }
};

/// Checks the endpoint conditions h0(0) = h1(1) = 0, non-vanishing of h0 on
/// (0,1] and h1 on [0,1), the sign condition h0/h1 >= 0 and the monotonicity
/// (h1/h0)' < 0 at `samples` interior points. Throws EvaluationError on a
/// non-finite function value.
ValidationReport validate_homotopy(const HomotopySpec& spec, int samples);

struct RatioDerivative {
  double ratio;       // h0/h1
  double derivative;  // (h0/h1)'
};

/// r = h0/h1 and its derivative by the quotient rule. Requires mu in [0,1)
/// and h1(mu) != 0.
RatioDerivative ratio_and_derivative(const HomotopySpec& spec, double mu);

}  // namespace robinbif
