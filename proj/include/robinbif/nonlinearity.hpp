#pragma once

#include <string>
#include <vector>

#include "robinbif/grid.hpp"

namespace robinbif {

/// Polynomial nonlinearity f(u, lambda) = sum_p (sum_q a[p][q] lambda^q) u^p.
///
/// Construction checks f(0, lambda) = 0 and D_u f(0, lambda) = 0 by finite
/// differences at five lambda values and throws ValidationError otherwise.
class Nonlinearity {
 public:
  Nonlinearity(std::vector<std::vector<double>> coeffs, std::string name);

  /// f(u, lambda) = lambda (u^2 + u^3).
  static Nonlinearity lambda_u2_u3();
  static Nonlinearity from_name(const std::string& name);

  double f(double u, double lambda) const;
  double f_u(double u, double lambda) const;
  double f_lambda(double u, double lambda) const;
  /// D_uu f(0, lambda) and D_uuu f(0, lambda).
  double d2(double lambda) const;
  double d3(double lambda) const;
  bool odd_in_u() const { return odd_; }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<double>>& coefficients() const { return coeffs_; }

  GridFunction apply(const GridFunction& u, double lambda) const;
  GridFunction apply_u(const GridFunction& u, double lambda) const;
  GridFunction apply_lambda(const GridFunction& u, double lambda) const;

 private:
  double power_coeff(std::size_t p, double lambda) const;
  double power_coeff_dl(std::size_t p, double lambda) const;

  std::vector<std::vector<double>> coeffs_;
  std::string name_;
  bool odd_ = false;
};

}  // namespace robinbif
