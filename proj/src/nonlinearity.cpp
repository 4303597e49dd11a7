#include "robinbif/nonlinearity.hpp"

#include <cmath>

#include "robinbif/errors.hpp"

namespace robinbif {

Nonlinearity::Nonlinearity(std::vector<std::vector<double>> coeffs, std::string name)
    : coeffs_(std::move(coeffs)), name_(std::move(name)) {
  odd_ = true;
  for (std::size_t p = 0; p < coeffs_.size(); p += 2)
    for (double a : coeffs_[p])
      if (a != 0.0) odd_ = false;

  constexpr double kStep = 1e-4;
  for (double lambda : {-2.0, 0.0, 1.0, 5.0, 20.0}) {
    const double scale = 1.0 + std::abs(f(1.0, lambda)) + std::abs(f(-1.0, lambda));
    if (std::abs(f(0.0, lambda)) > 1e-12 * scale) {
      throw ValidationError("nonlinearity '" + name_ + "': f(0, lambda) != 0");
    }
    // Central difference; exact up to O(step^2) from the cubic term.
    const double du = (f(kStep, lambda) - f(-kStep, lambda)) / (2 * kStep);
    if (std::abs(du) > 1e-6 * scale) {
      throw ValidationError("nonlinearity '" + name_ + "': D_u f(0, lambda) != 0");
    }
  }
}

Nonlinearity Nonlinearity::lambda_u2_u3() {
  return Nonlinearity({{}, {}, {0.0, 1.0}, {0.0, 1.0}}, "lambda-u2-u3");
}

Nonlinearity Nonlinearity::from_name(const std::string& name) {
  if (name == "lambda-u2-u3") return lambda_u2_u3();
  if (name == "u3") return Nonlinearity({{}, {}, {}, {1.0}}, "u3");
  throw ValidationError("unknown nonlinearity '" + name + "'");
}

double Nonlinearity::power_coeff(std::size_t p, double lambda) const {
  if (p >= coeffs_.size()) return 0.0;
  double acc = 0.0;
  const auto& c = coeffs_[p];
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

double Nonlinearity::power_coeff_dl(std::size_t p, double lambda) const {
  if (p >= coeffs_.size()) return 0.0;
  double acc = 0.0;
  const auto& c = coeffs_[p];
  for (std::size_t q = c.size(); q-- > 1;) acc = acc * lambda + q * c[q];
  return acc;
}

double Nonlinearity::f(double u, double lambda) const {
  double acc = 0.0;
  for (std::size_t p = coeffs_.size(); p-- > 0;) acc = acc * u + power_coeff(p, lambda);
  return acc;
}

double Nonlinearity::f_u(double u, double lambda) const {
  double acc = 0.0;
  for (std::size_t p = coeffs_.size(); p-- > 1;) acc = acc * u + p * power_coeff(p, lambda);
  return acc;
}

double Nonlinearity::f_lambda(double u, double lambda) const {
  double acc = 0.0;
  for (std::size_t p = coeffs_.size(); p-- > 0;) acc = acc * u + power_coeff_dl(p, lambda);
  return acc;
}

double Nonlinearity::d2(double lambda) const { return 2.0 * power_coeff(2, lambda); }
double Nonlinearity::d3(double lambda) const { return 6.0 * power_coeff(3, lambda); }

GridFunction Nonlinearity::apply(const GridFunction& u, double lambda) const {
  return u.unaryExpr([&](double v) { return f(v, lambda); });
}

GridFunction Nonlinearity::apply_u(const GridFunction& u, double lambda) const {
  return u.unaryExpr([&](double v) { return f_u(v, lambda); });
}

GridFunction Nonlinearity::apply_lambda(const GridFunction& u, double lambda) const {
  return u.unaryExpr([&](double v) { return f_lambda(v, lambda); });
}

}  // namespace robinbif
