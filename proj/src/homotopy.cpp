#include "robinbif/homotopy.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "robinbif/errors.hpp"

namespace robinbif {

namespace {

constexpr double kDiffStep = 1e-6;
constexpr double kZeroTol = 1e-14;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

// Central difference, falling back to second-order one-sided stencils so that
// the endpoints never evaluate outside [0,1].
ScalarFunction numeric_derivative(ScalarFunction f) {
  return [f = std::move(f)](double mu) {
    const double h = kDiffStep;
    if (mu - h < 0.0) return (-3.0 * f(mu) + 4.0 * f(mu + h) - f(mu + 2 * h)) / (2 * h);
    if (mu + h > 1.0) return (3.0 * f(mu) - 4.0 * f(mu - h) + f(mu - 2 * h)) / (2 * h);
    return (f(mu + h) - f(mu - h)) / (2 * h);
  };
}

std::string at(double mu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " at mu=%.6g", mu);
  return buf;
}

double checked(const ScalarFunction& f, double mu, const char* name) {
  const double v = f(mu);
  if (!std::isfinite(v)) {
    throw EvaluationError(std::string("non-finite value of ") + name + at(mu), mu);
  }
  return v;
}

}  // namespace

HomotopySpec::HomotopySpec(ScalarFunction h0, ScalarFunction h1, ScalarFunction dh0,
                           ScalarFunction dh1, std::string tag, bool approximate)
    : h0_(std::move(h0)),
      h1_(std::move(h1)),
      dh0_(std::move(dh0)),
      dh1_(std::move(dh1)),
      tag_(std::move(tag)),
      approximate_(approximate) {}

HomotopySpec HomotopySpec::linear() {
  return HomotopySpec([](double mu) { return mu; }, [](double mu) { return 1.0 - mu; },
                      [](double) { return 1.0; }, [](double) { return -1.0; }, "linear", false);
}

HomotopySpec HomotopySpec::quadratic() {
  return HomotopySpec([](double mu) { return mu * mu; },
                      [](double mu) { return (1.0 - mu) * (1.0 - mu); },
                      [](double mu) { return 2.0 * mu; },
                      [](double mu) { return -2.0 * (1.0 - mu); }, "quadratic", false);
}

HomotopySpec HomotopySpec::polynomial(std::vector<double> h0_coeffs, std::vector<double> h1_coeffs,
                                      std::string tag) {
  auto d0 = poly_derivative(h0_coeffs);
  auto d1 = poly_derivative(h1_coeffs);
  return HomotopySpec([c = std::move(h0_coeffs)](double mu) { return horner(c, mu); },
                      [c = std::move(h1_coeffs)](double mu) { return horner(c, mu); },
                      [c = std::move(d0)](double mu) { return horner(c, mu); },
                      [c = std::move(d1)](double mu) { return horner(c, mu); }, std::move(tag),
                      false);
}

HomotopySpec HomotopySpec::analytic(ScalarFunction h0, ScalarFunction h1, ScalarFunction dh0,
                                    ScalarFunction dh1, std::string tag) {
  return HomotopySpec(std::move(h0), std::move(h1), std::move(dh0), std::move(dh1),
                      std::move(tag), false);
}

HomotopySpec HomotopySpec::from_functions(ScalarFunction h0, ScalarFunction h1, std::string tag) {
  auto dh0 = numeric_derivative(h0);
  auto dh1 = numeric_derivative(h1);
  return HomotopySpec(std::move(h0), std::move(h1), std::move(dh0), std::move(dh1),
                      std::move(tag), true);
}

ValidationReport validate_homotopy(const HomotopySpec& spec, int samples) {
  if (samples < 2) throw ValidationError("validate_homotopy: samples must be >= 2");
  ValidationReport report;
  report.approximate_derivatives = spec.approximate_derivatives();
  auto& out = report.violations;

  const double h0_at0 = checked([&](double m) { return spec.h0(m); }, 0.0, "h0");
  const double h1_at0 = checked([&](double m) { return spec.h1(m); }, 0.0, "h1");
  const double h0_at1 = checked([&](double m) { return spec.h0(m); }, 1.0, "h0");
  const double h1_at1 = checked([&](double m) { return spec.h1(m); }, 1.0, "h1");

  if (std::abs(h0_at0) > kZeroTol) out.push_back("h0(0) ≠ 0");
  if (std::abs(h1_at1) > kZeroTol) out.push_back("h1(1) ≠ 0");
  if (std::abs(h0_at1) <= kZeroTol) out.push_back("h0 vanishes" + at(1.0));
  if (std::abs(h1_at0) <= kZeroTol) out.push_back("h1 vanishes" + at(0.0));
  if (std::abs(h1_at0) > kZeroTol && h0_at0 / h1_at0 < -kZeroTol) {
    out.push_back("h0/h1 < 0" + at(0.0));
  }

  for (int i = 1; i <= samples; ++i) {
    const double mu = static_cast<double>(i) / (samples + 1);
    const double a = checked([&](double m) { return spec.h0(m); }, mu, "h0");
    const double b = checked([&](double m) { return spec.h1(m); }, mu, "h1");
    const double da = checked([&](double m) { return spec.dh0(m); }, mu, "dh0");
    const double db = checked([&](double m) { return spec.dh1(m); }, mu, "dh1");
    if (std::abs(a) <= kZeroTol) out.push_back("h0 vanishes" + at(mu));
    if (std::abs(b) <= kZeroTol) out.push_back("h1 vanishes" + at(mu));
    if (std::abs(a) <= kZeroTol || std::abs(b) <= kZeroTol) continue;
    if (a / b < 0.0) out.push_back("h0/h1 < 0" + at(mu));
    // (h1/h0)' = (h1' h0 - h1 h0') / h0^2
    if ((db * a - b * da) / (a * a) >= 0.0) out.push_back("(h1/h0)' >= 0" + at(mu));
  }
  return report;
}

RatioDerivative ratio_and_derivative(const HomotopySpec& spec, double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainError("ratio_and_derivative: mu must lie in [0,1)");
  const double a = spec.h0(mu);
  const double b = spec.h1(mu);
  if (b == 0.0) throw DomainError("ratio_and_derivative: h1 vanishes" + at(mu));
  const double da = spec.dh0(mu);
  const double db = spec.dh1(mu);
  const RatioDerivative rd{a / b, (da * b - a * db) / (b * b)};
  if (!std::isfinite(rd.ratio) || !std::isfinite(rd.derivative)) {
    throw EvaluationError("ratio_and_derivative: non-finite result" + at(mu), mu);
  }
  return rd;
}

}  // namespace robinbif
