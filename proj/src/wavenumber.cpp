#include "robinbif/wavenumber.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "robinbif/errors.hpp"
#include "robinbif/io.hpp"

namespace robinbif {

namespace {

using std::numbers::pi;

// Bracket shrink near the integers, where the factors have double roots.
constexpr double kBracketEps = 1e-8;

double factor(double k, double mu, Parity parity, const HomotopySpec& spec) {
  const auto f = parity_factors(k, mu, spec);
  return parity == Parity::Even ? f.even : f.odd;
}

// Bisection with Illinois-modified false position steps. The secant candidate
// is accepted only while it shrinks the bracket at least as fast as bisection
// would over two iterations.
template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb, double tol) {
  int side = 0;
  double prev_width = b - a;
  for (int it = 0; it < 400; ++it) {
    double x = (a * fb - b * fa) / (fb - fa);
    const double width = b - a;
    if (!(x > a && x < b) || width > 0.5 * prev_width) {
      x = 0.5 * (a + b);
      prev_width = width;
      side = 0;
    }
    const double fx = f(x);
    if (std::abs(fx) < tol || width < 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      return x;
    }
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

std::string describe_bracket(double a, double b, double fa, double fb) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "bracket (%.17g, %.17g) factor values (%.6g, %.6g)", a, b, fa, fb);
  return buf;
}

}  // namespace

std::string to_string(Parity p) { return p == Parity::Even ? "EVEN" : "ODD"; }

Parity parse_parity(const std::string& s) {
  if (s == "EVEN" || s == "even") return Parity::Even;
  if (s == "ODD" || s == "odd") return Parity::Odd;
  throw ValidationError("unknown parity '" + s + "'");
}

double residual19(double k, double mu, const HomotopySpec& spec) {
  const double a = spec.h0(mu);
  const double b = spec.h1(mu);
  return 2.0 * a * b * k * std::cos(k * pi) + (a * a - b * b * k * k) * std::sin(k * pi);
}

ParityFactors parity_factors(double k, double mu, const HomotopySpec& spec) {
  const double a = spec.h0(mu);
  const double b = spec.h1(mu);
  const double s = std::sin(k * pi);
  const double c = std::cos(k * pi);
  return {a * s - b * k * (1.0 - c), a * s + b * k * (1.0 + c)};
}

Wavenumber solve_k(double mu, int m, Parity parity, const HomotopySpec& spec, double tol,
                   std::optional<double> lower_hint) {
  if (m < 0) throw DomainError("solve_k: base mode must be nonnegative");
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("solve_k: mu must lie in [0,1]");
  if (!(tol > 0.0)) throw DomainError("solve_k: tol must be positive");
  if (parity != parity_of(m)) {
    throw DomainError("solve_k: parity " + to_string(parity) + " does not match base mode " +
                      std::to_string(m));
  }
  if (mu == 0.0) return {static_cast<double>(m), mu, parity, m};
  if (mu == 1.0) return {static_cast<double>(m + 1), mu, parity, m};

  auto g = [&](double k) { return factor(k, mu, parity, spec); };
  double a = m + kBracketEps;
  double b = m + 1 - kBracketEps;
  double fa = g(a);
  const double fb = g(b);
  if (lower_hint && *lower_hint > a && *lower_hint < b) {
    const double fh = g(*lower_hint);
    if (fh != 0.0 && (fh > 0) == (fa > 0) && (fh > 0) != (fb > 0)) {
      a = *lower_hint;
      fa = fh;
    }
  }
  if (fa == 0.0) return {a, mu, parity, m};
  if ((fa > 0) == (fb > 0)) {
    throw RootIsolationError("solve_k: no sign change of the " + to_string(parity) +
                             " factor, " + describe_bracket(a, b, fa, fb));
  }
  const double k = bracketed_root(g, a, b, fa, fb, tol);
  return {k, mu, parity, m};
}

WavenumberCurve trace_curve(int m, Parity parity, const HomotopySpec& spec, int n_samples) {
  if (n_samples < 3) throw DomainError("trace_curve: n_samples must be >= 3");
  const auto report = validate_homotopy(spec, 100);
  if (!report.ok()) {
    throw CurveError("trace_curve: homotopy '" + spec.family_tag() +
                     "' violates its hypotheses: " + report.violations.front());
  }
  WavenumberCurve curve{m, parity, {}};
  curve.samples.reserve(n_samples);
  std::optional<double> hint;
  for (int i = 0; i < n_samples; ++i) {
    const double mu = (i == n_samples - 1) ? 1.0 : static_cast<double>(i) / (n_samples - 1);
    const auto w = solve_k(mu, m, parity, spec, kDefaultRootTol, hint);
    if (i > 0) hint = w.k;
    curve.samples.push_back({mu, w.k});
  }
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    if (!(curve.samples[i].k > curve.samples[i - 1].k)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "trace_curve: k not increasing on mu in [%.6g, %.6g]",
                    curve.samples[i - 1].mu, curve.samples[i].mu);
      throw CurveError(buf);
    }
  }
  return curve;
}

void write_curves_csv(std::ostream& os, const std::vector<WavenumberCurve>& curves) {
  os << "mu,k,parity,base_mode\n";
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      os << format_double(s.mu) << ',' << format_double(s.k) << ',' << to_string(c.parity) << ','
         << c.base_mode << '\n';
    }
  }
}

}  // namespace robinbif
