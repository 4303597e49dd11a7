#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robinbif/homotopy.hpp"

namespace robinbif {

/// Which factor of the factored wavenumber equation vanishes.
enum class Parity { Even, Odd };

std::string to_string(Parity p);
Parity parse_parity(const std::string& s);
/// Neumann convention: base mode m carries the parity of the integer m.
inline Parity parity_of(int m) { return (m % 2 == 0) ? Parity::Even : Parity::Odd; }

struct Wavenumber {
  double k = 0.0;
  double mu = 0.0;
  Parity parity = Parity::Even;
  int base_mode = 0;
};

struct CurveSample {
  double mu;
  double k;
};

struct WavenumberCurve {
  int base_mode = 0;
  Parity parity = Parity::Even;
  std::vector<CurveSample> samples;
};

/// 2 h0 h1 k cos(k pi) + (h0^2 - h1^2 k^2) sin(k pi).
double residual19(double k, double mu, const HomotopySpec& spec);

struct ParityFactors {
  double even;  // h0 sin(k pi) - h1 k (1 - cos(k pi))
  double odd;   // h0 sin(k pi) + h1 k (1 + cos(k pi))
};

/// even * odd == sin(k pi) * residual19(k, mu) up to round-off.
ParityFactors parity_factors(double k, double mu, const HomotopySpec& spec);

inline constexpr double kDefaultRootTol = 1e-12;

/// Root of the parity factor in (m, m+1). At mu = 0 and mu = 1 the exact
/// limits m and m+1 are returned. `lower_hint` narrows the bracket when a
/// previous, smaller root along the same curve is known.
Wavenumber solve_k(double mu, int m, Parity parity, const HomotopySpec& spec,
                   double tol = kDefaultRootTol, std::optional<double> lower_hint = std::nullopt);

/// Samples k(mu) at n_samples equispaced mu in [0,1], endpoints set exactly,
/// and verifies strict monotonicity. Throws CurveError on an invalid spec or a
/// monotonicity violation.
WavenumberCurve trace_curve(int m, Parity parity, const HomotopySpec& spec, int n_samples);

/// CSV with header `mu,k,parity,base_mode`.
void write_curves_csv(std::ostream& os, const std::vector<WavenumberCurve>& curves);

}  // namespace robinbif
