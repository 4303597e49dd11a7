#include "robinbif/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "robinbif/errors.hpp"
#include "robinbif/io.hpp"

namespace robinbif {

namespace {

using std::numbers::pi;

// 1 - sin(t)/t without cancellation for small t.
double one_minus_sinc(double t) {
  if (std::abs(t) < 1e-2) {
    const double t2 = t * t;
    return t2 / 6.0 - t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0;
  }
  return 1.0 - std::sin(t) / t;
}

// Integral over (0,pi) of ((h0/k) sin(ky) + h1 cos(ky))^2.
double profile_norm_sq(double k, double h0, double h1) {
  if (k == 0.0) {
    // (h0 y + h1)^2
    return h0 * h0 * pi * pi * pi / 3.0 + h0 * h1 * pi * pi + h1 * h1 * pi;
  }
  const double t = 2.0 * k * pi;
  // int sin^2 = pi/2 (1 - sinc t), int cos^2 = pi/2 (1 + sinc t)
  const double a = h0 / k;
  const double sinc = 1.0 - one_minus_sinc(t);
  const double iss = 0.5 * pi * one_minus_sinc(t);
  const double icc = 0.5 * pi * (1.0 + sinc);
  const double s = std::sin(k * pi);
  // 2 a h1 int sin cos = a h1 sin^2(k pi) / k
  return a * a * iss + h1 * h1 * icc + a * h1 * s * s / k;
}

}  // namespace

EigenMode::EigenMode(int n, double k, double mu, double h0, double h1)
    : n_(n), k_(k), mu_(mu), h0_(h0), h1_(h1) {
  if (n < 0 || k < 0.0) throw ValidationError("EigenMode: wavenumbers must be nonnegative");
  const double x_norm_sq = (n == 0) ? pi : 0.5 * pi;
  const double norm_sq = x_norm_sq * profile_norm_sq(k, h0, h1);
  if (!std::isfinite(norm_sq) || norm_sq <= 1e-300) {
    throw ValidationError("EigenMode: degenerate mode (phi identically zero)");
  }
  scale_ = 1.0 / std::sqrt(norm_sq);
}

EigenMode::EigenMode(int n, const Wavenumber& k, const HomotopySpec& spec)
    : EigenMode(n, k.k, k.mu, spec.h0(k.mu), spec.h1(k.mu)) {}

double EigenMode::x_factor(double x) const { return std::cos(n_ * x); }

double EigenMode::profile(double y) const {
  if (k_ == 0.0) return scale_ * (h0_ * y + h1_);
  return scale_ * (h0_ / k_ * std::sin(k_ * y) + h1_ * std::cos(k_ * y));
}

double EigenMode::profile_dy(double y) const {
  if (k_ == 0.0) return scale_ * h0_;
  return scale_ * (h0_ * std::cos(k_ * y) - h1_ * k_ * std::sin(k_ * y));
}

std::vector<BifurcationCurve> bifurcation_curves(double lambda_max, const HomotopySpec& spec,
                                                 int n_samples) {
  if (!(lambda_max > 0.0)) throw DomainError("bifurcation_curves: lambda_max must be positive");
  std::map<int, WavenumberCurve> by_mode;
  std::vector<BifurcationCurve> out;
  for (int n = 0; n * n < lambda_max; ++n) {
    for (int m = 0; n * n + m * m < lambda_max; ++m) {
      auto it = by_mode.find(m);
      if (it == by_mode.end()) {
        it = by_mode.emplace(m, trace_curve(m, parity_of(m), spec, n_samples)).first;
      }
      BifurcationCurve c{n, m, parity_of(m), {}};
      for (const auto& s : it->second.samples) c.samples.push_back({s.mu, n * n + s.k * s.k});
      out.push_back(std::move(c));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int la = a.n * a.n + a.base_mode * a.base_mode;
    const int lb = b.n * b.n + b.base_mode * b.base_mode;
    if (la != lb) return la < lb;
    if (a.n != b.n) return a.n < b.n;
    return a.base_mode < b.base_mode;
  });
  return out;
}

std::vector<Crossing> find_crossings(const std::vector<BifurcationCurve>& curves,
                                     const HomotopySpec& spec) {
  std::vector<Crossing> out;
  auto lambda_at = [&](const BifurcationCurve& c, double mu) {
    const double k = solve_k(mu, c.base_mode, c.parity, spec).k;
    return c.n * c.n + k * k;
  };
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      const auto& A = curves[a].samples;
      const auto& B = curves[b].samples;
      if (A.size() != B.size()) throw ValidationError("find_crossings: curves on different grids");
      const std::size_t last = A.size() - 1;
      auto diff = [&](std::size_t i) { return A[i].lambda - B[i].lambda; };
      constexpr double tie = 1e-12;
      if (std::abs(diff(0)) <= tie) out.push_back({A[0].lambda, A[0].mu, a, b, true});
      if (std::abs(diff(last)) <= tie) out.push_back({A[last].lambda, A[last].mu, a, b, true});

      // Interior sign changes, skipping exact ties at the endpoints.
      std::size_t i0 = (std::abs(diff(0)) <= tie) ? 1 : 0;
      std::size_t i1 = (std::abs(diff(last)) <= tie) ? last - 1 : last;
      for (std::size_t i = i0; i < i1; ++i) {
        const double d0 = diff(i);
        const double d1 = diff(i + 1);
        if ((d0 > 0) == (d1 > 0) && d1 != 0.0) continue;
        double lo = A[i].mu, hi = A[i + 1].mu;
        double dlo = d0;
        for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double dm = lambda_at(curves[a], mid) - lambda_at(curves[b], mid);
          if ((dm > 0) == (dlo > 0)) {
            lo = mid;
            dlo = dm;
          } else {
            hi = mid;
          }
        }
        const double mu = 0.5 * (lo + hi);
        out.push_back({lambda_at(curves[a], mu), mu, a, b, false});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    if (x.mu != y.mu) return x.mu < y.mu;
    return std::pair(x.first, x.second) < std::pair(y.first, y.second);
  });
  return out;
}

std::pair<EigenMode, EigenMode> neumann_kernel(int n, int k) {
  if (n < 0 || k < 0) throw ValidationError("neumann_kernel: wavenumbers must be nonnegative");
  if (n == k) throw ValidationError("neumann_kernel: n = k is not a double point");
  // At mu = 0 the profile reduces to h1 cos(k y); any h1 > 0 gives the same mode.
  return {EigenMode(n, static_cast<double>(k), 0.0, 0.0, 1.0),
          EigenMode(k, static_cast<double>(n), 0.0, 0.0, 1.0)};
}

BifurcationPoint simple_point(int n, int m, double mu0, const HomotopySpec& spec) {
  if (!(mu0 > 0.0 && mu0 < 1.0)) throw DomainError("simple_point: mu0 must lie in (0,1)");
  if (n < 0 || m < 0) throw ValidationError("simple_point: wavenumbers must be nonnegative");
  const Wavenumber k = solve_k(mu0, m, parity_of(m), spec);
  EigenMode mode(n, k, spec);
  return {mode.lambda(), mu0, n, m, {mode}};
}

BifurcationPoint neumann_double_point(int n, int k) {
  auto [a, b] = neumann_kernel(n, k);
  return {static_cast<double>(n * n + k * k), 0.0, n, k, {a, b}};
}

void write_spectrum_csv(std::ostream& os, const std::vector<BifurcationCurve>& curves) {
  os << "mu,lambda,n,base_mode,parity\n";
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      os << format_double(s.mu) << ',' << format_double(s.lambda) << ',' << c.n << ','
         << c.base_mode << ',' << to_string(c.parity) << '\n';
    }
  }
}

}  // namespace robinbif
