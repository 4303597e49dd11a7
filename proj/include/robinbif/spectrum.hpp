#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "robinbif/homotopy.hpp"
#include "robinbif/wavenumber.hpp"

namespace robinbif {

/// Separable Laplace eigenfunction cos(n x) Y(y) with the Robin y-profile
///   Y(y) = h0 sin(k y) + h1 k cos(k y),
/// normalized to unit L2 norm on (0,pi)^2. The profile is stored divided by
/// k, (h0/k) sin(k y) + h1 cos(k y), which is the same function up to a
/// positive factor and stays nondegenerate for the Neumann mode k = 0.
class EigenMode {
 public:
  EigenMode(int n, double k, double mu, double h0, double h1);
  EigenMode(int n, const Wavenumber& k, const HomotopySpec& spec);

  int n() const { return n_; }
  double k() const { return k_; }
  double mu() const { return mu_; }
  double h0() const { return h0_; }
  double h1() const { return h1_; }
  double lambda() const { return n_ * n_ + k_ * k_; }
  /// 1 / ||cos(nx) Y||, from the closed-form antiderivative.
  double normalization() const { return scale_; }

  double operator()(double x, double y) const { return x_factor(x) * profile(y); }
  double dy(double x, double y) const { return x_factor(x) * profile_dy(y); }

  double x_factor(double x) const;
  /// Normalized y-profile including the 1/||.|| constant.
  double profile(double y) const;
  double profile_dy(double y) const;

 private:
  int n_;
  double k_, mu_, h0_, h1_;
  double scale_ = 1.0;
};

struct LambdaSample {
  double mu;
  double lambda;
};

/// lambda(mu) = n^2 + k(mu)^2 along the wavenumber curve of base mode m.
struct BifurcationCurve {
  int n = 0;
  int base_mode = 0;
  Parity parity = Parity::Even;
  std::vector<LambdaSample> samples;
};

/// One curve per (n, m) with n^2 + m^2 < lambda_max, ordered by
/// (lambda(0), n, m).
std::vector<BifurcationCurve> bifurcation_curves(double lambda_max, const HomotopySpec& spec,
                                                 int n_samples);

struct Crossing {
  double lambda;
  double mu;
  std::size_t first;   // curve indices
  std::size_t second;
  bool endpoint;       // coincidence at mu in {0, 1}
};

/// Pairwise crossings of curves sampled on a common mu grid. Interior sign
/// changes are refined by bisection in mu; endpoint coincidences are reported
/// as double points.
std::vector<Crossing> find_crossings(const std::vector<BifurcationCurve>& curves,
                                     const HomotopySpec& spec);

/// Orthonormal Neumann kernel pair at the double point n^2 + k^2:
/// phi1 ~ cos(n x) cos(k y), phi2(x, y) = phi1(y, x).
std::pair<EigenMode, EigenMode> neumann_kernel(int n, int k);

/// Point (lambda0, mu0) on the trivial branch with its kernel modes. For a
/// simple point (n, m) are the x-wavenumber and the base mode of the curve;
/// for a Neumann double point they are the integer wavenumbers (n, k).
struct BifurcationPoint {
  double lambda0 = 0.0;
  double mu0 = 0.0;
  int n = 0;
  int m = 0;
  std::vector<EigenMode> modes;

  int kernel_dim() const { return static_cast<int>(modes.size()); }
};

/// Simple point on the (n, m) curve at mu0 in (0,1).
BifurcationPoint simple_point(int n, int m, double mu0, const HomotopySpec& spec);
/// Double point of the Neumann problem with kernel neumann_kernel(n, k).
BifurcationPoint neumann_double_point(int n, int k);

/// CSV with header `mu,lambda,n,base_mode,parity`.
void write_spectrum_csv(std::ostream& os, const std::vector<BifurcationCurve>& curves);

}  // namespace robinbif
