#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/spectrum.hpp"

using namespace robinbif;

TEST_CASE("eigenmodes are unit norm and satisfy the Robin conditions") {
  const auto spec = HomotopySpec::linear();
  for (double mu : {0.2, 0.5, 0.9})
    for (int m : {0, 1, 2}) {
      const auto w = solve_k(mu, m, parity_of(m), spec);
      const EigenMode e(1, w, spec);
      const double nrm = oracle::simpson2([&](double x, double y) { return e(x, y) * e(x, y); }, 800);
      CHECK(nrm == doctest::Approx(1.0).epsilon(1e-8));
      const double h = 1e-6, pi = oracle::pi;
      const double dy0 = (e.profile(h) - e.profile(0)) / h;
      const double dyp = (e.profile(pi) - e.profile(pi - h)) / h;
      CHECK(std::abs(mu * e.profile(0) - (1 - mu) * dy0) < 1e-5);
      CHECK(std::abs(mu * e.profile(pi) + (1 - mu) * dyp) < 1e-5);
      CHECK(e.profile_dy(0.7) == doctest::Approx((e.profile(0.7 + h) - e.profile(0.7 - h)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("simple points sit on the curve lambda = n^2 + k^2") {
  const auto spec = HomotopySpec::linear();
  const auto p = simple_point(1, 2, 0.5, spec);
  const double k = oracle::bisect_k(2, 0.5, 0.5);
  CHECK(p.lambda0 == doctest::Approx(1 + k * k).epsilon(1e-12));
  CHECK(p.kernel_dim() == 1);
  CHECK_THROWS_AS(simple_point(1, 2, 0.0, spec), DomainError);
}

TEST_CASE("Neumann double points") {
  const auto p = neumann_double_point(1, 2);
  CHECK(p.lambda0 == 5.0);
  REQUIRE(p.kernel_dim() == 2);
  const double cross = oracle::simpson2([&](double x, double y) { return p.modes[0](x, y) * p.modes[1](x, y); });
  CHECK(std::abs(cross) < 1e-10);
  CHECK(p.modes[0](0.3, 0.4) == doctest::Approx(2 / oracle::pi * std::cos(0.3) * std::cos(0.8)));
}

TEST_CASE("bifurcation curves below lambda_max") {
  const auto spec = HomotopySpec::linear();
  const auto one = bifurcation_curves(1.0, spec, 11);
  REQUIRE(one.size() == 1);
  CHECK(one[0].n == 0);
  CHECK(one[0].base_mode == 0);

  const auto curves = bifurcation_curves(20.0, spec, 21);
  bool found = false;
  for (const auto& c : curves) {
    if (c.n == 1 && c.base_mode == 2) {
      found = true;
      CHECK(c.samples.front().lambda == doctest::Approx(5.0));
      CHECK(c.samples.back().lambda == doctest::Approx(10.0));
    }
  }
  CHECK(found);
  std::ostringstream a, b;
  write_spectrum_csv(a, curves);
  write_spectrum_csv(b, bifurcation_curves(20.0, spec, 21));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("mu,lambda,n,base_mode,parity\n", 0) == 0);
}

TEST_CASE("crossings are genuine intersections") {
  const auto spec = HomotopySpec::linear();
  const auto curves = bifurcation_curves(12.0, spec, 41);
  int interior = 0;
  for (const auto& c : find_crossings(curves, spec)) {
    if (c.endpoint) continue;
    ++interior;
    const auto& a = curves[c.first];
    const auto& b = curves[c.second];
    const double ka = oracle::bisect_k(a.base_mode, c.mu, 1 - c.mu);
    const double kb = oracle::bisect_k(b.base_mode, c.mu, 1 - c.mu);
    CHECK(a.n * a.n + ka * ka == doctest::Approx(c.lambda).epsilon(1e-8));
    CHECK(b.n * b.n + kb * kb == doctest::Approx(c.lambda).epsilon(1e-8));
  }
  CHECK(interior > 0);
}
