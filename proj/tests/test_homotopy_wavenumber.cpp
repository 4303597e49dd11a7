#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/homotopy.hpp"
#include "robinbif/quadrature.hpp"
#include "robinbif/wavenumber.hpp"

using namespace robinbif;

TEST_CASE("builtin homotopies satisfy the structural conditions") {
  CHECK(validate_homotopy(HomotopySpec::linear(), 64).ok());
  CHECK(validate_homotopy(HomotopySpec::quadratic(), 64).ok());
  const auto poly = HomotopySpec::polynomial({0, 1}, {1, -1});
  CHECK(validate_homotopy(poly, 64).ok());
  CHECK(poly.h0(0.3) == doctest::Approx(0.3));
}

TEST_CASE("homotopy violations are reported") {
  const auto bad = HomotopySpec::polynomial({0.1, 1}, {1, -1}, "shifted");
  CHECK_FALSE(validate_homotopy(bad, 64).ok());
  const auto nonmono = HomotopySpec::polynomial({0, 1}, {1, 1}, "no-dirichlet");
  CHECK_FALSE(validate_homotopy(nonmono, 64).ok());
}

TEST_CASE("ratio derivative against finite differences") {
  const auto spec = HomotopySpec::quadratic();
  for (double mu : {0.1, 0.4, 0.7}) {
    const auto r = ratio_and_derivative(spec, mu);
    const double d = 1e-6;
    const double fd = (spec.h0(mu + d) / spec.h1(mu + d) - spec.h0(mu - d) / spec.h1(mu - d)) / (2 * d);
    CHECK(r.derivative == doctest::Approx(fd).epsilon(1e-7));
  }
  const auto approx = HomotopySpec::from_functions([](double m) { return m; }, [](double m) { return 1 - m; }, "fn");
  CHECK(approx.approximate_derivatives());
  CHECK(approx.dh0(0.5) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solve_k matches bisection on the wavenumber equation") {
  const auto spec = HomotopySpec::linear();
  for (double mu : {0.05, 0.3, 0.5, 0.8, 0.97})
    for (int m : {0, 1, 2, 3}) {
      const auto w = solve_k(mu, m, parity_of(m), spec);
      CHECK(w.k == doctest::Approx(oracle::bisect_k(m, mu, 1 - mu)).epsilon(1e-11));
      CHECK(std::abs(residual19(w.k, mu, spec)) < 1e-10);
    }
}

TEST_CASE("endpoint wavenumbers are the integers") {
  const auto spec = HomotopySpec::linear();
  for (int m : {0, 1, 2}) {
    CHECK(solve_k(0.0, m, parity_of(m), spec).k == m);
    CHECK(solve_k(1.0, m, parity_of(m), spec).k == m + 1);
  }
}

TEST_CASE("parity mismatch and bad arguments") {
  const auto spec = HomotopySpec::linear();
  CHECK_THROWS_AS(solve_k(0.5, 1, Parity::Even, spec), DomainError);
  CHECK_THROWS_AS(solve_k(1.5, 1, Parity::Odd, spec), DomainError);
  CHECK_THROWS_AS(trace_curve(0, Parity::Even, spec, 2), DomainError);
}

TEST_CASE("parity factors multiply to the full equation") {
  const auto spec = HomotopySpec::linear();
  for (double k : {0.3, 1.7, 2.2})
    for (double mu : {0.2, 0.6}) {
      const auto p = parity_factors(k, mu, spec);
      CHECK(p.even * p.odd == doctest::Approx(std::sin(k * oracle::pi) * residual19(k, mu, spec)).epsilon(1e-10));
    }
}

TEST_CASE("traced curves are strictly increasing between the integers") {
  const auto spec = HomotopySpec::quadratic();
  for (int m : {0, 1, 2}) {
    const auto c = trace_curve(m, parity_of(m), spec, 41);
    REQUIRE(c.samples.size() == 41);
    for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(c.samples[i].k > c.samples[i - 1].k);
    CHECK(c.samples.front().k == m);
    CHECK(c.samples.back().k == m + 1);
  }
  std::ostringstream os;
  write_curves_csv(os, {trace_curve(0, Parity::Even, spec, 5)});
  CHECK(os.str().rfind("mu,k,parity,base_mode\n", 0) == 0);
}

TEST_CASE("Gauss-Legendre exactness") {
  const auto r = gauss_legendre(5, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 9);
  CHECK(s == doctest::Approx(std::pow(2.0, 10) / 10).epsilon(1e-14));
  const double v = integrate_square([](double x, double y) { return std::pow(std::cos(x) * std::cos(2 * y), 2); });
  CHECK(v == doctest::Approx(oracle::pi * oracle::pi / 4).epsilon(1e-13));
  const double c = integrate_square_composite([](double x, double y) { return x * y * y; }, 3, 4);
  CHECK(c == doctest::Approx(std::pow(oracle::pi, 5) / 6).epsilon(1e-13));
}
