#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/lyapunov_schmidt.hpp"

using namespace robinbif;

namespace {
constexpr double pi2 = oracle::pi * oracle::pi;
}

TEST_CASE("closed-form constants at the Neumann double points") {
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto a = double_coeffs_neumann(0, 1, f, 1.0);
  CHECK(a.c1 == doctest::Approx(19.0 / (6 * pi2)).epsilon(1e-13));
  CHECK(a.c2 == doctest::Approx(3.0 / pi2).epsilon(1e-13));
  CHECK(a.d1 == doctest::Approx(4 / oracle::pi).epsilon(1e-13));
  CHECK(a.d2 == 0.0);
  const auto b = double_coeffs_neumann(1, 2, f, 1.0);
  CHECK(b.c1 == doctest::Approx(5695.0 / (132 * pi2)).epsilon(1e-13));
  CHECK(b.d1 == b.d2);
  CHECK_THROWS_AS(double_coeffs_neumann(2, 2, f, 1.0), ValidationError);
}

TEST_CASE("quartic identities against Simpson quadrature") {
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto cf = double_coeffs_neumann(1, 2, f, 1.0);
  const auto k = neumann_kernel(1, 2);
  const double q1 = oracle::simpson2([&](double x, double y) { return std::pow(k.first(x, y), 4); });
  const double cross = oracle::simpson2([&](double x, double y) { return std::pow(k.first(x, y) * k.second(x, y), 2); });
  CHECK(cf.diagnostic("quartic_phi1") == doctest::Approx(q1).epsilon(1e-9));
  CHECK(cf.diagnostic("cross_quartic") == doctest::Approx(cross).epsilon(1e-9));
  CHECK(std::isnan(cf.diagnostic("missing")));
}

TEST_CASE("quadratic coefficient vanishes for n >= 1") {
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto spec = HomotopySpec::linear();
  for (int n : {1, 2})
    for (int m : {0, 1}) {
      const auto p = simple_point(n, m, 0.4, spec);
      CHECK(std::abs(quadratic_coeff(p.modes[0], f, p.lambda0)) < 1e-12);
    }
  const auto p0 = simple_point(0, 0, 0.4, spec);
  const auto& e = p0.modes[0];
  const double want = 0.5 * f.d2(p0.lambda0) * oracle::simpson2([&](double x, double y) { return std::pow(e(x, y), 3); });
  CHECK(quadratic_coeff(e, f, p0.lambda0) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("closed-form and grid T' pairings agree") {
  const auto spec = HomotopySpec::linear();
  const auto p = simple_point(1, 1, 0.5, spec);
  const GridOperator op(96, 0.5, spec);
  const double ht = ratio_and_derivative(spec, 0.5).derivative;
  const ModeCombination psi{{1.0}, {p.modes[0]}};
  const double closed = tprime_pairing(p.modes[0], psi, ht, p.lambda0);
  const GridFunction phi = op.grid().sample(p.modes[0]);
  const double grid = tprime_pairing_grid(op, phi, phi);
  CHECK(grid == doctest::Approx(closed).epsilon(2e-3));
}

TEST_CASE("W2 solves are orthogonal to the kernel and reject non-kernels") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(32, 0.5, spec);
  const auto ev = op.eigs(3);
  const GridFunction& phi = ev.vectors[2];
  const GridFunction v = solve_w2(phi, phi, op, {phi}, ev.values[2], f);
  CHECK(std::abs(op.inner(v, phi)) < 1e-10 * op.norm(v));
  CHECK_THROWS_AS(solve_w2(phi, phi, op, {ev.vectors[1]}, ev.values[2], f), KernelMismatchError);
}

TEST_CASE("simple-point coefficients converge with the grid") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto p = simple_point(1, 2, 0.5, spec);
  const auto a = simple_coeffs(p, f, GridOperator(48, 0.5, spec));
  const auto b = simple_coeffs(p, f, GridOperator(96, 0.5, spec));
  CHECK_FALSE(a.transcritical);
  CHECK(b.c > 0);
  CHECK(std::abs(a.c - b.c) / b.c < 0.02);
  CHECK(b.diagnostic("a_grid") == doctest::Approx(b.a).epsilon(1e-3));
}

TEST_CASE("Richardson removes an exact h^2 term") {
  ReducedCoefficients c, f;
  c.kind = f.kind = CoefficientKind::Double;
  c.c1 = 2.0 + 3.0 * 0.04;
  f.c1 = 2.0 + 3.0 * 0.01;
  c.c2 = f.c2 = 1.0;
  c.d1 = f.d1 = c.d2 = f.d2 = 0.5;
  const auto r = richardson(c, 0.2, f, 0.1);
  CHECK(r.c1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.provenance == "richardson");
}

TEST_CASE("c2 adjudication") {
  CHECK(adjudicate_c2(1.0, 5.0, 1.02).verdict == "formula");
  CHECK(adjudicate_c2(1.0, 5.0, 4.9).verdict == "printed");
  CHECK(adjudicate_c2(1.0, 1.01, 1.0).verdict == "both");
  CHECK(adjudicate_c2(1.0, 5.0, 3.0).verdict == "neither");
}

TEST_CASE("coefficient records keep a stable key order") {
  const auto j = to_json(double_coeffs_neumann(0, 1, Nonlinearity::lambda_u2_u3(), 1.0));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys.size() >= 13);
  CHECK(keys[0] == "n");
  CHECK(keys[5] == "a");
  CHECK(keys[12] == "provenance");
  CHECK(j["a"].is_null());
}
