#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "robinbif/discrete_operator.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/nonlinearity.hpp"
#include "robinbif/symmetry.hpp"

using namespace robinbif;

TEST_CASE("builtin nonlinearity and its derivatives") {
  const auto f = Nonlinearity::lambda_u2_u3();
  CHECK(f.f(0.5, 2.0) == doctest::Approx(2.0 * (0.25 + 0.125)));
  const double h = 1e-6;
  for (double u : {-0.7, 0.2, 1.3})
    for (double l : {0.5, 3.0}) {
      CHECK(f.f_u(u, l) == doctest::Approx((f.f(u + h, l) - f.f(u - h, l)) / (2 * h)).epsilon(1e-8));
      CHECK(f.f_lambda(u, l) == doctest::Approx((f.f(u, l + h) - f.f(u, l - h)) / (2 * h)).epsilon(1e-8));
    }
  CHECK(f.d2(3.0) == doctest::Approx(6.0));
  CHECK(f.d3(3.0) == doctest::Approx(18.0));
  CHECK_FALSE(f.odd_in_u());
  CHECK(Nonlinearity::from_name("u3").odd_in_u());
  CHECK_THROWS_AS(Nonlinearity::from_name("sin"), ValidationError);
}

TEST_CASE("nonlinearities violating f(0) = f_u(0) = 0 are rejected") {
  CHECK_THROWS_AS(Nonlinearity({{1.0}}, "const"), ValidationError);
  CHECK_THROWS_AS(Nonlinearity({{}, {0.0, 1.0}}, "linear"), ValidationError);
}

TEST_CASE("group elements compose into a group of order 16") {
  const auto all = all_elements();
  REQUIRE(all.size() == 16);
  for (const auto& g : all) {
    CHECK(compose(g, inverse(g)) == GroupElement::identity());
    CHECK(parse_element(g.name()) == g);
    for (const auto& h : all) CHECK(std::find(all.begin(), all.end(), compose(g, h)) != all.end());
  }
  CHECK(compose(GroupElement::R(), compose(GroupElement::R(), compose(GroupElement::R(), GroupElement::R()))) ==
        GroupElement::identity());
}

TEST_CASE("grid action is the coordinate map") {
  const Grid grid(17);
  auto u = [](double x, double y) { return std::cos(x) + 0.3 * y * y + 0.1 * x * y; };
  const GridFunction s = grid.sample(u);
  const double pi = oracle::pi;
  // S1(x, y) = (pi - x, y); R(x, y) = (pi - y, x), so R^{-1}(x, y) = (y, pi - x).
  CHECK((act(GroupElement::S1(), grid, s) - grid.sample([&](double x, double y) { return u(pi - x, y); })).norm() < 1e-12);
  CHECK((act(GroupElement::R(), grid, s) - grid.sample([&](double x, double y) { return u(y, pi - x); })).norm() < 1e-12);
  CHECK((act(GroupElement::minus_identity(), grid, s) + s).norm() == 0.0);
}

// (gamma u)(p) = sign u(delta^{-1} p) with delta = S1^r R^a, evaluated pointwise.
double act_analytic(const GroupElement& g, const std::function<double(double, double)>& u, double x, double y) {
  const double pi = oracle::pi;
  const int r = g.dihedral / 4, a = g.dihedral % 4;
  if (r) x = pi - x;
  for (int i = 0; i < a; ++i) {
    const double nx = y, ny = pi - x;  // R^{-1}
    x = nx;
    y = ny;
  }
  return g.sign * u(x, y);
}

TEST_CASE("grid action matches the analytic action for every element") {
  const Grid grid(19);
  const std::function<double(double, double)> u = [](double x, double y) { return std::sin(0.3 * x + 1) * (y + 0.2 * x * x); };
  const GridFunction s = grid.sample(u);
  for (const auto& g : all_elements()) {
    const GridFunction want = grid.sample([&](double x, double y) { return act_analytic(g, u, x, y); });
    CHECK((act(g, grid, s) - want).norm() < 1e-12);
  }
}

TEST_CASE("isotropy agrees with brute force over all elements") {
  const Grid grid(33);
  const std::vector<std::function<double(double, double)>> fns{
      [](double x, double y) { return std::cos(x) * std::cos(2 * y) + std::cos(2 * x) * std::cos(y); },
      [](double x, double y) { return std::cos(x) * std::cos(2 * y); },
      [](double, double y) { return std::cos(y); },
      [](double x, double y) { return 0.4 * std::cos(x) + std::cos(y); },
      [](double x, double y) { return std::cos(2 * x) + std::cos(2 * y) + 0.1; }};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pt(0.0, oracle::pi);
  for (const auto& u : fns) {
    const auto iso = isotropy(grid, grid.sample(u));
    for (const auto& g : all_elements()) {
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        const double x = pt(rng), y = pt(rng);
        worst = std::max(worst, std::abs(act_analytic(g, u, x, y) - u(x, y)));
      }
      CHECK((worst < 1e-12) == iso.contains(g));
    }
  }
}

TEST_CASE("problem groups") {
  CHECK(gamma_for(false, 0.0).elements.size() == 8);
  CHECK(gamma_for(true, 0.0).elements.size() == 16);
  CHECK(gamma_for(false, 0.5).elements.size() == 4);
  CHECK(gamma_for(true, 0.5).elements.size() == 8);
  CHECK(gamma_for(false, 1.0).elements.size() == 4);
}

TEST_CASE("the discrete G is D2 equivariant and breaks D4 inside (0,1)") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(24, 0.4, spec);
  const GridOperatorFn G = [&](const GridFunction& u) { return op.residual_G(u, 2.0, f); };
  for (const auto& g : d2_elements()) CHECK(check_equivariance(G, g, op.grid(), 3) < 1e-12);
  CHECK(check_equivariance(G, GroupElement::R(), op.grid(), 3) > 1e-6);
  const GridOperator neumann(24, 0.0, spec);
  const GridOperatorFn G0 = [&](const GridFunction& u) { return neumann.residual_G(u, 2.0, f); };
  for (const auto& g : d4_elements()) CHECK(check_equivariance(G0, g, neumann.grid(), 3) < 1e-12);
}
