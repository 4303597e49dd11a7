#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "robinbif/discrete_operator.hpp"
#include "robinbif/errors.hpp"

using namespace robinbif;

namespace {

GridFunction smooth(const Grid& g, int seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  const double a = n(rng), b = n(rng), c = n(rng);
  return g.sample([&](double x, double y) { return a * std::cos(x) * std::cos(y) + b * x * y / 10 + c * std::cos(2 * y); });
}

}  // namespace

TEST_CASE("construction guards") {
  const auto spec = HomotopySpec::linear();
  CHECK_THROWS_AS(GridOperator(4, 0.5, spec), UnsupportedGridError);
  CHECK_THROWS_AS(GridOperator(16, 1.5, spec), DomainError);
  const GridOperator d(16, 1.0, spec);
  CHECK(d.dirichlet());
  CHECK(d.free_count() == 16 * 14);
  CHECK(GridOperator(16, 0.3, spec).free_count() == 256);
}

TEST_CASE("Lanczos eigenvalues agree with the dense solver") {
  const auto spec = HomotopySpec::linear();
  for (double mu : {0.0, 0.5, 1.0}) {
    const GridOperator op(20, mu, spec);
    const auto a = op.eigs(6);
    const auto b = op.eigs_dense(6);
    for (int i = 0; i < 6; ++i) {
      CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-9));
      // The relative residual is 0/0 on the Neumann constant mode.
      if (std::abs(a.values[i]) > 1e-8)
        CHECK(eigen_residual(op, a.values[i], a.vectors[i]) < 1e-8);
      else
        CHECK((op.stiffness() * op.gather(a.vectors[i])).norm() < 1e-8);
    }
  }
}

TEST_CASE("discrete eigenvalues approach n^2 + k^2 at second order") {
  const auto spec = HomotopySpec::linear();
  const double k = oracle::bisect_k(1, 0.3, 0.7);
  const double exact = 1 + k * k;
  auto err = [&](int n) {
    const auto ev = GridOperator(n, 0.3, spec).eigs(8).values;
    double best = 1e9;
    for (double v : ev) best = std::min(best, std::abs(v - exact));
    return best;
  };
  const double e1 = err(33), e2 = err(65);
  CHECK(e2 / exact < 1e-2);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("T is symmetric in the trapezoidal product and solves Lap u - u = g") {
  const auto spec = HomotopySpec::linear();
  const GridOperator op(24, 0.6, spec);
  const Grid& g = op.grid();
  const GridFunction a = smooth(g, 1), b = smooth(g, 2);
  CHECK(std::abs(op.inner(op.apply_T(a), b) - op.inner(a, op.apply_T(b))) < 1e-12 * op.norm(a) * op.norm(b));
  const GridFunction u = op.apply_T(a);
  CHECK((op.neg_laplacian(u) + u + a).norm() < 1e-9 * a.norm());
}

TEST_CASE("T' is the mu-derivative of the discrete T") {
  const auto spec = HomotopySpec::quadratic();
  const double mu = 0.35, d = 1e-4;
  const GridOperator op(24, mu, spec), p(24, mu + d, spec), m(24, mu - d, spec);
  const GridFunction g = smooth(op.grid(), 3);
  const GridFunction fd = (p.apply_T(g) - m.apply_T(g)) / (2 * d);
  CHECK(op.norm(fd - op.apply_Tprime(g)) < 1e-6 * op.norm(fd));
}

TEST_CASE("pointwise T' converges to the exact discrete T' at second order") {
  const auto spec = HomotopySpec::linear();
  auto gap = [&](int n) {
    const GridOperator op(n, 0.5, spec);
    const GridFunction g = op.grid().sample([](double x, double y) { return std::cos(x) * (1 + y); });
    return op.norm(op.apply_Tprime(g) - op.apply_Tprime_pointwise(g)) / op.norm(op.apply_Tprime(g));
  };
  const double a = gap(25), b = gap(49);
  CHECK(a / b > 3.0);
}

TEST_CASE("sparse residual and Jacobian match G and finite differences") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(20, 0.5, spec);
  const GridFunction u = 0.3 * smooth(op.grid(), 4), v = smooth(op.grid(), 5);
  const double lam = 2.2;
  const Eigen::VectorXd x = op.gather(u);
  CHECK(op.G_norm_from_F(op.residual_F(x, lam, f)) == doctest::Approx(op.norm(op.residual_G(u, lam, f))).epsilon(1e-10));
  const double h = 1e-6;
  const GridFunction fd = (op.residual_G(u + h * v, lam, f) - op.residual_G(u - h * v, lam, f)) / (2 * h);
  CHECK(op.norm(fd - op.apply_DuG(u, lam, f, v)) < 1e-7 * op.norm(fd));
  const Eigen::VectorXd jv = op.jacobian_F(x, lam, f) * op.gather(v);
  const Eigen::VectorXd fdF = (op.residual_F(op.gather(u + h * v), lam, f) - op.residual_F(op.gather(u - h * v), lam, f)) / (2 * h);
  CHECK((jv - fdF).norm() < 1e-6 * jv.norm());
}

TEST_CASE("Rayleigh quotient refinement") {
  const auto spec = HomotopySpec::linear();
  const GridOperator op(32, 0.5, spec);
  const auto ev = op.eigs(4);
  const GridFunction guess = ev.vectors[2] + 0.05 * smooth(op.grid(), 6);
  const auto [lam, vec] = refine_eigenpair(op, guess);
  CHECK(lam == doctest::Approx(ev.values[2]).epsilon(1e-10));
  CHECK(op.norm(vec) == doctest::Approx(1.0));
}
