#include <doctest.h>

#include <cmath>
#include <sstream>

#include "robinbif/continuation.hpp"
#include "robinbif/errors.hpp"

using namespace robinbif;

TEST_CASE("trivial-branch singular points are the discrete eigenvalues") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(24, 0.5, spec);
  ContinuationState seed;
  seed.u = GridFunction::Zero(op.grid().size());
  seed.lambda = 0.1;
  ContinuationOptions o;
  o.steps = 300;
  o.ds = 0.05;
  o.ds_max = 0.1;
  o.lambda_max = 6.0;
  const auto trace = continue_branch(op, f, seed, o);
  const auto ev = op.eigs(8).values;
  std::vector<double> below;
  for (double v : ev)
    if (v > 0.1 && v < 6.0) below.push_back(v);
  REQUIRE(trace.singular.size() == below.size());
  for (std::size_t i = 0; i < below.size(); ++i) CHECK(trace.singular[i].state.lambda == doctest::Approx(below[i]).epsilon(1e-7));
  std::ostringstream os;
  write_trace_csv(os, trace);
  CHECK(os.str().rfind("step,lambda,mu,amplitude,residual,det_sign\n", 0) == 0);
}

TEST_CASE("branch switching lands on a converged nontrivial solution") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(24, 0.5, spec);
  const auto ev = op.eigs(4);
  SingularPoint sp;
  sp.state.u = GridFunction::Zero(op.grid().size());
  sp.state.lambda = ev.values[1];
  sp.null_vector = ev.vectors[1];
  const auto s = switch_branch(op, f, sp, 0.03);
  CHECK(op.inner(ev.vectors[1], s.u) == doctest::Approx(0.03).epsilon(1e-9));
  CHECK(op.norm(op.residual_G(s.u, s.lambda, f)) < 1e-9);
  ContinuationOptions o;
  o.steps = 10;
  const auto trace = continue_branch(op, f, s, o);
  CHECK(trace.points.size() == 11);
  CHECK(trace.points.back().amplitude > 0.03);
}

TEST_CASE("Newton reports failures") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const GridOperator op(16, 0.5, spec);
  ContinuationState g;
  g.u = GridFunction::Constant(op.grid().size(), 1e4);
  g.lambda = 2.0;
  CHECK_THROWS_AS(newton_solve(op, f, g, Hold::lambda()), ConvergenceError);
  ContinuationState bad;
  bad.u = GridFunction::Constant(op.grid().size(), 0.5);
  bad.lambda = 2.0;
  CHECK_THROWS_AS(continue_branch(op, f, bad, ContinuationOptions{}), ConvergenceError);
}
