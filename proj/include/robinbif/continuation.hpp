#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "robinbif/discrete_operator.hpp"

namespace robinbif {

/// A point (u, lambda) at fixed mu with the unit tangent in (u, lambda) space
/// (metric u^T M u + lambda^2) and the arclength step that produced it.
struct ContinuationState {
  GridFunction u;
  double lambda = 0.0;
  double mu = 0.0;
  GridFunction tangent_u;        // empty when unknown
  double tangent_lambda = 0.0;
  double step = 0.0;
};

/// What Newton keeps fixed besides mu: lambda itself, or the amplitude
/// <probe, u> = target (lambda then becomes an unknown).
struct Hold {
  enum Kind { Lambda, Amplitude } kind = Lambda;
  GridFunction probe;
  double target = 0.0;

  static Hold lambda() { return {}; }
  static Hold amplitude(GridFunction probe, double target) {
    return {Amplitude, std::move(probe), target};
  }
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 25;
};

struct NewtonResult {
  ContinuationState state;
  int iterations = 0;
  double residual = 0.0;  // ||G|| in the trapezoidal norm
};

/// Newton's method on G(u, lambda, mu) = 0 using the sparse form
/// (K + M) G = K u - lambda M u + M f(u). Throws ConvergenceError with the
/// last residual when max_iter is exhausted or the iteration blows up.
NewtonResult newton_solve(const GridOperator& op, const Nonlinearity& f,
                          const ContinuationState& guess, const Hold& hold,
                          const NewtonOptions& opts = {});

struct ContinuationOptions {
  int steps = 50;
  double ds = 0.02;
  double ds_min = 1e-6;
  double ds_max = 0.1;
  double tol = 1e-10;
  int max_newton = 12;
  /// Initial sign of d(lambda)/ds when the seed carries no tangent.
  int direction = 1;
  double lambda_min = -std::numeric_limits<double>::infinity();
  double lambda_max = std::numeric_limits<double>::infinity();
  /// Amplitude column is <probe, u> when set, ||u|| otherwise.
  std::optional<GridFunction> amplitude_probe;
  bool refine_singular = true;
  int refine_iterations = 24;
};

struct TracePoint {
  int step = 0;
  double lambda = 0.0;
  double mu = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;
  int det_sign = 0;
};

/// Located sign change of the bordered determinant between trace points
/// `after_step` and `after_step + 1`.
struct SingularPoint {
  int after_step = 0;
  ContinuationState state;
  double amplitude = 0.0;
  GridFunction null_vector;  // unit near-null vector of D_u F
};

struct BranchTrace {
  std::vector<TracePoint> points;
  std::vector<ContinuationState> states;
  std::vector<SingularPoint> singular;
};

/// Pseudo-arclength continuation with secant predictor and step halving.
/// det_sign is the sign of det [[D_u F, D_lambda F], [(M t)^T, t_lambda]]
/// along the oriented direction t; its sign changes mark simple branch points.
/// Throws StallError when the step falls below ds_min.
BranchTrace continue_branch(const GridOperator& op, const Nonlinearity& f,
                            const ContinuationState& seed, const ContinuationOptions& opts = {});

/// Seeds the branch crossing at a singular point: perturbs along the null
/// vector by `epsilon` (in the trapezoidal norm) and solves with the amplitude
/// along the null vector held. The returned tangent points away from the
/// singular point.
ContinuationState switch_branch(const GridOperator& op, const Nonlinearity& f,
                                const SingularPoint& point, double epsilon,
                                const NewtonOptions& opts = {});

/// CSV with columns step,lambda,mu,amplitude,residual,det_sign.
void write_trace_csv(std::ostream& out, const BranchTrace& trace);

}  // namespace robinbif
