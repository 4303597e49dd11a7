#include "robinbif/continuation.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <ostream>
#include <random>

#include "robinbif/errors.hpp"
#include "robinbif/io.hpp"

namespace robinbif {

namespace {

using Eigen::VectorXd;
using LU = Eigen::SparseLU<SparseMatrix>;

// Point or direction in (u, lambda) space on free dofs.
struct Pt {
  VectorXd x;
  double l = 0.0;
};

double dot(const GridOperator& op, const Pt& a, const Pt& b) {
  return a.x.dot(op.mass().cwiseProduct(b.x)) + a.l * b.l;
}

Pt axpy(const Pt& a, double s, const Pt& d) { return {a.x + s * d.x, a.l + s * d.l}; }

Pt normalized(const GridOperator& op, Pt p) {
  const double n = std::sqrt(dot(op, p, p));
  p.x /= n;
  p.l /= n;
  return p;
}

SparseMatrix bordered(const SparseMatrix& j, const VectorXd& col, const VectorXd& row,
                      double corner) {
  const int n = static_cast<int>(j.rows());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(j.nonZeros() + 2 * n + 1);
  for (int k = 0; k < j.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(j, k); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
  for (int p = 0; p < n; ++p) {
    if (col[p] != 0.0) trip.emplace_back(p, n, col[p]);
    if (row[p] != 0.0) trip.emplace_back(n, p, row[p]);
  }
  trip.emplace_back(n, n, corner);
  SparseMatrix b(n + 1, n + 1);
  b.setFromTriplets(trip.begin(), trip.end());
  b.makeCompressed();
  return b;
}

bool factor(LU& lu, const SparseMatrix& a) {
  lu.analyzePattern(a);
  lu.factorize(a);
  return lu.info() == Eigen::Success;
}

// Extended Jacobian [[J, F_lambda], [(M t_x)^T, t_l]] at p.
SparseMatrix extended(const GridOperator& op, const Nonlinearity& f, const Pt& p, const Pt& t) {
  return bordered(op.jacobian_F(p.x, p.l, f), op.dlambda_F(p.x, p.l, f),
                  op.mass().cwiseProduct(t.x), t.l);
}

struct Corrected {
  Pt p;
  int iterations = 0;
  double residual = 0.0;
};

// Newton on F = 0 with the hyperplane constraint t . (p - pred) = 0.
std::optional<Corrected> correct(const GridOperator& op, const Nonlinearity& f, const Pt& pred,
                                 const Pt& t, double tol, int max_iter) {
  Pt p = pred;
  const int n = op.free_count();
  for (int it = 0; it <= max_iter; ++it) {
    const VectorXd F = op.residual_F(p.x, p.l, f);
    const double res = op.G_norm_from_F(F);
    const double c = dot(op, t, {p.x - pred.x, p.l - pred.l});
    if (!std::isfinite(res)) return std::nullopt;
    if (res < tol && std::abs(c) < tol) return Corrected{p, it, res};
    if (it == max_iter) break;
    LU lu;
    if (!factor(lu, extended(op, f, p, t))) return std::nullopt;
    VectorXd rhs(n + 1);
    rhs.head(n) = -F;
    rhs[n] = -c;
    const VectorXd d = lu.solve(rhs);
    if (!d.allFinite()) return std::nullopt;
    p.x += d.head(n);
    p.l += d[n];
  }
  return std::nullopt;
}

struct Local {
  int det_sign = 0;
  Pt tangent;
};

// Determinant sign with last row t, and the unit tangent oriented along t.
Local local_structure(const GridOperator& op, const Nonlinearity& f, const Pt& p, const Pt& t) {
  LU lu;
  const int n = op.free_count();
  Local out;
  if (!factor(lu, extended(op, f, p, t))) {
    out.tangent = t;
    return out;
  }
  out.det_sign = static_cast<int>(lu.signDeterminant());
  VectorXd rhs = VectorXd::Zero(n + 1);
  rhs[n] = 1.0;
  const VectorXd s = lu.solve(rhs);
  out.tangent = normalized(op, {s.head(n), s[n]});
  return out;
}

GridFunction null_vector(const GridOperator& op, const Nonlinearity& f, const Pt& p) {
  LU lu;
  if (!factor(lu, op.jacobian_F(p.x, p.l, f))) {
    throw ConvergenceError("null vector: Jacobian factorization failed");
  }
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  VectorXd v(op.free_count());
  for (auto& e : v) e = normal(rng);
  for (int it = 0; it < 4; ++it) {
    v = lu.solve(op.mass().cwiseProduct(v));
    v /= std::sqrt(v.dot(op.mass().cwiseProduct(v)));
  }
  // Deterministic orientation: largest component positive.
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0) v = -v;
  return op.scatter(v);
}

ContinuationState to_state(const GridOperator& op, const Pt& p, const Pt& t, double step) {
  return {op.scatter(p.x), p.l, op.mu(), op.scatter(t.x), t.l, step};
}

}  // namespace

NewtonResult newton_solve(const GridOperator& op, const Nonlinearity& f,
                          const ContinuationState& guess, const Hold& hold,
                          const NewtonOptions& opts) {
  const int n = op.free_count();
  VectorXd x = op.gather(guess.u);
  double lambda = guess.lambda;
  const bool amp = hold.kind == Hold::Amplitude;
  const VectorXd mp = amp ? VectorXd(op.mass().cwiseProduct(op.gather(hold.probe))) : VectorXd();
  double res = 0.0;
  for (int it = 0;; ++it) {
    const VectorXd F = op.residual_F(x, lambda, f);
    res = op.G_norm_from_F(F);
    const double c = amp ? mp.dot(x) - hold.target : 0.0;
    if (!std::isfinite(res) || res > 1e8) throw ConvergenceError("Newton diverged", res);
    if (res < opts.tol && std::abs(c) < opts.tol) {
      ContinuationState s = guess;
      s.u = op.scatter(x);
      s.lambda = lambda;
      s.mu = op.mu();
      return {s, it, res};
    }
    if (it == opts.max_iter) break;
    LU lu;
    if (amp) {
      if (!factor(lu, bordered(op.jacobian_F(x, lambda, f), op.dlambda_F(x, lambda, f), mp, 0.0)))
        throw ConvergenceError("Newton: singular bordered Jacobian", res);
      VectorXd rhs(n + 1);
      rhs.head(n) = -F;
      rhs[n] = -c;
      const VectorXd d = lu.solve(rhs);
      x += d.head(n);
      lambda += d[n];
    } else {
      if (!factor(lu, op.jacobian_F(x, lambda, f)))
        throw ConvergenceError("Newton: singular Jacobian", res);
      x -= lu.solve(F);
    }
  }
  throw ConvergenceError("Newton did not converge", res);
}

BranchTrace continue_branch(const GridOperator& op, const Nonlinearity& f,
                            const ContinuationState& seed, const ContinuationOptions& opts) {
  auto amplitude = [&](const Pt& p) {
    const GridFunction u = op.scatter(p.x);
    return opts.amplitude_probe ? op.inner(*opts.amplitude_probe, u) : op.norm(u);
  };

  Pt x0{op.gather(seed.u), seed.lambda};
  {
    const double r = op.G_norm_from_F(op.residual_F(x0.x, x0.l, f));
    if (!(r < opts.tol)) throw ConvergenceError("continue_branch: seed is not converged", r);
  }
  Pt guide;
  if (seed.tangent_u.size() == op.grid().size()) {
    guide = normalized(op, {op.gather(seed.tangent_u), seed.tangent_lambda});
  } else {
    guide = {VectorXd::Zero(op.free_count()), opts.direction >= 0 ? 1.0 : -1.0};
  }
  Local loc = local_structure(op, f, x0, guide);

  BranchTrace trace;
  std::vector<Pt> pts{x0};
  const double r0 = op.G_norm_from_F(op.residual_F(x0.x, x0.l, f));
  trace.points.push_back({0, x0.l, op.mu(), amplitude(x0), r0, loc.det_sign});
  trace.states.push_back(to_state(op, x0, loc.tangent, 0.0));

  Pt dir = loc.tangent;
  double ds = opts.ds;
  for (int step = 1; step <= opts.steps; ++step) {
    std::optional<Corrected> c;
    for (;;) {
      c = correct(op, f, axpy(pts.back(), ds, dir), dir, opts.tol, opts.max_newton);
      if (c) break;
      ds /= 2;
      if (ds < opts.ds_min) throw StallError("continuation step fell below ds_min");
    }
    const Pt& prev = pts.back();
    const Pt secant{c->p.x - prev.x, c->p.l - prev.l};
    const double taken = std::sqrt(dot(op, secant, secant));
    const Local here = local_structure(op, f, c->p, dir);
    trace.points.push_back({step, c->p.l, op.mu(), amplitude(c->p), c->residual, here.det_sign});
    trace.states.push_back(to_state(op, c->p, here.tangent, taken));
    pts.push_back(c->p);

    const int s0 = trace.points[step - 1].det_sign;
    if (opts.refine_singular && s0 != 0 && here.det_sign != 0 && s0 != here.det_sign) {
      const Pt& a = pts[step - 1];
      const Pt d = normalized(op, {c->p.x - a.x, c->p.l - a.l});
      double lo = 0.0, hi = taken;
      Pt best = c->p;
      for (int it = 0; it < opts.refine_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto m = correct(op, f, axpy(a, mid, d), d, opts.tol, opts.max_newton);
        if (!m) break;
        best = m->p;
        const int sm = local_structure(op, f, m->p, d).det_sign;
        if (sm == s0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      SingularPoint sp;
      sp.after_step = step - 1;
      sp.state = to_state(op, best, d, 0.0);
      sp.amplitude = amplitude(best);
      sp.null_vector = null_vector(op, f, best);
      trace.singular.push_back(std::move(sp));
    }

    if (c->p.l < opts.lambda_min || c->p.l > opts.lambda_max) break;
    dir = normalized(op, secant);
    if (c->iterations <= 3) ds = std::min(1.5 * ds, opts.ds_max);
  }
  return trace;
}

ContinuationState switch_branch(const GridOperator& op, const Nonlinearity& f,
                                const SingularPoint& point, double epsilon,
                                const NewtonOptions& opts) {
  GridFunction v = point.null_vector / op.norm(point.null_vector);
  const double base = op.inner(v, point.state.u);
  ContinuationState guess = point.state;
  guess.u = point.state.u + epsilon * v;
  auto r = newton_solve(op, f, guess, Hold::amplitude(v, base + epsilon), opts);
  r.state.tangent_u = (epsilon >= 0 ? 1.0 : -1.0) * v;
  r.state.tangent_lambda = 0.0;
  r.state.step = std::abs(epsilon);
  return r.state;
}

void write_trace_csv(std::ostream& out, const BranchTrace& trace) {
  out << "step,lambda,mu,amplitude,residual,det_sign\n";
  for (const auto& p : trace.points) {
    out << p.step << ',' << format_double(p.lambda) << ',' << format_double(p.mu) << ','
        << format_double(p.amplitude) << ',' << format_double(p.residual) << ',' << p.det_sign
        << '\n';
  }
}

}  // namespace robinbif
