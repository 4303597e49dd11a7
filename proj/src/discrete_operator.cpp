#include "robinbif/discrete_operator.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "robinbif/errors.hpp"

namespace robinbif {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

GridOperator::GridOperator(int n, double mu, const HomotopySpec& spec)
    : grid_(n), mu_(mu), spec_(spec) {
  if (n < 8) throw UnsupportedGridError("grid needs at least 8 points per axis");
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("mu must lie in [0,1]");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (mu == 1.0) {
    dirichlet_ = true;
    ratio_ = nan;
    ratio_derivative_ = nan;
  } else {
    const auto rd = ratio_and_derivative(spec, mu);
    ratio_ = rd.ratio;
    ratio_derivative_ = rd.derivative;
    if (!(ratio_ >= 0.0) || !std::isfinite(ratio_derivative_)) {
      throw DomainError("h0/h1 must be finite and non-negative");
    }
  }

  const double h = grid_.h();
  dof_of_.assign(grid_.size(), -1);
  const int jlo = dirichlet_ ? 1 : 0;
  const int jhi = dirichlet_ ? n - 2 : n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = jlo; j <= jhi; ++j) {
      dof_of_[grid_.index(i, j)] = static_cast<int>(free_.size());
      free_.push_back(grid_.index(i, j));
    }

  const int nf = free_count();
  mass_.resize(nf);
  stiffness_dmu_ = Eigen::VectorXd::Zero(nf);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * nf);
  auto wx = [&](int i) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  auto wy = [&](int j) { return (!dirichlet_ && (j == 0 || j == n - 1)) ? 0.5 : 1.0; };
  for (int i = 0; i < n; ++i) {
    for (int j = jlo; j <= jhi; ++j) {
      const int p = dof_of_[grid_.index(i, j)];
      const bool xend = (i == 0 || i == n - 1);
      const bool yend = !dirichlet_ && (j == 0 || j == n - 1);
      const double dx = xend ? 1.0 : 2.0;
      const double dy = yend ? 1.0 + ratio_ * h : 2.0;
      trip.emplace_back(p, p, wy(j) * dx + wx(i) * dy);
      if (yend) stiffness_dmu_[p] = wx(i) * h * ratio_derivative_;
      mass_[p] = h * h * wx(i) * wy(j);
      for (int di : {-1, 1}) {
        const int ii = i + di;
        if (ii >= 0 && ii < n) trip.emplace_back(p, dof_of_[grid_.index(ii, j)], -wy(j));
      }
      for (int dj : {-1, 1}) {
        const int jj = j + dj;
        if (jj < 0 || jj >= n) continue;
        const int q = dof_of_[grid_.index(i, jj)];
        if (q >= 0) trip.emplace_back(p, q, -wx(i));
      }
    }
  }
  stiffness_.resize(nf, nf);
  stiffness_.setFromTriplets(trip.begin(), trip.end());
  stiffness_.makeCompressed();

  SparseMatrix shifted = stiffness_;
  for (int p = 0; p < nf; ++p) shifted.coeffRef(p, p) += mass_[p];
  auto chol = std::make_shared<Eigen::SimplicialLLT<SparseMatrix>>(shifted);
  if (chol->info() != Eigen::Success) {
    throw ConvergenceError("Cholesky factorization of (K + M) failed");
  }
  chol_ = std::move(chol);
}

Eigen::VectorXd GridOperator::gather(const GridFunction& u) const {
  if (u.size() != grid_.size()) throw UnsupportedGridError("grid function size mismatch");
  Eigen::VectorXd v(free_count());
  for (int p = 0; p < free_count(); ++p) v[p] = u[free_[p]];
  return v;
}

GridFunction GridOperator::scatter(const Eigen::VectorXd& v) const {
  GridFunction u = GridFunction::Zero(grid_.size());
  for (int p = 0; p < free_count(); ++p) u[free_[p]] = v[p];
  return u;
}

Eigen::VectorXd GridOperator::solve_shifted(const Eigen::VectorXd& b) const {
  return chol_->solve(b);
}

GridFunction GridOperator::neg_laplacian(const GridFunction& u) const {
  const Eigen::VectorXd ku = stiffness_ * gather(u);
  return scatter(ku.cwiseQuotient(mass_));
}

GridFunction GridOperator::apply_T(const GridFunction& g) const {
  const Eigen::VectorXd mg = mass_.cwiseProduct(gather(g));
  return scatter(-solve_shifted(mg));
}

GridFunction GridOperator::apply_Tprime(const GridFunction& g) const {
  if (dirichlet_) throw DomainError("T' is not defined at mu = 1");
  const GridFunction u = apply_T(g);
  const GridFunction lift =
      ratio_derivative_ * grid_.sample([](double, double y) { return y - y * y / kPi; })
                              .cwiseProduct(u);
  const Eigen::VectorXd ul = gather(lift);
  // Lifted residual -(Lap - I) vhat plus the boundary flux of the mu-derivative.
  const Eigen::VectorXd r =
      (stiffness_dmu_.cwiseProduct(gather(u)) + stiffness_ * ul + mass_.cwiseProduct(ul))
          .cwiseQuotient(mass_);
  return lift + apply_T(scatter(r));
}

GridFunction GridOperator::apply_Tprime_pointwise(const GridFunction& g) const {
  if (dirichlet_) throw DomainError("T' is not defined at mu = 1");
  const int n = grid_.n;
  const double h = grid_.h();
  const GridFunction u = apply_T(g);
  GridFunction rhs(grid_.size());
  GridFunction lift(grid_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int p = grid_.index(i, j);
      const double y = grid_.coord(j);
      double uy;
      if (j == 0) {
        uy = ratio_ * u[p];
      } else if (j == n - 1) {
        uy = -ratio_ * u[p];
      } else {
        uy = (u[p + 1] - u[p - 1]) / (2 * h);
      }
      rhs[p] = (2 / kPi) * u[p] + 2 * (2 * y / kPi - 1) * uy + (y * y / kPi - y) * g[p];
      lift[p] = (y - y * y / kPi) * u[p];
    }
  }
  return ratio_derivative_ * (apply_T(rhs) + lift);
}

Eigenpairs GridOperator::eigs(int count, double tol) const {
  const int nf = free_count();
  if (count < 1 || count > nf) throw ValidationError("eigs: invalid eigenvalue count");
  const Eigen::VectorXd s = mass_.cwiseSqrt();
  auto apply_B = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return s.cwiseProduct(solve_shifted(s.cwiseProduct(x)));
  };

  std::vector<Eigen::VectorXd> locked;
  std::vector<double> locked_theta;
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  auto orthogonalize = [](Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
  };

  const int max_passes = count + 8;
  for (int pass = 0; pass < max_passes; ++pass) {
    const int room = nf - static_cast<int>(locked.size());
    if (room <= 0) break;
    int steps = std::min(room, std::max(60, 4 * count + 40));
    bool done = false;
    for (;;) {
      Eigen::VectorXd q(nf);
      for (auto& v : q) v = normal(rng);
      orthogonalize(q, locked);
      q.normalize();
      std::vector<Eigen::VectorXd> basis;
      std::vector<double> alpha, beta;
      for (int j = 0; j < steps; ++j) {
        basis.push_back(q);
        Eigen::VectorXd w = apply_B(q);
        alpha.push_back(q.dot(w));
        orthogonalize(w, locked);
        orthogonalize(w, basis);
        const double b = w.norm();
        beta.push_back(b);
        if (b <= 1e-14 * std::abs(alpha.back())) break;
        q = w / b;
      }
      const int m = static_cast<int>(basis.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int j = 0; j < m; ++j) {
        t(j, j) = alpha[j];
        if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double b_last = beta.back();
      std::vector<int> converged;
      for (int k = m - 1; k >= 0; --k) {
        const double theta = es.eigenvalues()[k];
        if (std::abs(b_last * es.eigenvectors()(m - 1, k)) <= tol * std::abs(theta))
          converged.push_back(k);
      }
      const double theta_top = es.eigenvalues()[m - 1];
      const bool top_ok = !converged.empty() && converged.front() == m - 1;
      if (!top_ok) {
        if (steps >= room) throw ConvergenceError("Lanczos did not converge");
        steps = std::min(room, 2 * steps);
        continue;
      }
      if (static_cast<int>(locked.size()) >= count) {
        std::vector<double> sorted = locked_theta;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        if (theta_top < sorted[count - 1] * (1 - 1e-9)) {
          done = true;
          break;
        }
      }
      for (int k : converged) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(nf);
        for (int j = 0; j < m; ++j) y += es.eigenvectors()(j, k) * basis[j];
        orthogonalize(y, locked);
        y.normalize();
        locked.push_back(y);
        locked_theta.push_back(es.eigenvalues()[k]);
      }
      break;
    }
    if (done) break;
  }
  if (static_cast<int>(locked.size()) < count) throw ConvergenceError("Lanczos found too few eigenpairs");

  std::vector<int> order(locked.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return locked_theta[a] > locked_theta[b]; });
  Eigenpairs out;
  for (int i = 0; i < count; ++i) {
    const int k = order[i];
    out.values.push_back(1.0 / locked_theta[k] - 1.0);
    out.vectors.push_back(scatter(locked[k].cwiseQuotient(s)));
  }
  return out;
}

Eigenpairs GridOperator::eigs_dense(int count) const {
  const int nf = free_count();
  if (nf > 48 * 48) throw UnsupportedGridError("eigs_dense: grid too large");
  if (count < 1 || count > nf) throw ValidationError("eigs_dense: invalid eigenvalue count");
  const Eigen::VectorXd inv_s = mass_.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd k = Eigen::MatrixXd(stiffness_);
  k = inv_s.asDiagonal() * k * inv_s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  Eigenpairs out;
  for (int i = 0; i < count; ++i) {
    out.values.push_back(es.eigenvalues()[i]);
    out.vectors.push_back(scatter(es.eigenvectors().col(i).cwiseProduct(inv_s)));
  }
  return out;
}

GridFunction GridOperator::residual_G(const GridFunction& u, double lambda,
                                      const Nonlinearity& f) const {
  return u + (lambda + 1) * apply_T(u) - apply_T(f.apply(u, lambda));
}

GridFunction GridOperator::apply_DuG(const GridFunction& u, double lambda, const Nonlinearity& f,
                                     const GridFunction& du) const {
  return du + (lambda + 1) * apply_T(du) - apply_T(f.apply_u(u, lambda).cwiseProduct(du));
}

Eigen::VectorXd GridOperator::residual_F(const Eigen::VectorXd& u, double lambda,
                                         const Nonlinearity& f) const {
  const Eigen::VectorXd fu = u.unaryExpr([&](double v) { return f.f(v, lambda); });
  return stiffness_ * u + mass_.cwiseProduct(fu - lambda * u);
}

SparseMatrix GridOperator::jacobian_F(const Eigen::VectorXd& u, double lambda,
                                      const Nonlinearity& f) const {
  SparseMatrix j = stiffness_;
  for (int p = 0; p < free_count(); ++p)
    j.coeffRef(p, p) += mass_[p] * (f.f_u(u[p], lambda) - lambda);
  return j;
}

Eigen::VectorXd GridOperator::dlambda_F(const Eigen::VectorXd& u, double lambda,
                                        const Nonlinearity& f) const {
  const Eigen::VectorXd fl = u.unaryExpr([&](double v) { return f.f_lambda(v, lambda); });
  return mass_.cwiseProduct(fl - u);
}

double GridOperator::G_norm_from_F(const Eigen::VectorXd& F) const {
  const Eigen::VectorXd g = solve_shifted(F);
  return std::sqrt(g.dot(mass_.cwiseProduct(g)));
}

double eigen_residual(const GridOperator& op, double lambda, const GridFunction& x) {
  const Eigen::VectorXd v = op.gather(x);
  const Eigen::VectorXd kx = op.stiffness() * v;
  const Eigen::VectorXd mx = op.mass().cwiseProduct(v);
  return (kx - lambda * mx).norm() / (kx.norm() + std::abs(lambda) * mx.norm());
}

std::pair<double, GridFunction> refine_eigenpair(const GridOperator& op, const GridFunction& guess,
                                                 double tol) {
  const Eigen::VectorXd& m = op.mass();
  const Eigen::VectorXd g0 = op.gather(guess);
  auto mnorm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(m.cwiseProduct(v))); };
  Eigen::VectorXd x = g0 / mnorm(g0);
  double sigma = x.dot(op.stiffness() * x);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    const double res = eigen_residual(op, sigma, op.scatter(x));
    if (res <= tol) break;
    if (res >= best && it > 3) break;
    best = std::min(best, res);
    SparseMatrix shifted = op.stiffness();
    for (int p = 0; p < op.free_count(); ++p) shifted.coeffRef(p, p) -= sigma * m[p];
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) break;  // sigma is an eigenvalue to working precision
    Eigen::VectorXd y = lu.solve(m.cwiseProduct(x));
    if (!y.allFinite()) break;
    x = y / mnorm(y);
    sigma = x.dot(op.stiffness() * x);
  }
  if (x.dot(m.cwiseProduct(g0)) < 0) x = -x;
  return {sigma, op.scatter(x)};
}

}  // namespace robinbif
