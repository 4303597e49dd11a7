#pragma once

#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "robinbif/grid.hpp"
#include "robinbif/homotopy.hpp"
#include "robinbif/nonlinearity.hpp"

namespace robinbif {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct Eigenpairs {
  std::vector<double> values;          // ascending eigenvalues of the discrete -Laplacian
  std::vector<GridFunction> vectors;   // unit norm in the trapezoidal inner product
};

/// Second-order finite-difference discretization of (-Lap + I) on the vertex
/// grid of [0,pi]^2 with Neumann conditions on x = 0, pi and the homotopy
/// conditions h0 u -+ h1 u_y = 0 on y = 0, pi.
///
/// Boundary nodes are eliminated with ghost points. Scaling each row by its
/// trapezoidal weight gives the symmetric form
///     (K + M) u = M g,
/// where K is the (dimensionless) stiffness matrix and M = h^2 diag(w) the
/// lumped mass. At mu = 1 the y-boundary rows are Dirichlet and are removed
/// from the unknowns ("free" degrees of freedom); grid functions keep their
/// full N x N size with zeros there.
///
/// Sign convention: the solution operator T solves Lap u - u = g, so
///     T = -(K + M)^{-1} M,   D_u G(0, lambda, mu) = I + (lambda + 1) T,
/// and the factorization stays positive definite. Immutable after
/// construction; concurrent const calls are safe.
class GridOperator {
 public:
  GridOperator(int n, double mu, const HomotopySpec& spec);

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n; }
  double mu() const { return mu_; }
  bool dirichlet() const { return dirichlet_; }
  const HomotopySpec& spec() const { return spec_; }
  /// h0/h1 and (h0/h1)' at mu; NaN at mu = 1.
  double ratio() const { return ratio_; }
  double ratio_derivative() const { return ratio_derivative_; }

  // Free degrees of freedom.
  int free_count() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& free_nodes() const { return free_; }
  Eigen::VectorXd gather(const GridFunction& u) const;
  GridFunction scatter(const Eigen::VectorXd& v) const;
  const SparseMatrix& stiffness() const { return stiffness_; }
  const Eigen::VectorXd& mass() const { return mass_; }
  /// Diagonal of dK/dmu (nonzero on the Robin rows only).
  const Eigen::VectorXd& stiffness_derivative() const { return stiffness_dmu_; }
  /// Solves (K + M) x = b on free dofs.
  Eigen::VectorXd solve_shifted(const Eigen::VectorXd& b) const;

  double inner(const GridFunction& u, const GridFunction& v) const {
    return grid_inner(grid_, u, v);
  }
  double norm(const GridFunction& u) const { return grid_norm(grid_, u); }

  /// Discrete -Lap u (zero on Dirichlet rows).
  GridFunction neg_laplacian(const GridFunction& u) const;

  /// u = T g.
  GridFunction apply_T(const GridFunction& g) const;

  /// T'(mu) g. Built as the lift vhat = h~ (y - y^2/pi) T g plus T applied to
  /// the lifted residual, with the residual and the boundary flux taken from
  /// the assembled stencil. The result is the exact mu-derivative of the
  /// discrete family T(mu). Requires mu in [0,1).
  GridFunction apply_Tprime(const GridFunction& g) const;

  /// Pointwise evaluation of the closed lift formula
  ///   h~ { T[(2/pi) Tg + 2(2y/pi - 1) d/dy(Tg) + (y^2/pi - y) g] + (y - y^2/pi) Tg }
  /// with centred d/dy (ghost-consistent at y = 0, pi). Agrees with
  /// apply_Tprime to O(h^2).
  GridFunction apply_Tprime_pointwise(const GridFunction& g) const;

  /// Smallest `count` eigenvalues of the discrete -Lap with the mu-boundary
  /// conditions: Lanczos with full reorthogonalization and deflation on
  /// M^{1/2} (K + M)^{-1} M^{1/2}, residual tolerance `tol`.
  Eigenpairs eigs(int count, double tol = 1e-10) const;
  /// Dense reference solver; free_count() must not exceed 48^2.
  Eigenpairs eigs_dense(int count) const;

  /// G(u, lambda, mu) = u + (lambda + 1) T u - T f(u, lambda).
  GridFunction residual_G(const GridFunction& u, double lambda, const Nonlinearity& f) const;
  /// D_u G applied to du, matrix free: du + (lambda + 1) T du - T(f_u(u) du).
  GridFunction apply_DuG(const GridFunction& u, double lambda, const Nonlinearity& f,
                         const GridFunction& du) const;

  // Sparse equivalent F = (K + M) G on free dofs, used by Newton solvers.
  Eigen::VectorXd residual_F(const Eigen::VectorXd& u, double lambda, const Nonlinearity& f) const;
  SparseMatrix jacobian_F(const Eigen::VectorXd& u, double lambda, const Nonlinearity& f) const;
  Eigen::VectorXd dlambda_F(const Eigen::VectorXd& u, double lambda, const Nonlinearity& f) const;
  /// Trapezoidal norm of G given F on free dofs.
  double G_norm_from_F(const Eigen::VectorXd& F) const;

 private:
  Grid grid_;
  double mu_;
  HomotopySpec spec_;
  bool dirichlet_ = false;
  double ratio_;
  double ratio_derivative_;
  std::vector<int> free_;
  std::vector<int> dof_of_;
  SparseMatrix stiffness_;
  Eigen::VectorXd mass_;
  Eigen::VectorXd stiffness_dmu_;
  std::shared_ptr<const Eigen::SimplicialLLT<SparseMatrix>> chol_;
};

/// Rayleigh-quotient iteration from `guess`: returns the discrete eigenpair
/// (lambda, unit-norm vector) closest to the guess.
std::pair<double, GridFunction> refine_eigenpair(const GridOperator& op, const GridFunction& guess,
                                                 double tol = 1e-13);

/// ||K x - lambda M x|| relative to ||K x|| + |lambda| ||M x||, on free dofs.
double eigen_residual(const GridOperator& op, double lambda, const GridFunction& x);

}  // namespace robinbif
