#pragma once

#include <Eigen/Core>
#include <numbers>

namespace robinbif {

/// Nodal values on the uniform N x N vertex grid of [0,pi]^2, stored with the
/// flat index i * N + j (i along x, j along y).
using GridFunction = Eigen::VectorXd;

struct Grid {
  int n = 0;

  explicit Grid(int points) : n(points) {}

  double h() const { return std::numbers::pi / (n - 1); }
  double coord(int i) const { return i * h(); }
  int size() const { return n * n; }
  int index(int i, int j) const { return i * n + j; }

  /// Trapezoidal weight of node (i, j), without the h^2 factor.
  double weight(int i, int j) const {
    const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    return wx * wy;
  }

  template <class F>
  GridFunction sample(F&& f) const {
    GridFunction u(size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u[index(i, j)] = f(coord(i), coord(j));
    return u;
  }
};

/// Trapezoidal L2 inner product on the full grid.
inline double grid_inner(const Grid& g, const GridFunction& u, const GridFunction& v) {
  const double h2 = g.h() * g.h();
  double s = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) s += g.weight(i, j) * u[g.index(i, j)] * v[g.index(i, j)];
  return h2 * s;
}

inline double grid_norm(const Grid& g, const GridFunction& u) {
  return std::sqrt(grid_inner(g, u, u));
}

}  // namespace robinbif
