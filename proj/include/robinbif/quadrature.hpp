#pragma once

#include <functional>
#include <vector>

namespace robinbif {

/// Gauss-Legendre nodes and weights mapped to [a, b].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n, double a, double b);

/// Tensor-product Gauss-Legendre quadrature over (0,pi)^2, `nodes` per axis.
double integrate_square(const std::function<double(double, double)>& f, int nodes = 96);

/// Composite tensor Gauss rule: `panels` per axis, `nodes` per panel.
double integrate_square_composite(const std::function<double(double, double)>& f, int panels,
                                  int nodes);

}  // namespace robinbif
