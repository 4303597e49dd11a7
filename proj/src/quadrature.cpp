#include "robinbif/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace robinbif {

namespace {

// Reference rule on [-1,1] by Newton iteration on P_n.
GaussRule reference_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

const GaussRule& cached_reference(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, reference_rule(n)).first;
  return it->second;
}

}  // namespace

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  const GaussRule& ref = cached_reference(n);
  GaussRule r;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(mid + half * ref.nodes[i]);
    r.weights.push_back(half * ref.weights[i]);
  }
  return r;
}

double integrate_square(const std::function<double(double, double)>& f, int nodes) {
  return integrate_square_composite(f, 1, nodes);
}

double integrate_square_composite(const std::function<double(double, double)>& f, int panels,
                                  int nodes) {
  const double h = std::numbers::pi / panels;
  GaussRule axis;
  for (int p = 0; p < panels; ++p) {
    const auto r = gauss_legendre(nodes, p * h, (p + 1) * h);
    axis.nodes.insert(axis.nodes.end(), r.nodes.begin(), r.nodes.end());
    axis.weights.insert(axis.weights.end(), r.weights.begin(), r.weights.end());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < axis.nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < axis.nodes.size(); ++j) {
      row += axis.weights[j] * f(axis.nodes[i], axis.nodes[j]);
    }
    sum += axis.weights[i] * row;
  }
  return sum;
}

}  // namespace robinbif
