#pragma once
// Reference computations shared by the unit tests. They are written against
// the defining formulas only and do not call the library routines they check.

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Wavenumber equation for a general (h0, h1).
inline double wave_eq(double k, double h0, double h1) {
  return 2 * h0 * h1 * k * std::cos(k * pi) + (h0 * h0 - h1 * h1 * k * k) * std::sin(k * pi);
}

// Root of wave_eq in (m, m + 1) by plain bisection.
inline double bisect_k(int m, double h0, double h1) {
  double a = m + 1e-10, b = m + 1 - 1e-10;
  double fa = wave_eq(a, h0, h1);
  for (int it = 0; it < 200; ++it) {
    const double c = 0.5 * (a + b);
    const double fc = wave_eq(c, h0, h1);
    if ((fa < 0) == (fc < 0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

// Composite Simpson rule on [0, pi]^2.
template <class F>
double simpson2(F&& f, int panels = 200) {
  const double h = pi / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double wi = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
    for (int j = 0; j <= panels; ++j) {
      const double wj = (j == 0 || j == panels) ? 1 : (j % 2 ? 4 : 2);
      s += wi * wj * f(i * h, j * h);
    }
  }
  return s * h * h / 9.0;
}

}  // namespace oracle
