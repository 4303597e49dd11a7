#include "robinbif/lyapunov_schmidt.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "robinbif/errors.hpp"
#include "robinbif/quadrature.hpp"

namespace robinbif {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pi2() { return kPi * kPi; }

void check_double_pair(int n, int k) {
  if (n < 0 || k < 0) throw ValidationError("wavenumbers must be nonnegative");
  if (n == k) throw ValidationError("n = k is not a double point");
}

GridFunction unit(const GridOperator& op, const GridFunction& u) { return u / op.norm(u); }

}  // namespace

ReducedCoefficients::ReducedCoefficients()
    : a(kNaN), c(kNaN), q(kNaN), d1(kNaN), d2(kNaN), c1(kNaN), c2(kNaN) {}

double ReducedCoefficients::diagnostic(const std::string& key) const {
  for (const auto& [k, v] : diagnostics)
    if (k == key) return v;
  return kNaN;
}

double ModeCombination::operator()(double x, double y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) s += z[i] * modes[i](x, y);
  return s;
}

double ModeCombination::dy(double x, double y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) s += z[i] * modes[i].dy(x, y);
  return s;
}

double quadratic_coeff(const EigenMode& phi, const Nonlinearity& f, double lambda0) {
  const double cube = integrate_square([&](double x, double y) {
    const double v = phi(x, y);
    return v * v * v;
  });
  return 0.5 * f.d2(lambda0) * cube;
}

double tprime_pairing(const EigenMode& phi_i, const ModeCombination& psi, double h_tilde,
                      double lambda0) {
  const double overlap = integrate_square([&](double x, double y) { return phi_i(x, y) * psi(x, y); });
  const double drift = integrate_square(
      [&](double x, double y) { return phi_i(x, y) * (2 * y / kPi - 1) * psi.dy(x, y); });
  return h_tilde * 2 / ((lambda0 + 1) * (lambda0 + 1)) * (overlap / kPi + drift);
}

double tprime_pairing_grid(const GridOperator& op, const GridFunction& phi_i,
                           const GridFunction& psi) {
  return op.inner(phi_i, op.apply_Tprime(psi));
}

W2Solver::W2Solver(const GridOperator& op, std::vector<GridFunction> kernel, double lambda0,
                   const Nonlinearity& f)
    : op_(&op), kernel_(std::move(kernel)), lambda0_(lambda0), d2_(f.d2(lambda0)) {
  for (const auto& phi : kernel_) {
    const double res = eigen_residual(op, lambda0, phi);
    if (res > 1e-8 || std::abs(op.norm(phi) - 1) > 1e-8) {
      throw KernelMismatchError("kernel vector is not a unit discrete eigenvector at lambda0 (residual " +
                                std::to_string(res) + ")");
    }
  }
  const int nf = op.free_count();
  const int l = static_cast<int>(kernel_.size());
  std::vector<Eigen::Triplet<double>> trip;
  const SparseMatrix& k = op.stiffness();
  for (int c = 0; c < k.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(k, c); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
  for (int p = 0; p < nf; ++p) trip.emplace_back(p, p, -lambda0 * op.mass()[p]);
  for (int j = 0; j < l; ++j) {
    const Eigen::VectorXd mphi = op.mass().cwiseProduct(op.gather(kernel_[j]));
    for (int p = 0; p < nf; ++p) {
      if (mphi[p] == 0.0) continue;
      trip.emplace_back(p, nf + j, mphi[p]);
      trip.emplace_back(nf + j, p, mphi[p]);
    }
  }
  SparseMatrix b(nf + l, nf + l);
  b.setFromTriplets(trip.begin(), trip.end());
  b.makeCompressed();
  lu_.analyzePattern(b);
  lu_.factorize(b);
  if (lu_.info() != Eigen::Success) throw KernelMismatchError("bordered kernel system is singular");
}

GridFunction W2Solver::solve(const GridFunction& phi_i, const GridFunction& phi_j) const {
  const GridOperator& op = *op_;
  GridFunction s = d2_ * phi_i.cwiseProduct(phi_j);
  for (const auto& phi : kernel_) s -= op.inner(phi, s) * phi;
  const int nf = op.free_count();
  const int l = static_cast<int>(kernel_.size());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf + l);
  rhs.head(nf) = -op.mass().cwiseProduct(op.gather(s));
  const Eigen::VectorXd sol = lu_.solve(rhs);
  const double scale = op.norm(s);
  for (int j = 0; j < l; ++j) {
    if (std::abs(sol[nf + j]) > 1e-6 * scale + 1e-300) {
      throw KernelMismatchError("bordered solve: kernel multiplier does not vanish");
    }
  }
  return op.scatter(sol.head(nf));
}

GridFunction solve_w2(const GridFunction& phi_i, const GridFunction& phi_j, const GridOperator& op,
                      const std::vector<GridFunction>& kernel, double lambda0,
                      const Nonlinearity& f) {
  return W2Solver(op, kernel, lambda0, f).solve(phi_i, phi_j);
}

ReducedCoefficients simple_coeffs(const BifurcationPoint& point, const Nonlinearity& f,
                                  const GridOperator& op) {
  if (point.kernel_dim() != 1) throw ValidationError("simple_coeffs: kernel must be one-dimensional");
  if (std::abs(op.mu() - point.mu0) > 1e-14) throw ValidationError("simple_coeffs: operator mu differs from mu0");
  if (op.dirichlet()) throw DomainError("simple_coeffs: mu0 must be < 1");
  const EigenMode& phi = point.modes[0];
  const double lambda0 = point.lambda0;
  const double ht = op.ratio_derivative();

  ReducedCoefficients rc;
  rc.kind = CoefficientKind::Simple;
  rc.n = point.n;
  rc.k = point.m;
  rc.mu0 = point.mu0;
  rc.lambda0 = lambda0;
  rc.provenance = "numeric";
  rc.a = 2 * ht *
         (1 / kPi + integrate_square([&](double x, double y) {
            return phi(x, y) * (2 * y / kPi - 1) * phi.dy(x, y);
          }));
  rc.q = quadratic_coeff(phi, f, lambda0);
  const double cube_scale = 0.5 * std::abs(f.d2(lambda0)) *
                            integrate_square([&](double x, double y) { return std::pow(std::abs(phi(x, y)), 3); });
  rc.transcritical = std::abs(rc.q) > 1e-8 * cube_scale;

  auto [lh, phih] = refine_eigenpair(op, op.grid().sample(phi));
  if (std::abs(lh - lambda0) > 0.05 * (1 + lambda0)) {
    throw KernelMismatchError("simple_coeffs: discrete eigenvalue far from lambda0");
  }
  W2Solver w2(op, {phih}, lh, f);
  const GridFunction v = w2.solve(phih, phih);
  const GridFunction sq = phih.cwiseProduct(phih);
  rc.c = 0.5 * f.d2(lh) * op.inner(sq, v) + f.d3(lh) / 6 * op.inner(sq, sq);
  rc.diagnostics = {{"lambda0_grid", lh},
                    {"a_grid", (lh + 1) * (lh + 1) * tprime_pairing_grid(op, phih, phih)},
                    {"grid_n", static_cast<double>(op.n())}};
  return rc;
}

ReducedCoefficients double_coeffs_neumann(int n, int k, const Nonlinearity& f, double h_tilde0) {
  check_double_pair(n, k);
  const bool swapped = (k == 0);
  const int nn = swapped ? k : n;
  const int kk = swapped ? n : k;
  const double lambda0 = n * n + k * k;
  const double d2f = f.d2(lambda0);
  const double d3f = f.d3(lambda0);
  const double n2 = nn * nn, k2 = kk * kk;

  ReducedCoefficients rc;
  rc.kind = CoefficientKind::Double;
  rc.n = n;
  rc.k = k;
  rc.mu0 = 0.0;
  rc.lambda0 = lambda0;
  rc.provenance = "closed_form";
  if (nn * kk != 0) {
    const double den1 = (k2 - 3 * n2) * (n2 - 3 * k2) * (n2 + k2);
    const double den2 = (k2 + n2) * (k2 + n2) - 16 * k2 * n2;
    if (den1 == 0.0 || den2 == 0.0) throw DegeneracyError("resonant double point: denominator vanishes");
    rc.c1 = (2.25 * d3f - 0.25 * d2f * d2f * (45 * (k2 - n2) * (k2 - n2) + 4 * k2 * n2) / den1) / (6 * pi2());
    rc.c2 = (3 * d3f - 6 * d2f * d2f / (n2 + k2) * (((k2 - n2) * (k2 - n2) - 4 * k2 * n2) / den2 - 0.5)) /
            (6 * pi2());
    rc.d1 = rc.d2 = 4 / kPi * h_tilde0;
  } else {
    rc.c1 = (1.5 * d3f + 2.5 / k2 * d2f * d2f) / (6 * pi2());
    rc.c2 = d3f / (2 * pi2());
    rc.d1 = 4 / kPi * h_tilde0;
    rc.d2 = 0.0;
    if (swapped) std::swap(rc.d1, rc.d2);
  }

  auto [p1, p2] = neumann_kernel(n, k);
  auto quad = [](auto&& g) { return integrate_square(g); };
  const double q1 = quad([&](double x, double y) { return std::pow(p1(x, y), 4); });
  const double q2 = quad([&](double x, double y) { return std::pow(p2(x, y), 4); });
  const double cross = quad([&](double x, double y) { return std::pow(p1(x, y) * p2(x, y), 2); });
  double triple = 0.0;
  const EigenMode* m[2] = {&p1, &p2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        triple = std::max(triple, std::abs(quad([&](double x, double y) {
                            return (*m[i])(x, y) * (*m[j])(x, y) * (*m[l])(x, y);
                          })));
  rc.diagnostics = {{"quartic_phi1", q1},
                    {"quartic_phi2", q2},
                    {"quartic_exact", (n * k != 0 ? 9.0 / 4.0 : 1.5) / pi2()},
                    {"cross_quartic", cross},
                    {"cross_quartic_exact", 1 / pi2()},
                    {"triple_max", triple}};
  return rc;
}

ReducedCoefficients double_coeffs_numeric(int n, int k, const Nonlinearity& f,
                                          const GridOperator& op) {
  check_double_pair(n, k);
  if (op.mu() != 0.0) throw ValidationError("double_coeffs_numeric: operator must be at mu = 0");
  auto [m1, m2] = neumann_kernel(n, k);
  const GridFunction phi1 = unit(op, op.grid().sample(m1));
  const GridFunction phi2 = unit(op, op.grid().sample(m2));
  const Eigen::VectorXd g1 = op.gather(phi1);
  const double lh = g1.dot(op.stiffness() * g1);

  W2Solver w2(op, {phi1, phi2}, lh, f);
  const GridFunction v11 = w2.solve(phi1, phi1);
  const GridFunction v22 = w2.solve(phi2, phi2);
  const GridFunction v12 = w2.solve(phi1, phi2);
  const double d2f = f.d2(lh);
  const double d3f = f.d3(lh);
  const GridFunction s1 = phi1.cwiseProduct(phi1);
  const GridFunction s2 = phi2.cwiseProduct(phi2);
  const GridFunction s12 = phi1.cwiseProduct(phi2);
  const double quartic12 = op.inner(s1, s2);

  ReducedCoefficients rc;
  rc.kind = CoefficientKind::Double;
  rc.n = n;
  rc.k = k;
  rc.mu0 = 0.0;
  rc.lambda0 = n * n + k * k;
  rc.provenance = "numeric";
  rc.c1 = 0.5 * d2f * op.inner(s1, v11) + d3f / 6 * op.inner(s1, s1);
  rc.c2 = 0.5 * d2f * op.inner(s1, v22) + d2f * op.inner(s12, v12) + 0.5 * d3f * quartic12;
  const double scale = (lh + 1) * (lh + 1);
  rc.d1 = scale * tprime_pairing_grid(op, phi1, phi1);
  rc.d2 = scale * tprime_pairing_grid(op, phi2, phi2);
  rc.diagnostics = {
      {"lambda0_grid", lh},
      {"c1_phi2", 0.5 * d2f * op.inner(s2, v22) + d3f / 6 * op.inner(s2, s2)},
      {"c2_phi2", 0.5 * d2f * op.inner(s2, v11) + d2f * op.inner(s12, v12) + 0.5 * d3f * quartic12},
      {"d12", scale * tprime_pairing_grid(op, phi1, phi2)},
      {"grid_n", static_cast<double>(op.n())}};
  return rc;
}

ReducedCoefficients richardson(const ReducedCoefficients& coarse, double h_coarse,
                               const ReducedCoefficients& fine, double h_fine) {
  const double r = (h_coarse / h_fine) * (h_coarse / h_fine) - 1;
  auto ex = [&](double c, double f) { return f + (f - c) / r; };
  ReducedCoefficients out = fine;
  out.provenance = "richardson";
  out.a = ex(coarse.a, fine.a);
  out.c = ex(coarse.c, fine.c);
  out.q = ex(coarse.q, fine.q);
  out.d1 = ex(coarse.d1, fine.d1);
  out.d2 = ex(coarse.d2, fine.d2);
  out.c1 = ex(coarse.c1, fine.c1);
  out.c2 = ex(coarse.c2, fine.c2);
  out.diagnostics.clear();
  for (const auto& [key, v] : fine.diagnostics) {
    if (key == "grid_n") continue;
    out.diagnostics.emplace_back(key, ex(coarse.diagnostic(key), v));
  }
  return out;
}

std::optional<ReducedCoefficients> tabulated_constants(int n, int k) {
  ReducedCoefficients rc;
  rc.kind = CoefficientKind::Double;
  rc.n = n;
  rc.k = k;
  rc.provenance = "tabulated";
  if (n == 1 && k == 2) {
    rc.lambda0 = 5;
    rc.c1 = 5695.0 / (132 * pi2());
    rc.c2 = 110220.0 / (132 * pi2());
    rc.d1 = rc.d2 = 4 / kPi;
    return rc;
  }
  if (n == 0 && k == 1) {
    rc.lambda0 = 1;
    rc.c1 = 19.0 / (6 * pi2());
    rc.c2 = 3.0 / pi2();
    rc.d1 = 4 / kPi;
    rc.d2 = 0.0;
    return rc;
  }
  return std::nullopt;
}

C2Verdict adjudicate_c2(double formula, double printed, double numeric, double rel_tol) {
  C2Verdict v;
  v.formula = formula;
  v.printed = printed;
  v.numeric = numeric;
  v.rel_formula = std::abs(numeric - formula) / std::abs(formula);
  v.rel_printed = std::abs(numeric - printed) / std::abs(printed);
  const bool a = v.rel_formula <= rel_tol;
  const bool b = v.rel_printed <= rel_tol;
  v.verdict = a && b ? "both" : a ? "formula" : b ? "printed" : "neither";
  return v;
}

nlohmann::ordered_json to_json(const ReducedCoefficients& rc) {
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::ordered_json j;
  j["n"] = rc.n;
  j["k"] = rc.k;
  j["mu0"] = rc.mu0;
  j["lambda0"] = rc.lambda0;
  j["kind"] = rc.kind == CoefficientKind::Simple ? "simple" : "double";
  j["a"] = num(rc.a);
  j["c"] = num(rc.c);
  j["q"] = num(rc.q);
  j["d1"] = num(rc.d1);
  j["d2"] = num(rc.d2);
  j["c1"] = num(rc.c1);
  j["c2"] = num(rc.c2);
  j["provenance"] = rc.provenance;
  if (rc.kind == CoefficientKind::Simple) {
    j["normal_form"] = rc.transcritical ? "quadratic-nondegenerate" : "pitchfork";
  }
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [key, v] : rc.diagnostics) d[key] = num(v);
  j["diagnostics"] = d;
  return j;
}

}  // namespace robinbif
