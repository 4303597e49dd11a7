#include "robinbif/branch_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "robinbif/errors.hpp"

namespace robinbif {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(a) + std::abs(b)); }

struct MixedParts {
  double x, y;  // z1^2 and z2^2
};

MixedParts mixed_parts(const ReducedCoefficients& r, double sigma, double nu) {
  const double den = r.c1 * r.c1 - r.c2 * r.c2;
  return {((r.c1 - r.c2) * sigma - (r.c1 * r.d1 - r.c2 * r.d2) * nu) / den,
          ((r.c1 - r.c2) * sigma + (r.c2 * r.d1 - r.c1 * r.d2) * nu) / den};
}

// A sigma inside the existence region where the amplitudes are O(1).
double sample_sigma(const BranchFamily& b, double nu) {
  const auto& r = b.coeffs;
  switch (b.kind) {
    case FamilyKind::Pitchfork: return r.a * nu + r.c;
    case FamilyKind::Transcritical: return r.a * nu + r.q;
    case FamilyKind::PureFirst: return r.d1 * nu + r.c1;
    case FamilyKind::PureSecond: return r.d2 * nu + r.c1;
    case FamilyKind::Mixed: {
      const double sx = (r.c1 * r.d1 - r.c2 * r.d2) * nu / (r.c1 - r.c2);
      const double sy = (r.c1 * r.d2 - r.c2 * r.d1) * nu / (r.c1 - r.c2);
      const double s = r.c1 + r.c2;
      return (s > 0 ? std::max(sx, sy) : std::min(sx, sy)) + s;
    }
  }
  return 0.0;
}

std::vector<GroupElement> intersect(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  std::vector<GroupElement> out;
  for (const auto& g : a)
    if (std::find(b.begin(), b.end(), g) != b.end()) out.push_back(g);
  return out;
}

nlohmann::ordered_json label_json(const SymmetryLabel& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : s.generators) j["generators"].push_back(g.name());
  return j;
}

nlohmann::ordered_json num(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

BranchFamily family(std::string label, FamilyKind kind, int sign, const ReducedCoefficients& rc) {
  BranchFamily b;
  b.label = std::move(label);
  b.kind = kind;
  b.sign = sign;
  b.coeffs = rc;
  return b;
}

}  // namespace

std::vector<double> BranchFamily::radicands(double sigma, double nu) const {
  const auto& r = coeffs;
  switch (kind) {
    case FamilyKind::Pitchfork: return {(sigma - r.a * nu) / r.c};
    case FamilyKind::Transcritical: return {0.0};
    case FamilyKind::PureFirst: return {(sigma - r.d1 * nu) / r.c1};
    case FamilyKind::PureSecond: return {(sigma - r.d2 * nu) / r.c1};
    case FamilyKind::Mixed: {
      const auto m = mixed_parts(r, sigma, nu);
      return {m.x, m.y};
    }
  }
  return {};
}

std::optional<Amplitude> BranchFamily::amplitude(double sigma, double nu) const {
  const auto rad = radicands(sigma, nu);
  for (double v : rad)
    if (!(v >= 0.0)) return std::nullopt;
  switch (kind) {
    case FamilyKind::Pitchfork: return Amplitude{sign * std::sqrt(rad[0]), 0.0};
    case FamilyKind::Transcritical: return Amplitude{(sigma - coeffs.a * nu) / coeffs.q, 0.0};
    case FamilyKind::PureFirst: return Amplitude{std::sqrt(rad[0]), 0.0};
    case FamilyKind::PureSecond: return Amplitude{0.0, std::sqrt(rad[0])};
    case FamilyKind::Mixed: return Amplitude{std::sqrt(rad[0]), sign * std::sqrt(rad[1])};
  }
  return std::nullopt;
}

std::string BranchFamily::existence() const {
  const auto& r = coeffs;
  // "sigma - d nu" with the sign folded into the operator.
  auto shifted = [](double lead, double nu_coef) {
    const std::string s = (lead == 1.0 ? "" : fmt(lead) + " ") + "sigma";
    if (nu_coef == 0.0) return s;
    return s + (nu_coef > 0 ? " - " : " + ") + fmt(std::abs(nu_coef)) + " nu";
  };
  switch (kind) {
    case FamilyKind::Pitchfork: return "(" + shifted(1, r.a) + ")/" + fmt(r.c) + " >= 0";
    case FamilyKind::Transcritical: return "all sigma, z = (" + shifted(1, r.a) + ")/" + fmt(r.q);
    case FamilyKind::PureFirst: return "(" + shifted(1, r.d1) + ")/" + fmt(r.c1) + " >= 0";
    case FamilyKind::PureSecond: return "(" + shifted(1, r.d2) + ")/" + fmt(r.c1) + " >= 0";
    case FamilyKind::Mixed: {
      const std::string den = fmt(r.c1 * r.c1 - r.c2 * r.c2);
      return "(" + shifted(r.c1 - r.c2, r.c1 * r.d1 - r.c2 * r.d2) + ")/" + den + " >= 0 and (" +
             shifted(r.c1 - r.c2, r.c1 * r.d2 - r.c2 * r.d1) + ")/" + den + " >= 0";
    }
  }
  return {};
}

double reduced_residual(const ReducedCoefficients& rc, const Amplitude& z, double sigma, double nu) {
  if (rc.kind == CoefficientKind::Simple) {
    const double q = std::isnan(rc.q) ? 0.0 : rc.q;
    return std::abs((-sigma + rc.a * nu) * z.z1 + q * z.z1 * z.z1 + rc.c * z.z1 * z.z1 * z.z1);
  }
  const double r1 = (-sigma + rc.d1 * nu + rc.c1 * z.z1 * z.z1 + rc.c2 * z.z2 * z.z2) * z.z1;
  const double r2 = (-sigma + rc.d2 * nu + rc.c2 * z.z1 * z.z1 + rc.c1 * z.z2 * z.z2) * z.z2;
  return std::max(std::abs(r1), std::abs(r2));
}

std::vector<BranchFamily> pitchfork_branches(const ReducedCoefficients& rc) {
  if (rc.kind != CoefficientKind::Simple) throw ValidationError("pitchfork_branches: simple coefficients required");
  if (rc.c == 0.0) throw DegeneracyError("pitchfork: c = 0, the 3-jet does not determine the branch");
  if (rc.transcritical) throw DegeneracyError("pitchfork: quadratic term does not vanish (transcritical point)");
  return {family("pitchfork(+)", FamilyKind::Pitchfork, 1, rc), family("pitchfork(-)", FamilyKind::Pitchfork, -1, rc)};
}

BranchFamily transcritical_branch(const ReducedCoefficients& rc) {
  if (rc.kind != CoefficientKind::Simple) throw ValidationError("transcritical_branch: simple coefficients required");
  if (!(rc.q != 0.0)) throw DegeneracyError("transcritical: q = 0");
  return family("transcritical", FamilyKind::Transcritical, 1, rc);
}

std::vector<BranchFamily> double_branches(const ReducedCoefficients& rc) {
  if (rc.kind != CoefficientKind::Double) throw ValidationError("double_branches: double coefficients required");
  if (rc.c1 == 0.0) throw DegeneracyError("double point: c1 = 0");
  if (rc.c1 * rc.c1 == rc.c2 * rc.c2) throw DegeneracyError("double point: c1^2 = c2^2, mixed modes degenerate");
  return {family("pure-phi1", FamilyKind::PureFirst, 1, rc), family("pure-phi2", FamilyKind::PureSecond, 1, rc),
          family("mixed(+,+)", FamilyKind::Mixed, 1, rc), family("mixed(+,-)", FamilyKind::Mixed, -1, rc)};
}

std::vector<SecondaryLocus> secondary_loci(const ReducedCoefficients& rc, int nu_sign) {
  if (rc.kind != CoefficientKind::Double) throw ValidationError("secondary_loci: double coefficients required");
  if (rc.c1 == rc.c2) throw DegeneracyError("secondary loci: c1 = c2");
  std::vector<SecondaryLocus> out;
  if (nearly_equal(rc.d1, rc.d2)) return out;
  const double s = nu_sign >= 0 ? 1.0 : -1.0;
  const double meet2 = (rc.c1 * rc.d1 - rc.c2 * rc.d2) / (rc.c1 - rc.c2);
  const double meet1 = (rc.c1 * rc.d2 - rc.c2 * rc.d1) / (rc.c1 - rc.c2);
  // Pure radicand at sigma = ratio * nu is (ratio - d) nu / c1.
  const double tol = 1e-12 * (1 + std::abs(rc.d1) + std::abs(rc.d2));
  if ((meet1 - rc.d1) * s / rc.c1 > tol) out.push_back({meet1, "pure-phi1", "mixed", nu_sign >= 0 ? 1 : -1});
  if ((meet2 - rc.d2) * s / rc.c1 > tol) out.push_back({meet2, "pure-phi2", "mixed", nu_sign >= 0 ? 1 : -1});
  return out;
}

SymmetryLabel classify_branch_symmetry(BranchFamily& branch, const BifurcationPoint& point, bool f_odd,
                                       double nu, int grid_n) {
  const Grid grid(grid_n);
  const auto ambient = gamma_for(f_odd, point.mu0).elements;
  const GridFunction phi1 = grid.sample(point.modes.at(0));
  const GridFunction phi2 = point.kernel_dim() > 1 ? grid.sample(point.modes[1]) : GridFunction();

  const double sigma = sample_sigma(branch, nu);
  const auto z = branch.amplitude(sigma, nu);
  if (!z) throw Error("classify_branch_symmetry: sample point outside the existence region");
  GridFunction u = z->z1 * phi1;
  if (point.kernel_dim() > 1) u += z->z2 * phi2;
  branch.symmetry = isotropy(grid, u, 1e-8, ambient);

  switch (branch.kind) {
    case FamilyKind::Pitchfork:
    case FamilyKind::Transcritical:
    case FamilyKind::PureFirst: branch.predicted_symmetry = isotropy(grid, phi1, 1e-8, ambient); break;
    case FamilyKind::PureSecond: branch.predicted_symmetry = isotropy(grid, phi2, 1e-8, ambient); break;
    case FamilyKind::Mixed:
      if (nu == 0.0 || nearly_equal(branch.coeffs.d1, branch.coeffs.d2)) {
        branch.predicted_symmetry = isotropy(grid, phi1 + branch.sign * phi2, 1e-8, ambient);
      } else {
        branch.predicted_symmetry = make_label(intersect(isotropy(grid, phi1, 1e-8, ambient).elements,
                                                         isotropy(grid, phi2, 1e-8, ambient).elements));
      }
      break;
  }
  branch.symmetry_consistent = branch.symmetry.elements == branch.predicted_symmetry.elements;
  return branch.symmetry;
}

ScenarioDiagram assemble_diagram(const BifurcationPoint& point, const ReducedCoefficients& coeffs,
                                 bool f_odd, double nu, int grid_n) {
  ScenarioDiagram d;
  d.point = point;
  d.coeffs = coeffs;
  d.nu = nu;
  if (coeffs.kind == CoefficientKind::Simple) {
    if (coeffs.transcritical) {
      d.branches = {transcritical_branch(coeffs)};
      d.notes.push_back("quadratic term nonzero: transcritical truncation");
    } else {
      d.branches = pitchfork_branches(coeffs);
      d.notes.push_back("pitchfork: one family up to z -> -z");
    }
  } else {
    d.branches = double_branches(coeffs);
    d.secondary_loci = secondary_loci(coeffs, nu >= 0 ? 1 : -1);
    d.symmetry_preserved = nearly_equal(coeffs.d1, coeffs.d2);
    d.notes.push_back("four families; z_i -> -z_i images grouped with their representative");
    d.notes.push_back("all four Neumann families persist for small nu");
    d.notes.push_back(d.symmetry_preserved ? "d1 = d2: mixed modes keep the phi1 +- phi2 isotropy"
                                           : "d1 != d2: mixed-mode symmetry broken, secondary loci possible");
  }
  for (auto& b : d.branches) {
    classify_branch_symmetry(b, point, f_odd, nu, grid_n);
    if (!b.symmetry_consistent) d.notes.push_back("symmetry mismatch on " + b.label);
  }
  return d;
}

nlohmann::ordered_json to_json(const ScenarioDiagram& d) {
  nlohmann::ordered_json j;
  j["point"] = {{"lambda0", d.point.lambda0}, {"mu0", d.point.mu0}, {"n", d.point.n},
                {"m", d.point.m}, {"kernel_dim", d.point.kernel_dim()}};
  j["coefficients"] = to_json(d.coeffs);
  j["nu"] = d.nu;
  j["symmetry_preserved"] = d.symmetry_preserved;
  j["branches"] = nlohmann::ordered_json::array();
  for (const auto& b : d.branches) {
    nlohmann::ordered_json jb;
    jb["label"] = b.label;
    jb["existence"] = b.existence();
    jb["symmetry"] = label_json(b.symmetry);
    jb["predicted_symmetry"] = label_json(b.predicted_symmetry);
    jb["symmetry_consistent"] = b.symmetry_consistent;
    const double s = sample_sigma(b, d.nu);
    const auto z = b.amplitude(s, d.nu);
    jb["sample"] = {{"sigma", s}, {"z1", z ? z->z1 : kNaN}, {"z2", z ? z->z2 : kNaN}};
    j["branches"].push_back(jb);
  }
  j["secondary_loci"] = nlohmann::ordered_json::array();
  for (const auto& l : d.secondary_loci) {
    j["secondary_loci"].push_back({{"sigma_over_nu", l.ratio},
                                   {"sigma", l.ratio * d.nu},
                                   {"pure", l.pure},
                                   {"mixed", l.mixed},
                                   {"nu_sign", l.nu_sign}});
  }
  j["notes"] = d.notes;
  return j;
}

void write_diagram_svg(std::ostream& out, const ScenarioDiagram& d, double sigma_min, double sigma_max,
                       int samples) {
  constexpr double W = 640, H = 480, L = 70, R = 20, T = 30, B = 50;
  const double lam0 = d.point.lambda0;
  struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (sigma, signed amplitude), NaN breaks
  };
  std::vector<Curve> curves;
  double amax = 0.0;
  for (const auto& b : d.branches) {
    const bool grouped = b.kind != FamilyKind::Pitchfork && b.kind != FamilyKind::Transcritical;
    for (int s : grouped ? std::vector<int>{1, -1} : std::vector<int>{1}) {
      Curve c{b.label + (grouped ? (s > 0 ? " +" : " -") : ""), {}};
      for (int i = 0; i <= samples; ++i) {
        const double sigma = sigma_min + (sigma_max - sigma_min) * i / samples;
        const auto z = b.amplitude(sigma, d.nu);
        if (!z) {
          c.pts.emplace_back(sigma, kNaN);
          continue;
        }
        double a = std::hypot(z->z1, z->z2);
        if (b.kind == FamilyKind::Pitchfork || b.kind == FamilyKind::Transcritical) a = z->z1;
        c.pts.emplace_back(sigma, s * a);
        amax = std::max(amax, std::abs(a));
      }
      curves.push_back(std::move(c));
    }
  }
  if (amax == 0.0) amax = 1.0;
  auto px = [&](double sigma) { return L + (W - L - R) * (sigma - sigma_min) / (sigma_max - sigma_min); };
  auto py = [&](double a) { return T + (H - T - B) * (1 - (a + amax) / (2 * amax)); };

  static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                       "#17becf", "#e377c2"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double sigma = sigma_min + (sigma_max - sigma_min) * i / 4;
    out << "<text x=\"" << fmt(px(sigma)) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt(lam0 + sigma) << "</text>\n";
    const double a = -amax + 2 * amax * i / 4;
    out << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(a) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
        << fmt(a) << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 8 << "\" font-size=\"12\" text-anchor=\"middle\">lambda</text>\n";
  out << "<text x=\"14\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 "
      << (T + H - B) / 2 << ")\" text-anchor=\"middle\">amplitude</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << W - R << "\" y2=\"" << fmt(py(0))
      << "\" stroke=\"gray\" stroke-width=\"2\"/>\n";
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 8] << "\" stroke-width=\"1.5\" points=\"" << pts
            << "\"><title>" << c.label << "</title></polyline>\n";
      }
      pts.clear();
    };
    for (const auto& [sigma, a] : c.pts) {
      if (std::isnan(a)) {
        flush();
        continue;
      }
      pts += fmt(px(sigma)) + "," + fmt(py(a)) + " ";
    }
    flush();
  }
  for (const auto& l : d.secondary_loci) {
    const double sigma = l.ratio * d.nu;
    if (sigma < sigma_min || sigma > sigma_max) continue;
    out << "<line x1=\"" << fmt(px(sigma)) << "\" y1=\"" << T << "\" x2=\"" << fmt(px(sigma)) << "\" y2=\"" << H - B
        << "\" stroke=\"black\" stroke-dasharray=\"4,3\"><title>secondary: " << l.pure << "</title></line>\n";
  }
  double ly = T + 12;
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    out << "<text x=\"" << W - R - 4 << "\" y=\"" << fmt(ly) << "\" font-size=\"11\" text-anchor=\"end\" fill=\""
        << colors[ci % 8] << "\">" << curves[ci].label << "</text>\n";
    ly += 14;
  }
  out << "</svg>\n";
}

FamilySeed family_seed(const ScenarioDiagram& d, const BranchFamily& b, const GridOperator& op,
                       const Nonlinearity& f, double amplitude) {
  if (b.kind == FamilyKind::Mixed) {
    throw ValidationError("family_seed: mixed families do not bifurcate from the trivial branch at nu != 0");
  }
  const int mode = b.kind == FamilyKind::PureSecond ? 1 : 0;
  auto [lstar, phih] = refine_eigenpair(op, op.grid().sample(d.point.modes.at(mode)));
  SingularPoint sp;
  sp.state.u = GridFunction::Zero(op.grid().size());
  sp.state.lambda = lstar;
  sp.state.mu = op.mu();
  sp.null_vector = phih;
  const double eps = (b.kind == FamilyKind::Pitchfork ? b.sign : 1) * amplitude;
  return {switch_branch(op, f, sp, eps), phih, lstar};
}

ContinuationReport validate_against_continuation(const ScenarioDiagram& d, const GridOperator& op,
                                               const Nonlinearity& f, double sigma_lo, double sigma_hi,
                                               double nu, const ValidationOptions& opts) {
  if (std::abs(op.mu() - (d.point.mu0 + nu)) > 1e-14) {
    throw ValidationError("validate_against_continuation: operator mu must equal mu0 + nu");
  }
  const Grid& grid = op.grid();
  ContinuationReport report;
  report.nu = nu;
  if (std::abs(nu) < 1e-300) {
    report.lambda_ref = refine_eigenpair(op, grid.sample(d.point.modes[0])).first;
  } else {
    const GridOperator ref(op.n(), d.point.mu0, op.spec());
    report.lambda_ref = refine_eigenpair(ref, grid.sample(d.point.modes[0])).first;
  }

  std::vector<double> samples = opts.sigma_samples;
  if (samples.empty())
    for (double t : {0.1, 0.3, 0.5, 0.7, 1.0}) samples.push_back(sigma_lo + (sigma_hi - sigma_lo) * t);
  std::vector<std::string> wanted = opts.families;
  if (wanted.empty()) wanted = {"pitchfork(+)", "pure-phi1", "pure-phi2"};

  for (const auto& b : d.branches) {
    if (std::find(wanted.begin(), wanted.end(), b.label) == wanted.end()) continue;
    BranchValidation bv;
    bv.label = b.label;
    const int mode = b.kind == FamilyKind::PureSecond ? 1 : 0;
    try {
      const FamilySeed fs = family_seed(d, b, op, f, opts.seed_amplitude);
      bv.lambda_root = fs.lambda_root;
      const ContinuationState& seed = fs.state;
      const GridFunction& phih = fs.kernel;

      ContinuationOptions co;
      co.steps = opts.max_steps;
      co.ds = opts.ds;
      co.ds_max = opts.ds_max;
      const double span = 1.1 * std::max(std::abs(sigma_lo), std::abs(sigma_hi)) + 1e-3;
      co.lambda_min = report.lambda_ref - span;
      co.lambda_max = report.lambda_ref + span;
      co.amplitude_probe = phih;
      const BranchTrace trace = continue_branch(op, f, seed, co);
      for (const auto& s : trace.singular) bv.singular_sigma.push_back(s.state.lambda - report.lambda_ref);

      for (double sigma : samples) {
        const auto z = b.amplitude(sigma, nu);
        const double pred = z ? (mode == 0 ? z->z1 : z->z2) : kNaN;
        const double target = report.lambda_ref + sigma;
        double comp = kNaN;
        for (std::size_t j = 0; j + 1 < trace.states.size(); ++j) {
          const double l0 = trace.states[j].lambda - target;
          const double l1 = trace.states[j + 1].lambda - target;
          if (l0 * l1 > 0) continue;
          const double t = l0 == l1 ? 0.0 : l0 / (l0 - l1);
          ContinuationState guess = trace.states[j];
          guess.u = (1 - t) * trace.states[j].u + t * trace.states[j + 1].u;
          guess.lambda = target;
          comp = op.inner(phih, newton_solve(op, f, guess, Hold::lambda()).state.u);
          break;
        }
        bv.sigma.push_back(sigma);
        bv.predicted.push_back(pred);
        bv.computed.push_back(comp);
        bv.rel_error.push_back(std::abs(comp - pred) / std::abs(pred));
        if (z && std::isnan(comp) && bv.failure.empty()) bv.failure = "sigma " + fmt(sigma) + " not reached";
      }
    } catch (const Error& e) {
      bv.failure = e.what();
    }
    // Max and trend over the samples where both amplitudes exist.
    double emax = kNaN;
    std::size_t lo = bv.sigma.size(), hi = bv.sigma.size();
    for (std::size_t i = 0; i < bv.rel_error.size(); ++i) {
      if (std::isnan(bv.rel_error[i])) continue;
      emax = std::isnan(emax) ? bv.rel_error[i] : std::max(emax, bv.rel_error[i]);
      if (lo == bv.sigma.size() || bv.sigma[i] < bv.sigma[lo]) lo = i;
      if (hi == bv.sigma.size() || bv.sigma[i] > bv.sigma[hi]) hi = i;
    }
    bv.max_rel_error = emax;
    if (lo != hi && lo < bv.sigma.size()) bv.error_decreasing = bv.rel_error[lo] < bv.rel_error[hi];
    report.branches.push_back(std::move(bv));
  }
  return report;
}

nlohmann::ordered_json to_json(const ContinuationReport& r) {
  nlohmann::ordered_json j;
  j["nu"] = r.nu;
  j["lambda_ref"] = r.lambda_ref;
  j["branches"] = nlohmann::ordered_json::array();
  for (const auto& b : r.branches) {
    nlohmann::ordered_json jb;
    jb["label"] = b.label;
    jb["lambda_root"] = b.lambda_root;
    jb["samples"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < b.sigma.size(); ++i) {
      jb["samples"].push_back({{"sigma", b.sigma[i]},
                               {"predicted", num(b.predicted[i])},
                               {"computed", num(b.computed[i])},
                               {"rel_error", num(b.rel_error[i])}});
    }
    jb["max_rel_error"] = num(b.max_rel_error);
    jb["error_decreasing"] = b.error_decreasing;
    jb["singular_sigma"] = b.singular_sigma;
    jb["failure"] = b.failure;
    j["branches"].push_back(jb);
  }
  return j;
}

}  // namespace robinbif
