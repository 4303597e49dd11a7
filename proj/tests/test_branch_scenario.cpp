#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "robinbif/branch_scenario.hpp"
#include "robinbif/errors.hpp"

using namespace robinbif;

namespace {

ReducedCoefficients double_rc(double c1, double c2, double d1, double d2) {
  ReducedCoefficients r;
  r.kind = CoefficientKind::Double;
  r.c1 = c1;
  r.c2 = c2;
  r.d1 = d1;
  r.d2 = d2;
  return r;
}

}  // namespace

TEST_CASE("emitted amplitudes solve the reduced equations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> s(-2, 2), n(-0.3, 0.3);
  for (const auto& rc : {double_rc(0.32, 0.30, 1.27, 0.0), double_rc(4.37, 2.17, 1.27, 1.27), double_rc(-1.0, 0.4, 0.3, -0.2)}) {
    for (const auto& b : double_branches(rc)) {
      int hits = 0;
      for (int t = 0; t < 2000 && hits < 100; ++t) {
        const double sigma = s(rng), nu = n(rng);
        const auto z = b.amplitude(sigma, nu);
        if (!z) continue;
        ++hits;
        // Direct evaluation of the two equations.
        const double e1 = (-sigma + rc.d1 * nu + rc.c1 * z->z1 * z->z1 + rc.c2 * z->z2 * z->z2) * z->z1;
        const double e2 = (-sigma + rc.d2 * nu + rc.c2 * z->z1 * z->z1 + rc.c1 * z->z2 * z->z2) * z->z2;
        CHECK(std::abs(e1) < 1e-12);
        CHECK(std::abs(e2) < 1e-12);
        CHECK(reduced_residual(rc, *z, sigma, nu) < 1e-12);
      }
      CHECK(hits == 100);
    }
  }
}

TEST_CASE("reflections map families onto families") {
  const auto rc = double_rc(0.32, 0.30, 1.27, 0.0);
  const auto fam = double_branches(rc);
  const auto a = fam[2].amplitude(1.0, 0.01), b = fam[3].amplitude(1.0, 0.01);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->z1 == b->z1);
  CHECK(a->z2 == -b->z2);
  const Amplitude flipped{-a->z1, a->z2};
  CHECK(reduced_residual(rc, flipped, 1.0, 0.01) < 1e-12);
}

TEST_CASE("equal d keeps mixed amplitudes equal in magnitude") {
  const auto rc = double_rc(4.37, 2.17, 1.27, 1.27);
  const auto fam = double_branches(rc);
  for (double s : {0.1, 0.5, 2.0}) {
    const auto z = fam[2].amplitude(s, 0.02);
    REQUIRE(z);
    CHECK(std::abs(z->z1) == doctest::Approx(std::abs(z->z2)).epsilon(1e-14));
  }
  CHECK(secondary_loci(rc).empty());
}

TEST_CASE("families converge to the Neumann families as nu -> 0") {
  const auto rc = double_rc(0.32, 0.30, 1.27, 0.0);
  for (const auto& b : double_branches(rc)) {
    const auto z0 = b.amplitude(0.5, 0.0);
    const auto z1 = b.amplitude(0.5, 1e-9);
    REQUIRE(z0);
    REQUIRE(z1);
    CHECK(std::abs(z0->z1 - z1->z1) + std::abs(z0->z2 - z1->z2) < 1e-7);
  }
}

TEST_CASE("secondary loci are where a mixed amplitude vanishes") {
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto cf = double_coeffs_neumann(0, 1, f, 1.0);
  const auto loci = secondary_loci(cf, 1);
  REQUIRE(loci.size() == 1);
  CHECK(loci[0].pure == "pure-phi2");
  CHECK(loci[0].ratio == doctest::Approx(76 / oracle::pi).epsilon(1e-13));
  // Mixed radicand for z1 vanishes there, and pure-phi2 exists.
  const auto fam = double_branches(cf);
  const double nu = 0.01, sigma = loci[0].ratio * nu;
  CHECK(std::abs(fam[2].radicands(sigma, nu)[0]) < 1e-14);
  CHECK(fam[1].amplitude(sigma, nu).has_value());
  CHECK(secondary_loci(cf, -1).size() == 1);
  CHECK(secondary_loci(cf, -1)[0].pure == "pure-phi1");
}

TEST_CASE("degenerate coefficients are rejected") {
  ReducedCoefficients s;
  s.kind = CoefficientKind::Simple;
  s.a = 1.0;
  s.c = 0.0;
  s.q = 0.0;
  CHECK_THROWS_AS(pitchfork_branches(s), DegeneracyError);
  CHECK_THROWS_AS(double_branches(double_rc(1.0, -1.0, 0.0, 0.0)), DegeneracyError);
  CHECK_THROWS_AS(secondary_loci(double_rc(1.0, 1.0, 0.0, 1.0)), DegeneracyError);
}

TEST_CASE("diagrams at simple and double points") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto p = simple_point(1, 2, 0.5, spec);
  const auto rc = simple_coeffs(p, f, GridOperator(32, 0.5, spec));
  const auto d = assemble_diagram(p, rc, false, 0.0, 32);
  REQUIRE(d.branches.size() == 2);
  CHECK(d.branches[0].label == "pitchfork(+)");
  CHECK(d.branches[0].symmetry_consistent);

  const auto p0 = simple_point(0, 0, 0.5, spec);
  const auto rc0 = simple_coeffs(p0, f, GridOperator(32, 0.5, spec));
  CHECK(rc0.transcritical);
  const auto d0 = assemble_diagram(p0, rc0, false, 0.0, 32);
  REQUIRE(d0.branches.size() == 1);
  CHECK(d0.branches[0].kind == FamilyKind::Transcritical);

  const auto d12 = assemble_diagram(neumann_double_point(1, 2), double_coeffs_neumann(1, 2, f, 1.0), false, 0.01, 32);
  CHECK(d12.branches.size() == 4);
  CHECK(d12.symmetry_preserved);
  CHECK(d12.secondary_loci.empty());
  const auto d01 = assemble_diagram(neumann_double_point(0, 1), double_coeffs_neumann(0, 1, f, 1.0), false, 0.01, 32);
  CHECK_FALSE(d01.symmetry_preserved);
  CHECK(d01.branches[2].symmetry.elements.size() == 1);

  std::ostringstream svg;
  write_diagram_svg(svg, d01, -0.1, 0.4, 50);
  CHECK(svg.str().find("<svg") == 0);
  CHECK(svg.str().find("<polyline") != std::string::npos);
  CHECK(svg.str().find("stroke-dasharray") != std::string::npos);
  CHECK(to_json(d01).dump() == to_json(d01).dump());
}

TEST_CASE("continuation validation of a pitchfork") {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  const auto p = simple_point(1, 1, 0.5, spec);
  const GridOperator op(32, 0.5, spec);
  const auto d = assemble_diagram(p, simple_coeffs(p, f, op), false, 0.0, 32);
  ValidationOptions vo;
  vo.sigma_samples = {0.001, 0.005};
  vo.families = {"pitchfork(+)"};
  const auto rep = validate_against_continuation(d, op, f, 0.0, 0.05, 0.0, vo);
  REQUIRE(rep.branches.size() == 1);
  CHECK(rep.branches[0].failure.empty());
  CHECK(rep.branches[0].max_rel_error < 0.05);
  CHECK(rep.branches[0].error_decreasing);
  CHECK_THROWS_AS(validate_against_continuation(d, op, f, 0.0, 0.05, 0.01, vo), ValidationError);
}
