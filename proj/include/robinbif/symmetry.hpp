#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "robinbif/grid.hpp"

namespace robinbif {

/// Element +-delta of Z2 x D4, delta = S1^r R^a with
///   S1(x, y) = (pi - x, y),   R(x, y) = (pi - y, x),
/// acting by (gamma u)(p) = +-u(delta^{-1} p).
struct GroupElement {
  int sign = 1;       // +1 or -1
  int dihedral = 0;   // 4 r + a, r in {0,1}, a in {0..3}

  static GroupElement identity() { return {}; }
  static GroupElement S1() { return {1, 4}; }
  static GroupElement R() { return {1, 1}; }
  static GroupElement minus_identity() { return {-1, 0}; }

  std::string name() const;
  /// Position in the canonical 16-element ordering.
  int code() const { return (sign > 0 ? 0 : 8) + dihedral; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement compose(const GroupElement& g, const GroupElement& h);  // g after h
GroupElement inverse(const GroupElement& g);
GroupElement parse_element(const std::string& name);

/// All 16 elements in canonical order (+ before -, then S1^r R^a).
std::vector<GroupElement> all_elements();
std::vector<GroupElement> d2_elements();    // {I, S1, R2, S1R2}
std::vector<GroupElement> d4_elements();    // the 8 unsigned elements
std::vector<GroupElement> z2d2_elements();  // +-D2

struct SymmetryLabel {
  std::string name;                     // "Z2xD4", "D4", "Z2xD2", "D2", "diag", "trivial", ...
  std::vector<GroupElement> elements;   // canonical order
  std::vector<GroupElement> generators;
  bool degenerate = false;              // set for u == 0

  bool contains(const GroupElement& g) const;
};

/// Label for the subgroup with exactly these elements (must be closed).
SymmetryLabel make_label(std::vector<GroupElement> elements);

/// Exact index permutation plus sign flip; no interpolation.
GridFunction act(const GroupElement& g, const Grid& grid, const GridFunction& u);

/// Isotropy subgroup of u within `ambient`: the elements with
/// ||g u - u|| <= tol ||u||, pruned until closed under composition.
SymmetryLabel isotropy(const Grid& grid, const GridFunction& u, double tol = 1e-8,
                       const std::vector<GroupElement>& ambient = all_elements());

/// Symmetry group of G(., lambda, mu) for the given nonlinearity parity.
SymmetryLabel gamma_for(bool f_odd, double mu);

using GridOperatorFn = std::function<GridFunction(const GridFunction&)>;

/// max over `trials` random u of ||G(g u) - g G(u)|| / ||G(u)||.
double check_equivariance(const GridOperatorFn& apply_G, const GroupElement& g, const Grid& grid,
                          int trials, std::uint64_t seed = 7);

}  // namespace robinbif
