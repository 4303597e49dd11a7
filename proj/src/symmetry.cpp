#include "robinbif/symmetry.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "robinbif/errors.hpp"

namespace robinbif {

namespace {

using Mat2 = std::array<int, 4>;  // row major

constexpr Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// Matrices on centred coordinates (x - pi/2, y - pi/2).
constexpr Mat2 kR{0, -1, 1, 0};
constexpr Mat2 kS1{-1, 0, 0, 1};
constexpr Mat2 kId{1, 0, 0, 1};

constexpr std::array<Mat2, 8> make_table() {
  std::array<Mat2, 8> t{};
  for (int r = 0; r < 2; ++r) {
    Mat2 m = r ? kS1 : kId;
    for (int a = 0; a < 4; ++a) {
      t[4 * r + a] = m;
      m = mul(m, kR);
    }
  }
  return t;
}

constexpr std::array<Mat2, 8> kTable = make_table();

int lookup(const Mat2& m) {
  for (int i = 0; i < 8; ++i)
    if (kTable[i] == m) return i;
  throw Error("dihedral lookup failed");
}

const char* const kNames[8] = {"I", "R", "R2", "R3", "S1", "S1R", "S1R2", "S1R3"};

std::vector<GroupElement> closure(const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> out{GroupElement::identity()};
  bool grown = true;
  while (grown) {
    grown = false;
    const auto current = out;
    for (const auto& a : current) {
      for (const auto& g : gens) {
        const auto p = compose(a, g);
        if (std::find(out.begin(), out.end(), p) == out.end()) {
          out.push_back(p);
          grown = true;
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.code() < y.code(); });
  return out;
}

bool same_set(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& g : a)
    if (std::find(b.begin(), b.end(), g) == b.end()) return false;
  return true;
}

std::string name_for(const std::vector<GroupElement>& el) {
  if (el.size() == 1) return "trivial";
  if (same_set(el, all_elements())) return "Z2xD4";
  if (same_set(el, d4_elements())) return "D4";
  if (same_set(el, z2d2_elements())) return "Z2xD2";
  if (same_set(el, d2_elements())) return "D2";
  // Diagonal reflections (x, y) -> (y, x) and (pi - y, pi - x) with + sign.
  for (const auto& g : el)
    if (g.sign > 0 && (g.dihedral == 5 || g.dihedral == 7)) return "diag";
  return "";
}

}  // namespace

std::string GroupElement::name() const {
  return (sign > 0 ? std::string() : std::string("-")) + kNames[dihedral];
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return {g.sign * h.sign, lookup(mul(kTable[g.dihedral], kTable[h.dihedral]))};
}

GroupElement inverse(const GroupElement& g) {
  const Mat2& m = kTable[g.dihedral];
  return {g.sign, lookup({m[0], m[2], m[1], m[3]})};
}

GroupElement parse_element(const std::string& name) {
  std::string s = name;
  int sign = 1;
  if (!s.empty() && s[0] == '-') {
    sign = -1;
    s = s.substr(1);
  }
  for (int i = 0; i < 8; ++i)
    if (s == kNames[i]) return {sign, i};
  throw ValidationError("unknown group element '" + name + "'");
}

std::vector<GroupElement> all_elements() {
  std::vector<GroupElement> out;
  for (int s : {1, -1})
    for (int d = 0; d < 8; ++d) out.push_back({s, d});
  return out;
}

std::vector<GroupElement> d4_elements() {
  std::vector<GroupElement> out;
  for (int d = 0; d < 8; ++d) out.push_back({1, d});
  return out;
}

std::vector<GroupElement> d2_elements() { return {{1, 0}, {1, 2}, {1, 4}, {1, 6}}; }

std::vector<GroupElement> z2d2_elements() {
  auto out = d2_elements();
  for (int d : {0, 2, 4, 6}) out.push_back({-1, d});
  return out;
}

bool SymmetryLabel::contains(const GroupElement& g) const {
  return std::find(elements.begin(), elements.end(), g) != elements.end();
}

SymmetryLabel make_label(std::vector<GroupElement> elements) {
  std::sort(elements.begin(), elements.end(), [](auto& x, auto& y) { return x.code() < y.code(); });
  SymmetryLabel label;
  label.elements = elements;
  // Greedy generating set in canonical order.
  std::vector<GroupElement> span{GroupElement::identity()};
  for (const auto& g : elements) {
    if (std::find(span.begin(), span.end(), g) != span.end()) continue;
    label.generators.push_back(g);
    span = closure(label.generators);
  }
  if (!same_set(span, elements)) throw Error("make_label: element set is not a group");
  label.name = name_for(elements);
  if (label.name.empty()) {
    label.name = "<";
    for (std::size_t i = 0; i < label.generators.size(); ++i) {
      if (i) label.name += ",";
      label.name += label.generators[i].name();
    }
    label.name += ">";
  }
  return label;
}

GridFunction act(const GroupElement& g, const Grid& grid, const GridFunction& u) {
  const int n = grid.n;
  if (u.size() != static_cast<Eigen::Index>(n) * n) {
    throw UnsupportedGridError("act: grid function is not N x N");
  }
  const Mat2& m = kTable[g.dihedral];
  GridFunction out(u.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // delta^{-1} = delta^T on centred integer coordinates 2i - (n-1).
      const int cx = 2 * i - (n - 1);
      const int cy = 2 * j - (n - 1);
      const int qx = m[0] * cx + m[2] * cy;
      const int qy = m[1] * cx + m[3] * cy;
      out[grid.index(i, j)] = g.sign * u[grid.index((qx + n - 1) / 2, (qy + n - 1) / 2)];
    }
  }
  return out;
}

SymmetryLabel isotropy(const Grid& grid, const GridFunction& u, double tol,
                       const std::vector<GroupElement>& ambient) {
  const double norm = grid_norm(grid, u);
  if (norm == 0.0) {
    auto label = make_label(ambient);
    label.degenerate = true;
    return label;
  }
  std::vector<std::pair<GroupElement, double>> fixed;
  for (const auto& g : ambient) {
    const double r = grid_norm(grid, act(g, grid, u) - u) / norm;
    if (r <= tol) fixed.emplace_back(g, r);
  }
  // Drop the worst-fitting element until the set is closed.
  for (;;) {
    auto has = [&](const GroupElement& g) {
      return std::any_of(fixed.begin(), fixed.end(), [&](auto& p) { return p.first == g; });
    };
    const std::pair<GroupElement, double>* bad = nullptr;
    for (const auto& a : fixed) {
      for (const auto& b : fixed) {
        if (!has(compose(a.first, b.first))) {
          const auto* worse = (a.second >= b.second) ? &a : &b;
          if (!bad || worse->second > bad->second) bad = worse;
        }
      }
    }
    if (!bad) break;
    const GroupElement drop = bad->first;
    fixed.erase(std::remove_if(fixed.begin(), fixed.end(), [&](auto& p) { return p.first == drop; }),
                fixed.end());
  }
  std::vector<GroupElement> el;
  for (const auto& p : fixed) el.push_back(p.first);
  return make_label(std::move(el));
}

SymmetryLabel gamma_for(bool f_odd, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("gamma_for: mu must lie in [0,1]");
  // Full dihedral symmetry only for the all-Neumann problem at mu = 0.
  if (mu == 0.0) return make_label(f_odd ? all_elements() : d4_elements());
  return make_label(f_odd ? z2d2_elements() : d2_elements());
}

double check_equivariance(const GridOperatorFn& apply_G, const GroupElement& g, const Grid& grid,
                          int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    GridFunction u(grid.size());
    for (auto& v : u) v = dist(rng);
    const GridFunction Gu = apply_G(u);
    const GridFunction lhs = apply_G(act(g, grid, u));
    const GridFunction rhs = act(g, grid, Gu);
    worst = std::max(worst, grid_norm(grid, lhs - rhs) / grid_norm(grid, Gu));
  }
  return worst;
}

}  // namespace robinbif
