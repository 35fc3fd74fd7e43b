// Normalized roots and limit roots of the infinite dihedral system with
// ⟨α,β⟩ = −3/2, and the polytope K between them.

#include <algorithm>
#include <cstdio>
#include <string>

#include "rootgeom/rootgeom.hpp"

using namespace rootgeom;

int main() {
  auto gram = GramMatrix<Rational>::from_rows({{1, Rational(-3, 2)}, {Rational(-3, 2), 1}});
  auto sys = realize_ambient(gram, {}, {"alpha", "beta"});
  auto form = transverse_form(sys, FormMode::Sum);

  std::printf("depth  root            beta-coordinate of the normalized root\n");
  for (const auto& r : enumerate_roots(sys, 6).roots) {
    auto p = normalized_root<Rational>(sys, form, r.coords);
    std::string root = "(" + format_rational(r.coords[0]) + ", " + format_rational(r.coords[1]) + ")";
    std::printf("%5d  %-14s  %.9f\n", r.depth, root.c_str(), p[1]);
  }
  for (const auto& p : dihedral_limit_roots(sys, form, 6).points)
    std::printf("limit root: (%.12f, %.12f)\n", p.coords[0], p.coords[1]);
  auto k = cone_K_vertices(sys, form);
  double lo = std::min(k.vertices.front()[1], k.vertices.back()[1]);
  double hi = std::max(k.vertices.front()[1], k.vertices.back()[1]);
  std::printf("K = [%.6f, %.6f] in the beta-coordinate\n", lo, hi);
}
