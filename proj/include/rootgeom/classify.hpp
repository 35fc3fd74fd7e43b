#pragma once

// Finite / affine / indefinite type of each irreducible component and the
// weakly hyperbolic, hyperbolic and compact hyperbolic flags.

#include <map>
#include <string>
#include <vector>

#include "rootgeom/faces.hpp"

namespace rootgeom {

enum class ComponentType { Finite, Affine, Indefinite };

inline std::string to_string(ComponentType t) {
  switch (t) {
    case ComponentType::Finite: return "finite";
    case ComponentType::Affine: return "affine";
    case ComponentType::Indefinite: return "indefinite";
  }
  return "indefinite";
}

inline ComponentType type_from_signature(const Signature& s) {
  if (s.negative >= 1) return ComponentType::Indefinite;
  return s.zero == 0 ? ComponentType::Finite : ComponentType::Affine;
}

struct ComponentReport {
  std::vector<std::size_t> indices;
  ComponentType type = ComponentType::Finite;
  Signature signature;
};

struct TypeReport {
  ComponentType type = ComponentType::Finite;  // of the whole system
  std::vector<ComponentReport> components;
  Signature signature;       // of the Gram matrix
  Signature span_signature;  // of B restricted to span(Δ)
  bool irreducible = true;
  bool weakly_hyperbolic = false;
  bool hyperbolic = false;
  bool compact_hyperbolic = false;
};

/// Signature of the ambient form restricted to span(Δ_I).
template <Scalar T>
Signature span_signature(const RootSystem<T>& sys, std::span<const std::size_t> subset) {
  const std::size_t m = sys.ambient_dim();
  Matrix<T> vs(subset.size(), m);
  for (std::size_t r = 0; r < subset.size(); ++r)
    for (std::size_t k = 0; k < m; ++k) vs(r, k) = sys.simple_vector(subset[r])[k];
  auto ech = row_echelon(vs);
  const std::size_t d = ech.pivots.size();
  if (d == 0) return {};
  Matrix<T> restricted(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      restricted(a, b) = bilinear<T>(sys.form(), ech.reduced.row(a), ech.reduced.row(b));
  return signature_of(restricted);
}

template <Scalar T>
std::vector<ComponentReport> component_types(const RootSystem<T>& sys, std::span<const std::size_t> subset) {
  auto g = sys.gram().principal(subset);
  std::vector<ComponentReport> out;
  for (auto& comp : irreducible_components(g)) {
    ComponentReport r;
    for (auto c : comp) r.indices.push_back(subset[c]);
    r.signature = signature_of(g.principal(comp));
    r.type = type_from_signature(r.signature);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline ComponentType overall_type(const std::vector<ComponentReport>& comps) {
  ComponentType t = ComponentType::Finite;
  for (const auto& c : comps) {
    if (c.type == ComponentType::Indefinite) return ComponentType::Indefinite;
    if (c.type == ComponentType::Affine) t = ComponentType::Affine;
  }
  return t;
}

}  // namespace detail

/// Classification of the subsystem on `subset` (all of Δ when empty).
/// Hyperbolicity quantifies over the proper facial subsets of that subsystem.
template <Scalar T>
TypeReport classify(const RootSystem<T>& sys, std::vector<std::size_t> subset = {}) {
  if (subset.empty()) {
    subset.resize(sys.rank());
    std::iota(subset.begin(), subset.end(), 0);
  }
  TypeReport rep;
  rep.components = component_types(sys, subset);
  rep.type = detail::overall_type(rep.components);
  rep.irreducible = rep.components.size() == 1;
  rep.signature = signature_of(sys.gram().principal(subset));
  rep.span_signature = span_signature(sys, subset);
  rep.weakly_hyperbolic = rep.span_signature.negative == 1 && rep.span_signature.zero == 0;
  if (!rep.weakly_hyperbolic) return rep;

  auto sub = sys.subsystem(subset);
  bool all_small = true, all_finite = true;
  for (const auto& f : facial_subsets(sub)) {
    if (f.indices.empty() || f.indices.size() == subset.size()) continue;
    std::vector<std::size_t> mapped;
    for (auto i : f.indices) mapped.push_back(subset[i]);
    for (const auto& c : component_types(sys, mapped)) {
      if (c.type == ComponentType::Indefinite) all_small = false;
      if (c.type != ComponentType::Finite) all_finite = false;
    }
  }
  rep.hyperbolic = all_small;
  rep.compact_hyperbolic = all_small && all_finite;
  return rep;
}

}  // namespace rootgeom
