#pragma once

// The polytope K = 𝒦 ∩ V₁, its W-translates (a sample of the imaginary
// convex set Z), the generating family of facial subsystems, samples of the
// fractal base set F₀, and the decomposition of conv(Δ̂) for generic
// universal systems.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rootgeom/classify.hpp"

namespace rootgeom {

/// normal · v <= offset
struct Halfspace {
  Point normal;
  double offset = 0;
};

struct Polytope {
  std::vector<Point> vertices;
  std::vector<Halfspace> halfspaces;
};

namespace detail {

/// Calls f on every k-subset of {0, ..., n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(std::as_const(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline constexpr std::size_t kMaxVertexEnumRank = 6;

/// Vertices of {v ∈ cone(Δ) : ⟨v,δ⟩ <= 0 ∀δ ∈ Δ} ∩ V₁. Vertices are found in
/// Δ-coordinates (n − 1 active constraints plus Σx = 1, solved exactly in
/// rational mode), mapped to the ambient space and reduced to hull vertices.
template <Scalar T>
Polytope cone_K_vertices(const RootSystem<T>& sys, const TransverseForm& form) {
  const std::size_t n = sys.rank();
  if (n > kMaxVertexEnumRank) fail(ErrorCode::DimensionTooLarge, "vertex enumeration is limited to rank 6");
  const auto& g = sys.gram();
  // Constraint c < n: x_c >= 0; c >= n: (G x)_{c-n} <= 0.
  PointCloud cand;
  detail::for_each_combination(2 * n, n - 1, [&](const std::vector<std::size_t>& active) {
    Matrix<T> a(n, n);
    std::vector<T> b(n, T(0));
    for (std::size_t r = 0; r < active.size(); ++r) {
      std::size_t c = active[r];
      if (c < n)
        a(r, c) = T(1);
      else
        for (std::size_t j = 0; j < n; ++j) a(r, j) = g(c - n, j);
    }
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = T(1);
    b[n - 1] = T(1);
    auto x = solve<T>(a, b);
    if (!x) return;
    for (std::size_t i = 0; i < n; ++i)
      if (lt((*x)[i], T(0)) || gt(sys.pair_simple(i, *x), T(0))) return;
    Point v = sys.to_ambient_point(*x);
    double phi = form(v);
    if (phi <= kTauEq) return;
    for (auto& c : v) c /= phi;
    cand.points.push_back({std::move(v), "K", 0});
  });
  if (cand.empty()) fail(ErrorCode::EmptyK, "the imaginary cone is trivial (finite type)");
  Polytope k;
  k.vertices = cand.points.size() == 1 ? cand.coords() : extreme_points(std::move(cand)).coords();
  std::sort(k.vertices.begin(), k.vertices.end());

  const auto& b = sys.form_double();
  for (std::size_t i = 0; i < n; ++i) {
    Point nv(sys.ambient_dim(), 0.0);
    for (std::size_t r = 0; r < nv.size(); ++r)
      for (std::size_t c = 0; c < nv.size(); ++c) nv[r] += b(r, c) * sys.simple_point(i)[c];
    k.halfspaces.push_back({std::move(nv), 0.0});
  }
  // Facets of cone(Δ): maximal proper facial subsets.
  auto faces = facial_subsets(sys);
  for (const auto& f : faces) {
    if (f.indices.empty() || f.indices.size() == n) continue;
    bool maximal = true;
    for (const auto& g2 : faces) {
      if (g2.indices.size() <= f.indices.size() || g2.indices.size() == n) continue;
      if (std::includes(g2.indices.begin(), g2.indices.end(), f.indices.begin(), f.indices.end())) maximal = false;
    }
    if (!maximal) continue;
    auto h = face_functional<T>(sys, f.indices);
    Point nv = to_doubles<T>(*h);
    for (auto& x : nv) x = -x;
    k.halfspaces.push_back({std::move(nv), 0.0});
  }
  return k;
}

struct Tile {
  std::vector<std::size_t> word;
  std::vector<Point> vertices;  // w·K
};

struct ImaginaryOrbit {
  PointCloud cloud;  // all tile vertices, deduplicated
  std::vector<Tile> tiles;
};

/// w·K for every w of length <= L.
template <Scalar T>
ImaginaryOrbit imaginary_orbit(const RootSystem<T>& sys, const TransverseForm& form, int length) {
  auto k = cone_K_vertices(sys, form);
  ImaginaryOrbit out;
  for (const auto& el : enumerate_elements(sys, length)) {
    Tile t{el.word, {}};
    for (const auto& v : k.vertices) {
      try {
        t.vertices.push_back(act_word(sys, form, el.word, v));
      } catch (const Error&) {
        continue;
      }
    }
    for (const auto& v : t.vertices) out.cloud.points.push_back({v, "imaginary", int(el.word.size())});
    out.tiles.push_back(std::move(t));
  }
  canonicalize(out.cloud);
  out.cloud.params["word_length"] = length;
  return out;
}

/// Gen(Φ,Δ): facial I with Φ_I irreducible and of affine or hyperbolic type.
template <Scalar T>
std::vector<FacialSubset> generating_subsets(const RootSystem<T>& sys) {
  std::vector<FacialSubset> out;
  for (auto& f : facial_subsets(sys)) {
    if (f.indices.empty()) continue;
    auto rep = classify(sys, f.indices);
    if (!rep.irreducible) continue;
    if (rep.type == ComponentType::Affine || rep.hyperbolic) out.push_back(std::move(f));
  }
  return out;
}

/// Isotropic point of an irreducible affine subsystem: the normalized
/// positive kernel vector of its Gram matrix.
template <Scalar T>
Point affine_kernel_point(const RootSystem<T>& sys, const TransverseForm& form, std::span<const std::size_t> subset) {
  auto ker = null_space(sys.gram().principal(subset));
  if (ker.empty()) fail(ErrorCode::PreconditionFailed, "subsystem is not affine");
  Vec<T> full(sys.rank(), T(0));
  T sum(0);
  for (std::size_t k = 0; k < subset.size(); ++k) sum += ker[0][k];
  for (std::size_t k = 0; k < subset.size(); ++k) full[subset[k]] = lt(sum, T(0)) ? T(-ker[0][k]) : ker[0][k];
  return normalize(sys.to_ambient_point(full), form);
}

/// Sample of F₀ = W·(∪_{I ∈ Gen} Q̂_I): kernel points of affine I, sphere
/// samples of hyperbolic I, then their orbits under words of length <= L.
template <Scalar T>
PointCloud fractal_base_sample(const RootSystem<T>& sys, const TransverseForm& form, std::size_t samples, int length,
                               std::uint64_t seed = 0) {
  auto gen = generating_subsets(sys);
  if (gen.empty()) fail(ErrorCode::PreconditionFailed, "Gen is empty: the system is finite");
  std::vector<CloudPoint> base;
  for (const auto& f : gen) {
    auto rep = classify(sys, f.indices);
    if (rep.type == ComponentType::Affine) {
      base.push_back({affine_kernel_point(sys, form, f.indices), "affine-kernel", 0});
    } else {
      for (auto& p : sample_isotropic(sys, f.indices, form, samples, seed))
        base.push_back({std::move(p), "facial-sphere-sample", 0});
    }
  }
  PointCloud out;
  for (const auto& b : base) {
    auto orbit = orbit_points(sys, form, b.coords, length);
    for (auto& p : orbit.points) out.points.push_back({std::move(p.coords), p.depth == 0 ? b.tag : "orbit", p.depth});
  }
  canonicalize(out);
  out.params["samples_per_face"] = double(samples);
  out.params["word_length"] = length;
  out.params["seed"] = double(seed);
  return out;
}

template <Scalar T>
bool generic_universal(const RootSystem<T>& sys) {
  for (std::size_t i = 0; i < sys.rank(); ++i)
    for (std::size_t j = i + 1; j < sys.rank(); ++j)
      if (!lt(sys.gram()(i, j), T(-1))) return false;
  return sys.rank() >= 2;
}

/// conv(Δ̂) = Z ∪ ⋃ D_α with D_α = conv({α̂} ∪ {u_Q(α̂,β̂) : β ≠ α}).
struct Decomposition {
  std::vector<Point> simple;              // Δ̂
  std::vector<std::vector<Point>> regions;  // D_α, indexed like Δ
  std::vector<std::string> labels;
};

template <Scalar T>
Decomposition generic_decomposition(const RootSystem<T>& sys, const TransverseForm& form) {
  if (!generic_universal(sys))
    fail(ErrorCode::NotGenericUniversal, "all off-diagonal Gram entries must be < -1");
  Decomposition d;
  d.simple = normalized_simple_roots(sys, form);
  d.labels = sys.labels();
  const auto& b = sys.form_double();
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    std::vector<Point> region{d.simple[i]};
    for (std::size_t j = 0; j < sys.rank(); ++j)
      if (j != i) region.push_back(u_Q<double>(b, d.simple[i], d.simple[j]));
    d.regions.push_back(std::move(region));
  }
  return d;
}

struct RegionAssignment {
  std::optional<std::size_t> alpha;  // nullopt: the point is in Z
  std::size_t matches = 0;          // number of D_α containing the point
  std::string tag;                  // "Z" or "D_<label>"
};

inline RegionAssignment assign_region(const Decomposition& d, std::span<const double> point) {
  if (!lp::in_convex_hull(d.simple, point)) fail(ErrorCode::PreconditionFailed, "point is outside conv(Δ̂)");
  RegionAssignment r;
  for (std::size_t i = 0; i < d.regions.size(); ++i) {
    if (!lp::in_convex_hull(d.regions[i], point)) continue;
    if (!r.alpha) r.alpha = i;
    ++r.matches;
  }
  r.tag = r.alpha ? "D_" + d.labels[*r.alpha] : "Z";
  return r;
}

template <Scalar T>
RegionAssignment decomposition_assign(const RootSystem<T>& sys, const TransverseForm& form,
                                      std::span<const double> point) {
  return assign_region(generic_decomposition(sys, form), point);
}

}  // namespace rootgeom
