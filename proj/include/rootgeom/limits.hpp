#pragma once

// Finite approximations of the limit-root set: dihedral limit roots, orbit
// clouds, the Hausdorff metric, and the empirical checks built on them
// (contraction, minimality, faithfulness).

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rootgeom/projective.hpp"

namespace rootgeom {

struct CloudPoint {
  Point coords;
  std::string tag;  // "dihedral-pair" | "orbit" | "facial-sphere-sample" | ...
  int depth = 0;
};

struct PointCloud {
  std::vector<CloudPoint> points;
  std::map<std::string, double> params;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  std::vector<Point> coords() const {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.coords);
    return out;
  }
};

/// Sorts lexicographically and drops points within `tol` of an earlier one.
inline void canonicalize(PointCloud& cloud, double tol = kTauEq) {
  auto& pts = cloud.points;
  std::stable_sort(pts.begin(), pts.end(), [](const CloudPoint& a, const CloudPoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
  });
  std::vector<CloudPoint> kept;
  for (auto& p : pts) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (p.coords[0] - it->coords[0] > tol) break;
      if (euclidean_distance(p.coords, it->coords) <= tol) {
        dup = true;
        it->depth = std::min(it->depth, p.depth);
        break;
      }
    }
    if (!dup) kept.push_back(std::move(p));
  }
  pts = std::move(kept);
}

/// Isotropic vectors of span(a, b) for unit roots a, b with p = ⟨a,b⟩,
/// |p| >= 1: a + λb with λ² + 2pλ + 1 = 0.
inline std::vector<Point> dihedral_isotropic_vectors(std::span<const double> a, std::span<const double> b,
                                                     double p, bool tangent) {
  std::vector<double> lambdas;
  if (tangent) {
    lambdas = {p > 0 ? -1.0 : 1.0};
  } else {
    double r = std::sqrt(p * p - 1);
    lambdas = {-p - r, -p + r};
  }
  std::vector<Point> out;
  for (double l : lambdas) {
    Point v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + l * b[k];
    out.push_back(std::move(v));
  }
  return out;
}

/// E₂ truncated at depth D: the isotropic points of every line L(α̂, β̂)
/// through two positive roots of depth <= D with |⟨α,β⟩| >= 1.
template <Scalar T>
PointCloud dihedral_limit_roots(const RootSystem<T>& sys, const TransverseForm& form, int depth,
                                const RootEnumeration<T>* roots = nullptr) {
  RootEnumeration<T> local;
  if (!roots) {
    local = enumerate_roots(sys, depth);
    roots = &local;
  }
  std::vector<const Root<T>*> rs;
  for (const auto& r : roots->roots)
    if (r.depth <= depth) rs.push_back(&r);
  std::vector<Vec<T>> gc;
  std::vector<Point> amb;
  for (auto* r : rs) {
    gc.push_back(mat_vec<T>(sys.gram(), r->coords));
    amb.push_back(sys.to_ambient_point(r->coords));
  }
  PointCloud cloud;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      T p = dot<T>(gc[i], rs[j]->coords);
      T ap = abs_value(p);
      if (lt(ap, T(1))) continue;
      bool tangent = eq(ap, T(1));
      for (auto& v : dihedral_isotropic_vectors(amb[i], amb[j], to_double(p), tangent)) {
        double phi = form(v);
        if (std::abs(phi) <= kTauEq) continue;
        for (auto& x : v) x /= phi;
        cloud.points.push_back({std::move(v), "dihedral-pair", std::max(rs[i]->depth, rs[j]->depth)});
      }
    }
  }
  canonicalize(cloud);
  cloud.params["depth"] = depth;
  return cloud;
}

/// {w·x : ℓ(w) <= L}, explored breadth-first on points. Words whose image
/// leaves the domain (φ <= 0) are skipped and counted in params["leaves_domain"].
template <Scalar T>
PointCloud orbit_points(const RootSystem<T>& sys, const TransverseForm& form, std::span<const double> x,
                        int length) {
  auto key = [](const Point& p) {
    std::vector<long long> k;
    for (double c : p) k.push_back(std::llround(c * 1e8));
    return k;
  };
  PointCloud cloud;
  Point start(x.begin(), x.end());
  std::map<std::vector<long long>, bool> seen{{key(start), true}};
  cloud.points.push_back({start, "orbit", 0});
  std::vector<Point> frontier{start};
  double skipped = 0;
  for (int len = 1; len <= length; ++len) {
    std::vector<Point> next;
    for (const auto& p : frontier) {
      for (std::size_t i = 0; i < sys.rank(); ++i) {
        Point v = reflect_point(sys, i, p);
        double phi = form(v);
        if (phi <= kTauEq) {
          ++skipped;
          continue;
        }
        for (auto& c : v) c /= phi;
        auto k = key(v);
        if (seen.count(k)) continue;
        seen.emplace(std::move(k), true);
        cloud.points.push_back({v, "orbit", len});
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  canonicalize(cloud);
  cloud.params["word_length"] = length;
  cloud.params["leaves_domain"] = skipped;
  return cloud;
}

/// sup_{a∈A} min_{b∈B} ‖a − b‖.
inline double directed_hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyCloud, "Hausdorff distance of an empty set");
  double worst = 0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) {
      best = std::min(best, euclidean_distance(p, q));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(std::span<const Point> a, std::span<const Point> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

inline double hausdorff(const PointCloud& a, const PointCloud& b) { return hausdorff(a.coords(), b.coords()); }

/// Roots α_i, s_i(α_j), s_i s_j(α_i), ... whose normalizations run along
/// L(α̂_i, α̂_j) towards u_Q(α̂_i, α̂_j).
template <Scalar T>
std::vector<Vec<T>> dihedral_chain(const RootSystem<T>& sys, std::size_t i, std::size_t j, std::size_t count) {
  std::vector<Vec<T>> out;
  std::vector<std::size_t> word;
  for (std::size_t k = 0; k < count; ++k) {
    Vec<T> base(sys.rank(), T(0));
    base[k % 2 == 0 ? i : j] = T(1);
    out.push_back(apply_word<T>(sys, word, base));
    word.push_back(k % 2 == 0 ? i : j);
  }
  return out;
}

/// ‖s_{α_n}·z − x‖ along a root sequence whose normalizations tend to x.
template <Scalar T>
std::vector<double> contraction_check(const RootSystem<T>& sys, const TransverseForm& form,
                                      std::span<const double> x, std::span<const double> z,
                                      const std::vector<Vec<T>>& roots) {
  const auto& b = sys.form_double();
  double xz = bilinear<double>(b, x, z);
  if (std::abs(xz) <= kTauEq) fail(ErrorCode::OnFace, "z lies on the face x^⊥ of the imaginary cone");
  if (xz > 0) fail(ErrorCode::PreconditionFailed, "⟨x,z⟩ must be negative");
  std::vector<double> out;
  for (const auto& r : roots) {
    Point a = sys.to_ambient_point(r);
    double p = bilinear<double>(b, a, z);
    Point v(z.begin(), z.end());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= 2 * p * a[k];
    out.push_back(euclidean_distance(normalize(v, form), x));
  }
  return out;
}

template <Scalar T>
void require_irreducible_indefinite(const RootSystem<T>& sys) {
  if (irreducible_components(sys.gram()).size() != 1)
    fail(ErrorCode::PreconditionFailed, "system must be irreducible");
  if (signature_of(sys.gram()).negative == 0) fail(ErrorCode::NotIndefinite, "system is not of indefinite type");
}

/// How well one orbit covers the E₂ sample: sup over E₂(D) of the distance
/// to orbit_points(x, L).
template <Scalar T>
double minimality_gap(const RootSystem<T>& sys, const TransverseForm& form, std::span<const double> x,
                      int length, int depth) {
  require_irreducible_indefinite(sys);
  auto e2 = dihedral_limit_roots(sys, form, depth);
  auto orbit = orbit_points(sys, form, x, length);
  return directed_hausdorff(e2.coords(), orbit.coords());
}

inline constexpr double kTauMove = 1e-6;

struct FaithfulnessEntry {
  std::vector<std::size_t> word;
  std::size_t witness = 0;  // index into the E₂ cloud
  double displacement = 0;
};

struct FaithfulnessReport {
  std::vector<FaithfulnessEntry> witnessed;
  std::vector<std::vector<std::size_t>> unfalsified;
  std::size_t e2_size = 0;
  bool ok() const { return unfalsified.empty(); }
};

/// For every nontrivial element of length <= L, a point of E₂(D) it moves by
/// more than kTauMove.
template <Scalar T>
FaithfulnessReport faithfulness_check(const RootSystem<T>& sys, const TransverseForm& form, int length,
                                      int depth) {
  require_irreducible_indefinite(sys);
  if (sys.rank() < 3) fail(ErrorCode::PreconditionFailed, "faithfulness needs rank >= 3");
  auto e2 = dihedral_limit_roots(sys, form, depth);
  FaithfulnessReport rep;
  rep.e2_size = e2.size();
  for (const auto& el : enumerate_elements(sys, length)) {
    if (el.word.empty()) continue;
    bool found = false;
    for (std::size_t k = 0; k < e2.size() && !found; ++k) {
      Point img;
      try {
        img = act_word(sys, form, el.word, e2.points[k].coords);
      } catch (const Error&) {
        continue;
      }
      double d = euclidean_distance(img, e2.points[k].coords);
      if (d > kTauMove) {
        rep.witnessed.push_back({el.word, k, d});
        found = true;
      }
    }
    if (!found) rep.unfalsified.push_back(el.word);
  }
  return rep;
}

}  // namespace rootgeom
