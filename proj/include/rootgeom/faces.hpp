#pragma once

// Faces of the polytope conv(Δ̂) and hull-vertex extraction for point clouds.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "rootgeom/limits.hpp"
#include "rootgeom/lp.hpp"

namespace rootgeom {

/// A linear functional h on the ambient space with h(α_i) = 0 for i ∈ I and
/// h(α_j) >= 1 otherwise, if one exists. Such an h certifies that conv(Δ̂_I)
/// is a face of conv(Δ̂); a point x of conv(Δ̂) lies on that face iff h(x) = 0.
template <Scalar T>
std::optional<Vec<T>> face_functional(const RootSystem<T>& sys, std::span<const std::size_t> subset) {
  const std::size_t n = sys.rank(), m = sys.ambient_dim();
  std::vector<bool> in(n, false);
  for (auto i : subset) in[i] = true;
  const std::size_t outside = n - subset.size();
  // variables: h+ (m), h- (m), slack (outside)
  Matrix<T> a(n, 2 * m + outside);
  std::vector<T> b(n, T(0));
  std::size_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = sys.simple_vector(i);
    for (std::size_t k = 0; k < m; ++k) {
      a(i, k) = v[k];
      a(i, m + k) = -v[k];
    }
    if (!in[i]) {
      a(i, 2 * m + s++) = T(-1);
      b[i] = T(1);
    }
  }
  std::vector<T> zero(a.cols(), T(0));
  auto res = lp::maximize<T>(a, b, zero);
  if (res.status == lp::Status::Infeasible) return std::nullopt;
  Vec<T> h(m);
  for (std::size_t k = 0; k < m; ++k) h[k] = res.x[k] - res.x[m + k];
  return h;
}

template <Scalar T>
bool is_facial(const RootSystem<T>& sys, std::span<const std::size_t> subset) {
  return face_functional(sys, subset).has_value();
}

struct FacialSubset {
  std::vector<std::size_t> indices;
  std::size_t dimension = 0;  // affine dimension of conv(Δ̂_I); the empty face has 0
};

/// Every I ⊆ Δ for which conv(Δ̂_I) is a face, ordered by size then
/// lexicographically. The empty set counts as facial.
template <Scalar T>
std::vector<FacialSubset> facial_subsets(const RootSystem<T>& sys) {
  const std::size_t n = sys.rank();
  if (n > 16) fail(ErrorCode::DimensionTooLarge, "facial subset enumeration is limited to rank 16");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<FacialSubset> out;
  for (auto& s : subsets) {
    if (!is_facial(sys, s)) continue;
    std::size_t dim = 0;
    if (!s.empty()) {
      Matrix<T> vs(s.size(), sys.ambient_dim());
      for (std::size_t r = 0; r < s.size(); ++r)
        for (std::size_t k = 0; k < sys.ambient_dim(); ++k) vs(r, k) = sys.simple_vector(s[r])[k];
      dim = rank_of(vs) - 1;
    }
    out.push_back({std::move(s), dim});
  }
  return out;
}

namespace detail {

/// Orthonormal directions spanning the affine hull of `pts` around pts[0].
inline std::vector<Point> affine_directions(std::span<const Point> pts, double tol) {
  std::vector<Point> dirs;
  for (const auto& p : pts) {
    Point v(p.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] - pts[0][k];
    for (const auto& d : dirs) {
      double c = dot<double>(v, d);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * d[k];
    }
    double n = std::sqrt(dot<double>(v, v));
    if (n <= tol) continue;
    for (auto& x : v) x /= n;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

/// Hull vertices of planar points (monotone chain); a point within `tol` of
/// the segment joining its hull neighbours is dropped.
inline std::vector<bool> planar_hull_mask(const std::vector<std::array<double, 2>>& q, double tol) {
  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });
  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    double ux = q[a][0] - q[o][0], uy = q[a][1] - q[o][1];
    double vx = q[b][0] - q[o][0], vy = q[b][1] - q[o][1];
    double len = std::hypot(vx, vy);
    return (ux * vy - uy * vx) / std::max(len, 1e-300);  // signed distance of a from line ob
  };
  std::vector<std::size_t> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (std::size_t idx : order) {
      while (hull.size() >= base + 2 && turn(hull[hull.size() - 2], hull.back(), idx) <= tol) hull.pop_back();
      hull.push_back(idx);
    }
    hull.pop_back();
    std::reverse(order.begin(), order.end());
  }
  std::vector<bool> keep(q.size(), false);
  for (auto h : hull) keep[h] = true;
  return keep;
}

}  // namespace detail

/// Points not in the convex hull of the remaining points. Near-duplicates
/// are merged first. Clouds spanning at most a plane are handled directly,
/// others by one LP per point.
inline PointCloud extreme_points(PointCloud cloud, double tol = kTauHull) {
  if (cloud.empty()) fail(ErrorCode::EmptyCloud, "extreme points of an empty cloud");
  canonicalize(cloud);
  auto pts = cloud.coords();
  PointCloud out;
  out.params = cloud.params;
  auto dirs = detail::affine_directions(pts, tol);
  std::vector<bool> keep(pts.size(), false);
  if (dirs.empty()) {
    keep[0] = true;
  } else if (dirs.size() <= 2) {
    std::vector<std::array<double, 2>> q;
    for (const auto& p : pts) {
      Point v(p.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] - pts[0][k];
      q.push_back({dot<double>(v, dirs[0]), dirs.size() > 1 ? dot<double>(v, dirs[1]) : 0.0});
    }
    keep = detail::planar_hull_mask(q, tol);
  } else {
    std::vector<Point> others;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      others.clear();
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != k) others.push_back(pts[j]);
      keep[k] = !lp::in_convex_hull(others, pts[k], tol);
    }
  }
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (keep[k]) out.points.push_back(cloud.points[k]);
  return out;
}

inline std::vector<Point> extreme_points(std::span<const Point> pts, double tol = kTauHull) {
  PointCloud c;
  for (const auto& p : pts) c.points.push_back({p, "", 0});
  return extreme_points(std::move(c), tol).coords();
}

/// Hausdorff distance of conv(a) and conv(b). The farthest point of one
/// polytope from the other is a vertex, so only the given points are scanned.
inline double hull_hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyCloud, "Hausdorff distance of an empty set");
  double worst = 0;
  for (const auto& p : a) worst = std::max(worst, lp::hull_distance(b, p));
  for (const auto& p : b) worst = std::max(worst, lp::hull_distance(a, p));
  return worst;
}

}  // namespace rootgeom
