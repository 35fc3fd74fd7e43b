#pragma once

// Deterministic SVG pictures of V₁: conv(Δ̂), Q̂, normalized roots, K and its
// translates, and limit clouds. Ambient dimension 3 is drawn in an isometric
// chart of the plane V₁ (barycentric for a basis); dimension 4 goes through a
// fixed orthographic camera.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rootgeom/cone_faces.hpp"

namespace rootgeom {

struct RenderLayers {
  bool simplex = false;                    // edges of conv(Δ̂)
  bool conic = false;                      // Q̂
  std::vector<std::pair<Point, int>> roots;  // normalized root, depth
  std::vector<std::vector<Point>> polygons;  // K first, then w·K
  std::vector<PointCloud> clouds;
};

struct RenderOptions {
  int width = 600;
  int height = 600;
  std::size_t conic_segments = 128;
  double yaw = 0.6;    // rank-4 camera, radians
  double pitch = 0.45;
};

namespace detail {

inline std::string fmt4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  return s == "-0.0000" ? "0.0000" : s;
}

inline const char* depth_color(int depth) {
  static const char* palette[] = {"#08306b", "#08519c", "#2171b5", "#4292c6", "#6baed6",
                                  "#9ecae1", "#41ab5d", "#238b45", "#006d2c"};
  return palette[std::clamp(depth - 1, 0, 8)];
}

inline const char* cloud_color(std::size_t k) {
  static const char* palette[] = {"#111111", "#d95f02", "#7570b3", "#e7298a", "#66a61e"};
  return palette[k % 5];
}

/// Convex hull of planar points, counter-clockwise (monotone chain).
inline std::vector<std::array<double, 2>> hull2(std::vector<std::array<double, 2>> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 1e-12) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 1e-12) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// Maps points of V₁ to the drawing plane.
class Projector {
 public:
  template <Scalar T>
  Projector(const RootSystem<T>& sys, const TransverseForm& form, const RenderOptions& options) : options_(options) {
    const std::size_t m = sys.ambient_dim();
    if (m != 3 && m != 4) fail(ErrorCode::UnsupportedRank, "rendering needs an ambient space of dimension 3 or 4");
    auto simple = normalized_simple_roots(sys, form);
    origin_.assign(m, 0.0);
    for (const auto& s : simple)
      for (std::size_t k = 0; k < m; ++k) origin_[k] += s[k] / double(simple.size());
    for (const auto& s : simple) {
      Point u(m);
      for (std::size_t k = 0; k < m; ++k) u[k] = s[k] - origin_[k];
      for (const auto& b : basis_) {
        double d = 0;
        for (std::size_t k = 0; k < m; ++k) d += u[k] * b[k];
        for (std::size_t k = 0; k < m; ++k) u[k] -= d * b[k];
      }
      double n = 0;
      for (double x : u) n += x * x;
      if (n <= 1e-18) continue;
      for (auto& x : u) x /= std::sqrt(n);
      basis_.push_back(std::move(u));
      if (basis_.size() == m - 1) break;
    }
    double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
    for (const auto& s : simple) {
      auto p = plane(s);
      for (int a = 0; a < 2; ++a) {
        lo[a] = std::min(lo[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    }
    double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
    scale_ = 0.84 * std::min(options.width, options.height) / span;
    center_ = {(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2};
  }

  /// Coordinates in the drawing plane before scaling.
  std::array<double, 2> plane(std::span<const double> v) const {
    double c[3] = {0, 0, 0};
    for (std::size_t b = 0; b < basis_.size(); ++b)
      for (std::size_t k = 0; k < v.size(); ++k) c[b] += (v[k] - origin_[k]) * basis_[b][k];
    if (basis_.size() < 3) return {c[0], c[1]};
    double u = c[0] * std::cos(options_.yaw) - c[1] * std::sin(options_.yaw);
    double w = c[0] * std::sin(options_.yaw) + c[1] * std::cos(options_.yaw);
    return {u, c[2] * std::cos(options_.pitch) - w * std::sin(options_.pitch)};
  }

  std::array<double, 2> operator()(std::span<const double> v) const {
    auto p = plane(v);
    return {options_.width / 2.0 + scale_ * (p[0] - center_[0]), options_.height / 2.0 - scale_ * (p[1] - center_[1])};
  }

  std::array<double, 2> screen_origin() const { return (*this)(origin_); }

 private:
  RenderOptions options_;
  Point origin_;
  std::vector<Point> basis_;
  double scale_ = 1;
  std::array<double, 2> center_{};
};

template <Scalar T>
std::string render_svg(const RootSystem<T>& sys, const TransverseForm& form, const RenderLayers& layers,
                       const RenderOptions& options = {}) {
  using detail::fmt4;
  Projector proj(sys, form, options);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
    << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height << "\" fill=\"#ffffff\"/>\n";
  auto o = proj.screen_origin();
  s << "<g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n"
    << "<line x1=\"0.0000\" y1=\"" << fmt4(o[1]) << "\" x2=\"" << fmt4(options.width) << "\" y2=\"" << fmt4(o[1])
    << "\"/>\n"
    << "<line x1=\"" << fmt4(o[0]) << "\" y1=\"0.0000\" x2=\"" << fmt4(o[0]) << "\" y2=\"" << fmt4(options.height)
    << "\"/>\n</g>\n";
  auto points_attr = [&](const std::vector<std::array<double, 2>>& pts) {
    std::string a;
    for (const auto& p : pts) a += (a.empty() ? "" : " ") + fmt4(p[0]) + "," + fmt4(p[1]);
    return a;
  };

  if (!layers.polygons.empty()) {
    s << "<g id=\"tiles\" stroke=\"#555555\" stroke-width=\"0.4\">\n";
    for (std::size_t k = 0; k < layers.polygons.size(); ++k) {
      std::vector<std::array<double, 2>> pts;
      for (const auto& v : layers.polygons[k]) pts.push_back(proj(v));
      pts = detail::hull2(std::move(pts));
      s << "<polygon points=\"" << points_attr(pts) << "\" fill=\"" << (k == 0 ? "#fdae6b" : "#fee6ce")
        << "\" fill-opacity=\"0.7\"/>\n";
    }
    s << "</g>\n";
  }
  if (layers.simplex) {
    auto simple = normalized_simple_roots(sys, form);
    s << "<g id=\"simplex\" stroke=\"#000000\" stroke-width=\"1\">\n";
    for (const auto& f : facial_subsets(sys)) {
      if (f.indices.size() != 2) continue;
      auto a = proj(simple[f.indices[0]]), b = proj(simple[f.indices[1]]);
      s << "<line x1=\"" << fmt4(a[0]) << "\" y1=\"" << fmt4(a[1]) << "\" x2=\"" << fmt4(b[0]) << "\" y2=\""
        << fmt4(b[1]) << "\"/>\n";
    }
    s << "</g>\n";
  }
  if (layers.conic) {
    std::vector<std::size_t> all(sys.rank());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Point> q;
    try {
      q = sample_isotropic(sys, all, form, options.conic_segments);
    } catch (const Error&) {
      q.clear();  // no Lorentzian span: nothing to draw
    }
    s << "<g id=\"conic\" stroke=\"#d7301f\" fill=\"none\" stroke-width=\"1\">\n";
    if (sys.ambient_dim() == 3 && q.size() > 2) {
      std::vector<std::array<double, 2>> pts;
      for (const auto& v : q) pts.push_back(proj(v));
      s << (q.size() == options.conic_segments ? "<polygon" : "<polyline") << " points=\"" << points_attr(pts)
        << "\"/>\n";
    } else {
      for (const auto& v : q) {
        auto p = proj(v);
        s << "<circle cx=\"" << fmt4(p[0]) << "\" cy=\"" << fmt4(p[1]) << "\" r=\"0.8\"/>\n";
      }
    }
    s << "</g>\n";
  }
  if (!layers.roots.empty()) {
    s << "<g id=\"roots\" stroke=\"none\">\n";
    for (const auto& [v, d] : layers.roots) {
      auto p = proj(v);
      s << "<circle cx=\"" << fmt4(p[0]) << "\" cy=\"" << fmt4(p[1]) << "\" r=\"" << fmt4(std::max(1.0, 3.5 - 0.3 * d))
        << "\" fill=\"" << detail::depth_color(d) << "\"/>\n";
    }
    s << "</g>\n";
  }
  for (std::size_t k = 0; k < layers.clouds.size(); ++k) {
    s << "<g class=\"cloud\" fill=\"" << detail::cloud_color(k) << "\" stroke=\"none\">\n";
    for (const auto& pt : layers.clouds[k].points) {
      auto p = proj(pt.coords);
      s << "<circle cx=\"" << fmt4(p[0]) << "\" cy=\"" << fmt4(p[1]) << "\" r=\"1.5\"/>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace rootgeom
