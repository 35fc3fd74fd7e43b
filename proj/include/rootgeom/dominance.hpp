#pragma once

// Dominance order on signed roots (algebraic and by visibility on the
// isotropic cone), elementary roots, fundamental dominances and covers, and
// the limit-point sets they generate.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <type_traits>
#include <vector>

#include "rootgeom/faces.hpp"

namespace rootgeom {

template <Scalar T>
struct SignedRoot {
  Vec<T> coords;  // of the underlying positive root
  bool negative = false;
  int depth = 1;

  Vec<T> value() const {
    Vec<T> v = coords;
    if (negative)
      for (auto& x : v) x = -x;
    return v;
  }
  SignedRoot operator-() const { return {coords, !negative, depth}; }
  bool operator==(const SignedRoot& o) const {
    if (negative != o.negative || coords.size() != o.coords.size()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!eq(coords[i], o.coords[i])) return false;
    return true;
  }
};

template <Scalar T>
SignedRoot<T> positive_root(const Root<T>& r) {
  return {r.coords, false, r.depth};
}

template <Scalar T>
SignedRoot<T> negative_root(const Root<T>& r) {
  return {r.coords, true, r.depth};
}

/// ρ ≼ γ.
template <Scalar T>
bool dominates(const RootSystem<T>& sys, const SignedRoot<T>& rho, const SignedRoot<T>& gamma) {
  if (!rho.negative && gamma.negative) return false;
  if (rho.negative && gamma.negative) return dominates(sys, -gamma, -rho);
  T p = sys.inner(rho.coords, gamma.coords);
  if (rho.negative != gamma.negative) p = -p;
  if (!ge(p, T(1))) return false;
  return rho.negative || rho.depth <= gamma.depth;
}

/// Recognizes ±β from Δ-coordinates by descending to a simple root along
/// reflections s_i with ⟨α_i,β⟩ > 0; the number of steps gives the depth.
template <Scalar T>
SignedRoot<T> signed_root_from(const RootSystem<T>& sys, Vec<T> coords) {
  const std::size_t n = sys.rank();
  if (coords.size() != n) fail(ErrorCode::NotARoot, "expected " + std::to_string(n) + " coordinates");
  bool nonneg = true, nonpos = true;
  for (const auto& x : coords) {
    nonneg = nonneg && ge(x, T(0));
    nonpos = nonpos && le(x, T(0));
  }
  if (nonneg == nonpos) fail(ErrorCode::NotARoot, "coordinates are neither nonnegative nor nonpositive");
  SignedRoot<T> out{coords, nonpos, 1};
  if (nonpos)
    for (auto& x : out.coords) x = -x;
  if (!eq(sys.inner(out.coords, out.coords), T(1))) fail(ErrorCode::NotARoot, "vector does not have norm 1");
  Vec<T> v = out.coords;
  auto simple_index = [&]() -> std::optional<std::size_t> {
    auto a = sys.to_ambient(v);
    for (std::size_t i = 0; i < n; ++i) {
      Vec<T> e(n, T(0));
      e[i] = T(1);
      auto b = sys.to_ambient(e);
      bool same = true;
      for (std::size_t k = 0; k < a.size() && same; ++k) same = eq(a[k], b[k]);
      if (same) return i;
    }
    return std::nullopt;
  };
  for (int step = 0; step < 4096; ++step) {
    if (simple_index()) return out;
    std::optional<std::size_t> down;
    for (std::size_t i = 0; i < n && !down; ++i)
      if (gt(sys.pair_simple(i, v), T(0))) down = i;
    if (!down) break;
    v = reflect<T>(sys, *down, v);
    ++out.depth;
  }
  fail(ErrorCode::NotARoot, "vector does not descend to a simple root");
}

/// An exact linear functional that is >= 1 on every simple root, used to
/// normalize roots without leaving the scalar type.
template <Scalar T>
Vec<T> exact_transverse(const RootSystem<T>& sys) {
  auto h = face_functional<T>(sys, std::span<const std::size_t>{});
  if (!h) fail(ErrorCode::PreconditionFailed, "simple roots admit no transverse functional");
  if constexpr (std::is_same_v<T, Rational>) {
    // clear denominators: a positive multiple is still >= 1 on Δ
    BigInt l = 1;
    for (const auto& x : *h) l = boost::multiprecision::lcm(l, BigInt(denominator(x)));
    for (auto& x : *h) x *= Rational(l);
  }
  return *h;
}

namespace detail {

// Both parameters t at which ρ̂ + t(γ̂ − ρ̂) is isotropic are >= 1, given
// φ(ρ)=fr, φ(γ)=fg and the three inner products. Works on the line through
// fg·ρ and fr·γ, which is fr·fg times the line through ρ̂, γ̂; the positive
// factor leaves every sign unchanged.
template <class I>
bool beyond_both_hits(const I& fr, const I& fg, const I& rho_rho, const I& rho_gamma, const I& gamma_gamma) {
  const I rr = fg * fg * rho_rho, rg = fr * fg * rho_gamma, gg = fr * fr * gamma_gamma;
  // q(t) = a t² + 2 b t + c
  const I c = rr, b = rg - rr, a = gg - I(2) * rg + rr;
  if (a == 0) {
    if (b == 0) return false;
    return b > 0 ? -c >= I(2) * b : -c <= I(2) * b;
  }
  const I disc = b * b - a * c;
  if (disc < 0) return false;
  // In s = t − 1: a s² + 2(a+b) s + gg, with gg ∝ ⟨γ̂,γ̂⟩.
  const I bs = a + b;
  if (disc == 0) return a > 0 ? bs <= 0 : bs >= 0;
  return (a > 0) ? (gg >= 0 && bs <= 0) : (gg <= 0 && bs >= 0);
}

}  // namespace detail

/// ρ ≼ γ for positive roots, decided by where L(ρ̂,γ̂) meets the isotropic
/// cone: both meeting parameters lie at or beyond γ̂ (t >= 1) on the line
/// t ↦ ρ̂ + t(γ̂ − ρ̂).
template <Scalar T>
class GeometricDominance {
 public:
  GeometricDominance(const RootSystem<T>& sys, Vec<T> transverse) : sys_(sys), transverse_(std::move(transverse)) {
    if constexpr (scalar_traits<T>::exact) {
      // Δ-coordinates throughout: ⟨x,y⟩ is the Gram form and φ(x) = Σ x_i φ(α_i).
      const std::size_t n = sys.rank();
      h_.resize(n);
      for (std::size_t i = 0; i < n; ++i) h_[i] = dot<T>(transverse_, sys.simple_vector(i));
      if constexpr (std::is_same_v<T, Rational>) {
        small_ = true;
        hi_.resize(n);
        gi_.resize(n * n);
        for (std::size_t i = 0; i < n && small_; ++i) {
          small_ = fits(h_[i], hi_[i]);
          for (std::size_t j = 0; j < n && small_; ++j) small_ = fits(sys.gram()(i, j), gi_[i * n + j]);
        }
      }
    }
  }

  bool operator()(std::span<const T> rho, std::span<const T> gamma) const {
    const auto& sys = sys_;
    if constexpr (scalar_traits<T>::exact) {
      if constexpr (std::is_same_v<T, Rational>)
        if (small_)
          if (auto r = integer_path(rho, gamma)) return *r;
      const T fr = dot<T>(h_, rho), fg = dot<T>(h_, gamma);
      return detail::beyond_both_hits<T>(fr, fg, sys.inner(rho, rho), sys.inner(rho, gamma),
                                         sys.inner(gamma, gamma));
    } else {
      const auto& transverse = transverse_;
      Vec<T> r = sys.to_ambient(rho), g = sys.to_ambient(gamma);
      const T fr = dot<T>(transverse, r), fg = dot<T>(transverse, g);
      for (auto& x : r) x /= fr;
      for (auto& x : g) x /= fg;
      Vec<T> d(r.size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = g[k] - r[k];
      const auto& form = sys.form();
      const T a = bilinear<T>(form, d, d), b = bilinear<T>(form, r, d), c = bilinear<T>(form, r, r);
      double scale = b * b + std::abs(a * c);
      double disc = b * b - a * c;
      if (std::abs(disc) <= 1e-9 * scale) {
        // Tangency: the algebraic criterion decides whether ρ̂,γ̂ lie on the
        // same side, the vertex of q says on which.
        if (sys.inner(rho, gamma) < 0) return false;
        double t0 = std::abs(a) > 1e-300 ? -b / a : 0.5;
        return t0 >= 0.5;
      }
      if (disc < 0) return false;
      double root = std::sqrt(disc);
      double t1 = (-b - root) / a, t2 = (-b + root) / a;
      return std::min(t1, t2) >= 1 - 1e-9;
    }
  }

 private:
  static constexpr long long kSmall = 1ll << 20;

  static bool fits(const Rational& x, long long& out) {
    return detail::small_integer(x, out) && out < kSmall && out > -kSmall;
  }

  std::optional<bool> integer_path(std::span<const Rational> rho, std::span<const Rational> gamma) const {
    const std::size_t n = hi_.size();
    thread_local std::vector<long long> r, g;
    r.resize(n);
    g.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!fits(rho[i], r[i]) || !fits(gamma[i], g[i])) return std::nullopt;
    __int128 fr = 0, fg = 0, rr = 0, rg = 0, gg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      fr += static_cast<__int128>(hi_[i]) * r[i];
      fg += static_cast<__int128>(hi_[i]) * g[i];
      __int128 br = 0, bg = 0;
      for (std::size_t j = 0; j < n; ++j) {
        br += static_cast<__int128>(gi_[i * n + j]) * r[j];
        bg += static_cast<__int128>(gi_[i * n + j]) * g[j];
      }
      rr += br * r[i];
      rg += bg * r[i];
      gg += bg * g[i];
    }
    for (auto x : {fr, fg, rr, rg, gg})
      if (x >= kSmall || x <= -kSmall) return std::nullopt;
    return detail::beyond_both_hits<__int128>(fr, fg, rr, rg, gg);
  }

  const RootSystem<T>& sys_;
  Vec<T> transverse_;
  Vec<T> h_;
  bool small_ = false;
  std::vector<long long> hi_, gi_;
};

/// ρ ≼ γ for positive roots; see GeometricDominance.
template <Scalar T>
bool dominates_geometric(const RootSystem<T>& sys, std::span<const T> rho, std::span<const T> gamma,
                         const Vec<T>& transverse) {
  return GeometricDominance<T>(sys, transverse)(rho, gamma);
}

template <Scalar T>
bool dominates_geometric(const RootSystem<T>& sys, std::span<const T> rho, std::span<const T> gamma) {
  return dominates_geometric(sys, rho, gamma, exact_transverse(sys));
}

/// Orders root coordinate vectors by coordinate sum, then lexicographically.
template <Scalar T>
void sort_roots(std::vector<Vec<T>>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Vec<T>& a, const Vec<T>& b) {
    T sa(0), sb(0);
    for (const auto& x : a) sa += x;
    for (const auto& x : b) sb += x;
    if (lt(sa, sb)) return true;
    if (lt(sb, sa)) return false;
    return lex_less(a, b);
  });
}

/// Σ: closure of Δ under short edges, s_α(β) for |⟨α,β⟩| < 1.
template <Scalar T>
std::vector<Vec<T>> elementary_roots(const RootSystem<T>& sys, int max_iter = 1000) {
  const std::size_t n = sys.rank();
  std::map<CoordKey<T>, bool> seen;
  std::vector<Vec<T>> all, frontier;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> e(n, T(0));
    e[i] = T(1);
    seen.emplace(CoordKey<T>(e), true);
    all.push_back(e);
    frontier.push_back(e);
  }
  int iter = 0;
  while (!frontier.empty()) {
    if (++iter > max_iter) fail(ErrorCode::NoConvergence, "elementary roots did not stabilize");
    std::vector<Vec<T>> next;
    for (const auto& beta : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        T p = sys.pair_simple(i, beta);
        if (is_zero(p) || !lt(abs_value(p), T(1))) continue;
        Vec<T> img = reflect<T>(sys, i, beta);
        CoordKey<T> key(img);
        if (seen.count(key)) continue;
        seen.emplace(key, true);
        all.push_back(img);
        next.push_back(std::move(img));
      }
    }
    frontier = std::move(next);
  }
  sort_roots(all);
  return all;
}

template <Scalar T>
struct DominancePair {
  SignedRoot<T> lower;
  SignedRoot<T> upper;
  bool fundamental = false;
  bool cover = false;  // no intermediate among signed roots of the enumeration depth
};

/// Dominance among all signed roots of an enumeration. Index k < R stands for
/// +roots[k], index R + k for −roots[k].
template <Scalar T>
struct DominanceTable {
  std::vector<SignedRoot<T>> signed_roots;
  std::vector<std::vector<std::uint64_t>> below;  // bit y of row x: x ≼ y, x ≠ y

  bool less(std::size_t x, std::size_t y) const { return (below[x][y / 64] >> (y % 64)) & 1u; }

  /// True when no z ≠ x,y has x ≼ z ≼ y.
  bool is_cover(std::size_t x, std::size_t y) const {
    if (!less(x, y)) return false;
    for (std::size_t z = 0; z < signed_roots.size(); ++z) {
      if (z == x || z == y || !less(x, z)) continue;
      if (less(z, y)) return false;
    }
    return true;
  }
};

template <Scalar T>
DominanceTable<T> dominance_table(const RootSystem<T>& sys, const RootEnumeration<T>& roots) {
  DominanceTable<T> tab;
  for (const auto& r : roots.roots) tab.signed_roots.push_back(positive_root(r));
  for (const auto& r : roots.roots) tab.signed_roots.push_back(negative_root(r));
  const std::size_t s = tab.signed_roots.size(), words = (s + 63) / 64;
  tab.below.assign(s, std::vector<std::uint64_t>(words, 0));
  for (std::size_t x = 0; x < s; ++x)
    for (std::size_t y = 0; y < s; ++y)
      if (x != y && dominates(sys, tab.signed_roots[x], tab.signed_roots[y])) tab.below[x][y / 64] |= 1ull << (y % 64);
  return tab;
}

template <Scalar T>
bool in_root_list(const std::vector<Vec<T>>& list, std::span<const T> c) {
  for (const auto& v : list) {
    bool same = true;
    for (std::size_t i = 0; i < v.size() && same; ++i) same = eq(v[i], c[i]);
    if (same) return true;
  }
  return false;
}

/// All fundamental dominances −ρ ≺_f β among roots of depth <= D. The cover
/// flag is only evaluated for pairs with ρ, β elementary, since other
/// fundamental dominances are never covers.
template <Scalar T>
std::vector<DominancePair<T>> fundamental_dominances(const RootSystem<T>& sys, int depth) {
  auto roots = enumerate_roots(sys, depth);
  auto sigma = elementary_roots(sys);
  auto tab = dominance_table(sys, roots);
  const std::size_t r = roots.roots.size(), n = sys.rank();
  std::vector<DominancePair<T>> out;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& rho = roots.roots[i].coords;
    for (std::size_t j = 0; j < r; ++j) {
      const auto& beta = roots.roots[j].coords;
      if (!le(sys.inner(rho, beta), T(-1))) continue;
      Vec<T> sum(n);
      for (std::size_t k = 0; k < n; ++k) sum[k] = rho[k] + beta[k];
      bool in_k = true;
      for (std::size_t k = 0; k < n && in_k; ++k) in_k = le(sys.pair_simple(k, sum), T(0));
      if (!in_k) continue;
      DominancePair<T> pair{negative_root(roots.roots[i]), positive_root(roots.roots[j]), true, false};
      if (in_root_list<T>(sigma, rho) && in_root_list<T>(sigma, beta)) pair.cover = tab.is_cover(r + i, j);
      out.push_back(std::move(pair));
    }
  }
  return out;
}

/// Every cover of dominance among signed roots of depth <= D.
template <Scalar T>
std::vector<DominancePair<T>> dominance_covers(const RootSystem<T>& sys, int depth) {
  auto roots = enumerate_roots(sys, depth);
  auto tab = dominance_table(sys, roots);
  std::vector<DominancePair<T>> out;
  const std::size_t s = tab.signed_roots.size();
  for (std::size_t x = 0; x < s; ++x)
    for (std::size_t y = 0; y < s; ++y)
      if (tab.is_cover(x, y)) out.push_back({tab.signed_roots[x], tab.signed_roots[y], false, true});
  return out;
}

/// L(ρ̂,γ̂) ∩ Q̂ for two roots given in Δ-coordinates (signs are irrelevant).
template <Scalar T>
std::vector<Point> line_limit_points(const RootSystem<T>& sys, const TransverseForm& form, std::span<const T> r1,
                                     std::span<const T> r2) {
  T p = sys.inner(r1, r2);
  T ap = abs_value(p);
  if (lt(ap, T(1))) return {};
  Point a = sys.to_ambient_point(r1), b = sys.to_ambient_point(r2);
  std::vector<Point> out;
  for (auto& v : dihedral_isotropic_vectors(a, b, to_double(p), eq(ap, T(1)))) {
    double phi = form(v);
    if (std::abs(phi) <= kTauEq) continue;
    for (auto& x : v) x /= phi;
    out.push_back(std::move(v));
  }
  return out;
}

struct LimitPointSets {
  PointCloud elementary;
  PointCloud fundamental;
  PointCloud covers;
  PointCloud fundamental_covers;
  bool fcov_in_elem = true;
  // Sample check of E_f^cov = E_f ∩ E^cov; measured, not known in general.
  bool fcov_equals_f_cap_cov = true;
};

template <Scalar T>
LimitPointSets limit_point_sets(const RootSystem<T>& sys, const TransverseForm& form, int depth) {
  LimitPointSets out;
  auto add = [&](PointCloud& cloud, std::span<const T> a, std::span<const T> b, const char* tag, int d) {
    for (auto& p : line_limit_points(sys, form, a, b)) cloud.points.push_back({std::move(p), tag, d});
  };
  auto sigma = elementary_roots(sys);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j) add(out.elementary, sigma[i], sigma[j], "elementary", 0);
  for (const auto& f : fundamental_dominances(sys, depth)) {
    int d = std::max(f.lower.depth, f.upper.depth);
    add(out.fundamental, f.lower.coords, f.upper.coords, "fundamental", d);
    if (f.cover) add(out.fundamental_covers, f.lower.coords, f.upper.coords, "fundamental-cover", d);
  }
  for (const auto& c : dominance_covers(sys, depth)) {
    if (c.lower.coords == c.upper.coords) continue;
    add(out.covers, c.lower.coords, c.upper.coords, "cover", std::max(c.lower.depth, c.upper.depth));
  }
  for (auto* c : {&out.elementary, &out.fundamental, &out.covers, &out.fundamental_covers}) {
    canonicalize(*c);
    c->params["depth"] = depth;
  }
  for (const auto& p : out.fundamental_covers.points) {
    bool found = false;
    for (const auto& q : out.elementary.points) found = found || euclidean_distance(p.coords, q.coords) <= 1e-9;
    out.fcov_in_elem = out.fcov_in_elem && found;
  }
  auto member = [](const PointCloud& c, std::span<const double> x) {
    for (const auto& q : c.points)
      if (euclidean_distance(x, q.coords) <= 1e-9) return true;
    return false;
  };
  PointCloud cap;
  for (const auto& p : out.fundamental.points)
    if (member(out.covers, p.coords)) cap.points.push_back(p);
  for (const auto& p : cap.points)
    if (!member(out.fundamental_covers, p.coords)) out.fcov_equals_f_cap_cov = false;
  for (const auto& p : out.fundamental_covers.points)
    if (!member(cap, p.coords)) out.fcov_equals_f_cap_cov = false;
  return out;
}

template <Scalar T>
struct FacialRestrictionReport {
  std::vector<std::size_t> subset;
  PointCloud e2_subsystem;   // E₂(Φ_I)
  PointCloud e2_restricted;  // E₂(Φ) on the face
  double e2_distance = 0;    // Hausdorff distance between the two (0 when both empty)
  bool e2_match = false;
  std::vector<Vec<T>> sigma_subsystem;   // Σ(Φ_I), in full Δ-coordinates
  std::vector<Vec<T>> sigma_restricted;  // Σ(Φ) ∩ Φ_I
  bool sigma_match = false;
  bool ok() const { return e2_match && sigma_match; }
};

template <Scalar T>
FacialRestrictionReport<T> facial_restriction_check(const RootSystem<T>& sys, const TransverseForm& form,
                                                    std::vector<std::size_t> subset, int depth,
                                                    double tol = kTauEq) {
  std::sort(subset.begin(), subset.end());
  auto h = face_functional<T>(sys, subset);
  if (!h) fail(ErrorCode::NotFacial, "conv of the chosen simple roots is not a face");
  Point hd = to_doubles<T>(*h);
  double hscale = 0;
  for (double x : hd) hscale = std::max(hscale, std::abs(x));
  auto on_face = [&](std::span<const double> x) {
    double v = 0;
    for (std::size_t k = 0; k < x.size(); ++k) v += hd[k] * x[k];
    return std::abs(v) <= 1e-9 * std::max(1.0, hscale);
  };

  FacialRestrictionReport<T> rep;
  rep.subset = subset;
  auto sub = sys.subsystem(subset);
  rep.e2_subsystem = dihedral_limit_roots(sub, form, depth);
  auto full = dihedral_limit_roots(sys, form, depth);
  for (const auto& p : full.points)
    if (on_face(p.coords)) rep.e2_restricted.points.push_back(p);
  rep.e2_restricted.params = full.params;
  if (rep.e2_subsystem.empty() || rep.e2_restricted.empty()) {
    rep.e2_match = rep.e2_subsystem.empty() && rep.e2_restricted.empty();
    rep.e2_distance = rep.e2_match ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    rep.e2_distance = hausdorff(rep.e2_subsystem, rep.e2_restricted);
    rep.e2_match = rep.e2_distance <= tol;
  }

  const std::size_t n = sys.rank();
  for (const auto& s : elementary_roots(sub)) {
    Vec<T> lifted(n, T(0));
    for (std::size_t k = 0; k < subset.size(); ++k) lifted[subset[k]] = s[k];
    rep.sigma_subsystem.push_back(std::move(lifted));
  }
  for (const auto& s : elementary_roots(sys))
    if (on_face(sys.to_ambient_point(s))) rep.sigma_restricted.push_back(s);
  sort_roots(rep.sigma_subsystem);
  sort_roots(rep.sigma_restricted);
  rep.sigma_match = rep.sigma_subsystem.size() == rep.sigma_restricted.size();
  for (std::size_t k = 0; k < rep.sigma_subsystem.size() && rep.sigma_match; ++k)
    rep.sigma_match = in_root_list<T>(rep.sigma_restricted, rep.sigma_subsystem[k]);
  return rep;
}

}  // namespace rootgeom
