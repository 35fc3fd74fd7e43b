#pragma once

// Transverse hyperplanes V₁ = {φ = 1}, normalization v ↦ v/φ(v), the
// projective W-action on V₁ and visibility of isotropic points.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rootgeom/root_system.hpp"

namespace rootgeom {

enum class FormMode { Sum, Sphere, Custom };

inline std::string to_string(FormMode m) {
  switch (m) {
    case FormMode::Sum: return "sum";
    case FormMode::Sphere: return "sphere";
    case FormMode::Custom: return "custom";
  }
  return "sum";
}

struct TransverseForm {
  Point coeffs;  // over ambient coordinates
  FormMode mode = FormMode::Sum;

  double operator()(std::span<const double> v) const {
    double acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * v[i];
    return acc;
  }
};

/// True when the ambient form has signature (n−1, 1) with no kernel.
template <Scalar T>
bool lorentzian(const Matrix<T>& form) {
  auto s = signature_of(form);
  return s.negative == 1 && s.zero == 0;
}

/// e with ⟨e,e⟩ = −1 along the Perron weight of the Gram restricted to
/// `subset`, expressed in ambient coordinates.
template <Scalar T>
Point perron_axis(const RootSystem<T>& sys, std::span<const std::size_t> subset) {
  auto z = perron_weight(sys.gram().principal(subset));
  Point v(sys.ambient_dim(), 0.0);
  for (std::size_t k = 0; k < subset.size(); ++k)
    for (std::size_t a = 0; a < v.size(); ++a) v[a] += z[k] * sys.simple_point(subset[k])[a];
  double n2 = bilinear<double>(sys.form_double(), v, v);
  if (n2 >= -kTauEq) fail(ErrorCode::NotWeaklyHyperbolic, "Perron vector is not timelike");
  for (auto& x : v) x /= std::sqrt(-n2);
  return v;
}

template <Scalar T>
TransverseForm transverse_form(const RootSystem<T>& sys, FormMode mode, Point custom = {}) {
  TransverseForm f;
  f.mode = mode;
  const std::size_t m = sys.ambient_dim();
  switch (mode) {
    case FormMode::Sum:
      f.coeffs.assign(m, 1.0);
      break;
    case FormMode::Sphere: {
      if (irreducible_components(sys.gram()).size() != 1 || !lorentzian(sys.form()))
        fail(ErrorCode::NotWeaklyHyperbolic, "sphere form needs an irreducible weakly hyperbolic system");
      std::vector<std::size_t> all(sys.rank());
      std::iota(all.begin(), all.end(), 0);
      Point e = perron_axis(sys, all);
      // φ(v) = −⟨v, e⟩
      Point be(m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) be[i] -= sys.form_double()(i, j) * e[j];
      f.coeffs = be;
      break;
    }
    case FormMode::Custom:
      if (custom.size() != m) fail(ErrorCode::SchemaError, "custom transverse form has wrong length");
      f.coeffs = std::move(custom);
      break;
  }
  for (std::size_t i = 0; i < sys.rank(); ++i)
    if (f(sys.simple_point(i)) <= kTauEq)
      fail(ErrorCode::PreconditionFailed, "transverse form is not positive on simple root " + std::to_string(i));
  return f;
}

inline Point normalize(std::span<const double> v, const TransverseForm& form) {
  double phi = form(v);
  if (std::abs(phi) <= kTauEq) fail(ErrorCode::OnDirectionHyperplane, "φ(v) vanishes");
  Point out(v.begin(), v.end());
  for (auto& x : out) x /= phi;
  return out;
}

template <Scalar T>
Point normalized_root(const RootSystem<T>& sys, const TransverseForm& form, std::span<const T> coords) {
  // Rescale before leaving the scalar type so that huge exact coordinates
  // do not overflow binary64.
  Vec<T> a = sys.to_ambient(coords);
  T big(0);
  for (const auto& x : a) big = std::max(big, abs_value(x));
  if (big > T(1))
    for (auto& x : a) x /= big;
  return normalize(to_doubles<T>(a), form);
}

template <Scalar T>
std::vector<Point> normalized_simple_roots(const RootSystem<T>& sys, const TransverseForm& form) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < sys.rank(); ++i) out.push_back(normalize(sys.simple_point(i), form));
  return out;
}

/// s_i applied to an ambient vector.
template <Scalar T>
Point reflect_point(const RootSystem<T>& sys, std::size_t i, std::span<const double> v) {
  const Point& a = sys.simple_point(i);
  double p = bilinear<double>(sys.form_double(), a, v);
  Point out(v.begin(), v.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= 2 * p * a[k];
  return out;
}

/// w·x = normalize(w(x)) for w = s_{word[0]} ... s_{word[k-1]}.
template <Scalar T>
Point act_word(const RootSystem<T>& sys, const TransverseForm& form, std::span<const std::size_t> word,
               std::span<const double> x) {
  Point v(x.begin(), x.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_point(sys, *it, v);
  double phi = form(v);
  if (phi <= kTauEq) fail(ErrorCode::LeavesDomain, "φ(w(x)) <= 0");
  for (auto& c : v) c /= phi;
  return v;
}

/// [v, x] meets the isotropic cone only at x (x assumed isotropic).
template <Scalar T>
bool visible(const RootSystem<T>& sys, std::span<const double> x, std::span<const double> v) {
  if (euclidean_distance(x, v) <= kTauEq) return true;
  auto hit = line_quadric<double>(sys.form_double(), v, x);
  if (hit.kind != HitKind::Pair) return true;
  // One root sits at t = 1 (x itself); the other must not fall in [0, 1).
  double other = std::abs(hit.t_min - 1) < std::abs(hit.t_max - 1) ? hit.t_max : hit.t_min;
  if (std::abs(other - 1) <= 1e-7) return true;
  return other < -kTauEq || other > 1;
}

/// Points of Q̂ restricted to span(Δ_I), sampled on the sphere
/// {e + h : h ⊥ e, ⟨h,h⟩ = 1} around the Perron axis e of the subsystem and
/// renormalized by `form`. A Lorentzian plane yields its two isotropic points;
/// a 3-dimensional span yields `count` equally spaced points; higher
/// dimensions draw `count` seeded Gaussian directions.
template <Scalar T>
std::vector<Point> sample_isotropic(const RootSystem<T>& sys, std::span<const std::size_t> subset,
                                    const TransverseForm& form, std::size_t count, std::uint64_t seed = 0) {
  const auto& b = sys.form_double();
  Point e = perron_axis(sys, subset);
  // B-orthonormal basis of e^⊥ ∩ span(Δ_I)
  std::vector<Point> basis;
  for (auto i : subset) {
    Point u = sys.simple_point(i);
    double ue = bilinear<double>(b, u, e);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += ue * e[k];
    for (const auto& h : basis) {
      double uh = bilinear<double>(b, u, h);
      for (std::size_t k = 0; k < u.size(); ++k) u[k] -= uh * h[k];
    }
    double n2 = bilinear<double>(b, u, u);
    if (n2 < -1e-9) fail(ErrorCode::NotWeaklyHyperbolic, "form is not Lorentzian on the span");
    if (n2 <= 1e-9) continue;
    for (auto& x : u) x /= std::sqrt(n2);
    basis.push_back(std::move(u));
  }
  std::vector<std::vector<double>> dirs;
  const std::size_t d = basis.size();
  if (d == 0) return {};
  if (d == 1) {
    dirs = {{1.0}, {-1.0}};
  } else if (d == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      double th = 2 * std::numbers::pi * double(k) / double(count);
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<double> c(d);
      double n = 0;
      for (auto& x : c) {
        x = g(rng);
        n += x * x;
      }
      for (auto& x : c) x /= std::sqrt(n);
      dirs.push_back(std::move(c));
    }
  }
  std::vector<Point> out;
  for (const auto& c : dirs) {
    Point v = e;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t a = 0; a < v.size(); ++a) v[a] += c[k] * basis[k][a];
    double phi = form(v);
    if (phi <= kTauEq) continue;
    for (auto& x : v) x /= phi;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace rootgeom
