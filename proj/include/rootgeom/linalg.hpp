#pragma once

// Dense linear algebra at desk scale (dimension <= ~10): the bilinear form,
// Jacobi eigenvalues, signatures, the Perron weight vector of I - A, exact
// elimination, and line/quadric intersection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "rootgeom/errors.hpp"
#include "rootgeom/scalar.hpp"

namespace rootgeom {

template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) fail(ErrorCode::SchemaError, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<U, double>)
          out(i, j) = to_double((*this)(i, j));
        else
          out(i, j) = U((*this)(i, j));
      }
    return out;
  }

  /// Principal submatrix on the given index set.
  Matrix principal(std::span<const std::size_t> idx) const {
    Matrix out(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = (*this)(idx[a], idx[b]);
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Symmetric matrix of pairwise products of simple roots.
template <Scalar T>
using GramMatrix = Matrix<T>;

template <Scalar T>
using Vec = std::vector<T>;

using Point = std::vector<double>;

template <Scalar T>
std::vector<T> mat_vec(const Matrix<T>& m, std::span<const T> v) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

namespace detail {

// Integer-valued rationals below 2^31 in magnitude: sums of triple products
// then fit an __int128 and skip the gcd normalization on every step.
inline bool small_integer(const Rational& x, long long& out) {
  const auto& q = x.backend().data();  // by reference: numerator() copies
  if (q.denominator() != 1) return false;
  const auto& n = q.numerator();
  if (n >= (1ll << 31) || n <= -(1ll << 31)) return false;
  out = n.template convert_to<long long>();
  return true;
}

inline std::optional<Rational> from_wide(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) return std::nullopt;
  return Rational(static_cast<long long>(v));
}

inline std::optional<Rational> integer_dot(std::span<const Rational> a, std::span<const Rational> b) {
  __int128 acc = 0;
  long long x, y;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!small_integer(a[i], x) || !small_integer(b[i], y)) return std::nullopt;
    acc += static_cast<__int128>(x) * y;
  }
  return from_wide(acc);
}

inline std::optional<Rational> integer_bilinear(const Matrix<Rational>& form, std::span<const Rational> u,
                                                std::span<const Rational> v) {
  thread_local std::vector<long long> vu, vv;
  vu.resize(u.size());
  vv.resize(v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!small_integer(u[i], vu[i]) || !small_integer(v[i], vv[i])) return std::nullopt;
  __int128 acc = 0;
  long long f;
  for (std::size_t i = 0; i < form.rows(); ++i) {
    if (vu[i] == 0) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < form.cols(); ++j) {
      if (!small_integer(form(i, j), f)) return std::nullopt;
      row += static_cast<__int128>(f) * vv[j];
    }
    acc += row * vu[i];
  }
  return from_wide(acc);
}

}  // namespace detail

template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
  if constexpr (std::is_same_v<T, Rational>)
    if (auto r = detail::integer_dot(a, b)) return *r;
  T acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// ⟨u,v⟩ under the symmetric form `form`.
template <Scalar T>
T bilinear(const Matrix<T>& form, std::span<const T> u, std::span<const T> v) {
  if constexpr (std::is_same_v<T, Rational>)
    if (auto r = detail::integer_bilinear(form, u, v)) return *r;
  T acc(0);
  for (std::size_t i = 0; i < form.rows(); ++i) {
    if (u[i] == T(0)) continue;
    T row(0);
    for (std::size_t j = 0; j < form.cols(); ++j) row += form(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

template <Scalar T>
std::vector<double> to_doubles(std::span<const T> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const T& x) { return to_double(x); });
  return out;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Eigenvalues

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix<double> vectors;      // column k pairs with values[k]
};

/// Cyclic Jacobi rotations on a symmetric matrix.
inline SymmetricEigen jacobi_eigen(Matrix<double> a) {
  const std::size_t n = a.rows();
  Matrix<double> v = Matrix<double>::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{std::vector<double>(n), Matrix<double>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  bool operator==(const Signature&) const = default;
};

template <Scalar T>
Signature signature_of(const Matrix<T>& gram) {
  Signature s;
  for (double ev : jacobi_eigen(gram.template cast<double>()).values) {
    if (std::abs(ev) <= kTauSig)
      ++s.zero;
    else if (ev > 0)
      ++s.positive;
    else
      ++s.negative;
  }
  return s;
}

/// Connected components of the graph with an edge {i,j} whenever the
/// (i,j) entry is nonzero. Components and their members are sorted.
template <Scalar T>
std::vector<std::vector<std::size_t>> irreducible_components(const Matrix<T>& gram) {
  const std::size_t n = gram.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (comp[j] < 0 && !is_zero(gram(i, j))) {
          comp[j] = comp[s];
          members.push_back(j);
          stack.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

/// Positive vector Z with A·Z entrywise negative, taken as the Perron
/// eigenvector of M = I - A (scaled so its largest entry is 1). Requires an
/// irreducible Gram with at least one negative eigenvalue.
template <Scalar T>
std::vector<double> perron_weight(const Matrix<T>& gram) {
  if (irreducible_components(gram).size() != 1)
    fail(ErrorCode::PreconditionFailed, "Perron weight needs an irreducible Gram matrix");
  auto eig = jacobi_eigen(gram.template cast<double>());
  if (eig.values.front() >= -kTauSig)
    fail(ErrorCode::NotIndefinite, "Gram matrix has no negative eigenvalue");
  const std::size_t n = gram.rows();
  // Smallest eigenvalue of A is 1 - r for the Perron root r of I - A.
  std::vector<double> z(n);
  double sign = 0;
  for (std::size_t i = 0; i < n; ++i) sign += eig.vectors(i, 0);
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = (sign < 0 ? -1.0 : 1.0) * eig.vectors(i, 0);
    scale = std::max(scale, z[i]);
  }
  for (auto& x : z) x /= scale;
  return z;
}

// ---------------------------------------------------------------------------
// Exact / float elimination

template <Scalar T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Reduced row echelon form. Columns are scanned in `column_order`
/// (default: left to right) so callers can choose which variables become
/// pivots.
template <Scalar T>
Echelon<T> row_echelon(Matrix<T> m, std::vector<std::size_t> column_order = {}) {
  if (column_order.empty()) {
    column_order.resize(m.cols());
    std::iota(column_order.begin(), column_order.end(), 0);
  }
  Echelon<T> out;
  std::size_t r = 0;
  for (std::size_t c : column_order) {
    if (r == m.rows()) break;
    std::size_t best = m.rows();
    double best_mag = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      double mag = std::abs(to_double(m(i, c)));
      if (best == m.rows() || mag > best_mag) {
        best = i;
        best_mag = mag;
        if constexpr (scalar_traits<T>::exact) break;
      }
    }
    if (best == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    T piv = m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) /= piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <Scalar T>
std::size_t rank_of(const Matrix<T>& m) {
  return row_echelon(m).pivots.size();
}

/// Solves the square system A x = b; nullopt when A is singular.
template <Scalar T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, std::span<const T> b) {
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  auto ech = row_echelon(aug, cols);
  if (ech.pivots.size() < n) return std::nullopt;
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[ech.pivots[i]] = ech.reduced(i, n);
  return x;
}

/// Basis of the null space {x : M x = 0}.
template <Scalar T>
std::vector<std::vector<T>> null_space(const Matrix<T>& m) {
  auto ech = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Line / isotropic quadric

enum class HitKind { None, Tangent, Pair };

/// Parameters t at which (1-t)u + t v is isotropic. The float parameters
/// are always filled; `exact` holds them as rationals when the scalar type is
/// exact and the discriminant is a perfect square.
template <Scalar T>
struct QuadricHit {
  HitKind kind = HitKind::None;
  double t_min = 0;
  double t_max = 0;
  std::optional<std::array<T, 2>> exact;
};

template <Scalar T>
QuadricHit<T> line_quadric(const Matrix<T>& form, std::span<const T> u, std::span<const T> v) {
  std::vector<T> d(u.size());
  bool same = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d[i] = v[i] - u[i];
    if (!is_zero(d[i])) same = false;
  }
  if (same) fail(ErrorCode::PreconditionFailed, "line_quadric needs distinct points");

  // t^2 <d,d> + 2 t <u,d> + <u,u> = 0
  const T a = bilinear<T>(form, d, d);
  const T b = bilinear<T>(form, u, d);
  const T c = bilinear<T>(form, u, u);
  // Float mode tests zeros relative to the Euclidean size of the inputs so
  // that deep normalized roots (tiny B-norms) are classified consistently.
  double norm_b = 0, du = 0, dd = 0;
  for (std::size_t i = 0; i < form.rows(); ++i)
    for (std::size_t j = 0; j < form.cols(); ++j) norm_b = std::max(norm_b, std::abs(to_double(form(i, j))));
  for (std::size_t i = 0; i < u.size(); ++i) {
    du += to_double(u[i]) * to_double(u[i]);
    dd += to_double(d[i]) * to_double(d[i]);
  }
  auto vanishes = [](const T& x, double scale) {
    if constexpr (scalar_traits<T>::exact)
      return x == T(0);
    else
      return std::abs(x) <= kTauEq * scale;
  };
  QuadricHit<T> hit;
  if (vanishes(a, norm_b * dd)) {
    if (vanishes(b, norm_b * std::sqrt(dd * du))) {
      if (vanishes(c, norm_b * du)) fail(ErrorCode::Degenerate, "line lies on the isotropic cone");
      return hit;
    }
    T t = -c / (T(2) * b);
    hit.kind = HitKind::Tangent;
    hit.t_min = hit.t_max = to_double(t);
    hit.exact = std::array<T, 2>{t, t};
    return hit;
  }
  const T disc = b * b - a * c;  // = <u,v>^2 - <u,u><v,v>
  if (vanishes(disc, to_double(T(b * b)) + std::abs(to_double(T(a * c))))) {
    T t = -b / a;
    hit.kind = HitKind::Tangent;
    hit.t_min = hit.t_max = to_double(t);
    hit.exact = std::array<T, 2>{t, t};
    return hit;
  }
  if (disc < T(0)) return hit;
  hit.kind = HitKind::Pair;
  const double ad = to_double(a), bd = to_double(b), root = std::sqrt(to_double(disc));
  double t1 = (-bd - root) / ad, t2 = (-bd + root) / ad;
  hit.t_min = std::min(t1, t2);
  hit.t_max = std::max(t1, t2);
  if constexpr (scalar_traits<T>::exact) {
    if (auto s = exact_sqrt(disc)) {
      T e1 = (-b - *s) / a, e2 = (-b + *s) / a;
      hit.exact = std::array<T, 2>{e1 < e2 ? e1 : e2, e1 < e2 ? e2 : e1};
    }
  }
  return hit;
}

/// The isotropic point of L(u,v) with the smaller parameter: the one seen
/// from u. Pairs and tangencies both qualify.
template <Scalar T>
Point u_Q(const Matrix<T>& form, std::span<const T> u, std::span<const T> v) {
  auto hit = line_quadric(form, u, v);
  if (hit.kind == HitKind::None) fail(ErrorCode::NoIntersection, "line misses the isotropic cone");
  Point out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = (1 - hit.t_min) * to_double(u[i]) + hit.t_min * to_double(v[i]);
  return out;
}

/// Exact variant of u_Q, available when the parameters are rational.
template <Scalar T>
std::optional<std::vector<T>> u_Q_exact(const Matrix<T>& form, std::span<const T> u,
                                        std::span<const T> v) {
  auto hit = line_quadric(form, u, v);
  if (hit.kind == HitKind::None) fail(ErrorCode::NoIntersection, "line misses the isotropic cone");
  if (!hit.exact) return std::nullopt;
  const T& t = (*hit.exact)[0];
  std::vector<T> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (T(1) - t) * u[i] + t * v[i];
  return out;
}

}  // namespace rootgeom
