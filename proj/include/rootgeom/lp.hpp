#pragma once

// Small dense two-phase simplex (Bland's rule), exact over rationals and
// tolerance-based over doubles. Problems here have at most a few hundred
// columns and a handful of rows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rootgeom/linalg.hpp"

namespace rootgeom::lp {

enum class Status { Optimal, Infeasible, Unbounded };

template <Scalar T>
struct Result {
  Status status = Status::Infeasible;
  std::vector<T> x;
  T value = T(0);
};

template <Scalar T>
bool positive(const T& v) {
  if constexpr (scalar_traits<T>::exact)
    return v > 0;
  else
    return v > 1e-11;
}

/// maximize c·x subject to A x = b, x >= 0.
template <Scalar T>
Result<T> maximize(const Matrix<T>& a, std::span<const T> b, std::span<const T> c) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t width = n + m + 1;  // structural, artificial, rhs
  Matrix<T> tab(m, width);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < T(0);
    for (std::size_t j = 0; j < n; ++j) tab(i, j) = flip ? T(-a(i, j)) : a(i, j);
    tab(i, n + i) = T(1);
    tab(i, width - 1) = flip ? T(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](std::size_t r, std::size_t col) {
    T p = tab(r, col);
    for (std::size_t j = 0; j < width; ++j) tab(r, j) /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      T f = tab(i, col);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < width; ++j) tab(i, j) -= f * tab(r, j);
    }
    basis[r] = col;
  };

  // Runs simplex on objective `obj` (length width-1) over allowed columns.
  auto run = [&](const std::vector<T>& obj, std::size_t allowed) -> bool {
    for (int iter = 0; iter < 100000; ++iter) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        T reduced = obj[j];
        for (std::size_t i = 0; i < m; ++i) reduced -= obj[basis[i]] * tab(i, j);
        if (positive(reduced)) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = m;
      T best(0);
      for (std::size_t i = 0; i < m; ++i) {
        if (!positive(tab(i, enter))) continue;
        T ratio = tab(i, width - 1) / tab(i, enter);
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
    return true;
  };

  // Phase 1: maximize -sum(artificials).
  std::vector<T> phase1(width - 1, T(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = T(-1);
  run(phase1, n + m);
  T infeas(0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) infeas += tab(i, width - 1);
  Result<T> res;
  if (positive(infeas)) return res;

  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(tab(i, j))) {
        pivot(i, j);
        break;
      }
    }
  }

  std::vector<T> phase2(width - 1, T(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run(phase2, n)) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = tab(i, width - 1);
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

/// Feasibility of A x = b, x >= 0.
template <Scalar T>
bool feasible(const Matrix<T>& a, std::span<const T> b) {
  std::vector<T> zero(a.cols(), T(0));
  return maximize<T>(a, b, zero).status != Status::Infeasible;
}

/// L1 residual of the best convex combination of `points` matching `p`
/// (zero iff p lies in the hull).
inline double hull_residual(std::span<const Point> points, std::span<const double> p) {
  const std::size_t k = points.size(), d = p.size();
  const std::size_t rows = d + 1, cols = k + 2 * rows;
  Matrix<double> a(rows, cols);
  std::vector<double> b(rows), c(cols, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = points[j][i];
    b[i] = p[i];
  }
  for (std::size_t j = 0; j < k; ++j) a(d, j) = 1.0;
  b[d] = 1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    a(i, k + i) = 1.0;
    a(i, k + rows + i) = -1.0;
    c[k + i] = c[k + rows + i] = -1.0;
  }
  auto res = maximize<double>(a, b, c);
  if (res.status != Status::Optimal) return std::numeric_limits<double>::infinity();
  return -res.value;
}

/// Euclidean distance from p to conv(points), by Wolfe's min-norm-point
/// iteration on the translated points.
inline double hull_distance(std::span<const Point> points, std::span<const double> p) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t d = p.size();
  std::vector<Point> q;
  double scale = 0;
  for (const auto& v : points) {
    Point w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = v[i] - p[i];
    scale = std::max(scale, dot<double>(w, w));
    q.push_back(std::move(w));
  }
  const double eps = 1e-14 * std::max(scale, 1.0);
  std::size_t start = 0;
  for (std::size_t j = 1; j < q.size(); ++j)
    if (dot<double>(q[j], q[j]) < dot<double>(q[start], q[start])) start = j;
  std::vector<std::size_t> s{start};
  std::vector<double> lambda{1.0};
  auto combo = [&](const std::vector<double>& w) {
    Point x(d, 0.0);
    for (std::size_t k = 0; k < s.size(); ++k)
      for (std::size_t i = 0; i < d; ++i) x[i] += w[k] * q[s[k]][i];
    return x;
  };
  for (int outer = 0; outer < 1000; ++outer) {
    Point x = combo(lambda);
    double xx = dot<double>(x, x);
    if (xx <= eps) return 0.0;
    std::size_t best = 0;
    for (std::size_t j = 1; j < q.size(); ++j)
      if (dot<double>(x, q[j]) < dot<double>(x, q[best])) best = j;
    if (xx - dot<double>(x, q[best]) <= eps || std::find(s.begin(), s.end(), best) != s.end())
      return std::sqrt(xx);
    s.push_back(best);
    lambda.push_back(0.0);
    for (int inner = 0; inner < 1000; ++inner) {
      // affine min-norm point over the current support
      const std::size_t m = s.size();
      Matrix<double> a(m + 1, m + 1);
      std::vector<double> rhs(m + 1, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a(r, c) = dot<double>(q[s[r]], q[s[c]]);
        a(r, m) = a(m, r) = 1.0;
      }
      rhs[m] = 1.0;
      auto sol = solve<double>(a, rhs);
      if (!sol) return std::sqrt(dot<double>(x, x));
      std::vector<double> mu(sol->begin(), sol->begin() + m);
      if (std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-15; })) {
        lambda = mu;
        break;
      }
      double theta = 1.0;
      for (std::size_t k = 0; k < m; ++k)
        if (mu[k] <= 1e-15) theta = std::min(theta, lambda[k] / (lambda[k] - mu[k]));
      for (std::size_t k = 0; k < m; ++k) lambda[k] += theta * (mu[k] - lambda[k]);
      std::vector<std::size_t> s2;
      std::vector<double> l2;
      for (std::size_t k = 0; k < m; ++k) {
        if (lambda[k] > 1e-15) {
          s2.push_back(s[k]);
          l2.push_back(lambda[k]);
        }
      }
      s = std::move(s2);
      lambda = std::move(l2);
    }
  }
  return std::sqrt(dot<double>(combo(lambda), combo(lambda)));
}

inline bool in_convex_hull(std::span<const Point> points, std::span<const double> p,
                           double tol = kTauHull) {
  if (points.empty()) return false;
  return hull_residual(points, p) <= tol;
}

}  // namespace rootgeom::lp
