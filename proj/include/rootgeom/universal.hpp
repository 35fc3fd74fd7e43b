#pragma once

// Chebyshev-type weights, condensation of root pairs, generic universal
// reflection subsystems and the approximation ladder towards Z̄.

#include <cmath>
#include <vector>

#include "rootgeom/cone_faces.hpp"
#include "rootgeom/dominance.hpp"

namespace rootgeom {

/// p_n with p_0 = 0, p_1 = 1, p_{k+1} = 2c p_k − p_{k−1}, where c = cosh λ.
template <Scalar T>
T chebyshev_weight(int n, const T& c) {
  if (n < 0) fail(ErrorCode::PreconditionFailed, "n must be >= 0");
  T prev(0), cur(1);
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    T next = T(2) * c * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline double chebyshev_weight_lambda(int n, double lambda) {
  if (lambda < 0) fail(ErrorCode::PreconditionFailed, "λ must be >= 0");
  return chebyshev_weight<double>(n, std::cosh(lambda));
}

template <Scalar T>
struct CondensationStep {
  std::size_t i = 0, j = 0;  // positions in the tuple being condensed
  int n = 0;
  double lambda = 0;        // arccosh(−⟨α_i,α_j⟩)
  Vec<T> alpha_i, alpha_j;  // inputs
  Vec<T> beta_i, beta_j;    // (s_{α_i} s_{α_j})^n(α_i) and (s_{α_j} s_{α_i})^n(α_j)
  T product = T(0);         // ⟨β_i,β_j⟩
};

inline constexpr int kMaxCondensation = 64;

/// Smallest n >= 1 for which the condensed pair has product < −N against every
/// context root and, when λ > 0, against each other.
template <Scalar T>
CondensationStep<T> condense_pair(const RootSystem<T>& sys, const Vec<T>& ai, const Vec<T>& aj, double big_n,
                                  const std::vector<Vec<T>>& context = {}) {
  const T p = sys.inner(ai, aj);
  if (!le(p, T(-1))) fail(ErrorCode::NotDominantPair, "condensation needs ⟨α_i,α_j⟩ <= -1");
  const T c = -p;
  const bool degenerate = eq(c, T(1));
  CondensationStep<T> step;
  step.alpha_i = ai;
  step.alpha_j = aj;
  step.lambda = std::acosh(std::max(1.0, to_double(c)));
  const std::size_t r = ai.size();
  for (int n = 1; n <= kMaxCondensation; ++n) {
    T odd = chebyshev_weight(2 * n + 1, c), even = chebyshev_weight(2 * n, c);
    Vec<T> bi(r), bj(r);
    for (std::size_t k = 0; k < r; ++k) {
      bi[k] = odd * ai[k] + even * aj[k];
      bj[k] = odd * aj[k] + even * ai[k];
    }
    T prod = sys.inner(bi, bj);
    bool ok = degenerate || to_double(prod) < -big_n;
    for (const auto& g : context) {
      if (!ok) break;
      ok = to_double(sys.inner(bi, g)) < -big_n && to_double(sys.inner(bj, g)) < -big_n;
    }
    if (ok) {
      step.n = n;
      step.beta_i = std::move(bi);
      step.beta_j = std::move(bj);
      step.product = std::move(prod);
      return step;
    }
  }
  fail(ErrorCode::SearchExhausted, "no condensation with n <= 64 reaches the bound");
}

/// Recomputes the condensed pair by applying the dihedral word to the inputs.
template <Scalar T>
std::pair<Vec<T>, Vec<T>> replay(const RootSystem<T>& sys, const CondensationStep<T>& step) {
  Vec<T> bi = step.alpha_i, bj = step.alpha_j;
  for (int k = 0; k < step.n; ++k) {
    bi = reflect_in_root<T>(sys, step.alpha_i, reflect_in_root<T>(sys, step.alpha_j, bi));
    bj = reflect_in_root<T>(sys, step.alpha_j, reflect_in_root<T>(sys, step.alpha_i, bj));
  }
  return {bi, bj};
}

template <Scalar T>
struct UniversalSubsystem {
  std::vector<Vec<T>> seed;
  std::vector<Vec<T>> roots;
  std::vector<CondensationStep<T>> history;
};

inline constexpr double kSeedMargin = 1e-3;
inline constexpr int kMaxSeedDepth = 8;

namespace detail {

template <Scalar T>
void require_indefinite_irreducible(const RootSystem<T>& sys) {
  if (sys.rank() < 2) fail(ErrorCode::PreconditionFailed, "rank must be >= 2");
  if (irreducible_components(sys.gram()).size() != 1) fail(ErrorCode::PreconditionFailed, "system must be irreducible");
  if (signature_of(sys.gram()).negative == 0) fail(ErrorCode::NotIndefinite, "system is not of indefinite type");
}

template <Scalar T>
std::size_t ambient_rank(const RootSystem<T>& sys, const std::vector<Vec<T>>& roots) {
  Matrix<T> m(roots.size(), sys.ambient_dim());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    auto a = sys.to_ambient(roots[r]);
    for (std::size_t k = 0; k < a.size(); ++k) m(r, k) = a[k];
  }
  return rank_of(m);
}

}  // namespace detail

/// A tuple of `size` positive roots spanning span(Δ) with pairwise products
/// <= −1 − margin. Δ itself is preferred; otherwise roots are searched by
/// increasing depth with backtracking.
template <Scalar T>
std::vector<Vec<T>> universal_seed(const RootSystem<T>& sys, std::size_t size, double margin = kSeedMargin) {
  const std::size_t dim = sys.ambient_dim();
  auto compatible = [&](const Vec<T>& a, const Vec<T>& b) { return to_double(sys.inner(a, b)) <= -1 - margin; };
  for (int depth = 1; depth <= kMaxSeedDepth; ++depth) {
    auto roots = enumerate_roots(sys, depth);
    std::vector<Vec<T>> cand;
    for (const auto& r : roots.roots) cand.push_back(r.coords);
    std::vector<std::size_t> chosen;
    std::vector<Vec<T>> found;
    long budget = 2'000'000;
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
      if (--budget < 0) return false;
      if (chosen.size() == size) {
        std::vector<Vec<T>> pick;
        for (auto c : chosen) pick.push_back(cand[c]);
        if (detail::ambient_rank(sys, pick) != dim) return false;
        found = std::move(pick);
        return true;
      }
      for (std::size_t k = start; k < cand.size(); ++k) {
        bool ok = true;
        for (auto c : chosen) ok = ok && compatible(cand[c], cand[k]);
        if (!ok) continue;
        chosen.push_back(k);
        if (self(self, k + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (dfs(dfs, 0)) return found;
  }
  fail(ErrorCode::SearchExhausted, "no spanning tuple with pairwise products <= -1 among roots of depth <= " +
                                       std::to_string(kMaxSeedDepth));
}

/// Condenses pairs until every pairwise product is < −N. With `touch_all`,
/// every root additionally takes part in at least one condensation; a root
/// left over is paired with the partner of largest product.
template <Scalar T>
void condense_until(const RootSystem<T>& sys, UniversalSubsystem<T>& u, double big_n, bool touch_all = false) {
  std::vector<bool> touched(u.roots.size(), false);
  auto product = [&](std::size_t l, std::size_t m) { return to_double(sys.inner(u.roots[l], u.roots[m])); };
  for (int iter = 0; iter < 1000; ++iter) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t l = 0; l < u.roots.size() && !pick; ++l)
      for (std::size_t m = l + 1; m < u.roots.size() && !pick; ++m)
        if (product(l, m) >= -big_n) pick = {l, m};
    if (!pick && touch_all) {
      auto it = std::find(touched.begin(), touched.end(), false);
      if (it != touched.end()) {
        std::size_t l = std::size_t(it - touched.begin()), best = l;
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < u.roots.size(); ++m) {
          if (m == l) continue;
          if (double p = product(l, m); p > worst) {
            worst = p;
            best = m;
          }
        }
        if (best != l) pick = {std::min(l, best), std::max(l, best)};
      }
    }
    if (!pick) return;
    auto [l, m] = *pick;
    std::vector<Vec<T>> context;
    for (std::size_t k = 0; k < u.roots.size(); ++k)
      if (k != l && k != m) context.push_back(u.roots[k]);
    auto step = condense_pair(sys, u.roots[l], u.roots[m], big_n, context);
    step.i = l;
    step.j = m;
    u.roots[l] = step.beta_i;
    u.roots[m] = step.beta_j;
    touched[l] = touched[m] = true;
    u.history.push_back(std::move(step));
  }
  fail(ErrorCode::SearchExhausted, "condensation did not terminate");
}

/// Positive roots Ψ′ spanning span(Δ), |Ψ′| >= max(m, dim span Δ), with all
/// pairwise products < −N.
template <Scalar T>
UniversalSubsystem<T> generic_universal_subsystem(const RootSystem<T>& sys, double big_n, std::size_t m) {
  detail::require_indefinite_irreducible(sys);
  UniversalSubsystem<T> u;
  u.seed = universal_seed(sys, std::max(m, sys.ambient_dim()));
  u.roots = u.seed;
  condense_until(sys, u, big_n);
  return u;
}

struct ApproximationRow {
  double big_n = 0;
  std::size_t size = 0;
  std::size_t condensations = 0;
  double directed = 0;            // sup over Ψ̂′ of the distance to E₂(D)
  double hull = 0;                // Hausdorff distance of conv E₂(Ψ′) and conv of the Z sample
  std::vector<Point> points;      // Ψ̂′
};

struct ApproximationReport {
  std::vector<ApproximationRow> rows;
  std::size_t e2_size = 0;
  std::size_t z_size = 0;
};

/// Runs the ladder N_1, N_2, ...: each rung starts from the same seed,
/// condenses until every product is < −N_k, and condenses every root at
/// least once so that no rung keeps a seed root in place.
template <Scalar T>
ApproximationReport approximation_report(const RootSystem<T>& sys, const TransverseForm& form,
                                         const std::vector<double>& ladder, int depth, int z_length = 3) {
  detail::require_indefinite_irreducible(sys);
  ApproximationReport rep;
  auto e2 = dihedral_limit_roots(sys, form, depth).coords();
  if (e2.empty()) fail(ErrorCode::EmptyCloud, "no dihedral limit roots at this depth");
  auto z = imaginary_orbit(sys, form, z_length).cloud;
  auto z_ext = extreme_points(z).coords();
  rep.e2_size = e2.size();
  rep.z_size = z.size();
  const auto seed = universal_seed(sys, sys.ambient_dim());
  for (double big_n : ladder) {
    UniversalSubsystem<T> u{seed, seed, {}};
    condense_until(sys, u, big_n, true);
    ApproximationRow row;
    row.big_n = big_n;
    row.size = u.roots.size();
    row.condensations = u.history.size();
    for (const auto& r : u.roots) row.points.push_back(normalized_root<T>(sys, form, r));
    row.directed = directed_hausdorff(row.points, e2);
    std::vector<Point> limits;
    for (std::size_t l = 0; l < u.roots.size(); ++l)
      for (std::size_t m = l + 1; m < u.roots.size(); ++m)
        for (auto& p : line_limit_points<T>(sys, form, u.roots[l], u.roots[m])) limits.push_back(std::move(p));
    row.hull = hull_hausdorff(extreme_points(limits), z_ext);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace rootgeom
