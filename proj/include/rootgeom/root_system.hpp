#pragma once

// Based root systems: validation of the simple system, ambient realization
// (including linearly dependent simple roots), simple reflections, and
// breadth-first enumeration of positive roots with depth and poset edges.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "rootgeom/linalg.hpp"
#include "rootgeom/lp.hpp"

namespace rootgeom {

using Relation = std::vector<Rational>;

struct Diagnostic {
  std::string code;     // "Axiom", "Diagonal", "Symmetry", "Relations", "PositiveIndependence", "Shape"
  std::string message;
  int i = -1;
  int j = -1;
};

struct Validation {
  std::vector<Diagnostic> issues;
  bool ok() const { return issues.empty(); }
};

/// True when x ∈ (−∞,−1] ∪ {−cos(π/k) : k ≥ 2}.
template <Scalar T>
bool admissible_off_diagonal(const T& x) {
  if (le(x, T(-1))) return true;
  if constexpr (scalar_traits<T>::exact) {
    return x == 0 || x == Rational(-1, 2);
  } else {
    if (x > kTauEq) return false;
    if (std::abs(x) <= kTauEq) return true;
    double k = std::numbers::pi / std::acos(-x);
    double kr = std::round(k);
    if (kr < 2) return false;
    return std::abs(-std::cos(std::numbers::pi / kr) - x) <= kTauEq;
  }
}

/// True when no nonzero nonnegative combination of the simple roots vanishes,
/// i.e. the span of the relation vectors meets the nonnegative orthant only
/// at zero.
inline bool positively_independent(std::size_t n, const std::vector<Relation>& relations) {
  if (relations.empty()) return true;
  const std::size_t k = relations.size();
  // variables: c (n) >= 0, y+ (k), y- (k);  c - R^T y+ + R^T y- = 0,  sum c = 1
  Matrix<Rational> a(n + 1, n + 2 * k);
  std::vector<Rational> b(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 1;
    for (std::size_t r = 0; r < k; ++r) {
      a(i, n + r) = -relations[r][i];
      a(i, n + k + r) = relations[r][i];
    }
    a(n, i) = 1;
  }
  b[n] = 1;
  return !lp::feasible<Rational>(a, b);
}

template <Scalar T>
Validation validate_simple_system(const GramMatrix<T>& gram, const std::vector<Relation>& relations) {
  Validation v;
  const std::size_t n = gram.rows();
  if (n == 0 || gram.cols() != n) {
    v.issues.push_back({"Shape", "Gram matrix must be square and non-empty"});
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!eq(gram(i, i), T(1)))
      v.issues.push_back({"Diagonal", "diagonal entry must be 1", int(i), int(i)});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!eq(gram(i, j), gram(j, i)))
        v.issues.push_back({"Symmetry", "Gram matrix is not symmetric", int(i), int(j)});
      if (!admissible_off_diagonal(gram(i, j)))
        v.issues.push_back({"Axiom", "entry " + std::to_string(to_double(gram(i, j))) +
                                         " is neither <= -1 nor -cos(pi/k)",
                            int(i), int(j)});
    }
  }
  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (relations[r].size() != n) {
      v.issues.push_back({"Relations", "relation " + std::to_string(r) + " has wrong length", int(r)});
      return v;
    }
    bool all_zero = std::all_of(relations[r].begin(), relations[r].end(), [](auto& x) { return x == 0; });
    if (all_zero) v.issues.push_back({"Relations", "relation " + std::to_string(r) + " is zero", int(r)});
    for (std::size_t i = 0; i < n; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += gram(i, j) * T(relations[r][j]);
      if (!is_zero(acc)) {
        v.issues.push_back({"Relations", "relation " + std::to_string(r) + " is not in the radical of the Gram matrix",
                            int(r), int(i)});
        break;
      }
    }
  }
  if (!positively_independent(n, relations))
    v.issues.push_back({"PositiveIndependence", "a nonzero nonnegative combination of simple roots vanishes"});
  return v;
}

/// A based root system realized in an ambient space of dimension
/// rank − rank(relations). Roots are stored in Δ-coordinates; ambient
/// vectors are computed on demand.
template <Scalar T>
class RootSystem {
 public:
  RootSystem() = default;

  RootSystem(GramMatrix<T> gram, std::vector<Relation> relations, std::vector<Vec<T>> simple_vectors,
             Matrix<T> form, std::vector<std::string> labels = {})
      : gram_(std::move(gram)),
        relations_(std::move(relations)),
        simple_(std::move(simple_vectors)),
        form_(std::move(form)),
        labels_(std::move(labels)) {
    form_d_ = form_.template cast<double>();
    gram_d_ = gram_.template cast<double>();
    for (const auto& s : simple_) simple_d_.push_back(to_doubles<T>(s));
    if (labels_.empty())
      for (std::size_t i = 0; i < rank(); ++i) labels_.push_back("a" + std::to_string(i + 1));
  }

  std::size_t rank() const { return gram_.rows(); }
  std::size_t ambient_dim() const { return form_.rows(); }
  const GramMatrix<T>& gram() const { return gram_; }
  const Matrix<double>& gram_double() const { return gram_d_; }
  const Matrix<T>& form() const { return form_; }
  const Matrix<double>& form_double() const { return form_d_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec<T>& simple_vector(std::size_t i) const { return simple_[i]; }
  const Point& simple_point(std::size_t i) const { return simple_d_[i]; }

  /// ⟨a,b⟩ for Δ-coordinate vectors.
  T inner(std::span<const T> a, std::span<const T> b) const { return bilinear<T>(gram_, a, b); }

  /// ⟨α_i, c⟩ for a Δ-coordinate vector c.
  T pair_simple(std::size_t i, std::span<const T> c) const {
    T acc(0);
    for (std::size_t j = 0; j < rank(); ++j) acc += gram_(i, j) * c[j];
    return acc;
  }

  Vec<T> to_ambient(std::span<const T> coords) const {
    Vec<T> out(ambient_dim(), T(0));
    for (std::size_t i = 0; i < rank(); ++i) {
      if (coords[i] == T(0)) continue;
      for (std::size_t k = 0; k < ambient_dim(); ++k) out[k] += coords[i] * simple_[i][k];
    }
    return out;
  }

  Point to_ambient_point(std::span<const T> coords) const { return to_doubles<T>(to_ambient(coords)); }

  /// Subsystem on the index subset I, realized inside the same ambient space.
  RootSystem subsystem(std::span<const std::size_t> idx) const {
    std::vector<Vec<T>> sv;
    std::vector<std::string> lb;
    for (auto i : idx) {
      sv.push_back(simple_[i]);
      lb.push_back(labels_[i]);
    }
    return RootSystem(gram_.principal(idx), {}, std::move(sv), form_, std::move(lb));
  }

 private:
  GramMatrix<T> gram_;
  Matrix<double> gram_d_;
  std::vector<Relation> relations_;
  std::vector<Vec<T>> simple_;
  std::vector<Point> simple_d_;
  Matrix<T> form_;
  Matrix<double> form_d_;
  std::vector<std::string> labels_;
};

/// Builds the ambient realization. Relations are eliminated on their highest
/// indices, so the lowest-index simple roots form the ambient basis and the
/// ambient form is the Gram matrix restricted to them.
template <Scalar T>
RootSystem<T> realize_ambient(const GramMatrix<T>& gram, const std::vector<Relation>& relations,
                              std::vector<std::string> labels = {}) {
  const std::size_t n = gram.rows();
  std::vector<std::size_t> dependent;
  Matrix<Rational> reduced;
  if (!relations.empty()) {
    Matrix<Rational> r(relations.size(), n);
    for (std::size_t i = 0; i < relations.size(); ++i) {
      if (relations[i].size() != n) fail(ErrorCode::InconsistentRelations, "relation length mismatch");
      for (std::size_t j = 0; j < n; ++j) r(i, j) = relations[i][j];
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = n - 1 - j;
    auto ech = row_echelon(r, order);
    dependent = ech.pivots;
    reduced = ech.reduced;
  }
  std::vector<std::size_t> free_idx;
  std::vector<int> ambient_pos(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(dependent.begin(), dependent.end(), j) == dependent.end()) {
      ambient_pos[j] = static_cast<int>(free_idx.size());
      free_idx.push_back(j);
    }
  }
  const std::size_t m = free_idx.size();
  std::vector<Vec<T>> simple(n, Vec<T>(m, T(0)));
  for (std::size_t j : free_idx) simple[j][ambient_pos[j]] = T(1);
  for (std::size_t r = 0; r < dependent.size(); ++r) {
    // α_pivot + Σ_free reduced(r, f) α_f = 0
    for (std::size_t f : free_idx) simple[dependent[r]][ambient_pos[f]] = T(-reduced(r, f));
  }
  Matrix<T> form = gram.principal(free_idx);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!eq(bilinear<T>(form, simple[i], simple[j]), gram(i, j)))
        fail(ErrorCode::InconsistentRelations, "relations are incompatible with the Gram matrix");
  return RootSystem<T>(gram, relations, std::move(simple), std::move(form), std::move(labels));
}

// ---------------------------------------------------------------------------
// Reflections and roots

/// s_i(v) = v − 2⟨α_i,v⟩α_i in Δ-coordinates.
template <Scalar T>
Vec<T> reflect(const RootSystem<T>& sys, std::size_t i, std::span<const T> v) {
  Vec<T> out(v.begin(), v.end());
  out[i] -= T(2) * sys.pair_simple(i, v);
  return out;
}

/// Reflection in an arbitrary (unit) root ρ: v − 2⟨ρ,v⟩ρ.
template <Scalar T>
Vec<T> reflect_in_root(const RootSystem<T>& sys, std::span<const T> root, std::span<const T> v) {
  T p = sys.inner(root, v);
  Vec<T> out(v.begin(), v.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= T(2) * p * root[k];
  return out;
}

/// Applies the word w = s_{w[0]} ... s_{w[k-1]} to Δ-coordinates (rightmost first).
template <Scalar T>
Vec<T> apply_word(const RootSystem<T>& sys, std::span<const std::size_t> word, std::span<const T> v) {
  Vec<T> out(v.begin(), v.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = reflect<T>(sys, *it, out);
  return out;
}

template <Scalar T>
struct Root {
  Vec<T> coords;
  int depth = 1;
  /// root = s_{word[0]} ... s_{word[k-2]} (α_{word[k-1]}); the last letter is
  /// the simple root the word acts on.
  std::vector<std::size_t> witness;
};

enum class EdgeKind { Short, Long };

struct PosetEdge {
  std::size_t from = 0;  // index into RootEnumeration::roots
  std::size_t to = 0;
  std::size_t simple = 0;
  EdgeKind kind = EdgeKind::Short;
};

/// Lookup key for Δ-coordinates: exact coordinates in rational mode, a 1e-8
/// grid in float mode.
template <Scalar T>
struct CoordKey {
  std::vector<T> exact;
  std::vector<long long> grid;

  explicit CoordKey(std::span<const T> c) {
    if constexpr (scalar_traits<T>::exact) {
      exact.assign(c.begin(), c.end());
    } else {
      for (const auto& x : c) grid.push_back(std::llround(to_double(x) * 1e8));
    }
  }
  bool operator<(const CoordKey& o) const {
    if constexpr (scalar_traits<T>::exact)
      return exact < o.exact;
    else
      return grid < o.grid;
  }
};

template <Scalar T>
bool lex_less(const Vec<T>& a, const Vec<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lt(a[i], b[i])) return true;
    if (lt(b[i], a[i])) return false;
  }
  return false;
}

template <Scalar T>
struct RootEnumeration {
  std::vector<Root<T>> roots;  // sorted by (depth, lexicographic coords)
  std::vector<PosetEdge> edges;
  std::map<CoordKey<T>, std::size_t> index;

  std::optional<std::size_t> find(std::span<const T> coords) const {
    auto it = index.find(CoordKey<T>(coords));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

template <Scalar T>
RootEnumeration<T> enumerate_roots(const RootSystem<T>& sys, int max_depth) {
  if (max_depth < 1) fail(ErrorCode::PreconditionFailed, "max_depth must be >= 1");
  const std::size_t n = sys.rank();
  RootEnumeration<T> out;
  std::vector<Root<T>> level;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> c(n, T(0));
    c[i] = T(1);
    level.push_back({c, 1, {i}});
  }
  struct RawEdge {
    Vec<T> from, to;
    std::size_t simple;
    EdgeKind kind;
  };
  std::vector<RawEdge> raw;
  std::map<CoordKey<T>, int> seen;
  for (auto& r : level) seen.emplace(CoordKey<T>(r.coords), 1);
  std::vector<Root<T>> all;

  for (int d = 1; d <= max_depth; ++d) {
    std::sort(level.begin(), level.end(), [](const Root<T>& a, const Root<T>& b) { return lex_less(a.coords, b.coords); });
    std::vector<Root<T>> next;
    if (d < max_depth) {
      for (const auto& beta : level) {
        for (std::size_t i = 0; i < n; ++i) {
          T p = sys.pair_simple(i, beta.coords);
          if (!lt(p, T(0))) continue;
          Vec<T> up = beta.coords;
          up[i] -= T(2) * p;
          EdgeKind kind = lt(abs_value(p), T(1)) ? EdgeKind::Short : EdgeKind::Long;
          raw.push_back({beta.coords, up, i, kind});
          CoordKey<T> key(up);
          if (seen.count(key)) continue;
          seen.emplace(key, d + 1);
          std::vector<std::size_t> w{i};
          w.insert(w.end(), beta.witness.begin(), beta.witness.end());
          next.push_back({std::move(up), d + 1, std::move(w)});
        }
      }
    }
    for (auto& r : level) all.push_back(std::move(r));
    level = std::move(next);
  }
  out.roots = std::move(all);
  for (std::size_t k = 0; k < out.roots.size(); ++k) out.index.emplace(CoordKey<T>(out.roots[k].coords), k);
  for (const auto& e : raw) {
    auto f = out.find(e.from), t = out.find(e.to);
    if (f && t) out.edges.push_back({*f, *t, e.simple, e.kind});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group elements

template <Scalar T>
struct GroupElement {
  std::vector<std::size_t> word;  // reduced (first BFS discovery)
  Matrix<T> matrix;               // action on Δ-coordinates
};

/// All elements of W of length <= max_length, found by breadth-first search
/// over left multiplication by simple reflections; elements are identified by
/// their matrix on Δ-coordinates.
template <Scalar T>
std::vector<GroupElement<T>> enumerate_elements(const RootSystem<T>& sys, int max_length) {
  const std::size_t n = sys.rank();
  auto key_of = [&](const Matrix<T>& m) {
    Vec<T> flat;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.push_back(m(i, j));
    return CoordKey<T>(flat);
  };
  std::vector<GroupElement<T>> out{{{}, Matrix<T>::identity(n)}};
  std::map<CoordKey<T>, bool> seen{{key_of(out[0].matrix), true}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t e = begin; e < end; ++e) {
      for (std::size_t i = 0; i < n; ++i) {
        Matrix<T> m = out[e].matrix;
        // (s_i M)(r, c) = M(r,c) − 2 δ_{r,i} Σ_j G(i,j) M(j,c)
        for (std::size_t c = 0; c < n; ++c) {
          T acc(0);
          for (std::size_t j = 0; j < n; ++j) acc += sys.gram()(i, j) * out[e].matrix(j, c);
          m(i, c) -= T(2) * acc;
        }
        auto key = key_of(m);
        if (seen.count(key)) continue;
        seen.emplace(key, true);
        std::vector<std::size_t> w{i};
        w.insert(w.end(), out[e].word.begin(), out[e].word.end());
        out.push_back({std::move(w), std::move(m)});
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace rootgeom
