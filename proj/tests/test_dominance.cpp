#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace rootgeom;
using namespace fixtures;

namespace {

template <class T>
SignedRoot<T> pos(Vec<T> c, int depth) {
  return {std::move(c), false, depth};
}

template <class T>
bool is_fundamental(const RootSystem<T>& sys, const Vec<T>& lower_value, const Vec<T>& upper_value) {
  // lower negative, upper positive, upper − lower in K
  for (const auto& x : lower_value)
    if (gt(x, T(0))) return false;
  for (const auto& x : upper_value)
    if (lt(x, T(0))) return false;
  Vec<T> diff(lower_value.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = upper_value[k] - lower_value[k];
  for (std::size_t i = 0; i < sys.rank(); ++i)
    if (gt(sys.pair_simple(i, diff), T(0))) return false;
  return true;
}

// Roots of depth <= D not dominating any other positive root of depth <= D.
template <class T>
std::set<Vec<T>> minimal_roots(const RootSystem<T>& sys, int depth) {
  auto e = enumerate_roots(sys, depth);
  std::set<Vec<T>> out;
  for (const auto& b : e.roots) {
    bool minimal = true;
    for (const auto& a : e.roots)
      if (a.coords != b.coords && dominates(sys, positive_root(a), positive_root(b))) minimal = false;
    if (minimal) out.insert(b.coords);
  }
  return out;
}

}  // namespace

TEST(Dominance, Examples) {
  auto aff = aff2<Rational>();
  EXPECT_TRUE(dominates(aff, pos<Rational>({1, 0}, 1), pos<Rational>({2, 1}, 2)));
  EXPECT_FALSE(dominates(aff, pos<Rational>({2, 1}, 2), pos<Rational>({1, 0}, 1)));
  auto d = d15<Rational>();
  EXPECT_TRUE(dominates(d, pos<Rational>({1, 0}, 1), pos<Rational>({3, 1}, 2)));
  auto f = fin3<Rational>();
  EXPECT_FALSE(dominates(f, pos<Rational>({1, 0}, 1), pos<Rational>({0, 1}, 1)));
  // a positive root never lies below a negative one
  EXPECT_FALSE(dominates(d, pos<Rational>({1, 0}, 1), -pos<Rational>({3, 1}, 2)));
  // −(3α+β) ≼ −α mirrors α ≼ 3α+β
  EXPECT_TRUE(dominates(d, -pos<Rational>({3, 1}, 2), -pos<Rational>({1, 0}, 1)));
}

TEST(Dominance, GeometricExamples) {
  auto d = d15<Rational>();
  Vec<Rational> a{1, 0}, b{0, 1}, g{3, 1};
  EXPECT_TRUE(dominates_geometric<Rational>(d, a, g));
  EXPECT_FALSE(dominates_geometric<Rational>(d, b, g));
  auto aff = aff2<Rational>();
  Vec<Rational> g2{2, 1};
  EXPECT_TRUE(dominates_geometric<Rational>(aff, a, g2));
}

template <class T>
void check_equivalence(const RootSystem<T>& sys, int depth) {
  auto e = enumerate_roots(sys, depth);
  auto h = exact_transverse(sys);
  for (const auto& r : e.roots)
    for (const auto& g : e.roots) {
      if (r.coords == g.coords) continue;
      EXPECT_EQ(dominates(sys, positive_root(r), positive_root(g)),
                dominates_geometric<T>(sys, r.coords, g.coords, h));
    }
}

TEST(Dominance, AlgebraicMatchesGeometric) {
  check_equivalence(fin3<Rational>(), 6);
  check_equivalence(aff2<Rational>(), 6);
  check_equivalence(d15<Rational>(), 6);
  check_equivalence(a2aff<Rational>(), 6);
  check_equivalence(u3<Rational>(), 4);
  check_equivalence(quad<Rational>(), 4);
  check_equivalence(h334(), 6);
}

TEST(Dominance, WEquivariance) {
  auto sys = u3<Rational>();
  auto e = enumerate_roots(sys, 4);
  auto words = enumerate_elements(sys, 3);
  int checked = 0;
  for (std::size_t x = 0; x < e.roots.size(); x += 3) {
    for (std::size_t y = 0; y < e.roots.size(); y += 2) {
      if (x == y) continue;
      bool before = dominates(sys, positive_root(e.roots[x]), positive_root(e.roots[y]));
      for (const auto& w : words) {
        auto fx = e.find(apply_word<Rational>(sys, w.word, e.roots[x].coords));
        auto fy = e.find(apply_word<Rational>(sys, w.word, e.roots[y].coords));
        if (!fx || !fy) continue;
        EXPECT_EQ(before, dominates(sys, positive_root(e.roots[*fx]), positive_root(e.roots[*fy])));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Elementary, Examples) {
  using V = std::vector<Vec<Rational>>;
  EXPECT_EQ(elementary_roots(aff2<Rational>()), (V{{0, 1}, {1, 0}}));
  EXPECT_EQ(elementary_roots(d15<Rational>()), (V{{0, 1}, {1, 0}}));
  EXPECT_EQ(elementary_roots(fin3<Rational>()), (V{{0, 1}, {1, 0}, {1, 1}}));
}

TEST(Elementary, MatchesDominanceMinima) {
  auto check = [](const auto& sys, int depth) {
    auto sigma = elementary_roots(sys);
    using V = typename std::decay_t<decltype(sigma)>::value_type;
    std::set<V> s(sigma.begin(), sigma.end());
    EXPECT_EQ(s, minimal_roots(sys, depth));
  };
  check(aff2<Rational>(), 20);
  check(d15<Rational>(), 20);
  check(fin3<Rational>(), 3);
  check(u3<Rational>(), 5);
  check(a2aff<Rational>(), 8);
  check(quad<Rational>(), 5);
}

TEST(Fundamental, Examples) {
  auto has = [](const auto& pairs, Vec<Rational> lower, Vec<Rational> upper) {
    for (const auto& p : pairs)
      if (p.lower.coords == lower && p.lower.negative && p.upper.coords == upper && !p.upper.negative) return true;
    return false;
  };
  auto fa = fundamental_dominances(aff2<Rational>(), 2);
  EXPECT_TRUE(has(fa, {1, 0}, {0, 1}));
  auto fd = fundamental_dominances(d15<Rational>(), 2);
  EXPECT_TRUE(has(fd, {1, 0}, {0, 1}));
  EXPECT_TRUE(fundamental_dominances(fin3<Rational>(), 4).empty());
  for (const auto& p : fd) EXPECT_TRUE(p.fundamental);
}

TEST(Fundamental, CoversAreElementary) {
  for (auto sys : {u3<Rational>(), quad<Rational>(), d15<Rational>(), a2aff<Rational>()}) {
    auto sigma = elementary_roots(sys);
    for (const auto& p : fundamental_dominances(sys, 3)) {
      EXPECT_TRUE(is_fundamental(sys, p.lower.value(), p.upper.value()));
      if (!p.cover) continue;
      EXPECT_TRUE(in_root_list<Rational>(sigma, p.lower.coords));
      EXPECT_TRUE(in_root_list<Rational>(sigma, p.upper.coords));
    }
  }
}

// Every dominance pair is W-conjugate to a fundamental one.
TEST(Fundamental, ConjugationWitness) {
  auto run = [](const RootSystem<Rational>& sys, int depth) {
    auto e = enumerate_roots(sys, depth);
    auto words = enumerate_elements(sys, 8);
    std::vector<SignedRoot<Rational>> all;
    for (const auto& r : e.roots) {
      all.push_back(positive_root(r));
      all.push_back(negative_root(r));
    }
    int pairs = 0;
    for (const auto& x : all)
      for (const auto& y : all) {
        if (x == y || !dominates(sys, x, y)) continue;
        ++pairs;
        bool found = false;
        for (const auto& w : words) {
          if (is_fundamental(sys, apply_word<Rational>(sys, w.word, x.value()),
                             apply_word<Rational>(sys, w.word, y.value()))) {
            found = true;
            break;
          }
        }
        EXPECT_TRUE(found);
      }
    EXPECT_GT(pairs, 0);
  };
  run(aff2<Rational>(), 4);
  run(d15<Rational>(), 4);
  run(u3<Rational>(), 4);
}

TEST(LimitSets, Examples) {
  auto d = d15<Rational>();
  auto ld = limit_point_sets(d, sum_form(d), 3);
  EXPECT_EQ(ld.elementary.size(), 2u);
  EXPECT_EQ(ld.fundamental.size(), 2u);
  EXPECT_TRUE(ld.fcov_in_elem);

  auto aff = aff2<Rational>();
  auto la = limit_point_sets(aff, sum_form(aff), 3);
  for (const auto* c : {&la.elementary, &la.fundamental, &la.covers, &la.fundamental_covers}) {
    ASSERT_EQ(c->size(), 1u);
    EXPECT_NEAR(c->points[0].coords[0], 0.5, 1e-12);
  }

  auto f = fin3<Rational>();
  auto lf = limit_point_sets(f, sum_form(f), 3);
  EXPECT_TRUE(lf.elementary.empty() && lf.fundamental.empty() && lf.covers.empty() &&
              lf.fundamental_covers.empty());
}

TEST(LimitSets, FundamentalImagesStayInE2) {
  auto u = u3<Rational>();
  auto form = sum_form(u);
  auto sets = limit_point_sets(u, form, 3);
  auto e2 = dihedral_limit_roots(u, form, 4);
  ASSERT_FALSE(sets.fundamental.empty());
  for (const auto& p : sets.fundamental.points) {
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<std::size_t> w{i};
      auto img = act_word(u, form, w, p.coords);
      double best = 1e9;
      for (const auto& q : e2.points) best = std::min(best, euclidean_distance(img, q.coords));
      EXPECT_LE(best, 1e-9);
    }
  }
}

TEST(FacialRestriction, Examples) {
  auto q = quad<Rational>();
  auto form = sum_form(q);
  auto edge = facial_restriction_check(q, form, {0, 1}, 4);
  EXPECT_TRUE(edge.ok());
  ASSERT_EQ(edge.e2_subsystem.size(), 1u);
  auto mid = normalize(q.to_ambient_point(Vec<Rational>{1, 1, 0, 0}), form);
  EXPECT_NEAR(euclidean_distance(edge.e2_subsystem.points[0].coords, mid), 0.0, 1e-12);
  try {
    facial_restriction_check(q, form, {0, 2}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFacial);
  }

  auto u = u3<Rational>();
  auto pair = facial_restriction_check(u, sum_form(u), {0, 1}, 4);
  EXPECT_TRUE(pair.ok());
  EXPECT_EQ(pair.e2_subsystem.size(), 2u);
}

TEST(FacialRestriction, AllEdgesOfQuad) {
  auto q = quad<Rational>();
  auto form = sum_form(q);
  for (std::vector<std::size_t> e : {std::vector<std::size_t>{0, 1}, {1, 2}, {2, 3}, {0, 3}})
    EXPECT_TRUE(facial_restriction_check(q, form, e, 4).ok());
}

TEST(SignedRootFrom, Recognition) {
  auto d = d15<Rational>();
  auto r = signed_root_from(d, Vec<Rational>{3, 1});
  EXPECT_FALSE(r.negative);
  EXPECT_EQ(r.depth, 2);
  auto n = signed_root_from(d, Vec<Rational>{-1, 0});
  EXPECT_TRUE(n.negative);
  EXPECT_EQ(n.depth, 1);
  EXPECT_EQ(n.coords, (Vec<Rational>{1, 0}));
  EXPECT_THROW(signed_root_from(d, Vec<Rational>{1, -1}), Error);
  EXPECT_THROW(signed_root_from(d, Vec<Rational>{2, 0}), Error);
  auto u = u3<Rational>();
  for (const auto& root : enumerate_roots(u, 5).roots)
    EXPECT_EQ(signed_root_from(u, root.coords).depth, root.depth);
}

TEST(Dominance, IntegerKernelMatchesRational) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> phi(1, 400), inner(-300, 300);
  for (int t = 0; t < 5000; ++t) {
    long long fr = phi(rng), fg = phi(rng), rg = inner(rng);
    long long rr = t % 3 ? 1 : inner(rng), gg = t % 3 ? 1 : inner(rng);
    EXPECT_EQ(detail::beyond_both_hits<__int128>(fr, fg, rr, rg, gg),
              detail::beyond_both_hits<Rational>(Rational(fr), Rational(fg), Rational(rr), Rational(rg), Rational(gg)));
  }
}

TEST(Dominance, PreparedMatchesOneShot) {
  for (auto sys : {quad<Rational>(), d15<Rational>(), u3<Rational>()}) {
    auto h = exact_transverse(sys);
    GeometricDominance<Rational> prepared(sys, h);
    auto roots = enumerate_roots(sys, 4).roots;
    for (const auto& r : roots)
      for (const auto& g : roots) {
        if (r.coords == g.coords) continue;
        // a scaled copy of the functional leaves the decision unchanged
        Vec<Rational> h3 = h;
        for (auto& x : h3) x *= Rational(3, 7);
        EXPECT_EQ(prepared(r.coords, g.coords), dominates_geometric<Rational>(sys, r.coords, g.coords, h3));
      }
  }
}

// E_f^cov ⊆ E_f ∩ E^cov always; equality is only measured and reported.
TEST(LimitSets, FundamentalCoversInsideBoth) {
  auto within = [](const PointCloud& small, const PointCloud& big) {
    for (const auto& p : small.points) {
      double best = 1e9;
      for (const auto& q : big.points) best = std::min(best, euclidean_distance(p.coords, q.coords));
      if (best > 1e-9) return false;
    }
    return true;
  };
  for (auto sys : {u3<Rational>(), d15<Rational>(), a2aff<Rational>()}) {
    auto sets = limit_point_sets(sys, sum_form(sys), 4);
    EXPECT_TRUE(within(sets.fundamental_covers, sets.fundamental));
    EXPECT_TRUE(within(sets.fundamental_covers, sets.covers));
  }
}
