#include <gtest/gtest.h>

#include "support.hpp"

using namespace rootgeom;
using namespace fixtures;

namespace {

struct Expected {
  ComponentType type;
  bool weakly, hyper, compact;
};

template <class T>
void expect_report(const RootSystem<T>& sys, Expected e) {
  auto r = classify(sys);
  EXPECT_EQ(r.type, e.type);
  EXPECT_EQ(r.weakly_hyperbolic, e.weakly);
  EXPECT_EQ(r.hyperbolic, e.hyper);
  EXPECT_EQ(r.compact_hyperbolic, e.compact);
  // flag hierarchy
  EXPECT_TRUE(!r.compact_hyperbolic || r.hyperbolic);
  EXPECT_TRUE(!r.hyperbolic || r.weakly_hyperbolic);
  EXPECT_TRUE(!r.weakly_hyperbolic || r.type == ComponentType::Indefinite);
}

}  // namespace

TEST(Classify, Table) {
  using CT = ComponentType;
  expect_report(fin3<Rational>(), {CT::Finite, false, false, false});
  expect_report(aff2<Rational>(), {CT::Affine, false, false, false});
  expect_report(a2aff<Rational>(), {CT::Affine, false, false, false});
  expect_report(d15<Rational>(), {CT::Indefinite, true, true, true});
  expect_report(u3<Rational>(), {CT::Indefinite, true, false, false});
  expect_report(h334(), {CT::Indefinite, true, true, true});
  EXPECT_EQ(classify(h334()).signature, (Signature{2, 1, 0}));
}

TEST(Classify, DependentSystemUsesSpan) {
  // QUAD: the Gram matrix has a kernel, B on span(Δ) is Lorentzian.
  auto r = classify(quad<Rational>());
  EXPECT_EQ(r.signature, (Signature{2, 1, 1}));
  EXPECT_EQ(r.span_signature, (Signature{2, 1, 0}));
  EXPECT_TRUE(r.weakly_hyperbolic);
  // its edges are affine dihedral faces, so every proper facial subsystem is finite or affine
  EXPECT_TRUE(r.hyperbolic);
  EXPECT_FALSE(r.compact_hyperbolic);
}

TEST(Classify, ReducibleWeaklyHyperbolic) {
  // D15 ⊕ A1
  Rational h(-3, 2);
  auto g = gram<Rational>({{1, h, 0}, {h, 1, 0}, {0, 0, 1}});
  auto sys = realize_ambient(g, {});
  auto r = classify(sys);
  EXPECT_FALSE(r.irreducible);
  EXPECT_TRUE(r.weakly_hyperbolic);
  int non_finite = 0;
  for (const auto& c : r.components) non_finite += c.type != ComponentType::Finite;
  EXPECT_EQ(non_finite, 1);
}

TEST(Classify, HyperbolicQuadricInsideSimplex) {
  auto h = h334();
  auto sphere = transverse_form(h, FormMode::Sphere);
  std::vector<std::size_t> all{0, 1, 2};
  auto simple = normalized_simple_roots(h, sphere);
  auto samples = sample_isotropic(h, all, sphere, 200);
  ASSERT_EQ(samples.size(), 200u);
  for (const auto& p : samples) EXPECT_LE(lp::hull_residual(simple, p), kTauHull);
}

TEST(Classify, WeaklyHyperbolicLimitRootsAreExtreme) {
  for (auto sys : {u3<double>(), h334()}) {
    auto sphere = transverse_form(sys, FormMode::Sphere);
    auto e2 = dihedral_limit_roots(sys, sphere, 3);
    ASSERT_FALSE(e2.empty());
    // Neighbouring limit roots can be closer than 1e-3, putting them within
    // τ_hull of the chord of their neighbours; strict convexity shows at 1e-13.
    EXPECT_EQ(extreme_points(e2, 1e-13).size(), e2.size());
  }
}

TEST(Classify, SubsetReports) {
  auto u = u3<Rational>();
  auto pair = classify(u, {0, 1});
  EXPECT_EQ(pair.type, ComponentType::Indefinite);
  EXPECT_TRUE(pair.hyperbolic);
  auto single = classify(u, {2});
  EXPECT_EQ(single.type, ComponentType::Finite);
}
