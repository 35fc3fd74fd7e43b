#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"

using namespace rootgeom;
using namespace fixtures;

namespace {

std::vector<Point> sorted(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::set<std::vector<std::size_t>> index_sets(const std::vector<FacialSubset>& f) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& s : f) out.insert(s.indices);
  return out;
}

// One LP per point, no planar shortcut.
std::vector<Point> extreme_oracle(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != k) others.push_back(pts[j]);
    if (!lp::in_convex_hull(others, pts[k])) out.push_back(pts[k]);
  }
  return out;
}

}  // namespace

TEST(ConeK, Examples) {
  auto d = d15<Rational>();
  auto k = sorted(cone_K_vertices(d, sum_form(d)).vertices);
  ASSERT_EQ(k.size(), 2u);
  EXPECT_NEAR(k[0][0], 0.4, 1e-12);
  EXPECT_NEAR(k[1][0], 0.6, 1e-12);

  auto aff = aff2<Rational>();
  auto ka = cone_K_vertices(aff, sum_form(aff)).vertices;
  ASSERT_EQ(ka.size(), 1u);
  EXPECT_NEAR(ka[0][0], 0.5, 1e-12);

  auto f = fin3<Rational>();
  try {
    cone_K_vertices(f, sum_form(f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyK);
  }
}

TEST(ConeK, VerticesSatisfyConstraints) {
  auto check = [](const auto& sys) {
    auto form = sum_form(sys);
    for (const auto& v : cone_K_vertices(sys, form).vertices) {
      EXPECT_NEAR(form(v), 1.0, 1e-12);
      for (std::size_t i = 0; i < sys.rank(); ++i)
        EXPECT_LE(bilinear<double>(sys.form_double(), v, sys.simple_point(i)), kTauEq);
      EXPECT_LE(lp::hull_residual(normalized_simple_roots(sys, form), v), kTauHull);
    }
  };
  check(u3<Rational>());
  check(h334());
  check(quad<Rational>());
  check(a2aff<Rational>());
}

TEST(ImaginaryOrbit, Examples) {
  auto d = d15<Rational>();
  auto form = sum_form(d);
  auto z0 = imaginary_orbit(d, form, 0);
  EXPECT_EQ(z0.cloud.size(), 2u);
  auto z = imaginary_orbit(d, form, 2);
  EXPECT_EQ(z.cloud.size(), 6u);
  auto [lo, hi] = dihedral_limit_oracle(-1.5);
  for (const auto& p : z.cloud.points) {
    EXPECT_GT(p.coords[0], lo);
    EXPECT_LT(p.coords[0], hi);
  }
  auto aff = aff2<Rational>();
  EXPECT_EQ(imaginary_orbit(aff, sum_form(aff), 5).cloud.size(), 1u);
}

TEST(ImaginaryOrbit, SampleProperties) {
  for (int which = 0; which < 3; ++which) {
    auto sys = which == 0 ? u3<double>() : which == 1 ? h334() : quad<double>();
    auto form = sum_form(sys);
    const int length = 3;
    auto z = imaginary_orbit(sys, form, length).cloud;
    auto e2 = dihedral_limit_roots(sys, form, 3);
    const auto& b = sys.form_double();
    for (const auto& x : z.points)
      for (const auto& y : z.points) EXPECT_LE(bilinear<double>(b, x.coords, y.coords), kTauEq);
    // exposed faces: isotropic limit points see the whole sample on one side
    for (const auto& x : e2.points)
      for (const auto& y : z.points) EXPECT_LE(bilinear<double>(b, x.coords, y.coords), kTauEq);
    if (which == 2) continue;  // Δ dependent: ambient coordinates are not Δ-coordinates
    // Z ⊆ ∩ w(cone Δ): w⁻¹(z) keeps nonnegative coordinates
    for (const auto& el : enumerate_elements(sys, length)) {
      std::vector<std::size_t> inv(el.word.rbegin(), el.word.rend());
      for (const auto& p : z.points) {
        Point v = p.coords;
        for (auto it = inv.rbegin(); it != inv.rend(); ++it) v = reflect_point(sys, *it, v);
        for (double c : v) EXPECT_GE(c, -kTauHull);
      }
    }
  }
}

TEST(ImaginaryOrbit, HullAgreesWithLimitHull) {
  struct Case {
    RootSystem<double> sys;
    int depth, length;
  };
  for (auto& c : {Case{d15<double>(), 4, 4}, Case{u3<double>(), 4, 5}, Case{h334(), 4, 5}, Case{quad<double>(), 4, 4}}) {
    auto form = sum_form(c.sys);
    auto e = extreme_points(dihedral_limit_roots(c.sys, form, c.depth)).coords();
    auto z = extreme_points(imaginary_orbit(c.sys, form, c.length).cloud).coords();
    EXPECT_LE(hull_hausdorff(e, z), 0.05);
  }
}

TEST(ExtremePoints, Examples) {
  std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(sorted(extreme_points(line)), (std::vector<Point>{{0, 0}, {2, 2}}));
  std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  EXPECT_EQ(extreme_points(square).size(), 4u);
  std::vector<Point> one{{0.3, 0.7}};
  EXPECT_EQ(extreme_points(one).size(), 1u);
  std::vector<Point> none;
  EXPECT_THROW(extreme_points(none), Error);

  auto u = u3<Rational>();
  auto sphere = transverse_form(u, FormMode::Sphere);
  auto e2 = dihedral_limit_roots(u, sphere, 2);
  EXPECT_EQ(extreme_points(e2).size(), e2.size());
}

TEST(ExtremePoints, PlanarPathMatchesLp) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 60; ++t) {
    // planar clouds inside the simplex x+y+z = 1, plus genuinely 3-d ones
    std::vector<Point> pts;
    for (int k = 0; k < 5 + t % 20; ++k) {
      double a = u(rng), b = u(rng) * (1 - a);
      if (t % 3 == 0)
        pts.push_back({a, b, u(rng)});
      else
        pts.push_back({a, b, 1 - a - b});
    }
    EXPECT_EQ(sorted(extreme_points(pts)), sorted(extreme_oracle(pts)));
  }
}

TEST(Facial, Examples) {
  EXPECT_EQ(facial_subsets(u3<Rational>()).size(), 8u);
  EXPECT_EQ(facial_subsets(d15<Rational>()).size(), 4u);
  using S = std::set<std::vector<std::size_t>>;
  EXPECT_EQ(index_sets(facial_subsets(quad<Rational>())),
            (S{{}, {0}, {1}, {2}, {3}, {0, 1}, {0, 3}, {1, 2}, {2, 3}, {0, 1, 2, 3}}));
}

TEST(Gen, Examples) {
  using S = std::set<std::vector<std::size_t>>;
  EXPECT_EQ(index_sets(generating_subsets(u3<Rational>())), (S{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(index_sets(generating_subsets(h334())), (S{{0, 1, 2}}));
  EXPECT_EQ(index_sets(generating_subsets(a2aff<Rational>())), (S{{0, 1, 2}}));
  EXPECT_TRUE(generating_subsets(fin3<Rational>()).empty());
}

TEST(Fractal, Examples) {
  auto a = a2aff<Rational>();
  auto fa = fractal_base_sample(a, sum_form(a), 16, 3);
  ASSERT_EQ(fa.size(), 1u);
  for (double c : fa.points[0].coords) EXPECT_NEAR(c, 1.0 / 3, 1e-12);

  auto h = h334();
  auto form = sum_form(h);
  auto fh = fractal_base_sample(h, form, 16, 0);
  ASSERT_EQ(fh.size(), 16u);
  auto simple = normalized_simple_roots(h, form);
  for (const auto& p : fh.points) {
    EXPECT_NEAR(bilinear<double>(h.form_double(), p.coords, p.coords), 0.0, 1e-9);
    EXPECT_LE(lp::hull_residual(simple, p.coords), kTauHull);
  }

  auto f = fin3<Rational>();
  EXPECT_THROW(fractal_base_sample(f, sum_form(f), 16, 1), Error);
}

TEST(Fractal, SeedIsDeterministic) {
  auto u = u3<Rational>();
  auto form = sum_form(u);
  auto a = fractal_base_sample(u, form, 8, 2, 5), b = fractal_base_sample(u, form, 8, 2, 5);
  EXPECT_EQ(a.coords(), b.coords());
}

TEST(Decomposition, Examples) {
  auto u = u3<Rational>();
  auto form = sum_form(u);
  auto d = generic_decomposition(u, form);
  auto r = assign_region(d, normalize(u.simple_point(0), form));
  ASSERT_TRUE(r.alpha.has_value());
  EXPECT_EQ(*r.alpha, 0u);
  EXPECT_EQ(r.matches, 1u);
  auto bary = assign_region(d, Point{1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_FALSE(bary.alpha.has_value());
  EXPECT_EQ(bary.tag, "Z");
  for (const auto& root : enumerate_roots(u, 5).roots) {
    auto a = assign_region(d, normalized_root<Rational>(u, form, root.coords));
    EXPECT_TRUE(a.alpha.has_value());
    EXPECT_EQ(a.matches, 1u);
  }
  EXPECT_THROW(generic_decomposition(h334(), sum_form(h334())), Error);
}
