#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace rootgeom;
using namespace fixtures;

TEST(TransverseForm, SumAndSphere) {
  auto d = d15<Rational>();
  auto sum = sum_form(d);
  EXPECT_EQ(sum.coeffs, (Point{1, 1}));

  auto u = u3<Rational>();
  auto sphere = transverse_form(u, FormMode::Sphere);
  double phi0 = sphere(u.simple_point(0));
  EXPECT_NEAR(phi0, 1.0, 1e-12);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_NEAR(sphere(u.simple_point(i)), phi0, 1e-12);

  EXPECT_THROW(transverse_form(a2aff<Rational>(), FormMode::Sphere), Error);
  try {
    transverse_form(a2aff<Rational>(), FormMode::Sphere);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWeaklyHyperbolic);
  }
}

TEST(TransverseForm, CustomMustBePositive) {
  auto d = d15<Rational>();
  EXPECT_NO_THROW(transverse_form(d, FormMode::Custom, {2, 1}));
  EXPECT_THROW(transverse_form(d, FormMode::Custom, {1, -1}), Error);
}

TEST(Normalize, Examples) {
  auto form = sum_form(d15<Rational>());
  auto p = normalize(Point{3, 1}, form);
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  auto q = normalize(Point{8, 3}, form);
  EXPECT_NEAR(q[0], 8.0 / 11, 1e-15);
  EXPECT_NEAR(q[1], 3.0 / 11, 1e-15);
  try {
    normalize(Point{1, -1}, form);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OnDirectionHyperplane);
  }
}

TEST(NormalizedRoot, HugeExactCoordinatesStayFinite) {
  auto d = d15<Rational>();
  BigInt g = pow(BigInt(10), 400);
  Vec<Rational> big{Rational(g), Rational(g * 3)};
  auto p = normalized_root<Rational>(d, sum_form(d), big);
  EXPECT_NEAR(p[0], 0.25, 1e-12);
}

TEST(ActWord, Examples) {
  auto aff = aff2<Rational>();
  auto form = sum_form(aff);
  Point beta{0, 1};
  std::vector<std::size_t> none, s_alpha{0};
  EXPECT_EQ(act_word(aff, form, none, beta), beta);
  auto img = act_word(aff, form, s_alpha, beta);
  EXPECT_NEAR(img[0], 2.0 / 3, 1e-15);
  EXPECT_NEAR(img[1], 1.0 / 3, 1e-15);

  auto d = d15<Rational>();
  Point x{(5 + kSqrt5) / 10, (5 - kSqrt5) / 10};
  auto y = act_word(d, sum_form(d), s_alpha, x);
  EXPECT_NEAR(y[0], (5 - kSqrt5) / 10, 1e-12);
  EXPECT_NEAR(y[1], (5 + kSqrt5) / 10, 1e-12);
}

TEST(ActWord, LeavesDomain) {
  auto d = d15<Rational>();
  std::vector<std::size_t> s_alpha{0};
  try {
    act_word(d, sum_form(d), s_alpha, Point{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LeavesDomain);
  }
}

TEST(ActWord, ComposesAndPreservesSign) {
  auto sys = u3<double>();
  auto form = sum_form(sys);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  std::uniform_int_distribution<std::size_t> letter(0, 2);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Point x{w(rng), w(rng), w(rng)};
    x = normalize(x, form);
    std::vector<std::size_t> w1{letter(rng), letter(rng)}, w2{letter(rng)};
    std::vector<std::size_t> both = w1;
    both.insert(both.end(), w2.begin(), w2.end());
    Point lhs, rhs;
    try {
      lhs = act_word(sys, form, both, x);
      rhs = act_word(sys, form, w1, act_word(sys, form, w2, x));
    } catch (const Error&) {
      continue;
    }
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(lhs[k], rhs[k], 1e-9);
    double before = bilinear<double>(sys.form_double(), x, x);
    double after = bilinear<double>(sys.form_double(), lhs, lhs);
    if (std::abs(before) > 1e-9) {
      EXPECT_EQ(before > 0, after > 0);
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Visible, Examples) {
  auto d = d15<double>();
  Point a{1, 0}, b{0, 1};
  auto x = u_Q<double>(d.form(), a, b);
  EXPECT_TRUE(visible(d, x, a));
  EXPECT_FALSE(visible(d, x, b));
  auto aff = aff2<double>();
  EXPECT_TRUE(visible(aff, Point{0.5, 0.5}, a));
}

TEST(SampleIsotropic, SphereFormGivesRoundCircle) {
  auto u = u3<Rational>();
  auto form = transverse_form(u, FormMode::Sphere);
  std::vector<std::size_t> all{0, 1, 2};
  auto pts = sample_isotropic(u, all, form, 64);
  ASSERT_EQ(pts.size(), 64u);
  // φ(e) = −⟨e,e⟩ = 1, so the unit axis is its own normalization
  auto c = perron_axis(u, all);
  EXPECT_NEAR(form(c), 1.0, 1e-12);
  EXPECT_NEAR(c[0], c[1], 1e-12);
  EXPECT_NEAR(c[1], c[2], 1e-12);
  double r0 = euclidean_distance(pts[0], c);
  for (const auto& p : pts) {
    EXPECT_NEAR(euclidean_distance(p, c), r0, 1e-9);
    EXPECT_NEAR(bilinear<double>(u.form_double(), p, p), 0.0, 1e-9);
  }
}
