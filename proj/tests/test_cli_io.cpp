#include <gtest/gtest.h>

#include <cstdio>
#include <random>
#include <regex>
#include <sstream>
#include <sys/wait.h>

#include "rootgeom/cli.hpp"
#include "support.hpp"

using namespace rootgeom;
using namespace fixtures;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

ErrorCode parse_error_code(std::string_view text) {
  try {
    parse_system(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;  // sentinel: nothing thrown
}

SystemDocument random_document(std::mt19937& rng) {
  std::uniform_int_distribution<int> size(2, 5), coin(0, 1), pick(0, 4), small(2, 9);
  SystemDocument doc;
  const int n = size(rng);
  if (coin(rng)) {
    std::vector<std::vector<Label>> l(n, std::vector<Label>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Label x;
        switch (pick(rng)) {
          case 0: x.infinite = true; break;
          case 1:
            x.infinite = true;
            x.weight = Number::of(Rational(-small(rng), 1) / 1);
            break;
          default: x.m = small(rng);
        }
        l[i][j] = l[j][i] = x;
      }
    doc.labels = l;
  } else {
    std::vector<std::vector<Number>> g(n, std::vector<Number>(n, Number::of(Rational(1))));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Number x;
        switch (pick(rng)) {
          case 0: x = Number::of(Rational(-1, 2)); break;
          case 1: x = Number::of(Rational(-small(rng) - 1, 2)); break;
          case 2: x = Number::of(-std::cos(3.141592653589793 / small(rng))); break;
          case 3: x = Number::of(Rational(0)); break;
          default: x = Number::of(-1.0 - std::uniform_real_distribution<double>(0, 3)(rng));
        }
        g[i][j] = g[j][i] = x;
      }
    doc.gram = g;
  }
  if (coin(rng)) {
    Relation r(n, 0);
    r[0] = 1;
    r[1] = -1;
    doc.relations.push_back(r);
  }
  if (coin(rng))
    for (int i = 0; i < n; ++i) doc.names.push_back("r" + std::to_string(i));
  if (coin(rng)) doc.transverse = coin(rng) ? FormMode::Sum : FormMode::Sphere;
  return doc;
}

}  // namespace

TEST(Parse, Examples) {
  auto d = parse_system(R"({"gram": [[1,"-3/2"],["-3/2",1]]})");
  EXPECT_TRUE(exact_mode(d));
  EXPECT_EQ(gram_of<Rational>(d), d15<Rational>().gram());

  auto h = parse_system(R"({"labels": [[0,3,3],[3,0,4],[3,4,0]]})");
  EXPECT_FALSE(exact_mode(h));
  auto g = gram_of<double>(h);
  EXPECT_NEAR(g(0, 1), -0.5, 1e-15);
  EXPECT_NEAR(g(1, 2), -std::sqrt(2.0) / 2, 1e-15);

  EXPECT_EQ(parse_error_code(R"({"gram": [[1,-0.7],[-0.7,1]]})"), ErrorCode::AxiomError);
}

TEST(Parse, Diagnostics) {
  try {
    parse_system("{\"gram\": [[1, 2],\n [2, 1]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  try {
    parse_system(R"({"gram": [[1,0],[0,1]], "colour": 3})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("/colour"), std::string::npos);
  }
  EXPECT_EQ(parse_error_code(R"({"gram": [[1,0],[0,1]], "labels": [[0,3],[3,0]]})"), ErrorCode::SchemaError);
  EXPECT_EQ(parse_error_code(R"({"labels": [[0,1],[1,0]]})"), ErrorCode::SchemaError);
  EXPECT_EQ(parse_error_code(R"({"labels": [[0,{"weight":-0.5}],[{"weight":-0.5},0]]})"), ErrorCode::SchemaError);
  EXPECT_EQ(parse_error_code(R"({"gram": [[1,"-1/0"],["-1/0",1]]})"), ErrorCode::SchemaError);
}

TEST(Parse, LabelsTranslate) {
  auto a = parse_system(R"({"labels": [[0,"inf"],["inf",0]]})");
  EXPECT_EQ(gram_of<Rational>(a), aff2<Rational>().gram());
  auto w = parse_system(R"({"labels": [[0,{"weight":"-3/2"}],[{"weight":"-3/2"},0]]})");
  EXPECT_EQ(gram_of<Rational>(w), d15<Rational>().gram());
  auto two = parse_system(R"({"labels": [[0,2],[2,0]]})");
  EXPECT_EQ(gram_of<Rational>(two)(0, 1), 0);
}

TEST(Parse, FixturesRoundTrip) {
  for (const char* name : {"fix_fin3.json", "fix_aff2.json", "fix_d15.json", "fix_u3.json", "fix_a2aff.json",
                           "fix_h334.json", "fix_quad.json"}) {
    auto doc = parse_system(read(name));
    EXPECT_EQ(parse_document(serialize(doc).dump()), doc) << name;
  }
}

TEST(Parse, RandomRoundTrip) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 500; ++t) {
    auto doc = random_document(rng);
    auto text = serialize(doc).dump(t % 2 ? 2 : -1);
    EXPECT_EQ(parse_document(text), doc) << text;
  }
}

TEST(Cli, ClassifyUniversal) {
  auto r = invoke({"classify", path("fix_u3.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["report"]["weakly_hyperbolic"], true);
  EXPECT_EQ(j["report"]["hyperbolic"], false);
}

TEST(Cli, LimitsDihedral) {
  auto r = invoke({"limits", path("fix_d15.json"), "--max-depth", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["cloud"]["size"], 2);
  double x = j["cloud"]["points"][0]["coords"][0];
  EXPECT_NEAR(x, (5 - kSqrt5) / 10, 1e-11);
}

TEST(Cli, DominanceAffine) {
  auto r = invoke({"dominance", path("fix_aff2.json"), "1,0", "2,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["dominates"], true);
}

TEST(Cli, NumbersUseTwelveDigits) {
  auto r = invoke({"limits", path("fix_d15.json"), "--max-depth", "2"});
  std::regex long_number(R"(\d\.\d{13,})");
  EXPECT_FALSE(std::regex_search(r.out, long_number));
}

TEST(Cli, ExitCodes) {
  auto usage = invoke({"frobnicate", path("fix_u3.json")});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(usage.json()["error"]["code"], "UsageError");

  auto missing = invoke({"classify", "/nonexistent/system.json"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.json()["error"]["code"], "IoError");

  auto empty_k = invoke({"cone", path("fix_fin3.json")});
  EXPECT_EQ(empty_k.code, 1);
  EXPECT_EQ(empty_k.json()["error"]["code"], "EmptyK");
  EXPECT_FALSE(empty_k.err.empty());

  auto rank = invoke({"render", path("fix_d15.json")});
  EXPECT_EQ(rank.json()["error"]["code"], "UnsupportedRank");

  auto not_root = invoke({"dominance", path("fix_d15.json"), "1,-1", "1,0"});
  EXPECT_EQ(not_root.code, 1);
  EXPECT_EQ(not_root.json()["error"]["code"], "NotARoot");

  auto bad_form = invoke({"limits", path("fix_u3.json"), "--form", "torus"});
  EXPECT_EQ(bad_form.code, 2);
}

TEST(Cli, EveryCommandOnUniversal) {
  for (const auto& name : command_names()) {
    std::vector<std::string> args{name, path("fix_u3.json")};
    if (name == "orbit") args.insert(args.end(), {"--point", "uq:1,2"});
    auto r = invoke(args);
    EXPECT_EQ(r.code, 0) << name << ": " << r.err;
    if (name != "render") {
      EXPECT_NO_THROW(Json::parse(r.out)) << name;
    }
  }
}

TEST(Cli, BinaryExitCode) {
  std::string cmd = std::string(ROOTGEOM_CLI) + " classify " + path("fix_fin3.json") + " > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  cmd = std::string(ROOTGEOM_CLI) + " cone " + path("fix_fin3.json") + " > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 1);
  cmd = std::string(ROOTGEOM_CLI) + " nope > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 2);
}

TEST(Svg, DeterministicAndLayered) {
  auto u = u3<Rational>();
  auto form = sum_form(u);
  RenderLayers layers;
  layers.simplex = layers.conic = true;
  for (const auto& r : enumerate_roots(u, 4).roots)
    layers.roots.push_back({normalized_root<Rational>(u, form, r.coords), r.depth});
  for (const auto& t : imaginary_orbit(u, form, 3).tiles) layers.polygons.push_back(t.vertices);
  auto a = render_svg(u, form, layers), b = render_svg(u, form, layers);
  EXPECT_EQ(a, b);
  for (const char* g : {"id=\"axes\"", "id=\"tiles\"", "id=\"simplex\"", "id=\"conic\"", "id=\"roots\""})
    EXPECT_NE(a.find(g), std::string::npos) << g;
  std::size_t circles = 0;
  for (auto p = a.find("<circle"); p != std::string::npos; p = a.find("<circle", p + 1)) ++circles;
  EXPECT_EQ(circles, layers.roots.size());
  EXPECT_EQ(a.find("-0.0000"), std::string::npos);
}

TEST(Svg, EmptyLayersDrawAxesOnly) {
  auto h = h334();
  auto svg = render_svg(h, sum_form(h), RenderLayers{});
  EXPECT_NE(svg.find("id=\"axes\""), std::string::npos);
  EXPECT_EQ(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<polygon"), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, RejectsRankTwo) {
  auto d = d15<Rational>();
  EXPECT_THROW(render_svg(d, sum_form(d), RenderLayers{}), Error);
}

TEST(Svg, HyperbolicRootsHugTheConic) {
  // all depth-8 roots of H334 lie within 0.15 of Q̂
  auto h = h334();
  auto form = sum_form(h);
  auto sphere = transverse_form(h, FormMode::Sphere);
  std::vector<std::size_t> all{0, 1, 2};
  std::vector<Point> conic;
  for (auto& p : sample_isotropic(h, all, sphere, 4000)) conic.push_back(normalize(p, form));
  for (const auto& r : enumerate_roots(h, 8).roots) {
    if (r.depth != 8) continue;
    auto x = normalized_root<double>(h, form, r.coords);
    double best = 1e9;
    for (const auto& c : conic) best = std::min(best, euclidean_distance(x, c));
    EXPECT_LE(best, 0.15);
  }
}
