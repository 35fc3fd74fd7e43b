#pragma once

// The rootgeom command surface. run_command is kept free of process state so
// that tests can drive it with string streams.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rootgeom/io.hpp"
#include "rootgeom/svg.hpp"

namespace rootgeom {

struct CliOptions {
  std::string command;
  std::string system;
  std::vector<std::string> roots;
  int max_depth = -1;
  int word_length = -1;
  std::string point;
  std::string big_n;
  std::string out;
  std::uint64_t seed = 0;
  double tolerance = kTauEq;
  std::size_t samples = 64;
  std::string form;
};

namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  auto r = parse_rational(s);
  if (r) return r->convert_to<double>();
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::UsageError, "cannot read '" + s + "' as a number for " + what);
}

template <Scalar T>
Vec<T> parse_coords(const std::string& text, std::size_t n) {
  auto parts = split(text);
  if (parts.size() != n) fail(ErrorCode::UsageError, "'" + text + "' must have " + std::to_string(n) + " entries");
  Vec<T> v;
  for (const auto& p : parts) {
    if constexpr (scalar_traits<T>::exact) {
      auto r = parse_rational(p);
      if (!r) fail(ErrorCode::UsageError, "cannot read '" + p + "' as a rational number");
      v.push_back(*r);
    } else {
      v.push_back(parse_double(p, "a coordinate"));
    }
  }
  return v;
}

template <Scalar T>
Json signed_root_json(const SignedRoot<T>& r) {
  return Json{{"coords", coords_json<T>(r.value())}, {"negative", r.negative}, {"depth", r.depth}};
}

template <Scalar T>
Json step_json(const CondensationStep<T>& s) {
  return Json{{"i", s.i},
              {"j", s.j},
              {"n", s.n},
              {"lambda", round12(s.lambda)},
              {"alpha_i", coords_json<T>(s.alpha_i)},
              {"alpha_j", coords_json<T>(s.alpha_j)},
              {"beta_i", coords_json<T>(s.beta_i)},
              {"beta_j", coords_json<T>(s.beta_j)},
              {"product", scalar_json(s.product)}};
}

inline Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

inline int depth_or(const CliOptions& o, int fallback) { return o.max_depth >= 0 ? o.max_depth : fallback; }
inline int length_or(const CliOptions& o, int fallback) { return o.word_length >= 0 ? o.word_length : fallback; }

/// --point: comma-separated ambient coordinates (normalized by φ), or
/// "uq:i,j" for u_Q(α̂_i, α̂_j) with 1-based indices.
template <Scalar T>
Point parse_point(const RootSystem<T>& sys, const TransverseForm& form, const std::string& text) {
  if (text.rfind("uq:", 0) == 0) {
    auto idx = split(text.substr(3));
    if (idx.size() != 2) fail(ErrorCode::UsageError, "uq: needs two indices");
    std::size_t i = 0, j = 0;
    try {
      i = std::stoul(idx[0]);
      j = std::stoul(idx[1]);
    } catch (const std::exception&) {
      fail(ErrorCode::UsageError, "uq: indices must be integers");
    }
    if (i < 1 || j < 1 || i > sys.rank() || j > sys.rank() || i == j)
      fail(ErrorCode::UsageError, "uq: indices must be distinct and in 1..rank");
    auto simple = normalized_simple_roots(sys, form);
    return u_Q<double>(sys.form_double(), simple[i - 1], simple[j - 1]);
  }
  auto parts = split(text);
  if (parts.size() != sys.ambient_dim())
    fail(ErrorCode::UsageError, "--point needs " + std::to_string(sys.ambient_dim()) + " ambient coordinates");
  Point p;
  for (const auto& s : parts) p.push_back(parse_double(s, "--point"));
  return normalize(p, form);
}

/// Default point for orbit checks: an isotropic point on the first edge
/// whose line meets Q̂.
template <Scalar T>
Point default_point(const RootSystem<T>& sys, const TransverseForm& form) {
  auto simple = normalized_simple_roots(sys, form);
  for (std::size_t i = 0; i < sys.rank(); ++i)
    for (std::size_t j = i + 1; j < sys.rank(); ++j)
      if (le(sys.gram()(i, j), T(-1))) return u_Q<double>(sys.form_double(), simple[i], simple[j]);
  fail(ErrorCode::PreconditionFailed, "no pair of simple roots spans a line meeting Q̂");
}

template <Scalar T>
Json run_typed(const RootSystem<T>& sys, const SystemDocument& doc, const CliOptions& o, int& status) {
  TransverseForm form = o.form.empty() ? document_form(sys, doc)
                                       : transverse_form(sys, o.form == "sphere" ? FormMode::Sphere : FormMode::Sum);
  const std::string& c = o.command;
  Json j = Json::object();
  j["command"] = c;
  j["mode"] = scalar_traits<T>::exact ? "exact" : "float";
  j["form"] = to_string(form.mode);

  if (c == "classify") {
    j["report"] = type_report_json(classify(sys));
  } else if (c == "roots") {
    int d = depth_or(o, 4);
    auto en = enumerate_roots(sys, d);
    Json roots = Json::array();
    for (const auto& r : en.roots)
      roots.push_back(Json{{"coords", coords_json<T>(r.coords)},
                           {"depth", r.depth},
                           {"witness", r.witness},
                           {"normalized", point_json(normalized_root<T>(sys, form, r.coords))}});
    Json edges = Json::array();
    for (const auto& e : en.edges)
      edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"simple", e.simple},
                           {"kind", e.kind == EdgeKind::Short ? "short" : "long"}});
    j["max_depth"] = d;
    j["count"] = en.roots.size();
    j["roots"] = roots;
    j["edges"] = edges;
  } else if (c == "limits") {
    int d = depth_or(o, 4);
    j["max_depth"] = d;
    j["cloud"] = cloud_json(dihedral_limit_roots(sys, form, d));
  } else if (c == "elementary") {
    int d = depth_or(o, 3);
    Json sigma = Json::array();
    for (const auto& r : elementary_roots(sys)) sigma.push_back(coords_json<T>(r));
    auto sets = limit_point_sets(sys, form, d);
    j["max_depth"] = d;
    j["count"] = sigma.size();
    j["elementary_roots"] = sigma;
    j["limit_points"] = Json{{"elementary", cloud_json(sets.elementary)},
                             {"fundamental", cloud_json(sets.fundamental)},
                             {"covers", cloud_json(sets.covers)},
                             {"fundamental_covers", cloud_json(sets.fundamental_covers)},
                             {"fundamental_covers_in_elementary", sets.fcov_in_elem},
                             {"fundamental_covers_equal_fundamental_and_covers", sets.fcov_equals_f_cap_cov}};
  } else if (c == "dominance") {
    if (o.roots.size() == 2) {
      auto rho = signed_root_from(sys, parse_coords<T>(o.roots[0], sys.rank()));
      auto gamma = signed_root_from(sys, parse_coords<T>(o.roots[1], sys.rank()));
      j["rho"] = signed_root_json(rho);
      j["gamma"] = signed_root_json(gamma);
      j["dominates"] = dominates(sys, rho, gamma);
      if (!rho.negative && !gamma.negative)
        j["geometric"] = dominates_geometric<T>(sys, rho.coords, gamma.coords);
    } else if (o.roots.empty()) {
      int d = depth_or(o, 3);
      auto pair_json = [](const DominancePair<T>& p) {
        return Json{{"lower", signed_root_json(p.lower)}, {"upper", signed_root_json(p.upper)}, {"cover", p.cover}};
      };
      Json fund = Json::array(), covers = Json::array();
      for (const auto& p : fundamental_dominances(sys, d)) fund.push_back(pair_json(p));
      for (const auto& p : dominance_covers(sys, d)) covers.push_back(pair_json(p));
      j["max_depth"] = d;
      j["fundamental"] = fund;
      j["covers"] = covers;
    } else {
      fail(ErrorCode::UsageError, "dominance takes zero or two roots");
    }
  } else if (c == "cone") {
    int l = length_or(o, 2);
    auto k = cone_K_vertices(sys, form);
    Json hs = Json::array();
    for (const auto& h : k.halfspaces) hs.push_back(Json{{"normal", point_json(h.normal)}, {"offset", round12(h.offset)}});
    auto orbit = imaginary_orbit(sys, form, l);
    Json tiles = Json::array();
    for (const auto& t : orbit.tiles) tiles.push_back(Json{{"word", t.word}, {"vertices", points_json(t.vertices)}});
    j["word_length"] = l;
    j["K"] = Json{{"vertices", points_json(k.vertices)}, {"halfspaces", hs}};
    j["tiles"] = tiles;
    j["cloud"] = cloud_json(orbit.cloud);
  } else if (c == "faces") {
    Json faces = Json::array();
    for (const auto& f : facial_subsets(sys)) faces.push_back(Json{{"indices", f.indices}, {"dimension", f.dimension}});
    j["count"] = faces.size();
    j["facial"] = faces;
  } else if (c == "gen") {
    Json gen = Json::array();
    for (const auto& f : generating_subsets(sys)) {
      auto rep = classify(sys, f.indices);
      gen.push_back(Json{{"indices", f.indices}, {"type", rep.type == ComponentType::Affine ? "affine" : "hyperbolic"}});
    }
    j["count"] = gen.size();
    j["generating"] = gen;
  } else if (c == "fractal") {
    int l = length_or(o, 2);
    j["cloud"] = cloud_json(fractal_base_sample(sys, form, o.samples, l, o.seed));
  } else if (c == "condense") {
    double big_n = o.big_n.empty() ? 10.0 : parse_double(o.big_n, "--N");
    j["N"] = round12(big_n);
    if (o.roots.size() == 2) {
      auto a = signed_root_from(sys, parse_coords<T>(o.roots[0], sys.rank()));
      auto b = signed_root_from(sys, parse_coords<T>(o.roots[1], sys.rank()));
      auto step = condense_pair(sys, a.value(), b.value(), big_n);
      auto [ri, rj] = replay(sys, step);
      j["step"] = step_json(step);
      j["replay_matches"] = ri == step.beta_i && rj == step.beta_j;
    } else if (o.roots.empty()) {
      auto u = generic_universal_subsystem(sys, big_n, sys.rank());
      Json seed = Json::array(), roots = Json::array(), hist = Json::array(), norm = Json::array();
      for (const auto& r : u.seed) seed.push_back(coords_json<T>(r));
      for (const auto& r : u.roots) {
        roots.push_back(coords_json<T>(r));
        norm.push_back(point_json(normalized_root<T>(sys, form, r)));
      }
      for (const auto& s : u.history) hist.push_back(step_json(s));
      j["seed"] = seed;
      j["roots"] = roots;
      j["normalized"] = norm;
      j["history"] = hist;
    } else {
      fail(ErrorCode::UsageError, "condense takes zero or two roots");
    }
  } else if (c == "approx") {
    std::vector<double> ladder;
    for (const auto& s : split(o.big_n.empty() ? "1,10,100,1000" : o.big_n)) ladder.push_back(parse_double(s, "--N"));
    int d = depth_or(o, 4), l = length_or(o, 3);
    auto rep = approximation_report(sys, form, ladder, d, l);
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back(Json{{"N", round12(r.big_n)},
                          {"size", r.size},
                          {"condensations", r.condensations},
                          {"directed_to_E2", round12(r.directed)},
                          {"limit_hull_to_Z", round12(r.hull)},
                          {"points", points_json(r.points)}});
    j["max_depth"] = d;
    j["word_length"] = l;
    j["e2_size"] = rep.e2_size;
    j["z_size"] = rep.z_size;
    j["rows"] = rows;
  } else if (c == "orbit") {
    if (o.point.empty()) fail(ErrorCode::UsageError, "orbit needs --point");
    int l = length_or(o, 3);
    j["cloud"] = cloud_json(orbit_points(sys, form, parse_point(sys, form, o.point), l));
  } else if (c == "check") {
    int d = depth_or(o, 4), l = length_or(o, 3);
    Json checks = Json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, auto&& body) {
      Json entry{{"name", name}};
      try {
        body(entry);
        entry["applicable"] = true;
        all_ok = all_ok && entry["ok"].template get<bool>();
      } catch (const Error& e) {
        entry["applicable"] = false;
        entry["reason"] = std::string(code_name(e.code()));
      }
      checks.push_back(std::move(entry));
    };
    record("minimality", [&](Json& e) {
      Point x = o.point.empty() ? default_point(sys, form) : parse_point(sys, form, o.point);
      double gap = minimality_gap(sys, form, x, l, d);
      e["gap"] = round12(gap);
      e["ok"] = std::isfinite(gap);
    });
    record("faithfulness", [&](Json& e) {
      auto rep = faithfulness_check(sys, form, l, d);
      e["witnessed"] = rep.witnessed.size();
      e["unfalsified"] = rep.unfalsified;
      e["ok"] = rep.ok();
    });
    record("facial_restriction", [&](Json& e) {
      Json faces = Json::array();
      bool ok = true;
      for (const auto& f : facial_subsets(sys)) {
        if (f.indices.size() != 2) continue;
        auto rep = facial_restriction_check(sys, form, f.indices, d, o.tolerance);
        faces.push_back(Json{{"indices", f.indices},
                             {"e2_distance", round12(rep.e2_distance)},
                             {"e2_match", rep.e2_match},
                             {"sigma_match", rep.sigma_match}});
        ok = ok && rep.ok();
      }
      e["faces"] = faces;
      e["ok"] = ok;
    });
    record("decomposition", [&](Json& e) {
      auto dec = generic_decomposition(sys, form);
      std::size_t single = 0, multiple = 0, in_z = 0;
      for (const auto& r : enumerate_roots(sys, d).roots) {
        auto a = assign_region(dec, normalized_root<T>(sys, form, r.coords));
        if (!a.alpha)
          ++in_z;
        else if (a.matches == 1)
          ++single;
        else
          ++multiple;
      }
      e["single"] = single;
      e["multiple"] = multiple;
      e["in_Z"] = in_z;
      e["ok"] = multiple == 0 && in_z == 0;
    });
    j["max_depth"] = d;
    j["word_length"] = l;
    j["checks"] = checks;
    j["ok"] = all_ok;
    if (!all_ok) status = 1;
  } else {
    fail(ErrorCode::UsageError, "unknown command " + c);
  }
  return j;
}

template <Scalar T>
std::string render_typed(const RootSystem<T>& sys, const SystemDocument& doc, const CliOptions& o) {
  TransverseForm form = o.form.empty() ? document_form(sys, doc)
                                       : transverse_form(sys, o.form == "sphere" ? FormMode::Sphere : FormMode::Sum);
  RenderLayers layers;
  layers.simplex = true;
  layers.conic = true;
  for (const auto& r : enumerate_roots(sys, depth_or(o, 6)).roots)
    layers.roots.emplace_back(normalized_root<T>(sys, form, r.coords), r.depth);
  if (o.word_length >= 0) {
    try {
      for (const auto& t : imaginary_orbit(sys, form, o.word_length).tiles) layers.polygons.push_back(t.vertices);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyK) throw;
    }
  }
  return render_svg(sys, form, layers);
}

inline void emit(const CliOptions& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot write " + o.out);
  f << text;
}

inline Json error_json(std::string_view code, const std::string& message) {
  return Json{{"error", Json{{"code", code}, {"message", message}}}};
}

}  // namespace cli

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate", "classify",   "roots",   "limits", "elementary",
                                                 "dominance", "cone",      "faces",   "gen",    "fractal",
                                                 "condense",  "approx",    "orbit",   "check",  "render"};
  return names;
}

/// Runs one invocation (args exclude the program name). Returns the exit
/// code: 0 success, 1 domain error, 2 usage error.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliOptions o;
  CLI::App app{"Root systems of Coxeter groups: limit roots, imaginary cone, dominance", "rootgeom"};
  app.require_subcommand(1);
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("system", o.system, "system document (JSON)")->required();
    if (name == "dominance" || name == "condense") sub->add_option("roots", o.roots, "roots in simple-root coordinates");
    sub->add_option("--max-depth", o.max_depth, "root depth bound");
    sub->add_option("--word-length", o.word_length, "group word length bound");
    sub->add_option("--point", o.point, "ambient point or uq:i,j");
    sub->add_option("--N", o.big_n, "condensation bound or ladder");
    sub->add_option("--out", o.out, "output file");
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--tolerance", o.tolerance, "comparison tolerance");
    sub->add_option("--samples", o.samples, "samples per facial sphere");
    sub->add_option("--form", o.form, "transverse form")->check(CLI::IsMember({"sum", "sphere"}));
    sub->callback([&o, name] { o.command = name; });
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << cli::error_json("UsageError", e.what()).dump(2) << "\n";
    return 2;
  }

  try {
    auto doc = parse_document(cli::read_file(o.system));
    if (o.command == "validate") {
      Json j = Json::object();
      j["command"] = "validate";
      j["mode"] = exact_mode(doc) ? "exact" : "float";
      Json diags = Json::array();
      std::size_t rank = gram_entries(doc).size(), ambient = 0;
      auto collect = [&](auto tag) {
        using T = decltype(tag);
        auto v = validate_simple_system(gram_of<T>(doc), doc.relations);
        for (const auto& d : v.issues)
          diags.push_back(Json{{"code", d.code}, {"message", d.message}, {"i", d.i}, {"j", d.j}});
        if (v.ok()) ambient = build_system<T>(doc).ambient_dim();
      };
      if (exact_mode(doc))
        collect(Rational{});
      else
        collect(double{});
      j["valid"] = diags.empty();
      j["rank"] = rank;
      if (diags.empty()) j["ambient_dim"] = ambient;
      j["relations"] = doc.relations.size();
      j["diagnostics"] = diags;
      cli::emit(o, j.dump(2) + "\n", out);
      return diags.empty() ? 0 : 1;
    }
    auto sys = build_any(doc);
    if (o.command == "render") {
      auto svg = std::visit([&](const auto& s) { return cli::render_typed(s, doc, o); }, sys);
      cli::emit(o, svg, out);
      return 0;
    }
    int status = 0;
    Json j = std::visit([&](const auto& s) { return cli::run_typed(s, doc, o, status); }, sys);
    cli::emit(o, j.dump(2) + "\n", out);
    return status;
  } catch (const Error& e) {
    err << e.what() << "\n";
    out << cli::error_json(code_name(e.code()), e.what()).dump(2) << "\n";
    return e.code() == ErrorCode::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    out << cli::error_json("InternalError", e.what()).dump(2) << "\n";
    return 1;
  }
}

}  // namespace rootgeom
