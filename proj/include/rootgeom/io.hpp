#pragma once

// System documents (JSON), their validation into root systems, and JSON
// emission helpers shared by the CLI.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rootgeom/universal.hpp"

namespace rootgeom {

using Json = nlohmann::ordered_json;

/// A document number: exact when written as an integer or a "p/q" /
/// decimal string, binary64 when written as a JSON fraction.
struct Number {
  bool exact = true;
  Rational q = 0;
  double d = 0;

  static Number of(Rational r) { return {true, r, r.convert_to<double>()}; }
  static Number of(double x) { return {false, 0, x}; }
  double value() const { return exact ? q.convert_to<double>() : d; }
  bool operator==(const Number& o) const { return exact == o.exact && (exact ? q == o.q : d == o.d); }
};

/// Coxeter label m_ij; m = 0 on the diagonal.
struct Label {
  long m = 0;
  bool infinite = false;
  std::optional<Number> weight;  // ⟨α_i,α_j⟩ for an infinite bond, <= -1
  bool operator==(const Label&) const = default;
};

struct SystemDocument {
  std::optional<std::vector<std::vector<Number>>> gram;
  std::optional<std::vector<std::vector<Label>>> labels;
  std::vector<Relation> relations;
  std::vector<std::string> names;
  std::optional<FormMode> transverse;  // absent: sum
  std::vector<double> custom;          // coefficients when transverse = custom
  bool operator==(const SystemDocument&) const = default;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::SchemaError, "at " + path + ": " + what);
}

inline Number parse_number(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Number::of(Rational(j.get<long long>()));
  if (j.is_number_float()) return Number::of(j.get<double>());
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (!r) schema(path, "cannot read '" + j.get<std::string>() + "' as a rational number");
    return Number::of(*r);
  }
  schema(path, "expected a number or a \"p/q\" string");
}

inline Rational parse_exact(const Json& j, const std::string& path) {
  auto n = parse_number(j, path);
  if (!n.exact) schema(path, "relation coefficients must be integers or \"p/q\" strings");
  return n.q;
}

inline Label parse_label(const Json& j, const std::string& path) {
  Label l;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s != "inf" && s != "∞") schema(path, "label strings must be \"inf\"");
    l.infinite = true;
    return l;
  }
  if (j.is_object()) {
    if (!j.contains("weight") || j.size() != 1) schema(path, "label objects must be {\"weight\": c}");
    l.infinite = true;
    l.weight = parse_number(j["weight"], path + "/weight");
    if (l.weight->value() > -1 + kTauEq) schema(path + "/weight", "weight of an infinite bond must be <= -1");
    return l;
  }
  if (!j.is_number_integer()) schema(path, "labels must be integers, \"inf\" or {\"weight\": c}");
  l.m = j.get<long>();
  return l;
}

template <class F>
auto parse_matrix(const Json& j, const std::string& path, F&& entry) {
  using E = decltype(entry(j, path));
  if (!j.is_array() || j.empty()) schema(path, "expected a non-empty array of rows");
  std::vector<std::vector<E>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != j.size()) schema(rp, "rows must be arrays of length " + std::to_string(j.size()));
    std::vector<E> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(entry(j[r][c], rp + "/" + std::to_string(c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Number label_to_entry(const Label& l) {
  if (l.infinite) return l.weight ? *l.weight : Number::of(Rational(-1));
  if (l.m == 2) return Number::of(Rational(0));
  if (l.m == 3) return Number::of(Rational(-1, 2));
  return Number::of(-std::cos(std::numbers::pi / double(l.m)));
}

}  // namespace detail

/// Parses and schema-checks a system document. Axioms are not checked here.
inline SystemDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) detail::schema("/", "the document must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "gram" && key != "labels" && key != "relations" && key != "names" && key != "transverse")
      detail::schema("/" + key, "unknown key");
  SystemDocument doc;
  if (j.contains("gram") == j.contains("labels")) detail::schema("/", "exactly one of \"gram\" and \"labels\" is required");
  if (j.contains("gram")) doc.gram = detail::parse_matrix(j["gram"], "/gram", detail::parse_number);
  if (j.contains("labels")) {
    doc.labels = detail::parse_matrix(j["labels"], "/labels", detail::parse_label);
    auto& l = *doc.labels;
    for (std::size_t r = 0; r < l.size(); ++r)
      for (std::size_t c = 0; c < l.size(); ++c) {
        const auto p = "/labels/" + std::to_string(r) + "/" + std::to_string(c);
        if (r == c && (l[r][c].infinite || (l[r][c].m != 0 && l[r][c].m != 1))) detail::schema(p, "diagonal labels must be 0");
        if (r != c && !l[r][c].infinite && l[r][c].m < 2) detail::schema(p, "off-diagonal labels must be >= 2 or \"inf\"");
        if (!(l[r][c] == l[c][r])) detail::schema(p, "labels must be symmetric");
      }
  }
  const std::size_t n = doc.gram ? doc.gram->size() : doc.labels->size();
  if (j.contains("relations")) {
    const auto& rel = j["relations"];
    if (!rel.is_array()) detail::schema("/relations", "expected an array of vectors");
    for (std::size_t r = 0; r < rel.size(); ++r) {
      const auto rp = "/relations/" + std::to_string(r);
      if (!rel[r].is_array() || rel[r].size() != n) detail::schema(rp, "relation must have length " + std::to_string(n));
      Relation v;
      for (std::size_t c = 0; c < n; ++c) v.push_back(detail::parse_exact(rel[r][c], rp + "/" + std::to_string(c)));
      doc.relations.push_back(std::move(v));
    }
  }
  if (j.contains("names")) {
    const auto& nm = j["names"];
    if (!nm.is_array() || nm.size() != n) detail::schema("/names", "expected " + std::to_string(n) + " strings");
    for (std::size_t k = 0; k < n; ++k) {
      if (!nm[k].is_string()) detail::schema("/names/" + std::to_string(k), "expected a string");
      doc.names.push_back(nm[k].get<std::string>());
    }
  }
  if (j.contains("transverse")) {
    const auto& t = j["transverse"];
    if (t == "sum") {
      doc.transverse = FormMode::Sum;
    } else if (t == "sphere") {
      doc.transverse = FormMode::Sphere;
    } else if (t.is_array()) {
      doc.transverse = FormMode::Custom;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (!t[k].is_number()) detail::schema("/transverse/" + std::to_string(k), "expected a number");
        doc.custom.push_back(t[k].get<double>());
      }
    } else {
      detail::schema("/transverse", "expected \"sum\", \"sphere\" or a coefficient list");
    }
  }
  return doc;
}

/// Gram entries of the document (labels translated).
inline std::vector<std::vector<Number>> gram_entries(const SystemDocument& doc) {
  if (doc.gram) return *doc.gram;
  std::vector<std::vector<Number>> g;
  for (std::size_t r = 0; r < doc.labels->size(); ++r) {
    std::vector<Number> row;
    for (std::size_t c = 0; c < doc.labels->size(); ++c)
      row.push_back(r == c ? Number::of(Rational(1)) : detail::label_to_entry((*doc.labels)[r][c]));
    g.push_back(std::move(row));
  }
  return g;
}

inline bool exact_mode(const SystemDocument& doc) {
  for (const auto& row : gram_entries(doc))
    for (const auto& x : row)
      if (!x.exact) return false;
  return true;
}

template <Scalar T>
GramMatrix<T> gram_of(const SystemDocument& doc) {
  auto e = gram_entries(doc);
  GramMatrix<T> g(e.size(), e.size());
  for (std::size_t r = 0; r < e.size(); ++r)
    for (std::size_t c = 0; c < e.size(); ++c) {
      if constexpr (scalar_traits<T>::exact)
        g(r, c) = e[r][c].q;
      else
        g(r, c) = e[r][c].value();
    }
  return g;
}

inline std::string describe(const Diagnostic& d) {
  std::string s = d.code + ": " + d.message;
  if (d.i >= 0) s += " (" + std::to_string(d.i) + (d.j >= 0 ? "," + std::to_string(d.j) : "") + ")";
  return s;
}

/// Validates the document and realizes it in the ambient space.
template <Scalar T>
RootSystem<T> build_system(const SystemDocument& doc) {
  auto g = gram_of<T>(doc);
  auto v = validate_simple_system(g, doc.relations);
  if (!v.ok()) {
    std::string msg;
    for (const auto& d : v.issues) msg += (msg.empty() ? "" : "; ") + describe(d);
    bool shape = std::any_of(v.issues.begin(), v.issues.end(), [](auto& d) { return d.code == "Shape"; });
    fail(shape ? ErrorCode::SchemaError : ErrorCode::AxiomError, msg);
  }
  return realize_ambient(g, doc.relations, doc.names);
}

using AnySystem = std::variant<RootSystem<Rational>, RootSystem<double>>;

inline AnySystem build_any(const SystemDocument& doc) {
  if (exact_mode(doc)) return build_system<Rational>(doc);
  return build_system<double>(doc);
}

/// parse_document followed by axiom validation.
inline SystemDocument parse_system(std::string_view text) {
  auto doc = parse_document(text);
  std::visit([](auto&&) {}, build_any(doc));
  return doc;
}

template <Scalar T>
TransverseForm document_form(const RootSystem<T>& sys, const SystemDocument& doc) {
  FormMode m = doc.transverse.value_or(FormMode::Sum);
  return transverse_form(sys, m, m == FormMode::Custom ? doc.custom : Point{});
}

// ---------------------------------------------------------------------------
// Serialization

inline Json number_json(const Number& n) {
  if (!n.exact) return n.d;
  if (denominator(n.q) == 1) {
    BigInt num = numerator(n.q);
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
      return num.convert_to<long long>();
  }
  return format_rational(n.q);
}

inline Json serialize(const SystemDocument& doc) {
  Json j = Json::object();
  if (doc.gram) {
    Json g = Json::array();
    for (const auto& row : *doc.gram) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(number_json(x));
      g.push_back(std::move(r));
    }
    j["gram"] = std::move(g);
  } else {
    Json g = Json::array();
    for (const auto& row : *doc.labels) {
      Json r = Json::array();
      for (const auto& l : row) {
        if (!l.infinite)
          r.push_back(l.m);
        else if (l.weight)
          r.push_back(Json{{"weight", number_json(*l.weight)}});
        else
          r.push_back("inf");
      }
      g.push_back(std::move(r));
    }
    j["labels"] = std::move(g);
  }
  if (!doc.relations.empty()) {
    Json rel = Json::array();
    for (const auto& v : doc.relations) {
      Json r = Json::array();
      for (const auto& x : v) r.push_back(number_json(Number::of(x)));
      rel.push_back(std::move(r));
    }
    j["relations"] = std::move(rel);
  }
  if (!doc.names.empty()) j["names"] = doc.names;
  if (doc.transverse) {
    if (*doc.transverse == FormMode::Custom)
      j["transverse"] = doc.custom;
    else
      j["transverse"] = to_string(*doc.transverse);
  }
  return j;
}

/// Rounds to 12 significant digits; used for every reported float.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

inline Json point_json(std::span<const double> p) {
  Json a = Json::array();
  for (double x : p) a.push_back(round12(x));
  return a;
}

template <Scalar T>
Json scalar_json(const T& x) {
  if constexpr (scalar_traits<T>::exact)
    return number_json(Number::of(x));
  else
    return round12(x);
}

template <Scalar T>
Json coords_json(std::span<const T> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

inline Json cloud_json(const PointCloud& c) {
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = round12(v);
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json{{"coords", point_json(p.coords)}, {"tag", p.tag}, {"depth", p.depth}});
  return Json{{"size", c.size()}, {"params", params}, {"points", pts}};
}

inline Json signature_json(const Signature& s) {
  return Json{{"p", s.positive}, {"q", s.negative}, {"z", s.zero}};
}

inline Json type_report_json(const TypeReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back(Json{{"indices", c.indices}, {"type", to_string(c.type)}, {"signature", signature_json(c.signature)}});
  return Json{{"type", to_string(r.type)},
              {"irreducible", r.irreducible},
              {"signature", signature_json(r.signature)},
              {"span_signature", signature_json(r.span_signature)},
              {"weakly_hyperbolic", r.weakly_hyperbolic},
              {"hyperbolic", r.hyperbolic},
              {"compact_hyperbolic", r.compact_hyperbolic},
              {"components", comps}};
}

}  // namespace rootgeom
