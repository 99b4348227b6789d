#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "kms/metric.hpp"
#include "kms/plumbing.hpp"
#include "kms/residues.hpp"
#include "kms/signature.hpp"

namespace kms {

using json = nlohmann::ordered_json;

enum class Format { Json, Dot, Text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "dot") return Format::Dot;
  if (s == "text") return Format::Text;
  fail(ErrorCode::UnsupportedFormat, "unknown format '" + s + "'");
}

// Accepts inline JSON or a path to a JSON file.
inline json load_json_arg(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(ErrorCode::ParseError, "empty JSON argument");
  if (arg[first] != '{' && arg[first] != '[') {
    std::ifstream in(arg);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

namespace detail {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

inline json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx parse_cplx(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::ParseError, "complex numbers are [re, im]");
}

}  // namespace detail

// ---- signatures

inline json to_json(const Signature& s) { return {{"k", s.k}, {"g", s.g}, {"mu", s.mu}}; }

inline Signature parse_signature(const json& j) {
  return validate_signature(detail::get<int>(j, "k"), detail::get<int>(j, "g"), detail::get<std::vector<int>>(j, "mu"));
}

inline json to_json(const CoverSignature& c) {
  return {{"mu_hat", c.mu_hat}, {"g_hat", c.g_hat}, {"n_hat", c.n_hat}, {"fiber_sizes", c.fiber_sizes}};
}

// ---- level graphs

inline json to_json(const LevelGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"genus", v.genus}, {"level", v.level}});
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    json ends = json::array();
    for (const auto& end : e.ends) ends.push_back({{"vertex", end.vertex}, {"kappa", end.kappa}});
    j["edges"].push_back({{"ends", ends}});
  }
  j["legs"] = json::array();
  for (const auto& l : g.legs)
    j["legs"].push_back({{"vertex", l.vertex}, {"label", l.label}, {"order", l.order}, {"kappa", l.kappa}});
  return j;
}

// Leg kappa defaults to order + k when absent.
inline LevelGraph parse_level_graph(const json& j, int k) {
  LevelGraph g;
  for (const auto& v : detail::get<json>(j, "vertices"))
    g.vertices.push_back({detail::get<int>(v, "genus"), detail::get<int>(v, "level")});
  for (const auto& e : detail::get<json>(j, "edges")) {
    auto ends = detail::get<json>(e, "ends");
    if (!ends.is_array() || ends.size() != 2) fail(ErrorCode::ParseError, "an edge has exactly two ends");
    Edge ed;
    for (int i = 0; i < 2; ++i) ed.ends[i] = {detail::get<int>(ends[i], "vertex"), detail::get<int>(ends[i], "kappa")};
    g.edges.push_back(ed);
  }
  for (const auto& l : detail::get<json>(j, "legs")) {
    Leg leg{detail::get<int>(l, "vertex"), detail::get<int>(l, "label"), detail::get<int>(l, "order"), 0};
    leg.kappa = l.contains("kappa") ? detail::get<int>(l, "kappa") : leg.order + k;
    g.legs.push_back(leg);
  }
  return g;
}

inline json to_json(const EnhancedLevelGraph& G) {
  json j = {{"stratum", to_json(G.sig())}};
  j.update(to_json(G.graph()));
  j["canonical_hash"] = short_hash(canonical_form(G));
  return j;
}

inline EnhancedLevelGraph parse_graph(const json& j) {
  Signature s = parse_signature(detail::get<json>(j, "stratum"));
  return validate_enhanced_graph(parse_level_graph(j, s.k), s);
}

// ---- covers

inline json to_json(const GraphCover& C) {
  json j;
  j["stratum"] = to_json(C.base.sig());
  json base = to_json(C.base.graph());
  j["base"] = base;
  j["base_hash"] = short_hash(canonical_form(C.base));
  j["vertex_types"] = C.vertex_types;
  j["edge_shifts"] = C.edge_shifts;
  json cg = to_json(C.cover_graph());
  for (size_t v = 0; v < C.vertices.size(); ++v) {
    cg["vertices"][v]["base"] = C.vertices[v].base;
    cg["vertices"][v]["copy"] = C.vertices[v].copy;
    cg["vertices"][v]["stab_order"] = C.vertices[v].stab_order;
  }
  for (size_t e = 0; e < C.edges.size(); ++e) {
    cg["edges"][e]["base"] = C.edges[e].base;
    cg["edges"][e]["sheet"] = C.edges[e].sheet;
  }
  for (size_t l = 0; l < C.legs.size(); ++l) {
    cg["legs"][l]["base"] = C.legs[l].base;
    cg["legs"][l]["sheet"] = C.legs[l].sheet;
  }
  j["cover_graph"] = cg;
  j["tau"] = {{"vertices", C.tau_vertex}, {"edges", C.tau_edge}, {"legs", C.tau_leg}};
  j["connected"] = C.connected();
  j["cover_hash"] = short_hash(cover_canonical_form(C));
  return j;
}

// Rebuilds the cover from base data; a supplied cover_hash must agree.
inline GraphCover parse_cover(const json& j) {
  Signature s = parse_signature(detail::get<json>(j, "stratum"));
  EnhancedLevelGraph G = validate_enhanced_graph(parse_level_graph(detail::get<json>(j, "base"), s.k), s);
  GraphCover C = build_cover(G, detail::get<std::vector<int>>(j, "vertex_types"), detail::get<std::vector<int>>(j, "edge_shifts"));
  if (j.contains("cover_hash") && j["cover_hash"].get<std::string>() != short_hash(cover_canonical_form(C)))
    fail(ErrorCode::Inconsistent, "cover_hash does not match the rebuilt cover");
  return C;
}

// ---- DOT

inline std::string to_dot(const LevelGraph& g, const std::string& name = "G") {
  std::ostringstream o;
  o << "graph " << name << " {\n  rankdir=TB;\n";
  std::map<int, std::vector<int>, std::greater<int>> by_level;
  for (size_t v = 0; v < g.vertices.size(); ++v) by_level[g.vertices[v].level].push_back(static_cast<int>(v));
  for (const auto& [lv, vs] : by_level) {
    o << "  { rank=same; // level " << lv << "\n";
    for (int v : vs) o << "    v" << v << " [label=\"g=" << g.vertices[v].genus << "\"];\n";
    o << "  }\n";
  }
  for (const auto& e : g.edges)
    o << "  v" << e.ends[0].vertex << " -- v" << e.ends[1].vertex << " [label=\"" << e.ends[0].kappa << "\"];\n";
  for (size_t i = 0; i < g.legs.size(); ++i) {
    o << "  l" << i << " [shape=plaintext,label=\"" << g.legs[i].label << ":" << g.legs[i].order << "\"];\n";
    o << "  v" << g.legs[i].vertex << " -- l" << i << ";\n";
  }
  o << "}\n";
  return o.str();
}

inline std::string export_graph(const EnhancedLevelGraph& G, Format f) {
  switch (f) {
    case Format::Json: return to_json(G).dump();
    case Format::Dot: return to_dot(G.graph());
    case Format::Text: return canonical_form(G);
  }
  fail(ErrorCode::UnsupportedFormat, "unknown format");
}

inline std::string export_cover(const GraphCover& C, Format f) {
  switch (f) {
    case Format::Json: return to_json(C).dump();
    case Format::Dot: return to_dot(C.cover_graph(), "C");
    case Format::Text: return cover_canonical_form(C);
  }
  fail(ErrorCode::UnsupportedFormat, "unknown format");
}

// Reports are JSON only.
inline std::string export_report(const json& report, Format f) {
  if (f != Format::Json) fail(ErrorCode::UnsupportedFormat, "reports are exported as JSON only");
  return report.dump();
}

// ---- reports

inline json to_json(const DimensionReport& r) {
  json levels = json::array();
  for (const auto& ld : r.per_level) levels.push_back({{"dims", ld.dims}, {"grc_rank", ld.grc_rank}, {"dim", ld.dim()}});
  return {{"levels", levels}, {"h", r.h},         {"L", r.L},
          {"total", r.total}, {"expected", r.expected}, {"pass", r.pass},
          {"grc_surrogate", r.grc_surrogate}, {"connected", r.connected}};
}

inline json to_json(const PperShape& s) {
  return {{"h", s.h}, {"levels", s.levels}, {"projective_dims", s.projective_dims}, {"total", s.total}};
}

inline json to_json(const TwistLattice& t) { return {{"L", t.L}, {"basis", t.basis}, {"det", t.det}}; }

inline json to_json(const SimpleTwist& s) {
  return {{"ell", s.ell}, {"m", s.m}, {"stw_det", s.stw_det}, {"tw_det", s.tw_det}, {"K", s.K}};
}

inline json to_json(const OrbitCount& o) {
  json j = {{"matchings", o.matchings}, {"formula", o.formula}};
  j["brute_force"] = o.brute_force ? json(*o.brute_force) : json(nullptr);
  j["agree"] = o.agree();
  return j;
}

inline json to_json(const FixtureReport& r) {
  return {{"edge", r.edge},
          {"kappa", r.kappa},
          {"passages", r.passages},
          {"ell", r.ell},
          {"m", r.m},
          {"T", r.T},
          {"top_prefactor", r.top_prefactor},
          {"bottom_prefactor", r.bottom_prefactor},
          {"residual_terms", r.residual_terms},
          {"holds", r.holds}};
}

inline json to_json(const HorizontalFixtureReport& r) {
  return {{"x", r.x}, {"residual_terms", r.residual_terms}, {"holds", r.holds}};
}

inline json to_json(const QuadratureReport& r) {
  json j = {{"value", r.value}, {"error", r.error}};
  j["closed_form"] = r.closed_form ? json(*r.closed_form) : json(nullptr);
  j["relative_error"] = r.closed_form ? json(r.relative_error()) : json(nullptr);
  j["samples"] = r.samples;
  j["cutoffs"] = r.cutoffs;
  return j;
}

inline json to_json(const GoodnessTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n", r.n},
                    {"t", r.t},
                    {"log_abs2_x", r.log_abs2_x},
                    {"lhs", r.lhs},
                    {"ratio", r.ratio},
                    {"ratio_over_log_n", r.ratio_over_log_n}});
  return {{"rows", rows}, {"increasing", t.increasing}};
}

inline json to_json(const CauchyTable& c) {
  return {{"cutoffs", c.cutoffs},   {"values", c.values}, {"differences", c.differences}, {"shrink", c.shrink},
          {"limit", c.limit},       {"decreasing", c.decreasing}, {"pass", c.pass}};
}

inline json to_json(const TubeReport& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json g = to_json(r.G);
    g["log_delta"] = r.log_delta;
    g["normalized"] = r.normalized;
    rows.push_back(g);
  }
  return {{"eps", t.eps}, {"G", rows}, {"decays", t.decays}, {"double_eps", t.double_eps}, {"double_integral", to_json(t.double_integral)}};
}

inline json to_json(const CurvatureBlocks& b) {
  auto mat = [](const CMatrix& m) {
    json out = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const auto& v : row) r.push_back(detail::cplx_json(v));
      out.push_back(r);
    }
    return out;
  };
  json d = json::array();
  for (const auto& v : b.dlog_h) d.push_back(detail::cplx_json(v));
  return {{"h", b.h}, {"coordinates", b.coordinates}, {"dlog_h", d}, {"log_basis", mat(b.log_basis)}, {"raw", mat(b.raw)},
          {"hermitian", b.hermitian()}};
}

// ---- metric models

inline json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& t : p.terms()) out.push_back({{"c", t.coef}, {"p", t.p}, {"q", t.q}});
  return out;
}

inline Poly parse_poly(const json& j, int vars) {
  if (j.is_number()) return Poly::constant(vars, j.get<double>());
  if (!j.is_array()) fail(ErrorCode::ParseError, "polynomial is a number or a list of terms");
  std::vector<PolyTerm> terms;
  for (const auto& t : j)
    terms.push_back({detail::get<double>(t, "c"), detail::get<std::vector<int>>(t, "p"), detail::get<std::vector<int>>(t, "q")});
  return Poly(vars, terms);
}

inline json to_json(const MetricModel& M) {
  json levels = json::array();
  for (const auto& lv : M.levels) {
    json d = json::array();
    for (const auto& p : lv.d) d.push_back(to_json(p));
    levels.push_back({{"ell_exponents", lv.ell_exponents}, {"c", to_json(lv.c)}, {"d", d}, {"x_labels", lv.x_labels}});
  }
  return {{"L", M.L}, {"aux_dim", M.aux_dim}, {"box_radius", M.box_radius}, {"levels", levels}};
}

inline MetricModel parse_metric_model(const json& j) {
  MetricModel M;
  M.L = detail::get<int>(j, "L");
  M.aux_dim = j.contains("aux_dim") ? detail::get<int>(j, "aux_dim") : 0;
  M.box_radius = j.contains("box_radius") ? detail::get<double>(j, "box_radius") : 1.0;
  for (const auto& lv : detail::get<json>(j, "levels")) {
    LevelModel L;
    L.ell_exponents = detail::get<std::vector<int>>(lv, "ell_exponents");
    L.c = parse_poly(detail::get<json>(lv, "c"), M.aux_dim);
    if (lv.contains("d"))
      for (const auto& p : lv["d"]) L.d.push_back(parse_poly(p, M.aux_dim));
    L.x_labels = lv.contains("x_labels") ? detail::get<std::vector<std::string>>(lv, "x_labels") : std::vector<std::string>{};
    if (L.x_labels.empty())
      for (size_t i = 0; i < L.d.size(); ++i) L.x_labels.push_back("x" + std::to_string(M.levels.size()) + "_" + std::to_string(i));
    M.levels.push_back(L);
  }
  validate_model(M);
  return M;
}

inline json error_json(const Error& e) { return {{"error", to_string(e.code())}, {"message", e.what()}}; }

}  // namespace kms
