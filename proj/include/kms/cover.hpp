#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kms/level_graph.hpp"

namespace kms {

// (fiber size, lifted enhancement) over an edge end with kappa >= 0; kappa = 0 is a
// horizontal node whose k preimages are simple poles.
inline std::pair<int, int> cover_edge_enhancement(int k, int kappa) {
  if (kappa < 0) kappa = -kappa;
  if (kappa == 0) return {k, 0};
  int f = static_cast<int>(gcd0(k, kappa));
  return {f, kappa / f};
}

struct CoverVertex {
  int base = 0;
  int copy = 0;        // index in Z/d_v
  int genus = 0;
  int level = 0;
  int stab_order = 1;  // order of the stabilizer of this component in <tau>
};

struct CoverEdge {
  int base = 0;
  int sheet = 0;  // index in Z/gcd(k, kappa)
  EdgeEnd ends[2];
};

struct CoverLeg {
  int base = 0;  // index into base legs
  int sheet = 0;
  int vertex = 0;
  int label = 0;
  int order = 0;
};

struct GraphCover {
  EnhancedLevelGraph base;
  std::vector<int> vertex_types;
  std::vector<int> edge_shifts;
  std::vector<CoverVertex> vertices;
  std::vector<CoverEdge> edges;
  std::vector<CoverLeg> legs;
  std::vector<int> tau_vertex, tau_edge, tau_leg;

  int k() const { return base.k(); }
  int depth() const { return base.depth(); }
  bool horizontal(int e) const { return vertices[edges[e].ends[0].vertex].level == vertices[edges[e].ends[1].vertex].level; }

  bool connected() const {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : edges) pairs.push_back({e.ends[0].vertex, e.ends[1].vertex});
    return detail::count_components(static_cast<int>(vertices.size()), pairs) == 1;
  }

  LevelGraph cover_graph() const {
    LevelGraph g;
    for (const auto& v : vertices) g.vertices.push_back({v.genus, v.level});
    for (const auto& e : edges) g.edges.push_back(Edge{{e.ends[0], e.ends[1]}});
    for (const auto& l : legs) g.legs.push_back({l.vertex, l.label, l.order, l.order + 1});
    return g;
  }

  // Representatives of tau-orbits of edges: the sheet-0 edge over each base edge.
  std::vector<int> edge_orbit_representatives() const {
    std::vector<int> reps;
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i].sheet == 0) reps.push_back(static_cast<int>(i));
    return reps;
  }
};

// Lift G to the cover with local types d (per vertex) and edge shifts s (per edge).
inline GraphCover build_cover(const EnhancedLevelGraph& G, const std::vector<int>& d, const std::vector<int>& s) {
  const LevelGraph& g = G.graph();
  const int k = G.k();
  if (d.size() != g.vertices.size() || s.size() != g.edges.size())
    fail(ErrorCode::DimensionMismatch, "vertex types / edge shifts do not match the graph");
  GraphCover C{G, d, s, {}, {}, {}, {}, {}, {}};
  std::vector<int> first(g.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    Signature vs = vertex_signature(G, static_cast<int>(v));
    auto pd = power_divisors(vs);
    if (std::find(pd.begin(), pd.end(), d[v]) == pd.end())
      fail(ErrorCode::Inconsistent, "d=" + std::to_string(d[v]) + " is not a power divisor at vertex " + std::to_string(v));
    int gh;
    try {
      gh = cover_signature(reduce_by(vs, d[v])).g_hat;
    } catch (const Error& e) {
      fail(ErrorCode::Inconsistent, "vertex " + std::to_string(v) + ": " + e.what());
    }
    first[v] = static_cast<int>(C.vertices.size());
    for (int c = 0; c < d[v]; ++c)
      C.vertices.push_back({static_cast<int>(v), c, gh, g.vertices[v].level, k / d[v]});
  }
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int c = 0; c < d[v]; ++c) C.tau_vertex.push_back(first[v] + (c + 1) % d[v]);

  std::vector<int> efirst(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    auto [f, kh] = cover_edge_enhancement(k, ed.ends[0].kappa);
    if (s[e] < 0 || s[e] >= f) fail(ErrorCode::Inconsistent, "edge shift out of range at edge " + std::to_string(e));
    int vt = ed.ends[0].vertex, vb = ed.ends[1].vertex;
    efirst[e] = static_cast<int>(C.edges.size());
    for (int a = 0; a < f; ++a) {
      CoverEdge ce;
      ce.base = static_cast<int>(e);
      ce.sheet = a;
      ce.ends[0] = {first[vt] + a % d[vt], kh};
      ce.ends[1] = {first[vb] + (a + s[e]) % d[vb], -kh};
      C.edges.push_back(ce);
    }
    for (int a = 0; a < f; ++a) C.tau_edge.push_back(efirst[e] + (a + 1) % f);
  }

  for (size_t l = 0; l < g.legs.size(); ++l) {
    const Leg& lg = g.legs[l];
    int f = fiber_size(k, lg.order);
    int start = static_cast<int>(C.legs.size());
    for (int a = 0; a < f; ++a)
      C.legs.push_back({static_cast<int>(l), a, first[lg.vertex] + a % d[lg.vertex], lg.label, lifted_order(k, lg.order)});
    for (int a = 0; a < f; ++a) C.tau_leg.push_back(start + (a + 1) % f);
  }
  return C;
}

inline ColoredStructure cover_structure(const GraphCover& C) {
  ColoredStructure s;
  for (const auto& v : C.vertices) s.add_node({0, v.level, v.genus, v.stab_order});
  int e0 = static_cast<int>(C.vertices.size());
  for (size_t e = 0; e < C.edges.size(); ++e) {
    bool hor = C.horizontal(static_cast<int>(e));
    int node = s.add_node({1, C.edges[e].ends[0].kappa});
    s.add_arc(node, C.edges[e].ends[0].vertex, hor ? ArcHorizontal : ArcTop);
    s.add_arc(node, C.edges[e].ends[1].vertex, hor ? ArcHorizontal : ArcBottom);
  }
  int l0 = e0 + static_cast<int>(C.edges.size());
  for (const auto& l : C.legs) {
    int node = s.add_node({2, l.label, l.order});
    s.add_arc(node, l.vertex, ArcLeg);
  }
  for (size_t v = 0; v < C.vertices.size(); ++v) s.add_arc(static_cast<int>(v), C.tau_vertex[v], ArcTau);
  for (size_t e = 0; e < C.edges.size(); ++e) s.add_arc(e0 + static_cast<int>(e), e0 + C.tau_edge[e], ArcTau);
  for (size_t l = 0; l < C.legs.size(); ++l) s.add_arc(l0 + static_cast<int>(l), l0 + C.tau_leg[l], ArcTau);
  return s;
}

inline std::string cover_canonical_form(const GraphCover& C) { return canonical_string(cover_structure(C)); }

namespace detail {

inline std::vector<std::vector<int>> cycles(const std::vector<int>& perm) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(perm.size(), false);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    out.push_back(cyc);
  }
  return out;
}

inline bool is_permutation(const std::vector<int>& p) {
  std::vector<bool> hit(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

}  // namespace detail

// Quotient of the cover by tau, recomputing base genera by Riemann-Hurwitz on each
// component and base enhancements from orbit sizes.
inline LevelGraph cover_quotient(const GraphCover& C) {
  const int k = C.k();
  LevelGraph q;
  std::vector<int> orbit_of(C.vertices.size(), -1);
  std::vector<int> orbit_size;
  for (const auto& cyc : detail::cycles(C.tau_vertex)) {
    int id = static_cast<int>(q.vertices.size());
    for (int v : cyc) orbit_of[v] = id;
    q.vertices.push_back({0, C.vertices[cyc[0]].level});
    orbit_size.push_back(static_cast<int>(cyc.size()));
  }
  // Riemann-Hurwitz on one component: 2gh-2 = s(2g-2) + sum over points (e-1).
  std::vector<long long> ram(q.vertices.size(), 0);
  std::vector<int> rep(q.vertices.size(), -1);
  for (size_t v = 0; v < C.vertices.size(); ++v)
    if (rep[orbit_of[v]] < 0) rep[orbit_of[v]] = static_cast<int>(v);
  auto add_point = [&](int cover_vertex, int fiber) {
    if (cover_vertex != rep[orbit_of[cover_vertex]]) return;
    int s = C.vertices[cover_vertex].stab_order;
    int per_component = fiber / orbit_size[orbit_of[cover_vertex]];
    ram[orbit_of[cover_vertex]] += s / per_component - 1;
  };
  for (const auto& cyc : detail::cycles(C.tau_edge)) {
    const CoverEdge& e = C.edges[cyc[0]];
    int f = static_cast<int>(cyc.size());
    int kap = e.ends[0].kappa * f;
    q.edges.push_back(Edge{{{orbit_of[e.ends[0].vertex], kap}, {orbit_of[e.ends[1].vertex], -kap}}});
    for (int x : cyc) {
      add_point(C.edges[x].ends[0].vertex, f);
      add_point(C.edges[x].ends[1].vertex, f);
    }
  }
  for (const auto& cyc : detail::cycles(C.tau_leg)) {
    const CoverLeg& l = C.legs[cyc[0]];
    int f = static_cast<int>(cyc.size());
    int m = f * (l.order + 1) - k;
    q.legs.push_back({orbit_of[l.vertex], l.label, m, m + k});
    for (int x : cyc) add_point(C.legs[x].vertex, f);
  }
  for (size_t o = 0; o < q.vertices.size(); ++o) {
    const CoverVertex& cv = C.vertices[rep[o]];
    long long num = 2LL * cv.genus - 2 - ram[o];
    q.vertices[o].genus = static_cast<int>(num / cv.stab_order / 2 + 1);
    if (num % (2LL * cv.stab_order) != 0) q.vertices[o].genus = -1;
  }
  std::sort(q.legs.begin(), q.legs.end(), [](const Leg& a, const Leg& b) { return a.label < b.label; });
  return q;
}

struct CoverIssue {
  ErrorCode code;
  std::string message;
};

struct CoverReport {
  std::vector<CoverIssue> issues;
  bool ok() const { return issues.empty(); }
};

inline CoverReport validate_cover(const GraphCover& C) {
  CoverReport rep;
  auto issue = [&](ErrorCode c, const std::string& m) { rep.issues.push_back({c, m}); };
  const LevelGraph& g = C.base.graph();
  const int k = C.k();
  const int NV = static_cast<int>(C.vertices.size());
  if (C.tau_vertex.size() != C.vertices.size() || C.tau_edge.size() != C.edges.size() || C.tau_leg.size() != C.legs.size() ||
      !detail::is_permutation(C.tau_vertex) || !detail::is_permutation(C.tau_edge) || !detail::is_permutation(C.tau_leg)) {
    issue(ErrorCode::DeckOrder, "tau is not a permutation of the cover");
    return rep;
  }
  for (const auto& e : C.edges)
    for (const auto& end : e.ends)
      if (end.vertex < 0 || end.vertex >= NV) {
        issue(ErrorCode::Inconsistent, "cover edge references unknown vertex");
        return rep;
      }

  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int dv = C.vertex_types[v];
    auto pd = power_divisors(vertex_signature(C.base, static_cast<int>(v)));
    if (std::find(pd.begin(), pd.end(), dv) == pd.end())
      issue(ErrorCode::Inconsistent, "vertex type " + std::to_string(dv) + " not admissible at vertex " + std::to_string(v));
    int count = 0;
    for (const auto& cv : C.vertices) count += cv.base == static_cast<int>(v);
    if (count != dv) issue(ErrorCode::Inconsistent, "fiber over vertex " + std::to_string(v) + " has size " + std::to_string(count));
  }
  for (const auto& cyc : detail::cycles(C.tau_vertex)) {
    for (int v : cyc) {
      if (static_cast<long long>(cyc.size()) * C.vertices[v].stab_order != k)
        issue(ErrorCode::DeckOrder, "cover vertex " + std::to_string(v) + ": orbit " + std::to_string(cyc.size()) +
                                        " times stabilizer order " + std::to_string(C.vertices[v].stab_order) + " != k");
      if (C.vertices[v].level != C.vertices[cyc[0]].level || C.vertices[v].base != C.vertices[cyc[0]].base)
        issue(ErrorCode::Inconsistent, "tau does not preserve levels/fibers");
    }
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [f, kh] = cover_edge_enhancement(k, g.edges[e].ends[0].kappa);
    int count = 0;
    for (const auto& ce : C.edges) {
      if (ce.base != static_cast<int>(e)) continue;
      ++count;
      if (ce.ends[0].kappa != kh || ce.ends[1].kappa != -kh)
        issue(ErrorCode::EnhancementLift, "cover edge over " + std::to_string(e) + " has kappa " +
                                              std::to_string(ce.ends[0].kappa) + ", expected " + std::to_string(kh));
    }
    if (count != f) issue(ErrorCode::Inconsistent, "fiber over edge " + std::to_string(e) + " has size " + std::to_string(count));
  }
  for (size_t e = 0; e < C.edges.size(); ++e) {
    const CoverEdge& a = C.edges[e];
    const CoverEdge& b = C.edges[C.tau_edge[e]];
    bool ok = b.base == a.base && b.ends[0].vertex == C.tau_vertex[a.ends[0].vertex] &&
              b.ends[1].vertex == C.tau_vertex[a.ends[1].vertex];
    if (!ok) issue(ErrorCode::Inconsistent, "tau is not equivariant on cover edge " + std::to_string(e));
  }
  for (size_t l = 0; l < C.legs.size(); ++l)
    if (C.legs[C.tau_leg[l]].vertex != C.tau_vertex[C.legs[l].vertex] || C.legs[C.tau_leg[l]].label != C.legs[l].label)
      issue(ErrorCode::Inconsistent, "tau is not equivariant on cover leg " + std::to_string(l));

  for (int v = 0; v < NV; ++v) {
    long long s = 0;
    for (const auto& e : C.edges)
      for (const auto& end : e.ends)
        if (end.vertex == v) s += end.kappa - 1;
    for (const auto& l : C.legs)
      if (l.vertex == v) s += l.order;
    if (s != 2LL * C.vertices[v].genus - 2)
      issue(ErrorCode::VertexSum, "cover vertex " + std::to_string(v) + ": lifted orders sum " + std::to_string(s) +
                                      " != 2g-2 = " + std::to_string(2 * C.vertices[v].genus - 2));
  }
  if (rep.ok()) {
    try {
      auto q = validate_enhanced_graph(cover_quotient(C), C.base.sig());
      if (canonical_form(q) != canonical_form(C.base)) issue(ErrorCode::Inconsistent, "quotient by tau differs from the base graph");
    } catch (const Error& e) {
      issue(ErrorCode::Inconsistent, std::string("quotient by tau is invalid: ") + e.what());
    }
  }
  return rep;
}

struct CoverEnumerationOptions {
  bool connected_only = false;
  std::function<void(const std::string&)> verbose;  // receives pruned combinations
};

// Streams covers of G, one per isomorphism class of (cover graph, tau).
inline void enumerate_covers(const EnhancedLevelGraph& G, const std::function<void(const GraphCover&)>& sink,
                             const CoverEnumerationOptions& opt = {}) {
  const LevelGraph& g = G.graph();
  const int V = static_cast<int>(g.vertices.size());
  const int E = static_cast<int>(g.edges.size());
  std::vector<std::vector<int>> dchoices(V);
  for (int v = 0; v < V; ++v) dchoices[v] = power_divisors(vertex_signature(G, v));
  std::vector<int> fibers(E);
  for (int e = 0; e < E; ++e) fibers[e] = cover_edge_enhancement(G.k(), g.edges[e].ends[0].kappa).first;

  std::set<std::string> seen;
  std::vector<int> d(V), s(E, 0);
  std::function<void(int)> over_shifts = [&](int e) {
    if (e == E) {
      GraphCover C = [&]() -> GraphCover {
        try {
          return build_cover(G, d, s);
        } catch (const Error& err) {
          if (opt.verbose) opt.verbose(err.what());
          throw;
        }
      }();
      if (opt.connected_only && !C.connected()) return;
      if (seen.insert(cover_canonical_form(C)).second) sink(C);
      return;
    }
    for (int a = 0; a < fibers[e]; ++a) {
      s[e] = a;
      over_shifts(e + 1);
    }
  };
  std::function<void(int)> over_types = [&](int v) {
    if (v == V) {
      for (int u = 0; u < V; ++u) {
        try {
          (void)cover_signature(reduce_by(vertex_signature(G, u), d[u]));
        } catch (const Error& err) {
          if (opt.verbose) opt.verbose("pruned d=" + std::to_string(d[u]) + " at vertex " + std::to_string(u) + ": " + err.what());
          return;
        }
      }
      over_shifts(0);
      return;
    }
    for (int dv : dchoices[v]) {
      d[v] = dv;
      over_types(v + 1);
    }
  };
  over_types(0);
}

inline std::vector<GraphCover> covers_of(const EnhancedLevelGraph& G, const CoverEnumerationOptions& opt = {}) {
  std::vector<GraphCover> out;
  enumerate_covers(G, [&](const GraphCover& C) { out.push_back(C); }, opt);
  return out;
}

}  // namespace kms
