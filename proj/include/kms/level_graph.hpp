#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "kms/canonical.hpp"
#include "kms/error.hpp"
#include "kms/signature.hpp"

namespace kms {

struct Vertex {
  int genus = 0;
  int level = 0;
};

struct EdgeEnd {
  int vertex = 0;
  int kappa = 0;
};

// ends[0] is the upper end once validated (kappa > 0 for vertical edges).
struct Edge {
  EdgeEnd ends[2];
};

struct Leg {
  int vertex = 0;
  int label = 0;  // 1-based point label
  int order = 0;
  int kappa = 0;
};

struct LevelGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;

  int depth() const {
    int L = 0;
    for (const auto& v : vertices) L = std::max(L, -v.level);
    return L;
  }
  bool horizontal(int e) const {
    return vertices[edges[e].ends[0].vertex].level == vertices[edges[e].ends[1].vertex].level;
  }
  int top_level(int e) const { return vertices[edges[e].ends[0].vertex].level; }
  int bottom_level(int e) const { return vertices[edges[e].ends[1].vertex].level; }
  int horizontal_count() const {
    int h = 0;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) h += horizontal(e) ? 1 : 0;
    return h;
  }
  int half_edge_count(int v) const {
    int c = 0;
    for (const auto& e : edges)
      for (const auto& end : e.ends) c += end.vertex == v ? 1 : 0;
    for (const auto& l : legs) c += l.vertex == v ? 1 : 0;
    return c;
  }
};

class EnhancedLevelGraph;
EnhancedLevelGraph validate_enhanced_graph(const LevelGraph& g, const Signature& sig);

// A level graph that passed validation against its ambient signature.
class EnhancedLevelGraph {
 public:
  const Signature& sig() const { return sig_; }
  const LevelGraph& graph() const { return g_; }
  int k() const { return sig_.k; }
  int depth() const { return g_.depth(); }

 private:
  EnhancedLevelGraph(Signature s, LevelGraph g) : sig_(std::move(s)), g_(std::move(g)) {}
  friend EnhancedLevelGraph validate_enhanced_graph(const LevelGraph&, const Signature&);
  Signature sig_;
  LevelGraph g_;
};

namespace detail {

inline int count_components(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = n;
  for (auto [a, b] : pairs) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

}  // namespace detail

inline EnhancedLevelGraph validate_enhanced_graph(const LevelGraph& input, const Signature& sig_in) {
  Signature sig = validate_signature(sig_in);
  LevelGraph g = input;
  const int V = static_cast<int>(g.vertices.size());
  const int k = sig.k;
  if (V == 0) fail(ErrorCode::MalformedGraph, "graph has no vertices");
  for (const auto& v : g.vertices)
    if (v.genus < 0) fail(ErrorCode::MalformedGraph, "negative vertex genus");
  for (const auto& e : g.edges)
    for (const auto& end : e.ends)
      if (end.vertex < 0 || end.vertex >= V) fail(ErrorCode::MalformedGraph, "edge end references unknown vertex");
  for (const auto& l : g.legs)
    if (l.vertex < 0 || l.vertex >= V) fail(ErrorCode::MalformedGraph, "leg references unknown vertex");

  // legs in bijection with mu
  if (static_cast<int>(g.legs.size()) != sig.n())
    fail(ErrorCode::LegOrder, "expected " + std::to_string(sig.n()) + " legs, found " + std::to_string(g.legs.size()));
  std::vector<int> seen(sig.n(), 0);
  for (const auto& l : g.legs) {
    if (l.label < 1 || l.label > sig.n()) fail(ErrorCode::LegOrder, "leg label out of range: " + std::to_string(l.label));
    if (seen[l.label - 1]++) fail(ErrorCode::LegOrder, "duplicate leg label " + std::to_string(l.label));
    if (l.order != sig.mu[l.label - 1])
      fail(ErrorCode::LegOrder, "leg " + std::to_string(l.label) + " has order " + std::to_string(l.order) +
                                    ", signature says " + std::to_string(sig.mu[l.label - 1]));
    if (l.kappa != l.order + k)
      fail(ErrorCode::LegOrder, "leg " + std::to_string(l.label) + " has kappa " + std::to_string(l.kappa) +
                                    " != m + k = " + std::to_string(l.order + k));
  }

  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto& ed = g.edges[e];
    if (ed.ends[0].kappa + ed.ends[1].kappa != 0)
      fail(ErrorCode::EdgeBalance, "edge " + std::to_string(e) + " has kappa sum " +
                                       std::to_string(ed.ends[0].kappa + ed.ends[1].kappa));
    int l0 = g.vertices[ed.ends[0].vertex].level, l1 = g.vertices[ed.ends[1].vertex].level;
    if (l0 < l1) std::swap(ed.ends[0], ed.ends[1]);
    if (l0 == l1) {
      if (ed.ends[0].kappa != 0) fail(ErrorCode::LevelOrientation, "horizontal edge " + std::to_string(e) + " has kappa != 0");
    } else if (ed.ends[0].kappa <= 0) {
      fail(ErrorCode::LevelOrientation, "vertical edge " + std::to_string(e) + " is not descending");
    }
  }

  std::set<int> levels;
  for (const auto& v : g.vertices) levels.insert(v.level);
  if (*levels.rbegin() != 0) fail(ErrorCode::LevelNormalization, "top level must be 0");
  if (static_cast<int>(levels.size()) != 1 - *levels.begin())
    fail(ErrorCode::LevelNormalization, "levels must occupy 0,-1,...,-L without gaps");

  for (int v = 0; v < V; ++v) {
    long long s = 0;
    for (const auto& e : g.edges)
      for (const auto& end : e.ends)
        if (end.vertex == v) s += end.kappa - k;
    for (const auto& l : g.legs)
      if (l.vertex == v) s += l.kappa - k;
    long long expect = static_cast<long long>(k) * (2 * g.vertices[v].genus - 2);
    if (s != expect)
      fail(ErrorCode::VertexSum, "vertex " + std::to_string(v) + ": sum " + std::to_string(s) + " != k(2g-2) = " +
                                     std::to_string(expect));
  }

  for (int v = 0; v < V; ++v)
    if (2 * g.vertices[v].genus - 2 + g.half_edge_count(v) <= 0)
      fail(ErrorCode::Stability, "vertex " + std::to_string(v) + " is unstable");

  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : g.edges) pairs.push_back({e.ends[0].vertex, e.ends[1].vertex});
  if (detail::count_components(V, pairs) != 1) fail(ErrorCode::Disconnected, "graph is not connected");

  int genus = static_cast<int>(g.edges.size()) - V + 1;
  for (const auto& v : g.vertices) genus += v.genus;
  if (genus != sig.g)
    fail(ErrorCode::GenusMismatch, "graph genus " + std::to_string(genus) + " != " + std::to_string(sig.g));

  return EnhancedLevelGraph(std::move(sig), std::move(g));
}

inline Signature vertex_signature(const EnhancedLevelGraph& G, int v) {
  const LevelGraph& g = G.graph();
  std::vector<const Leg*> legs;
  for (const auto& l : g.legs)
    if (l.vertex == v) legs.push_back(&l);
  std::sort(legs.begin(), legs.end(), [](const Leg* a, const Leg* b) { return a->label < b->label; });
  std::vector<int> mu;
  for (const Leg* l : legs) mu.push_back(l->order);
  for (const auto& e : g.edges)
    for (const auto& end : e.ends)
      if (end.vertex == v) mu.push_back(end.kappa - G.k());
  return validate_signature(G.k(), g.vertices[v].genus, mu);
}

// Keep the level passages in I (labelled -1..-L by the lower level) and contract the
// horizontal edges listed in E0.
inline EnhancedLevelGraph undegenerate(const EnhancedLevelGraph& G, const std::set<int>& I, const std::set<int>& E0) {
  const LevelGraph& g = G.graph();
  const int L = g.depth();
  const int V = static_cast<int>(g.vertices.size());
  for (int i : I)
    if (i > -1 || i < -L) fail(ErrorCode::InvalidPassage, "passage " + std::to_string(i) + " outside -1..-" + std::to_string(L));
  for (int e : E0) {
    if (e < 0 || e >= static_cast<int>(g.edges.size())) fail(ErrorCode::NotHorizontal, "unknown edge " + std::to_string(e));
    if (!g.horizontal(e)) fail(ErrorCode::NotHorizontal, "edge " + std::to_string(e) + " is vertical");
  }
  std::vector<bool> contract(g.edges.size(), false);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (g.horizontal(static_cast<int>(e))) {
      contract[e] = E0.count(static_cast<int>(e)) > 0;
      continue;
    }
    bool keep = false;
    for (int lv = g.bottom_level(static_cast<int>(e)); lv < g.top_level(static_cast<int>(e)); ++lv)
      if (I.count(lv)) keep = true;
    contract[e] = !keep;
  }
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (contract[e]) parent[find(g.edges[e].ends[0].vertex)] = find(g.edges[e].ends[1].vertex);

  std::vector<int> index(V, -1);
  LevelGraph out;
  for (int v = 0; v < V; ++v) {
    int r = find(v);
    if (index[r] < 0) {
      index[r] = static_cast<int>(out.vertices.size());
      int lvl = 0;
      for (int i : I)
        if (i >= g.vertices[v].level) --lvl;
      out.vertices.push_back({0, lvl});
    }
  }
  std::vector<int> comp_vertices(out.vertices.size(), 0), comp_edges(out.vertices.size(), 0);
  for (int v = 0; v < V; ++v) {
    int c = index[find(v)];
    out.vertices[c].genus += g.vertices[v].genus;
    comp_vertices[c]++;
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (contract[e]) {
      comp_edges[index[find(g.edges[e].ends[0].vertex)]]++;
      continue;
    }
    Edge ne = g.edges[e];
    for (auto& end : ne.ends) end.vertex = index[find(end.vertex)];
    out.edges.push_back(ne);
  }
  for (size_t c = 0; c < out.vertices.size(); ++c) out.vertices[c].genus += comp_edges[c] - comp_vertices[c] + 1;
  for (const auto& l : g.legs) {
    Leg nl = l;
    nl.vertex = index[find(l.vertex)];
    out.legs.push_back(nl);
  }
  return validate_enhanced_graph(out, G.sig());
}

// Arc labels shared by the graph and cover encodings.
enum ArcLabel { ArcTop = 1, ArcBottom = 2, ArcHorizontal = 3, ArcLeg = 4, ArcTau = 5 };

inline ColoredStructure graph_structure(const LevelGraph& g) {
  ColoredStructure s;
  for (const auto& v : g.vertices) s.add_node({0, v.level, v.genus});
  for (size_t e = 0; e < g.edges.size(); ++e) {
    bool hor = g.horizontal(static_cast<int>(e));
    int node = s.add_node({1, g.edges[e].ends[0].kappa});
    s.add_arc(node, g.edges[e].ends[0].vertex, hor ? ArcHorizontal : ArcTop);
    s.add_arc(node, g.edges[e].ends[1].vertex, hor ? ArcHorizontal : ArcBottom);
  }
  for (const auto& l : g.legs) {
    int node = s.add_node({2, l.label, l.order, l.kappa});
    s.add_arc(node, l.vertex, ArcLeg);
  }
  return s;
}

inline std::string canonical_form(const EnhancedLevelGraph& G) { return canonical_string(graph_structure(G.graph())); }

}  // namespace kms
