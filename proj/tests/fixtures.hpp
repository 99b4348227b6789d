#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "kms/cover.hpp"
#include "kms/enumerate.hpp"

namespace fx {

using namespace kms;

inline Leg leg(int v, int label, int order, int k) { return {v, label, order, order + k}; }
inline Edge edge(int top, int bottom, int kappa) { return Edge{{{top, kappa}, {bottom, -kappa}}}; }

// k=2, g=2, mu=(2,2): top g=1 over bottom g=1 carrying both zeros, one edge kappa 2.
inline EnhancedLevelGraph gamma_a(bool swapped = false) {
  LevelGraph g;
  if (!swapped) {
    g.vertices = {{1, 0}, {1, -1}};
    g.edges = {edge(0, 1, 2)};
    g.legs = {leg(1, 1, 2, 2), leg(1, 2, 2, 2)};
  } else {
    g.vertices = {{1, -1}, {1, 0}};
    g.edges = {edge(1, 0, 2)};
    g.legs = {leg(0, 2, 2, 2), leg(0, 1, 2, 2)};
  }
  return validate_enhanced_graph(g, validate_signature(2, 2, {2, 2}));
}

// k=1, g=2, mu=(2): torus over torus.
inline EnhancedLevelGraph single_tail() {
  LevelGraph g;
  g.vertices = {{1, 0}, {1, -1}};
  g.edges = {edge(0, 1, 1)};
  g.legs = {leg(1, 1, 2, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 2, {2}));
}

// k=1, g=2, mu=(2): two tori over a sphere carrying the zero.
inline EnhancedLevelGraph two_tails() {
  LevelGraph g;
  g.vertices = {{1, 0}, {1, 0}, {0, -1}};
  g.edges = {edge(0, 2, 1), edge(1, 2, 1)};
  g.legs = {leg(2, 1, 2, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 2, {2}));
}

// k=1, g=1, mu=(0): sphere with a horizontal self-loop.
inline EnhancedLevelGraph banana() {
  LevelGraph g;
  g.vertices = {{0, 0}};
  g.edges = {Edge{{{0, 0}, {0, 0}}}};
  g.legs = {leg(0, 1, 0, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 1, {0}));
}

// k=1, g=4, mu=(1,0,5): e0: 0->-1 kappa 2, e1: -1->-2 kappa 2, e2: 0->-2 kappa 3.
inline EnhancedLevelGraph three_level_chain() {
  LevelGraph g;
  g.vertices = {{3, 0}, {0, -1}, {0, -2}};
  g.edges = {edge(0, 1, 2), edge(1, 2, 2), edge(0, 2, 3)};
  g.legs = {leg(0, 1, 1, 1), leg(1, 2, 0, 1), leg(2, 3, 5, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 4, {1, 0, 5}));
}

// k=1, two levels joined by edges of kappa 2 and 3 (g=4, mu=(1,5)).
inline EnhancedLevelGraph kappa_2_3() {
  LevelGraph g;
  g.vertices = {{3, 0}, {0, -1}};
  g.edges = {edge(0, 1, 2), edge(0, 1, 3)};
  g.legs = {leg(0, 1, 1, 1), leg(1, 2, 5, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 4, {1, 5}));
}

// k=1, two levels joined by two edges of kappa 2 (g=3, mu=(0,4)).
inline EnhancedLevelGraph kappa_2_2() {
  LevelGraph g;
  g.vertices = {{2, 0}, {0, -1}};
  g.edges = {edge(0, 1, 2), edge(0, 1, 2)};
  g.legs = {leg(0, 1, 0, 1), leg(1, 2, 4, 1)};
  return validate_enhanced_graph(g, validate_signature(1, 3, {0, 4}));
}

inline GraphCover identity_cover(const EnhancedLevelGraph& G) {
  return build_cover(G, std::vector<int>(G.graph().vertices.size(), 1), std::vector<int>(G.graph().edges.size(), 0));
}

inline const std::vector<Signature>& sweep_strata() {
  static const std::vector<Signature> s = {validate_signature(1, 2, {2}), validate_signature(2, 2, {2, 2}),
                                           validate_signature(2, 0, {-1, -1, -1, -1})};
  return s;
}

inline std::vector<GraphCover> all_covers(const Signature& sig, const EnumerationMode& mode) {
  std::vector<GraphCover> out;
  enumerate_boundary_graphs(sig, mode, [&](const EnhancedLevelGraph& G) {
    enumerate_covers(G, [&](const GraphCover& C) { out.push_back(C); });
  });
  return out;
}

// Same graph with vertices and edges renumbered and edge ends possibly listed bottom-first.
inline LevelGraph relabel(const LevelGraph& g, std::mt19937& rng) {
  const int V = static_cast<int>(g.vertices.size());
  std::vector<int> perm(V);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  LevelGraph r;
  r.vertices.resize(V);
  for (int v = 0; v < V; ++v) r.vertices[perm[v]] = g.vertices[v];
  for (auto e : g.edges) {
    for (auto& end : e.ends) end.vertex = perm[end.vertex];
    if (rng() % 2) std::swap(e.ends[0], e.ends[1]);
    r.edges.push_back(e);
  }
  std::shuffle(r.edges.begin(), r.edges.end(), rng);
  for (auto l : g.legs) {
    l.vertex = perm[l.vertex];
    r.legs.push_back(l);
  }
  std::shuffle(r.legs.begin(), r.legs.end(), rng);
  return r;
}

}  // namespace fx
