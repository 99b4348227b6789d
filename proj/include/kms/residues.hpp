#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kms/cover.hpp"
#include "kms/cyclotomic.hpp"

namespace kms {

enum class PointRole { Relative, Puncture };

struct SpecialPoint {
  int order = 0;
  PointRole role = PointRole::Relative;
};

struct LevelComponentData {
  int k = 1;
  int d = 1;
  int genus = 0;
  std::vector<SpecialPoint> points;
};

// Dimension of the zeta-eigenspace of relative homology for one tau-orbit of components.
inline int eigenspace_dim(const LevelComponentData& c) {
  if (c.k < 1 || c.d < 1 || c.k % c.d != 0) fail(ErrorCode::InvalidRole, "d must divide k");
  int p = 0, z = 0;
  for (const auto& pt : c.points) {
    bool pole_like = pt.order <= -c.k;
    if (pt.role == PointRole::Puncture && !pole_like)
      fail(ErrorCode::InvalidRole, "puncture with order " + std::to_string(pt.order) + " > -k");
    if (pt.role == PointRole::Relative && pole_like)
      fail(ErrorCode::InvalidRole, "relative point with order " + std::to_string(pt.order) + " <= -k");
    (pt.role == PointRole::Puncture ? p : z)++;
  }
  int kr = c.k / c.d;
  if (kr >= 2) return 2 * c.genus - 2 + p + z;
  return 2 * c.genus + std::max(p - 1, 0) + std::max(z - 1, 0);
}

inline LevelComponentData level_component_data(const GraphCover& C, int v) {
  const LevelGraph& g = C.base.graph();
  const int k = C.k();
  LevelComponentData c;
  c.k = k;
  c.d = C.vertex_types[v];
  c.genus = g.vertices[v].genus;
  for (const auto& l : g.legs)
    if (l.vertex == v) c.points.push_back({l.order, PointRole::Relative});
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& ed = g.edges[e];
    bool hor = g.horizontal(static_cast<int>(e));
    for (int end = 0; end < 2; ++end) {
      if (ed.ends[end].vertex != v) continue;
      int order = ed.ends[end].kappa - k;
      bool puncture = hor || end == 1;
      c.points.push_back({order, puncture ? PointRole::Puncture : PointRole::Relative});
    }
  }
  return c;
}

// Residue unknowns and linear conditions at one level, with entries in Q(zeta_k).
struct ResidueSystem {
  int level = 0;
  std::vector<std::string> coordinates;
  std::vector<std::vector<CyclotomicField::Element>> automatic;  // residue theorem per component
  std::vector<std::vector<CyclotomicField::Element>> conditions;  // GRC and horizontal matching
  int rank_automatic = 0;
  int rank_total = 0;
  int rank() const { return rank_total - rank_automatic; }  // effective rank on the residue space
};

inline std::vector<ResidueSystem> grc_system(const GraphCover& C) {
  const int k = C.k();
  const int L = C.depth();
  const LevelGraph& g = C.base.graph();
  CyclotomicField F(k);
  std::vector<ResidueSystem> out;
  for (int i = 0; i <= L; ++i) {
    const int lv = -i;
    ResidueSystem rs;
    rs.level = lv;
    // coordinate per (base edge, end) carrying residues at this level
    std::map<std::pair<int, int>, int> var;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      bool hor = g.horizontal(static_cast<int>(e));
      int f = cover_edge_enhancement(k, g.edges[e].ends[0].kappa).first;
      if (f != k) continue;
      for (int end = 0; end < 2; ++end) {
        if (g.vertices[g.edges[e].ends[end].vertex].level != lv) continue;
        if (!hor && end == 0) continue;
        var[{static_cast<int>(e), end}] = static_cast<int>(rs.coordinates.size());
        rs.coordinates.push_back("r[e" + std::to_string(e) + (hor ? (end ? "b" : "a") : "") + "]");
      }
    }
    const size_t nv = rs.coordinates.size();
    auto empty_row = [&]() { return std::vector<CyclotomicField::Element>(nv, F.zero()); };
    auto add_point = [&](std::vector<CyclotomicField::Element>& row, int ce, int end) {
      auto it = var.find({C.edges[ce].base, end});
      if (it == var.end()) return false;
      row[it->second] = F.add(row[it->second], F.zeta_power(C.edges[ce].sheet));
      return true;
    };
    for (size_t v = 0; v < C.vertices.size(); ++v) {
      if (C.vertices[v].level != lv) continue;
      auto row = empty_row();
      bool any = false;
      for (size_t ce = 0; ce < C.edges.size(); ++ce)
        for (int end = 0; end < 2; ++end)
          if (C.edges[ce].ends[end].vertex == static_cast<int>(v)) any |= add_point(row, static_cast<int>(ce), end);
      if (any) rs.automatic.push_back(row);
    }
    // components of the cover strictly above this level
    std::vector<int> parent(C.vertices.size());
    for (size_t v = 0; v < parent.size(); ++v) parent[v] = static_cast<int>(v);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& ce : C.edges) {
      int a = ce.ends[0].vertex, b = ce.ends[1].vertex;
      if (C.vertices[a].level > lv && C.vertices[b].level > lv) parent[find(a)] = find(b);
    }
    std::map<int, std::vector<CyclotomicField::Element>> grc;
    for (size_t ce = 0; ce < C.edges.size(); ++ce) {
      const CoverEdge& e = C.edges[ce];
      if (C.vertices[e.ends[1].vertex].level != lv || C.vertices[e.ends[0].vertex].level <= lv) continue;
      int y = find(e.ends[0].vertex);
      if (!grc.count(y)) grc[y] = empty_row();
      add_point(grc[y], static_cast<int>(ce), 1);
    }
    for (auto& [y, row] : grc) rs.conditions.push_back(row);
    for (size_t ce = 0; ce < C.edges.size(); ++ce) {
      if (!C.horizontal(static_cast<int>(ce)) || C.vertices[C.edges[ce].ends[0].vertex].level != lv) continue;
      auto row = empty_row();
      bool a = add_point(row, static_cast<int>(ce), 0);
      bool b = add_point(row, static_cast<int>(ce), 1);
      if (a || b) rs.conditions.push_back(row);
    }
    rs.rank_automatic = field_rank(F, rs.automatic, nv);
    auto all = rs.automatic;
    all.insert(all.end(), rs.conditions.begin(), rs.conditions.end());
    rs.rank_total = field_rank(F, all, nv);
    out.push_back(std::move(rs));
  }
  return out;
}

struct LevelDims {
  std::vector<int> dims;  // eigenspace dimension per base vertex at this level
  int grc_rank = 0;
  int dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s - grc_rank;
  }
};

struct DimensionReport {
  std::vector<LevelDims> per_level;
  int h = 0;
  int L = 0;
  int total = 0;
  int expected = 0;
  bool pass = false;
  bool grc_surrogate = false;
  bool connected = true;
};

// Vertices with d > 1 touching residue-carrying edges, where the eigenspace reduction meets GRC rows.
inline bool grc_surrogate(const GraphCover& C) {
  const LevelGraph& g = C.base.graph();
  for (const auto& e : g.edges) {
    if (cover_edge_enhancement(C.k(), e.ends[0].kappa).first != C.k()) continue;
    for (const auto& end : e.ends)
      if (C.vertex_types[end.vertex] > 1) return true;
  }
  return false;
}

inline DimensionReport check_dimension_identity(const GraphCover& C) {
  const LevelGraph& g = C.base.graph();
  DimensionReport r;
  r.L = C.depth();
  r.h = g.horizontal_count();
  r.connected = C.connected();
  r.grc_surrogate = grc_surrogate(C);
  auto systems = grc_system(C);
  for (int i = 0; i <= r.L; ++i) {
    LevelDims ld;
    for (size_t v = 0; v < g.vertices.size(); ++v)
      if (g.vertices[v].level == -i) ld.dims.push_back(eigenspace_dim(level_component_data(C, static_cast<int>(v))));
    ld.grc_rank = systems[i].rank();
    r.total += ld.dim();
    r.per_level.push_back(ld);
  }
  r.expected = stratum_dimension(C.base.sig()) - r.h;
  r.pass = r.total == r.expected;
  return r;
}

struct PperShape {
  int h = 0;
  int levels = 1;
  std::vector<int> projective_dims;
  int total = 0;
};

inline PperShape pper_coordinate_shape(const GraphCover& C) {
  DimensionReport r = check_dimension_identity(C);
  PperShape s;
  s.h = r.h;
  s.levels = r.L + 1;
  s.total = s.h + s.levels;
  for (const auto& ld : r.per_level) {
    s.projective_dims.push_back(ld.dim() - 1);
    s.total += ld.dim() - 1;
  }
  int dim = stratum_dimension(C.base.sig());
  if (s.total != dim)
    fail(ErrorCode::ShapeMismatch, "perturbed period shape totals " + std::to_string(s.total) + ", stratum dimension is " +
                                       std::to_string(dim));
  return s;
}

}  // namespace kms
