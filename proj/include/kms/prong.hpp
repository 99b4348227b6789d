#pragma once

#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kms/cover.hpp"
#include "kms/lattice.hpp"

namespace kms {

// Vertical cover edge data: enhancement and crossed passages (index i <-> passage -(i+1)).
struct VerticalEdge {
  int edge = 0;
  int kappa = 0;
  std::vector<int> passages;
};

inline std::vector<int> crossed_passages(int top_level, int bottom_level) {
  std::vector<int> out;
  for (int p = top_level - 1; p >= bottom_level; --p) out.push_back(-p - 1);
  return out;
}

// One entry per tau-orbit of vertical cover edges (the sheet-0 representative).
inline std::vector<VerticalEdge> vertical_orbits(const GraphCover& C) {
  std::vector<VerticalEdge> out;
  for (int e : C.edge_orbit_representatives()) {
    if (C.horizontal(e)) continue;
    const CoverEdge& ce = C.edges[e];
    out.push_back({e, ce.ends[0].kappa,
                   crossed_passages(C.vertices[ce.ends[0].vertex].level, C.vertices[ce.ends[1].vertex].level)});
  }
  return out;
}

// Torsor offsets sigma in Z/kappa, one per vertical edge orbit.
using ProngMatching = std::vector<int>;

inline long long matchings_total(const GraphCover& C) {
  long long t = 1;
  for (const auto& ve : vertical_orbits(C)) t = checked_mul(t, ve.kappa);
  return t;
}

inline void global_prong_matchings(const GraphCover& C, const std::function<void(const ProngMatching&)>& sink) {
  auto orbits = vertical_orbits(C);
  ProngMatching pm(orbits.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == orbits.size()) {
      sink(pm);
      return;
    }
    for (int a = 0; a < orbits[i].kappa; ++a) {
      pm[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
}

inline ProngMatching rotation_action(const GraphCover& C, const std::vector<i64>& n, const ProngMatching& pm) {
  auto orbits = vertical_orbits(C);
  if (static_cast<int>(n.size()) != C.depth())
    fail(ErrorCode::DimensionMismatch, "rotation vector has length " + std::to_string(n.size()) + ", expected " +
                                           std::to_string(C.depth()));
  if (pm.size() != orbits.size()) fail(ErrorCode::DimensionMismatch, "prong-matching has wrong length");
  ProngMatching out(pm.size());
  for (size_t i = 0; i < orbits.size(); ++i) {
    i64 s = pm[i];
    for (int p : orbits[i].passages) s = checked_add(s, mod(n[p], orbits[i].kappa));
    out[i] = static_cast<int>(mod(s, orbits[i].kappa));
  }
  return out;
}

struct TwistLattice {
  int L = 0;
  IntMatrix basis;
  i64 det = 1;
};

inline TwistLattice twist_group(const GraphCover& C) {
  const int L = C.depth();
  IntMatrix rows;
  std::vector<i64> moduli;
  for (const auto& ve : vertical_orbits(C)) {
    std::vector<i64> r(L, 0);
    for (int p : ve.passages) r[p] = 1;
    rows.push_back(r);
    moduli.push_back(ve.kappa);
  }
  TwistLattice T;
  T.L = L;
  T.basis = congruence_lattice(L, rows, moduli);
  T.det = hnf_determinant(T.basis);
  return T;
}

struct SimpleTwist {
  std::vector<i64> ell;
  std::vector<std::vector<i64>> m;  // per vertical orbit, per crossed passage (parallel to passages)
  IntMatrix basis;
  i64 stw_det = 1;
  i64 tw_det = 1;
  i64 K = 1;
};

inline SimpleTwist simple_twist_and_index(const GraphCover& C) {
  const int L = C.depth();
  SimpleTwist S;
  S.ell.assign(L, 1);
  auto orbits = vertical_orbits(C);
  for (const auto& ve : orbits)
    for (int p : ve.passages) S.ell[p] = lcm0(S.ell[p], ve.kappa);
  for (const auto& ve : orbits) {
    std::vector<i64> row;
    for (int p : ve.passages) row.push_back(S.ell[p] / ve.kappa);
    S.m.push_back(row);
  }
  S.basis.assign(L, std::vector<i64>(L, 0));
  for (int i = 0; i < L; ++i) {
    S.basis[i][i] = S.ell[i];
    S.stw_det = checked_mul(S.stw_det, S.ell[i]);
  }
  S.tw_det = twist_group(C).det;
  if (S.stw_det % S.tw_det != 0) fail(ErrorCode::Inconsistent, "simple twist group is not contained in the twist group");
  S.K = S.stw_det / S.tw_det;
  return S;
}

inline long long bruteforce_cap() {
  if (const char* env = std::getenv("KMS_BRUTEFORCE_CAP")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 100000;
}

struct OrbitCount {
  long long matchings = 1;
  long long formula = 1;
  std::optional<long long> brute_force;  // absent when the matching space exceeds the cap
  bool agree() const { return !brute_force || *brute_force == formula; }
};

// Orbits of Z^L on global prong-matchings: by union-find over all matchings, and as
// (number of matchings) / [Z^L : Tw].
inline OrbitCount prong_orbit_count(const GraphCover& C, long long cap = bruteforce_cap()) {
  OrbitCount oc;
  oc.matchings = matchings_total(C);
  i64 tw = twist_group(C).det;
  if (oc.matchings % tw != 0) fail(ErrorCode::Inconsistent, "twist index does not divide the number of matchings");
  oc.formula = oc.matchings / tw;
  if (oc.matchings > cap) return oc;

  auto orbits = vertical_orbits(C);
  const int L = C.depth();
  auto encode = [&](const ProngMatching& pm) {
    long long x = 0;
    for (size_t i = 0; i < pm.size(); ++i) x = x * orbits[i].kappa + pm[i];
    return x;
  };
  std::vector<long long> parent(oc.matchings);
  std::iota(parent.begin(), parent.end(), 0LL);
  std::function<long long(long long)> find = [&](long long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  global_prong_matchings(C, [&](const ProngMatching& pm) {
    long long a = encode(pm);
    for (int i = 0; i < L; ++i) {
      std::vector<i64> n(L, 0);
      n[i] = 1;
      long long b = encode(rotation_action(C, n, pm));
      long long ra = find(a), rb = find(b);
      if (ra != rb) parent[ra] = rb;
    }
  });
  long long count = 0;
  for (long long x = 0; x < oc.matchings; ++x) count += find(x) == x;
  oc.brute_force = count;
  return oc;
}

struct SlrtReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// Exponent form of (s_i) -> (s_i^{ell_i}, prod s_i^{ell_i/kappa}) against the torus equation.
inline SlrtReport slrt_parametrization_check(const GraphCover& C) {
  SlrtReport r;
  SimpleTwist S = simple_twist_and_index(C);
  auto orbits = vertical_orbits(C);
  for (size_t o = 0; o < orbits.size(); ++o) {
    const auto& ve = orbits[o];
    for (size_t j = 0; j < ve.passages.size(); ++j) {
      i64 ell = S.ell[ve.passages[j]];
      if (ell % ve.kappa != 0 || checked_mul(ve.kappa, S.m[o][j]) != ell) {
        r.pass = false;
        r.failures.push_back("edge " + std::to_string(ve.edge) + " passage " + std::to_string(-ve.passages[j] - 1));
      }
    }
  }
  if (!r.pass) fail(ErrorCode::ExponentMismatch, "torus equation exponents disagree: " + r.failures.front());
  return r;
}

}  // namespace kms
