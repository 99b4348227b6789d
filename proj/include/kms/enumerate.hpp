#pragma once

#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "kms/level_graph.hpp"

namespace kms {

struct EnumerationMode {
  enum Kind { TwoLevel, OneHorizontal, AllUpTo };
  Kind kind = TwoLevel;
  int max_levels = 2;
  int max_edges = 0;  // 0: stability bound 3g-3+n

  static EnumerationMode two_level() { return {TwoLevel, 2, 0}; }
  static EnumerationMode one_horizontal() { return {OneHorizontal, 1, 1}; }
  static EnumerationMode all_up_to(int levels, int edges) { return {AllUpTo, levels, edges}; }
};

inline std::string to_string(const EnumerationMode& m) {
  switch (m.kind) {
    case EnumerationMode::TwoLevel: return "two_level";
    case EnumerationMode::OneHorizontal: return "one_horizontal";
    case EnumerationMode::AllUpTo: return "all_up_to";
  }
  return "?";
}

struct EnumerationOptions {
  double cap = 5e7;  // upper bound on raw candidate count before refusing
};

namespace detail {

class GraphEnumerator {
 public:
  GraphEnumerator(const Signature& sig, const EnumerationMode& mode, const EnumerationOptions& opt,
                  const std::function<void(const EnhancedLevelGraph&)>& sink)
      : sig_(sig), mode_(mode), opt_(opt), sink_(sink) {
    n_ = sig.n();
    vmax_ = std::max(1, 2 * sig.g - 2 + n_);
    emax_ = std::max(0, 3 * sig.g - 3 + n_);
    if (mode.kind == EnumerationMode::OneHorizontal) emax_ = std::min(emax_, 1);
    if (mode.kind == EnumerationMode::AllUpTo && mode.max_edges > 0) emax_ = std::min(emax_, mode.max_edges);
  }

  void run() {
    counting_ = true;
    estimate_ = 0;
    sweep();
    if (estimate_ > opt_.cap)
      fail(ErrorCode::BoundsTooLarge, "estimated " + std::to_string(static_cast<long long>(estimate_)) +
                                          " candidates exceeds cap " + std::to_string(static_cast<long long>(opt_.cap)));
    counting_ = false;
    sweep();
  }

 private:
  void sweep() {
    for (int V = 1; V <= vmax_; ++V) {
      int lo = 1, hi = std::min(V, mode_.max_levels);
      if (mode_.kind == EnumerationMode::TwoLevel) lo = hi = 2;
      if (mode_.kind == EnumerationMode::OneHorizontal) lo = hi = 1;
      for (int nl = lo; nl <= hi; ++nl) {
        if (nl > V) continue;
        std::vector<int> comp;
        compositions(V, nl, comp);
      }
    }
  }

  void compositions(int V, int parts, std::vector<int>& comp) {
    if (static_cast<int>(comp.size()) == parts - 1) {
      int used = 0;
      for (int c : comp) used += c;
      if (V - used < 1) return;
      comp.push_back(V - used);
      levels_.clear();
      for (int b = 0; b < parts; ++b)
        for (int i = 0; i < comp[b]; ++i) levels_.push_back(-b);
      genera_.assign(V, 0);
      assign_genus(0, 0);
      comp.pop_back();
      return;
    }
    int used = 0;
    for (int c : comp) used += c;
    for (int c = 1; used + c <= V - (parts - static_cast<int>(comp.size()) - 1); ++c) {
      comp.push_back(c);
      compositions(V, parts, comp);
      comp.pop_back();
    }
  }

  void assign_genus(int v, int total) {
    const int V = static_cast<int>(levels_.size());
    if (v == V) {
      int E = sig_.g - total + V - 1;
      if (E < 1 || E > emax_) return;
      build_pairs();
      if (pairs_.empty()) return;
      if (counting_) {
        estimate_ += binom(static_cast<int>(pairs_.size()) + E - 1, E) * std::pow(static_cast<double>(V), n_);
        return;
      }
      chosen_.clear();
      choose_edges(E, 0);
      return;
    }
    int start = (v > 0 && levels_[v - 1] == levels_[v]) ? genera_[v - 1] : 0;
    for (int gv = start; total + gv <= sig_.g; ++gv) {
      genera_[v] = gv;
      assign_genus(v + 1, total + gv);
    }
  }

  static double binom(int a, int b) {
    double r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  }

  void build_pairs() {
    pairs_.clear();
    const int V = static_cast<int>(levels_.size());
    for (int u = 0; u < V; ++u)
      for (int w = u; w < V; ++w) {
        bool hor = levels_[u] == levels_[w];
        if (mode_.kind == EnumerationMode::TwoLevel && hor) continue;
        if (mode_.kind == EnumerationMode::OneHorizontal && !hor) continue;
        pairs_.push_back({u, w});
      }
  }

  void choose_edges(int remaining, int from) {
    if (remaining == 0) {
      const int V = static_cast<int>(levels_.size());
      if (detail::count_components(V, chosen_) != 1) return;
      legs_.assign(n_, 0);
      assign_legs(0);
      return;
    }
    for (int p = from; p < static_cast<int>(pairs_.size()); ++p) {
      chosen_.push_back(pairs_[p]);
      choose_edges(remaining - 1, p);
      chosen_.pop_back();
    }
  }

  void assign_legs(int i) {
    const int V = static_cast<int>(levels_.size());
    if (i == n_) {
      for (int v = 0; v < V; ++v) {
        int he = 0;
        for (auto [a, b] : chosen_) he += (a == v) + (b == v);
        for (int l = 0; l < n_; ++l) he += legs_[l] == v;
        if (2 * genera_[v] - 2 + he <= 0) return;
      }
      kappa_.assign(chosen_.size(), 0);
      solve_kappa(0);
      return;
    }
    for (int v = 0; v < V; ++v) {
      legs_[i] = v;
      assign_legs(i + 1);
    }
  }

  // Vertices are sorted by level from the top, so incoming kappas are known when v is reached.
  void solve_kappa(int v) {
    const int V = static_cast<int>(levels_.size());
    if (v == V) {
      emit();
      return;
    }
    const long long k = sig_.k;
    long long S = k * (2 * genera_[v] - 2);
    for (int l = 0; l < n_; ++l)
      if (legs_[l] == v) S -= sig_.mu[l];
    std::vector<int> down;
    for (size_t e = 0; e < chosen_.size(); ++e) {
      auto [a, b] = chosen_[e];
      S += k * ((a == v) + (b == v));
      bool hor = levels_[a] == levels_[b];
      if (hor) continue;
      if (b == v) S += kappa_[e];
      if (a == v) down.push_back(static_cast<int>(e));
    }
    if (down.empty()) {
      if (S == 0) solve_kappa(v + 1);
      return;
    }
    distribute(v, down, 0, S);
  }

  void distribute(int v, const std::vector<int>& down, size_t idx, long long left) {
    if (idx + 1 == down.size()) {
      if (left < 1) return;
      kappa_[down[idx]] = static_cast<int>(left);
      solve_kappa(v + 1);
      return;
    }
    long long rest = static_cast<long long>(down.size() - idx - 1);
    for (long long x = 1; x <= left - rest; ++x) {
      kappa_[down[idx]] = static_cast<int>(x);
      distribute(v, down, idx + 1, left - x);
    }
  }

  void emit() {
    LevelGraph g;
    for (size_t v = 0; v < levels_.size(); ++v) g.vertices.push_back({genera_[v], levels_[v]});
    for (size_t e = 0; e < chosen_.size(); ++e) {
      auto [a, b] = chosen_[e];
      bool hor = levels_[a] == levels_[b];
      int kap = hor ? 0 : kappa_[e];
      g.edges.push_back(Edge{{{a, kap}, {b, -kap}}});
    }
    for (int l = 0; l < n_; ++l) g.legs.push_back({legs_[l], l + 1, sig_.mu[l], sig_.mu[l] + sig_.k});
    EnhancedLevelGraph G = validate_enhanced_graph(g, sig_);
    if (seen_.insert(canonical_form(G)).second) sink_(G);
  }

  Signature sig_;
  EnumerationMode mode_;
  EnumerationOptions opt_;
  const std::function<void(const EnhancedLevelGraph&)>& sink_;
  int n_ = 0, vmax_ = 0, emax_ = 0;
  bool counting_ = false;
  double estimate_ = 0;
  std::vector<int> levels_, genera_, legs_, kappa_;
  std::vector<std::pair<int, int>> pairs_, chosen_;
  std::set<std::string> seen_;
};

}  // namespace detail

// Streams every axiom-valid boundary graph of sig within the mode's bounds, once per
// isomorphism class, in a deterministic order.
inline void enumerate_boundary_graphs(const Signature& sig_in, const EnumerationMode& mode,
                                      const std::function<void(const EnhancedLevelGraph&)>& sink,
                                      const EnumerationOptions& opt = {}) {
  Signature sig = validate_signature(sig_in);
  if (!sig.finite_area) fail(ErrorCode::InvalidSignature, "boundary enumeration needs a finite-area signature");
  if (mode.kind == EnumerationMode::AllUpTo && mode.max_levels < 1)
    fail(ErrorCode::InvalidSignature, "max_levels must be positive");
  detail::GraphEnumerator(sig, mode, opt, sink).run();
}

inline std::vector<EnhancedLevelGraph> boundary_graphs(const Signature& sig, const EnumerationMode& mode,
                                                       const EnumerationOptions& opt = {}) {
  std::vector<EnhancedLevelGraph> out;
  enumerate_boundary_graphs(sig, mode, [&](const EnhancedLevelGraph& G) { out.push_back(G); }, opt);
  return out;
}

}  // namespace kms
