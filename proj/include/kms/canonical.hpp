#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace kms {

// Node-colored digraph with labeled arcs; the generic carrier for canonical labeling
// of level graphs and covers.
struct ColoredStructure {
  struct Arc {
    int src;
    int dst;
    int label;
  };
  std::vector<std::vector<int>> colors;
  std::vector<Arc> arcs;

  int add_node(std::vector<int> color) {
    colors.push_back(std::move(color));
    return static_cast<int>(colors.size()) - 1;
  }
  void add_arc(int s, int d, int label) { arcs.push_back({s, d, label}); }
};

namespace detail {

class Canonizer {
 public:
  explicit Canonizer(const ColoredStructure& s) : s_(s), n_(static_cast<int>(s.colors.size())) {
    out_.resize(n_);
    in_.resize(n_);
    for (const auto& a : s.arcs) {
      out_[a.src].push_back({a.label, a.dst});
      in_[a.dst].push_back({a.label, a.src});
    }
  }

  std::vector<int> run() {
    std::vector<std::vector<int>> uniq = s_.colors;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> col(n_);
    for (int i = 0; i < n_; ++i)
      col[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), s_.colors[i]) - uniq.begin());
    search(col);
    return best_;
  }

 private:
  using Sig = std::tuple<int, std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>;

  int refine(std::vector<int>& col) const {
    int classes = count(col);
    while (true) {
      std::vector<Sig> sig(n_);
      for (int i = 0; i < n_; ++i) {
        std::vector<std::pair<int, int>> o, in;
        for (auto [lab, d] : out_[i]) o.push_back({lab, col[d]});
        for (auto [lab, s] : in_[i]) in.push_back({lab, col[s]});
        std::sort(o.begin(), o.end());
        std::sort(in.begin(), in.end());
        sig[i] = Sig{col[i], std::move(o), std::move(in)};
      }
      std::vector<Sig> uniq = sig;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      for (int i = 0; i < n_; ++i)
        col[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[i]) - uniq.begin());
      int c = static_cast<int>(uniq.size());
      if (c == classes) return c;
      classes = c;
    }
  }

  static int count(const std::vector<int>& col) {
    std::vector<int> c = col;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  std::vector<int> encode(const std::vector<int>& pos) const {
    std::vector<int> inv(n_);
    for (int i = 0; i < n_; ++i) inv[pos[i]] = i;
    std::vector<int> code;
    for (int p = 0; p < n_; ++p) {
      const auto& c = s_.colors[inv[p]];
      code.push_back(static_cast<int>(c.size()));
      code.insert(code.end(), c.begin(), c.end());
    }
    std::vector<std::tuple<int, int, int>> arcs;
    for (const auto& a : s_.arcs) arcs.emplace_back(pos[a.src], pos[a.dst], a.label);
    std::sort(arcs.begin(), arcs.end());
    code.push_back(-1);
    for (auto [a, b, l] : arcs) {
      code.push_back(a);
      code.push_back(b);
      code.push_back(l);
    }
    return code;
  }

  void search(std::vector<int> col) {
    int classes = refine(col);
    if (classes == n_) {
      std::vector<int> code = encode(col);
      if (best_.empty() || code < best_) best_ = std::move(code);
      return;
    }
    std::vector<int> size(classes, 0);
    for (int c : col) size[c]++;
    int target = 0;
    while (size[target] < 2) ++target;
    for (int v = 0; v < n_; ++v) {
      if (col[v] != target) continue;
      std::vector<int> next(n_);
      for (int i = 0; i < n_; ++i) next[i] = 2 * col[i] + ((col[i] == target && i != v) ? 1 : 0);
      search(next);
    }
  }

  const ColoredStructure& s_;
  int n_;
  std::vector<std::vector<std::pair<int, int>>> out_, in_;
  std::vector<int> best_;
};

}  // namespace detail

// Canonical string: equal iff the structures are isomorphic (colors and arc labels respected).
inline std::string canonical_string(const ColoredStructure& s) {
  if (s.colors.empty()) return "empty";
  std::vector<int> code = detail::Canonizer(s).run();
  std::string out;
  for (size_t i = 0; i < code.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(code[i]);
  }
  return out;
}

inline std::string short_hash(const std::string& s) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace kms
