#pragma once

#include <map>
#include <string>
#include <vector>

#include "kms/prong.hpp"

namespace kms {

// Exponent vector over named variables; zero exponents are never stored.
using Monomial = std::map<std::string, i64>;

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [v, e] : b) {
    i64 x = checked_add(r[v], e);
    if (x == 0)
      r.erase(v);
    else
      r[v] = x;
  }
  return r;
}

inline Monomial mono_pow(const Monomial& a, i64 p) {
  Monomial r;
  if (p == 0) return r;
  for (const auto& [v, e] : a) r[v] = checked_mul(e, p);
  return r;
}

inline Monomial var(const std::string& name, i64 e = 1) {
  Monomial m;
  if (e != 0) m[name] = e;
  return m;
}

inline std::string to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += v;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Laurent polynomial with integer coefficients.
struct Laurent {
  std::map<Monomial, i64> terms;

  static Laurent term(i64 c, Monomial m) {
    Laurent l;
    if (c != 0) l.terms[std::move(m)] = c;
    return l;
  }
  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    for (const auto& [m, c] : o.terms) {
      i64 x = checked_add(r.terms[m], c);
      if (x == 0)
        r.terms.erase(m);
      else
        r.terms[m] = x;
    }
    return r;
  }
  Laurent operator-(const Laurent& o) const { return *this + o * Laurent::term(-1, {}); }
  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) r = r + term(checked_mul(c1, c2), mono_mul(m1, m2));
    return r;
  }
  bool zero() const { return terms.empty(); }
};

// Substitute variable x -> c * M (a single monomial) in every term.
inline Laurent substitute(const Laurent& f, const std::string& x, i64 c, const Monomial& M) {
  Laurent r;
  for (const auto& [m, coef] : f.terms) {
    Monomial rest = m;
    i64 e = 0;
    if (auto it = rest.find(x); it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    i64 cp = 1;
    for (i64 i = 0; i < (e < 0 ? -e : e); ++i) cp = checked_mul(cp, c);
    if (e < 0 && cp != 1 && cp != -1) fail(ErrorCode::ExponentMismatch, "non-unit coefficient under negative power");
    r = r + Laurent::term(checked_mul(coef, cp), mono_mul(rest, mono_pow(M, e)));
  }
  return r;
}

// f(v) dv with v = T/u, i.e. dv = -T u^{-2} du; returns the du-coefficient.
inline Laurent pull_back_inversion(const Laurent& f_v, const Monomial& T) {
  Laurent sub = substitute(f_v, "v", 1, mono_mul(T, var("u", -1)));
  return sub * Laurent::term(-1, mono_mul(T, var("u", -2)));
}

struct FixtureReport {
  bool holds = false;
  int edge = -1;
  int kappa = 0;
  std::vector<int> passages;
  std::vector<i64> ell;
  std::vector<i64> m;
  std::string T;
  std::string top_prefactor;
  std::string bottom_prefactor;
  std::size_t residual_terms = 0;
  std::string assumption;
};

inline std::string t_name(int passage_index) { return "t" + std::to_string(passage_index + 1); }

// Product of t_j^{ell_j} over the passages above the given level (the level rescaling).
inline Monomial level_scale(const std::vector<i64>& ell, int level) {
  Monomial s;
  for (int j = 0; j < -level; ++j) s = mono_mul(s, var(t_name(j), ell[j]));
  return s;
}

inline FixtureReport vertical_fixture_identity(const GraphCover& C, int edge) {
  if (edge < 0 || edge >= static_cast<int>(C.edges.size()) || C.horizontal(edge))
    fail(ErrorCode::DimensionMismatch, "edge " + std::to_string(edge) + " is not a vertical cover edge");
  const CoverEdge& ce = C.edges[edge];
  SimpleTwist S = simple_twist_and_index(C);
  FixtureReport r;
  r.edge = edge;
  r.kappa = ce.ends[0].kappa;
  int top = C.vertices[ce.ends[0].vertex].level, bottom = C.vertices[ce.ends[1].vertex].level;
  r.passages = crossed_passages(top, bottom);
  Monomial T, ell_prod;
  for (int p : r.passages) {
    i64 ell = S.ell[p];
    if (ell % r.kappa != 0) fail(ErrorCode::ExponentMismatch, "ell not divisible by kappa on edge " + std::to_string(edge));
    i64 m = ell / r.kappa;
    if (checked_mul(m, r.kappa) != ell) fail(ErrorCode::ExponentMismatch, "m * kappa != ell");
    r.ell.push_back(ell);
    r.m.push_back(m);
    T = mono_mul(T, var(t_name(p), m));
    ell_prod = mono_mul(ell_prod, var(t_name(p), ell));
  }
  if (mono_pow(T, r.kappa) != ell_prod) fail(ErrorCode::ExponentMismatch, "T^kappa differs from prod t^ell");
  Monomial A = level_scale(S.ell, top);
  Monomial B = level_scale(S.ell, bottom);
  if (B != mono_mul(A, ell_prod)) fail(ErrorCode::ExponentMismatch, "bottom scale is not top scale times prod t^ell");
  r.T = to_string(T);
  r.top_prefactor = to_string(A);
  r.bottom_prefactor = to_string(B);

  const i64 k = r.kappa;
  Laurent v_form = Laurent::term(-1, mono_mul(B, var("v", -k - 1))) + Laurent::term(1, mono_mul(var("r"), var("v", -1)));
  Laurent u_form = Laurent::term(1, mono_mul(A, var("u", k - 1))) + Laurent::term(-1, mono_mul(var("r"), var("u", -1)));
  Laurent expected_from_v = Laurent::term(1, mono_mul(B, mono_mul(mono_pow(T, -k), var("u", k - 1)))) +
                            Laurent::term(-1, mono_mul(var("r"), var("u", -1)));
  Laurent pulled = pull_back_inversion(v_form, T);
  r.residual_terms = (pulled - u_form).terms.size() + (pulled - expected_from_v).terms.size();
  r.holds = r.residual_terms == 0;
  r.assumption = "bottom prefactor = top prefactor * prod over crossed passages of t_i^ell_i";
  if (!r.holds) fail(ErrorCode::ExponentMismatch, "vertical fixture leaves " + std::to_string(r.residual_terms) + " residual terms");
  return r;
}

struct HorizontalFixtureReport {
  bool holds = false;
  std::string x;
  std::size_t residual_terms = 0;
};

// -r du/u against r dv/v under uv = x; an empty residue symbol means r = 0.
inline HorizontalFixtureReport horizontal_fixture_identity(const std::string& x_symbol, const std::string& residue_symbol = "r") {
  Laurent r = residue_symbol.empty() ? Laurent{} : Laurent::term(1, var(residue_symbol));
  Laurent u_form = r * Laurent::term(-1, var("u", -1));
  Laurent v_form = r * Laurent::term(1, var("v", -1));
  Laurent pulled = pull_back_inversion(v_form, var(x_symbol));
  HorizontalFixtureReport rep;
  rep.x = x_symbol;
  Laurent residual = pulled - u_form;
  rep.residual_terms = residual.terms.size();
  rep.holds = residual.zero();
  return rep;
}

}  // namespace kms
