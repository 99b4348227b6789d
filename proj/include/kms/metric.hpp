#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "kms/error.hpp"
#include "kms/quadrature.hpp"

namespace kms {

using cplx = std::complex<double>;

// c * prod w_a^{p_a} conj(w_a)^{q_a}
struct PolyTerm {
  double coef = 0;
  std::vector<int> p;
  std::vector<int> q;
};

// Real-valued polynomial in complex auxiliary coordinates and their conjugates.
class Poly {
 public:
  Poly() = default;
  Poly(int vars, std::vector<PolyTerm> terms) : vars_(vars), terms_(std::move(terms)) {
    for (auto& t : terms_) {
      if (static_cast<int>(t.p.size()) != vars_ || static_cast<int>(t.q.size()) != vars_)
        fail(ErrorCode::DimensionMismatch, "polynomial term has wrong exponent length");
      for (int i = 0; i < vars_; ++i)
        if (t.p[i] < 0 || t.q[i] < 0) fail(ErrorCode::DomainError, "negative exponent in polynomial");
    }
  }
  static Poly constant(int vars, double c) { return Poly(vars, {{c, std::vector<int>(vars, 0), std::vector<int>(vars, 0)}}); }

  int vars() const { return vars_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }

  cplx eval(const std::vector<cplx>& w) const {
    if (static_cast<int>(w.size()) != vars_) fail(ErrorCode::DimensionMismatch, "aux point has wrong length");
    cplx s = 0;
    for (const auto& t : terms_) {
      cplx m = t.coef;
      for (int i = 0; i < vars_; ++i) m *= std::pow(w[i], t.p[i]) * std::pow(std::conj(w[i]), t.q[i]);
      s += m;
    }
    return s;
  }

  // d/dw_a (holomorphic) or d/dconj(w_a)
  Poly d(int a, bool conjugate = false) const {
    std::vector<PolyTerm> out;
    for (const auto& t : terms_) {
      int e = conjugate ? t.q[a] : t.p[a];
      if (e == 0) continue;
      PolyTerm n = t;
      n.coef *= e;
      (conjugate ? n.q[a] : n.p[a]) -= 1;
      out.push_back(n);
    }
    return Poly(vars_, out);
  }

  bool real_valued() const {
    std::map<std::pair<std::vector<int>, std::vector<int>>, double> c;
    for (const auto& t : terms_) c[{t.p, t.q}] += t.coef;
    for (const auto& [k, v] : c) {
      auto it = c.find({k.second, k.first});
      if (it == c.end() ? v != 0 : it->second != v) return false;
    }
    return true;
  }

  // Certified [lo, hi] on the box |w_a| <= R.
  std::pair<double, double> certified_range(double R) const {
    double c0 = 0, spread = 0;
    for (const auto& t : terms_) {
      int deg = 0;
      for (int i = 0; i < vars_; ++i) deg += t.p[i] + t.q[i];
      if (deg == 0)
        c0 += t.coef;
      else
        spread += std::fabs(t.coef) * std::pow(R, deg);
    }
    return {c0 - spread, c0 + spread};
  }

 private:
  int vars_ = 0;
  std::vector<PolyTerm> terms_;
};

struct LevelModel {
  std::vector<int> ell_exponents;  // |prod t_j^{e_j}|^2 is this level's scale
  Poly c;
  std::vector<Poly> d;
  std::vector<std::string> x_labels;
};

struct MetricModel {
  int L = 0;
  int aux_dim = 0;
  double box_radius = 1;
  std::vector<LevelModel> levels;
};

struct ModelBounds {
  std::vector<std::pair<double, double>> c;
  std::vector<std::vector<std::pair<double, double>>> d;
};

inline ModelBounds validate_model(const MetricModel& M) {
  if (M.L < 0 || static_cast<int>(M.levels.size()) != M.L + 1)
    fail(ErrorCode::DimensionMismatch, "model needs L+1 levels");
  if (!(M.box_radius > 0)) fail(ErrorCode::DomainError, "box radius must be positive");
  ModelBounds b;
  for (size_t i = 0; i < M.levels.size(); ++i) {
    const auto& lv = M.levels[i];
    const std::string at = " at level -" + std::to_string(i);
    if (static_cast<int>(lv.ell_exponents.size()) != M.L) fail(ErrorCode::DimensionMismatch, "ell_exponents length" + at);
    for (int e : lv.ell_exponents)
      if (e < 0) fail(ErrorCode::DomainError, "negative ell exponent" + at);
    if (lv.x_labels.size() != lv.d.size()) fail(ErrorCode::DimensionMismatch, "x_labels and d differ in length" + at);
    auto check = [&](const Poly& p, const std::string& name) {
      if (p.vars() != M.aux_dim) fail(ErrorCode::DimensionMismatch, name + " has wrong variable count" + at);
      if (!p.real_valued()) fail(ErrorCode::DomainError, name + " is not real-valued" + at);
      auto r = p.certified_range(M.box_radius);
      if (!(r.first > 0)) fail(ErrorCode::DomainError, name + " is not bounded away from zero" + at);
      return r;
    };
    b.c.push_back(check(lv.c, "c"));
    b.d.emplace_back();
    for (size_t j = 0; j < lv.d.size(); ++j) b.d.back().push_back(check(lv.d[j], "d" + std::to_string(j)));
  }
  return b;
}

// A point of the punctured disc stored as (log|x|^2, arg x), so tiny moduli do not underflow.
struct LogCoord {
  double log_abs2 = -1;
  double arg = 0;
  static LogCoord of(cplx x) { return {std::log(std::norm(x)), std::arg(x)}; }
  cplx value() const { return std::polar(std::exp(log_abs2 / 2), arg); }
};

struct MetricPoint {
  std::vector<cplx> t;
  std::vector<std::vector<LogCoord>> x;  // per level
  std::vector<cplx> aux;
};

// h = 1 + |t1|^2 (1 - log|x|^2)
inline MetricModel counterexample_model() {
  MetricModel M;
  M.L = 1;
  M.aux_dim = 0;
  M.levels.push_back({{0}, Poly::constant(0, 1), {}, {}});
  M.levels.push_back({{1}, Poly::constant(0, 1), {Poly::constant(0, 1)}, {"x1"}});
  return M;
}

namespace detail {

inline void check_point(const MetricModel& M, const MetricPoint& P) {
  if (static_cast<int>(P.t.size()) != M.L) fail(ErrorCode::DimensionMismatch, "point has wrong number of t coordinates");
  if (static_cast<int>(P.aux.size()) != M.aux_dim) fail(ErrorCode::DimensionMismatch, "point has wrong aux length");
  if (P.x.size() != M.levels.size()) fail(ErrorCode::DimensionMismatch, "point needs one x list per level");
  for (const auto& t : P.t)
    if (!(std::abs(t) <= 1)) fail(ErrorCode::DomainError, "t outside the closed unit polydisc");
  for (const auto& w : P.aux)
    if (!(std::abs(w) <= M.box_radius)) fail(ErrorCode::DomainError, "aux coordinate outside the declared box");
  for (size_t i = 0; i < P.x.size(); ++i) {
    if (P.x[i].size() != M.levels[i].d.size()) fail(ErrorCode::DimensionMismatch, "wrong x count at a level");
    for (const auto& x : P.x[i])
      if (!(x.log_abs2 < 0) || !std::isfinite(x.log_abs2)) fail(ErrorCode::DomainError, "|x| must lie in (0,1)");
  }
}

inline double level_scale(const LevelModel& lv, const std::vector<cplx>& t) {
  double s = 1;
  for (size_t j = 0; j < t.size(); ++j) s *= std::pow(std::norm(t[j]), lv.ell_exponents[j]);
  return s;
}

}  // namespace detail

inline double eval_metric(const MetricModel& M, const MetricPoint& P) {
  detail::check_point(M, P);
  double h = 0;
  for (size_t i = 0; i < M.levels.size(); ++i) {
    const auto& lv = M.levels[i];
    double s = lv.c.eval(P.aux).real();
    for (size_t j = 0; j < lv.d.size(); ++j) s -= lv.d[j].eval(P.aux).real() * P.x[i][j].log_abs2;
    h += detail::level_scale(lv, P.t) * s;
  }
  if (!(h > 0)) fail(ErrorCode::DomainError, "metric is not positive at this point");
  return h;
}

using CMatrix = std::vector<std::vector<cplx>>;

struct CurvatureBlocks {
  double h = 0;
  std::vector<std::string> coordinates;  // t's, then x's by level, then aux
  std::vector<cplx> dlog_h;              // (1,0) coefficients in the basis dt/t, dx/x, dw
  CMatrix log_basis;                     // coefficients of F_h on (dz/z) ^ conj(dz/z) for t, x; dw for aux
  CMatrix raw;                           // coefficients of F_h on dz_a ^ conj(dz_b)

  bool hermitian(double tol = 1e-12) const {
    for (size_t a = 0; a < raw.size(); ++a)
      for (size_t b = 0; b < raw.size(); ++b) {
        double scale = std::max({1.0, std::abs(log_basis[a][b]), std::abs(log_basis[b][a])});
        if (std::abs(log_basis[a][b] - std::conj(log_basis[b][a])) > tol * scale) return false;
      }
    return true;
  }
};

// F_h = dbar d log h; entry (a,b) is D_a Dbar_b h / h - D_a h conj(D_b h) / h^2 with D = z d/dz on t, x.
inline CurvatureBlocks curvature_blocks(const MetricModel& M, const MetricPoint& P) {
  detail::check_point(M, P);
  for (const auto& t : P.t)
    if (t == cplx(0)) fail(ErrorCode::BoundaryPoint, "a level parameter vanishes");
  CurvatureBlocks R;
  R.h = eval_metric(M, P);
  const int L = M.L, m = M.aux_dim;
  enum Kind { T, X, W };
  struct Coord {
    Kind kind;
    int index;  // t index, level, or aux index
    int j;      // x index within the level
  };
  std::vector<Coord> co;
  for (int a = 0; a < L; ++a) {
    co.push_back({T, a, 0});
    R.coordinates.push_back("t" + std::to_string(a + 1));
  }
  for (size_t i = 0; i < M.levels.size(); ++i)
    for (size_t j = 0; j < M.levels[i].d.size(); ++j) {
      co.push_back({X, static_cast<int>(i), static_cast<int>(j)});
      R.coordinates.push_back(M.levels[i].x_labels[j]);
    }
  for (int a = 0; a < m; ++a) {
    co.push_back({W, a, 0});
    R.coordinates.push_back("w" + std::to_string(a + 1));
  }

  // per-level data
  const size_t nl = M.levels.size();
  std::vector<double> scale(nl);
  std::vector<cplx> S(nl);
  std::vector<std::vector<cplx>> dS(nl, std::vector<cplx>(m)), dbS(nl, std::vector<cplx>(m));
  std::vector<std::vector<std::vector<cplx>>> ddbS(nl, std::vector<std::vector<cplx>>(m, std::vector<cplx>(m)));
  std::vector<std::vector<cplx>> dval(nl);
  std::vector<std::vector<std::vector<cplx>>> d_d(nl), d_db(nl);
  for (size_t i = 0; i < nl; ++i) {
    const auto& lv = M.levels[i];
    scale[i] = detail::level_scale(lv, P.t);
    auto part = [&](auto&& f) {
      cplx s = f(lv.c);
      for (size_t j = 0; j < lv.d.size(); ++j) s -= f(lv.d[j]) * P.x[i][j].log_abs2;
      return s;
    };
    S[i] = part([&](const Poly& p) { return p.eval(P.aux); });
    for (int a = 0; a < m; ++a) {
      dS[i][a] = part([&](const Poly& p) { return p.d(a).eval(P.aux); });
      dbS[i][a] = part([&](const Poly& p) { return p.d(a, true).eval(P.aux); });
      for (int b = 0; b < m; ++b) ddbS[i][a][b] = part([&](const Poly& p) { return p.d(a).d(b, true).eval(P.aux); });
    }
    for (size_t j = 0; j < lv.d.size(); ++j) {
      dval[i].push_back(lv.d[j].eval(P.aux));
      d_d[i].emplace_back();
      d_db[i].emplace_back();
      for (int a = 0; a < m; ++a) {
        d_d[i].back().push_back(lv.d[j].d(a).eval(P.aux));
        d_db[i].back().push_back(lv.d[j].d(a, true).eval(P.aux));
      }
    }
  }
  auto e = [&](size_t i, int a) { return static_cast<double>(M.levels[i].ell_exponents[a]); };

  auto first = [&](const Coord& c) -> cplx {
    cplx s = 0;
    switch (c.kind) {
      case T:
        for (size_t i = 0; i < nl; ++i) s += e(i, c.index) * scale[i] * S[i];
        return s;
      case X: return -scale[c.index] * dval[c.index][c.j];
      case W:
        for (size_t i = 0; i < nl; ++i) s += scale[i] * dS[i][c.index];
        return s;
    }
    return s;
  };
  auto second = [&](const Coord& a, const Coord& b) -> cplx {
    cplx s = 0;
    if (a.kind == T && b.kind == T) {
      for (size_t i = 0; i < nl; ++i) s += e(i, a.index) * e(i, b.index) * scale[i] * S[i];
    } else if (a.kind == T && b.kind == X) {
      s = -e(b.index, a.index) * scale[b.index] * dval[b.index][b.j];
    } else if (a.kind == X && b.kind == T) {
      s = -e(a.index, b.index) * scale[a.index] * dval[a.index][a.j];
    } else if (a.kind == T && b.kind == W) {
      for (size_t i = 0; i < nl; ++i) s += e(i, a.index) * scale[i] * dbS[i][b.index];
    } else if (a.kind == W && b.kind == T) {
      for (size_t i = 0; i < nl; ++i) s += e(i, b.index) * scale[i] * dS[i][a.index];
    } else if (a.kind == X && b.kind == W) {
      s = -scale[a.index] * d_db[a.index][a.j][b.index];
    } else if (a.kind == W && b.kind == X) {
      s = -scale[b.index] * d_d[b.index][b.j][a.index];
    } else if (a.kind == W && b.kind == W) {
      for (size_t i = 0; i < nl; ++i) s += scale[i] * ddbS[i][a.index][b.index];
    }
    return s;  // x-x entries vanish: log|x|^2 is pluriharmonic
  };
  // z_a for the raw basis; aux directions are not rescaled
  auto zval = [&](const Coord& c) -> cplx {
    switch (c.kind) {
      case T: return P.t[c.index];
      case X: return P.x[c.index][c.j].value();
      case W: return 1;
    }
    return 1;
  };

  const size_t n = co.size();
  const double h = R.h;
  R.log_basis.assign(n, std::vector<cplx>(n));
  R.raw.assign(n, std::vector<cplx>(n));
  for (size_t a = 0; a < n; ++a) R.dlog_h.push_back(first(co[a]) / h);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      cplx v = second(co[a], co[b]) / h - first(co[a]) * std::conj(first(co[b])) / (h * h);
      R.log_basis[a][b] = v;
      R.raw[a][b] = v / (zval(co[a]) * std::conj(zval(co[b])));
    }
  return R;
}

// h = Im sum conj(a_j) b_j, with b_j = c_j + (a_j / 2 pi i) log x for j <= split.
inline double area_from_periods(const std::vector<cplx>& a, const std::vector<cplx>& b, LogCoord x, int split) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "a and b differ in length");
  if (split < 0 || split > static_cast<int>(a.size())) fail(ErrorCode::DimensionMismatch, "split index out of range");
  if (split >= 1 && a[0] == cplx(0)) fail(ErrorCode::DegenerateResidue, "a_1 = 0");
  if (split >= 1 && (!(x.log_abs2 < 0) || !std::isfinite(x.log_abs2))) fail(ErrorCode::DomainError, "|x| must lie in (0,1)");
  double h = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    h += (std::conj(a[j]) * b[j]).imag();
    if (static_cast<int>(j) < split) h -= std::norm(a[j]) * x.log_abs2 / (4 * std::numbers::pi);
  }
  if (!(h > 0)) fail(ErrorCode::DomainError, "area is not positive");
  return h;
}

// int_cutoff^eps dr / (r log^2 r), integrated in w = log r; cutoff 0 means the full improper integral.
inline QuadratureReport poincare_radial_integral(double eps, double cutoff = 0) {
  if (!(eps > 0 && eps < 1) || !(cutoff >= 0 && cutoff < eps))
    fail(ErrorCode::DomainError, "need 0 <= cutoff < eps < 1");
  double lo = cutoff == 0 ? -std::numeric_limits<double>::infinity() : std::log(cutoff);
  QuadratureReport r = integrate([](double w) { return 1 / (w * w); }, lo, std::log(eps));
  r.closed_form = 1 / std::fabs(std::log(eps)) - (cutoff == 0 ? 0.0 : 1 / std::fabs(std::log(cutoff)));
  r.cutoffs = {cutoff};
  return r;
}

struct GoodnessRow {
  double n = 0;
  double t = 0;
  double log_abs2_x = 0;
  double lhs = 0;    // |d log h / dt|
  double ratio = 0;  // lhs * |t| * |log |t|^2|
  double ratio_over_log_n = 0;
};

struct GoodnessTable {
  std::vector<GoodnessRow> rows;
  bool increasing = false;
};

// Along t = 1/n, 1 - log|x|^2 = n^2, a Mumford bound would keep the ratio bounded.
inline GoodnessTable goodness_violation(const MetricModel& M, const std::vector<double>& n_list) {
  if (M.L != 1 || M.aux_dim != 0 || M.levels.size() != 2 || M.levels[1].d.size() != 1 || !M.levels[0].d.empty())
    fail(ErrorCode::DimensionMismatch, "goodness check needs a two-level model with one x coordinate");
  GoodnessTable T;
  for (double n : n_list) {
    if (!(n >= 2)) fail(ErrorCode::DomainError, "n must be at least 2");
    GoodnessRow r;
    r.n = n;
    r.t = 1 / n;
    r.log_abs2_x = 1 - n * n;
    MetricPoint P{{cplx(r.t)}, {{}, {{r.log_abs2_x, 0}}}, {}};
    CurvatureBlocks B = curvature_blocks(M, P);
    r.lhs = std::abs(B.dlog_h[0]) / r.t;
    r.ratio = r.lhs * r.t * std::fabs(std::log(r.t * r.t));
    r.ratio_over_log_n = r.ratio / std::log(n);
    T.rows.push_back(r);
  }
  T.increasing = true;
  for (size_t i = 1; i < T.rows.size(); ++i)
    if (!(T.rows[i].ratio > T.rows[i - 1].ratio)) T.increasing = false;
  return T;
}

struct CauchyTable {
  std::vector<double> cutoffs;
  std::vector<double> values;
  std::vector<double> differences;  // |I(c_{j+1}) - I(c_j)|
  std::vector<double> shrink;       // differences[j] / differences[j+1]
  double limit = 0;                 // value with the cutoff removed
  bool decreasing = false;
  bool pass = false;  // every shrink factor >= 2
};

inline void finish_cauchy(CauchyTable& c) {
  for (size_t j = 0; j + 1 < c.values.size(); ++j) c.differences.push_back(std::fabs(c.values[j + 1] - c.values[j]));
  c.decreasing = true;
  c.pass = c.differences.size() >= 2;
  for (size_t j = 0; j + 1 < c.differences.size(); ++j) {
    c.shrink.push_back(c.differences[j] / c.differences[j + 1]);
    if (!(c.differences[j + 1] < c.differences[j])) c.decreasing = false;
    if (!(c.shrink.back() >= 2)) c.pass = false;
  }
}

struct TubeRow {
  double log_delta = 0;
  QuadratureReport G;
  double normalized = 0;  // G * (1 - log delta) / log(1 - log delta)
};

struct TubeReport {
  double eps = 0;
  double double_eps = 0;
  std::vector<TubeRow> rows;
  bool decays = false;
  CauchyTable double_integral;
};

// inner integral of the (t,x) estimate with A = 1 - log s^2: int_0^eps r^3 dr / (1 + A r^2)^2, integrated in
// z = log(1 + A r^2) where it becomes int_0^Z (1 - e^{-z}) dz / (2 A^2)
inline double tube_inner_scaled(double eps, double A, double tol = 1e-13) {
  double Z = std::log1p(eps * eps * A);
  return integrate([](double z) { return -std::expm1(-z); }, 0, Z, tol).value;
}

inline double tube_inner(double eps, double A) { return tube_inner_scaled(eps, A) / (2 * A * A); }

// int_cutoff^eps ds/s int_0^eps r^3 dr / (1 + r^2 (1 - log s^2))^2, outer variable v = log(1 - log s^2);
// cutoff 0 maps to v = infinity
inline double tube_double_integral(double eps, double cutoff) {
  auto v_of = [](double s) { return s == 0 ? std::numeric_limits<double>::infinity() : std::log(1 - 2 * std::log(s)); };
  return integrate(
             [eps](double v) {
               double A = std::exp(v);
               if (!std::isfinite(A)) return 0.0;
               return tube_inner_scaled(eps, A) / (4 * A);
             },
             v_of(eps), v_of(cutoff), 1e-12)
      .value;
}

inline QuadratureReport tube_G(double eps, double log_delta) {
  double A = 1 - log_delta;
  QuadratureReport r = integrate([A](double x) { return x / (1 + x * x * A); }, 0, eps);
  r.closed_form = std::log1p(eps * eps * A) / (2 * A);
  return r;
}

inline TubeReport tube_integral_estimates(const MetricModel& M, double eps, const std::vector<double>& log_deltas,
                                          const std::vector<double>& cutoffs = {1e-2, 1e-4, 1e-6},
                                          double double_eps = 0.5) {
  validate_model(M);
  if (M.L != 1 || M.levels[1].d.size() != 1) fail(ErrorCode::DimensionMismatch, "tube estimates need a two-level model with one x");
  if (!(eps > 0 && eps <= 1)) fail(ErrorCode::DomainError, "eps must lie in (0,1]");
  TubeReport T;
  T.eps = eps;
  T.double_eps = double_eps;
  for (size_t i = 0; i < log_deltas.size(); ++i) {
    if (!(log_deltas[i] < 0)) fail(ErrorCode::DomainError, "delta must lie in (0,1)");
    if (i > 0 && !(log_deltas[i] < log_deltas[i - 1])) fail(ErrorCode::DomainError, "delta list must decrease");
    TubeRow row;
    row.log_delta = log_deltas[i];
    row.G = tube_G(eps, log_deltas[i]);
    double A = 1 - log_deltas[i];
    row.normalized = row.G.value * A / std::log(A);
    T.rows.push_back(row);
  }
  T.decays = true;
  for (size_t i = 1; i < T.rows.size(); ++i)
    if (!(T.rows[i].G.value < T.rows[i - 1].G.value)) T.decays = false;

  CauchyTable& c = T.double_integral;
  if (!(double_eps > 0 && double_eps < 1)) fail(ErrorCode::DomainError, "double integral eps must lie in (0,1)");
  const double d_eps = double_eps;
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0 && cutoffs[i] < d_eps)) fail(ErrorCode::DomainError, "cutoffs must lie in (0,eps)");
    if (i > 0 && !(cutoffs[i] < cutoffs[i - 1])) fail(ErrorCode::DomainError, "cutoffs must decrease");
    c.cutoffs.push_back(cutoffs[i]);
    c.values.push_back(tube_double_integral(d_eps, cutoffs[i]));
  }
  c.limit = tube_double_integral(d_eps, 0);
  finish_cauchy(c);
  if (!c.decreasing) fail(ErrorCode::NonConvergent, "Cauchy differences of the double integral do not decrease");
  return T;
}

// Integral of |F_h| over {c < |t| < eps, c < |x| < eps} for a two-variable model: wedge 1 sums the
// absolute raw coefficients, wedge 2 takes |det|.
inline double curvature_l1(const MetricModel& M, double eps, double cutoff, int wedge) {
  if (M.L != 1 || M.aux_dim != 0 || M.levels[0].d.size() + M.levels[1].d.size() != 1)
    fail(ErrorCode::DimensionMismatch, "L1 check needs a model in (t, x) only");
  if (wedge != 1 && wedge != 2) fail(ErrorCode::DomainError, "wedge degree must be 1 or 2");
  const int xl = M.levels[0].d.empty() ? 1 : 0;
  auto density = [&](double wt, double wx) {
    MetricPoint P;
    P.t = {cplx(std::exp(wt))};
    P.x.assign(2, {});
    P.x[xl] = {{2 * wx, 0}};
    CurvatureBlocks B = curvature_blocks(M, P);
    double f;
    if (wedge == 1) {
      f = 0;
      for (const auto& row : B.raw)
        for (const auto& v : row) f += std::abs(v);
    } else {
      f = std::abs(B.raw[0][0] * B.raw[1][1] - B.raw[0][1] * B.raw[1][0]);
    }
    // r dr = e^{2w} dw in each variable, angular factor (2 pi)^2
    return 4 * std::numbers::pi * std::numbers::pi * f * std::exp(2 * wt + 2 * wx);
  };
  double lo = std::log(cutoff), hi = std::log(eps);
  return integrate([&](double wt) { return integrate([&](double wx) { return density(wt, wx); }, lo, hi, 1e-10).value; },
                   lo, hi, 1e-10)
      .value;
}

inline CauchyTable curvature_l1_table(const MetricModel& M, double eps, const std::vector<double>& cutoffs, int wedge) {
  CauchyTable c;
  for (double co : cutoffs) {
    if (!(co > 0 && co < eps)) fail(ErrorCode::DomainError, "cutoffs must lie in (0,eps)");
    c.cutoffs.push_back(co);
    c.values.push_back(curvature_l1(M, eps, co, wedge));
  }
  finish_cauchy(c);
  return c;
}

struct ExtensionRow {
  double t = 0;
  double h = 0;
  double c0 = 0;
  double error = 0;
  double bound = 0;
  bool ok = false;
};

// For models without x coordinates, h(t) -> c_(0) with |h - c_(0)| <= |t|^2 * sup of the lower-level c.
inline std::vector<ExtensionRow> vertical_extension_check(const MetricModel& M, const std::vector<cplx>& aux,
                                                          const std::vector<double>& radii) {
  ModelBounds b = validate_model(M);
  for (const auto& lv : M.levels)
    if (!lv.d.empty()) fail(ErrorCode::DimensionMismatch, "vertical extension needs an x-free model");
  double sup_lower = 0;
  for (size_t i = 1; i < b.c.size(); ++i) sup_lower += b.c[i].second;
  std::vector<ExtensionRow> out;
  for (double r : radii) {
    MetricPoint P{std::vector<cplx>(M.L, cplx(r)), std::vector<std::vector<LogCoord>>(M.levels.size()), aux};
    ExtensionRow row;
    row.t = r;
    row.h = eval_metric(M, P);
    row.c0 = M.levels[0].c.eval(aux).real();
    row.error = std::fabs(row.h - row.c0);
    row.bound = r * r * sup_lower;
    row.ok = row.error <= row.bound;
    out.push_back(row);
  }
  return out;
}

}  // namespace kms
