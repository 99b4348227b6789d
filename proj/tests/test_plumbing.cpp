#include <catch_amalgamated.hpp>

#include <complex>

#include "fixtures.hpp"
#include "kms/plumbing.hpp"

using namespace kms;

namespace {

using cplx = std::complex<double>;

int edge_with_kappa(const GraphCover& C, int kappa) {
  for (int e = 0; e < static_cast<int>(C.edges.size()); ++e)
    if (!C.horizontal(e) && C.edges[e].ends[0].kappa == kappa) return e;
  return -1;
}

cplx eval_mono(const Monomial& m, const std::map<std::string, cplx>& at) {
  cplx r = 1;
  for (const auto& [v, e] : m) r *= std::pow(at.at(v), static_cast<double>(e));
  return r;
}

cplx eval(const Laurent& f, const std::map<std::string, cplx>& at) {
  cplx r = 0;
  for (const auto& [m, c] : f.terms) r += static_cast<double>(c) * eval_mono(m, at);
  return r;
}

// Numerical pull-back: both sides of the vertical identity at a random point, with the
// prefactors rebuilt from ell and the levels of the edge.
void numeric_vertical_check(const GraphCover& C, int edge, std::mt19937& rng) {
  auto rep = vertical_fixture_identity(C, edge);
  auto S = simple_twist_and_index(C);
  std::uniform_real_distribution<double> mag(0.3, 0.9), ang(0, 6.283185307179586);
  std::map<std::string, cplx> at;
  for (int j = 0; j < C.depth(); ++j) at[t_name(j)] = std::polar(mag(rng), ang(rng));
  const cplx u = std::polar(mag(rng), ang(rng)), r = cplx(mag(rng), mag(rng));
  cplx T = 1, A = 1, B = 1;
  for (size_t j = 0; j < rep.passages.size(); ++j) T *= std::pow(at[t_name(rep.passages[j])], static_cast<double>(rep.m[j]));
  const CoverEdge& ce = C.edges[edge];
  int top = C.vertices[ce.ends[0].vertex].level, bottom = C.vertices[ce.ends[1].vertex].level;
  for (int j = 0; j < -top; ++j) A *= std::pow(at[t_name(j)], static_cast<double>(S.ell[j]));
  for (int j = 0; j < -bottom; ++j) B *= std::pow(at[t_name(j)], static_cast<double>(S.ell[j]));
  const double k = rep.kappa;
  const cplx v = T / u;
  const cplx dv_du = -T / (u * u);
  cplx lhs = (-B * std::pow(v, -k - 1) + r / v) * dv_du;
  cplx rhs = A * std::pow(u, k - 1) - r / u;
  CHECK(std::abs(lhs - rhs) <= 1e-9 * (std::abs(lhs) + std::abs(rhs)));
}

}  // namespace

TEST_CASE("Laurent arithmetic and substitution") {
  Laurent f = Laurent::term(2, var("v", -3)) + Laurent::term(-1, var("v"));
  auto g = substitute(f, "v", 1, mono_mul(var("t", 2), var("u", -1)));
  Laurent expect = Laurent::term(2, mono_mul(var("t", -6), var("u", 3))) + Laurent::term(-1, mono_mul(var("t", 2), var("u", -1)));
  CHECK((g - expect).zero());
  CHECK((f - f).zero());
  CHECK(to_string(mono_mul(var("a", 2), var("a", -2))) == "1");
  CHECK(to_string(mono_pow(mono_mul(var("t1"), var("t2", 2)), 3)) == "t1^3*t2^6");
  auto doubled = substitute(Laurent::term(1, var("v", 2)), "v", 3, var("w"));
  CHECK((doubled - Laurent::term(9, var("w", 2))).zero());
  CHECK_THROWS_AS(substitute(Laurent::term(1, var("v", -1)), "v", 2, var("w")), Error);
}

TEST_CASE("vertical fixture examples") {
  auto c22 = fx::identity_cover(fx::kappa_2_2());
  auto r22 = vertical_fixture_identity(c22, edge_with_kappa(c22, 2));
  CHECK(r22.holds);
  CHECK(r22.kappa == 2);
  CHECK(r22.ell == std::vector<i64>{2});
  CHECK(r22.m == std::vector<i64>{1});
  CHECK(r22.T == "t1");
  CHECK(r22.top_prefactor == "1");
  CHECK(r22.bottom_prefactor == "t1^2");

  auto c23 = fx::identity_cover(fx::kappa_2_3());
  auto r3 = vertical_fixture_identity(c23, edge_with_kappa(c23, 3));
  CHECK(r3.holds);
  CHECK(r3.ell == std::vector<i64>{6});
  CHECK(r3.m == std::vector<i64>{2});
  CHECK(r3.T == "t1^2");
  CHECK(r3.residual_terms == 0);

  auto c1 = fx::identity_cover(fx::single_tail());
  auto r1 = vertical_fixture_identity(c1, 0);
  CHECK(r1.holds);
  CHECK(r1.kappa == 1);
  CHECK(r1.m == std::vector<i64>{1});
  // pulled-back v-form has the v^{-2} pole
  Laurent v_form = Laurent::term(-1, mono_mul(var("t1"), var("v", -2)));
  auto pulled = pull_back_inversion(v_form, var("t1"));
  CHECK((pulled - Laurent::term(1, {})).zero());

  auto chain = fx::identity_cover(fx::three_level_chain());
  auto long_edge = vertical_fixture_identity(chain, edge_with_kappa(chain, 3));
  CHECK(long_edge.passages.size() == 2);
  CHECK(long_edge.m == std::vector<i64>{2, 2});
  CHECK(long_edge.bottom_prefactor == "t1^6*t2^6");
}

TEST_CASE("vertical fixture rejects horizontal edges") {
  auto b = fx::identity_cover(fx::banana());
  try {
    vertical_fixture_identity(b, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("horizontal fixture identity") {
  CHECK(horizontal_fixture_identity("x1").holds);
  CHECK(horizontal_fixture_identity("x7", "s").holds);
  auto zero = horizontal_fixture_identity("x1", "");
  CHECK(zero.holds);
  CHECK(zero.residual_terms == 0);
  for (int j = 1; j <= 5; ++j) CHECK(horizontal_fixture_identity("x" + std::to_string(j)).holds);
}

TEST_CASE("vertical fixture holds on every vertical edge of enumerated covers") {
  std::mt19937 rng(61);
  int checked = 0;
  std::vector<GraphCover> covers;
  for (const auto& sig : fx::sweep_strata()) {
    auto part = fx::all_covers(sig, EnumerationMode::all_up_to(3, 4));
    covers.insert(covers.end(), part.begin(), part.end());
  }
  for (auto G : {fx::three_level_chain(), fx::kappa_2_3(), fx::kappa_2_2()})
    for (const auto& C : covers_of(G)) covers.push_back(C);
  for (const auto& C : covers)
    for (int e = 0; e < static_cast<int>(C.edges.size()); ++e) {
      if (C.horizontal(e)) continue;
      auto rep = vertical_fixture_identity(C, e);
      CHECK(rep.holds);
      for (size_t j = 0; j < rep.m.size(); ++j) CHECK(rep.m[j] * rep.kappa == rep.ell[j]);
      numeric_vertical_check(C, e, rng);
      ++checked;
    }
  CHECK(checked > 30);
}

TEST_CASE("horizontal fixture agrees numerically") {
  std::mt19937 rng(62);
  std::uniform_real_distribution<double> d(0.2, 1.0);
  for (int t = 0; t < 50; ++t) {
    cplx x(d(rng), d(rng)), u(d(rng), -d(rng)), r(d(rng), d(rng));
    cplx v = x / u, dv_du = -x / (u * u);
    CHECK(std::abs(r / v * dv_du - (-r / u)) < 1e-12);
    std::map<std::string, cplx> at{{"x", x}, {"u", u}, {"r", r}};
    Laurent pulled = pull_back_inversion(Laurent::term(1, mono_mul(var("r"), var("v", -1))), var("x"));
    CHECK(std::abs(eval(pulled, at) + r / u) < 1e-12);
  }
}
