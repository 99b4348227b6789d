#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "kms/residues.hpp"

using namespace kms;

namespace {

i64 powmod(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// A primitive k-th root of unity modulo a prime p = 1 mod k.
i64 root_of_unity(int k, i64 p) {
  for (i64 g = 2; g < p; ++g) {
    i64 a = powmod(g, (p - 1) / k, p);
    bool primitive = true;
    for (int d = 1; d < k; ++d)
      if (k % d == 0 && powmod(a, d, p) == 1) primitive = false;
    if (primitive) return a;
  }
  return 1;
}

int rank_mod_p(std::vector<std::vector<i64>> m, i64 p) {
  if (m.empty()) return 0;
  size_t r = 0, cols = m[0].size();
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t q = r;
    while (q < m.size() && m[q][c] % p == 0) ++q;
    if (q == m.size()) continue;
    std::swap(m[r], m[q]);
    i64 inv = powmod(mod(m[r][c], p), p - 2, p);
    for (size_t i = r + 1; i < m.size(); ++i) {
      i64 f = mod(m[i][c], p) * inv % p;
      for (size_t j = c; j < cols; ++j) m[i][j] = mod(m[i][j] - f * mod(m[r][j], p), p);
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Rank over Q(zeta_k) of a matrix of integer combinations of zeta powers, by reduction modulo
// several primes p = 1 mod k with zeta sent to a primitive root; the maximum is the true rank
// except for unlucky primes.
int finite_field_rank(int k, const std::vector<std::vector<std::vector<int>>>& powers) {
  int best = 0, found = 0;
  for (i64 p = 10007; found < 4; ++p) {
    if ((p - 1) % k != 0) continue;
    bool prime = true;
    for (i64 d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    ++found;
    i64 z = root_of_unity(k, p);
    std::vector<std::vector<i64>> m;
    for (const auto& row : powers) {
      std::vector<i64> r;
      for (const auto& entry : row) {
        i64 s = 0;
        for (size_t j = 0; j < entry.size(); ++j) s = mod(s + entry[j] * powmod(z, j, p), p);
        r.push_back(s);
      }
      m.push_back(r);
    }
    best = std::max(best, rank_mod_p(m, p));
  }
  return best;
}

std::vector<GraphCover> sweep_covers() {
  std::vector<GraphCover> out;
  for (const auto& sig : fx::sweep_strata())
    for (auto mode : {EnumerationMode::two_level(), EnumerationMode::one_horizontal(), EnumerationMode::all_up_to(3, 4)}) {
      auto part = fx::all_covers(sig, mode);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

std::vector<int> per_level_dims(const DimensionReport& r) {
  std::vector<int> out;
  for (const auto& ld : r.per_level) out.push_back(ld.dim());
  return out;
}

}  // namespace

TEST_CASE("eigenspace_dim examples") {
  using R = PointRole;
  CHECK(eigenspace_dim({2, 1, 1, {{0, R::Relative}}}) == 1);
  CHECK(eigenspace_dim({2, 1, 1, {{2, R::Relative}, {2, R::Relative}, {-4, R::Puncture}}}) == 3);
  CHECK(eigenspace_dim({1, 1, 1, {{2, R::Relative}, {-2, R::Puncture}}}) == 2);
  CHECK(eigenspace_dim({1, 1, 2, {{2, R::Relative}}}) == 4);
  CHECK(eigenspace_dim({1, 1, 0, {{-1, R::Puncture}, {-1, R::Puncture}}}) == 1);
  CHECK(eigenspace_dim({2, 1, 0, {{-1, R::Relative}, {-1, R::Relative}, {-1, R::Relative}, {-1, R::Relative}}}) == 2);
}

TEST_CASE("eigenspace_dim rejects inconsistent roles") {
  using R = PointRole;
  auto code = [](const LevelComponentData& c) {
    try {
      eigenspace_dim(c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Overflow;
  };
  CHECK(code({2, 1, 1, {{0, R::Puncture}}}) == ErrorCode::InvalidRole);
  CHECK(code({2, 1, 1, {{2, R::Relative}, {2, R::Relative}, {-4, R::Relative}}}) == ErrorCode::InvalidRole);
  CHECK(code({4, 3, 1, {{0, R::Relative}}}) == ErrorCode::InvalidRole);
}

TEST_CASE("eigenspace_dim is invariant under reduction by d") {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> kd(1, 4), gd(0, 3), nd(1, 5), md(-4, 5);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    int kr = kd(rng), d = kd(rng), g = gd(rng), n = nd(rng);
    LevelComponentData full{kr * d, d, g, {}}, reduced{kr, 1, g, {}};
    for (int i = 0; i < n; ++i) {
      int mr = md(rng) * (rng() % 2 ? 1 : -1);
      PointRole role = mr <= -kr ? PointRole::Puncture : PointRole::Relative;
      full.points.push_back({mr * d, role});
      reduced.points.push_back({mr, role});
    }
    CHECK(eigenspace_dim(full) == eigenspace_dim(reduced));
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("grc_system examples") {
  auto prim = build_cover(fx::gamma_a(), {1, 1}, {0});
  auto sys = grc_system(prim);
  REQUIRE(sys.size() == 2);
  CHECK(sys[1].coordinates.size() == 1);
  CHECK(sys[1].rank() == 0);
  CHECK(sys[0].rank() == 0);

  auto two = grc_system(fx::identity_cover(fx::two_tails()));
  CHECK(two[1].coordinates.size() == 2);
  CHECK(two[1].rank_automatic == 1);
  CHECK(two[1].rank() == 1);

  auto one = grc_system(fx::identity_cover(fx::single_tail()));
  CHECK(one[1].rank() == 0);
}

TEST_CASE("check_dimension_identity examples") {
  auto a = check_dimension_identity(build_cover(fx::gamma_a(), {1, 1}, {0}));
  CHECK(per_level_dims(a) == std::vector<int>{1, 3});
  CHECK(a.h == 0);
  CHECK(a.total == 4);
  CHECK(a.pass);
  CHECK_FALSE(a.grc_surrogate);

  auto single = check_dimension_identity(fx::identity_cover(fx::single_tail()));
  CHECK(per_level_dims(single) == std::vector<int>{2, 2});
  CHECK(single.pass);

  auto two = check_dimension_identity(fx::identity_cover(fx::two_tails()));
  CHECK(per_level_dims(two) == std::vector<int>{4, 0});
  CHECK(two.pass);

  auto ban = check_dimension_identity(fx::identity_cover(fx::banana()));
  CHECK(ban.h == 1);
  CHECK(ban.pass);
}

TEST_CASE("pper_coordinate_shape examples") {
  auto s = pper_coordinate_shape(build_cover(fx::gamma_a(), {1, 1}, {0}));
  CHECK(s.h == 0);
  CHECK(s.levels == 2);
  CHECK(s.projective_dims == std::vector<int>{0, 2});
  CHECK(s.total == 4);

  auto b = pper_coordinate_shape(fx::identity_cover(fx::banana()));
  CHECK(b.h == 1);
  CHECK(b.levels == 1);
  CHECK(b.projective_dims == std::vector<int>{0});
  CHECK(b.total == 2);

  LevelGraph g;
  g.vertices = {{2, 0}};
  g.legs = {fx::leg(0, 1, 2, 2), fx::leg(0, 2, 2, 2)};
  auto smooth = pper_coordinate_shape(fx::identity_cover(validate_enhanced_graph(g, validate_signature(2, 2, {2, 2}))));
  CHECK(smooth.levels == 1);
  CHECK(smooth.projective_dims == std::vector<int>{3});
  CHECK(smooth.total == 4);
}

TEST_CASE("dimension identity holds for every connected cover of the tested strata") {
  int checked = 0;
  for (const auto& C : sweep_covers()) {
    if (!C.connected()) continue;
    auto r = check_dimension_identity(C);
    INFO("cover " << cover_canonical_form(C) << " total " << r.total << " expected " << r.expected);
    CHECK(r.pass);
    if (r.pass) {
      auto s = pper_coordinate_shape(C);
      CHECK(s.total == stratum_dimension(C.base.sig()));
      int recomputed = s.h + s.levels;
      for (int d : s.projective_dims) recomputed += d;
      CHECK(recomputed == s.total);
    }
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("grc rank is independent of the coordinate order") {
  std::mt19937 rng(52);
  for (const auto& C : sweep_covers()) {
    CyclotomicField F(C.k());
    for (const auto& rs : grc_system(C)) {
      const size_t nv = rs.coordinates.size();
      std::vector<size_t> perm(nv);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto all = rs.automatic;
      all.insert(all.end(), rs.conditions.begin(), rs.conditions.end());
      auto permuted = all;
      for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = 0; j < nv; ++j) permuted[i][perm[j]] = all[i][j];
      std::shuffle(permuted.begin(), permuted.end(), rng);
      CHECK(field_rank(F, permuted, nv) == rs.rank_total);
    }
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
  for (int k = 1; k <= 30; ++k) {
    // product over divisors is x^k - 1
    std::vector<i64> prod{1};
    for (int d = 1; d <= k; ++d) {
      if (k % d) continue;
      auto p = cyclotomic_polynomial(d);
      std::vector<i64> r(prod.size() + p.size() - 1, 0);
      for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < p.size(); ++j) r[i + j] += prod[i] * p[j];
      prod = r;
    }
    std::vector<i64> expect(k + 1, 0);
    expect[0] = -1;
    expect[k] = 1;
    CHECK(prod == expect);
    int phi = 0;
    for (int a = 1; a <= k; ++a) phi += std::gcd(a, k) == 1;
    CHECK(CyclotomicField(k).degree() == phi);
  }
}

TEST_CASE("field_rank agrees with a finite-field oracle") {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> kd(1, 12), rd(1, 4), cd(1, 4), ed(-2, 2);
  for (int t = 0; t < 120; ++t) {
    int k = kd(rng), rows = rd(rng), cols = cd(rng);
    CyclotomicField F(k);
    std::vector<std::vector<std::vector<int>>> powers(rows, std::vector<std::vector<int>>(cols, std::vector<int>(k, 0)));
    std::vector<std::vector<CyclotomicField::Element>> m(rows, std::vector<CyclotomicField::Element>(cols, F.zero()));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        // sparse entries so that low rank cases occur
        if (rng() % 3 == 0) continue;
        for (int a = 0; a < k; ++a) {
          int c = rng() % 2 ? 0 : ed(rng);
          powers[i][j][a] = c;
          for (int s = 0; s < std::abs(c); ++s) {
            auto z = F.zeta_power(a);
            if (c < 0)
              for (auto& x : z) x = -x;
            m[i][j] = F.add(m[i][j], z);
          }
        }
      }
    if (t % 4 == 0 && rows >= 2) {
      // force a dependency: last row = zeta * first row
      for (int j = 0; j < cols; ++j) {
        m[rows - 1][j] = F.mul(m[0][j], F.zeta_power(1));
        std::vector<int> shifted(k, 0);
        for (int a = 0; a < k; ++a) shifted[(a + 1) % k] = powers[0][j][a];
        powers[rows - 1][j] = shifted;
      }
    }
    CHECK(field_rank(F, m, cols) == finite_field_rank(k, powers));
  }
}
