#include <catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace kms;

namespace {

bool has_code(const CoverReport& r, ErrorCode c) {
  return std::any_of(r.issues.begin(), r.issues.end(), [&](const CoverIssue& i) { return i.code == c; });
}

// Genus of one component over a base vertex of type d: the (k/d)-cover of the reduced
// signature, by Riemann-Hurwitz with ramification k' - gcd(k', m') at each point.
int rh_component_genus(const Signature& vs, int d) {
  const int kr = vs.k / d;
  long long chi = static_cast<long long>(kr) * (2 * vs.g - 2);
  for (int m : vs.mu) {
    int mr = m / d;
    chi += kr - std::gcd(kr, mr == 0 ? kr : std::abs(mr));
  }
  return static_cast<int>(chi / 2 + 1);
}

std::vector<GraphCover> sweep_covers() {
  std::vector<GraphCover> out;
  for (const auto& sig : fx::sweep_strata())
    for (auto mode : {EnumerationMode::two_level(), EnumerationMode::one_horizontal(), EnumerationMode::all_up_to(3, 3)}) {
      auto part = fx::all_covers(sig, mode);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

}  // namespace

TEST_CASE("cover_edge_enhancement examples") {
  CHECK(cover_edge_enhancement(2, 2) == std::pair{2, 1});
  CHECK(cover_edge_enhancement(2, 3) == std::pair{1, 3});
  CHECK(cover_edge_enhancement(2, -3) == std::pair{1, 3});
  CHECK(cover_edge_enhancement(3, 0) == std::pair{3, 0});
  for (int kappa = 1; kappa < 10; ++kappa) CHECK(cover_edge_enhancement(1, kappa) == std::pair{1, kappa});
  CHECK(cover_edge_enhancement(6, 4) == std::pair{2, 2});
}

TEST_CASE("covers of the two-level example") {
  auto covers = covers_of(fx::gamma_a());
  REQUIRE(!covers.empty());
  const GraphCover* primitive = nullptr;
  const GraphCover* top_split = nullptr;
  for (const auto& C : covers) {
    if (C.vertex_types == std::vector<int>{1, 1}) primitive = &C;
    if (C.vertex_types == std::vector<int>{2, 1}) top_split = &C;
  }
  REQUIRE(primitive != nullptr);
  CHECK(primitive->connected());
  CHECK(primitive->edges.size() == 2);
  for (const auto& e : primitive->edges) CHECK(e.ends[0].kappa == 1);
  CHECK(primitive->vertices.size() == 2);
  CHECK(primitive->vertices[0].genus == 1);
  CHECK(primitive->vertices[1].genus == 1);
  CHECK(primitive->tau_edge == std::vector<int>{1, 0});

  REQUIRE(top_split != nullptr);
  int top = 0;
  for (const auto& v : top_split->vertices) top += v.level == 0;
  CHECK(top == 2);
  CHECK(cover_canonical_form(*top_split) != cover_canonical_form(*primitive));
  CHECK(validate_cover(*top_split).ok());
}

TEST_CASE("one-vertex graphs have one cover per power divisor") {
  auto count = [](const Signature& s) {
    LevelGraph g;
    g.vertices = {{s.g, 0}};
    for (int i = 0; i < s.n(); ++i) g.legs.push_back(fx::leg(0, i + 1, s.mu[i], s.k));
    return covers_of(validate_enhanced_graph(g, s)).size();
  };
  CHECK(count(validate_signature(2, 0, {-1, -1, -1, -1})) == 1);
  CHECK(count(validate_signature(1, 2, {2})) == 1);
  CHECK(count(validate_signature(3, 2, {1, 5})) == 1);
  CHECK(count(validate_signature(2, 2, {2, 2})) == 2);
}

TEST_CASE("validate_cover flags tampered covers") {
  auto C = fx::identity_cover(fx::gamma_a());
  REQUIRE(validate_cover(C).ok());

  auto short_orbit = C;
  short_orbit.vertices[0].stab_order = 1;
  CHECK(has_code(validate_cover(short_orbit), ErrorCode::DeckOrder));

  auto not_perm = C;
  not_perm.tau_edge = {0, 0};
  CHECK(has_code(validate_cover(not_perm), ErrorCode::DeckOrder));

  auto lifted = C;
  lifted.edges[0].ends[0].kappa = 2;
  lifted.edges[0].ends[1].kappa = -2;
  CHECK(has_code(validate_cover(lifted), ErrorCode::EnhancementLift));

  auto bad_genus = C;
  bad_genus.vertices[1].genus = 2;
  CHECK(has_code(validate_cover(bad_genus), ErrorCode::VertexSum));
}

TEST_CASE("build_cover rejects inadmissible choices") {
  auto G = fx::gamma_a();
  CHECK_THROWS_AS(build_cover(G, {1}, {0}), Error);
  CHECK_THROWS_AS(build_cover(G, {1, 1}, {2}), Error);
  try {
    build_cover(fx::single_tail(), {2, 1}, {0});
    FAIL("expected Inconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconsistent);
  }
}

// Types (d_top, d_bottom) in {1,2}^2; with both split the two shifts are relabelings of one
// disconnected cover.
TEST_CASE("enumerated cover counts are frozen") {
  CHECK(covers_of(fx::gamma_a()).size() == 4);
  CHECK(covers_of(fx::gamma_a(), {true, {}}).size() == 3);
  CHECK(covers_of(fx::single_tail()).size() == 1);
  CHECK(covers_of(fx::three_level_chain()).size() == 1);
}

TEST_CASE("every enumerated cover validates and its quotient is the base") {
  auto covers = sweep_covers();
  CHECK(covers.size() > 20);
  for (const auto& C : covers) {
    auto rep = validate_cover(C);
    CHECK(rep.ok());
    auto q = validate_enhanced_graph(cover_quotient(C), C.base.sig());
    CHECK(canonical_form(q) == canonical_form(C.base));
  }
}

TEST_CASE("cover genera agree with Riemann-Hurwitz per component") {
  for (const auto& C : sweep_covers()) {
    for (const auto& v : C.vertices) {
      auto vs = vertex_signature(C.base, v.base);
      CHECK(v.genus == rh_component_genus(vs, C.vertex_types[v.base]));
      CHECK(v.stab_order * C.vertex_types[v.base] == C.k());
    }
    // termwise degree balance on the cover
    for (int v = 0; v < static_cast<int>(C.vertices.size()); ++v) {
      long long s = 0;
      for (const auto& e : C.edges)
        for (const auto& end : e.ends)
          if (end.vertex == v) s += end.kappa - 1;
      for (const auto& l : C.legs)
        if (l.vertex == v) s += l.order;
      CHECK(s == 2LL * C.vertices[v].genus - 2);
    }
  }
}

TEST_CASE("horizontal edges lift to k cover edges permuted cyclically") {
  int seen = 0;
  for (const auto& sig : fx::sweep_strata())
    for (const auto& C : fx::all_covers(sig, EnumerationMode::one_horizontal())) {
      const LevelGraph& g = C.base.graph();
      for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!g.horizontal(e)) continue;
        std::vector<int> over;
        for (int i = 0; i < static_cast<int>(C.edges.size()); ++i)
          if (C.edges[i].base == e) over.push_back(i);
        CHECK(static_cast<int>(over.size()) == C.k());
        int x = over[0], steps = 0;
        do {
          x = C.tau_edge[x];
          ++steps;
        } while (x != over[0]);
        CHECK(steps == C.k());
        for (int i : over) CHECK(C.horizontal(i));
        ++seen;
      }
    }
  CHECK(seen > 0);
}

TEST_CASE("primitive endpoints give the reduced enhancement") {
  for (const auto& C : sweep_covers())
    for (const auto& ce : C.edges) {
      const Edge& be = C.base.graph().edges[ce.base];
      int kappa = be.ends[0].kappa;
      if (kappa == 0) continue;
      if (C.vertex_types[be.ends[0].vertex] != 1 || C.vertex_types[be.ends[1].vertex] != 1) continue;
      CHECK(ce.ends[0].kappa == kappa / std::gcd(C.k(), kappa));
    }
}

TEST_CASE("cover enumeration is duplicate-free and relabel invariant") {
  std::mt19937 rng(31);
  for (const auto& sig : fx::sweep_strata())
    for (const auto& G : boundary_graphs(sig, EnumerationMode::all_up_to(2, 3))) {
      std::multiset<std::string> a, b;
      for (const auto& C : covers_of(G)) a.insert(cover_canonical_form(C));
      CHECK(std::set<std::string>(a.begin(), a.end()).size() == a.size());
      auto H = validate_enhanced_graph(fx::relabel(G.graph(), rng), sig);
      for (const auto& C : covers_of(H)) b.insert(cover_canonical_form(C));
      CHECK(a.size() == b.size());
    }
}

TEST_CASE("verbose mode reports pruned combinations") {
  std::vector<std::string> pruned;
  CoverEnumerationOptions opt;
  opt.verbose = [&](const std::string& m) { pruned.push_back(m); };
  auto covers = covers_of(fx::gamma_a(), opt);
  CHECK(covers.size() == 4);
  for (const auto& m : pruned) CHECK(!m.empty());
}
