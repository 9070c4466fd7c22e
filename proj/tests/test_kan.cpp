#include <doctest.h>

#include "sskit/category.hpp"
#include "sskit/error.hpp"
#include "sskit/fixtures.hpp"
#include "sskit/kan.hpp"

using namespace sskit;

namespace {

// Delta^2 with a second copy of its top simplex.
SemiSimplicialComplex doubled_triangle() {
  const auto x = standard_simplex(2, 0);
  auto counts = x.counts();
  std::vector<std::vector<Index>> faces;
  for (int n = 0; n <= 2; ++n) faces.push_back(x.face_table(n));
  const Index top = x.nondegenerate(2).front();
  for (Index f : x.faces_of(2, top)) faces[2].push_back(f);
  ++counts[2];
  return SemiSimplicialComplex(counts, faces);
}

// Oracle: horn maps Lambda^2_1 -> nerve of a poset are chains a <= b <= c.
std::size_t weak_triples(int n) {
  std::size_t count = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = b; c <= n; ++c) ++count;
  return count;
}

}  // namespace

TEST_CASE("horn enumeration") {
  const auto point = standard_simplex(0, 3);
  for (int n = 1; n <= 3; ++n)
    for (int j = 0; j <= n; ++j) CHECK(enumerate_horns(point, n, j).horns.size() == 1);

  const auto tri = standard_simplex(2, 1);
  const auto horns = enumerate_horns(tri, 2, 1);
  CHECK(horns.horns.size() == weak_triples(2));
  for (const auto& h : horns.horns) CHECK(fillers(tri, h).size() == 1);

  const auto bd = boundary(2);
  const auto bh = enumerate_horns(bd, 2, 1);
  bool identity_shaped = false;
  for (const auto& h : bh.horns) {
    const Index first = h.faces[2], second = h.faces[0];
    if (bd.face(1, 1, first) == 0 && bd.face(1, 0, first) == 1 && bd.face(1, 0, second) == 2) identity_shaped = true;
    CHECK_FALSE(find_filler(bd, h));
  }
  CHECK(identity_shaped);

  const auto limited = enumerate_horns(tri, 2, 1, 4);
  CHECK(limited.incomplete);
  CHECK(limited.horns.size() == 4);
  CHECK_THROWS_AS(enumerate_horns(tri, 2, 3), Error);
}

TEST_CASE("fillers") {
  const auto x = category_nerve(fixture_category("chain3").category, 3);
  HornMap h{3, 1, {0, 0, 0, 0}};
  const Index d2 = x.totally_degenerate(1, 2);
  for (int i = 0; i <= 3; ++i) h.faces[i] = d2;
  CHECK(find_filler(x, h) == x.totally_degenerate(1, 3));
}

TEST_CASE("inner Kan") {
  for (const auto& fx : category_fixtures()) {
    CAPTURE(fx.name);
    const auto x = category_nerve(fixture_category(fx.name).category, 3);
    const auto r = check_inner_kan(x, 3);
    CHECK(r.passed());
    CHECK(r.unique_fillers());
    for (const auto& res : r.results) CHECK(res.filled <= res.total);
  }
  CHECK(check_inner_kan(standard_simplex(1, 1), 2).passed());

  const auto bd = check_inner_kan(boundary(2), 2);
  CHECK_FALSE(bd.passed());
  REQUIRE(bd.find(2, 1));
  CHECK_FALSE(bd.find(2, 1)->witnesses.empty());

  const auto doubled = check_inner_kan(doubled_triangle(), 2);
  CHECK(doubled.passed());
  CHECK_FALSE(doubled.unique_fillers());
  CHECK_THROWS_AS(check_inner_kan(standard_simplex(1, 1), 3), Error);
}

TEST_CASE("Kan") {
  for (const auto& fx : category_fixtures()) {
    CAPTURE(fx.name);
    const auto x = category_nerve(fixture_category(fx.name).category, 3);
    CHECK(check_kan(x, 3).passed() == fx.groupoid);
  }
  CHECK(check_kan(standard_simplex(0, 3), 3).passed());

  const auto r = check_kan(standard_simplex(1, 2), 2);
  CHECK_FALSE(r.passed());
  const auto* h20 = r.find(2, 0);
  REQUIRE(h20);
  CHECK(h20->filled < h20->total);
  REQUIRE_FALSE(h20->witnesses.empty());
  CHECK(h20->witnesses.front().describe().find("Lambda^2_0") == 0);
}

TEST_CASE("idempotent and equivalence edges") {
  const auto interval = standard_simplex(1, 2);
  const Index edge = interval.nondegenerate(1).front();
  CHECK_FALSE(is_idempotent_edge(interval, edge));
  for (Index v = 0; v < 2; ++v) CHECK(is_idempotent_edge(interval, interval.totally_degenerate(v, 1)));

  const auto refuted = is_equivalence_edge_bounded(interval, edge, 2);
  CHECK(refuted.verdict == EdgeVerdict::refuted);
  REQUIRE(refuted.witness);
  CHECK(refuted.witness->j == 0);
  CHECK(refuted.describe().find("refuted") == 0);
  // refuted at a bound stays refuted at larger bounds
  const auto interval3 = standard_simplex(1, 3);
  CHECK(is_equivalence_edge_bounded(interval3, interval3.nondegenerate(1).front(), 3).verdict ==
        EdgeVerdict::refuted);

  const auto z3 = category_nerve(fixture_category("z3").category, 3);
  CHECK(is_equivalence_edge_bounded(z3, z3.totally_degenerate(0, 1), 3).verdict == EdgeVerdict::certified);

  const auto iso = fixture_category("iso2").category;
  const auto niso = category_nerve(iso, 3);
  for (Index e : iso_edges(iso)) {
    const auto rep = is_equivalence_edge_bounded(niso, e, 3);
    CHECK(rep.verdict == EdgeVerdict::certified);
    CHECK(rep.bound == 3);
  }
}

TEST_CASE("idempotent equivalences on nerves without degeneracies") {
  for (const auto& fx : category_fixtures()) {
    CAPTURE(fx.name);
    const auto c = fixture_category(fx.name).category;
    const SemiSimplicialComplex x = category_nerve(c, 3).underlying();
    for (Index v = 0; v < x.count(0); ++v) {
      bool found = false;
      for (Index e = 0; e < x.count(1) && !found; ++e) {
        if (x.face(1, 0, e) != v || x.face(1, 1, e) != v) continue;
        found = is_idempotent_edge(x, e) &&
                is_equivalence_edge_bounded(x, e, 3).verdict == EdgeVerdict::certified;
      }
      CHECK(found);
    }
  }
}
