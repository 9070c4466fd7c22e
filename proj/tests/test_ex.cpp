#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "sskit/category.hpp"
#include "sskit/error.hpp"
#include "sskit/ex.hpp"
#include "sskit/fixtures.hpp"

using namespace sskit;

namespace {

std::shared_ptr<const SimplicialSet> share(SimplicialSet x) { return std::make_shared<const SimplicialSet>(std::move(x)); }

std::vector<std::vector<Index>> assignments(const ExLevel& level) {
  std::vector<std::vector<Index>> out;
  for (const auto& s : level.simplices) out.push_back(vertex_assignment(*level.shape, s));
  std::sort(out.begin(), out.end());
  return out;
}

// Max-localizing arrows of P'([k]) as a category.
std::vector<int> max_localizing_arrows(const FiniteCategory& p, int k) {
  const auto lattice = nonempty_subsets_poset(k + 1);
  std::vector<int> out;
  for (std::size_t f = 0; f < p.arrow_count(); ++f)
    if (lattice.max_of(p.src(static_cast<int>(f))) == lattice.max_of(p.dst(static_cast<int>(f))))
      out.push_back(static_cast<int>(f));
  return out;
}

}  // namespace

TEST_CASE("ex levels of small simplices") {
  const auto point = standard_simplex(0, 3);
  for (int k = 0; k <= 3; ++k) CHECK(ex_level(point, k).simplices.size() == 1);

  const auto interval = standard_simplex(1, 2);
  const auto level = ex_level(interval, 1);
  // lattice order {0}, {1}, {01}
  CHECK(assignments(level) ==
        std::vector<std::vector<Index>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});

  FiniteCategory discrete = poset_category(FinitePoset::from_covers(2, {}));
  CHECK(ex_level(category_nerve(discrete, 2), 1).simplices.size() == 2);

  CHECK_THROWS_AS(ex_level(interval, 4), Error);
  CHECK_THROWS_AS(ex_level(standard_simplex(1, 0), 2), Error);
}

TEST_CASE("ex level budget") {
  const auto x = standard_simplex(2, 1);
  CHECK_THROWS_AS(ex_level(x, 2, 3), BudgetExceeded);
  try {
    ex_level(x, 2, 3);
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_count() == 3);
  }
}

TEST_CASE("ex_eq levels") {
  auto interval = share(standard_simplex(1, 2));
  const auto marked = MarkedEdgeSet::degenerate_only(interval);
  const auto eq = ex_eq_level(marked, 1);
  CHECK(eq.simplices.size() == 3);
  for (const auto& a : assignments(eq)) CHECK(a[1] == a[2]);

  for (const char* name : {"iso2", "z2", "z3", "z2_iso", "point"}) {
    CAPTURE(name);
    auto x = share(category_nerve(fixture_category(name).category, 3));
    const auto all = MarkedEdgeSet::all_edges(x);
    for (int k = 0; k <= 2; ++k) CHECK(ex_eq_level(all, k).simplices == ex_level(*x, k).simplices);
  }

  auto chain = share(category_nerve(fixture_category("chain3").category, 2));
  const auto eq0 = ex_eq_level(MarkedEdgeSet::degenerate_only(chain), 0);
  CHECK(eq0.simplices.size() == chain->count(0));
}

TEST_CASE("m map") {
  const auto interval = standard_simplex(1, 2);
  const auto m0 = m_map(interval, 0);
  for (Index v = 0; v < interval.count(0); ++v) CHECK(m0[v].images == std::vector<Index>{v});

  const Index edge = interval.nondegenerate(1).front();
  const ExShape shape(1);
  CHECK(vertex_assignment(shape, m_map(interval, 1)[edge]) == std::vector<Index>{0, 1, 1});

  for (int n = 0; n <= 3; ++n) {
    const auto x = standard_simplex(n, 0);
    for (int k = 0; k <= n; ++k) {
      const auto m = m_map(x, k);
      std::set<ExSimplex> seen;
      for (Index s : x.nondegenerate(k)) seen.insert(m[s]);
      CHECK(seen.size() == x.nondegenerate_count(k));
    }
  }
}

TEST_CASE("m map lands in ex_eq and matches functor counts") {
  for (const auto& fx : category_fixtures()) {
    CAPTURE(fx.name);
    const auto c = fixture_category(fx.name).category;
    auto x = share(category_nerve(c, 3));
    const MarkedEdgeSet marked(x, iso_edges(c));
    for (int k = 0; k <= 2; ++k) {
      const auto eq = ex_eq_level(marked, k);
      const auto m = m_map(*x, k);
      for (const auto& s : m) CHECK(eq.find(s) >= 0);
      if (k == 0) CHECK(eq.simplices.size() == x->count(0));

      const auto p = subset_category(k);
      FunctorSearch search;
      search.must_invert = max_localizing_arrows(p, k);
      CHECK(eq.simplices.size() == functors(p, c, search).size());

      std::set<ExSimplex> seen;
      for (Index s : x->nondegenerate(k)) seen.insert(m[s]);
      CHECK(seen.size() == x->nondegenerate_count(k));
    }
  }
}

TEST_CASE("ex faces and degeneracies") {
  const auto interval = standard_simplex(1, 2);
  const ExShape s1(1), s0(0), s2(2);
  const auto level = ex_level(interval, 1);
  for (const auto& s : level.simplices) {
    const auto a = vertex_assignment(s1, s);
    CHECK(ex_face(interval, s1, s0, s, 0).images == std::vector<Index>{a[1]});
    CHECK(ex_face(interval, s1, s0, s, 1).images == std::vector<Index>{a[0]});
  }
  // s_0 then d_0 and d_1 both give back the simplex.
  for (const auto& s : level.simplices) {
    const auto up = ex_degen(interval, s1, s2, s, 0);
    CHECK(ex_face(interval, s2, s1, up, 0) == s);
    CHECK(ex_face(interval, s2, s1, up, 1) == s);
  }

  auto x = share(category_nerve(fixture_category("iso2").category, 3));
  const MarkedEdgeSet marked(x, iso_edges(fixture_category("iso2").category));
  const auto tr = ex_truncation(x, 2, &marked);
  CHECK(tr.levels.size() == 3);
  CHECK(closure_violations(tr).empty());

  auto chain = share(category_nerve(fixture_category("arrow").category, 3));
  const auto full = ex_truncation(chain, 2);
  CHECK(closure_violations(full).empty());
  const auto marked_chain = MarkedEdgeSet::degenerate_only(chain);
  CHECK(closure_violations(ex_truncation(chain, 2, &marked_chain)).empty());
}

TEST_CASE("ex shape") {
  const ExShape s(2);
  CHECK(s.size() == 7 + 12 + 6);
  for (std::size_t c = 0; c < s.size(); ++c) CHECK(s.index_of(s.chain(c)) == c);
  CHECK(s.chain(0) == std::vector<Mask>{0b001});
  CHECK(s.vertex_chain(0b111) < s.size());
}

TEST_CASE("ex simplex as a map") {
  auto x = share(standard_simplex(1, 1));
  const ExShape shape(1);
  for (const auto& s : ex_level(*x, 1).simplices) {
    const auto f = ex_to_map(x, shape, s);
    CHECK(validate(f).ok());
  }
}
