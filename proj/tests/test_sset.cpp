#include <doctest.h>

#include <sstream>

#include "sskit/error.hpp"
#include "sskit/sset.hpp"
#include "sskit/sset_io.hpp"

using namespace sskit;

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("standard simplex examples") {
  SUBCASE("point") {
    auto x = standard_simplex(0, 3);
    CHECK(x.count(0) == 1);
    for (int n = 1; n <= 3; ++n) {
      CHECK(x.count(n) == 1);
      CHECK(x.is_degenerate(n, 0));
    }
  }
  SUBCASE("interval") {
    auto x = standard_simplex(1);
    CHECK(x.nondegenerate_count(0) == 2);
    CHECK(x.nondegenerate_count(1) == 1);
    CHECK(x.nondegenerate_count(2) == 0);
  }
  SUBCASE("triangle") {
    auto x = standard_simplex(2, 0);
    CHECK(x.nondegenerate_counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(validate(x).ok());
  }
  CHECK_THROWS_WITH_AS(standard_simplex_of_size(0), "empty linear order", Error);
}

TEST_CASE("nondegenerate simplices of Delta^n are binomial") {
  for (int n = 0; n <= 5; ++n) {
    auto x = standard_simplex(n, 0);
    for (int k = 0; k <= n; ++k) CHECK(x.nondegenerate_count(k) == binomial(n + 1, k + 1));
    // all simplices: weakly increasing sequences
    for (int k = 0; k <= n; ++k) CHECK(x.count(k) == binomial(n + k + 1, k + 1));
  }
}

TEST_CASE("generated complexes validate up to dimension 5") {
  for (int n = 0; n <= 5; ++n) {
    CHECK(validate(standard_simplex(n, n <= 3 ? 2 : 0)).ok());
    if (n >= 1) {
      CHECK(validate(boundary(n)).ok());
      for (int j = 0; j <= n; ++j) CHECK(validate(horn(n, j)).ok());
    }
  }
}

TEST_CASE("boundary and horn counts") {
  CHECK(boundary(1).counts() == std::vector<std::size_t>{2, 0});
  CHECK(boundary(2).counts() == std::vector<std::size_t>{3, 3, 0});
  CHECK(boundary(3).counts() == std::vector<std::size_t>{4, 6, 4, 0});
  CHECK(horn(2, 1).counts() == std::vector<std::size_t>{3, 2, 0});
  CHECK(horn(3, 1).counts() == std::vector<std::size_t>{4, 6, 3, 0});
  // Lambda^1_0 is the vertex 0 alone.
  CHECK(horn(1, 0).counts() == std::vector<std::size_t>{1, 0});
  CHECK_THROWS_AS(boundary(0), Error);
  CHECK_THROWS_AS(horn(2, 3), Error);
  CHECK_THROWS_AS(horn(2, -1), Error);
  for (int n = 1; n <= 5; ++n)
    for (int j = 0; j <= n; ++j) CHECK(horn(n, j).count(n - 1) + 1 == boundary(n).count(n - 1));
}

TEST_CASE("horn(3,1) omits exactly the face d_1") {
  auto h = horn(3, 1);
  // Each remaining 2-face contains vertex 1.
  for (Index s = 0; s < h.count(2); ++s) {
    auto v = h.vertices(2, s);
    CHECK(std::find(v.begin(), v.end(), Index{1}) != v.end());
  }
}

TEST_CASE("validate reports an injected fault") {
  auto x = standard_simplex(2, 0);
  const Index top = x.nondegenerate(2).front();
  auto faces = x.face_table(2);
  faces[3 * top + 1] = faces[3 * top];
  std::vector<std::vector<Index>> tables{{}, x.face_table(1), faces};
  SemiSimplicialComplex bad(x.counts(), tables);
  auto report = validate(bad);
  REQUIRE_FALSE(report.ok());
  bool named = false;
  for (const auto& v : report.violations) named = named || (v.dim == 2 && v.index == top);
  CHECK(named);
}

TEST_CASE("validate catches a broken degeneracy") {
  auto x = standard_simplex(1, 1);
  std::vector<std::vector<Index>> degens{x.degen_table(0), x.degen_table(1)};
  const Index e = x.nondegenerate(1).front();
  std::swap(degens[1][2 * e], degens[1][2 * e + 1]);
  SimplicialSet bad(x.underlying(), degens);
  CHECK_FALSE(validate(bad).ok());
}

TEST_CASE("apply computes face and degeneracy operators") {
  auto x = standard_simplex(3, 1);
  Index top = 0;
  for (Index s = 0; s < x.count(3); ++s)
    if (!x.is_degenerate(3, s)) top = s;
  std::vector<int> theta{1, 1, 3};
  Index y = x.apply(3, top, theta);
  CHECK(x.vertices(2, y) == std::vector<Index>{1, 1, 3});
  CHECK(x.is_degenerate(2, y));
  std::vector<int> bad{2, 1};
  CHECK_THROWS_AS(x.apply(3, top, bad), Error);
}

TEST_CASE("text format round trip") {
  std::vector<AnyComplex> fixtures{standard_simplex(2), standard_simplex(0, 2), boundary(3), horn(3, 2)};
  for (const auto& x : fixtures) {
    const std::string text = to_text(x);
    auto back = parse_complex_text(text);
    CHECK(to_text(back) == text);
    CHECK(back.index() == x.index());
  }
}

TEST_CASE("parser rejects malformed input with line numbers") {
  SUBCASE("face out of range") {
    const std::string text = "ssset 1\ndim 0 2\ndim 1 1\nface 1 0 1 2\n";
    try {
      parse_complex_text(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("dimensions out of order") {
    CHECK_THROWS_AS(parse_complex_text("ssset 1\ndim 1 0\n"), ParseError);
  }
  SUBCASE("degeneracy out of range is reported at its line") {
    const std::string text = "sset 1\ndim 0 1\ndegen 0 0 5\ndim 1 1\nface 1 0 0 0\n";
    try {
      parse_complex_text(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("comments and blank lines are ignored") {
    auto x = parse_complex_text("# a point\nssset 0\n\ndim 0 1   # one vertex\n");
    CHECK(faces_of(x).count(0) == 1);
  }
}
