#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sskit/collar.hpp"
#include "sskit/error.hpp"

using namespace sskit;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

Subset permute_mask(Subset s, const std::vector<int>& perm) {
  Subset out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (s & (Subset{1} << i)) out |= Subset{1} << perm[i];
  return out;
}

}  // namespace

TEST_CASE("cutoff") {
  CHECK(cutoff(0.25, 0.5, 0.25) == 0);
  CHECK(cutoff(0.25, 0.5, -3) == 0);
  CHECK(cutoff(0.25, 0.5, 0.5) == 1);
  CHECK(cutoff(0.25, 0.5, 7) == 1);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  double prev = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = cutoff(-1, 2, -1.5 + 4.0 * k / 1000);
    CHECK(v >= prev);
    CHECK(v >= 0);
    CHECK(v <= 1);
    prev = v;
  }
  CHECK_THROWS_AS(cutoff(1, 1, 0), Error);
}

TEST_CASE("kappa_S examples") {
  CHECK(kappa_S(0b001, {1, 0, 0}) == 1);
  CHECK(kappa_S(0b011, {0.5, 0, 0.5}) == 0);
  CHECK(kappa_S(0b010, {1.5, -0.5}) == 0);
  const double bary = kappa_S(0b001, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(bary > 0);
  CHECK(bary < 1);
  // Independent evaluation of the product formula.
  const double expect = cutoff(0, 0.5, 1.0 / 3) * cutoff(0.25, 0.5, 1.0 / 3);
  CHECK(bary == doctest::Approx(expect).epsilon(1e-15));
  CHECK_THROWS_AS(kappa_S(0, {1}), Error);
  CHECK_THROWS_AS(kappa_S(0b100, {1, 0}), Error);
}

TEST_CASE("partition of unity") {
  auto g = partition_g({0, 1, 0});
  for (Subset s = 1; s < 8; ++s) CHECK(g[s] == (s == 0b010 ? 1 : 0));

  Sampler rng(7);
  for (std::size_t n : {2u, 3u, 4u}) {
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto x = rng.simplex_point(n);
      const auto gx = partition_g(x);
      worst = std::max(worst, std::abs(sum(gx) - 1));
      for (double v : gx) CHECK(v >= 0);
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("partition equivariance") {
  Sampler rng(11);
  std::vector<int> perm{0, 1, 2, 3};
  for (int k = 0; k < 200; ++k) {
    const auto x = rng.simplex_point(4);
    const auto g = partition_g(x);
    std::next_permutation(perm.begin(), perm.end());
    std::vector<double> px(4);
    for (int i = 0; i < 4; ++i) px[perm[i]] = x[i];
    const auto pg = partition_g(px);
    for (Subset s = 1; s < 16; ++s) CHECK(std::abs(pg[permute_mask(s, perm)] - g[s]) <= 1e-12);
  }
}

TEST_CASE("support properties") {
  auto r = verify_partition_support({0.6, 0, 0.4});
  CHECK(r.positive_support);
  const auto g = partition_g({0.6, 0, 0.4});
  for (Subset s = 1; s < 8; ++s)
    if (s & 0b010) CHECK(g[s] == 0);

  const auto gb = partition_g({0.5, 0.5});
  CHECK(gb[0b01] == gb[0b10]);

  r = verify_partition_support({1.7, 0.5, -0.6, -0.6});
  CHECK(r.positive_support);
  CHECK(r.positive_dependence);
  CHECK(r.max_change <= 1e-12);

  Sampler rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto rep = verify_partition_support(rng.simplex_point(4));
    CHECK(rep.positive_support);
    CHECK(rep.positive_dependence);
  }
}

TEST_CASE("piecewise collars") {
  auto y = phi_piecewise(0b01, 0b01, {1, 0}, {0, -0.5});
  CHECK(y[0] == doctest::Approx(1.5));
  CHECK(y[1] == doctest::Approx(-0.5));
  CHECK(max_diff(phi_piecewise(0b011, 0b001, {0.3, 0.7, 0}, {0, 0, 0}), {0.3, 0.7, 0}) <= 1e-15);

  Sampler rng(5);
  for (int k = 0; k < 300; ++k) {
    auto xi = rng.standard_simplex_point(2);
    std::vector<double> x{xi[0], xi[1], 0, 0}, t{0, 0, rng.uniform(-1, 0), rng.uniform(-1, 0)};
    for (Subset s : {0b01u, 0b10u, 0b11u}) CHECK(std::abs(sum(phi_piecewise(0b0011, s, x, t)) - 1) <= 1e-12);
  }
  CHECK_THROWS_WITH_AS(phi_piecewise(0b11, 0b10, {1, 0}, {0, 0}), "degenerate rescaling set", Error);
  CHECK_THROWS_AS(phi_piecewise(0b01, 0b10, {1, 0}, {0, 0}), Error);
}

TEST_CASE("collar flow") {
  const std::vector<double> x{0.3, 0.7, 0};
  CHECK(max_diff(collar_flow(0b011, x, {0, 0, 0}), x) <= 1e-12);
  CHECK(max_diff(collar_flow(0b111, {0.2, 0.3, 0.5}, {0, 0, 0}), {0.2, 0.3, 0.5}) <= 1e-12);

  SUBCASE("single chart regime") {
    const std::vector<double> x1{1, 0}, t1{0, -0.7};
    CHECK(max_diff(collar_flow(0b01, x1, t1), phi_piecewise(0b01, 0b01, x1, t1)) <= 1e-8);
    const std::vector<double> x2{0.9, 0.1, 0}, t2{0, 0, -0.4};
    CHECK(max_diff(collar_flow(0b011, x2, t2), phi_piecewise(0b011, 0b001, x2, t2)) <= 1e-8);
  }

  SUBCASE("slice and simplex") {
    Sampler rng(9);
    for (int k = 0; k < 50; ++k) {
      const auto xi = rng.simplex_point(2);
      std::vector<double> p{xi[0], xi[1], 0, 0}, t{0, 0, rng.uniform(-1, 0), rng.uniform(-1, 0)};
      const auto y = collar_flow(0b0011, p, t);
      CHECK(y[2] == t[2]);
      CHECK(y[3] == t[3]);
      CHECK(std::abs(sum(y) - 1) <= 1e-9);
      for (double v : y) CHECK(v >= -1 - 1e-9);
    }
  }

  SUBCASE("path independence") {
    Sampler rng(13);
    for (int k = 0; k < 40; ++k) {
      const auto xi = rng.simplex_point(2);
      std::vector<double> p{xi[0], xi[1], 0, 0}, t{0, 0, rng.uniform(-1, 0), rng.uniform(-1, 0)};
      CollarPath staggered = [&](double tau, std::vector<double>& out, std::vector<double>& dt) {
        std::fill(out.begin(), out.end(), 0.0);
        std::fill(dt.begin(), dt.end(), 0.0);
        out[2] = tau * tau * t[2];
        dt[2] = 2 * tau * t[2];
        out[3] = tau * (2 - tau) * t[3];
        dt[3] = (2 - 2 * tau) * t[3];
      };
      CHECK(max_diff(collar_flow_along(0b0011, p, staggered), collar_flow(0b0011, p, t)) <= 1e-6);
    }
  }

  SUBCASE("injectivity ratio") {
    Sampler rng(17);
    double ratio = 1e300;
    const std::vector<double> t{0, 0, -0.6};
    for (int k = 0; k < 100; ++k) {
      const auto a = rng.simplex_point(2), b = rng.simplex_point(2);
      const auto ya = collar_flow(0b011, {a[0], a[1], 0}, t), yb = collar_flow(0b011, {b[0], b[1], 0}, t);
      ratio = std::min(ratio, max_diff(ya, yb) / max_diff(a, b));
    }
    MESSAGE("sampled injectivity ratio " << ratio);
  }

  CHECK_THROWS_AS(collar_flow(0b01, {1, 0}, {0, -0.5}, {8, 1e-9}), Error);
  CHECK_THROWS_AS(collar_flow(0b01, {1, 0}, {0, 0.5}), Error);
}

TEST_CASE("coherence") {
  CoherenceOptions opt;
  auto r = verify_coherence({0}, {0, 1}, {0, 1, 2}, opt);
  CHECK(r.samples == 256);
  CHECK(r.passed);
  CHECK(r.max_residual <= 1e-6);

  opt.zero_collars = true;
  opt.samples = 100;
  CHECK(verify_coherence({0}, {0, 1}, {0, 1, 2}, opt).max_residual <= 1e-12);

  opt = {};
  opt.samples = 100;
  opt.steps = 64;
  const auto base = verify_coherence({0}, {0, 1}, {0, 1, 2}, opt);
  const auto permuted = verify_coherence({2}, {2, 0}, {2, 0, 1}, opt);
  REQUIRE(base.residuals.size() == permuted.residuals.size());
  for (std::size_t k = 0; k < base.residuals.size(); ++k)
    CHECK(std::abs(base.residuals[k] - permuted.residuals[k]) <= 1e-12);

  CHECK(verify_coherence({0, 1}, {0, 1, 3}, {0, 1, 2, 3}, opt).passed);
  CHECK_THROWS_AS(verify_coherence({0, 5}, {0, 1}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(verify_coherence({0}, {0, 1}, {0, 1, 2, 3, 4}), Error);
}

TEST_CASE("points and sampler") {
  CHECK_NOTHROW(CollarPoint({1.5, -0.5}));
  CHECK_THROWS_AS(CollarPoint({1.5, -0.4}), Error);
  CHECK_THROWS_AS(CollarPoint({2.5, -1.5}), Error);
  Sampler a(42), b(42);
  for (int k = 0; k < 20; ++k) CHECK(a.uniform() == b.uniform());
  for (int k = 0; k < 200; ++k) {
    const auto x = a.simplex_point(3);
    CHECK_NOTHROW(CollarPoint{x});
  }
  CHECK(labels_to_subset({0, 2, 5}, {5, 0}) == 0b101);
  CHECK_THROWS_AS(labels_to_subset({0, 2, 5}, {1}), Error);
}
