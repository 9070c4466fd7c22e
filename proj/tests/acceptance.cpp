// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: sskit_acceptance [path-to-sskit-binary]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sskit/cartan.hpp"
#include "sskit/category.hpp"
#include "sskit/collar.hpp"
#include "sskit/error.hpp"
#include "sskit/ex.hpp"
#include "sskit/fixtures.hpp"
#include "sskit/kan.hpp"
#include "sskit/subdivision.hpp"

using namespace sskit;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

// Strict chains of nonempty subsets of {0..n}, counted by length.
std::vector<std::size_t> strict_chain_counts(int n) {
  const Mask full = (Mask{1} << (n + 1)) - 1;
  std::vector<std::size_t> counts(n + 1, 0);
  std::function<void(Mask, int)> extend = [&](Mask top, int len) {
    ++counts[len];
    for (Mask b = 1; b <= full; ++b)
      if ((b & top) == top && b != top) extend(b, len + 1);
  };
  for (Mask a = 1; a <= full; ++a) extend(a, 0);
  return counts;
}

Outcome subdivision_counts() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const auto sd = sd_simplex(n);
    const auto oracle = strict_chain_counts(n);
    std::size_t fact = 1;
    for (int k = 2; k <= n + 1; ++k) fact *= static_cast<std::size_t>(k);
    o.require(sd.complex->count(0) == (std::size_t{1} << (n + 1)) - 1, "vertex count n=" + std::to_string(n));
    o.require(sd.complex->nondegenerate_count(n) == fact, "top simplex count n=" + std::to_string(n));
    for (int k = 0; k <= n; ++k)
      o.require(sd.complex->nondegenerate_count(k) == oracle[k],
                "chain count n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return o;
}

Outcome max_localization_grid() {
  Outcome o;
  const auto grid = small_category_grid();
  std::size_t checks = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto d = materialize(grid[i]).category;
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto r = verify_max_localization(n, d);
      ++checks;
      o.require(r.ok, "grid case " + std::to_string(i) + " |I|=" + std::to_string(n) + ": " + r.failure);
    }
  }
  if (o.ok) o.note = std::to_string(grid.size()) + " categories, " + std::to_string(checks) + " checks";
  return o;
}

Outcome m_map_consistency() {
  Outcome o;
  for (const auto& fx : category_fixtures()) {
    const auto c = fixture_category(fx.name).category;
    auto x = std::make_shared<const SimplicialSet>(category_nerve(c, 3));
    const MarkedEdgeSet marked(x, iso_edges(c));
    for (int k = 0; k <= 2; ++k) {
      const std::string where = fx.name + " k=" + std::to_string(k);
      const auto m = m_map(*x, k);
      std::set<ExSimplex> seen;
      for (Index s : x->nondegenerate(k)) seen.insert(m[s]);
      o.require(seen.size() == x->nondegenerate_count(k), "m not injective on " + where);

      const auto eq = ex_eq_level(marked, k);
      for (const auto& s : m) o.require(eq.find(s) >= 0, "m image outside ex_eq on " + where);
      const auto lattice = nonempty_subsets_poset(static_cast<std::size_t>(k + 1));
      const auto p = subset_category(k);
      FunctorSearch search;
      for (std::size_t f = 0; f < p.arrow_count(); ++f)
        if (lattice.max_of(p.src(static_cast<int>(f))) == lattice.max_of(p.dst(static_cast<int>(f))))
          search.must_invert.push_back(static_cast<int>(f));
      o.require(eq.simplices.size() == functors(p, c, search).size(), "ex_eq count differs on " + where);
    }
  }
  if (o.ok) o.note = std::to_string(category_fixtures().size()) + " nerve fixtures";
  return o;
}

Outcome kan_suite() {
  Outcome o;
  for (const auto& fx : category_fixtures()) {
    const auto x = category_nerve(fixture_category(fx.name).category, 3);
    const auto inner = check_inner_kan(x, 3);
    o.require(inner.passed() && inner.unique_fillers(), "inner Kan fails on " + fx.name);
    if (fx.groupoid) o.require(check_kan(x, 3).passed(), "Kan fails on groupoid " + fx.name);
  }
  const auto r = check_kan(standard_simplex(1, 2), 2);
  const auto* h = r.find(2, 0);
  o.require(!r.passed() && h && h->filled < h->total && !h->witnesses.empty(), "0<1 not refuted at (2,0)");
  if (o.ok) o.note = "witness " + h->witnesses.front().describe();
  return o;
}

Outcome idempotent_equivalences() {
  Outcome o;
  std::size_t vertices = 0;
  for (const auto& fx : category_fixtures()) {
    const SemiSimplicialComplex x = category_nerve(fixture_category(fx.name).category, 3).underlying();
    for (Index v = 0; v < x.count(0); ++v, ++vertices) {
      bool found = false;
      for (Index e = 0; e < x.count(1) && !found; ++e) {
        if (x.face(1, 0, e) != v || x.face(1, 1, e) != v || !is_idempotent_edge(x, e)) continue;
        found = is_equivalence_edge_bounded(x, e, 3).verdict == EdgeVerdict::certified;
      }
      o.require(found, "no certified idempotent edge at vertex " + std::to_string(v) + " of " + fx.name);
    }
  }
  if (o.ok) o.note = std::to_string(vertices) + " vertices";
  return o;
}

Outcome collar_criterion() {
  Outcome o;
  CoherenceOptions opt;
  opt.samples = 256;
  opt.steps = 256;
  opt.tolerance = 1e-6;
  const auto r = verify_coherence({0}, {0, 1}, {0, 1, 2}, opt);
  o.require(r.samples == 256 && r.passed, "coherence residual " + std::to_string(r.max_residual));

  Sampler rng(2024);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = rng.simplex_point(4);
    const auto g = partition_g(x);
    worst = std::max(worst, std::abs(std::accumulate(g.begin(), g.end(), 0.0) - 1));
    const auto s = verify_partition_support(x);
    o.require(s.positive_support, "support property (i) fails");
    o.require(s.positive_dependence, "support property (ii) fails");
  }
  o.require(worst <= 1e-9, "partition sum off by " + std::to_string(worst));
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "max residual %.3e, partition error %.3e", r.max_residual, worst);
    o.note = buf;
  }
  return o;
}

Outcome movie_formula() {
  Outcome o;
  const auto& fixtures = movie_fixtures();
  o.require(fixtures.size() == 20, "expected 20 movie fixtures");
  bool qs = false, q2s3 = false;
  for (const auto& fx : fixtures) {
    const Poly h = parse_poly(fx.chart, fx.h);
    o.require(verify_movie_field_formula(fx.chart, h, parse_form(fx.chart, fx.lambda_m)), "formula fails on " + fx.name);
    if (fx.chart == Chart::movie_default()) {
      qs = qs || h == parse_poly(fx.chart, "q*s");
      q2s3 = q2s3 || h == parse_poly(fx.chart, "q^2*s^3");
    }
  }
  o.require(qs && q2s3, "fixtures must include h = q*s and h = q^2*s^3");
  return o;
}

Outcome stabilization() {
  Outcome o;
  const auto fixtures = stab_fixtures();
  o.require(fixtures.size() == 3, "expected 3 endofunctor fixtures");
  for (const auto& fx : fixtures) {
    const auto r = verify_stab_commutes_with_localization(fx.category, fx.s, fx.t);
    o.require(r.ok, fx.name + ": " + r.failure);
  }
  return o;
}

std::vector<std::vector<std::string>> determinism_commands(const std::string& fixtures) {
  return {
      {"--machine", "sd", "--simplex", "3", "--emit"},
      {"--machine", "sd", fixtures + "/delta2.ssset"},
      {"--machine", "ex", "--category", fixtures + "/iso2.cat", "--level", "2", "--eq", "--list"},
      {"--machine", "check-kan", "--max-n", "3", fixtures + "/nerve_square.sset"},
      {"--machine", "check-kan", "--max-n", "2", "--simplex", "1"},
      {"--machine", "localize", fixtures + "/chain3.cat", "--invert", "f,g"},
      {"--machine", "verify-max-localization", "--category", fixtures + "/iso2.cat"},
      {"--machine", "collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "64", "--seed", "7"},
      {"--machine", "collar-verify", "--chain", "0;0,1", "--samples", "10", "--steps", "16", "--seed", "7"},
      {"--machine", "movie-verify", "--h", "q^2*s^3"},
      {"--machine", "nerve", fixtures + "/square.cat"},
      {"--machine", "validate", fixtures + "/broken_identity.ssset"},
  };
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Output and exit status of one run, in-process or through the binary.
std::string run_once(const std::vector<std::string>& args, const std::string& binary) {
  if (binary.empty()) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return out.str() + "exit " + std::to_string(code);
  }
  std::string cmd = quote(binary);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot run " + binary);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return out + "exit " + std::to_string(status);
}

Outcome cli_determinism(const std::string& binary) {
  Outcome o;
  const auto commands = determinism_commands(SSKIT_FIXTURE_DIR);
  for (const auto& c : commands) {
    const std::string a = run_once(c, binary), b = run_once(c, binary);
    o.require(a == b, "output differs for " + c[1]);
    o.require(a.size() > 8, "no output for " + c[1]);
  }
  if (o.ok) o.note = std::to_string(commands.size()) + " commands" + (binary.empty() ? ", in-process" : "");
  return o;
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {"subdivision counts", 5, subdivision_counts},
      {"max-localization grid", 60, max_localization_grid},
      {"m-map consistency", 120, m_map_consistency},
      {"Kan suite", 60, kan_suite},
      {"idempotent equivalences", 30, idempotent_equivalences},
      {"collar coherence", 120, collar_criterion},
      {"movie field formula", 1, movie_formula},
      {"stabilization and localization", 30, stabilization},
      {"CLI determinism", 60, [&] { return cli_determinism(binary); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.note = "time limit exceeded";
    }
    failures += !o.ok;
    char line[256];
    std::snprintf(line, sizeof line, "%s [%zu] %-32s %8.3f s (limit %g s)", o.ok ? "PASS" : "FAIL", i + 1,
                  c.name.c_str(), secs, c.limit_seconds);
    std::cout << line << (o.note.empty() ? "" : "  " + o.note) << '\n' << std::flush;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
  return failures == 0 ? 0 : 1;
}
