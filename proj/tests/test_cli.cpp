#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sskit/sset_io.hpp"

using namespace sskit;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(SSKIT_FIXTURE_DIR) + "/" + name; }

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l))
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("shipped complexes") {
  for (const char* name : {"delta2.sset", "delta2.ssset", "nerve_arrow.sset", "nerve_square.sset",
                           "nerve_iso2.ssset", "sd_delta2.sset"}) {
    CAPTURE(name);
    const auto x = load_complex(fixture(name));
    CHECK(validate(x).ok());
    CHECK(to_text(parse_complex_text(to_text(x))) == to_text(x));
    CHECK(run({"validate", fixture(name)}).code == cli::kPass);
  }
  const auto broken = run({"validate", fixture("broken_identity.ssset")});
  CHECK(broken.code == cli::kFail);
  CHECK(broken.out.find("violation d_i d_j") != std::string::npos);

  const auto bad = run({"validate", fixture("bad_index.ssset")});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("line 6") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"sd", "--simplex", "2", "--nope"}).code == cli::kUsage);
  CHECK(run({"sd"}).code == cli::kUsage);
  CHECK(run({"sd", "--simplex", "1", "--category", fixture("arrow.cat")}).code == cli::kUsage);
  CHECK(run({"check-kan", fixture("missing.sset")}).code == cli::kUsage);
  CHECK(run({"ex", "--simplex", "1"}).code == cli::kUsage);
  CHECK(run({"collar-verify", "--chain", "0;x"}).code == cli::kUsage);
  CHECK(run({"collar-verify", "--chain", "0"}).code == cli::kUsage);
  CHECK(run({"movie-verify", "--h", "q*"}).code == cli::kUsage);
  CHECK(run({"sd", "--help"}).code == cli::kPass);
}

TEST_CASE("sd") {
  const auto r = run({"--machine", "sd", "--simplex", "3"});
  CHECK(r.code == cli::kPass);
  CHECK(has_line(r.out, "vertices 15"));
  CHECK(has_line(r.out, "nondegenerate 3 24"));
  const auto s = run({"sd", fixture("delta2.ssset"), "--machine"});
  CHECK(has_line(s.out, "vertices 7"));
  CHECK(has_line(s.out, "nondegenerate 2 6"));
  CHECK(run({"sd", fixture("broken_identity.ssset")}).code == cli::kFail);
}

TEST_CASE("ex") {
  const auto r = run({"--machine", "ex", "--simplex", "1", "--level", "1", "--list"});
  CHECK(r.code == cli::kPass);
  CHECK(has_line(r.out, "count 5"));
  CHECK(has_line(r.out, "simplex 1 1:0 2:0 3:1"));
  CHECK(has_line(run({"--machine", "ex", "--simplex", "1", "--level", "1", "--eq"}).out, "count 3"));
  CHECK(run({"ex", "--simplex", "2", "--level", "2", "--budget", "3"}).code == cli::kFail);
  CHECK(run({"ex", fixture("delta2.ssset"), "--level", "1"}).code == cli::kUsage);
}

TEST_CASE("check-kan") {
  const auto inner = run({"check-kan", "--inner-only", "--max-n", "3", fixture("nerve_square.sset")});
  CHECK(inner.code == cli::kPass);
  const auto m = run({"--machine", "check-kan", "--inner-only", "--max-n", "3", "--input", fixture("delta2.sset")});
  CHECK(m.code == cli::kPass);
  CHECK(has_line(m.out, "horn 2 1 total 10 filled 10"));
  CHECK(has_line(m.out, "result pass"));

  const auto kan = run({"--machine", "check-kan", "--max-n", "2", "--simplex", "1"});
  CHECK(kan.code == cli::kFail);
  CHECK(kan.out.find("witness Lambda^2_0") != std::string::npos);
  CHECK(run({"check-kan", "--category", fixture("iso2.cat"), "--max-n", "3"}).code == cli::kPass);
  CHECK(run({"check-kan", "--max-n", "2", fixture("delta2.ssset")}).code == cli::kFail);
  CHECK(run({"check-kan", "--max-n", "2", fixture("broken_identity.ssset")}).code == cli::kFail);
  CHECK(run({"check-kan", "--max-n", "3", "--budget", "2", "--simplex", "2"}).code == cli::kFail);
}

TEST_CASE("localize") {
  const auto r = run({"--machine", "localize", fixture("arrow.cat"), "--invert", "f"});
  CHECK(r.code == cli::kPass);
  CHECK(has_line(r.out, "arrows 4"));
  CHECK(has_line(r.out, "groupoid yes"));
  const auto human = run({"localize", fixture("chain3.cat"), "--invert", "g"});
  CHECK(human.out.find("arr g^-1 2 1") != std::string::npos);
  CHECK(run({"localize", fixture("arrow.cat"), "--invert", "x"}).code == cli::kUsage);
  const auto bad = run({"localize", fixture("bad_arrow.cat"), "--invert", "e"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("line 4") != std::string::npos);
}

TEST_CASE("verify-max-localization") {
  const auto r = run({"--machine", "verify-max-localization", "--category", fixture("iso2.cat")});
  CHECK(r.code == cli::kPass);
  CHECK(has_line(r.out, "checks 3"));
  CHECK(run({"verify-max-localization", "--grid", "--ground", "1"}).code == cli::kPass);
  CHECK(run({"verify-max-localization", "--ground", "4"}).code == cli::kUsage);
  CHECK(run({"verify-max-localization", "--category", fixture("square.cat")}).code == cli::kUsage);
}

TEST_CASE("collar-verify") {
  const auto r = run({"collar-verify", "--chain", "0;0,1", "--samples", "10", "--steps", "16"});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("coherence max_residual") != std::string::npos);
  const auto full = run({"--machine", "collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "20", "--seed", "3"});
  CHECK(full.code == cli::kPass);
  const auto at = full.out.find("coherence max_residual ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(full.out.substr(at + 23)) <= 1e-6);
  CHECK(run({"collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "20", "--steps", "16", "--tol", "0"}).code ==
        cli::kFail);
  CHECK(run({"collar-verify", "--chain", "0,1;0;0,1,2"}).code == cli::kUsage);
}

TEST_CASE("movie-verify") {
  const auto r = run({"movie-verify", "--h", "q*s", "--lambda", "p dq"});
  CHECK(r.code == cli::kPass);
  CHECK(has_line(r.out, "Z = (p + s) d/dp + (q + sigma) d/dsigma"));
  CHECK(has_line(r.out, "PASS"));
  const auto m = run({"--machine", "movie-verify", "--h", "q^2*s^3"});
  CHECK(m.code == cli::kPass);
  CHECK(has_line(m.out, "field (2*q*s^3 + p) d/dp + (3*q^2*s^2 + sigma) d/dsigma"));
  CHECK(run({"movie-verify", "--h", "q", "--lambda", "q dp"}).code == cli::kUsage);
  CHECK(run({"movie-verify", "--h", "q", "--lambda", "s dq"}).code == cli::kUsage);
}

TEST_CASE("machine output is deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"--machine", "sd", "--simplex", "3", "--emit"},
      {"--machine", "ex", "--category", fixture("iso2.cat"), "--level", "2", "--eq", "--list"},
      {"--machine", "check-kan", "--max-n", "3", fixture("nerve_square.sset")},
      {"--machine", "localize", fixture("chain3.cat"), "--invert", "f,g"},
      {"--machine", "verify-max-localization", "--category", fixture("z2.cat")},
      {"--machine", "collar-verify", "--chain", "1;1,0;1,0,2", "--samples", "30", "--steps", "32", "--seed", "9"},
      {"--machine", "movie-verify", "--h", "q*s + p^2"},
      {"--machine", "nerve", fixture("square.cat")},
  };
  for (const auto& c : commands) {
    CAPTURE(c[1]);
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  const auto s1 = run({"--machine", "collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "30", "--seed", "1"});
  const auto s2 = run({"--machine", "collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "30", "--seed", "2"});
  CHECK(s1.out != s2.out);
}
