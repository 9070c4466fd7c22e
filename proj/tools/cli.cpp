#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sskit/cartan.hpp"
#include "sskit/category.hpp"
#include "sskit/collar.hpp"
#include "sskit/error.hpp"
#include "sskit/ex.hpp"
#include "sskit/kan.hpp"
#include "sskit/sset.hpp"
#include "sskit/sset_io.hpp"
#include "sskit/subdivision.hpp"

namespace sskit::cli {

namespace {

// An input that loaded but failed its identity checks.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// key value lines in machine mode, aligned "key  value" lines otherwise.
class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    rows_.emplace_back(key, os.str());
  }

  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (machine_) {
        out << k << ' ' << v << '\n';
      } else {
        out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
      }
    }
  }

 private:
  bool machine_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const std::string t = trim(part);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw ParseError(1, "bad label '" + part + "' in chain");
    out.push_back(v);
  }
  return out;
}

struct Source {
  std::string input;
  std::string category;
  int simplex = -1;
  int top_dim = -1;

  int given() const { return !input.empty() + !category.empty() + (simplex >= 0); }
};

void add_source_options(CLI::App* app, Source& src, bool with_category = true) {
  app->add_option("input,--input", src.input, "complex file (sset or ssset format)")->check(CLI::ExistingFile);
  if (with_category)
    app->add_option("--category", src.category, "category presentation; its nerve is used")
        ->check(CLI::ExistingFile);
  app->add_option("--simplex", src.simplex, "the standard simplex of this dimension")->check(CLI::Range(0, 8));
  app->add_option("--top-dim", src.top_dim, "truncation dimension for generated nerves");
}

void require_one_source(const Source& src) {
  if (src.given() != 1) throw CLI::ValidationError("exactly one of --input, --category, --simplex is required");
}

AnyComplex load_checked(const std::string& path) {
  AnyComplex x = load_complex(path);
  const auto rep = validate(x);
  if (!rep.ok()) {
    std::string msg = "input fails " + std::to_string(rep.violations.size()) + " identity checks";
    for (std::size_t k = 0; k < rep.violations.size() && k < 5; ++k) msg += "\n  " + rep.violations[k].describe();
    throw InvalidInput(msg);
  }
  return x;
}

AnyComplex load_source(const Source& src, int want_top) {
  const int top = src.top_dim >= 0 ? src.top_dim : want_top;
  if (!src.input.empty()) return load_checked(src.input);
  if (!src.category.empty()) return nerve_of_presentation(load_presentation(src.category), top);
  return standard_simplex(src.simplex, std::max(0, top - src.simplex));
}

const SimplicialSet& simplicial(const AnyComplex& x, const char* command) {
  if (const auto* s = std::get_if<SimplicialSet>(&x)) return *s;
  throw Error(std::string(command) + " needs a simplicial set, not a semisimplicial one");
}

// sd

struct SdArgs {
  Source src;
  bool emit = false;
};

int run_sd(const SdArgs& a, bool machine, std::ostream& out) {
  require_one_source(a.src);
  Subdivision sd;
  if (a.src.simplex >= 0) {
    sd = sd_simplex(a.src.simplex, a.src.top_dim);
  } else {
    const AnyComplex x = load_source(a.src, 3);
    sd = std::visit([&](const auto& c) { return sd_nonsingular(c, a.src.top_dim); }, x);
  }
  const auto& c = *sd.complex;
  Report r(machine);
  r.add("vertices", c.count(0));
  r.add("top_dim", c.top_dim());
  for (int n = 0; n <= c.top_dim(); ++n) r.add("nondegenerate " + std::to_string(n), c.nondegenerate_count(n));
  r.print(out);
  if (a.emit) write_complex(out, c);
  return kPass;
}

// ex

struct ExArgs {
  Source src;
  int level = 0;
  bool eq = false;
  std::size_t budget = kDefaultExBudget;
  bool list = false;
};

int run_ex(const ExArgs& a, bool machine, std::ostream& out) {
  require_one_source(a.src);
  auto x = std::make_shared<const SimplicialSet>(simplicial(load_source(a.src, std::max(a.level, 2)), "ex"));
  ExLevel level;
  if (a.eq) {
    std::vector<Index> marked;
    if (!a.src.category.empty()) marked = iso_edges(materialize(load_presentation(a.src.category)).category);
    level = ex_eq_level(MarkedEdgeSet(x, marked), a.level, a.budget);
  } else {
    level = ex_level(*x, a.level, a.budget);
  }
  Report r(machine);
  r.add("level", a.level);
  r.add("marking", a.eq ? (a.src.category.empty() ? "degenerate" : "isomorphisms") : "none");
  r.add("count", level.simplices.size());
  r.print(out);
  if (a.list) {
    const auto& lattice = level.shape->lattice();
    for (std::size_t i = 0; i < level.simplices.size(); ++i) {
      const auto values = vertex_assignment(*level.shape, level.simplices[i]);
      out << "simplex " << i;
      for (std::size_t e = 0; e < values.size(); ++e) out << ' ' << lattice.mask(e) << ':' << values[e];
      out << '\n';
    }
  }
  return kPass;
}

// check-kan

struct KanArgs {
  Source src;
  int max_n = 3;
  bool inner_only = false;
  std::size_t budget = kDefaultHornBudget;
  std::size_t witnesses = 5;
};

int run_check_kan(const KanArgs& a, bool machine, std::ostream& out) {
  require_one_source(a.src);
  const AnyComplex x = load_source(a.src, a.max_n);
  const KanOptions opt{a.budget, a.witnesses};
  const auto& faces = faces_of(x);
  const KanReport rep = a.inner_only ? check_inner_kan(faces, a.max_n, opt) : check_kan(faces, a.max_n, opt);
  bool incomplete = false;
  for (const auto& h : rep.results) incomplete = incomplete || h.incomplete;
  const bool pass = rep.passed() && !incomplete;
  const char* kind = a.inner_only ? "inner-kan" : "kan";

  if (machine) {
    out << "check " << kind << '\n' << "max_n " << a.max_n << '\n';
    for (const auto& h : rep.results) {
      out << "horn " << h.n << ' ' << h.j << " total " << h.total << " filled " << h.filled << '\n';
      if (h.incomplete) out << "incomplete " << h.n << ' ' << h.j << '\n';
    }
    for (const auto& h : rep.results)
      for (const auto& w : h.witnesses) out << "witness " << w.describe() << '\n';
    out << "unique_fillers " << (rep.unique_fillers() ? "yes" : "no") << '\n';
    out << "result " << (pass ? "pass" : "fail") << '\n';
  } else {
    out << kind << " check up to n = " << a.max_n << '\n';
    char line[128];
    std::snprintf(line, sizeof line, "%3s %3s %10s %10s %10s  %s\n", "n", "j", "horns", "filled", "unique", "status");
    out << line;
    for (const auto& h : rep.results) {
      const char* status = h.incomplete ? "budget" : (h.filled == h.total ? "ok" : "FAIL");
      std::snprintf(line, sizeof line, "%3d %3d %10zu %10zu %10zu  %s\n", h.n, h.j, h.total, h.filled, h.unique,
                    status);
      out << line;
    }
    for (const auto& h : rep.results)
      for (const auto& w : h.witnesses) out << "unfillable: " << w.describe() << '\n';
    out << "fillers unique: " << (rep.unique_fillers() ? "yes" : "no") << '\n';
    out << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kPass : kFail;
}

// localize

struct LocalizeArgs {
  std::string category;
  std::string invert;
  std::size_t bound = kDefaultWordBound;
};

int run_localize(const LocalizeArgs& a, bool machine, std::ostream& out) {
  const auto p = load_presentation(a.category);
  std::vector<std::string> names;
  for (const auto& n : split(a.invert, ',')) names.push_back(trim(n));
  const auto loc = localize_category(p, names);
  const auto c = materialize(loc, a.bound).category;
  std::size_t isos = 0;
  for (std::size_t f = 0; f < c.arrow_count(); ++f) isos += c.is_iso(static_cast<int>(f));
  if (!machine) write_presentation(out, loc);
  Report r(machine);
  r.add("objects", c.object_count());
  r.add("arrows", c.arrow_count());
  r.add("isomorphisms", isos);
  r.add("groupoid", isos == c.arrow_count() ? "yes" : "no");
  r.print(out);
  return kPass;
}

// verify-max-localization

struct MaxLocArgs {
  std::string category;
  bool grid = false;
  int ground = 0;
};

int run_max_localization(const MaxLocArgs& a, bool machine, std::ostream& out) {
  if (!a.category.empty() && a.grid) throw CLI::ValidationError("--category and --grid are exclusive");
  std::vector<FiniteCategory> cases;
  if (!a.category.empty()) {
    cases.push_back(materialize(load_presentation(a.category)).category);
  } else {
    for (const auto& p : small_category_grid()) cases.push_back(materialize(p).category);
  }
  std::vector<int> grounds;
  if (a.ground > 0) {
    grounds.push_back(a.ground);
  } else {
    grounds = {1, 2, 3};
  }
  std::size_t checked = 0, failed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i)
    for (int n : grounds) {
      const auto rep = verify_max_localization(static_cast<std::size_t>(n), cases[i]);
      ++checked;
      failed += !rep.ok;
      if (machine) {
        out << "case " << i << " ground " << n << " left " << rep.left << " right " << rep.right << " classes "
            << rep.left_classes << ' ' << rep.right_classes << " ok " << (rep.ok ? "yes" : "no") << '\n';
      } else if (!rep.ok) {
        out << "case " << i << " ground " << n << ": " << rep.failure << '\n';
      }
    }
  Report r(machine);
  r.add("categories", cases.size());
  r.add("checks", checked);
  r.add("failures", failed);
  r.add("result", failed == 0 ? "pass" : "fail");
  r.print(out);
  return failed == 0 ? kPass : kFail;
}

// collar-verify

struct CollarArgs {
  std::string chain;
  std::size_t samples = 256;
  int steps = kDefaultFlowSteps;
  double tol = 1e-6;
  bool zero = false;
};

int run_collar(const CollarArgs& a, std::uint64_t seed, bool machine, std::ostream& out) {
  std::vector<std::vector<int>> parts;
  for (const auto& p : split(a.chain, ';')) parts.push_back(parse_labels(p));
  if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("--chain needs two or three label sets");
  if (parts.size() == 2) parts.push_back(parts.back());
  CoherenceOptions opt;
  opt.samples = a.samples;
  opt.steps = a.steps;
  opt.tolerance = a.tol;
  opt.seed = seed;
  opt.zero_collars = a.zero;
  const auto rep = verify_coherence(parts[0], parts[1], parts[2], opt);
  Report r(machine);
  r.add("coherence samples", rep.samples);
  r.add("coherence steps", a.steps);
  r.add("coherence seed", seed);
  r.add("coherence max_residual", scientific(rep.max_residual));
  r.add("coherence tolerance", scientific(rep.tolerance));
  r.add("result", rep.passed ? "pass" : "fail");
  r.print(out);
  return rep.passed ? kPass : kFail;
}

// movie-verify

struct MovieArgs {
  std::string h;
  std::string lambda;
  std::string m_pairs = "q,p";
  std::string s_pairs = "s,sigma";
};

int run_movie(const MovieArgs& a, bool machine, std::ostream& out) {
  const Chart chart(parse_pairs(a.m_pairs), parse_pairs(a.s_pairs));
  const Poly h = parse_poly(chart, a.h);
  const Form lambda_m = a.lambda.empty() ? standard_liouville(chart, true, false) : parse_form(chart, a.lambda);
  const Form form = movie_form(chart, lambda_m, h);
  const VectorField z = liouville_field(chart, form);
  const bool pass = verify_movie_field_formula(chart, h, lambda_m);
  if (machine) {
    out << "form " << format_form(chart, form) << '\n';
    out << "field " << format_field(chart, z) << '\n';
    out << "result " << (pass ? "pass" : "fail") << '\n';
  } else {
    out << "lambda = " << format_form_infix(chart, form) << '\n';
    out << "Z = " << format_field(chart, z) << '\n';
    out << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kPass : kFail;
}

// nerve and validate

struct NerveArgs {
  std::string category;
  int top_dim = 3;
  bool semi = false;
};

int run_nerve(const NerveArgs& a, std::ostream& out) {
  const auto x = nerve_of_presentation(load_presentation(a.category), a.top_dim);
  if (a.semi) {
    write_complex(out, x.underlying());
  } else {
    write_complex(out, x);
  }
  return kPass;
}

int run_validate(const std::string& path, bool machine, std::ostream& out) {
  const AnyComplex x = load_complex(path);
  const auto rep = validate(x);
  const auto& f = faces_of(x);
  Report r(machine);
  r.add("kind", std::holds_alternative<SimplicialSet>(x) ? "sset" : "ssset");
  r.add("top_dim", f.top_dim());
  for (int n = 0; n <= f.top_dim(); ++n) r.add("count " + std::to_string(n), f.count(n));
  r.add("violations", rep.violations.size());
  r.print(out);
  for (const auto& v : rep.violations) out << "violation " << v.describe() << '\n';
  return rep.ok() ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sskit: finite simplicial sets, subdivision, Kan checks, collars and movies", "sskit"};
  app.require_subcommand(1);
  bool machine = false;
  std::uint64_t seed = 0;
  app.add_flag("--machine", machine, "emit flat key value lines");
  app.add_option("--seed", seed, "seed for all randomized sampling");

  SdArgs sd;
  auto* c_sd = app.add_subcommand("sd", "barycentric subdivision counts");
  add_source_options(c_sd, sd.src);
  c_sd->add_flag("--emit", sd.emit, "print the subdivided complex");

  ExArgs ex;
  auto* c_ex = app.add_subcommand("ex", "simplices of Ex or Ex_eq at one level");
  add_source_options(c_ex, ex.src);
  c_ex->add_option("--level", ex.level, "level k")->required()->check(CLI::Range(0, kDefaultExBound));
  c_ex->add_flag("--eq", ex.eq, "restrict to maps inverting max-localizing edges");
  c_ex->add_option("--budget", ex.budget, "maximum number of simplices");
  c_ex->add_flag("--list", ex.list, "list vertex assignments keyed by subset masks");

  KanArgs kan;
  auto* c_kan = app.add_subcommand("check-kan", "horn filling up to a dimension");
  add_source_options(c_kan, kan.src);
  c_kan->add_option("--max-n", kan.max_n, "largest horn dimension")->check(CLI::Range(1, 6));
  c_kan->add_flag("--inner-only", kan.inner_only, "inner horns only");
  c_kan->add_option("--budget", kan.budget, "maximum horns per (n, j)");
  c_kan->add_option("--witnesses", kan.witnesses, "unfillable horns to report per (n, j)");

  LocalizeArgs loc;
  auto* c_loc = app.add_subcommand("localize", "adjoin inverses to named generators");
  c_loc->add_option("category,--category", loc.category, "category presentation")
      ->required()
      ->check(CLI::ExistingFile);
  c_loc->add_option("--invert", loc.invert, "comma separated generator names")->required();
  c_loc->add_option("--bound", loc.bound, "word length bound");

  MaxLocArgs ml;
  auto* c_ml = app.add_subcommand("verify-max-localization", "max : P'(I) -> I is a localization");
  c_ml->add_option("--category", ml.category, "target category presentation")->check(CLI::ExistingFile);
  c_ml->add_flag("--grid", ml.grid, "the grid of small categories (default)");
  c_ml->add_option("--ground", ml.ground, "|I|; all of 1..3 when omitted")->check(CLI::Range(1, 3));

  CollarArgs col;
  auto* c_col = app.add_subcommand("collar-verify", "coherence of collars along a chain");
  c_col->add_option("--chain", col.chain, "label sets, e.g. 0;0,1;0,1,2")->required();
  c_col->add_option("--samples", col.samples, "number of samples");
  c_col->add_option("--steps", col.steps, "integrator steps")->check(CLI::Range(16, 1 << 20));
  c_col->add_option("--tol", col.tol, "residual tolerance");
  c_col->add_flag("--zero-collars", col.zero, "sample with zero collar coordinates");
  c_col->add_option("--seed", seed, "seed for sampling");

  MovieArgs mv;
  auto* c_mv = app.add_subcommand("movie-verify", "Liouville field of a movie form");
  c_mv->set_help_flag("--help", "Print this help message and exit");
  c_mv->add_option("--h", mv.h, "polynomial h")->required();
  c_mv->add_option("--lambda", mv.lambda, "Liouville form on M (default: sum p dq)");
  c_mv->add_option("--m-pairs", mv.m_pairs, "base,fiber pairs of M");
  c_mv->add_option("--s-pairs", mv.s_pairs, "base,fiber pairs of S");

  NerveArgs nv;
  auto* c_nv = app.add_subcommand("nerve", "nerve of a category presentation");
  c_nv->add_option("category,--category", nv.category, "category presentation")
      ->required()
      ->check(CLI::ExistingFile);
  c_nv->add_option("--top-dim", nv.top_dim, "truncation dimension")->check(CLI::Range(0, 6));
  c_nv->add_flag("--semi", nv.semi, "forget degeneracies");

  std::string vpath;
  auto* c_val = app.add_subcommand("validate", "parse a complex and check its identities");
  c_val->add_option("input,--input", vpath, "complex file")->required()->check(CLI::ExistingFile);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"sskit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (c_sd->parsed()) return run_sd(sd, machine, out);
    if (c_ex->parsed()) return run_ex(ex, machine, out);
    if (c_kan->parsed()) return run_check_kan(kan, machine, out);
    if (c_loc->parsed()) return run_localize(loc, machine, out);
    if (c_ml->parsed()) return run_max_localization(ml, machine, out);
    if (c_col->parsed()) return run_collar(col, seed, machine, out);
    if (c_mv->parsed()) return run_movie(mv, machine, out);
    if (c_nv->parsed()) return run_nerve(nv, out);
    if (c_val->parsed()) return run_validate(vpath, machine, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kFail;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sskit::cli
