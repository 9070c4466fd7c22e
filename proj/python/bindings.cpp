#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "sskit/cartan.hpp"
#include "sskit/category.hpp"
#include "sskit/collar.hpp"
#include "sskit/error.hpp"
#include "sskit/ex.hpp"
#include "sskit/fixtures.hpp"
#include "sskit/kan.hpp"
#include "sskit/sset.hpp"
#include "sskit/sset_io.hpp"
#include "sskit/subdivision.hpp"

namespace py = pybind11;
using namespace sskit;

namespace {

std::vector<std::string> violations(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& v : r.violations) out.push_back(v.describe());
  return out;
}

template <class T>
std::string complex_text(const T& x) {
  std::ostringstream os;
  write_complex(os, x);
  return os.str();
}

std::string presentation_text(const CategoryPresentation& p) {
  std::ostringstream os;
  write_presentation(os, p);
  return os.str();
}

py::list ex_assignments(const ExLevel& level) {
  py::list out;
  const auto& lattice = level.shape->lattice();
  for (const auto& s : level.simplices) {
    py::dict d;
    const auto values = vertex_assignment(*level.shape, s);
    for (std::size_t e = 0; e < values.size(); ++e) d[py::int_(lattice.mask(e))] = values[e];
    out.append(d);
  }
  return out;
}

KanReport run_kan(const SemiSimplicialComplex& x, int max_n, bool inner, std::size_t budget,
                  std::size_t witnesses) {
  const KanOptions opt{budget, witnesses};
  return inner ? check_inner_kan(x, max_n, opt) : check_kan(x, max_n, opt);
}

}  // namespace

PYBIND11_MODULE(_sskit, m) {
  m.doc() = "Finite simplicial sets, subdivision, Ex, Kan checks, localization, collars and movies";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());

  py::class_<SemiSimplicialComplex>(m, "SemiSimplicialComplex")
      .def_property_readonly("top_dim", &SemiSimplicialComplex::top_dim)
      .def_property_readonly("counts", &SemiSimplicialComplex::counts)
      .def("count", &SemiSimplicialComplex::count)
      .def("face", &SemiSimplicialComplex::face, py::arg("n"), py::arg("i"), py::arg("x"))
      .def("vertices", &SemiSimplicialComplex::vertices)
      .def("violations", [](const SemiSimplicialComplex& x) { return violations(validate(x)); })
      .def("to_text", [](const SemiSimplicialComplex& x) { return complex_text(x); });

  py::class_<SimplicialSet, SemiSimplicialComplex>(m, "SimplicialSet")
      .def("degen", &SimplicialSet::degen, py::arg("n"), py::arg("i"), py::arg("x"))
      .def("is_degenerate", &SimplicialSet::is_degenerate)
      .def("nondegenerate_count", &SimplicialSet::nondegenerate_count)
      .def_property_readonly("nondegenerate_counts", &SimplicialSet::nondegenerate_counts)
      .def("nondegenerate", &SimplicialSet::nondegenerate)
      .def("underlying", [](const SimplicialSet& x) { return SemiSimplicialComplex(x.underlying()); })
      .def("violations", [](const SimplicialSet& x) { return violations(validate(x)); })
      .def("to_text", [](const SimplicialSet& x) { return complex_text(x); });

  m.def("parse_complex", &parse_complex_text, py::arg("text"));
  m.def("load_complex", &load_complex, py::arg("path"));
  m.def("standard_simplex", &standard_simplex, py::arg("n"), py::arg("margin") = 1);
  m.def("boundary", &boundary, py::arg("n"));
  m.def("horn", &horn, py::arg("n"), py::arg("j"));

  py::class_<Subdivision>(m, "Subdivision")
      .def_property_readonly("complex", [](const Subdivision& s) { return *s.complex; })
      .def_readonly("max_label", &Subdivision::max_label)
      .def_readonly("masks", &Subdivision::masks)
      .def("is_max_localizing", &Subdivision::is_max_localizing);
  m.def("sd_simplex", &sd_simplex, py::arg("n"), py::arg("top_dim") = -1);
  m.def(
      "sd", [](const SemiSimplicialComplex& x, int top) { return sd_nonsingular(x, top); }, py::arg("x"),
      py::arg("top_dim") = -1);

  m.def(
      "ex_level",
      [](const SimplicialSet& x, int k, std::size_t budget) { return ex_assignments(ex_level(x, k, budget)); },
      py::arg("x"), py::arg("k"), py::arg("budget") = kDefaultExBudget,
      "vertex assignments {subset mask: vertex} of the k-simplices of Ex(X)");
  m.def(
      "ex_eq_level",
      [](const SimplicialSet& x, int k, std::vector<Index> marked, std::size_t budget) {
        auto base = std::make_shared<const SimplicialSet>(x);
        return ex_assignments(ex_eq_level(MarkedEdgeSet(base, marked), k, budget));
      },
      py::arg("x"), py::arg("k"), py::arg("marked") = std::vector<Index>{}, py::arg("budget") = kDefaultExBudget);
  m.def(
      "m_map_injective",
      [](const SimplicialSet& x, int k) {
        const auto mk = m_map(x, k);
        std::set<ExSimplex> seen;
        for (Index s : x.nondegenerate(k)) seen.insert(mk[s]);
        return seen.size() == x.nondegenerate_count(k);
      },
      py::arg("x"), py::arg("k"));

  py::class_<HornResult>(m, "HornResult")
      .def_readonly("n", &HornResult::n)
      .def_readonly("j", &HornResult::j)
      .def_readonly("total", &HornResult::total)
      .def_readonly("filled", &HornResult::filled)
      .def_readonly("unique", &HornResult::unique)
      .def_readonly("incomplete", &HornResult::incomplete)
      .def_property_readonly("witnesses", [](const HornResult& r) {
        std::vector<std::string> out;
        for (const auto& w : r.witnesses) out.push_back(w.describe());
        return out;
      });
  py::class_<KanReport>(m, "KanReport")
      .def_readonly("max_n", &KanReport::max_n)
      .def_readonly("results", &KanReport::results)
      .def("passed", &KanReport::passed)
      .def("unique_fillers", &KanReport::unique_fillers);
  m.def(
      "check_inner_kan",
      [](const SemiSimplicialComplex& x, int max_n, std::size_t budget, std::size_t witnesses) {
        return run_kan(x, max_n, true, budget, witnesses);
      },
      py::arg("x"), py::arg("max_n"), py::arg("budget") = kDefaultHornBudget, py::arg("witnesses") = 5);
  m.def(
      "check_kan",
      [](const SemiSimplicialComplex& x, int max_n, std::size_t budget, std::size_t witnesses) {
        return run_kan(x, max_n, false, budget, witnesses);
      },
      py::arg("x"), py::arg("max_n"), py::arg("budget") = kDefaultHornBudget, py::arg("witnesses") = 5);
  m.def("is_idempotent_edge", &is_idempotent_edge, py::arg("x"), py::arg("e"));
  m.def(
      "is_equivalence_edge",
      [](const SemiSimplicialComplex& x, Index e, int max_n) {
        return is_equivalence_edge_bounded(x, e, max_n).verdict == EdgeVerdict::certified;
      },
      py::arg("x"), py::arg("e"), py::arg("max_n"));

  py::class_<CategoryPresentation>(m, "CategoryPresentation")
      .def_readonly("objects", &CategoryPresentation::objects)
      .def_property_readonly("generators",
                             [](const CategoryPresentation& p) {
                               std::vector<std::string> out;
                               for (const auto& g : p.generators) out.push_back(g.name);
                               return out;
                             })
      .def("to_text", &presentation_text);
  m.def("parse_presentation", &parse_presentation_text, py::arg("text"));
  m.def("localize_presentation", &localize_category, py::arg("p"), py::arg("invert"));
  m.def("category_fixtures", [] {
    std::vector<std::string> out;
    for (const auto& f : category_fixtures()) out.push_back(f.text);
    return out;
  });

  py::class_<FiniteCategory>(m, "FiniteCategory")
      .def_property_readonly("object_count", &FiniteCategory::object_count)
      .def_property_readonly("arrow_count", &FiniteCategory::arrow_count)
      .def("is_iso", &FiniteCategory::is_iso)
      .def("is_identity", &FiniteCategory::is_identity)
      .def("src", &FiniteCategory::src)
      .def("dst", &FiniteCategory::dst)
      .def("compose", &FiniteCategory::compose)
      .def("arrow_name", [](const FiniteCategory& c, int f) { return c.arrow(f).name; })
      .def("find_arrow", &FiniteCategory::find_arrow);
  m.def(
      "materialize", [](const CategoryPresentation& p, std::size_t bound) { return materialize(p, bound).category; },
      py::arg("p"), py::arg("word_bound") = kDefaultWordBound);
  m.def("nerve", &category_nerve, py::arg("c"), py::arg("top_dim"));
  m.def("iso_edges", &iso_edges, py::arg("c"));
  m.def("subset_category", &subset_category, py::arg("k"));
  m.def(
      "count_functors",
      [](const FiniteCategory& c, const FiniteCategory& d, std::vector<int> must_invert) {
        FunctorSearch s;
        s.must_invert = std::move(must_invert);
        return functors(c, d, s).size();
      },
      py::arg("c"), py::arg("d"), py::arg("must_invert") = std::vector<int>{});
  m.def(
      "localize",
      [](const FiniteCategory& c, std::vector<int> invert) { return localize(c, invert).category.category; },
      py::arg("c"), py::arg("invert"));
  m.def(
      "verify_max_localization",
      [](std::size_t n, const FiniteCategory& d) {
        const auto r = verify_max_localization(n, d);
        py::dict out;
        out["ok"] = r.ok;
        out["left"] = r.left;
        out["right"] = r.right;
        out["left_classes"] = r.left_classes;
        out["right_classes"] = r.right_classes;
        out["failure"] = r.failure;
        return out;
      },
      py::arg("ground_size"), py::arg("d"));
  m.def("small_category_grid", &small_category_grid);
  m.def("verify_stab_fixtures", [] {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& fx : stab_fixtures())
      out.emplace_back(fx.name, verify_stab_commutes_with_localization(fx.category, fx.s, fx.t).ok);
    return out;
  });

  m.def("cutoff", &cutoff, py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("kappa_S", &kappa_S, py::arg("s"), py::arg("x"));
  m.def("partition_g", &partition_g, py::arg("x"));
  m.def("phi_piecewise", &phi_piecewise, py::arg("i"), py::arg("s"), py::arg("x"), py::arg("t"));
  m.def(
      "collar_flow",
      [](Subset i, const std::vector<double>& x, const std::vector<double>& t, int steps) {
        return collar_flow(i, x, t, FlowOptions{steps, 1e-9});
      },
      py::arg("i"), py::arg("x"), py::arg("t"), py::arg("steps") = kDefaultFlowSteps);
  py::class_<CoherenceReport>(m, "CoherenceReport")
      .def_readonly("samples", &CoherenceReport::samples)
      .def_readonly("max_residual", &CoherenceReport::max_residual)
      .def_readonly("tolerance", &CoherenceReport::tolerance)
      .def_readonly("passed", &CoherenceReport::passed)
      .def_readonly("residuals", &CoherenceReport::residuals);
  m.def(
      "verify_coherence",
      [](std::vector<int> i, std::vector<int> j, std::vector<int> k, std::size_t samples, int steps, double tol,
         std::uint64_t seed) {
        CoherenceOptions opt;
        opt.samples = samples;
        opt.steps = steps;
        opt.tolerance = tol;
        opt.seed = seed;
        return verify_coherence(i, j, k, opt);
      },
      py::arg("i"), py::arg("j"), py::arg("k"), py::arg("samples") = 256, py::arg("steps") = kDefaultFlowSteps,
      py::arg("tol") = 1e-6, py::arg("seed") = 0);
  m.def(
      "verify_partition_support",
      [](const std::vector<double>& x) {
        const auto r = verify_partition_support(x);
        return py::make_tuple(r.positive_support, r.positive_dependence);
      },
      py::arg("x"));
  py::class_<Sampler>(m, "Sampler")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&Sampler::uniform))
      .def("simplex_point", &Sampler::simplex_point)
      .def("standard_simplex_point", &Sampler::standard_simplex_point);

  m.def(
      "liouville_field",
      [](const std::string& lambda, const std::string& m_pairs, const std::string& s_pairs) {
        const Chart c(parse_pairs(m_pairs), parse_pairs(s_pairs));
        return format_field(c, liouville_field(c, parse_form(c, lambda)));
      },
      py::arg("form"), py::arg("m_pairs") = "q,p", py::arg("s_pairs") = "s,sigma");
  m.def(
      "movie_verify",
      [](const std::string& h, const std::string& lambda, const std::string& m_pairs, const std::string& s_pairs) {
        const Chart c(parse_pairs(m_pairs), parse_pairs(s_pairs));
        const Poly hp = parse_poly(c, h);
        const Form lm = lambda.empty() ? standard_liouville(c, true, false) : parse_form(c, lambda);
        const auto field = format_field(c, liouville_field(c, movie_form(c, lm, hp)));
        return py::make_tuple(field, verify_movie_field_formula(c, hp, lm));
      },
      py::arg("h"), py::arg("lambda_m") = "", py::arg("m_pairs") = "q,p", py::arg("s_pairs") = "s,sigma");
  m.def("movie_fixtures", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& f : movie_fixtures()) out.emplace_back(f.name, f.h, f.lambda_m);
    return out;
  });
  m.def("verify_movie_fixtures", [] {
    std::size_t ok = 0;
    for (const auto& f : movie_fixtures())
      ok += verify_movie_field_formula(f.chart, parse_poly(f.chart, f.h), parse_form(f.chart, f.lambda_m));
    return ok == movie_fixtures().size();
  });

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "run the command line in-process: (exit code, stdout, stderr)");
}
