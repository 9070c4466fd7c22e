#include "sskit/sset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "sskit/error.hpp"

namespace sskit {

namespace {

void write_impl(std::ostream& os, const SemiSimplicialComplex& x, const SimplicialSet* s) {
  os << (s ? "sset " : "ssset ") << x.top_dim() << '\n';
  for (int n = 0; n <= x.top_dim(); ++n) {
    os << "dim " << n << ' ' << x.count(n) << '\n';
    for (Index i = 0; i < x.count(n); ++i) {
      if (n >= 1) {
        os << "face " << n << ' ' << i;
        for (Index f : x.faces_of(n, i)) os << ' ' << f;
        os << '\n';
      }
      if (s && n < x.top_dim()) {
        os << "degen " << n << ' ' << i;
        for (int k = 0; k <= n; ++k) os << ' ' << s->degen(n, k, i);
        os << '\n';
      }
    }
  }
}

struct Deferred {
  std::size_t line;
  int dim;  // dimension the entry must index into
  Index value;
};

}  // namespace

void write_complex(std::ostream& os, const SemiSimplicialComplex& x) { write_impl(os, x, nullptr); }
void write_complex(std::ostream& os, const SimplicialSet& x) { write_impl(os, x, &x); }

std::string to_text(const AnyComplex& x) {
  std::ostringstream os;
  std::visit([&](const auto& c) { write_complex(os, c); }, x);
  return os.str();
}

AnyComplex parse_complex(std::istream& is) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  bool simplicial = false;
  int top = -1;
  int current_dim = -1;
  std::vector<std::size_t> counts;
  std::vector<std::vector<Index>> faces, degens;
  std::vector<Index> next_face, next_degen;
  std::vector<Deferred> deferred;

  auto read_int = [&](std::istringstream& ls, const char* what) -> long long {
    long long v;
    if (!(ls >> v)) throw ParseError(line_no, std::string("expected integer ") + what);
    return v;
  };

  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;

    if (!have_header) {
      if (kw != "sset" && kw != "ssset") throw ParseError(line_no, "expected header 'sset' or 'ssset'");
      simplicial = kw == "sset";
      top = static_cast<int>(read_int(ls, "top_dim"));
      if (top < 0 || top > 64) throw ParseError(line_no, "top_dim out of range");
      have_header = true;
      faces.resize(top + 1);
      degens.resize(top);
      next_face.assign(top + 1, 0);
      next_degen.assign(top + 1, 0);
    } else if (kw == "dim") {
      const long long n = read_int(ls, "dimension");
      const long long c = read_int(ls, "count");
      if (n != current_dim + 1) throw ParseError(line_no, "dimensions must appear in increasing order");
      if (n > top) throw ParseError(line_no, "dimension above top_dim");
      if (c < 0) throw ParseError(line_no, "negative count");
      if (current_dim >= 1 && next_face[current_dim] != counts[current_dim])
        throw ParseError(line_no, "missing face lines for dimension " + std::to_string(current_dim));
      if (simplicial && current_dim >= 0 && current_dim < top &&
          next_degen[current_dim] != counts[current_dim])
        throw ParseError(line_no, "missing degen lines for dimension " + std::to_string(current_dim));
      current_dim = static_cast<int>(n);
      counts.push_back(static_cast<std::size_t>(c));
    } else if (kw == "face" || kw == "degen") {
      const bool is_face = kw == "face";
      if (!is_face && !simplicial) throw ParseError(line_no, "degen line in a semisimplicial document");
      const long long n = read_int(ls, "dimension");
      const long long idx = read_int(ls, "index");
      if (n != current_dim) throw ParseError(line_no, "line does not belong to the current dimension");
      if (is_face && n < 1) throw ParseError(line_no, "vertices have no faces");
      if (!is_face && n >= top) throw ParseError(line_no, "no degeneracies at top_dim");
      auto& next = is_face ? next_face : next_degen;
      if (idx != next[n]) throw ParseError(line_no, "simplex lines must appear in index order");
      if (static_cast<std::size_t>(idx) >= counts[n]) throw ParseError(line_no, "simplex index out of range");
      auto& table = is_face ? faces[n] : degens[n];
      for (long long k = 0; k <= n; ++k) {
        const long long v = read_int(ls, "entry");
        if (v < 0) throw ParseError(line_no, "negative entry");
        if (is_face) {
          if (static_cast<std::size_t>(v) >= counts[n - 1])
            throw ParseError(line_no, "face index " + std::to_string(v) + " out of range");
        } else {
          deferred.push_back({line_no, static_cast<int>(n + 1), static_cast<Index>(v)});
        }
        table.push_back(static_cast<Index>(v));
      }
      std::string extra;
      if (ls >> extra) throw ParseError(line_no, "trailing tokens");
      ++next[n];
    } else {
      throw ParseError(line_no, "unknown keyword '" + kw + "'");
    }
  }
  ++line_no;
  if (!have_header) throw ParseError(line_no, "empty document");
  if (current_dim != top) throw ParseError(line_no, "missing dimensions up to top_dim");
  if (top >= 1 && next_face[top] != counts[top]) throw ParseError(line_no, "missing face lines at top_dim");
  for (const auto& d : deferred)
    if (d.value >= counts[d.dim])
      throw ParseError(d.line, "degeneracy index " + std::to_string(d.value) + " out of range");

  SemiSimplicialComplex base(std::move(counts), std::move(faces));
  if (!simplicial) return base;
  return SimplicialSet(std::move(base), std::move(degens));
}

AnyComplex parse_complex_text(const std::string& text) {
  std::istringstream is(text);
  return parse_complex(is);
}

AnyComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_complex(in);
}

const SemiSimplicialComplex& faces_of(const AnyComplex& x) {
  return std::visit([](const auto& c) -> const SemiSimplicialComplex& { return c; }, x);
}

ValidationReport validate(const AnyComplex& x) {
  return std::visit([](const auto& c) { return validate(c); }, x);
}

}  // namespace sskit
