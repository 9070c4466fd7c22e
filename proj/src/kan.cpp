#include "sskit/kan.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "sskit/error.hpp"

namespace sskit {

std::string HornMap::describe() const {
  std::ostringstream os;
  os << "Lambda^" << n << "_" << j << " faces";
  for (int i = 0; i <= n; ++i) {
    if (i == j) continue;
    os << " d" << i << "=" << faces[i];
  }
  return os.str();
}

namespace {

struct EdgeConstraint {
  int face = -1;  // which face carries the edge
  int p0 = 0, p1 = 0;
  Index edge = 0;
};

void check_horn_shape(const SemiSimplicialComplex& x, int n, int j) {
  if (n < 1 || j < 0 || j > n) throw Error("horn index out of range");
  if (x.top_dim() < n - 1) throw Error("complex is truncated below the horn dimension");
}

HornEnumeration enumerate_impl(const SemiSimplicialComplex& x, int n, int j, std::size_t budget,
                               const EdgeConstraint& edge,
                               const std::function<bool(const HornMap&)>& visit) {
  check_horn_shape(x, n, j);
  HornEnumeration out;
  const int m = n - 1;
  const std::size_t count = x.count(m);

  // by_face[a][v]: (n-1)-simplices whose d_a is v.
  std::vector<std::vector<std::vector<Index>>> by_face(m >= 1 ? n : 0);
  for (int a = 0; a < static_cast<int>(by_face.size()); ++a) {
    by_face[a].resize(x.count(m - 1));
    for (Index s = 0; s < count; ++s) by_face[a][x.face(m, a, s)].push_back(s);
  }
  std::vector<Index> all(count);
  for (Index s = 0; s < count; ++s) all[s] = s;

  std::vector<int> order;
  for (int i = 0; i <= n; ++i)
    if (i != j) order.push_back(i);

  HornMap h{n, j, std::vector<Index>(n + 1, 0)};
  std::size_t found = 0;
  bool stop = false;
  std::function<void(std::size_t)> assign = [&](std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (found >= budget) {
        out.incomplete = true;
        stop = true;
        return;
      }
      ++found;
      if (!visit(h)) stop = true;
      return;
    }
    const int b = order[pos];
    const std::vector<Index>* candidates = &all;
    if (pos > 0 && m >= 1) {
      // d_a x_b = d_{b-1} x_a for the first assigned a < b.
      const int a = order[0];
      candidates = &by_face[a][x.face(m, b - 1, h.faces[a])];
    }
    for (Index s : *candidates) {
      bool ok = true;
      for (std::size_t q = 0; ok && q < pos && m >= 1; ++q) {
        const int a = order[q];
        ok = x.face(m, a, s) == x.face(m, b - 1, h.faces[a]);
      }
      if (ok && edge.face == b) {
        const int positions[2] = {edge.p0, edge.p1};
        ok = x.restrict_to(m, s, positions) == edge.edge;
      }
      if (!ok) continue;
      h.faces[b] = s;
      assign(pos + 1);
      if (stop) return;
    }
  };
  assign(0);
  return out;
}

class FillerIndex {
 public:
  FillerIndex(const SemiSimplicialComplex& x, int n, int j) : j_(j) {
    if (x.top_dim() < n) return;
    for (Index s = 0; s < x.count(n); ++s) {
      auto f = x.faces_of(n, s);
      std::vector<Index> key(f.begin(), f.end());
      key.erase(key.begin() + j);
      lookup_[key].push_back(s);
    }
  }

  const std::vector<Index>& fillers(const HornMap& h) const {
    static const std::vector<Index> none;
    std::vector<Index> key(h.faces);
    key.erase(key.begin() + j_);
    auto it = lookup_.find(key);
    return it == lookup_.end() ? none : it->second;
  }

 private:
  int j_;
  std::map<std::vector<Index>, std::vector<Index>> lookup_;
};

HornResult check_horn(const SemiSimplicialComplex& x, int n, int j, const KanOptions& opt) {
  HornResult r;
  r.n = n;
  r.j = j;
  FillerIndex index(x, n, j);
  auto e = enumerate_impl(x, n, j, opt.budget, {}, [&](const HornMap& h) {
    ++r.total;
    const auto& f = index.fillers(h);
    if (!f.empty()) ++r.filled;
    if (f.size() == 1) ++r.unique;
    if (f.empty() && r.witnesses.size() < opt.witnesses) r.witnesses.push_back(h);
    return true;
  });
  r.incomplete = e.incomplete;
  return r;
}

KanReport check_range(const SemiSimplicialComplex& x, int min_n, int max_n, bool inner, const KanOptions& opt) {
  if (max_n > x.top_dim()) throw Error("max_n exceeds the truncation of the complex");
  KanReport report{max_n, {}};
  for (int n = min_n; n <= max_n; ++n)
    for (int j = inner ? 1 : 0; j <= (inner ? n - 1 : n); ++j) report.results.push_back(check_horn(x, n, j, opt));
  return report;
}

}  // namespace

HornEnumeration enumerate_horns(const SemiSimplicialComplex& x, int n, int j, std::size_t budget) {
  HornEnumeration out;
  auto e = enumerate_impl(x, n, j, budget, {}, [&](const HornMap& h) {
    out.horns.push_back(h);
    return true;
  });
  out.incomplete = e.incomplete;
  return out;
}

std::vector<Index> fillers(const SemiSimplicialComplex& x, const HornMap& h) {
  check_horn_shape(x, h.n, h.j);
  std::vector<Index> out;
  if (x.top_dim() < h.n) return out;
  for (Index s = 0; s < x.count(h.n); ++s) {
    bool ok = true;
    for (int i = 0; ok && i <= h.n; ++i)
      if (i != h.j) ok = x.face(h.n, i, s) == h.faces[i];
    if (ok) out.push_back(s);
  }
  return out;
}

std::optional<Index> find_filler(const SemiSimplicialComplex& x, const HornMap& h) {
  auto f = fillers(x, h);
  if (f.empty()) return std::nullopt;
  return f.front();
}

bool KanReport::passed() const {
  for (const auto& r : results)
    if (r.incomplete || r.filled != r.total) return false;
  return true;
}

bool KanReport::unique_fillers() const {
  for (const auto& r : results)
    if (r.incomplete || r.unique != r.total) return false;
  return true;
}

const HornResult* KanReport::find(int n, int j) const {
  for (const auto& r : results)
    if (r.n == n && r.j == j) return &r;
  return nullptr;
}

KanReport check_inner_kan(const SemiSimplicialComplex& x, int max_n, const KanOptions& opt) {
  return check_range(x, 2, max_n, true, opt);
}

KanReport check_kan(const SemiSimplicialComplex& x, int max_n, const KanOptions& opt) {
  return check_range(x, 1, max_n, false, opt);
}

bool is_idempotent_edge(const SemiSimplicialComplex& x, Index e) {
  if (x.top_dim() < 1 || e >= x.count(1)) throw Error("not an edge");
  if (x.top_dim() < 2) return false;
  for (Index s = 0; s < x.count(2); ++s)
    if (x.face(2, 0, s) == e && x.face(2, 1, s) == e && x.face(2, 2, s) == e) return true;
  return false;
}

std::string EquivalenceReport::describe() const {
  std::string out = verdict == EdgeVerdict::certified ? "certified up to n=" + std::to_string(bound)
                                                      : "refuted within n<=" + std::to_string(bound);
  if (witness) out += " by " + witness->describe();
  if (incomplete) out += " (budget exhausted)";
  return out;
}

EquivalenceReport is_equivalence_edge_bounded(const SemiSimplicialComplex& x, Index e, int max_n,
                                              std::size_t budget) {
  if (x.top_dim() < 1 || e >= x.count(1)) throw Error("not an edge");
  if (max_n > x.top_dim()) throw Error("max_n exceeds the truncation of the complex");
  EquivalenceReport report;
  report.bound = max_n;
  for (int n = 2; n <= max_n; ++n) {
    for (int j : {0, n}) {
      // The last edge {n-1, n} lies in d_0, the first edge {0, 1} in d_n.
      EdgeConstraint c = j == n ? EdgeConstraint{0, n - 2, n - 1, e} : EdgeConstraint{n, 0, 1, e};
      FillerIndex index(x, n, j);
      auto en = enumerate_impl(x, n, j, budget, c, [&](const HornMap& h) {
        if (!index.fillers(h).empty()) return true;
        report.verdict = EdgeVerdict::refuted;
        report.witness = h;
        return false;
      });
      report.incomplete = report.incomplete || en.incomplete;
      if (report.verdict == EdgeVerdict::refuted) return report;
    }
  }
  return report;
}

}  // namespace sskit
