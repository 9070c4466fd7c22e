#include "sskit/subdivision.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "sskit/detail/keyed_builder.hpp"
#include "sskit/error.hpp"

namespace sskit {

std::vector<std::string> poset_violations(const std::vector<std::vector<bool>>& leq) {
  std::vector<std::string> out;
  const std::size_t n = leq.size();
  for (const auto& row : leq)
    if (row.size() != n) {
      out.push_back("relation matrix is not square");
      return out;
    }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) out.push_back("not reflexive at " + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a])
        out.push_back("not antisymmetric at " + std::to_string(a) + "," + std::to_string(b));
      if (!leq[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq[b][c] && !leq[a][c])
          out.push_back("not transitive at " + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c));
    }
  }
  return out;
}

FinitePoset::FinitePoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
  if (auto bad = poset_violations(leq_); !bad.empty()) throw Error("invalid poset: " + bad.front());
}

FinitePoset FinitePoset::from_covers(std::size_t size, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<bool>> leq(size, std::vector<bool>(size, false));
  for (std::size_t a = 0; a < size; ++a) leq[a][a] = true;
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= size || static_cast<std::size_t>(b) >= size)
      throw Error("cover relation out of range");
    leq[a][b] = true;
  }
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t a = 0; a < size; ++a)
      if (leq[a][k])
        for (std::size_t b = 0; b < size; ++b)
          if (leq[k][b]) leq[a][b] = true;
  return FinitePoset(std::move(leq));
}

std::vector<std::pair<int, int>> FinitePoset::covers() const {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool between = false;
      for (int c = 0; c < n && !between; ++c) between = less(a, c) && less(c, b);
      if (!between) out.emplace_back(a, b);
    }
  return out;
}

std::vector<int> FinitePoset::linear_extension() const {
  const int n = static_cast<int>(size());
  std::vector<int> below(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) below[a] += less(b, a) ? 1 : 0;
  std::vector<int> ids(n);
  for (int a = 0; a < n; ++a) ids[a] = a;
  // Sorting by the number of strictly smaller elements is a linear extension.
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return below[a] < below[b]; });
  return ids;
}

int mask_max(Mask m) {
  if (m == 0) throw Error("empty subset has no maximum");
  return 31 - std::countl_zero(m);
}

std::string mask_to_string(Mask m) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (m & (Mask{1} << i)) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

SubsetLattice nonempty_subsets_poset(std::size_t ground_size, std::size_t bound) {
  if (ground_size == 0) throw Error("empty linear order");
  if (ground_size > bound || ground_size > 20)
    throw Error("subset lattice bound exceeded: |I| = " + std::to_string(ground_size) +
                " > bound " + std::to_string(bound));
  SubsetLattice lat;
  lat.ground_ = ground_size;
  const Mask full = (Mask{1} << ground_size) - 1;
  std::vector<Mask> masks;
  for (Mask m = 1; m <= full; ++m) masks.push_back(m);
  auto elements = [](Mask m) {
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
      if (m & (Mask{1} << i)) v.push_back(i);
    return v;
  };
  std::sort(masks.begin(), masks.end(), [&](Mask a, Mask b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return elements(a) < elements(b);
  });
  lat.masks_ = masks;
  for (std::size_t e = 0; e < masks.size(); ++e) {
    lat.index_[masks[e]] = e;
    lat.max_.push_back(mask_max(masks[e]));
  }
  std::vector<std::vector<bool>> leq(masks.size(), std::vector<bool>(masks.size()));
  for (std::size_t a = 0; a < masks.size(); ++a)
    for (std::size_t b = 0; b < masks.size(); ++b) leq[a][b] = (masks[a] & ~masks[b]) == 0;
  lat.poset_ = FinitePoset(std::move(leq));
  return lat;
}

SimplicialSet nerve(const FinitePoset& p, int top_dim) {
  if (top_dim < 0) throw Error("negative truncation");
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<detail::Key>> keys(top_dim + 1);
  detail::Key cur;
  auto rec = [&](auto&& self) -> void {
    const int k = static_cast<int>(cur.size()) - 1;
    if (k >= 0) keys[k].push_back(cur);
    if (k == top_dim) return;
    for (int e = 0; e < n; ++e) {
      if (!cur.empty() && !p.leq(cur.back(), e)) continue;
      cur.push_back(e);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return detail::build_keyed(
      keys, [](int, int i, const detail::Key& s) { return detail::drop_at(s, i); },
      [](int, int i, const detail::Key& s) { return detail::repeat_at(s, i); });
}

ChainIndex::ChainIndex(const SemiSimplicialComplex& x) : by_vertices_(x.top_dim() + 1) {
  for (int n = 0; n <= x.top_dim(); ++n)
    for (Index s = 0; s < x.count(n); ++s) by_vertices_[n].emplace(x.vertices(n, s), s);
}

Index ChainIndex::find(const std::vector<Index>& vertices) const {
  const std::size_t n = vertices.size() - 1;
  if (vertices.empty() || n >= by_vertices_.size()) throw Error("chain dimension out of range");
  auto it = by_vertices_[n].find(vertices);
  if (it == by_vertices_[n].end()) throw Error("no simplex with the given vertices");
  return it->second;
}

bool Subdivision::is_max_localizing(Index edge) const {
  if (complex->top_dim() < 1 || edge >= complex->count(1)) throw Error("not an edge of the subdivision");
  const Index a = complex->face(1, 1, edge);
  const Index b = complex->face(1, 0, edge);
  if (!poset.leq(static_cast<int>(a), static_cast<int>(b))) throw Error("edge is not an inclusion");
  return max_label[a] == max_label[b];
}

Subdivision sd_simplex(int n, int top_dim) {
  if (n < 0) throw Error("empty linear order");
  SubsetLattice lat = nonempty_subsets_poset(static_cast<std::size_t>(n) + 1);
  Subdivision sd;
  sd.complex = std::make_shared<SimplicialSet>(nerve(lat.poset(), top_dim < 0 ? n : top_dim));
  sd.poset = lat.poset();
  sd.masks = lat.masks();
  for (std::size_t e = 0; e < lat.size(); ++e) sd.max_label.push_back(lat.max_of(e));
  return sd;
}

namespace {

Subdivision face_poset_nerve(const SemiSimplicialComplex& x, const std::vector<SimplexId>& simplices,
                             int top_dim) {
  std::vector<std::set<Index>> vsets;
  std::map<std::pair<int, std::set<Index>>, SimplexId> seen;
  std::vector<int> max_label;
  for (const SimplexId& s : simplices) {
    auto vs = x.vertices(s.dim, s.index);
    std::set<Index> vset(vs.begin(), vs.end());
    const std::string where = "(" + std::to_string(s.dim) + ", " + std::to_string(s.index) + ")";
    if (vset.size() != vs.size()) throw Error("complex is singular: simplex " + where + " repeats a vertex");
    auto [it, fresh] = seen.emplace(std::make_pair(s.dim, vset), s);
    if (!fresh) throw Error("complex is singular: simplex " + where + " shares its vertex set");
    vsets.push_back(std::move(vset));
    max_label.push_back(static_cast<int>(vs.back()));
  }
  std::vector<std::vector<bool>> leq(simplices.size(), std::vector<bool>(simplices.size()));
  for (std::size_t a = 0; a < simplices.size(); ++a)
    for (std::size_t b = 0; b < simplices.size(); ++b)
      leq[a][b] = std::includes(vsets[b].begin(), vsets[b].end(), vsets[a].begin(), vsets[a].end());
  Subdivision sd;
  sd.poset = FinitePoset(std::move(leq));
  int max_dim = 0;
  for (const auto& s : simplices) max_dim = std::max(max_dim, s.dim);
  sd.complex = std::make_shared<SimplicialSet>(nerve(sd.poset, top_dim < 0 ? max_dim : top_dim));
  sd.max_label = std::move(max_label);
  return sd;
}

}  // namespace

Subdivision sd_nonsingular(const SemiSimplicialComplex& x, int top_dim) {
  std::vector<SimplexId> all;
  for (int n = 0; n <= x.top_dim(); ++n)
    for (Index s = 0; s < x.count(n); ++s) all.push_back({n, s});
  return face_poset_nerve(x, all, top_dim);
}

Subdivision sd_nonsingular(const SimplicialSet& x, int top_dim) {
  std::vector<SimplexId> nondeg;
  for (int n = 0; n <= x.top_dim(); ++n)
    for (Index s : x.nondegenerate(n)) nondeg.push_back({n, s});
  return face_poset_nerve(x, nondeg, top_dim);
}

bool is_max_localizing(Mask a, Mask b) {
  if (a == 0 || b == 0) throw Error("subsets must be nonempty");
  if ((a & ~b) != 0) throw Error("not an inclusion edge: " + mask_to_string(a) + " is not in " + mask_to_string(b));
  return mask_max(a) == mask_max(b);
}

namespace {

Index top_simplex(const SimplicialSet& x, int n, const std::vector<Index>& vertices) {
  for (Index s = 0; s < x.count(n); ++s)
    if (x.vertices(n, s) == vertices) return s;
  throw Error("top simplex not found");
}

}  // namespace

SimplicialMap max_projection(int n) {
  Subdivision sd = sd_simplex(n);
  auto target = std::make_shared<SimplicialSet>(standard_simplex(n, 0));
  std::vector<Index> ids(n + 1);
  for (int i = 0; i <= n; ++i) ids[i] = static_cast<Index>(i);
  const Index top = top_simplex(*target, n, ids);
  SimplicialMap f{sd.complex, target, {}};
  f.images.resize(n + 1);
  for (int k = 0; k <= n; ++k)
    for (Index s = 0; s < sd.complex->count(k); ++s) {
      std::vector<int> theta;
      for (Index v : sd.complex->vertices(k, s)) theta.push_back(sd.max_label[v]);
      f.images[k].push_back(target->apply(n, top, theta));
    }
  return f;
}

SimplicialMap max_adjoint(int n) {
  Subdivision sd = sd_simplex(n);
  auto source = std::make_shared<SimplicialSet>(standard_simplex(n, 0));
  SubsetLattice lat = nonempty_subsets_poset(static_cast<std::size_t>(n) + 1);
  std::vector<Index> flag;
  for (int i = 0; i <= n; ++i) flag.push_back(static_cast<Index>(lat.index_of((Mask{2} << i) - 1)));
  const Index top = top_simplex(*sd.complex, n, flag);
  SimplicialMap f{source, sd.complex, {}};
  f.images.resize(n + 1);
  for (int k = 0; k <= n; ++k)
    for (Index s = 0; s < source->count(k); ++s) {
      std::vector<int> theta;
      for (Index v : source->vertices(k, s)) theta.push_back(static_cast<int>(v));
      f.images[k].push_back(sd.complex->apply(n, top, theta));
    }
  return f;
}

SimplicialMap induced_subdivision_map(const std::vector<int>& injection, int n) {
  const int m = static_cast<int>(injection.size()) - 1;
  if (m < 0) throw Error("empty source order");
  for (int i = 0; i <= m; ++i)
    if (injection[i] < 0 || injection[i] > n || (i > 0 && injection[i] <= injection[i - 1]))
      throw Error("map is not an order-preserving injection");
  Subdivision src = sd_simplex(m);
  Subdivision tgt = sd_simplex(n, m);
  SubsetLattice tlat = nonempty_subsets_poset(static_cast<std::size_t>(n) + 1);
  ChainIndex index(*tgt.complex);
  SimplicialMap f{src.complex, tgt.complex, {}};
  f.images.resize(m + 1);
  for (int k = 0; k <= m; ++k)
    for (Index s = 0; s < src.complex->count(k); ++s) {
      std::vector<Index> image;
      for (Index v : src.complex->vertices(k, s)) {
        Mask a = 0;
        for (int i = 0; i <= m; ++i)
          if (src.masks[v] & (Mask{1} << i)) a |= Mask{1} << injection[i];
        image.push_back(static_cast<Index>(tlat.index_of(a)));
      }
      f.images[k].push_back(index.find(image));
    }
  return f;
}

void write_poset(std::ostream& os, const FinitePoset& p) {
  os << "poset " << p.size() << '\n';
  for (auto [a, b] : p.covers()) os << "le " << a << ' ' << b << '\n';
}

FinitePoset parse_poset(std::istream& is) {
  std::string raw;
  std::size_t line_no = 0;
  long long size = -1;
  std::vector<std::pair<int, int>> covers;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (size < 0) {
      if (kw != "poset" || !(ls >> size) || size < 0) throw ParseError(line_no, "expected 'poset <n>'");
      continue;
    }
    long long a, b;
    if (kw != "le" || !(ls >> a >> b)) throw ParseError(line_no, "expected 'le <i> <j>'");
    if (a < 0 || b < 0 || a >= size || b >= size) throw ParseError(line_no, "element out of range");
    covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (size < 0) throw ParseError(line_no + 1, "empty document");
  try {
    return FinitePoset::from_covers(static_cast<std::size_t>(size), covers);
  } catch (const Error& e) {
    throw ParseError(line_no + 1, e.what());
  }
}

}  // namespace sskit
