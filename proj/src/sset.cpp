#include "sskit/sset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sskit/detail/keyed_builder.hpp"
#include "sskit/error.hpp"

namespace sskit {

std::string Violation::describe() const {
  std::ostringstream os;
  os << identity << " fails on simplex (" << dim << ", " << index << ")";
  if (i >= 0) os << " i=" << i;
  if (j >= 0) os << " j=" << j;
  return os.str();
}

SemiSimplicialComplex::SemiSimplicialComplex(std::vector<std::size_t> counts,
                                             std::vector<std::vector<Index>> faces)
    : counts_(std::move(counts)), faces_(std::move(faces)) {
  if (counts_.empty()) throw Error("complex needs at least dimension 0");
  faces_.resize(counts_.size());
  for (int n = 1; n <= top_dim(); ++n) {
    if (faces_[n].size() != counts_[n] * (n + 1))
      throw Error("face table of dimension " + std::to_string(n) + " has wrong size");
    for (std::size_t p = 0; p < faces_[n].size(); ++p)
      if (faces_[n][p] >= counts_[n - 1])
        throw Error("face entry out of range: d_" + std::to_string(p % (n + 1)) + " of (" +
                    std::to_string(n) + ", " + std::to_string(p / (n + 1)) + ")");
  }
}

std::size_t SemiSimplicialComplex::count(int n) const {
  if (n < 0 || n > top_dim()) return 0;
  return counts_[n];
}

Index SemiSimplicialComplex::vertex(int n, Index x, int k) const {
  // Keep vertex k by deleting the others, highest first.
  for (int m = n; m > 0; --m) {
    if (k < m) {
      x = face(m, m, x);
    } else {
      x = face(m, 0, x);
      --k;
    }
  }
  return x;
}

std::vector<Index> SemiSimplicialComplex::vertices(int n, Index x) const {
  std::vector<Index> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = vertex(n, x, k);
  return out;
}

Index SemiSimplicialComplex::restrict_to(int n, Index x, std::span<const int> positions) const {
  int m = n;
  for (int v = n; v >= 0; --v) {
    if (std::find(positions.begin(), positions.end(), v) != positions.end()) continue;
    x = face(m, v, x);
    --m;
  }
  return x;
}

SemiSimplicialComplex SemiSimplicialComplex::truncated(int top) const {
  top = std::min(top, top_dim());
  std::vector<std::size_t> counts(counts_.begin(), counts_.begin() + top + 1);
  std::vector<std::vector<Index>> faces(faces_.begin(), faces_.begin() + top + 1);
  return SemiSimplicialComplex(std::move(counts), std::move(faces));
}

SimplicialSet::SimplicialSet(SemiSimplicialComplex faces, std::vector<std::vector<Index>> degens)
    : SemiSimplicialComplex(std::move(faces)), degens_(std::move(degens)) {
  const int top = top_dim();
  degens_.resize(static_cast<std::size_t>(top));
  degenerate_.resize(counts_.size());
  for (int n = 0; n <= top; ++n) degenerate_[n].assign(counts_[n], 0);
  for (int n = 0; n < top; ++n) {
    if (degens_[n].size() != counts_[n] * (n + 1))
      throw Error("degeneracy table of dimension " + std::to_string(n) + " has wrong size");
    for (Index y : degens_[n]) {
      if (y >= counts_[n + 1]) throw Error("degeneracy entry out of range");
      degenerate_[n + 1][y] = 1;
    }
  }
}

std::size_t SimplicialSet::nondegenerate_count(int n) const {
  if (n < 0 || n > top_dim()) return 0;
  return static_cast<std::size_t>(std::count(degenerate_[n].begin(), degenerate_[n].end(), 0));
}

std::vector<std::size_t> SimplicialSet::nondegenerate_counts() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= top_dim(); ++n) out.push_back(nondegenerate_count(n));
  return out;
}

std::vector<Index> SimplicialSet::nondegenerate(int n) const {
  std::vector<Index> out;
  for (Index x = 0; x < count(n); ++x)
    if (!is_degenerate(n, x)) out.push_back(x);
  return out;
}

Index SimplicialSet::apply(int n, Index x, std::span<const int> theta) const {
  if (theta.empty()) throw Error("apply: empty operator");
  const int m = static_cast<int>(theta.size()) - 1;
  if (m > top_dim()) throw Error("apply: target dimension above truncation");
  std::vector<int> distinct;
  for (std::size_t p = 0; p < theta.size(); ++p) {
    if (theta[p] < 0 || theta[p] > n || (p > 0 && theta[p] < theta[p - 1]))
      throw Error("apply: operator is not a monotone map into [n]");
    if (distinct.empty() || distinct.back() != theta[p]) distinct.push_back(theta[p]);
  }
  Index y = restrict_to(n, x, distinct);
  int dim = static_cast<int>(distinct.size()) - 1;
  for (int p = 0; p < m; ++p) {
    if (theta[p] == theta[p + 1]) {
      y = degen(dim, p, y);
      ++dim;
    }
  }
  return y;
}

Index SimplicialSet::totally_degenerate(Index v, int n) const {
  for (int m = 0; m < n; ++m) v = degen(m, 0, v);
  return v;
}

ValidationReport validate(const SemiSimplicialComplex& x) {
  ValidationReport report;
  for (int n = 2; n <= x.top_dim(); ++n)
    for (Index s = 0; s < x.count(n); ++s)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (x.face(n - 1, i, x.face(n, j, s)) != x.face(n - 1, j - 1, x.face(n, i, s)))
            report.violations.push_back({"d_i d_j = d_{j-1} d_i", n, s, i, j});
  return report;
}

ValidationReport validate(const SimplicialSet& x) {
  ValidationReport report = validate(x.underlying());
  auto fail = [&](const char* what, int n, Index s, int i, int j) {
    report.violations.push_back({what, n, s, i, j});
  };
  const int top = x.top_dim();
  for (int n = 0; n < top; ++n) {
    for (Index s = 0; s < x.count(n); ++s) {
      for (int j = 0; j <= n; ++j) {
        const Index sj = x.degen(n, j, s);
        if (x.face(n + 1, j, sj) != s) fail("d_j s_j = id", n, s, j, j);
        if (x.face(n + 1, j + 1, sj) != s) fail("d_{j+1} s_j = id", n, s, j + 1, j);
        for (int i = 0; i <= n + 1; ++i) {
          if (n == 0) break;
          if (i < j) {
            if (x.face(n + 1, i, sj) != x.degen(n - 1, j - 1, x.face(n, i, s)))
              fail("d_i s_j = s_{j-1} d_i", n, s, i, j);
          } else if (i > j + 1) {
            if (x.face(n + 1, i, sj) != x.degen(n - 1, j, x.face(n, i - 1, s)))
              fail("d_i s_j = s_j d_{i-1}", n, s, i, j);
          }
        }
        if (n + 2 <= top) {
          for (int i = 0; i <= j; ++i)
            if (x.degen(n + 1, i, sj) != x.degen(n + 1, j + 1, x.degen(n, i, s)))
              fail("s_i s_j = s_{j+1} s_i", n, s, i, j);
        }
      }
    }
  }
  return report;
}

ValidationReport validate(const SimplicialMap& f) {
  ValidationReport report;
  const SimplicialSet& src = *f.source;
  const SimplicialSet& tgt = *f.target;
  const int top = std::min(src.top_dim(), tgt.top_dim());
  if (static_cast<int>(f.images.size()) <= top) {
    report.violations.push_back({"map covers every dimension", top, 0, -1, -1});
    return report;
  }
  for (int n = 0; n <= top; ++n) {
    if (f.images[n].size() != src.count(n)) {
      report.violations.push_back({"map table size", n, 0, -1, -1});
      return report;
    }
    for (Index y : f.images[n])
      if (y >= tgt.count(n)) {
        report.violations.push_back({"map image in range", n, y, -1, -1});
        return report;
      }
  }
  for (int n = 1; n <= top; ++n)
    for (Index s = 0; s < src.count(n); ++s)
      for (int i = 0; i <= n; ++i)
        if (f(n - 1, src.face(n, i, s)) != tgt.face(n, i, f(n, s)))
          report.violations.push_back({"f d_i = d_i f", n, s, i, -1});
  for (int n = 0; n < top; ++n)
    for (Index s = 0; s < src.count(n); ++s)
      for (int i = 0; i <= n; ++i)
        if (f(n + 1, src.degen(n, i, s)) != tgt.degen(n, i, f(n, s)))
          report.violations.push_back({"f s_i = s_i f", n, s, i, -1});
  return report;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap out{f.source, g.target, {}};
  const std::size_t dims = std::min(f.images.size(), g.images.size());
  out.images.resize(dims);
  for (std::size_t n = 0; n < dims; ++n) {
    out.images[n].reserve(f.images[n].size());
    for (Index y : f.images[n]) out.images[n].push_back(g.images[n][y]);
  }
  return out;
}

SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> x) {
  SimplicialMap out{x, x, {}};
  for (int n = 0; n <= x->top_dim(); ++n) {
    std::vector<Index> ids(x->count(n));
    for (Index s = 0; s < ids.size(); ++s) ids[s] = s;
    out.images.push_back(std::move(ids));
  }
  return out;
}

namespace {

// Weakly (or strictly) increasing sequences of length len in [0, n].
void monotone_sequences(int n, int len, bool strict, std::vector<detail::Key>& out) {
  detail::Key cur;
  auto rec = [&](auto&& self, int lo) -> void {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.push_back(v);
      self(self, strict ? v + 1 : v);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// Semisimplicial complex on the strictly increasing subsets of [n] accepted
// by `keep`, with faces by deletion.
template <class Keep>
SemiSimplicialComplex subsets_complex(int n, int top, Keep keep) {
  std::vector<std::vector<detail::Key>> keys(top + 1);
  for (int k = 0; k <= top; ++k) {
    std::vector<detail::Key> all;
    monotone_sequences(n, k + 1, true, all);
    for (auto& s : all)
      if (keep(s)) keys[k].push_back(std::move(s));
  }
  std::vector<std::size_t> counts;
  std::vector<std::vector<Index>> faces(top + 1);
  std::vector<std::map<detail::Key, Index>> lookup(top + 1);
  for (int k = 0; k <= top; ++k) {
    counts.push_back(keys[k].size());
    for (Index x = 0; x < keys[k].size(); ++x) lookup[k][keys[k][x]] = x;
  }
  for (int k = 1; k <= top; ++k)
    for (const auto& s : keys[k])
      for (int i = 0; i <= k; ++i) faces[k].push_back(lookup[k - 1].at(detail::drop_at(s, i)));
  return SemiSimplicialComplex(std::move(counts), std::move(faces));
}

}  // namespace

SimplicialSet standard_simplex(int n, int margin) {
  if (n < 0) throw Error("empty linear order");
  if (margin < 0) throw Error("negative truncation margin");
  const int top = n + margin;
  std::vector<std::vector<detail::Key>> keys(top + 1);
  for (int k = 0; k <= top; ++k) monotone_sequences(n, k + 1, false, keys[k]);
  return detail::build_keyed(
      keys, [](int, int i, const detail::Key& s) { return detail::drop_at(s, i); },
      [](int, int i, const detail::Key& s) { return detail::repeat_at(s, i); });
}

SimplicialSet standard_simplex_of_size(std::size_t size, int margin) {
  if (size == 0) throw Error("empty linear order");
  return standard_simplex(static_cast<int>(size) - 1, margin);
}

SemiSimplicialComplex boundary(int n) {
  if (n < 1) throw Error("boundary needs n >= 1");
  return subsets_complex(n, n, [n](const detail::Key& s) {
    return static_cast<int>(s.size()) <= n;
  });
}

SemiSimplicialComplex horn(int n, int j) {
  if (n < 1) throw Error("horn needs n >= 1");
  if (j < 0 || j > n) throw Error("horn index out of range");
  return subsets_complex(n, n, [n, j](const detail::Key& s) {
    if (static_cast<int>(s.size()) > n) return false;
    // The face opposite j is the n-element subset missing j.
    if (static_cast<int>(s.size()) == n) return std::find(s.begin(), s.end(), j) != s.end();
    return true;
  });
}

}  // namespace sskit
