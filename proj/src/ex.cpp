#include "sskit/ex.hpp"

#include <algorithm>
#include <functional>

#include "sskit/error.hpp"

namespace sskit {

MarkedEdgeSet::MarkedEdgeSet(std::shared_ptr<const SimplicialSet> base, const std::vector<Index>& edges)
    : base_(std::move(base)) {
  if (!base_) throw Error("marked edge set needs a base");
  marked_.assign(base_->count(1), 0);
  for (Index e : edges) {
    if (e >= marked_.size()) throw Error("marked edge " + std::to_string(e) + " out of range");
    marked_[e] = 1;
  }
  for (Index e = 0; e < marked_.size(); ++e)
    if (base_->is_degenerate(1, e)) marked_[e] = 1;
}

MarkedEdgeSet MarkedEdgeSet::degenerate_only(std::shared_ptr<const SimplicialSet> base) {
  return MarkedEdgeSet(std::move(base), {});
}

MarkedEdgeSet MarkedEdgeSet::all_edges(std::shared_ptr<const SimplicialSet> base) {
  std::vector<Index> all(base ? base->count(1) : 0);
  for (Index e = 0; e < all.size(); ++e) all[e] = e;
  return MarkedEdgeSet(std::move(base), all);
}

std::vector<Index> MarkedEdgeSet::edges() const {
  std::vector<Index> out;
  for (Index e = 0; e < marked_.size(); ++e)
    if (marked_[e]) out.push_back(e);
  return out;
}

ExShape::ExShape(int k) : k_(k), lattice_(nonempty_subsets_poset(k < 0 ? 0 : k + 1)) {
  const FinitePoset& p = lattice_.poset();
  std::vector<std::vector<int>> found;
  std::vector<int> cur;
  std::function<void()> grow = [&] {
    found.push_back(cur);
    for (std::size_t b = 0; b < lattice_.size(); ++b) {
      if (!p.less(cur.back(), static_cast<int>(b))) continue;
      cur.push_back(static_cast<int>(b));
      grow();
      cur.pop_back();
    }
  };
  for (std::size_t a = 0; a < lattice_.size(); ++a) {
    cur = {static_cast<int>(a)};
    grow();
  }
  std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) {
    if (u.back() != v.back()) return u.back() < v.back();
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
  });
  for (const auto& c : found) {
    std::vector<Mask> masks;
    for (int e : c) masks.push_back(lattice_.mask(e));
    index_.emplace(masks, chains_.size());
    chains_.push_back(std::move(masks));
  }
}

long ExLevel::find(const ExSimplex& s) const {
  auto it = std::lower_bound(simplices.begin(), simplices.end(), s);
  if (it == simplices.end() || *it != s) return -1;
  return static_cast<long>(it - simplices.begin());
}

Index evaluate_chain(const SimplicialSet& x, const ExShape& shape, const ExSimplex& s,
                     const std::vector<Mask>& weak_chain) {
  if (weak_chain.empty()) throw Error("empty chain");
  std::vector<Mask> strict;
  std::vector<int> theta;
  for (Mask m : weak_chain) {
    if (!strict.empty() && strict.back() == m) {
      theta.push_back(static_cast<int>(strict.size()) - 1);
      continue;
    }
    if (!strict.empty() && (strict.back() & ~m) != 0) throw Error("not a chain of subsets");
    strict.push_back(m);
    theta.push_back(static_cast<int>(strict.size()) - 1);
  }
  const Index image = s.images[shape.index_of(strict)];
  if (strict.size() == weak_chain.size()) return image;
  return x.apply(static_cast<int>(strict.size()) - 1, image, theta);
}

std::vector<Index> vertex_assignment(const ExShape& shape, const ExSimplex& s) {
  std::vector<Index> out;
  for (Mask m : shape.lattice().masks()) out.push_back(s.images[shape.vertex_chain(m)]);
  return out;
}

namespace {

void check_level(const SimplicialSet& x, int k, int bound) {
  if (k < 0) throw Error("negative Ex level");
  if (k > bound) throw Error("Ex level " + std::to_string(k) + " exceeds bound " + std::to_string(bound));
  if (x.top_dim() < k) throw Error("complex is truncated below the Ex level");
}

ExLevel enumerate(const SimplicialSet& x, int k, const MarkedEdgeSet* equiv, std::size_t budget) {
  ExLevel level;
  level.k = k;
  level.shape = std::make_shared<ExShape>(k);
  const ExShape& shape = *level.shape;

  std::vector<std::map<std::vector<Index>, std::vector<Index>>> by_faces(k + 1);
  for (int n = 1; n <= k; ++n)
    for (Index s = 0; s < x.count(n); ++s) {
      auto f = x.faces_of(n, s);
      by_faces[n][std::vector<Index>(f.begin(), f.end())].push_back(s);
    }
  std::vector<Index> all_vertices(x.count(0));
  for (Index v = 0; v < all_vertices.size(); ++v) all_vertices[v] = v;

  std::vector<std::vector<std::size_t>> face_chains(shape.size());
  std::vector<char> needs_mark(shape.size(), 0);
  for (std::size_t c = 0; c < shape.size(); ++c) {
    const auto& ch = shape.chain(c);
    for (std::size_t i = 0; ch.size() > 1 && i < ch.size(); ++i) {
      std::vector<Mask> f(ch);
      f.erase(f.begin() + i);
      face_chains[c].push_back(shape.index_of(f));
    }
    if (ch.size() == 2 && mask_max(ch[0]) == mask_max(ch[1])) needs_mark[c] = 1;
  }

  ExSimplex cur{std::vector<Index>(shape.size())};
  const std::vector<Index> none;
  std::function<void(std::size_t)> assign = [&](std::size_t c) {
    if (c == shape.size()) {
      if (level.simplices.size() >= budget) throw BudgetExceeded("Ex enumeration budget exceeded", budget);
      level.simplices.push_back(cur);
      return;
    }
    const int d = shape.dim(c);
    const std::vector<Index>* candidates = &all_vertices;
    if (d > 0) {
      std::vector<Index> key;
      for (std::size_t f : face_chains[c]) key.push_back(cur.images[f]);
      auto it = by_faces[d].find(key);
      candidates = it == by_faces[d].end() ? &none : &it->second;
    }
    for (Index s : *candidates) {
      if (equiv && needs_mark[c] && !equiv->marked(s)) continue;
      cur.images[c] = s;
      assign(c + 1);
    }
  };
  assign(0);
  return level;
}

std::vector<Mask> map_chain(const std::vector<Mask>& chain, const std::function<int(int)>& f) {
  std::vector<Mask> out;
  for (Mask m : chain) {
    Mask image = 0;
    for (int b = 0; b < 32; ++b)
      if (m & (Mask{1} << b)) image |= Mask{1} << f(b);
    out.push_back(image);
  }
  return out;
}

}  // namespace

ExLevel ex_level(const SimplicialSet& x, int k, std::size_t budget, int bound) {
  check_level(x, k, bound);
  return enumerate(x, k, nullptr, budget);
}

ExLevel ex_eq_level(const MarkedEdgeSet& equiv, int k, std::size_t budget, int bound) {
  const SimplicialSet& x = *equiv.base();
  check_level(x, k, bound);
  return enumerate(x, k, &equiv, budget);
}

std::vector<ExSimplex> m_map(const SimplicialSet& x, int k, int bound) {
  check_level(x, k, bound);
  const ExShape shape(k);
  std::vector<ExSimplex> out;
  out.reserve(x.count(k));
  for (Index sigma = 0; sigma < x.count(k); ++sigma) {
    ExSimplex s{std::vector<Index>(shape.size())};
    for (std::size_t c = 0; c < shape.size(); ++c) {
      std::vector<int> theta;
      for (Mask m : shape.chain(c)) theta.push_back(mask_max(m));
      s.images[c] = x.apply(k, sigma, theta);
    }
    out.push_back(std::move(s));
  }
  return out;
}

ExSimplex ex_face(const SimplicialSet&, const ExShape& from, const ExShape& to, const ExSimplex& s, int i) {
  if (to.level() + 1 != from.level() || i < 0 || i > from.level()) throw Error("bad Ex face operator");
  ExSimplex out{std::vector<Index>(to.size())};
  auto delta = [i](int b) { return b < i ? b : b + 1; };
  for (std::size_t c = 0; c < to.size(); ++c) out.images[c] = s.images[from.index_of(map_chain(to.chain(c), delta))];
  return out;
}

ExSimplex ex_degen(const SimplicialSet& x, const ExShape& from, const ExShape& to, const ExSimplex& s,
                   int i) {
  if (to.level() != from.level() + 1 || i < 0 || i > from.level()) throw Error("bad Ex degeneracy operator");
  ExSimplex out{std::vector<Index>(to.size())};
  auto sigma = [i](int b) { return b <= i ? b : b - 1; };
  for (std::size_t c = 0; c < to.size(); ++c)
    out.images[c] = evaluate_chain(x, from, s, map_chain(to.chain(c), sigma));
  return out;
}

SimplicialMap ex_to_map(std::shared_ptr<const SimplicialSet> x, const ExShape& shape, const ExSimplex& s) {
  Subdivision sd = sd_simplex(shape.level(), x->top_dim());
  SimplicialMap f{sd.complex, x, {}};
  f.images.resize(x->top_dim() + 1);
  for (int n = 0; n <= x->top_dim(); ++n)
    for (Index t = 0; t < sd.complex->count(n); ++t) {
      std::vector<Mask> chain;
      for (Index v : sd.complex->vertices(n, t)) chain.push_back(sd.masks[v]);
      f.images[n].push_back(evaluate_chain(*x, shape, s, chain));
    }
  return f;
}

ExTruncation ex_truncation(std::shared_ptr<const SimplicialSet> x, int max_level, const MarkedEdgeSet* equiv,
                           std::size_t budget) {
  if (equiv && equiv->base() != x) throw Error("marked edges belong to a different complex");
  ExTruncation ex{x, max_level, {}};
  for (int k = 0; k <= max_level; ++k)
    ex.levels.push_back(equiv ? ex_eq_level(*equiv, k, budget) : ex_level(*x, k, budget));
  return ex;
}

std::vector<std::string> closure_violations(const ExTruncation& ex) {
  std::vector<std::string> out;
  const SimplicialSet& x = *ex.base;
  for (int k = 0; k <= ex.max_level; ++k) {
    const ExLevel& level = ex.levels[k];
    for (std::size_t n = 0; n < level.simplices.size(); ++n) {
      const ExSimplex& s = level.simplices[n];
      const std::string who = "Ex simplex (" + std::to_string(k) + ", " + std::to_string(n) + ")";
      for (int i = 0; k > 0 && i <= k; ++i)
        if (ex.levels[k - 1].find(ex_face(x, *level.shape, *ex.levels[k - 1].shape, s, i)) < 0)
          out.push_back(who + ": face d_" + std::to_string(i) + " missing");
      if (k + 1 > ex.max_level || x.top_dim() < k + 1) continue;
      for (int i = 0; i <= k; ++i)
        if (ex.levels[k + 1].find(ex_degen(x, *level.shape, *ex.levels[k + 1].shape, s, i)) < 0)
          out.push_back(who + ": degeneracy s_" + std::to_string(i) + " missing");
    }
  }
  return out;
}

}  // namespace sskit
