#include "sskit/category.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "sskit/detail/keyed_builder.hpp"
#include "sskit/error.hpp"
#include "sskit/kan.hpp"

namespace sskit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& name) {
  if (name.empty() || name.rfind("id_", 0) == 0) return false;
  return name.find_first_of(" \t\r\n.=#") == std::string::npos;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Presentations

int CategoryPresentation::object_id(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<int>(i);
  throw Error("unknown object '" + name + "'");
}

int CategoryPresentation::generator_id(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return static_cast<int>(i);
  throw Error("unknown arrow '" + name + "'");
}

int CategoryPresentation::add_object(const std::string& name) {
  if (name.empty() || name.find_first_of(" \t.=#") != std::string::npos)
    throw Error("invalid object name '" + name + "'");
  if (std::find(objects.begin(), objects.end(), name) != objects.end())
    throw Error("duplicate object '" + name + "'");
  objects.push_back(name);
  return static_cast<int>(objects.size()) - 1;
}

int CategoryPresentation::add_generator(const std::string& name, int src, int dst) {
  if (!valid_name(name)) throw Error("invalid arrow name '" + name + "'");
  for (const auto& g : generators)
    if (g.name == name) throw Error("duplicate arrow '" + name + "'");
  if (src < 0 || dst < 0 || src >= static_cast<int>(objects.size()) || dst >= static_cast<int>(objects.size()))
    throw Error("arrow endpoint out of range");
  generators.push_back({name, src, dst});
  return static_cast<int>(generators.size()) - 1;
}

void CategoryPresentation::add_relation(const std::string& lhs, const std::string& rhs) {
  Word l = parse_word(*this, lhs), r = parse_word(*this, rhs);
  if (word_source(*this, l) != word_source(*this, r) || word_target(*this, l) != word_target(*this, r))
    throw Error("relation " + lhs + " = " + rhs + " relates words with different endpoints");
  relations.emplace_back(std::move(l), std::move(r));
}

Word parse_word(const CategoryPresentation& p, const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == '.') {
      tokens.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  tokens.push_back(trim(cur));
  Word w;
  int object = -1;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const std::string& t = *it;
    if (t.empty()) throw Error("empty arrow name in word '" + text + "'");
    if (t.rfind("id_", 0) == 0) {
      const int x = p.object_id(t.substr(3));
      if (object >= 0 && object != x) throw Error("word '" + text + "' is not composable");
      object = x;
      if (w.arrows.empty()) w.object = x;
      continue;
    }
    const int g = p.generator_id(t);
    if (object >= 0 && p.generators[g].src != object) throw Error("word '" + text + "' is not composable");
    if (w.arrows.empty()) w.object = p.generators[g].src;
    w.arrows.push_back(g);
    object = p.generators[g].dst;
  }
  return w;
}

std::string format_word(const CategoryPresentation& p, const Word& w) {
  if (w.arrows.empty()) return "id_" + p.objects[w.object];
  std::string out;
  for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it) {
    if (!out.empty()) out += '.';
    out += p.generators[*it].name;
  }
  return out;
}

int word_source(const CategoryPresentation& p, const Word& w) {
  return w.arrows.empty() ? w.object : p.generators[w.arrows.front()].src;
}

int word_target(const CategoryPresentation& p, const Word& w) {
  return w.arrows.empty() ? w.object : p.generators[w.arrows.back()].dst;
}

// ---------------------------------------------------------------------------
// Finite categories

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<int> identities, std::vector<std::vector<int>> compose)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      compose_(std::move(compose)) {
  const int na = static_cast<int>(arrows_.size());
  const int no = static_cast<int>(objects_.size());
  if (static_cast<int>(identities_.size()) != no) throw Error("one identity per object required");
  if (static_cast<int>(compose_.size()) != na) throw Error("composition table has wrong size");
  for (const auto& a : arrows_)
    if (a.src < 0 || a.dst < 0 || a.src >= no || a.dst >= no) throw Error("arrow endpoint out of range");
  for (int x = 0; x < no; ++x) {
    const int i = identities_[x];
    if (i < 0 || i >= na || arrows_[i].src != x || arrows_[i].dst != x) throw Error("bad identity arrow");
  }
  for (int g = 0; g < na; ++g) {
    if (static_cast<int>(compose_[g].size()) != na) throw Error("composition table has wrong size");
    for (int f = 0; f < na; ++f) {
      const int h = compose_[g][f];
      if (arrows_[f].dst != arrows_[g].src) {
        if (h != -1) throw Error("composite defined on a non-composable pair");
        continue;
      }
      if (h < 0 || h >= na || arrows_[h].src != arrows_[f].src || arrows_[h].dst != arrows_[g].dst)
        throw Error("composite " + arrows_[g].name + " o " + arrows_[f].name + " has wrong endpoints");
    }
  }
  for (int f = 0; f < na; ++f)
    if (compose_[identities_[arrows_[f].dst]][f] != f || compose_[f][identities_[arrows_[f].src]] != f)
      throw Error("identity law fails for " + arrows_[f].name);
  for (int f = 0; f < na; ++f)
    for (int g = 0; g < na; ++g) {
      const int gf = compose_[g][f];
      if (gf < 0) continue;
      for (int h = 0; h < na; ++h) {
        const int hg = compose_[h][g];
        if (hg < 0) continue;
        if (compose_[h][gf] != compose_[hg][f])
          throw Error("associativity fails at " + arrows_[h].name + ", " + arrows_[g].name + ", " +
                      arrows_[f].name);
      }
    }

  hom_.assign(no, std::vector<std::vector<int>>(no));
  for (int f = 0; f < na; ++f) hom_[arrows_[f].src][arrows_[f].dst].push_back(f);
  inverse_.assign(na, -1);
  for (int f = 0; f < na; ++f)
    for (int g : hom_[arrows_[f].dst][arrows_[f].src])
      if (compose_[g][f] == identities_[arrows_[f].src] && compose_[f][g] == identities_[arrows_[f].dst]) {
        inverse_[f] = g;
        break;
      }

  std::vector<char> reached(na, 0);
  std::vector<int> closure;
  for (int x = 0; x < no; ++x) {
    reached[identities_[x]] = 1;
    closure.push_back(identities_[x]);
  }
  for (int a = 0; a < na; ++a) {
    if (reached[a]) continue;
    generators_.push_back(a);
    reached[a] = 1;
    closure.push_back(a);
    for (bool grew = true; grew;) {
      grew = false;
      const std::size_t size = closure.size();
      for (std::size_t p = 0; p < size; ++p)
        for (std::size_t q = 0; q < size; ++q) {
          const int h = compose_[closure[p]][closure[q]];
          if (h < 0 || reached[h]) continue;
          reached[h] = 1;
          closure.push_back(h);
          derivations_.push_back({h, closure[p], closure[q]});
          grew = true;
        }
    }
  }
}

int FiniteCategory::find_object(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return static_cast<int>(i);
  throw Error("unknown object '" + name + "'");
}

int FiniteCategory::find_arrow(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return static_cast<int>(i);
  throw Error("unknown arrow '" + name + "'");
}

std::vector<int> FiniteCategory::isomorphisms() const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(arrows_.size()); ++f)
    if (is_iso(f)) out.push_back(f);
  return out;
}

int PresentedCategory::evaluate(const Word& w) const {
  int cur = category.identity(w.object);
  if (!w.arrows.empty()) cur = category.identity(category.src(generator_arrow[w.arrows.front()]));
  for (int g : w.arrows) {
    cur = category.compose(generator_arrow[g], cur);
    if (cur < 0) throw Error("word is not composable");
  }
  return cur;
}

PresentedCategory materialize(const CategoryPresentation& p, std::size_t word_bound) {
  const std::string hint = " (increase word bound, currently " + std::to_string(word_bound) + ")";
  for (const auto& [l, r] : p.relations)
    if (l.arrows.size() > word_bound || r.arrows.size() > word_bound)
      throw Error("relation longer than the word bound" + hint);

  constexpr std::size_t kMaxWords = 2'000'000;
  std::vector<Word> words;
  std::map<Word, std::size_t> index;
  std::vector<int> target;
  for (std::size_t x = 0; x < p.objects.size(); ++x) {
    index.emplace(Word{static_cast<int>(x), {}}, words.size());
    words.push_back({static_cast<int>(x), {}});
    target.push_back(static_cast<int>(x));
  }
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= word_bound; ++len) {
    const std::size_t end = words.size();
    for (std::size_t w = begin; w < end; ++w)
      for (std::size_t g = 0; g < p.generators.size(); ++g) {
        if (p.generators[g].src != target[w]) continue;
        Word next = words[w];
        if (next.arrows.empty()) next.object = p.generators[g].src;
        next.arrows.push_back(static_cast<int>(g));
        index.emplace(next, words.size());
        words.push_back(std::move(next));
        target.push_back(p.generators[g].dst);
        if (words.size() > kMaxWords) throw Error("word enumeration too large" + hint);
      }
    begin = end;
  }

  UnionFind uf(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto& arrows = words[w].arrows;
    for (const auto& [l, r] : p.relations)
      for (int dir = 0; dir < 2; ++dir) {
        const Word& pat = dir == 0 ? l : r;
        const Word& rep = dir == 0 ? r : l;
        if (pat.arrows.empty() || pat.arrows.size() > arrows.size()) continue;
        for (std::size_t pos = 0; pos + pat.arrows.size() <= arrows.size(); ++pos) {
          if (!std::equal(pat.arrows.begin(), pat.arrows.end(), arrows.begin() + pos)) continue;
          Word out;
          out.arrows.assign(arrows.begin(), arrows.begin() + pos);
          out.arrows.insert(out.arrows.end(), rep.arrows.begin(), rep.arrows.end());
          out.arrows.insert(out.arrows.end(), arrows.begin() + pos + pat.arrows.size(), arrows.end());
          out.object = out.arrows.empty() ? p.generators[arrows[pos]].src : p.generators[out.arrows.front()].src;
          if (auto it = index.find(out); it != index.end()) uf.unite(w, it->second);
        }
      }
  }

  // Representatives: shortest, then lexicographic.
  std::map<std::size_t, std::size_t> rep;
  auto better = [&](std::size_t a, std::size_t b) {
    const auto& wa = words[a];
    const auto& wb = words[b];
    if (wa.arrows.size() != wb.arrows.size()) return wa.arrows.size() < wb.arrows.size();
    return wa < wb;
  };
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto [it, fresh] = rep.emplace(uf.find(w), w);
    if (!fresh && better(w, it->second)) it->second = w;
  }
  std::size_t max_rep = 0;
  std::vector<std::size_t> reps;
  for (const auto& [root, w] : rep) {
    reps.push_back(w);
    max_rep = std::max(max_rep, words[w].arrows.size());
  }
  if (2 * max_rep > word_bound)
    throw Error("closure does not stabilize: representative of length " + std::to_string(max_rep) + hint);
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    const bool ia = words[a].arrows.empty(), ib = words[b].arrows.empty();
    if (ia != ib) return ia;
    return better(a, b);
  });

  std::vector<FiniteCategory::Arrow> arrows;
  std::map<std::size_t, int> arrow_of_root;
  for (std::size_t w : reps) {
    arrow_of_root[uf.find(w)] = static_cast<int>(arrows.size());
    arrows.push_back({word_source(p, words[w]), target[w], format_word(p, words[w])});
  }
  auto arrow_of = [&](const Word& w) {
    auto it = index.find(w);
    if (it == index.end()) throw Error("composite exceeds the word bound" + hint);
    return arrow_of_root.at(uf.find(it->second));
  };
  std::vector<int> identities;
  for (std::size_t x = 0; x < p.objects.size(); ++x) identities.push_back(arrow_of(Word{static_cast<int>(x), {}}));
  const std::size_t na = arrows.size();
  std::vector<std::vector<int>> compose(na, std::vector<int>(na, -1));
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t f = 0; f < na; ++f) {
      if (arrows[f].dst != arrows[g].src) continue;
      Word w = words[reps[f]];
      const auto& tail = words[reps[g]].arrows;
      if (w.arrows.empty()) w.object = arrows[f].src;
      w.arrows.insert(w.arrows.end(), tail.begin(), tail.end());
      if (w.arrows.empty()) w.object = arrows[f].src;
      compose[g][f] = arrow_of(w);
    }
  std::vector<int> generator_arrow;
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    generator_arrow.push_back(arrow_of(Word{p.generators[g].src, {static_cast<int>(g)}}));

  // Every enumerated word must fold to its own class.
  for (std::size_t w = 0; w < words.size(); ++w) {
    int cur = identities[words[w].object];
    for (int g : words[w].arrows) cur = compose[generator_arrow[g]][cur];
    if (cur != arrow_of_root.at(uf.find(w)))
      throw Error("closure is inconsistent at word " + format_word(p, words[w]) + hint);
  }
  try {
    return {FiniteCategory(p.objects, std::move(arrows), std::move(identities), std::move(compose)),
            std::move(generator_arrow)};
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + hint);
  }
}

CategoryPresentation presentation_of(const FiniteCategory& c) {
  CategoryPresentation p;
  for (std::size_t x = 0; x < c.object_count(); ++x) p.objects.push_back(c.object_name(static_cast<int>(x)));
  std::vector<int> gen(c.arrow_count(), -1);
  std::set<std::string> used;
  for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f) {
    if (c.is_identity(f)) continue;
    std::string name = c.arrow(f).name;
    if (!valid_name(name) || used.count(name)) name = "a" + std::to_string(f);
    used.insert(name);
    gen[f] = static_cast<int>(p.generators.size());
    p.generators.push_back({name, c.src(f), c.dst(f)});
  }
  for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f)
    for (int g = 0; g < static_cast<int>(c.arrow_count()); ++g) {
      if (gen[f] < 0 || gen[g] < 0 || c.compose(g, f) < 0) continue;
      const int h = c.compose(g, f);
      Word lhs{c.src(f), {gen[f], gen[g]}};
      Word rhs{c.src(f), {}};
      if (!c.is_identity(h)) rhs.arrows.push_back(gen[h]);
      p.relations.emplace_back(std::move(lhs), std::move(rhs));
    }
  return p;
}

FiniteCategory poset_category(const FinitePoset& p, const std::vector<std::string>& names) {
  const int n = static_cast<int>(p.size());
  std::vector<std::string> objects;
  for (int x = 0; x < n; ++x) objects.push_back(names.empty() ? std::to_string(x) : names[x]);
  std::vector<FiniteCategory::Arrow> arrows;
  std::vector<std::vector<int>> id_of(n, std::vector<int>(n, -1));
  std::vector<int> identities;
  for (int x = 0; x < n; ++x) {
    id_of[x][x] = static_cast<int>(arrows.size());
    identities.push_back(id_of[x][x]);
    arrows.push_back({x, x, "id_" + objects[x]});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.less(a, b)) {
        id_of[a][b] = static_cast<int>(arrows.size());
        arrows.push_back({a, b, objects[a] + "<" + objects[b]});
      }
  const std::size_t na = arrows.size();
  std::vector<std::vector<int>> compose(na, std::vector<int>(na, -1));
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t f = 0; f < na; ++f)
      if (arrows[f].dst == arrows[g].src) compose[g][f] = id_of[arrows[f].src][arrows[g].dst];
  return FiniteCategory(std::move(objects), std::move(arrows), std::move(identities), std::move(compose));
}

FiniteCategory linear_order_category(std::size_t size) {
  if (size == 0) throw Error("empty linear order");
  std::vector<std::pair<int, int>> covers;
  for (std::size_t i = 0; i + 1 < size; ++i) covers.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return poset_category(FinitePoset::from_covers(size, covers));
}

FiniteCategory subset_category(int k) {
  auto lat = nonempty_subsets_poset(k + 1);
  std::vector<std::string> names;
  for (Mask m : lat.masks()) names.push_back(mask_to_string(m));
  return poset_category(lat.poset(), names);
}

SimplicialSet category_nerve(const FiniteCategory& c, int top_dim) {
  if (top_dim < 0) throw Error("negative truncation");
  using detail::Key;
  std::vector<std::vector<Key>> keys(top_dim + 1);
  for (std::size_t x = 0; x < c.object_count(); ++x) keys[0].push_back({static_cast<int>(x)});
  if (top_dim >= 1)
    for (std::size_t f = 0; f < c.arrow_count(); ++f) keys[1].push_back({static_cast<int>(f)});
  for (int n = 2; n <= top_dim; ++n)
    for (const Key& k : keys[n - 1])
      for (std::size_t f = 0; f < c.arrow_count(); ++f)
        if (c.src(static_cast<int>(f)) == c.dst(k.back())) {
          Key next(k);
          next.push_back(static_cast<int>(f));
          keys[n].push_back(std::move(next));
        }
  auto face = [&](int n, int i, const Key& k) -> Key {
    if (n == 1) return {i == 0 ? c.dst(k[0]) : c.src(k[0])};
    if (i == 0) return Key(k.begin() + 1, k.end());
    if (i == n) return Key(k.begin(), k.end() - 1);
    Key out(k.begin(), k.begin() + (i - 1));
    out.push_back(c.compose(k[i], k[i - 1]));
    out.insert(out.end(), k.begin() + i + 1, k.end());
    return out;
  };
  auto degen = [&](int n, int i, const Key& k) -> Key {
    if (n == 0) return {c.identity(k[0])};
    const int object = i < n ? c.src(k[i]) : c.dst(k[n - 1]);
    Key out(k);
    out.insert(out.begin() + i, c.identity(object));
    return out;
  };
  return detail::build_keyed(keys, face, degen);
}

SimplicialSet nerve_of_presentation(const CategoryPresentation& p, int top_dim, std::size_t word_bound) {
  return category_nerve(materialize(p, word_bound).category, top_dim);
}

std::vector<Index> iso_edges(const FiniteCategory& c) {
  std::vector<Index> out;
  for (int f : c.isomorphisms()) out.push_back(static_cast<Index>(f));
  return out;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

Functor compose_functors(const Functor& g, const Functor& f) {
  Functor out;
  for (int x : f.objects) out.objects.push_back(g.objects[x]);
  for (int a : f.arrows) out.arrows.push_back(g.arrows[a]);
  return out;
}

Functor identity_functor(const FiniteCategory& c) {
  Functor f;
  f.objects.resize(c.object_count());
  f.arrows.resize(c.arrow_count());
  std::iota(f.objects.begin(), f.objects.end(), 0);
  std::iota(f.arrows.begin(), f.arrows.end(), 0);
  return f;
}

bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const Functor& f) {
  if (f.objects.size() != c.object_count() || f.arrows.size() != c.arrow_count()) return false;
  for (int x : f.objects)
    if (x < 0 || x >= static_cast<int>(d.object_count())) return false;
  for (int a = 0; a < static_cast<int>(c.arrow_count()); ++a) {
    const int b = f.arrows[a];
    if (b < 0 || b >= static_cast<int>(d.arrow_count())) return false;
    if (d.src(b) != f.objects[c.src(a)] || d.dst(b) != f.objects[c.dst(a)]) return false;
  }
  for (std::size_t x = 0; x < c.object_count(); ++x)
    if (f.arrows[c.identity(static_cast<int>(x))] != d.identity(f.objects[x])) return false;
  for (int g = 0; g < static_cast<int>(c.arrow_count()); ++g)
    for (int a = 0; a < static_cast<int>(c.arrow_count()); ++a) {
      const int h = c.compose(g, a);
      if (h >= 0 && f.arrows[h] != d.compose(f.arrows[g], f.arrows[a])) return false;
    }
  return true;
}

namespace {

struct FunctorSearchState {
  std::vector<int> obj, arr;
  std::vector<char> used;
};

class FunctorSearcher {
 public:
  FunctorSearcher(const FiniteCategory& c, const FiniteCategory& d, const FunctorSearch& s,
                  const std::function<bool(const Functor&)>& visit)
      : c_(c), d_(d), s_(s), visit_(visit), invert_(c.arrow_count(), 0) {
    for (int a : s.must_invert) {
      if (a < 0 || a >= static_cast<int>(c.arrow_count())) throw Error("must-invert arrow out of range");
      invert_[a] = 1;
    }
    if (!s.fixed_objects.empty() && s.fixed_objects.size() != c.object_count())
      throw Error("fixed object constraints have wrong size");
    if (!s.fixed_arrows.empty() && s.fixed_arrows.size() != c.arrow_count())
      throw Error("fixed arrow constraints have wrong size");
    for (int g = 0; g < static_cast<int>(c.arrow_count()); ++g)
      for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f)
        if (c.compose(g, f) >= 0 && !c.is_identity(g) && !c.is_identity(f)) triples_.push_back({g, f, c.compose(g, f)});
  }

  void run() {
    FunctorSearchState st{std::vector<int>(c_.object_count(), -1), std::vector<int>(c_.arrow_count(), -1),
                          std::vector<char>(d_.arrow_count(), 0)};
    generator(st, 0);
  }

 private:
  bool set_arrow(FunctorSearchState& st, int a, int b) const {
    if (st.arr[a] >= 0) return st.arr[a] == b;
    if (!s_.fixed_arrows.empty() && s_.fixed_arrows[a] >= 0 && s_.fixed_arrows[a] != b) return false;
    if (invert_[a] && !d_.is_iso(b)) return false;
    if (s_.injective_on_arrows) {
      if (st.used[b]) return false;
      st.used[b] = 1;
    }
    st.arr[a] = b;
    return true;
  }

  bool set_object(FunctorSearchState& st, int x, int y) const {
    if (st.obj[x] >= 0) return st.obj[x] == y;
    if (!s_.fixed_objects.empty() && s_.fixed_objects[x] >= 0 && s_.fixed_objects[x] != y) return false;
    st.obj[x] = y;
    return set_arrow(st, c_.identity(x), d_.identity(y));
  }

  bool propagate(FunctorSearchState& st) const {
    for (const auto& dv : c_.derivations()) {
      if (st.arr[dv.g] < 0 || st.arr[dv.f] < 0) continue;
      const int v = d_.compose(st.arr[dv.g], st.arr[dv.f]);
      if (v < 0 || !set_arrow(st, dv.arrow, v)) return false;
    }
    for (const auto& t : triples_) {
      const int g = st.arr[t[0]], f = st.arr[t[1]], h = st.arr[t[2]];
      if (g >= 0 && f >= 0 && h >= 0 && d_.compose(g, f) != h) return false;
    }
    return true;
  }

  void tick() {
    if (++nodes_ > s_.budget) throw BudgetExceeded("functor search budget exceeded", found_);
  }

  void generator(const FunctorSearchState& st, std::size_t i) {
    if (stop_) return;
    const auto& gens = c_.generators();
    if (i == gens.size()) {
      objects(st, 0);
      return;
    }
    const int a = gens[i];
    const int x = c_.src(a), y = c_.dst(a);
    std::vector<int> candidates;
    if (!s_.fixed_arrows.empty() && s_.fixed_arrows[a] >= 0) {
      candidates.push_back(s_.fixed_arrows[a]);
    } else if (st.obj[x] >= 0 && st.obj[y] >= 0) {
      candidates = d_.hom(st.obj[x], st.obj[y]);
    } else {
      for (int b = 0; b < static_cast<int>(d_.arrow_count()); ++b) candidates.push_back(b);
    }
    for (int b : candidates) {
      tick();
      FunctorSearchState next = st;
      if (x == y && d_.src(b) != d_.dst(b)) continue;
      if (!set_object(next, x, d_.src(b)) || !set_object(next, y, d_.dst(b)) || !set_arrow(next, a, b) ||
          !propagate(next))
        continue;
      generator(next, i + 1);
      if (stop_) return;
    }
  }

  void objects(const FunctorSearchState& st, std::size_t x) {
    if (stop_) return;
    if (x == c_.object_count()) {
      ++found_;
      if (!visit_(Functor{st.obj, st.arr})) stop_ = true;
      return;
    }
    if (st.obj[x] >= 0) {
      objects(st, x + 1);
      return;
    }
    for (int y = 0; y < static_cast<int>(d_.object_count()); ++y) {
      tick();
      FunctorSearchState next = st;
      if (!set_object(next, static_cast<int>(x), y)) continue;
      objects(next, x + 1);
      if (stop_) return;
    }
  }

  const FiniteCategory& c_;
  const FiniteCategory& d_;
  const FunctorSearch& s_;
  const std::function<bool(const Functor&)>& visit_;
  std::vector<char> invert_;
  std::vector<std::array<int, 3>> triples_;
  std::size_t nodes_ = 0;
  std::size_t found_ = 0;
  bool stop_ = false;
};

}  // namespace

void for_each_functor(const FiniteCategory& c, const FiniteCategory& d, const FunctorSearch& search,
                      const std::function<bool(const Functor&)>& visit) {
  FunctorSearcher(c, d, search, visit).run();
}

std::vector<Functor> functors(const FiniteCategory& c, const FiniteCategory& d, const FunctorSearch& search) {
  std::vector<Functor> out;
  for_each_functor(c, d, search, [&](const Functor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> natural_transformations(const FiniteCategory& c, const FiniteCategory& d,
                                                      const Functor& f, const Functor& g) {
  std::vector<std::vector<int>> out;
  const int no = static_cast<int>(c.object_count());
  std::vector<int> alpha(no, -1);
  std::vector<std::vector<int>> checks(no);  // generators whose later endpoint is x
  for (int a : c.generators()) checks[std::max(c.src(a), c.dst(a))].push_back(a);
  std::function<void(int)> rec = [&](int x) {
    if (x == no) {
      out.push_back(alpha);
      return;
    }
    for (int cand : d.hom(f.objects[x], g.objects[x])) {
      alpha[x] = cand;
      bool ok = true;
      for (int a : checks[x]) {
        const int s = c.src(a), t = c.dst(a);
        if (d.compose(g.arrows[a], alpha[s]) != d.compose(alpha[t], f.arrows[a])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    alpha[x] = -1;
  };
  rec(0);
  return out;
}

std::vector<int> functor_iso_classes(const FiniteCategory& c, const FiniteCategory& d,
                                     const std::vector<Functor>& list) {
  std::map<Functor, std::size_t> index;
  for (std::size_t i = 0; i < list.size(); ++i) index.emplace(list[i], i);
  UnionFind uf(list.size());
  const auto isos = d.isomorphisms();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Functor& f = list[i];
    for (int x = 0; x < static_cast<int>(c.object_count()); ++x)
      for (int phi : isos) {
        if (d.src(phi) != f.objects[x] || d.is_identity(phi)) continue;
        const int inv = *d.inverse(phi);
        Functor g = f;
        g.objects[x] = d.dst(phi);
        for (int a = 0; a < static_cast<int>(c.arrow_count()); ++a) {
          int v = f.arrows[a];
          if (c.dst(a) == x) v = d.compose(phi, v);
          if (c.src(a) == x) v = d.compose(v, inv);
          g.arrows[a] = v;
        }
        auto it = index.find(g);
        if (it == index.end()) throw Error("functor list is not closed under natural isomorphism");
        uf.unite(i, it->second);
      }
  }
  std::map<std::size_t, int> label;
  std::vector<int> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto [it, fresh] = label.emplace(uf.find(i), static_cast<int>(label.size()));
    out.push_back(it->second);
  }
  return out;
}

std::optional<Functor> find_isomorphism(const FiniteCategory& c, const FiniteCategory& d,
                                        const FunctorSearch& constraints) {
  if (c.object_count() != d.object_count() || c.arrow_count() != d.arrow_count()) return std::nullopt;
  FunctorSearch s = constraints;
  s.injective_on_arrows = true;
  std::optional<Functor> out;
  for_each_functor(c, d, s, [&](const Functor& f) {
    out = f;
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy categories and localization

FiniteCategory homotopy_category(const SimplicialSet& x) {
  if (x.top_dim() < 2) throw Error("homotopy category needs 2-simplices");
  const auto report = check_inner_kan(x, std::min(3, x.top_dim()));
  if (!report.passed()) throw Error("complex is not inner-Kan in low dimensions");
  const std::size_t ne = x.count(1);
  UnionFind uf(ne);
  for (Index s = 0; s < x.count(2); ++s) {
    const Index d0 = x.face(2, 0, s);
    const Index v = x.face(1, 0, d0);
    if (d0 == x.degen(0, 0, v)) uf.unite(x.face(2, 2, s), x.face(2, 1, s));
  }
  std::map<std::size_t, int> arrow_of;
  std::vector<FiniteCategory::Arrow> arrows;
  for (Index e = 0; e < ne; ++e) {
    auto [it, fresh] = arrow_of.emplace(uf.find(e), static_cast<int>(arrows.size()));
    if (fresh)
      arrows.push_back({static_cast<int>(x.face(1, 1, e)), static_cast<int>(x.face(1, 0, e)), "e" + std::to_string(e)});
  }
  const std::size_t na = arrows.size();
  std::vector<std::vector<int>> compose(na, std::vector<int>(na, -1));
  for (Index s = 0; s < x.count(2); ++s) {
    const int f = arrow_of.at(uf.find(x.face(2, 2, s)));
    const int g = arrow_of.at(uf.find(x.face(2, 0, s)));
    const int h = arrow_of.at(uf.find(x.face(2, 1, s)));
    if (compose[g][f] >= 0 && compose[g][f] != h) throw Error("composition of homotopy classes is not well defined");
    compose[g][f] = h;
  }
  std::vector<std::string> objects;
  std::vector<int> identities;
  for (Index v = 0; v < x.count(0); ++v) {
    objects.push_back("v" + std::to_string(v));
    identities.push_back(arrow_of.at(uf.find(x.degen(0, 0, v))));
  }
  return FiniteCategory(std::move(objects), std::move(arrows), std::move(identities), std::move(compose));
}

CategoryPresentation localize_category(const CategoryPresentation& p, const std::vector<std::string>& invert) {
  CategoryPresentation out = p;
  for (const auto& name : invert) {
    const int g = p.generator_id(name);
    const Generator gen = p.generators[g];
    const int inv = out.add_generator(name + "^-1", gen.dst, gen.src);
    out.relations.push_back({Word{gen.src, {g, inv}}, Word{gen.src, {}}});
    out.relations.push_back({Word{gen.dst, {inv, g}}, Word{gen.dst, {}}});
  }
  return out;
}

Localization localize(const FiniteCategory& c, const std::vector<int>& invert, std::size_t word_bound) {
  CategoryPresentation p = presentation_of(c);
  std::vector<int> gen(c.arrow_count(), -1);
  for (int f = 0, next = 0; f < static_cast<int>(c.arrow_count()); ++f)
    if (!c.is_identity(f)) gen[f] = next++;
  std::vector<std::string> names;
  for (int f : invert) {
    if (f < 0 || f >= static_cast<int>(c.arrow_count())) throw Error("arrow out of range");
    if (gen[f] >= 0 && std::find(names.begin(), names.end(), p.generators[gen[f]].name) == names.end())
      names.push_back(p.generators[gen[f]].name);
  }
  Localization out{materialize(localize_category(p, names), word_bound), {}};
  out.canonical.objects.resize(c.object_count());
  std::iota(out.canonical.objects.begin(), out.canonical.objects.end(), 0);
  for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f)
    out.canonical.arrows.push_back(gen[f] < 0 ? out.category.category.identity(c.src(f))
                                              : out.category.generator_arrow[gen[f]]);
  return out;
}

bool check_localization_universal(const FiniteCategory& c, const std::vector<int>& s, const Localization& l,
                                  const FiniteCategory& d) {
  const auto left = functors(l.category.category, d);
  FunctorSearch search;
  search.must_invert = s;
  const auto right = functors(c, d, search);
  std::set<Functor> right_set(right.begin(), right.end()), seen;
  for (const auto& g : left) {
    Functor r = compose_functors(g, l.canonical);
    if (!right_set.count(r) || !seen.insert(r).second) return false;
  }
  return seen.size() == right_set.size();
}

Functor max_functor(int k) {
  auto lat = nonempty_subsets_poset(k + 1);
  const FiniteCategory src = subset_category(k);
  const FiniteCategory dst = linear_order_category(k + 1);
  Functor f;
  for (std::size_t e = 0; e < lat.size(); ++e) f.objects.push_back(lat.max_of(e));
  for (int a = 0; a < static_cast<int>(src.arrow_count()); ++a)
    f.arrows.push_back(dst.hom(f.objects[src.src(a)], f.objects[src.dst(a)]).front());
  return f;
}

MaxLocalizationReport verify_max_localization(std::size_t ground_size, const FiniteCategory& d) {
  if (ground_size < 1 || ground_size > 3) throw Error("verify_max_localization needs 1 <= |I| <= 3");
  if (d.object_count() > 3 || d.arrow_count() > 12) throw Error("target category exceeds the size bounds");
  const int k = static_cast<int>(ground_size) - 1;
  const FiniteCategory lin = linear_order_category(ground_size);
  const FiniteCategory sub = subset_category(k);
  const Functor mx = max_functor(k);

  FunctorSearch search;
  for (int a = 0; a < static_cast<int>(sub.arrow_count()); ++a)
    if (!sub.is_identity(a) && lin.is_identity(mx.arrows[a])) search.must_invert.push_back(a);

  MaxLocalizationReport r;
  const auto left = functors(lin, d);
  const auto right = functors(sub, d, search);
  r.left = left.size();
  r.right = right.size();
  std::map<Functor, std::size_t> right_index;
  for (std::size_t i = 0; i < right.size(); ++i) right_index.emplace(right[i], i);

  std::vector<Functor> restricted;
  std::set<std::size_t> hit;
  for (const auto& f : left) {
    Functor fm = compose_functors(f, mx);
    auto it = right_index.find(fm);
    if (it == right_index.end()) {
      r.failure = "a restricted functor does not invert max-localizing arrows";
      return r;
    }
    if (!hit.insert(it->second).second) {
      r.failure = "restriction is not injective on functors";
      return r;
    }
    restricted.push_back(std::move(fm));
  }

  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < left.size(); ++j) {
      const auto nat_left = natural_transformations(lin, d, left[i], left[j]);
      const auto nat_right = natural_transformations(sub, d, restricted[i], restricted[j]);
      std::set<std::vector<int>> right_set(nat_right.begin(), nat_right.end()), image;
      for (const auto& alpha : nat_left) {
        std::vector<int> whiskered;
        for (int x : mx.objects) whiskered.push_back(alpha[x]);
        if (!right_set.count(whiskered)) {
          r.failure = "whiskered transformation is not natural";
          return r;
        }
        image.insert(std::move(whiskered));
      }
      if (image.size() != nat_left.size() || image.size() != right_set.size()) {
        r.failure = "restriction is not fully faithful";
        return r;
      }
    }

  const auto left_classes = functor_iso_classes(lin, d, left);
  const auto right_classes = functor_iso_classes(sub, d, right);
  r.left_classes = left.empty() ? 0 : *std::max_element(left_classes.begin(), left_classes.end()) + 1;
  r.right_classes = right.empty() ? 0 : *std::max_element(right_classes.begin(), right_classes.end()) + 1;
  std::set<int> covered;
  for (std::size_t i : hit) covered.insert(right_classes[i]);
  if (covered.size() != r.right_classes) {
    r.failure = "restriction is not essentially surjective";
    return r;
  }
  r.ok = true;
  return r;
}

std::vector<CategoryPresentation> small_category_grid() {
  std::vector<CategoryPresentation> out;
  for (int no = 1; no <= 2; ++no) {
    std::vector<std::pair<int, int>> ends;
    for (int s = 0; s < no; ++s)
      for (int t = 0; t < no; ++t) ends.emplace_back(s, t);
    std::vector<std::vector<std::pair<int, int>>> shapes{{}};
    for (const auto& e : ends) shapes.push_back({e});
    for (std::size_t a = 0; a < ends.size(); ++a)
      for (std::size_t b = a; b < ends.size(); ++b) shapes.push_back({ends[a], ends[b]});
    for (const auto& shape : shapes) {
      CategoryPresentation base;
      for (int x = 0; x < no; ++x) base.add_object(std::to_string(x));
      const char* names[] = {"a", "b"};
      for (std::size_t g = 0; g < shape.size(); ++g) base.add_generator(names[g], shape[g].first, shape[g].second);
      // Composable ordered pairs (x then y) and their relation options.
      std::vector<std::pair<int, int>> pairs;
      std::vector<std::vector<Word>> options;
      for (int x = 0; x < static_cast<int>(shape.size()); ++x)
        for (int y = 0; y < static_cast<int>(shape.size()); ++y) {
          if (base.generators[x].dst != base.generators[y].src) continue;
          pairs.emplace_back(x, y);
          std::vector<Word> opts;
          const int s = base.generators[x].src, t = base.generators[y].dst;
          for (int z = 0; z < static_cast<int>(shape.size()); ++z)
            if (base.generators[z].src == s && base.generators[z].dst == t) opts.push_back(Word{s, {z}});
          if (s == t) opts.push_back(Word{s, {}});
          options.push_back(std::move(opts));
        }
      std::vector<std::size_t> choice(pairs.size(), 0);  // 0 = free, else options[p][choice-1]
      while (true) {
        CategoryPresentation p = base;
        for (std::size_t q = 0; q < pairs.size(); ++q)
          if (choice[q] > 0)
            p.relations.push_back({Word{base.generators[pairs[q].first].src, {pairs[q].first, pairs[q].second}},
                                   options[q][choice[q] - 1]});
        try {
          materialize(p);
          out.push_back(std::move(p));
        } catch (const Error&) {
        }
        std::size_t q = 0;
        while (q < pairs.size() && ++choice[q] > options[q].size()) choice[q++] = 0;
        if (q == pairs.size()) break;
      }
    }
  }
  return out;
}

namespace {

struct Colimit {
  FiniteCategory category;
  Functor from_base;  // C -> colim at stage 0
  Functor shift;      // the automorphism induced by T
  int stages = 0;
};

Colimit stabilized_colimit(const FiniteCategory& c, const Functor& t, int max_stages) {
  std::vector<int> tn = identity_functor(c).arrows;  // T^N on arrows
  std::set<int> image(tn.begin(), tn.end());
  int n = 0;
  while (true) {
    std::set<int> next;
    for (int a : image) next.insert(t.arrows[a]);
    if (next.size() == image.size()) break;
    if (++n > max_stages) throw Error("colimit does not stabilize within " + std::to_string(max_stages) + " stages");
    image = std::move(next);
    for (int& a : tn) a = t.arrows[a];
  }
  std::vector<int> obj_new(c.object_count(), -1), arr_new(c.arrow_count(), -1);
  std::vector<std::string> objects;
  std::vector<int> identities;
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x)
    if (image.count(c.identity(x))) {
      obj_new[x] = static_cast<int>(objects.size());
      objects.push_back(c.object_name(x));
    }
  std::vector<FiniteCategory::Arrow> arrows;
  std::vector<int> old_of;
  for (int a : image) {
    if (obj_new[c.src(a)] < 0 || obj_new[c.dst(a)] < 0) throw Error("stabilized image is not a subcategory");
    arr_new[a] = static_cast<int>(arrows.size());
    old_of.push_back(a);
    arrows.push_back({obj_new[c.src(a)], obj_new[c.dst(a)], c.arrow(a).name});
  }
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x)
    if (obj_new[x] >= 0) identities.push_back(arr_new[c.identity(x)]);
  const std::size_t na = arrows.size();
  std::vector<std::vector<int>> compose(na, std::vector<int>(na, -1));
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t f = 0; f < na; ++f) {
      const int h = c.compose(old_of[g], old_of[f]);
      if (h < 0) continue;
      if (arr_new[h] < 0) throw Error("stabilized image is not closed under composition");
      compose[g][f] = arr_new[h];
    }
  Colimit out{FiniteCategory(std::move(objects), std::move(arrows), std::move(identities), std::move(compose)),
              {}, {}, n};
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x) {
    int y = x;
    for (int i = 0; i < n; ++i) y = t.objects[y];
    out.from_base.objects.push_back(obj_new[y]);
  }
  for (int a : tn) out.from_base.arrows.push_back(arr_new[a]);
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x)
    if (obj_new[x] >= 0) out.shift.objects.push_back(obj_new[t.objects[x]]);
  for (int a : old_of) out.shift.arrows.push_back(arr_new[t.arrows[a]]);
  return out;
}

}  // namespace

StabilizationReport verify_stab_commutes_with_localization(const FiniteCategory& c, const std::vector<int>& s,
                                                           const Functor& t, int max_stages) {
  if (!is_functor(c, c, t)) throw Error("T is not an endofunctor");
  const std::set<int> s_set(s.begin(), s.end());
  for (int a : s) {
    const int ta = t.arrows[a];
    if (!s_set.count(ta) && !c.is_identity(ta)) throw Error("T does not preserve S");
  }
  StabilizationReport r;

  // Left: localize the colimit at the images of S from every stage.
  const Colimit colim = stabilized_colimit(c, t, max_stages);
  r.stages = colim.stages;
  r.colimit_arrows = colim.category.arrow_count();
  std::set<int> s_inf;
  for (int a : s) s_inf.insert(colim.from_base.arrows[a]);
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < static_cast<int>(colim.category.arrow_count()); ++a)
      if (!s_inf.count(a) && s_inf.count(colim.shift.arrows[a])) {
        s_inf.insert(a);
        grew = true;
      }
  }
  const Localization left = localize(colim.category, std::vector<int>(s_inf.begin(), s_inf.end()));
  const Functor left_can = compose_functors(left.canonical, colim.from_base);
  r.localized_colimit_arrows = left.category.category.arrow_count();

  // Right: localize first, then take the colimit of the induced endofunctor.
  const Localization loc = localize(c, s);
  const FiniteCategory& l = loc.category.category;
  Functor t2;
  t2.objects.resize(l.object_count());
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x) t2.objects[x] = loc.canonical.objects[t.objects[x]];
  std::vector<int> gen_image;
  {
    std::vector<int> gen_of_arrow;
    for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f)
      if (!c.is_identity(f)) gen_of_arrow.push_back(f);
    for (int a : gen_of_arrow) gen_image.push_back(loc.canonical.arrows[t.arrows[a]]);
    // Inverse generators follow in the order of S.
    const std::size_t base_gens = gen_of_arrow.size();
    for (std::size_t g = base_gens; g < loc.category.generator_arrow.size(); ++g) {
      const int f = loc.category.generator_arrow[g];
      const int orig = *l.inverse(f);
      int source_arrow = -1;
      for (std::size_t q = 0; q < base_gens; ++q)
        if (loc.category.generator_arrow[q] == orig) source_arrow = gen_of_arrow[q];
      if (source_arrow < 0) throw Error("cannot identify an inverted generator");
      const int img = loc.canonical.arrows[t.arrows[source_arrow]];
      if (!l.is_iso(img)) throw Error("T does not preserve S");
      gen_image.push_back(*l.inverse(img));
    }
  }
  t2.arrows.assign(l.arrow_count(), -1);
  std::vector<int> queue;
  for (int x = 0; x < static_cast<int>(l.object_count()); ++x) {
    t2.arrows[l.identity(x)] = l.identity(t2.objects[x]);
    queue.push_back(l.identity(x));
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int u = queue[q];
    for (std::size_t g = 0; g < gen_image.size(); ++g) {
      const int ga = loc.category.generator_arrow[g];
      const int v = l.compose(ga, u);
      if (v < 0 || t2.arrows[v] >= 0) continue;
      t2.arrows[v] = l.compose(gen_image[g], t2.arrows[u]);
      queue.push_back(v);
    }
  }
  if (!is_functor(l, l, t2)) throw Error("induced endofunctor on the localization is not well defined");
  const Colimit colim2 = stabilized_colimit(l, t2, max_stages);
  const Functor right_can = compose_functors(colim2.from_base, loc.canonical);

  FunctorSearch constraints;
  const FiniteCategory& lc = left.category.category;
  constraints.fixed_objects.assign(lc.object_count(), -1);
  constraints.fixed_arrows.assign(lc.arrow_count(), -1);
  for (int x = 0; x < static_cast<int>(c.object_count()); ++x) {
    int& slot = constraints.fixed_objects[left_can.objects[x]];
    if (slot >= 0 && slot != right_can.objects[x]) {
      r.failure = "canonical functors disagree on objects";
      return r;
    }
    slot = right_can.objects[x];
  }
  for (int a = 0; a < static_cast<int>(c.arrow_count()); ++a) {
    int& slot = constraints.fixed_arrows[left_can.arrows[a]];
    if (slot >= 0 && slot != right_can.arrows[a]) {
      r.failure = "canonical functors disagree on arrows";
      return r;
    }
    slot = right_can.arrows[a];
  }
  if (!find_isomorphism(lc, colim2.category, constraints)) {
    r.failure = "no isomorphism compatible with the canonical functors";
    return r;
  }
  r.ok = true;
  return r;
}

// ---------------------------------------------------------------------------
// Text formats

void write_presentation(std::ostream& os, const CategoryPresentation& p) {
  os << "cat\n";
  for (const auto& o : p.objects) os << "obj " << o << '\n';
  for (const auto& g : p.generators) os << "arr " << g.name << ' ' << p.objects[g.src] << ' ' << p.objects[g.dst] << '\n';
  for (const auto& [l, r] : p.relations) os << "rel " << format_word(p, l) << " = " << format_word(p, r) << '\n';
}

CategoryPresentation parse_presentation(std::istream& is) {
  CategoryPresentation p;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (!header) {
        if (kw != "cat") throw Error("expected header 'cat'");
        header = true;
      } else if (kw == "obj") {
        std::string name, extra;
        if (!(ls >> name) || (ls >> extra)) throw Error("expected 'obj <name>'");
        p.add_object(name);
      } else if (kw == "arr") {
        std::string name, s, t, extra;
        if (!(ls >> name >> s >> t) || (ls >> extra)) throw Error("expected 'arr <name> <src> <dst>'");
        p.add_generator(name, p.object_id(s), p.object_id(t));
      } else if (kw == "rel") {
        std::string rest;
        std::getline(ls, rest);
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw Error("expected 'rel <word> = <word>'");
        p.add_relation(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)));
      } else {
        throw Error("unknown keyword '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!header) throw ParseError(line_no + 1, "empty document");
  return p;
}

CategoryPresentation parse_presentation_text(const std::string& text) {
  std::istringstream is(text);
  return parse_presentation(is);
}

CategoryPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_presentation(in);
}

void write_category(std::ostream& os, const FiniteCategory& c) {
  os << "category objects " << c.object_count() << " arrows " << c.arrow_count() << '\n';
  for (std::size_t x = 0; x < c.object_count(); ++x) os << "obj " << x << ' ' << c.object_name(static_cast<int>(x)) << '\n';
  for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f) {
    os << "arr " << f << ' ' << c.arrow(f).name << ' ' << c.src(f) << ' ' << c.dst(f);
    if (c.is_identity(f)) os << " identity";
    else if (c.is_iso(f)) os << " iso";
    os << '\n';
  }
  for (int g = 0; g < static_cast<int>(c.arrow_count()); ++g)
    for (int f = 0; f < static_cast<int>(c.arrow_count()); ++f)
      if (c.compose(g, f) >= 0 && !c.is_identity(g) && !c.is_identity(f))
        os << "comp " << g << ' ' << f << ' ' << c.compose(g, f) << '\n';
}

}  // namespace sskit
