#pragma once

#include <map>
#include <vector>

#include "sskit/error.hpp"
#include "sskit/sset.hpp"

namespace sskit::detail {

using Key = std::vector<int>;

/// Builds a simplicial set whose n-simplices are the listed keys, with faces
/// and degeneracies computed on keys. Every computed key must be listed.
template <class FaceFn, class DegenFn>
SimplicialSet build_keyed(const std::vector<std::vector<Key>>& keys, FaceFn face,
                          DegenFn degen) {
  const int top = static_cast<int>(keys.size()) - 1;
  std::vector<std::map<Key, Index>> lookup(keys.size());
  std::vector<std::size_t> counts(keys.size());
  for (int n = 0; n <= top; ++n) {
    counts[n] = keys[n].size();
    for (Index x = 0; x < keys[n].size(); ++x) lookup[n].emplace(keys[n][x], x);
  }
  auto find = [&](int n, const Key& k) {
    auto it = lookup[n].find(k);
    if (it == lookup[n].end()) throw Error("keyed builder: computed simplex not listed");
    return it->second;
  };

  std::vector<std::vector<Index>> faces(keys.size());
  for (int n = 1; n <= top; ++n) {
    faces[n].reserve(counts[n] * (n + 1));
    for (const Key& k : keys[n])
      for (int i = 0; i <= n; ++i) faces[n].push_back(find(n - 1, face(n, i, k)));
  }
  std::vector<std::vector<Index>> degens(keys.size() > 0 ? keys.size() - 1 : 0);
  for (int n = 0; n < top; ++n) {
    degens[n].reserve(counts[n] * (n + 1));
    for (const Key& k : keys[n])
      for (int i = 0; i <= n; ++i) degens[n].push_back(find(n + 1, degen(n, i, k)));
  }
  return SimplicialSet(SemiSimplicialComplex(std::move(counts), std::move(faces)),
                       std::move(degens));
}

/// Face/degeneracy on vertex sequences (nerves of posets): drop / repeat entry i.
inline Key drop_at(const Key& k, int i) {
  Key out;
  out.reserve(k.size() - 1);
  for (int p = 0; p < static_cast<int>(k.size()); ++p)
    if (p != i) out.push_back(k[p]);
  return out;
}

inline Key repeat_at(const Key& k, int i) {
  Key out(k);
  out.insert(out.begin() + i, k[i]);
  return out;
}

}  // namespace sskit::detail
