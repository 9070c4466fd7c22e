#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sskit/sset.hpp"

namespace sskit {

using Mask = std::uint32_t;

/// Finite poset on elements 0..size()-1 with an explicit order relation.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// leq[a][b] == true iff a <= b. Throws unless reflexive, antisymmetric and
  /// transitive.
  explicit FinitePoset(std::vector<std::vector<bool>> leq);

  /// Reflexive-transitive closure of the given covering pairs (a < b).
  static FinitePoset from_covers(std::size_t size, const std::vector<std::pair<int, int>>& covers);

  std::size_t size() const { return leq_.size(); }
  bool leq(int a, int b) const { return leq_[a][b]; }
  bool less(int a, int b) const { return a != b && leq_[a][b]; }

  /// Pairs (a, b) with a < b and nothing strictly in between.
  std::vector<std::pair<int, int>> covers() const;

  /// Elements sorted so that a < b implies a comes first (stable on ids).
  std::vector<int> linear_extension() const;

 private:
  std::vector<std::vector<bool>> leq_;
};

/// Problems with a candidate order relation; empty iff it is a partial order.
std::vector<std::string> poset_violations(const std::vector<std::vector<bool>>& leq);

/// The nonempty subsets of I = {0, ..., m-1}, ordered by inclusion. Elements
/// are listed by (cardinality, lexicographic) order, which is a linear
/// extension; each carries its maximum.
class SubsetLattice {
 public:
  std::size_t ground_size() const { return ground_; }
  std::size_t size() const { return masks_.size(); }
  Mask mask(std::size_t e) const { return masks_[e]; }
  int max_of(std::size_t e) const { return max_[e]; }
  std::size_t index_of(Mask m) const { return index_.at(m); }
  const std::vector<Mask>& masks() const { return masks_; }
  const FinitePoset& poset() const { return poset_; }

 private:
  friend SubsetLattice nonempty_subsets_poset(std::size_t, std::size_t);
  std::size_t ground_ = 0;
  std::vector<Mask> masks_;
  std::vector<int> max_;
  std::map<Mask, std::size_t> index_;
  FinitePoset poset_;
};

inline constexpr std::size_t kDefaultSubsetBound = 8;

/// P'(I) for |I| = ground_size. Throws when ground_size is 0 or above `bound`.
SubsetLattice nonempty_subsets_poset(std::size_t ground_size,
                                     std::size_t bound = kDefaultSubsetBound);

int mask_max(Mask m);
std::string mask_to_string(Mask m);

/// Nerve of a poset: k-simplices are weakly ascending chains x_0 <= ... <= x_k.
SimplicialSet nerve(const FinitePoset& p, int top_dim);

/// Looks up simplices of a nerve (or any complex whose simplices are determined
/// by their vertex sequences) by vertex sequence.
class ChainIndex {
 public:
  explicit ChainIndex(const SemiSimplicialComplex& x);
  Index find(const std::vector<Index>& vertices) const;

 private:
  std::vector<std::map<std::vector<Index>, Index>> by_vertices_;
};

/// A barycentric subdivision together with the poset it is the nerve of.
/// Vertex v of `complex` is poset element v; max_label[v] is the maximal
/// vertex of the corresponding face.
struct Subdivision {
  std::shared_ptr<const SimplicialSet> complex;
  FinitePoset poset;
  std::vector<int> max_label;
  std::vector<Mask> masks;  // vertex masks (sd of a simplex only)

  /// Whether the edge (A <= B) has max A == max B.
  bool is_max_localizing(Index edge) const;
};

/// sd(Delta^n), the nerve of P'([n]); top_dim defaults to n.
Subdivision sd_simplex(int n, int top_dim = -1);

/// Nerve of the face poset of a non-singular complex. Throws, naming the
/// simplex, when some simplex has a repeated vertex or shares its vertex set
/// with another simplex.
Subdivision sd_nonsingular(const SemiSimplicialComplex& x, int top_dim = -1);
Subdivision sd_nonsingular(const SimplicialSet& x, int top_dim = -1);

/// Max-localizing test on a pair of subsets; throws unless a is contained in b.
bool is_max_localizing(Mask a, Mask b);

/// max : sd(Delta^n) -> Delta^n (both truncated at n).
SimplicialMap max_projection(int n);

/// The right adjoint i |-> [0, i] : Delta^n -> sd(Delta^n).
SimplicialMap max_adjoint(int n);

/// sd(Delta^m) -> sd(Delta^n) induced by an order-preserving injection
/// a : [m] -> [n] (A |-> a(A)).
SimplicialMap induced_subdivision_map(const std::vector<int>& injection, int n);

void write_poset(std::ostream& os, const FinitePoset& p);
FinitePoset parse_poset(std::istream& is);

}  // namespace sskit
