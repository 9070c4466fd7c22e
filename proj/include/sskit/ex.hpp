#pragma once

// Ex and Ex_eq at bounded level: maps sd(Delta^k) -> X recorded by their
// values on the strict chains of P'([k]).

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sskit/sset.hpp"
#include "sskit/subdivision.hpp"

namespace sskit {

inline constexpr int kDefaultExBound = 3;
inline constexpr std::size_t kDefaultExBudget = 1'000'000;

/// A simplicial set with a distinguished set of edges. Degenerate edges are
/// always marked.
class MarkedEdgeSet {
 public:
  MarkedEdgeSet(std::shared_ptr<const SimplicialSet> base, const std::vector<Index>& edges);

  static MarkedEdgeSet degenerate_only(std::shared_ptr<const SimplicialSet> base);
  static MarkedEdgeSet all_edges(std::shared_ptr<const SimplicialSet> base);

  const std::shared_ptr<const SimplicialSet>& base() const { return base_; }
  bool marked(Index edge) const { return marked_[edge] != 0; }
  std::vector<Index> edges() const;

 private:
  std::shared_ptr<const SimplicialSet> base_;
  std::vector<char> marked_;
};

/// The strict chains of P'([k]) in enumeration order: by the position of the
/// top element in the (cardinality, lex) linear extension, then dimension,
/// then lexicographically.
class ExShape {
 public:
  explicit ExShape(int k);

  int level() const { return k_; }
  std::size_t size() const { return chains_.size(); }
  const std::vector<Mask>& chain(std::size_t c) const { return chains_[c]; }
  int dim(std::size_t c) const { return static_cast<int>(chains_[c].size()) - 1; }
  std::size_t index_of(const std::vector<Mask>& strict_chain) const { return index_.at(strict_chain); }
  /// Chain index of the vertex {A}.
  std::size_t vertex_chain(Mask a) const { return index_of({a}); }
  const SubsetLattice& lattice() const { return lattice_; }

 private:
  int k_;
  SubsetLattice lattice_;
  std::vector<std::vector<Mask>> chains_;
  std::map<std::vector<Mask>, std::size_t> index_;
};

/// A k-simplex of Ex(X): images[c] is the image of strict chain c.
struct ExSimplex {
  std::vector<Index> images;

  friend bool operator==(const ExSimplex&, const ExSimplex&) = default;
  friend auto operator<=>(const ExSimplex&, const ExSimplex&) = default;
};

/// All maps sd(Delta^k) -> X (or those inverting max-localizing edges).
struct ExLevel {
  int k = 0;
  std::shared_ptr<const ExShape> shape;
  std::vector<ExSimplex> simplices;

  /// Position of a simplex in the list, or -1.
  long find(const ExSimplex& s) const;
};

/// Image of a weak chain (consecutive repeats allowed) under an Ex simplex.
Index evaluate_chain(const SimplicialSet& x, const ExShape& shape, const ExSimplex& s,
                     const std::vector<Mask>& weak_chain);

/// The vertex assignment A |-> image of {A}, indexed like shape.lattice().
std::vector<Index> vertex_assignment(const ExShape& shape, const ExSimplex& s);

/// Hom(sd(Delta^k), X). Requires k <= bound and X.top_dim() >= k.
ExLevel ex_level(const SimplicialSet& x, int k, std::size_t budget = kDefaultExBudget,
                 int bound = kDefaultExBound);

/// The members of ex_level(X, k) sending every max-localizing edge to a
/// marked edge.
ExLevel ex_eq_level(const MarkedEdgeSet& equiv, int k, std::size_t budget = kDefaultExBudget,
                    int bound = kDefaultExBound);

/// sigma |-> sigma o max for every k-simplex sigma of X (indexed by sigma).
std::vector<ExSimplex> m_map(const SimplicialSet& x, int k, int bound = kDefaultExBound);

/// Face d_i : Ex_k -> Ex_{k-1} and degeneracy s_i : Ex_k -> Ex_{k+1}.
ExSimplex ex_face(const SimplicialSet& x, const ExShape& from, const ExShape& to, const ExSimplex& s,
                  int i);
ExSimplex ex_degen(const SimplicialSet& x, const ExShape& from, const ExShape& to,
                   const ExSimplex& s, int i);

/// The full map data sd(Delta^k) -> X (sd truncated at X.top_dim()).
SimplicialMap ex_to_map(std::shared_ptr<const SimplicialSet> x, const ExShape& shape,
                        const ExSimplex& s);

/// Levels 0..max_level of Ex(X), or of Ex_eq(X) when equiv is given.
struct ExTruncation {
  std::shared_ptr<const SimplicialSet> base;
  int max_level = 0;
  std::vector<ExLevel> levels;
};

ExTruncation ex_truncation(std::shared_ptr<const SimplicialSet> x, int max_level,
                           const MarkedEdgeSet* equiv = nullptr,
                           std::size_t budget = kDefaultExBudget);

/// Faces and degeneracies of stored simplices that are missing from the
/// stored lists. Degeneracies are checked where the next level is stored and
/// X is truncated high enough.
std::vector<std::string> closure_violations(const ExTruncation& ex);

}  // namespace sskit
