#pragma once

// Finite (semi)simplicial sets stored explicitly, dimension by dimension,
// with dense face and degeneracy tables.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sskit {

using Index = std::uint32_t;

struct SimplexId {
  int dim = 0;
  Index index = 0;

  friend bool operator==(const SimplexId&, const SimplexId&) = default;
};

/// A single violated identity found by validate().
struct Violation {
  std::string identity;  // e.g. "d_i d_j = d_{j-1} d_i"
  int dim = 0;           // dimension of the witnessing simplex
  Index index = 0;       // the witnessing simplex
  int i = -1;
  int j = -1;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Finite semisimplicial set truncated at top_dim.
///
/// face(n, i, x) is d_i of the n-simplex x. The tables are dense: for every
/// n >= 1 there are exactly n + 1 faces per simplex. Construction checks that
/// every entry is in range; the simplicial identities are checked separately
/// by validate() so that corrupted inputs can be diagnosed.
class SemiSimplicialComplex {
 public:
  SemiSimplicialComplex() = default;

  /// faces[n] holds counts[n] * (n + 1) entries, simplex-major; faces[0] is
  /// ignored. Throws sskit::Error on a size mismatch or out-of-range entry.
  SemiSimplicialComplex(std::vector<std::size_t> counts,
                        std::vector<std::vector<Index>> faces);

  int top_dim() const { return static_cast<int>(counts_.size()) - 1; }
  std::size_t count(int n) const;
  const std::vector<std::size_t>& counts() const { return counts_; }

  Index face(int n, int i, Index x) const {
    return faces_[n][static_cast<std::size_t>(x) * (n + 1) + i];
  }
  std::span<const Index> faces_of(int n, Index x) const {
    return {faces_[n].data() + static_cast<std::size_t>(x) * (n + 1),
            static_cast<std::size_t>(n + 1)};
  }
  const std::vector<Index>& face_table(int n) const { return faces_[n]; }

  /// The k-th vertex (0 <= k <= n) of an n-simplex.
  Index vertex(int n, Index x, int k) const;
  std::vector<Index> vertices(int n, Index x) const;

  /// The face spanned by the given strictly increasing vertex positions.
  Index restrict_to(int n, Index x, std::span<const int> positions) const;

  /// Drops every dimension above `top`.
  SemiSimplicialComplex truncated(int top) const;

 protected:
  std::vector<std::size_t> counts_;
  std::vector<std::vector<Index>> faces_;
};

/// Finite simplicial set truncated at top_dim. Degeneracies s_i are stored
/// for every dimension below top_dim; degeneracy flags are derived once at
/// construction (a simplex is degenerate iff it is in the image of some s_i).
class SimplicialSet : public SemiSimplicialComplex {
 public:
  SimplicialSet() = default;

  /// degens[n] holds counts[n] * (n + 1) entries for 0 <= n < top_dim.
  SimplicialSet(SemiSimplicialComplex faces, std::vector<std::vector<Index>> degens);

  Index degen(int n, int i, Index x) const {
    return degens_[n][static_cast<std::size_t>(x) * (n + 1) + i];
  }
  const std::vector<Index>& degen_table(int n) const { return degens_[n]; }

  bool is_degenerate(int n, Index x) const { return degenerate_[n][x] != 0; }
  std::size_t nondegenerate_count(int n) const;
  std::vector<std::size_t> nondegenerate_counts() const;
  std::vector<Index> nondegenerate(int n) const;

  /// theta^* x for a weakly monotone theta : [m] -> [n] given as its values.
  /// Faces first, then degeneracies; requires m <= top_dim.
  Index apply(int n, Index x, std::span<const int> theta) const;

  /// Iterated degeneracy s_0 ... s_0 of a vertex up to dimension n.
  Index totally_degenerate(Index vertex, int n) const;

  const SemiSimplicialComplex& underlying() const { return *this; }

 private:
  std::vector<std::vector<Index>> degens_;
  std::vector<std::vector<char>> degenerate_;
};

/// Dimension-preserving map between complexes, as per-dimension index tables.
struct SimplicialMap {
  std::shared_ptr<const SimplicialSet> source;
  std::shared_ptr<const SimplicialSet> target;
  std::vector<std::vector<Index>> images;  // images[n][x]

  Index operator()(int n, Index x) const { return images[n][x]; }
};

/// Exhaustive identity checks (semisimplicial identities, and for simplicial
/// sets all degeneracy identities and flag consistency within the truncation).
ValidationReport validate(const SemiSimplicialComplex& x);
ValidationReport validate(const SimplicialSet& x);

/// Checks that a map commutes with faces and degeneracies.
ValidationReport validate(const SimplicialMap& f);

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> x);

/// Nerve of the linear order [n] = {0 < ... < n}, truncated at n + margin.
SimplicialSet standard_simplex(int n, int margin = 1);

/// Same, for a linear order given by its size (errors on an empty order).
SimplicialSet standard_simplex_of_size(std::size_t size, int margin = 1);

/// The nondegenerate part of the boundary of Delta^n (top_dim n, no n-simplices).
SemiSimplicialComplex boundary(int n);

/// The horn Lambda^n_j: boundary(n) without the face opposite vertex j.
SemiSimplicialComplex horn(int n, int j);

}  // namespace sskit
