#pragma once

// Horn enumeration and filler search at bounded dimension.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sskit/sset.hpp"

namespace sskit {

inline constexpr std::size_t kDefaultHornBudget = 1'000'000;

/// A map Lambda^n_j -> X: faces[i] is the image of d_i Delta^n for i != j
/// (faces[j] is unused and left at 0).
struct HornMap {
  int n = 0;
  int j = 0;
  std::vector<Index> faces;

  std::string describe() const;
};

struct HornEnumeration {
  std::vector<HornMap> horns;
  bool incomplete = false;
};

/// Every horn map Lambda^n_j -> X, stopping after `budget` maps.
HornEnumeration enumerate_horns(const SemiSimplicialComplex& x, int n, int j,
                                std::size_t budget = kDefaultHornBudget);

/// All n-simplices of X restricting to h, in stored order.
std::vector<Index> fillers(const SemiSimplicialComplex& x, const HornMap& h);

/// The first filler in stored order.
std::optional<Index> find_filler(const SemiSimplicialComplex& x, const HornMap& h);

struct HornResult {
  int n = 0;
  int j = 0;
  std::size_t total = 0;
  std::size_t filled = 0;
  std::size_t unique = 0;  // horns with exactly one filler
  bool incomplete = false;
  std::vector<HornMap> witnesses;  // unfillable horns, first ones found
};

struct KanReport {
  int max_n = 0;
  std::vector<HornResult> results;  // ordered by (n, j)

  bool passed() const;
  bool unique_fillers() const;
  const HornResult* find(int n, int j) const;
};

struct KanOptions {
  std::size_t budget = kDefaultHornBudget;
  std::size_t witnesses = 5;
};

/// All 0 < j < n, 2 <= n <= max_n.
KanReport check_inner_kan(const SemiSimplicialComplex& x, int max_n, const KanOptions& opt = {});

/// All 0 <= j <= n, 1 <= n <= max_n.
KanReport check_kan(const SemiSimplicialComplex& x, int max_n, const KanOptions& opt = {});

/// Whether some 2-simplex has all three faces equal to e.
bool is_idempotent_edge(const SemiSimplicialComplex& x, Index e);

enum class EdgeVerdict { certified, refuted };

struct EquivalenceReport {
  EdgeVerdict verdict = EdgeVerdict::certified;
  int bound = 0;  // horns checked for 2 <= n <= bound
  std::optional<HornMap> witness;
  bool incomplete = false;

  std::string describe() const;
};

/// Every Lambda^n_n horn with last edge e and every Lambda^n_0 horn with
/// first edge e fills, for 2 <= n <= max_n.
EquivalenceReport is_equivalence_edge_bounded(const SemiSimplicialComplex& x, Index e, int max_n,
                                              std::size_t budget = kDefaultHornBudget);

}  // namespace sskit
