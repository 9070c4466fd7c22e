#pragma once

// Finite categories given by presentations or composition tables, with
// functor enumeration and localization.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sskit/sset.hpp"
#include "sskit/subdivision.hpp"

namespace sskit {

inline constexpr std::size_t kDefaultWordBound = 8;

/// A composable word: arrows[0] is applied first. The empty word is the
/// identity of `object`, which is otherwise the source of arrows[0].
struct Word {
  int object = 0;
  std::vector<int> arrows;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct Generator {
  std::string name;
  int src = 0;
  int dst = 0;
};

struct CategoryPresentation {
  std::vector<std::string> objects;
  std::vector<Generator> generators;
  std::vector<std::pair<Word, Word>> relations;

  int object_id(const std::string& name) const;
  int generator_id(const std::string& name) const;
  int add_object(const std::string& name);
  int add_generator(const std::string& name, int src, int dst);
  void add_relation(const std::string& lhs, const std::string& rhs);
};

/// Text syntax: "g.f" is g after f; "id_x" is the identity of x.
Word parse_word(const CategoryPresentation& p, const std::string& text);
std::string format_word(const CategoryPresentation& p, const Word& w);
int word_source(const CategoryPresentation& p, const Word& w);
int word_target(const CategoryPresentation& p, const Word& w);

/// A finite category given by its composition table.
class FiniteCategory {
 public:
  struct Arrow {
    int src = 0;
    int dst = 0;
    std::string name;
  };

  FiniteCategory() = default;

  /// compose[g][f] is g o f, or -1 when dst(f) != src(g). Throws unless the
  /// table is a category.
  FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows, std::vector<int> identities,
                 std::vector<std::vector<int>> compose);

  std::size_t object_count() const { return objects_.size(); }
  const std::string& object_name(int x) const { return objects_[x]; }
  int find_object(const std::string& name) const;

  std::size_t arrow_count() const { return arrows_.size(); }
  const Arrow& arrow(int f) const { return arrows_[f]; }
  int find_arrow(const std::string& name) const;
  int src(int f) const { return arrows_[f].src; }
  int dst(int f) const { return arrows_[f].dst; }

  int identity(int x) const { return identities_[x]; }
  bool is_identity(int f) const { return identities_[arrows_[f].src] == f; }

  /// g o f, or -1 when not composable.
  int compose(int g, int f) const { return compose_[g][f]; }
  const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }

  std::optional<int> inverse(int f) const { return inverse_[f] < 0 ? std::nullopt : std::optional<int>(inverse_[f]); }
  bool is_iso(int f) const { return inverse_[f] >= 0; }
  std::vector<int> isomorphisms() const;

  /// A generating set chosen greedily in arrow order, and for every other
  /// non-identity arrow h a factorization h = g o f through arrows that are
  /// reached earlier (listed in derivation order).
  const std::vector<int>& generators() const { return generators_; }
  struct Derivation {
    int arrow, g, f;
  };
  const std::vector<Derivation>& derivations() const { return derivations_; }

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identities_;
  std::vector<std::vector<int>> compose_;
  std::vector<std::vector<std::vector<int>>> hom_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  std::vector<Derivation> derivations_;
};

/// A materialized presentation: generator i is the arrow generator_arrow[i].
struct PresentedCategory {
  FiniteCategory category;
  std::vector<int> generator_arrow;

  int evaluate(const Word& w) const;
};

/// Closes the presentation under relations on words of length <= bound.
/// Throws "increase word bound" unless the closure is a category.
PresentedCategory materialize(const CategoryPresentation& p, std::size_t word_bound = kDefaultWordBound);

/// Presentation with every non-identity arrow as a generator and the full
/// composition table as relations.
CategoryPresentation presentation_of(const FiniteCategory& c);

FiniteCategory poset_category(const FinitePoset& p, const std::vector<std::string>& names = {});
FiniteCategory linear_order_category(std::size_t size);

/// P'([k]) as a category, with objects listed like nonempty_subsets_poset(k+1).
FiniteCategory subset_category(int k);

/// Nerve truncated at top_dim: n-simplices are composable n-chains, edge i is
/// arrow i.
SimplicialSet category_nerve(const FiniteCategory& c, int top_dim);
SimplicialSet nerve_of_presentation(const CategoryPresentation& p, int top_dim,
                                    std::size_t word_bound = kDefaultWordBound);

/// Edges of a nerve that are isomorphisms.
std::vector<Index> iso_edges(const FiniteCategory& c);

struct Functor {
  std::vector<int> objects;
  std::vector<int> arrows;

  friend bool operator==(const Functor&, const Functor&) = default;
  friend auto operator<=>(const Functor&, const Functor&) = default;
};

/// G o F.
Functor compose_functors(const Functor& g, const Functor& f);
Functor identity_functor(const FiniteCategory& c);
bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const Functor& f);

struct FunctorSearch {
  std::vector<int> must_invert;    // source arrows sent to isomorphisms
  std::vector<int> fixed_objects;  // -1 for free; empty for none fixed
  std::vector<int> fixed_arrows;   // -1 for free; empty for none fixed
  bool injective_on_arrows = false;
  std::size_t budget = 50'000'000;  // search nodes
};

/// Calls visit for every functor in lexicographic order of arrow images of
/// the generators; stops when visit returns false.
void for_each_functor(const FiniteCategory& c, const FiniteCategory& d, const FunctorSearch& search,
                      const std::function<bool(const Functor&)>& visit);
std::vector<Functor> functors(const FiniteCategory& c, const FiniteCategory& d, const FunctorSearch& search = {});

/// Components alpha_x : F x -> G x.
std::vector<std::vector<int>> natural_transformations(const FiniteCategory& c, const FiniteCategory& d,
                                                      const Functor& f, const Functor& g);

/// Partition of a list of functors C -> D into natural isomorphism classes;
/// the list must be closed under natural isomorphism.
std::vector<int> functor_iso_classes(const FiniteCategory& c, const FiniteCategory& d,
                                     const std::vector<Functor>& list);

std::optional<Functor> find_isomorphism(const FiniteCategory& c, const FiniteCategory& d,
                                        const FunctorSearch& constraints = {});

/// The homotopy category of a simplicial set that is inner-Kan up to
/// dimension 3 (or its truncation).
FiniteCategory homotopy_category(const SimplicialSet& x);

/// Adjoins an inverse "<s>^-1" for every named generator.
CategoryPresentation localize_category(const CategoryPresentation& p, const std::vector<std::string>& invert);

struct Localization {
  PresentedCategory category;
  Functor canonical;  // C -> C[S^-1]
};

Localization localize(const FiniteCategory& c, const std::vector<int>& invert,
                      std::size_t word_bound = kDefaultWordBound);

/// Whether restriction along C -> L is a bijection from functors L -> D to
/// functors C -> D inverting S.
bool check_localization_universal(const FiniteCategory& c, const std::vector<int>& s, const Localization& l,
                                  const FiniteCategory& d);

struct MaxLocalizationReport {
  bool ok = false;
  std::size_t left = 0;           // functors [n] -> D
  std::size_t right = 0;          // functors P'([n]) -> D inverting max-localizing arrows
  std::size_t left_classes = 0;   // natural isomorphism classes
  std::size_t right_classes = 0;
  std::string failure;
};

/// Precomposition with max : P'(I) -> I, from Fun(I, D) to the max-inverting
/// functors P'(I) -> D, is fully faithful and essentially surjective. Both
/// sides are enumerated independently. Requires |I| <= 3, |ob D| <= 3 and
/// at most 12 arrows.
MaxLocalizationReport verify_max_localization(std::size_t ground_size, const FiniteCategory& d);

/// max : P'([k]) -> [k] as a functor.
Functor max_functor(int k);

/// Every presentation with 1-2 objects and 0-2 generators, and for each
/// composable ordered pair of generators either no relation, a relation to a
/// parallel generator, or a relation to the identity; only those that close
/// within the word bound are kept.
std::vector<CategoryPresentation> small_category_grid();

struct StabilizationReport {
  bool ok = false;
  int stages = 0;
  std::size_t colimit_arrows = 0;
  std::size_t localized_colimit_arrows = 0;
  std::string failure;
};

/// Compares colim(C, T)[S^-1] with colim(C[S^-1], T') through the canonical
/// functors from C. Requires T(S) in S; throws when the colimit does not
/// stabilize within max_stages.
StabilizationReport verify_stab_commutes_with_localization(const FiniteCategory& c, const std::vector<int>& s,
                                                           const Functor& t, int max_stages = 8);

void write_presentation(std::ostream& os, const CategoryPresentation& p);
CategoryPresentation parse_presentation(std::istream& is);
CategoryPresentation parse_presentation_text(const std::string& text);
CategoryPresentation load_presentation(const std::string& path);

void write_category(std::ostream& os, const FiniteCategory& c);

}  // namespace sskit
