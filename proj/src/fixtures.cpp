#include "sskit/fixtures.hpp"

#include "sskit/error.hpp"

namespace sskit {

const std::vector<CategoryFixture>& category_fixtures() {
  static const std::vector<CategoryFixture> fixtures{
      {"point", "cat\nobj 0\n", true},
      {"arrow", "cat\nobj 0\nobj 1\narr f 0 1\n", false},
      {"chain3", "cat\nobj 0\nobj 1\nobj 2\narr f 0 1\narr g 1 2\n", false},
      {"span", "cat\nobj 0\nobj 1\nobj 2\narr f 0 1\narr g 0 2\n", false},
      {"parallel", "cat\nobj 0\nobj 1\narr f 0 1\narr g 0 1\n", false},
      {"square",
       "cat\nobj a\nobj b\nobj c\nobj d\narr f a b\narr g b d\narr h a c\narr k c d\nrel g.f = k.h\n", false},
      {"idem", "cat\nobj 0\narr e 0 0\nrel e.e = e\n", false},
      {"iso2", "cat\nobj 0\nobj 1\narr f 0 1\narr g 1 0\nrel g.f = id_0\nrel f.g = id_1\n", true},
      {"z2", "cat\nobj 0\narr g 0 0\nrel g.g = id_0\n", true},
      {"z3", "cat\nobj 0\narr g 0 0\nrel g.g.g = id_0\n", true},
      {"z2_iso",
       "cat\nobj 0\nobj 1\narr e 0 0\narr f 0 1\narr g 1 0\nrel e.e = id_0\nrel g.f = id_0\nrel f.g = id_1\n",
       true},
  };
  return fixtures;
}

const CategoryFixture& category_fixture(const std::string& name) {
  for (const auto& f : category_fixtures())
    if (f.name == name) return f;
  throw Error("unknown fixture '" + name + "'");
}

PresentedCategory fixture_category(const std::string& name) {
  return materialize(parse_presentation_text(category_fixture(name).text));
}

namespace {

Functor functor_by_names(const FiniteCategory& c, const std::vector<std::pair<std::string, std::string>>& objects,
                         const std::vector<std::pair<std::string, std::string>>& arrows) {
  Functor t;
  t.objects.assign(c.object_count(), -1);
  t.arrows.assign(c.arrow_count(), -1);
  for (const auto& [a, b] : objects) t.objects[c.find_object(a)] = c.find_object(b);
  for (std::size_t x = 0; x < c.object_count(); ++x) t.arrows[c.identity(static_cast<int>(x))] = c.identity(t.objects[x]);
  for (const auto& [a, b] : arrows) t.arrows[c.find_arrow(a)] = c.find_arrow(b);
  if (!is_functor(c, c, t)) throw Error("fixture endofunctor is not a functor");
  return t;
}

}  // namespace

std::vector<StabFixture> stab_fixtures() {
  std::vector<StabFixture> out;

  FiniteCategory chain = linear_order_category(3);
  out.push_back({"identity", chain, {chain.find_arrow("0<1")}, identity_functor(chain)});

  FiniteCategory two = poset_category(FinitePoset::from_covers(4, {{0, 1}, {2, 3}}), {"0", "1", "0'", "1'"});
  Functor shift = functor_by_names(two, {{"0", "0'"}, {"1", "1'"}, {"0'", "0'"}, {"1'", "1'"}},
                                   {{"0<1", "0'<1'"}, {"0'<1'", "0'<1'"}});
  out.push_back({"shift", two, {two.find_arrow("0'<1'")}, shift});

  FiniteCategory free = materialize(parse_presentation_text("cat\nobj 0\nobj 1\nobj 2\narr a 0 1\narr b 1 2\n")).category;
  Functor collapse = functor_by_names(free, {{"0", "0"}, {"1", "1"}, {"2", "1"}},
                                      {{"a", "a"}, {"b", "id_1"}, {"b.a", "a"}});
  out.push_back({"collapse", free, {}, collapse});
  return out;
}

}  // namespace sskit
