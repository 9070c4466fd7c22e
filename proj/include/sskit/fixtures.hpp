#pragma once

// Shipped fixture categories and endofunctor fixtures.

#include <string>
#include <vector>

#include "sskit/category.hpp"

namespace sskit {

struct CategoryFixture {
  std::string name;
  std::string text;  // presentation in the `cat` format
  bool groupoid = false;
};

const std::vector<CategoryFixture>& category_fixtures();
const CategoryFixture& category_fixture(const std::string& name);
PresentedCategory fixture_category(const std::string& name);

struct StabFixture {
  std::string name;
  FiniteCategory category;
  std::vector<int> s;
  Functor t;
};

std::vector<StabFixture> stab_fixtures();

}  // namespace sskit
