#pragma once

#include <string>
#include <vector>

#include "segal/bisimplicial.hpp"
#include "segal/category.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

struct NamedCategory {
  std::string name;
  FiniteCategory category;
};
struct NamedComplex {
  std::string name;
  SSetPtr object;
};
struct NamedBisimplicial {
  std::string name;
  BSetPtr object;
};

/// Hand-picked categories: linear orders, small posets, groupoids, monoids
/// and mixed shapes.
std::vector<NamedCategory> named_categories();

/// Three objects a, b, c with an isomorphism a <-> b and an arrow b -> c.
FiniteCategory iso_and_arrow();

struct CategoryBounds {
  int max_objects = 3;
  int max_morphisms = 8;  // identities included
  int max_endomorphisms = 3;
};
/// Every category within the bounds, one per isomorphism class. Objects are
/// nonempty; connectedness is not required.
std::vector<FiniteCategory> exhaustive_categories(const CategoryBounds& bounds = {});

/// Finite simplicial sets of dimension <= 3.
std::vector<NamedComplex> simplicial_corpus();

/// Finite bisimplicial sets, including the generators and discrete nerves.
std::vector<NamedBisimplicial> bisimplicial_corpus();

}  // namespace segal
