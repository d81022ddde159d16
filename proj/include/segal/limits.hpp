#pragma once

#include <memory>
#include <optional>

#include "segal/simplicial_set.hpp"

namespace segal {

struct ProductIndex;

/// X x Y with its projections. Nondegenerate n-cells are pairs (s*a, t*b)
/// of simplices with disjoint degeneracy masks.
struct Product {
  SSetPtr object;
  SimplicialMap first;
  SimplicialMap second;
  std::shared_ptr<const ProductIndex> index;

  /// Normal form of the pair (x, y) of equal dimension.
  SimplexRef pair(const SimplexRef& x, const SimplexRef& y) const;
};

/// Cells above max_dim are dropped when given.
Product product(const SSetPtr& x, const SSetPtr& y, std::optional<int> max_dim = {});

/// The map W -> X x Y induced by h : W -> X and k : W -> Y.
SimplicialMap product_lift(const Product& p, const SimplicialMap& h, const SimplicialMap& k);

/// f x g between products.
SimplicialMap product_map(const Product& source, const Product& target, const SimplicialMap& f, const SimplicialMap& g);

/// X x_Z Y for f : X -> Z, g : Y -> Z, as a subcomplex of X x Y.
struct FiberProduct {
  SSetPtr object;
  SimplicialMap first;
  SimplicialMap second;
  Product ambient;
  Subcomplex sub;
};

/// Throws std::invalid_argument when f and g have different codomains.
FiberProduct fiber_product(const SimplicialMap& f, const SimplicialMap& g);

/// The map W -> X x_Z Y induced by h, k with f h = g k; throws otherwise.
SimplicialMap fiber_product_lift(const FiberProduct& p, const SimplicialMap& h, const SimplicialMap& k);

}  // namespace segal
