#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "segal/category.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// The nerve of a finite category truncated at level N. Nondegenerate
/// n-cells are chains of n composable non-identity morphisms f_1..f_n with
/// f_1 leaving vertex 0. The truncation is flagged exact when no
/// nondegenerate chain of length N+1 exists.
struct Nerve {
  std::shared_ptr<const FiniteCategory> category;
  SSetPtr object;
  /// Per dimension and cell: the chain (dimension 0: the object).
  std::vector<std::vector<std::vector<int>>> chains;

  /// The simplex of a chain of composable morphisms (identities allowed).
  SimplexRef chain_simplex(std::span<const int> chain) const;
  SimplexRef vertex(int obj) const { return SimplexRef::of({0, obj}); }
  /// Chain of an arbitrary simplex, identities filled in; n = 0 yields {}.
  std::vector<int> chain_of(const SimplexRef& x) const;
  /// First vertex of a simplex.
  int first_object(const SimplexRef& x) const;

  std::vector<std::map<std::vector<int>, int>> lookup;
};

Nerve nerve(const FiniteCategory& c, int max_dim);

/// The simplicial map of nerves induced by a functor.
SimplicialMap nerve_map(const Nerve& nc, const Nerve& nd, const FunctorData& f);

GroupoidPresentation fundamental_groupoid_presentation(const SimplicialSet& k);

}  // namespace segal
