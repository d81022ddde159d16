#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "segal/bisimplicial.hpp"
#include "segal/category.hpp"
#include "segal/checkers.hpp"
#include "segal/nerve.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// The functor between thin categories induced by an object map; each
/// morphism goes to the unique morphism between the image objects.
FunctorData thin_functor(const FiniteCategory& c, const FiniteCategory& d, const std::vector<int>& objects);

/// B pi(theta) : B pi(Delta^m) -> B pi(Delta^n) for theta : [m] -> [n].
SimplicialMap chaotic_nerve_map(const Nerve& source, const Nerve& target, const Monotone& theta);

/// k_!(X) truncated at N: the colimit of B pi(Delta^n) over the nondegenerate
/// simplices of X and their faces.
struct KShriek {
  SSetPtr source;
  SSetPtr value;
  int max_dim = 0;
  /// No nondegenerate cell above max_dim was dropped (dim X <= 0).
  bool exact = false;
  /// X -> k_!(X); its source is the max_dim-skeleton of X when dim X > max_dim.
  SimplicialMap unit;
  /// Cocone leg B pi(Delta^n) -> k_!(X) for each nondegenerate n-cell of X.
  std::vector<std::vector<SimplicialMap>> legs;
  std::vector<std::vector<std::shared_ptr<const Nerve>>> pieces;
  /// Per cell of the value: the cell of X and the piece cell it comes from.
  std::vector<std::vector<std::pair<CellId, CellId>>> origin;
};
KShriek k_shriek(const SSetPtr& x, int max_dim);

/// k_!(f) between results computed at the same bound.
SimplicialMap k_shriek_map(const SimplicialMap& f, const KShriek& source, const KShriek& target);

/// k^!(X), levels 0..max_dim, with the counit k^!(X) -> X (restriction along
/// Delta^n in B pi(Delta^n)).
struct KUpper {
  SSetPtr value;
  int max_dim = 0;
  bool exact = false;
  SimplicialMap counit;
  /// Exact mode: the functors pi[n] -> C behind each element of level n.
  std::vector<std::vector<FunctorData>> functors;
  /// Truncated mode: the maps B pi(Delta^n) -> X behind each element, and
  /// the truncation of B pi(Delta^n) used.
  std::vector<std::vector<SimplicialMap>> maps;
  int piece_bound = 0;
  std::vector<std::vector<SimplexRef>> normal_form;
};

/// Exact mode: X = B(C); level n is Fun(pi[n], C). The nerve must contain
/// every simplex of dimension <= max_dim.
KUpper k_upper(const Nerve& x, int max_dim);

/// Truncated mode for a finite X of dimension D: level n is the set of maps
/// out of B pi(Delta^n) truncated at piece_bound, by default max(D + 2,
/// max_dim). This is a heuristic: a map on the truncation need not extend.
KUpper k_upper(const SSetPtr& x, int max_dim, std::optional<int> piece_bound = {});

/// k^!(q) for a functor q : C -> D between exact-mode results.
SimplicialMap k_upper_map(const FunctorData& q, const KUpper& kc, const KUpper& kd);
/// k^!(f) by postcomposition, between truncated-mode results with the same
/// piece bound.
SimplicialMap k_upper_map(const SimplicialMap& f, const KUpper& kx, const KUpper& ky);

/// t_!(X) = d(k_!(X)) with k_! applied to each vertical slice, truncated at N.
struct TShriek {
  SSetPtr value;
  int max_dim = 0;
  bool exact = false;
  /// The bisimplicial set with slices k_!(X_{m,*}), m, n <= N.
  BSetPtr sectionwise;
};
TShriek t_shriek(const BSetPtr& x, int max_dim);

/// t^!(Y) with horizontal levels <= max_h and vertical levels <= max_v.
/// Nerve mode: level (m, n) is Fun([m] x pi[n], C).
BSetPtr t_upper(const Nerve& y, int max_h, int max_v);
/// General mode: level (m, n) is the set of maps Delta^m x B pi(Delta^n) -> Y,
/// B pi(Delta^n) truncated at dim Y + 2 (same heuristic as k_upper).
BSetPtr t_upper(const SSetPtr& y, int max_h, int max_v);

/// Homotopy category of a quasi-category: vertices, and edges modulo the
/// relation generated by 2-simplices with a degenerate outer edge.
struct HomotopyCategory {
  FiniteCategory category;
  /// Morphism of each edge (index into SimplexTable(X, 2) level 1).
  std::vector<int> edge_class;
};
/// Throws std::invalid_argument when is_quasi_category(x, precheck_bound)
/// fails or composition is not well defined.
HomotopyCategory homotopy_category(const SSetPtr& x, int precheck_bound = 3);

/// J(X): simplices all of whose edges are invertible in ho(X).
Subcomplex core_J(const SSetPtr& x, int precheck_bound = 3);

/// The factorization k^!(X) -> J(X) of the counit, for X = B(C) in exact mode.
struct CounitComparison {
  KUpper k;
  Subcomplex core;
  SimplicialMap map;
};
CounitComparison counit_comparison(const Nerve& x, int max_dim);

/// For f : X -> Y, whether J(X) -> X x_Y J(Y) is an isomorphism.
struct JSquare {
  Subcomplex jx;
  Subcomplex jy;
  SimplicialMap restricted;  // J(X) -> J(Y)
  /// X x_Y J(Y), built as the preimage of J(Y) since J(Y) -> Y is mono.
  Subcomplex pullback;
  SimplicialMap to_jy;       // X x_Y J(Y) -> J(Y)
  SimplicialMap comparison;  // J(X) -> X x_Y J(Y)
  bool is_pullback = false;
};
JSquare j_square(const SimplicialMap& f, int precheck_bound = 3);

}  // namespace segal
