#pragma once

#include <optional>
#include <vector>

#include "segal/bisimplicial.hpp"
#include "segal/category.hpp"
#include "segal/limits.hpp"
#include "segal/nerve.hpp"

namespace segal {

/// Disc(C) = B(C) x~ Delta^0, horizontally truncated at N.
BisimplicialSet disc_nerve(const FiniteCategory& c, int max_dim);

/// I = Disc(B pi(Delta^1)) truncated at N, with the map F(0) -> I at vertex 0.
struct GeneratorI {
  BSetPtr object;
  BSetPtr point;
  BisimplicialMap inclusion;
};
GeneratorI generator_I(int max_dim);

/// X_{n,*} -> X_{1,*} x_{X_{0,*}} ... x_{X_{0,*}} X_{1,*}.
/// Factor t (0-based, leftmost first) is the edge (n-1-t -> n-t); adjacent
/// factors are glued by d_1 of the left against d_0 of the right.
struct SegalMap {
  int n = 0;
  VerticalSlice source;
  VerticalSlice edges;
  VerticalSlice vertices;
  SSetPtr target;
  /// Projection of the target onto each factor.
  std::vector<SimplicialMap> factors;
  SimplicialMap comparison;
};
/// Throws std::invalid_argument for n < 1.
SegalMap segal_map(const BisimplicialSet& x, int n);

/// Checks, for every vertical level q <= max_q, that restricting each map
/// Delta^n x~ Delta^q -> X to the spine edges gives the same tuple as the
/// comparison map.
bool comparison_is_spine_restriction(const BSetPtr& x, const SegalMap& s, int max_q);

/// Cofibration: boundary of Delta^n x~ Delta^k inside it. With r:
/// (dDelta^k x~ Delta^n) u (Delta^k x~ Lambda^n_r) inside Delta^k x~ Delta^n.
struct ReedyGenerators {
  BisimplicialMap cofibration;
  std::optional<BisimplicialMap> trivial_cofibration;
};
/// Throws std::out_of_range for negative indices, or r outside [0, n] (n >= 1).
ReedyGenerators reedy_generators(int n, int k, std::optional<int> r = {});

}  // namespace segal
