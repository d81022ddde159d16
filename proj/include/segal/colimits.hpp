#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "segal/simplicial_set.hpp"

namespace segal {

/// B modulo the simplicial equivalence relation generated by the given pairs
/// of equal-dimensional simplices. When max_dim is given, B is replaced by
/// its max_dim-skeleton and relations of higher dimension contribute only
/// their lower-dimensional consequences.
struct Quotient {
  SSetPtr object;
  /// From B (or its skeleton) onto the quotient.
  SimplicialMap projection;
  /// Per quotient cell, the B cell it was extracted from.
  std::vector<std::vector<CellId>> representative;
};

using Relation = std::pair<SimplexRef, SimplexRef>;

Quotient quotient(const SSetPtr& b, const std::vector<Relation>& relations, std::optional<int> max_dim = {});

struct Coproduct {
  SSetPtr object;
  std::vector<SimplicialMap> injections;
};
Coproduct disjoint_union(const std::vector<SSetPtr>& parts);

struct Pushout {
  SSetPtr object;
  SimplicialMap left;   // B -> P
  SimplicialMap right;  // C -> P
};
/// Pushout of B <- A -> C.
Pushout pushout(const SimplicialMap& f, const SimplicialMap& g, std::optional<int> max_dim = {});

struct Coequalizer {
  SSetPtr object;
  SimplicialMap projection;
};
Coequalizer coequalizer(const SimplicialMap& f, const SimplicialMap& g, std::optional<int> max_dim = {});

}  // namespace segal
