#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "segal/simplicial_set.hpp"

namespace segal {

/// Graded cells with labelled face links; the common shape of simplicial
/// and bisimplicial presentations as seen by the isomorphism search.
struct CellGraph {
  struct Link {
    int op = 0;
    std::uint64_t tag = 0;  // packed degeneracy data of the face
    int target = 0;
  };
  std::vector<std::uint64_t> grade;
  std::vector<std::vector<Link>> faces;
};

/// A grade- and face-preserving bijection a -> b, or nothing.
std::optional<std::vector<int>> find_cell_isomorphism(const CellGraph& a, const CellGraph& b);

CellGraph cell_graph(const SimplicialSet& x);

/// An isomorphism X -> Y of simplicial sets, if one exists.
std::optional<SimplicialMap> find_isomorphism(const SSetPtr& x, const SSetPtr& y);
bool isomorphic(const SimplicialSet& x, const SimplicialSet& y);

}  // namespace segal
