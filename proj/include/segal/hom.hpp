#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "segal/simplex_table.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// Backtracking search for simplicial maps K -> X. Source cells are visited
/// by increasing dimension, then index; candidates for a cell of dimension
/// n >= 1 are the n-simplices of X with the already-determined boundary.
/// Assignments are indices into the target SimplexTable.
class MapSearch {
 public:
  using Assignment = std::vector<std::vector<int>>;

  MapSearch(const SimplicialSet& source, const SimplexTable& target);

  /// Forces the image of a source cell.
  void fix(CellId c, const SimplexRef& image);
  /// Extra per-cell predicate on candidate images.
  void set_filter(std::function<bool(CellId, int candidate)> filter) { filter_ = std::move(filter); }

  /// Calls `visit` for every map in deterministic order; stops when it returns false.
  void run(const std::function<bool(const Assignment&)>& visit);
  std::uint64_t count();
  std::optional<Assignment> first();

  SimplicialMap to_map(const Assignment& a, SSetPtr source, SSetPtr target) const;

 private:
  bool step(std::size_t pos, const std::function<bool(const Assignment&)>& visit);
  int face_image(const SimplexRef& face) const;
  bool cofaces_feasible(CellId c) const;

  const SimplicialSet& source_;
  const SimplexTable& target_;
  std::vector<CellId> order_;
  std::vector<std::vector<std::vector<CellId>>> cofaces_;
  Assignment assign_;
  std::vector<std::vector<int>> fixed_;
  std::function<bool(CellId, int)> filter_;
  bool stop_ = false;
};

/// All maps K -> X, in search order.
std::vector<SimplicialMap> enumerate_maps(const SSetPtr& k, const SSetPtr& x);
std::uint64_t count_maps(const SimplicialSet& k, const SimplicialSet& x);

/// A simplicial set given levelwise by finite sets with face and degeneracy
/// functions, up to level counts.size() - 1.
struct LevelData {
  std::vector<int> counts;
  std::function<int(int n, int i, int x)> face;
  std::function<int(int n, int j, int x)> degeneracy;
};

struct Leveled {
  SSetPtr object;
  /// Normal form of every element of every level.
  std::vector<std::vector<SimplexRef>> normal_form;
};

/// Assembles level data into nondegenerate-cell form. An element x of level
/// n is degenerate at j iff x = s_j d_j x.
Leveled from_levels(const LevelData& data);

/// The N-truncation of X^K: n-simplices are the maps K x Delta^n -> X.
struct MappingSpace {
  SSetPtr object;
  /// Per level, the maps K x Delta^n -> X in level order.
  std::vector<std::vector<SimplicialMap>> maps;
  std::vector<std::vector<SimplexRef>> normal_form;
};
MappingSpace mapping_space(const SSetPtr& k, const SSetPtr& x, int max_level);

}  // namespace segal
