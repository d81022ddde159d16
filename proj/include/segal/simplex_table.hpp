#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "segal/simplicial_set.hpp"

namespace segal {

struct IntVectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

/// All simplices (degenerate included) of a finite simplicial set up to a
/// dimension bound, with integer face/degeneracy tables and a lookup from
/// boundaries to the simplices having that boundary.
class SimplexTable {
 public:
  SimplexTable(const SimplicialSet& x, int max_dim);

  int max_dim() const { return max_dim_; }
  int size(int n) const;
  const std::vector<SimplexRef>& simplices(int n) const { return levels_.at(static_cast<std::size_t>(n)).simplices; }
  const SimplexRef& simplex(int n, int idx) const { return simplices(n)[static_cast<std::size_t>(idx)]; }
  /// -1 if the simplex is above the bound.
  int index_of(const SimplexRef& x) const;

  /// Index of d_i of simplex idx of level n (n >= 1).
  int face(int n, int idx, int i) const { return levels_[static_cast<std::size_t>(n)].faces[static_cast<std::size_t>(idx * (n + 1) + i)]; }
  /// Index of s_j of simplex idx of level n; requires n < max_dim.
  int degeneracy(int n, int idx, int j) const {
    return levels_[static_cast<std::size_t>(n)].degens[static_cast<std::size_t>(idx * (n + 1) + j)];
  }
  /// Index of the degenerate simplex mask^* (cell), where cell is at index cell_idx of level cell dim.
  int degenerate(int cell_dim, int cell_idx, DegeneracyMask mask) const;

  /// Simplices of level n >= 1 with the given face indices (d_0..d_n).
  const std::vector<int>& with_boundary(int n, const std::vector<int>& boundary) const;

  const SimplicialSet& complex() const { return *x_; }

 private:
  struct Level {
    std::vector<SimplexRef> simplices;
    std::unordered_map<SimplexRef, int, SimplexRefHash> index;
    std::vector<int> faces;
    std::vector<int> degens;
    std::unordered_map<std::vector<int>, std::vector<int>, IntVectorHash> by_boundary;
  };
  const SimplicialSet* x_;
  int max_dim_;
  std::vector<Level> levels_;
};

}  // namespace segal
