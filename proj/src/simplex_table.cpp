#include "segal/simplex_table.hpp"

#include <bit>
#include <stdexcept>

namespace segal {

namespace {
const std::vector<int> kNone;
}

SimplexTable::SimplexTable(const SimplicialSet& x, int max_dim) : x_(&x), max_dim_(max_dim) {
  if (max_dim < 0) throw std::out_of_range("simplex table needs max_dim >= 0");
  levels_.resize(static_cast<std::size_t>(max_dim + 1));
  for (int n = 0; n <= max_dim; ++n) {
    Level& lv = levels_[static_cast<std::size_t>(n)];
    for (int k = 0; k <= std::min(n, x.dimension()); ++k) {
      const auto masks = surjection_masks(n, k);
      for (int c = 0; c < x.cell_count(k); ++c)
        for (DegeneracyMask m : masks) {
          lv.index.emplace(SimplexRef{m, {k, c}}, static_cast<int>(lv.simplices.size()));
          lv.simplices.push_back(SimplexRef{m, {k, c}});
        }
    }
    if (n >= 1) {
      lv.faces.resize(lv.simplices.size() * static_cast<std::size_t>(n + 1));
      for (std::size_t s = 0; s < lv.simplices.size(); ++s) {
        std::vector<int> key(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) {
          const SimplexRef f = x.face(lv.simplices[s], i);
          const int fi = levels_[static_cast<std::size_t>(n - 1)].index.at(f);
          lv.faces[s * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i)] = fi;
          key[static_cast<std::size_t>(i)] = fi;
        }
        lv.by_boundary[key].push_back(static_cast<int>(s));
      }
    }
  }
  for (int n = 0; n < max_dim; ++n) {
    Level& lv = levels_[static_cast<std::size_t>(n)];
    lv.degens.resize(lv.simplices.size() * static_cast<std::size_t>(n + 1));
    for (std::size_t s = 0; s < lv.simplices.size(); ++s)
      for (int j = 0; j <= n; ++j)
        lv.degens[s * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(j)] =
            levels_[static_cast<std::size_t>(n + 1)].index.at(x.degeneracy(lv.simplices[s], j));
  }
}

int SimplexTable::size(int n) const {
  if (n < 0 || n > max_dim_) return 0;
  return static_cast<int>(levels_[static_cast<std::size_t>(n)].simplices.size());
}

int SimplexTable::index_of(const SimplexRef& x) const {
  const int n = x.dim();
  if (n > max_dim_) return -1;
  const auto& idx = levels_[static_cast<std::size_t>(n)].index;
  auto it = idx.find(x);
  return it == idx.end() ? -1 : it->second;
}

int SimplexTable::degenerate(int cell_dim, int cell_idx, DegeneracyMask mask) const {
  // Apply s_{i_1} first for the word s_{i_p}...s_{i_1}, i.e. ascending indices.
  int n = cell_dim;
  int idx = cell_idx;
  for (int j = 0; j < 32 && mask; ++j) {
    if (!((mask >> j) & 1u)) continue;
    mask &= ~(1u << j);
    if (n >= max_dim_) return -1;
    idx = degeneracy(n, idx, j);
    ++n;
  }
  return idx;
}

const std::vector<int>& SimplexTable::with_boundary(int n, const std::vector<int>& boundary) const {
  if (n < 1 || n > max_dim_) return kNone;
  const auto& m = levels_[static_cast<std::size_t>(n)].by_boundary;
  auto it = m.find(boundary);
  return it == m.end() ? kNone : it->second;
}

}  // namespace segal
