#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segal/simplicial_set.hpp"

namespace segal {

/// Dense integer matrix, row-major. All arithmetic is overflow-checked and
/// throws std::overflow_error instead of wrapping.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
  std::int64_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  std::int64_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

/// Nonzero invariant factors of the Smith normal form, each dividing the next.
std::vector<std::int64_t> smith_invariants(IntMatrix m);

/// A Z-basis of the kernel of m, as columns.
std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& m);

/// Whether m x = v has an integer solution.
bool in_integer_image(const IntMatrix& m, const std::vector<std::int64_t>& v);

/// Normalized boundary C_n -> C_{n-1} on nondegenerate cells (rows: (n-1)-cells).
IntMatrix boundary_matrix(const SimplicialSet& x, int n);

struct HomologyGroup {
  int rank = 0;
  std::vector<std::int64_t> torsion;
  bool operator==(const HomologyGroup&) const = default;
  std::string str() const;
};

/// Integral homology in degrees 0..dim X. Above a non-exact truncation bound
/// the top degree counts cycles with missing boundaries; callers compare only
/// below the bound.
std::vector<HomologyGroup> homology(const SimplicialSet& x);

/// Whether f induces isomorphisms H_k(X) -> H_k(Y) for all k < degree_bound,
/// decided on the mapping cone. Source and target must contain every simplex
/// of dimension <= degree_bound (throws std::invalid_argument otherwise).
bool homology_isomorphism_below(const SimplicialMap& f, int degree_bound);

}  // namespace segal
