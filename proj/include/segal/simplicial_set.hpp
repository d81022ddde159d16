#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segal/monotone.hpp"

namespace segal {

/// Identifier of a nondegenerate cell: its dimension and position in the
/// per-dimension cell list.
struct CellId {
  int dim = 0;
  int index = 0;
  auto operator<=>(const CellId&) const = default;
};

/// A (possibly degenerate) simplex in Eilenberg-Zilber normal form: the
/// degeneracy s applied to the nondegenerate cell `cell`.
struct SimplexRef {
  DegeneracyMask degeneracy = 0;
  CellId cell;

  int dim() const;
  bool is_nondegenerate() const { return degeneracy == 0; }
  /// Strictly decreasing degeneracy word.
  std::vector<int> word() const { return mask_to_word(degeneracy); }

  static SimplexRef of(CellId c) { return SimplexRef{0, c}; }
  /// Normalises an arbitrary word (leftmost applied last).
  static SimplexRef from_word(std::span<const int> word, CellId c);

  auto operator<=>(const SimplexRef&) const = default;
};

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& r) const noexcept {
    std::uint64_t h = r.degeneracy;
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r.cell.dim);
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r.cell.index);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Truncation metadata carried by finite presentations of infinite objects.
struct Truncation {
  int bound = 0;
  bool exact = true;
  bool operator==(const Truncation&) const = default;
};

/// A finite simplicial set presented by its nondegenerate cells and their
/// faces. Degenerate simplices are never stored.
class SimplicialSet {
 public:
  SimplicialSet() = default;

  /// Appends a cell of dimension `dim` with faces d_0..d_dim; returns its index.
  int add_cell(int dim, std::vector<SimplexRef> faces, std::string label = {});

  /// -1 for the empty simplicial set.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  int cell_count(int dim) const;
  int total_cells() const;
  std::vector<int> cell_counts() const;
  bool empty() const { return cells_.empty(); }
  bool contains(CellId c) const;

  const std::vector<SimplexRef>& faces(CellId c) const;
  const std::string& label(CellId c) const;
  bool has_labels() const;
  void set_label(CellId c, std::string label);

  /// d_i and s_j on arbitrary simplices, returned in normal form.
  SimplexRef face(const SimplexRef& x, int i) const;
  SimplexRef degeneracy(const SimplexRef& x, int j) const;
  /// theta^* x for theta : [m] -> [x.dim()].
  SimplexRef apply(const Monotone& theta, const SimplexRef& x) const;
  /// The edge of x from vertex a to vertex b (a <= b).
  SimplexRef edge(const SimplexRef& x, int a, int b) const { return apply(Monotone::edge(x.dim(), a, b), x); }
  SimplexRef vertex(const SimplexRef& x, int a) const;

  /// Checks face dimensions, dangling references and all simplicial
  /// identities d_i d_j = d_{j-1} d_i (i < j). Throws std::invalid_argument.
  void validate() const;

  std::optional<Truncation> truncation;
  /// Set when every map dDelta^n -> X with n > value extends uniquely to
  /// Delta^n, e.g. 2 for nerves of categories. Used to certify bounded
  /// lifting checks.
  std::optional<int> coskeletal;

  bool operator==(const SimplicialSet& o) const;

 private:
  struct Cell {
    std::vector<SimplexRef> faces;
    std::string label;
  };
  std::vector<std::vector<Cell>> cells_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

inline SSetPtr share(SimplicialSet s) { return std::make_shared<const SimplicialSet>(std::move(s)); }

/// A simplicial map given by the images of the nondegenerate source cells.
class SimplicialMap {
 public:
  SimplicialMap() = default;
  SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<SimplexRef>> images);

  static SimplicialMap identity(SSetPtr x);

  const SSetPtr& source() const { return source_; }
  const SSetPtr& target() const { return target_; }
  const SimplexRef& image(CellId c) const;
  const std::vector<std::vector<SimplexRef>>& images() const { return images_; }

  SimplexRef operator()(const SimplexRef& x) const;

  /// Checks dimensions and commutation with every face map.
  void validate() const;
  bool is_valid() const;

  /// Equality of assignments (source and target compared structurally).
  bool operator==(const SimplicialMap& o) const;

 private:
  SSetPtr source_;
  SSetPtr target_;
  std::vector<std::vector<SimplexRef>> images_;
};

/// g o f.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

// Constructors of the basic shapes. Labels are vertex strings such as "012".

SimplicialSet standard(int n);
SimplicialSet boundary(int n);
SimplicialSet horn(int n, int k);
SimplicialSet empty_set();
SimplicialSet point();

/// The standard simplex with a chosen subset of its nondegenerate faces,
/// given as vertex bitsets; the subset must be closed under faces.
SimplicialSet simplex_subcomplex(int n, const std::function<bool(std::uint32_t)>& keep);

/// Inclusion of the face-closed subcomplex back into Delta^n.
SimplicialMap simplex_subcomplex_inclusion(SSetPtr sub, int n);

/// The subcomplex on the cells satisfying `keep` (closed under faces).
struct Subcomplex {
  SSetPtr object;
  SimplicialMap inclusion;
  /// For each cell of the ambient complex, its index in the subcomplex or -1.
  std::vector<std::vector<int>> index;
};
Subcomplex subcomplex(const SSetPtr& x, const std::function<bool(CellId)>& keep);

/// Cells up to dimension n, with the inclusion.
Subcomplex skeleton(const SSetPtr& x, int n);

/// The simplicial map Delta^m -> Delta^n induced by a monotone map.
SimplicialMap simplex_map(SSetPtr source, SSetPtr target, const Monotone& theta);

/// Map out of Delta^n picking the simplex x of the target.
SimplicialMap classifying_map(SSetPtr simplex_n, SSetPtr target, const SimplexRef& x);

/// The unique map to the point.
SimplicialMap to_point(SSetPtr x, SSetPtr pt);

/// Monomorphism / isomorphism tests on nondegenerate data.
bool is_mono(const SimplicialMap& f);
bool is_iso(const SimplicialMap& f);

}  // namespace segal
