#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "segal/simplex_table.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

/// A binondegenerate cell of bidegree (p, q).
struct BiCellId {
  int p = 0;
  int q = 0;
  int index = 0;
  auto operator<=>(const BiCellId&) const = default;
};

/// A bisimplex (s_h, s_v)^* c in bigraded normal form: independent
/// horizontal and vertical degeneracy masks over a binondegenerate cell.
struct BiRef {
  DegeneracyMask h = 0;
  DegeneracyMask v = 0;
  BiCellId cell;

  int hdim() const;
  int vdim() const;
  bool is_nondegenerate() const { return h == 0 && v == 0; }
  static BiRef of(BiCellId c) { return BiRef{0, 0, c}; }
  auto operator<=>(const BiRef&) const = default;
};

struct BiRefHash {
  std::size_t operator()(const BiRef& r) const noexcept {
    std::uint64_t x = (static_cast<std::uint64_t>(r.h) << 32) | r.v;
    x = x * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r.cell.p);
    x = x * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r.cell.q);
    x = x * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(r.cell.index);
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

/// A finite bisimplicial set: binondegenerate cells with horizontal faces
/// (bidegree (p-1, q)) and vertical faces (bidegree (p, q-1)).
class BisimplicialSet {
 public:
  int add_cell(int p, int q, std::vector<BiRef> hfaces, std::vector<BiRef> vfaces, std::string label = {});

  /// Largest p (resp. q) with a cell, -1 when empty.
  int hdim() const;
  int vdim() const;
  int cell_count(int p, int q) const;
  int total_cells() const;
  bool empty() const { return total_cells() == 0; }
  const std::vector<BiRef>& hfaces(BiCellId c) const;
  const std::vector<BiRef>& vfaces(BiCellId c) const;
  const std::string& label(BiCellId c) const;
  void set_label(BiCellId c, std::string label);
  /// Cells in horizontal-major bidegree order.
  std::vector<BiCellId> cells() const;

  BiRef hface(const BiRef& x, int i) const;
  BiRef vface(const BiRef& x, int i) const;
  BiRef hdegeneracy(const BiRef& x, int j) const;
  BiRef vdegeneracy(const BiRef& x, int j) const;
  /// (theta, phi)^* x for theta : [m'] -> [hdim x], phi : [n'] -> [vdim x].
  BiRef apply(const Monotone& theta, const Monotone& phi, const BiRef& x) const;

  /// Face data, dangling references, both families of simplicial identities
  /// and commutation of horizontal with vertical faces.
  void validate() const;

  std::optional<Truncation> htruncation;
  std::optional<Truncation> vtruncation;
  /// Every horizontal slice X_{*,q} is coskeletal at this value (see
  /// SimplicialSet::coskeletal).
  std::optional<int> hcoskeletal;

  bool operator==(const BisimplicialSet& o) const;

 private:
  struct Cell {
    std::vector<BiRef> hfaces;
    std::vector<BiRef> vfaces;
    std::string label;
  };
  std::vector<std::vector<std::vector<Cell>>> cells_;
  const Cell& cell(BiCellId c) const;
};

using BSetPtr = std::shared_ptr<const BisimplicialSet>;
inline BSetPtr share(BisimplicialSet s) { return std::make_shared<const BisimplicialSet>(std::move(s)); }

class BisimplicialMap {
 public:
  BisimplicialMap() = default;
  /// images[p][q][index]
  BisimplicialMap(BSetPtr source, BSetPtr target, std::vector<std::vector<std::vector<BiRef>>> images);

  static BisimplicialMap identity(BSetPtr x);
  const BSetPtr& source() const { return source_; }
  const BSetPtr& target() const { return target_; }
  const BiRef& image(BiCellId c) const;
  BiRef operator()(const BiRef& x) const;
  void validate() const;
  bool operator==(const BisimplicialMap& o) const;

 private:
  BSetPtr source_;
  BSetPtr target_;
  std::vector<std::vector<std::vector<BiRef>>> images_;
};

BisimplicialMap compose(const BisimplicialMap& g, const BisimplicialMap& f);
bool is_mono(const BisimplicialMap& f);
bool is_iso(const BisimplicialMap& f);

/// All bisimplices up to bidegree (max_p, max_q) with face tables and a
/// boundary lookup.
class BisimplexTable {
 public:
  BisimplexTable(const BisimplicialSet& x, int max_p, int max_q);
  int max_p() const { return max_p_; }
  int max_q() const { return max_q_; }
  int size(int m, int n) const;
  const BiRef& simplex(int m, int n, int idx) const;
  const std::vector<BiRef>& simplices(int m, int n) const;
  int index_of(const BiRef& x) const;
  /// Index of the degenerate (h, v)^* c where c sits at index cell_idx of bidegree (p, q).
  int degenerate(int p, int q, int cell_idx, DegeneracyMask h, DegeneracyMask v) const;
  /// Bisimplices of bidegree (m, n) with the given horizontal then vertical face indices.
  const std::vector<int>& with_boundary(int m, int n, const std::vector<int>& key) const;

 private:
  struct Level {
    std::vector<BiRef> simplices;
    std::unordered_map<BiRef, int, BiRefHash> index;
    std::vector<int> hdeg;  // (m+1) per simplex, into (m+1, n)
    std::vector<int> vdeg;  // (n+1) per simplex, into (m, n+1)
    std::unordered_map<std::vector<int>, std::vector<int>, IntVectorHash> by_boundary;
  };
  int max_p_, max_q_;
  std::vector<std::vector<Level>> levels_;
  Level& at(int m, int n) { return levels_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; }
  const Level& at(int m, int n) const { return levels_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; }
};

/// All bisimplicial maps K -> X. Cells of K are assigned in face post-order
/// from the top cells down, so output order follows that traversal.
std::vector<BisimplicialMap> enumerate_bimaps(const BSetPtr& k, const BSetPtr& x);
std::uint64_t count_bimaps(const BisimplicialSet& k, const BisimplicialSet& x);

/// Bisimplicial set from finite level sets X_{m,n}, m <= M, n <= N.
struct BiLevelData {
  std::vector<std::vector<int>> counts;  // counts[m][n]
  std::function<int(int m, int n, int i, int x)> hface;
  std::function<int(int m, int n, int i, int x)> vface;
  std::function<int(int m, int n, int j, int x)> hdegeneracy;
  std::function<int(int m, int n, int j, int x)> vdegeneracy;
};
struct BiLeveled {
  BSetPtr object;
  std::vector<std::vector<std::vector<BiRef>>> normal_form;
};
BiLeveled from_bilevels(const BiLevelData& data);

/// Isomorphism search.
std::optional<BisimplicialMap> find_isomorphism(const BSetPtr& x, const BSetPtr& y);
bool isomorphic(const BisimplicialSet& x, const BisimplicialSet& y);

// Constructions.

/// (K x~ L)_{m,n} = K_m x L_n.
BisimplicialSet box_product(const SimplicialSet& k, const SimplicialSet& l);
BisimplicialMap box_map(const BSetPtr& source, const BSetPtr& target, const SimplicialMap& f, const SimplicialMap& g);

/// The subobject on cells satisfying keep (closed under both face families).
struct BiSubobject {
  BSetPtr object;
  BisimplicialMap inclusion;
  std::vector<std::vector<std::vector<int>>> index;
};
BiSubobject bisubobject(const BSetPtr& x, const std::function<bool(BiCellId)>& keep);

/// Pushout of B <- A -> C along two monomorphisms.
struct BiPushout {
  BSetPtr object;
  BisimplicialMap left;
  BisimplicialMap right;
};
BiPushout pushout_of_monos(const BisimplicialMap& f, const BisimplicialMap& g);

/// Union of two subobjects of Z, built as the pushout over their cellwise
/// intersection, with its (monic) map into Z.
struct BiUnion {
  BSetPtr object;
  BisimplicialMap inclusion;
};
BiUnion subobject_union(const BisimplicialMap& a, const BisimplicialMap& b);

/// Vertical slice n -> X_{k,n}. Cells are pairs (horizontal surjection mask, cell).
struct VerticalSlice {
  SSetPtr object;
  int k = 0;
  /// Slice cell -> bisimplex of horizontal degree k.
  std::vector<std::vector<BiRef>> bisimplex;
  std::shared_ptr<const std::unordered_map<BiRef, CellId, BiRefHash>> lookup;
  /// Bisimplex (h, v, c) of horizontal degree k as a slice simplex.
  SimplexRef simplex(const BiRef& x) const;
};
VerticalSlice vertical_slice(const BisimplicialSet& x, int k);

/// The horizontal operator theta : [k'] -> [k] as a map X_{k,*} -> X_{k',*}.
SimplicialMap horizontal_operator(const BisimplicialSet& x, const VerticalSlice& from, const VerticalSlice& to, const Monotone& theta);

/// d(X)_n = X_{n,n}.
SimplicialSet diagonal(const BisimplicialSet& x);

/// F(k) = Delta^k x~ Delta^0, Fhat(k) = dDelta^k x~ Delta^0.
BisimplicialSet generator_F(int k);
BisimplicialSet generator_Fhat(int k);
/// The spine of Delta^n: vertices 0..n and edges (i, i+1).
SimplicialSet spine(int n);
/// G(n), vertically discrete, with its inclusion into F(n).
struct GeneratorG {
  BSetPtr object;
  BSetPtr ambient;
  BisimplicialMap inclusion;
};
GeneratorG generator_G(int n);
}  // namespace segal
