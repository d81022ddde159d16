#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace segal {

/// Largest simplex dimension supported anywhere in the library. Degeneracy
/// data is packed into 32-bit masks, which bounds this.
inline constexpr int kMaxDim = 30;

/// Bitmask of degeneracy positions. For a surjection s : [m] -> [k], bit j
/// (0 <= j < m) is set iff s(j) == s(j + 1). The Eilenberg-Zilber word
/// s_{i_p} ... s_{i_1} (i_p > ... > i_1) corresponds to the set {i_1..i_p}.
using DegeneracyMask = std::uint32_t;

/// A monotone map [source] -> [target] in the simplex category.
class Monotone {
 public:
  Monotone() = default;
  Monotone(int target, std::span<const int> values);

  static Monotone identity(int n);
  /// d^i : [n-1] -> [n], skipping i.
  static Monotone coface(int n, int i);
  /// s^j : [n+1] -> [n], hitting j twice.
  static Monotone codegeneracy(int n, int j);
  /// The surjection [m] -> [m - popcount(mask)] with the given repeats.
  static Monotone surjection(int m, DegeneracyMask mask);
  /// The injection [k] -> [n] whose image is the given vertex set.
  static Monotone injection(int n, std::uint32_t image);
  /// Constant-free edge [1] -> [n], 0 -> a, 1 -> b.
  static Monotone edge(int n, int a, int b);

  int source() const { return source_; }
  int target() const { return target_; }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }

  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;
  std::uint32_t image_set() const;
  DegeneracyMask repeat_mask() const;

  std::vector<int> values() const;
  std::string str() const;

  friend bool operator==(const Monotone& a, const Monotone& b);
  friend Monotone compose(const Monotone& a, const Monotone& b);

 private:
  int source_ = -1;
  int target_ = -1;
  std::array<std::uint8_t, kMaxDim + 1> img_{};
};

/// a o b (apply b first).
Monotone compose(const Monotone& a, const Monotone& b);

/// Epi-mono factorisation theta = inj o surj.
struct EpiMono {
  DegeneracyMask surjection;  // mask on [theta.source()]
  Monotone injection;         // [k] -> [theta.target()]
};
EpiMono factor(const Monotone& theta);

/// Enumerate all monotone maps [m] -> [n] in lexicographic order of values.
std::vector<Monotone> all_monotone(int m, int n);

/// All degeneracy masks of surjections [m] -> [k], in increasing order.
std::vector<DegeneracyMask> surjection_masks(int m, int k);

// Operations on surjections given as masks. dim arguments are source dims.

/// Mask of (t o s) where s has mask `first` on [m] and t has mask `second`
/// on [m - popcount(first)].
DegeneracyMask compose_surjections(int m, DegeneracyMask first, DegeneracyMask second);

/// Mask of s o s^j where s has mask `mask` on [n]; the result lives on [n+1].
DegeneracyMask add_degeneracy(int n, DegeneracyMask mask, int j);

/// Given J subset of mask(s), write s = s' o r with r the surjection of mask J;
/// returns mask(s') on [m - popcount(J)].
DegeneracyMask quotient_mask(int m, DegeneracyMask mask, DegeneracyMask common);

/// Strictly decreasing word for a mask.
std::vector<int> mask_to_word(DegeneracyMask mask);

/// Eilenberg-Zilber normal form of an arbitrary degeneracy word
/// s_{w[0]} s_{w[1]} ... s_{w[len-1]} applied to a simplex of dimension
/// base_dim (rightmost applied first). Throws std::out_of_range when an index
/// is invalid at its application stage.
DegeneracyMask normalize_word(std::span<const int> word, int base_dim);

}  // namespace segal
