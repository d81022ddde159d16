#include "segal/monotone.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace segal {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) throw std::out_of_range("dimension out of supported range: " + std::to_string(n));
}

}  // namespace

Monotone::Monotone(int target, std::span<const int> values) {
  if (values.empty()) throw std::invalid_argument("monotone map needs a nonempty source");
  check_dim(target);
  check_dim(static_cast<int>(values.size()) - 1);
  source_ = static_cast<int>(values.size()) - 1;
  target_ = target;
  int prev = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int v = values[i];
    if (v < 0 || v > target || v < prev) throw std::invalid_argument("not a monotone map");
    img_[i] = static_cast<std::uint8_t>(v);
    prev = v;
  }
}

Monotone Monotone::identity(int n) {
  check_dim(n);
  Monotone m;
  m.source_ = m.target_ = n;
  for (int i = 0; i <= n; ++i) m.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return m;
}

Monotone Monotone::coface(int n, int i) {
  check_dim(n);
  if (n < 1 || i < 0 || i > n) throw std::out_of_range("coface index out of range");
  Monotone m;
  m.source_ = n - 1;
  m.target_ = n;
  for (int t = 0; t < n; ++t) m.img_[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(t < i ? t : t + 1);
  return m;
}

Monotone Monotone::codegeneracy(int n, int j) {
  check_dim(n + 1);
  if (j < 0 || j > n) throw std::out_of_range("codegeneracy index out of range");
  Monotone m;
  m.source_ = n + 1;
  m.target_ = n;
  for (int t = 0; t <= n + 1; ++t) m.img_[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(t <= j ? t : t - 1);
  return m;
}

Monotone Monotone::surjection(int m, DegeneracyMask mask) {
  check_dim(m);
  if (m < 32 && (mask >> m) != 0) throw std::out_of_range("degeneracy mask exceeds source dimension");
  Monotone s;
  s.source_ = m;
  int v = 0;
  s.img_[0] = 0;
  for (int t = 1; t <= m; ++t) {
    if (!((mask >> (t - 1)) & 1u)) ++v;
    s.img_[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(v);
  }
  s.target_ = v;
  return s;
}

Monotone Monotone::injection(int n, std::uint32_t image) {
  check_dim(n);
  if (image == 0 || (n < 31 && (image >> (n + 1)) != 0)) throw std::invalid_argument("bad injection image");
  Monotone m;
  m.target_ = n;
  int k = 0;
  for (int v = 0; v <= n; ++v)
    if ((image >> v) & 1u) m.img_[static_cast<std::size_t>(k++)] = static_cast<std::uint8_t>(v);
  m.source_ = k - 1;
  return m;
}

Monotone Monotone::edge(int n, int a, int b) {
  const int v[2] = {a, b};
  return Monotone(n, v);
}

bool Monotone::is_identity() const {
  if (source_ != target_) return false;
  for (int i = 0; i <= source_; ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

bool Monotone::is_injective() const {
  for (int i = 0; i < source_; ++i)
    if (img_[static_cast<std::size_t>(i)] == img_[static_cast<std::size_t>(i + 1)]) return false;
  return true;
}

bool Monotone::is_surjective() const {
  return img_[0] == 0 && img_[static_cast<std::size_t>(source_)] == target_ &&
         std::popcount(image_set()) == target_ + 1;
}

std::uint32_t Monotone::image_set() const {
  std::uint32_t s = 0;
  for (int i = 0; i <= source_; ++i) s |= 1u << img_[static_cast<std::size_t>(i)];
  return s;
}

DegeneracyMask Monotone::repeat_mask() const {
  DegeneracyMask m = 0;
  for (int i = 0; i < source_; ++i)
    if (img_[static_cast<std::size_t>(i)] == img_[static_cast<std::size_t>(i + 1)]) m |= 1u << i;
  return m;
}

std::vector<int> Monotone::values() const {
  std::vector<int> v;
  for (int i = 0; i <= source_; ++i) v.push_back(img_[static_cast<std::size_t>(i)]);
  return v;
}

std::string Monotone::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i <= source_; ++i) os << (i ? "," : "") << int(img_[static_cast<std::size_t>(i)]);
  os << "]->[" << target_ << ']';
  return os.str();
}

bool operator==(const Monotone& a, const Monotone& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) return false;
  for (int i = 0; i <= a.source_; ++i)
    if (a.img_[static_cast<std::size_t>(i)] != b.img_[static_cast<std::size_t>(i)]) return false;
  return true;
}

Monotone compose(const Monotone& a, const Monotone& b) {
  if (b.target() != a.source()) throw std::invalid_argument("monotone maps not composable");
  Monotone out;
  out.source_ = b.source_;
  out.target_ = a.target_;
  for (int i = 0; i <= b.source_; ++i) out.img_[static_cast<std::size_t>(i)] = a.img_[b.img_[static_cast<std::size_t>(i)]];
  return out;
}

EpiMono factor(const Monotone& theta) {
  return EpiMono{theta.repeat_mask(), Monotone::injection(theta.target(), theta.image_set())};
}

std::vector<Monotone> all_monotone(int m, int n) {
  std::vector<Monotone> out;
  std::vector<int> v(static_cast<std::size_t>(m + 1), 0);
  while (true) {
    out.emplace_back(n, v);
    int i = m;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == n) --i;
    if (i < 0) break;
    const int nv = v[static_cast<std::size_t>(i)] + 1;
    for (int t = i; t <= m; ++t) v[static_cast<std::size_t>(t)] = nv;
  }
  return out;
}

std::vector<DegeneracyMask> surjection_masks(int m, int k) {
  std::vector<DegeneracyMask> out;
  if (k > m || k < 0) return out;
  const int bits = m - k;
  if (m == 0) {
    out.push_back(0);
    return out;
  }
  for (DegeneracyMask mask = 0; mask < (1u << m); ++mask)
    if (std::popcount(mask) == bits) out.push_back(mask);
  return out;
}

DegeneracyMask compose_surjections(int m, DegeneracyMask first, DegeneracyMask second) {
  // Position j of [m] is a repeat of t o s iff s(j) == s(j+1) or s(j) is a
  // repeat position of t.
  DegeneracyMask out = 0;
  int v = 0;
  for (int j = 0; j < m; ++j) {
    if ((first >> j) & 1u) {
      out |= 1u << j;
    } else {
      if ((second >> v) & 1u) out |= 1u << j;
      ++v;
    }
  }
  return out;
}

DegeneracyMask add_degeneracy(int n, DegeneracyMask mask, int j) {
  if (j < 0 || j > n) throw std::out_of_range("degeneracy index out of range");
  // s o s^j : [n+1] -> [n] -> [k]. Mask of s^j is {j}.
  return compose_surjections(n + 1, DegeneracyMask{1} << j, mask);
}

DegeneracyMask quotient_mask(int m, DegeneracyMask mask, DegeneracyMask common) {
  DegeneracyMask out = 0;
  int v = 0;
  for (int j = 0; j < m; ++j) {
    if ((common >> j) & 1u) continue;
    if ((mask >> j) & 1u) out |= 1u << v;
    ++v;
  }
  return out;
}

std::vector<int> mask_to_word(DegeneracyMask mask) {
  std::vector<int> w;
  for (int j = 31; j >= 0; --j)
    if ((mask >> j) & 1u) w.push_back(j);
  return w;
}

DegeneracyMask normalize_word(std::span<const int> word, int base_dim) {
  DegeneracyMask mask = 0;
  int dim = base_dim;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it > dim) throw std::out_of_range("degeneracy index " + std::to_string(*it) + " invalid in dimension " + std::to_string(dim));
    if (dim + 1 > kMaxDim) throw std::out_of_range("degeneracy word exceeds supported dimension");
    mask = add_degeneracy(dim, mask, *it);
    ++dim;
  }
  return mask;
}

}  // namespace segal
