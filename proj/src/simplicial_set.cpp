#include "segal/simplicial_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace segal {

namespace {

const std::string kNoLabel;

std::string vertex_label(std::uint32_t set) {
  const bool wide = (set >> 10) != 0;
  std::string s;
  for (int v = 0; v < 32; ++v)
    if ((set >> v) & 1u) {
      if (wide && !s.empty()) s += '.';
      s += std::to_string(v);
    }
  return s;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

int SimplexRef::dim() const { return cell.dim + std::popcount(degeneracy); }

SimplexRef SimplexRef::from_word(std::span<const int> word, CellId c) {
  return SimplexRef{normalize_word(word, c.dim), c};
}

int SimplicialSet::add_cell(int dim, std::vector<SimplexRef> faces, std::string label) {
  if (dim < 0 || dim > kMaxDim) throw std::out_of_range("cell dimension out of range");
  if (static_cast<int>(faces.size()) != (dim == 0 ? 0 : dim + 1))
    throw std::invalid_argument("cell of dimension " + std::to_string(dim) + " needs " + std::to_string(dim == 0 ? 0 : dim + 1) + " faces");
  if (static_cast<int>(cells_.size()) <= dim) cells_.resize(static_cast<std::size_t>(dim + 1));
  auto& level = cells_[static_cast<std::size_t>(dim)];
  level.push_back(Cell{std::move(faces), std::move(label)});
  return static_cast<int>(level.size()) - 1;
}

int SimplicialSet::cell_count(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(cells_.size())) return 0;
  return static_cast<int>(cells_[static_cast<std::size_t>(dim)].size());
}

int SimplicialSet::total_cells() const {
  int t = 0;
  for (const auto& l : cells_) t += static_cast<int>(l.size());
  return t;
}

std::vector<int> SimplicialSet::cell_counts() const {
  std::vector<int> out;
  for (const auto& l : cells_) out.push_back(static_cast<int>(l.size()));
  return out;
}

bool SimplicialSet::contains(CellId c) const {
  return c.dim >= 0 && c.dim < static_cast<int>(cells_.size()) && c.index >= 0 &&
         c.index < static_cast<int>(cells_[static_cast<std::size_t>(c.dim)].size());
}

const std::vector<SimplexRef>& SimplicialSet::faces(CellId c) const {
  if (!contains(c)) throw std::out_of_range("no such cell");
  return cells_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)].faces;
}

const std::string& SimplicialSet::label(CellId c) const {
  if (!contains(c)) return kNoLabel;
  return cells_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)].label;
}

bool SimplicialSet::has_labels() const {
  for (const auto& l : cells_)
    for (const auto& c : l)
      if (!c.label.empty()) return true;
  return false;
}

void SimplicialSet::set_label(CellId c, std::string label) {
  if (!contains(c)) throw std::out_of_range("no such cell");
  cells_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)].label = std::move(label);
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const {
  const int n = x.dim();
  if (n < 1 || i < 0 || i > n) throw std::out_of_range("face index out of range");
  // d_i s_j rules let degenerate positions absorb the face without touching cells.
  if (x.degeneracy != 0) {
    const bool left = i < n && ((x.degeneracy >> i) & 1u);
    const bool right = i > 0 && ((x.degeneracy >> (i - 1)) & 1u);
    if (left || right) {
      const int j = left ? i : i - 1;
      return SimplexRef{quotient_mask(n, x.degeneracy, DegeneracyMask{1} << j), x.cell};
    }
  }
  return apply(Monotone::coface(n, i), x);
}

SimplexRef SimplicialSet::degeneracy(const SimplexRef& x, int j) const {
  return SimplexRef{add_degeneracy(x.dim(), x.degeneracy, j), x.cell};
}

SimplexRef SimplicialSet::vertex(const SimplexRef& x, int a) const {
  const int v[1] = {a};
  return apply(Monotone(x.dim(), v), x);
}

SimplexRef SimplicialSet::apply(const Monotone& theta, const SimplexRef& x) const {
  if (theta.target() != x.dim()) throw std::invalid_argument("operator does not match simplex dimension");
  Monotone rho = compose(Monotone::surjection(x.dim(), x.degeneracy), theta);
  CellId c = x.cell;
  while (true) {
    const DegeneracyMask eta = rho.repeat_mask();
    const std::uint32_t image = rho.image_set();
    const int k = rho.target();
    if (std::popcount(image) == k + 1) return SimplexRef{eta, c};
    const int i = std::countr_one(image);
    const SimplexRef& f = faces(c)[static_cast<std::size_t>(i)];
    // rho = d^i o rho' with rho' : [m] -> [k-1].
    std::vector<int> shifted(static_cast<std::size_t>(rho.source() + 1));
    for (int t = 0; t <= rho.source(); ++t) {
      const int v = rho(t);
      shifted[static_cast<std::size_t>(t)] = v > i ? v - 1 : v;
    }
    rho = compose(Monotone::surjection(k - 1, f.degeneracy), Monotone(k - 1, shifted));
    c = f.cell;
  }
}

void SimplicialSet::validate() const {
  for (int d = 0; d < static_cast<int>(cells_.size()); ++d) {
    const auto& level = cells_[static_cast<std::size_t>(d)];
    for (int idx = 0; idx < static_cast<int>(level.size()); ++idx) {
      const auto& faces = level[static_cast<std::size_t>(idx)].faces;
      const std::string where = "cell (" + std::to_string(d) + "," + std::to_string(idx) + ")";
      if (static_cast<int>(faces.size()) != (d == 0 ? 0 : d + 1)) throw std::invalid_argument(where + ": wrong number of faces");
      for (const auto& f : faces) {
        if (!contains(f.cell)) throw std::invalid_argument(where + ": dangling face reference");
        if (f.cell.dim + std::popcount(f.degeneracy) != d - 1) throw std::invalid_argument(where + ": face of wrong dimension");
        if (d - 1 < 32 && (f.degeneracy >> (d - 1)) != 0) throw std::invalid_argument(where + ": degeneracy index out of range");
      }
      for (int j = 1; j <= d && d >= 2; ++j)
        for (int i = 0; i < j; ++i) {
          const SimplexRef a = face(faces[static_cast<std::size_t>(j)], i);
          const SimplexRef b = face(faces[static_cast<std::size_t>(i)], j - 1);
          if (a != b)
            throw std::invalid_argument(where + ": simplicial identity d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" +
                                        std::to_string(j - 1) + " d_" + std::to_string(i) + " fails");
        }
    }
  }
}

bool SimplicialSet::operator==(const SimplicialSet& o) const {
  if (cells_.size() != o.cells_.size()) return false;
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    if (cells_[d].size() != o.cells_[d].size()) return false;
    for (std::size_t i = 0; i < cells_[d].size(); ++i)
      if (cells_[d][i].faces != o.cells_[d][i].faces) return false;
  }
  return true;
}

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<SimplexRef>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw std::invalid_argument("simplicial map needs source and target");
  images_.resize(static_cast<std::size_t>(source_->dimension() + 1));
  for (int d = 0; d <= source_->dimension(); ++d)
    if (static_cast<int>(images_[static_cast<std::size_t>(d)].size()) != source_->cell_count(d))
      throw std::invalid_argument("simplicial map assignment does not cover the source cells");
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
  std::vector<std::vector<SimplexRef>> im(static_cast<std::size_t>(x->dimension() + 1));
  for (int d = 0; d <= x->dimension(); ++d)
    for (int i = 0; i < x->cell_count(d); ++i) im[static_cast<std::size_t>(d)].push_back(SimplexRef::of({d, i}));
  return SimplicialMap(x, x, std::move(im));
}

const SimplexRef& SimplicialMap::image(CellId c) const {
  return images_.at(static_cast<std::size_t>(c.dim)).at(static_cast<std::size_t>(c.index));
}

SimplexRef SimplicialMap::operator()(const SimplexRef& x) const {
  const SimplexRef& y = image(x.cell);
  return SimplexRef{compose_surjections(x.dim(), x.degeneracy, y.degeneracy), y.cell};
}

void SimplicialMap::validate() const {
  for (int d = 0; d <= source_->dimension(); ++d)
    for (int i = 0; i < source_->cell_count(d); ++i) {
      const SimplexRef& y = images_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
      if (!target_->contains(y.cell) || y.dim() != d) throw std::invalid_argument("map sends a cell to a simplex of the wrong dimension");
      if (d == 0) continue;
      const auto& fs = source_->faces({d, i});
      for (int k = 0; k <= d; ++k)
        if ((*this)(fs[static_cast<std::size_t>(k)]) != target_->face(y, k))
          throw std::invalid_argument("map does not commute with face d_" + std::to_string(k) + " on cell (" + std::to_string(d) + "," +
                                      std::to_string(i) + ")");
    }
}

bool SimplicialMap::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool SimplicialMap::operator==(const SimplicialMap& o) const {
  if (images_ != o.images_) return false;
  const bool same_source = source_ == o.source_ || (*source_ == *o.source_);
  const bool same_target = target_ == o.target_ || (*target_ == *o.target_);
  return same_source && same_target;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (!(f.target() == g.source() || *f.target() == *g.source())) throw std::invalid_argument("maps not composable");
  std::vector<std::vector<SimplexRef>> im(f.images().size());
  for (std::size_t d = 0; d < im.size(); ++d)
    for (const auto& y : f.images()[d]) im[d].push_back(g(y));
  return SimplicialMap(f.source(), g.target(), std::move(im));
}

namespace {

// Colex rank of a k-subset among subsets of the same size.
int colex_rank(std::uint32_t set) {
  std::uint64_t r = 0;
  int i = 0;
  for (int v = 0; v < 32; ++v)
    if ((set >> v) & 1u) r += binom(v, ++i);
  return static_cast<int>(r);
}

CellId simplex_cell(std::uint32_t set) { return CellId{std::popcount(set) - 1, colex_rank(set)}; }

}  // namespace

SimplicialSet simplex_subcomplex(int n, const std::function<bool(std::uint32_t)>& keep) {
  if (n < 0 || n > kMaxDim) throw std::out_of_range("simplex dimension out of range");
  if (n > 20) throw std::out_of_range("standard simplex too large to enumerate");
  // Cells in colex order per dimension; remember positions for face lookup.
  std::vector<std::vector<std::uint32_t>> by_dim(static_cast<std::size_t>(n + 1));
  const std::uint32_t full = (n == 31) ? ~0u : ((1u << (n + 1)) - 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    by_dim[static_cast<std::size_t>(std::popcount(s) - 1)].push_back(s);
    if (s == full) break;
  }
  for (auto& l : by_dim) std::sort(l.begin(), l.end(), [](std::uint32_t a, std::uint32_t b) { return colex_rank(a) < colex_rank(b); });
  std::unordered_map<std::uint32_t, int> index;
  SimplicialSet out;
  for (int d = 0; d <= n; ++d)
    for (std::uint32_t s : by_dim[static_cast<std::size_t>(d)]) {
      if (!keep(s)) continue;
      std::vector<SimplexRef> faces;
      if (d > 0) {
        for (int v = 0; v < 32; ++v)
          if ((s >> v) & 1u) {
            const std::uint32_t f = s & ~(1u << v);
            auto it = index.find(f);
            if (it == index.end()) throw std::invalid_argument("subcomplex of the simplex is not closed under faces");
            faces.push_back(SimplexRef::of({d - 1, it->second}));
          }
      }
      index[s] = out.add_cell(d, std::move(faces), vertex_label(s));
    }
  return out;
}

SimplicialSet standard(int n) {
  SimplicialSet s = simplex_subcomplex(n, [](std::uint32_t) { return true; });
  // Nerve of the poset [n]: a simplex is determined by its vertices.
  s.coskeletal = n == 0 ? 0 : 1;
  return s;
}

SimplicialSet boundary(int n) {
  if (n < 0) throw std::out_of_range("boundary needs n >= 0");
  const std::uint32_t full = (1u << (n + 1)) - 1;
  return simplex_subcomplex(n, [full](std::uint32_t s) { return s != full; });
}

SimplicialSet horn(int n, int k) {
  if (n < 1) throw std::out_of_range("horn needs n >= 1");
  if (k < 0 || k > n) throw std::out_of_range("horn index k out of range");
  const std::uint32_t full = (1u << (n + 1)) - 1;
  const std::uint32_t missing = full & ~(1u << k);
  return simplex_subcomplex(n, [=](std::uint32_t s) { return s != full && s != missing; });
}

SimplicialSet empty_set() { return SimplicialSet{}; }

SimplicialSet point() { return standard(0); }

SimplicialMap simplex_subcomplex_inclusion(SSetPtr sub, int n) {
  // Recover vertex sets from the faces: vertices of Delta^n are labelled by
  // their position, so a cell's vertex set is the union of its vertices.
  SSetPtr full = share(standard(n));
  std::vector<std::vector<SimplexRef>> im(static_cast<std::size_t>(sub->dimension() + 1));
  std::vector<std::vector<std::uint32_t>> sets(static_cast<std::size_t>(sub->dimension() + 1));
  for (int d = 0; d <= sub->dimension(); ++d)
    for (int i = 0; i < sub->cell_count(d); ++i) {
      std::uint32_t s = 0;
      if (d == 0) {
        const std::string& l = sub->label({0, i});
        s = 1u << std::stoi(l);
      } else {
        for (const auto& f : sub->faces({d, i})) s |= sets[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(f.cell.index)];
      }
      sets[static_cast<std::size_t>(d)].push_back(s);
      im[static_cast<std::size_t>(d)].push_back(SimplexRef::of(simplex_cell(s)));
    }
  return SimplicialMap(std::move(sub), std::move(full), std::move(im));
}

Subcomplex subcomplex(const SSetPtr& x, const std::function<bool(CellId)>& keep) {
  Subcomplex r;
  SimplicialSet out;
  std::vector<std::vector<SimplexRef>> inc;
  r.index.resize(static_cast<std::size_t>(x->dimension() + 1));
  for (int d = 0; d <= x->dimension(); ++d) {
    r.index[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(x->cell_count(d)), -1);
    for (int i = 0; i < x->cell_count(d); ++i) {
      if (!keep({d, i})) continue;
      std::vector<SimplexRef> faces;
      if (d > 0)
        for (const auto& f : x->faces({d, i})) {
          const int j = r.index[static_cast<std::size_t>(f.cell.dim)][static_cast<std::size_t>(f.cell.index)];
          if (j < 0) throw std::invalid_argument("subcomplex is not closed under faces");
          faces.push_back(SimplexRef{f.degeneracy, {f.cell.dim, j}});
        }
      const int j = out.add_cell(d, std::move(faces), x->label({d, i}));
      r.index[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] = j;
      if (static_cast<int>(inc.size()) <= d) inc.resize(static_cast<std::size_t>(d + 1));
      inc[static_cast<std::size_t>(d)].push_back(SimplexRef::of({d, i}));
    }
  }
  out.truncation = x->truncation;
  r.object = share(std::move(out));
  r.inclusion = SimplicialMap(r.object, x, std::move(inc));
  return r;
}

Subcomplex skeleton(const SSetPtr& x, int n) {
  if (n < 0) throw std::out_of_range("skeleton dimension must be >= 0");
  Subcomplex r = subcomplex(x, [n](CellId c) { return c.dim <= n; });
  if (x->truncation) {
    SimplicialSet s = *r.object;
    s.truncation = Truncation{std::min(x->truncation->bound, n), x->truncation->exact && n >= x->dimension()};
    r.object = share(std::move(s));
    r.inclusion = SimplicialMap(r.object, x, r.inclusion.images());
  }
  return r;
}

SimplicialMap simplex_map(SSetPtr source, SSetPtr target, const Monotone& theta) {
  std::vector<std::vector<SimplexRef>> im(static_cast<std::size_t>(theta.source() + 1));
  // Cells of Delta^m are subsets; the image of a subset is the epi-mono factorisation.
  for (int d = 0; d <= theta.source(); ++d) im[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(source->cell_count(d)));
  const std::uint32_t full = (1u << (theta.source() + 1)) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const Monotone inc = Monotone::injection(theta.source(), s);
    const Monotone comp = compose(theta, inc);
    const CellId c = simplex_cell(s);
    im[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)] = SimplexRef{comp.repeat_mask(), simplex_cell(comp.image_set())};
  }
  return SimplicialMap(std::move(source), std::move(target), std::move(im));
}

SimplicialMap classifying_map(SSetPtr simplex_n, SSetPtr target, const SimplexRef& x) {
  const int n = x.dim();
  std::vector<std::vector<SimplexRef>> im(static_cast<std::size_t>(n + 1));
  for (int d = 0; d <= n; ++d) im[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(simplex_n->cell_count(d)));
  const std::uint32_t full = (1u << (n + 1)) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const CellId c = simplex_cell(s);
    im[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)] = target->apply(Monotone::injection(n, s), x);
  }
  return SimplicialMap(std::move(simplex_n), std::move(target), std::move(im));
}

SimplicialMap to_point(SSetPtr x, SSetPtr pt) {
  std::vector<std::vector<SimplexRef>> im(static_cast<std::size_t>(x->dimension() + 1));
  for (int d = 0; d <= x->dimension(); ++d)
    im[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(x->cell_count(d)),
                                           SimplexRef{d == 0 ? 0u : (DegeneracyMask{1} << d) - 1, CellId{0, 0}});
  return SimplicialMap(std::move(x), std::move(pt), std::move(im));
}

bool is_mono(const SimplicialMap& f) {
  const auto& t = *f.target();
  std::vector<std::vector<char>> hit(static_cast<std::size_t>(t.dimension() + 1));
  for (int d = 0; d <= t.dimension(); ++d) hit[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(t.cell_count(d)), 0);
  for (const auto& level : f.images())
    for (const auto& y : level) {
      if (!y.is_nondegenerate()) return false;
      char& h = hit[static_cast<std::size_t>(y.cell.dim)][static_cast<std::size_t>(y.cell.index)];
      if (h) return false;
      h = 1;
    }
  return true;
}

bool is_iso(const SimplicialMap& f) {
  if (!is_mono(f)) return false;
  return f.source()->total_cells() == f.target()->total_cells();
}

}  // namespace segal
