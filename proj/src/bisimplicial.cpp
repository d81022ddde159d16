#include "segal/bisimplicial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "segal/iso.hpp"

namespace segal {

namespace {

const std::vector<int> kNoCandidates;

// rho with every value above the missing value i shifted down.
Monotone drop_value(const Monotone& rho, int i) {
  std::vector<int> v = rho.values();
  for (int& x : v)
    if (x > i) --x;
  return Monotone(rho.target() - 1, v);
}

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

}  // namespace

int BiRef::hdim() const { return cell.p + std::popcount(h); }
int BiRef::vdim() const { return cell.q + std::popcount(v); }

const BisimplicialSet::Cell& BisimplicialSet::cell(BiCellId c) const {
  if (c.p < 0 || c.q < 0 || uz(c.p) >= cells_.size() || uz(c.q) >= cells_[uz(c.p)].size() || c.index < 0 ||
      uz(c.index) >= cells_[uz(c.p)][uz(c.q)].size())
    throw std::out_of_range("no bisimplicial cell (" + std::to_string(c.p) + "," + std::to_string(c.q) + ")#" + std::to_string(c.index));
  return cells_[uz(c.p)][uz(c.q)][uz(c.index)];
}

int BisimplicialSet::add_cell(int p, int q, std::vector<BiRef> hfaces, std::vector<BiRef> vfaces, std::string label) {
  if (p < 0 || q < 0 || p > kMaxDim || q > kMaxDim) throw std::out_of_range("bidegree out of range");
  if (static_cast<int>(hfaces.size()) != (p == 0 ? 0 : p + 1) || static_cast<int>(vfaces.size()) != (q == 0 ? 0 : q + 1))
    throw std::invalid_argument("wrong number of faces for bidegree");
  if (cells_.size() <= uz(p)) cells_.resize(uz(p + 1));
  for (auto& row : cells_)
    if (row.size() <= uz(q)) row.resize(uz(q + 1));
  auto& v = cells_[uz(p)][uz(q)];
  v.push_back(Cell{std::move(hfaces), std::move(vfaces), std::move(label)});
  return static_cast<int>(v.size()) - 1;
}

int BisimplicialSet::hdim() const {
  for (int p = static_cast<int>(cells_.size()) - 1; p >= 0; --p)
    for (const auto& col : cells_[uz(p)])
      if (!col.empty()) return p;
  return -1;
}

int BisimplicialSet::vdim() const {
  int best = -1;
  for (const auto& row : cells_)
    for (int q = 0; q < static_cast<int>(row.size()); ++q)
      if (!row[uz(q)].empty()) best = std::max(best, q);
  return best;
}

int BisimplicialSet::cell_count(int p, int q) const {
  if (p < 0 || q < 0 || uz(p) >= cells_.size() || uz(q) >= cells_[uz(p)].size()) return 0;
  return static_cast<int>(cells_[uz(p)][uz(q)].size());
}

int BisimplicialSet::total_cells() const {
  int t = 0;
  for (const auto& row : cells_)
    for (const auto& col : row) t += static_cast<int>(col.size());
  return t;
}

const std::vector<BiRef>& BisimplicialSet::hfaces(BiCellId c) const { return cell(c).hfaces; }
const std::vector<BiRef>& BisimplicialSet::vfaces(BiCellId c) const { return cell(c).vfaces; }
const std::string& BisimplicialSet::label(BiCellId c) const { return cell(c).label; }
void BisimplicialSet::set_label(BiCellId c, std::string label) {
  cell(c);
  cells_[uz(c.p)][uz(c.q)][uz(c.index)].label = std::move(label);
}

std::vector<BiCellId> BisimplicialSet::cells() const {
  std::vector<BiCellId> out;
  for (int p = 0; p <= hdim(); ++p)
    for (int q = 0; q <= vdim(); ++q)
      for (int i = 0; i < cell_count(p, q); ++i) out.push_back({p, q, i});
  return out;
}

BiRef BisimplicialSet::apply(const Monotone& theta, const Monotone& phi, const BiRef& x) const {
  if (theta.target() != x.hdim() || phi.target() != x.vdim()) throw std::invalid_argument("operator does not match bidegree");
  Monotone rh = compose(Monotone::surjection(x.hdim(), x.h), theta);
  Monotone rv = compose(Monotone::surjection(x.vdim(), x.v), phi);
  BiCellId c = x.cell;
  while (true) {
    const std::uint32_t ih = rh.image_set();
    if (std::popcount(ih) < c.p + 1) {
      const int i = std::countr_one(ih);
      const BiRef& f = hfaces(c)[uz(i)];
      rh = compose(Monotone::surjection(c.p - 1, f.h), drop_value(rh, i));
      rv = compose(Monotone::surjection(c.q, f.v), rv);
      c = f.cell;
      continue;
    }
    const std::uint32_t iv = rv.image_set();
    if (std::popcount(iv) < c.q + 1) {
      const int i = std::countr_one(iv);
      const BiRef& f = vfaces(c)[uz(i)];
      rh = compose(Monotone::surjection(c.p, f.h), rh);
      rv = compose(Monotone::surjection(c.q - 1, f.v), drop_value(rv, i));
      c = f.cell;
      continue;
    }
    return BiRef{rh.repeat_mask(), rv.repeat_mask(), c};
  }
}

BiRef BisimplicialSet::hface(const BiRef& x, int i) const {
  const int m = x.hdim();
  if (m < 1 || i < 0 || i > m) throw std::out_of_range("horizontal face index out of range");
  return apply(Monotone::coface(m, i), Monotone::identity(x.vdim()), x);
}

BiRef BisimplicialSet::vface(const BiRef& x, int i) const {
  const int n = x.vdim();
  if (n < 1 || i < 0 || i > n) throw std::out_of_range("vertical face index out of range");
  return apply(Monotone::identity(x.hdim()), Monotone::coface(n, i), x);
}

BiRef BisimplicialSet::hdegeneracy(const BiRef& x, int j) const {
  return BiRef{add_degeneracy(x.hdim(), x.h, j), x.v, x.cell};
}

BiRef BisimplicialSet::vdegeneracy(const BiRef& x, int j) const {
  return BiRef{x.h, add_degeneracy(x.vdim(), x.v, j), x.cell};
}

void BisimplicialSet::validate() const {
  for (const BiCellId& c : cells()) {
    const auto& hf = hfaces(c);
    const auto& vf = vfaces(c);
    for (const BiRef& f : hf) {
      cell(f.cell);
      if (f.hdim() != c.p - 1 || f.vdim() != c.q) throw std::invalid_argument("horizontal face of wrong bidegree");
    }
    for (const BiRef& f : vf) {
      cell(f.cell);
      if (f.hdim() != c.p || f.vdim() != c.q - 1) throw std::invalid_argument("vertical face of wrong bidegree");
    }
    const BiRef x = BiRef::of(c);
    for (int j = 0; j <= c.p; ++j)
      for (int i = 0; i < j && c.p >= 2; ++i)
        if (hface(hf[uz(j)], i) != hface(hf[uz(i)], j - 1)) throw std::invalid_argument("horizontal simplicial identity fails");
    for (int j = 0; j <= c.q; ++j)
      for (int i = 0; i < j && c.q >= 2; ++i)
        if (vface(vf[uz(j)], i) != vface(vf[uz(i)], j - 1)) throw std::invalid_argument("vertical simplicial identity fails");
    for (int i = 0; c.p >= 1 && i <= c.p; ++i)
      for (int j = 0; c.q >= 1 && j <= c.q; ++j)
        if (vface(hf[uz(i)], j) != hface(vf[uz(j)], i)) throw std::invalid_argument("horizontal and vertical faces do not commute");
    (void)x;
  }
}

bool BisimplicialSet::operator==(const BisimplicialSet& o) const {
  if (hdim() != o.hdim() || vdim() != o.vdim()) return false;
  for (const BiCellId& c : cells()) {
    if (o.cell_count(c.p, c.q) != cell_count(c.p, c.q)) return false;
    if (hfaces(c) != o.hfaces(c) || vfaces(c) != o.vfaces(c)) return false;
  }
  return true;
}

BisimplicialMap::BisimplicialMap(BSetPtr source, BSetPtr target, std::vector<std::vector<std::vector<BiRef>>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  images_.resize(uz(source_->hdim() + 1));
  for (auto& row : images_) row.resize(uz(source_->vdim() + 1));
  for (const BiCellId& c : source_->cells())
    if (images_[uz(c.p)][uz(c.q)].size() != uz(source_->cell_count(c.p, c.q)))
      throw std::invalid_argument("bisimplicial map image table has the wrong shape");
}

BisimplicialMap BisimplicialMap::identity(BSetPtr x) {
  std::vector<std::vector<std::vector<BiRef>>> img(uz(x->hdim() + 1), std::vector<std::vector<BiRef>>(uz(x->vdim() + 1)));
  for (const BiCellId& c : x->cells()) img[uz(c.p)][uz(c.q)].push_back(BiRef::of(c));
  return BisimplicialMap(x, x, std::move(img));
}

const BiRef& BisimplicialMap::image(BiCellId c) const { return images_.at(uz(c.p)).at(uz(c.q)).at(uz(c.index)); }

BiRef BisimplicialMap::operator()(const BiRef& x) const {
  const BiRef& r = image(x.cell);
  return BiRef{compose_surjections(x.hdim(), x.h, r.h), compose_surjections(x.vdim(), x.v, r.v), r.cell};
}

void BisimplicialMap::validate() const {
  for (const BiCellId& c : source_->cells()) {
    const BiRef& r = image(c);
    if (r.hdim() != c.p || r.vdim() != c.q) throw std::invalid_argument("bisimplicial map changes bidegree");
    for (int i = 0; c.p >= 1 && i <= c.p; ++i)
      if (target_->hface(r, i) != (*this)(source_->hfaces(c)[uz(i)])) throw std::invalid_argument("map does not commute with horizontal faces");
    for (int i = 0; c.q >= 1 && i <= c.q; ++i)
      if (target_->vface(r, i) != (*this)(source_->vfaces(c)[uz(i)])) throw std::invalid_argument("map does not commute with vertical faces");
  }
}

bool BisimplicialMap::operator==(const BisimplicialMap& o) const { return images_ == o.images_; }

BisimplicialMap compose(const BisimplicialMap& g, const BisimplicialMap& f) {
  std::vector<std::vector<std::vector<BiRef>>> img(uz(f.source()->hdim() + 1), std::vector<std::vector<BiRef>>(uz(f.source()->vdim() + 1)));
  for (const BiCellId& c : f.source()->cells()) img[uz(c.p)][uz(c.q)].push_back(g(f.image(c)));
  return BisimplicialMap(f.source(), g.target(), std::move(img));
}

bool is_mono(const BisimplicialMap& f) {
  std::vector<BiRef> seen;
  for (const BiCellId& c : f.source()->cells()) {
    const BiRef& r = f.image(c);
    if (!r.is_nondegenerate()) return false;
    seen.push_back(r);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool is_iso(const BisimplicialMap& f) { return is_mono(f) && f.source()->total_cells() == f.target()->total_cells(); }

BisimplexTable::BisimplexTable(const BisimplicialSet& x, int max_p, int max_q) : max_p_(max_p), max_q_(max_q) {
  levels_.assign(uz(max_p + 1), std::vector<Level>(uz(max_q + 1)));
  for (int m = 0; m <= max_p; ++m)
    for (int n = 0; n <= max_q; ++n) {
      Level& lv = at(m, n);
      for (int p = 0; p <= std::min(m, x.hdim()); ++p)
        for (int q = 0; q <= std::min(n, x.vdim()); ++q) {
          const auto hm = surjection_masks(m, p);
          const auto vm = surjection_masks(n, q);
          for (int c = 0; c < x.cell_count(p, q); ++c)
            for (DegeneracyMask h : hm)
              for (DegeneracyMask v : vm) {
                const BiRef r{h, v, {p, q, c}};
                lv.index.emplace(r, static_cast<int>(lv.simplices.size()));
                lv.simplices.push_back(r);
              }
        }
      for (std::size_t s = 0; s < lv.simplices.size(); ++s) {
        std::vector<int> key;
        for (int i = 0; m >= 1 && i <= m; ++i) key.push_back(at(m - 1, n).index.at(x.hface(lv.simplices[s], i)));
        for (int i = 0; n >= 1 && i <= n; ++i) key.push_back(at(m, n - 1).index.at(x.vface(lv.simplices[s], i)));
        lv.by_boundary[key].push_back(static_cast<int>(s));
      }
    }
  for (int m = 0; m <= max_p; ++m)
    for (int n = 0; n <= max_q; ++n) {
      Level& lv = at(m, n);
      for (const BiRef& r : lv.simplices) {
        for (int j = 0; m < max_p && j <= m; ++j) lv.hdeg.push_back(at(m + 1, n).index.at(x.hdegeneracy(r, j)));
        for (int j = 0; n < max_q && j <= n; ++j) lv.vdeg.push_back(at(m, n + 1).index.at(x.vdegeneracy(r, j)));
      }
    }
}

int BisimplexTable::size(int m, int n) const {
  if (m < 0 || n < 0 || m > max_p_ || n > max_q_) return 0;
  return static_cast<int>(at(m, n).simplices.size());
}

const BiRef& BisimplexTable::simplex(int m, int n, int idx) const { return at(m, n).simplices.at(uz(idx)); }
const std::vector<BiRef>& BisimplexTable::simplices(int m, int n) const { return at(m, n).simplices; }

int BisimplexTable::index_of(const BiRef& x) const {
  const int m = x.hdim(), n = x.vdim();
  if (m > max_p_ || n > max_q_) return -1;
  auto it = at(m, n).index.find(x);
  return it == at(m, n).index.end() ? -1 : it->second;
}

int BisimplexTable::degenerate(int p, int q, int idx, DegeneracyMask h, DegeneracyMask v) const {
  int m = p, n = q;
  for (int j = 0; h; ++j) {
    if (!((h >> j) & 1u)) continue;
    h &= ~(1u << j);
    if (m >= max_p_) return -1;
    idx = at(m, n).hdeg[uz(idx * (m + 1) + j)];
    ++m;
  }
  for (int j = 0; v; ++j) {
    if (!((v >> j) & 1u)) continue;
    v &= ~(1u << j);
    if (n >= max_q_) return -1;
    idx = at(m, n).vdeg[uz(idx * (n + 1) + j)];
    ++n;
  }
  return idx;
}

const std::vector<int>& BisimplexTable::with_boundary(int m, int n, const std::vector<int>& key) const {
  if (m < 0 || n < 0 || m > max_p_ || n > max_q_) return kNoCandidates;
  const auto& b = at(m, n).by_boundary;
  auto it = b.find(key);
  return it == b.end() ? kNoCandidates : it->second;
}

namespace {

struct BiSearch {
  const BisimplicialSet& k;
  const BisimplexTable& table;
  std::vector<BiCellId> order;
  std::vector<std::vector<std::vector<int>>> assign;
  std::function<bool(const std::vector<std::vector<std::vector<int>>>&)> visit;
  bool stop = false;

  BiSearch(const BisimplicialSet& src, const BisimplexTable& t) : k(src), table(t) {
    assign.assign(uz(src.hdim() + 1), std::vector<std::vector<int>>(uz(src.vdim() + 1)));
    const std::vector<BiCellId> all = src.cells();
    for (const BiCellId& c : all) assign[uz(c.p)][uz(c.q)].resize(uz(src.cell_count(c.p, c.q)), 0);
    // Post-order over faces starting from the top cells, so that each cell is
    // tried right after its boundary and pruning starts early.
    std::function<void(BiCellId)> visit_cell = [&](BiCellId c) {
      int& mark = assign[uz(c.p)][uz(c.q)][uz(c.index)];
      if (mark != 0) return;
      mark = 1;
      for (const BiRef& f : src.hfaces(c)) visit_cell(f.cell);
      for (const BiRef& f : src.vfaces(c)) visit_cell(f.cell);
      order.push_back(c);
    };
    for (auto it = all.rbegin(); it != all.rend(); ++it) visit_cell(*it);
    for (auto& row : assign)
      for (auto& col : row) std::fill(col.begin(), col.end(), -1);
  }

  int face_image(const BiRef& f) const {
    return table.degenerate(f.cell.p, f.cell.q, assign[uz(f.cell.p)][uz(f.cell.q)][uz(f.cell.index)], f.h, f.v);
  }

  void step(std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(assign)) stop = true;
      return;
    }
    const BiCellId c = order[pos];
    int& slot = assign[uz(c.p)][uz(c.q)][uz(c.index)];
    if (c.p == 0 && c.q == 0) {
      for (int v = 0; v < table.size(0, 0) && !stop; ++v) {
        slot = v;
        step(pos + 1);
      }
      slot = -1;
      return;
    }
    std::vector<int> key;
    for (const BiRef& f : k.hfaces(c)) key.push_back(face_image(f));
    for (const BiRef& f : k.vfaces(c)) key.push_back(face_image(f));
    for (int cand : table.with_boundary(c.p, c.q, key)) {
      if (stop) break;
      slot = cand;
      step(pos + 1);
    }
    slot = -1;
  }
};

}  // namespace

std::vector<BisimplicialMap> enumerate_bimaps(const BSetPtr& k, const BSetPtr& x) {
  std::vector<BisimplicialMap> out;
  const BisimplexTable table(*x, std::max(k->hdim(), 0), std::max(k->vdim(), 0));
  BiSearch s(*k, table);
  s.visit = [&](const std::vector<std::vector<std::vector<int>>>& a) {
    std::vector<std::vector<std::vector<BiRef>>> img(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) {
      img[p].resize(a[p].size());
      for (std::size_t q = 0; q < a[p].size(); ++q)
        for (int idx : a[p][q]) img[p][q].push_back(table.simplex(static_cast<int>(p), static_cast<int>(q), idx));
    }
    out.emplace_back(k, x, std::move(img));
    return true;
  };
  s.step(0);
  return out;
}

std::uint64_t count_bimaps(const BisimplicialSet& k, const BisimplicialSet& x) {
  const BisimplexTable table(x, std::max(k.hdim(), 0), std::max(k.vdim(), 0));
  BiSearch s(k, table);
  std::uint64_t n = 0;
  s.visit = [&](const auto&) {
    ++n;
    return true;
  };
  s.step(0);
  return n;
}

BiLeveled from_bilevels(const BiLevelData& d) {
  BisimplicialSet out;
  BiLeveled res;
  res.normal_form.resize(d.counts.size());
  for (int m = 0; m < static_cast<int>(d.counts.size()); ++m) {
    res.normal_form[uz(m)].resize(d.counts[uz(m)].size());
    for (int n = 0; n < static_cast<int>(d.counts[uz(m)].size()); ++n) {
      auto& nf = res.normal_form[uz(m)][uz(n)];
      nf.resize(uz(d.counts[uz(m)][uz(n)]));
      for (int x = 0; x < d.counts[uz(m)][uz(n)]; ++x) {
        bool done = false;
        for (int j = 0; j < m && !done; ++j) {
          const int f = d.hface(m, n, j, x);
          if (d.hdegeneracy(m - 1, n, j, f) != x) continue;
          const BiRef& b = res.normal_form[uz(m - 1)][uz(n)][uz(f)];
          nf[uz(x)] = BiRef{add_degeneracy(m - 1, b.h, j), b.v, b.cell};
          done = true;
        }
        for (int j = 0; j < n && !done; ++j) {
          const int f = d.vface(m, n, j, x);
          if (d.vdegeneracy(m, n - 1, j, f) != x) continue;
          const BiRef& b = res.normal_form[uz(m)][uz(n - 1)][uz(f)];
          nf[uz(x)] = BiRef{b.h, add_degeneracy(n - 1, b.v, j), b.cell};
          done = true;
        }
        if (done) continue;
        std::vector<BiRef> hf, vf;
        for (int i = 0; m >= 1 && i <= m; ++i) hf.push_back(res.normal_form[uz(m - 1)][uz(n)][uz(d.hface(m, n, i, x))]);
        for (int i = 0; n >= 1 && i <= n; ++i) vf.push_back(res.normal_form[uz(m)][uz(n - 1)][uz(d.vface(m, n, i, x))]);
        nf[uz(x)] = BiRef::of({m, n, out.add_cell(m, n, std::move(hf), std::move(vf))});
      }
    }
  }
  res.object = share(std::move(out));
  return res;
}

namespace {

CellGraph bi_cell_graph(const BisimplicialSet& x, std::vector<BiCellId>& cells) {
  cells = x.cells();
  std::map<BiCellId, int> pos;
  for (std::size_t i = 0; i < cells.size(); ++i) pos[cells[i]] = static_cast<int>(i);
  CellGraph g;
  for (const BiCellId& c : cells) {
    g.grade.push_back((static_cast<std::uint64_t>(c.p) << 16) | static_cast<std::uint64_t>(c.q));
    std::vector<CellGraph::Link> links;
    int i = 0;
    for (const BiRef& f : x.hfaces(c)) links.push_back({i++, (static_cast<std::uint64_t>(f.h) << 32) | f.v, pos.at(f.cell)});
    i = 64;
    for (const BiRef& f : x.vfaces(c)) links.push_back({i++, (static_cast<std::uint64_t>(f.h) << 32) | f.v, pos.at(f.cell)});
    g.faces.push_back(std::move(links));
  }
  return g;
}

}  // namespace

std::optional<BisimplicialMap> find_isomorphism(const BSetPtr& x, const BSetPtr& y) {
  if (x->total_cells() != y->total_cells() || x->hdim() != y->hdim() || x->vdim() != y->vdim()) return std::nullopt;
  std::vector<BiCellId> cx, cy;
  const auto m = find_cell_isomorphism(bi_cell_graph(*x, cx), bi_cell_graph(*y, cy));
  if (!m) return std::nullopt;
  std::vector<std::vector<std::vector<BiRef>>> img(uz(x->hdim() + 1), std::vector<std::vector<BiRef>>(uz(x->vdim() + 1)));
  for (std::size_t i = 0; i < cx.size(); ++i) img[uz(cx[i].p)][uz(cx[i].q)].push_back(BiRef::of(cy[uz((*m)[i])]));
  return BisimplicialMap(x, y, std::move(img));
}

bool isomorphic(const BisimplicialSet& x, const BisimplicialSet& y) {
  if (x.total_cells() != y.total_cells()) return false;
  std::vector<BiCellId> cx, cy;
  return find_cell_isomorphism(bi_cell_graph(x, cx), bi_cell_graph(y, cy)).has_value();
}

BisimplicialSet box_product(const SimplicialSet& k, const SimplicialSet& l) {
  BisimplicialSet out;
  for (int p = 0; p <= k.dimension(); ++p)
    for (int q = 0; q <= l.dimension(); ++q)
      for (int a = 0; a < k.cell_count(p); ++a)
        for (int b = 0; b < l.cell_count(q); ++b) {
          std::vector<BiRef> hf, vf;
          if (p > 0)
            for (const SimplexRef& f : k.faces({p, a}))
              hf.push_back(BiRef{f.degeneracy, 0, {f.cell.dim, q, f.cell.index * l.cell_count(q) + b}});
          if (q > 0)
            for (const SimplexRef& f : l.faces({q, b}))
              vf.push_back(BiRef{0, f.degeneracy, {p, f.cell.dim, a * l.cell_count(f.cell.dim) + f.cell.index}});
          std::string label;
          if (!k.label({p, a}).empty() || !l.label({q, b}).empty()) label = k.label({p, a}) + "|" + l.label({q, b});
          out.add_cell(p, q, std::move(hf), std::move(vf), std::move(label));
        }
  out.htruncation = k.truncation;
  out.vtruncation = l.truncation;
  // A coproduct of c-coskeletal sets stays c-coskeletal once c >= 1.
  if (k.coskeletal) {
    const bool single = l.dimension() <= 0 && l.cell_count(0) <= 1;
    out.hcoskeletal = single ? *k.coskeletal : std::max(*k.coskeletal, 1);
  }
  return out;
}

BisimplicialMap box_map(const BSetPtr& source, const BSetPtr& target, const SimplicialMap& f, const SimplicialMap& g) {
  const SimplicialSet& k = *f.source();
  const SimplicialSet& l = *g.source();
  const SimplicialSet& l2 = *g.target();
  std::vector<std::vector<std::vector<BiRef>>> img(uz(source->hdim() + 1), std::vector<std::vector<BiRef>>(uz(source->vdim() + 1)));
  for (int p = 0; p <= k.dimension(); ++p)
    for (int q = 0; q <= l.dimension(); ++q)
      for (int a = 0; a < k.cell_count(p); ++a)
        for (int b = 0; b < l.cell_count(q); ++b) {
          const SimplexRef fa = f.image({p, a});
          const SimplexRef gb = g.image({q, b});
          img[uz(p)][uz(q)].push_back(
              BiRef{fa.degeneracy, gb.degeneracy, {fa.cell.dim, gb.cell.dim, fa.cell.index * l2.cell_count(gb.cell.dim) + gb.cell.index}});
        }
  return BisimplicialMap(source, target, std::move(img));
}

BiSubobject bisubobject(const BSetPtr& x, const std::function<bool(BiCellId)>& keep) {
  BisimplicialSet out;
  BiSubobject s;
  s.index.assign(uz(x->hdim() + 1), std::vector<std::vector<int>>(uz(x->vdim() + 1)));
  auto translate = [&](BiRef r) {
    const int i = s.index[uz(r.cell.p)][uz(r.cell.q)][uz(r.cell.index)];
    if (i < 0) throw std::invalid_argument("kept cells are not closed under faces");
    r.cell.index = i;
    return r;
  };
  std::vector<std::vector<std::vector<BiRef>>> img(s.index.size(), std::vector<std::vector<BiRef>>(uz(x->vdim() + 1)));
  for (const BiCellId& c : x->cells()) {
    auto& slot = s.index[uz(c.p)][uz(c.q)];
    slot.resize(uz(x->cell_count(c.p, c.q)), -1);
    if (!keep(c)) continue;
    std::vector<BiRef> hf, vf;
    for (const BiRef& f : x->hfaces(c)) hf.push_back(translate(f));
    for (const BiRef& f : x->vfaces(c)) vf.push_back(translate(f));
    slot[uz(c.index)] = out.add_cell(c.p, c.q, std::move(hf), std::move(vf), x->label(c));
  }
  out.htruncation = x->htruncation;
  out.vtruncation = x->vtruncation;
  s.object = share(std::move(out));
  std::vector<std::vector<std::vector<BiRef>>> inc(uz(s.object->hdim() + 1), std::vector<std::vector<BiRef>>(uz(s.object->vdim() + 1)));
  for (const BiCellId& c : x->cells())
    if (s.index[uz(c.p)][uz(c.q)][uz(c.index)] >= 0) inc[uz(c.p)][uz(c.q)].push_back(BiRef::of(c));
  s.inclusion = BisimplicialMap(s.object, x, std::move(inc));
  return s;
}

BiPushout pushout_of_monos(const BisimplicialMap& f, const BisimplicialMap& g) {
  if (!is_mono(f) || !is_mono(g)) throw std::invalid_argument("pushout_of_monos needs monomorphisms");
  const BisimplicialSet& b = *f.target();
  const BisimplicialSet& c = *g.target();
  const BisimplicialSet& a = *f.source();
  const int hp = std::max(b.hdim(), c.hdim()), vq = std::max(b.vdim(), c.vdim());
  // C cells hit by g, mapped to the B cell f(g^-1(.)).
  std::map<BiCellId, BiCellId> via;
  for (const BiCellId& x : a.cells()) via[g.image(x).cell] = f.image(x).cell;
  std::map<BiCellId, BiCellId> bmap, cmap;
  BisimplicialSet out;
  auto tr = [](const std::map<BiCellId, BiCellId>& m, BiRef r) {
    r.cell = m.at(r.cell);
    return r;
  };
  for (int p = 0; p <= hp; ++p)
    for (int q = 0; q <= vq; ++q) {
      for (int i = 0; i < b.cell_count(p, q); ++i) {
        const BiCellId x{p, q, i};
        std::vector<BiRef> hf, vf;
        for (const BiRef& r : b.hfaces(x)) hf.push_back(tr(bmap, r));
        for (const BiRef& r : b.vfaces(x)) vf.push_back(tr(bmap, r));
        bmap[x] = {p, q, out.add_cell(p, q, std::move(hf), std::move(vf), b.label(x))};
      }
      for (int i = 0; i < c.cell_count(p, q); ++i) {
        const BiCellId x{p, q, i};
        auto it = via.find(x);
        if (it != via.end()) {
          cmap[x] = bmap.at(it->second);
          continue;
        }
        std::vector<BiRef> hf, vf;
        for (const BiRef& r : c.hfaces(x)) hf.push_back(tr(cmap, r));
        for (const BiRef& r : c.vfaces(x)) vf.push_back(tr(cmap, r));
        cmap[x] = {p, q, out.add_cell(p, q, std::move(hf), std::move(vf), c.label(x))};
      }
    }
  BiPushout po;
  po.object = share(std::move(out));
  auto leg = [&](const BSetPtr& src, const std::map<BiCellId, BiCellId>& m) {
    std::vector<std::vector<std::vector<BiRef>>> img(uz(src->hdim() + 1), std::vector<std::vector<BiRef>>(uz(src->vdim() + 1)));
    for (const BiCellId& x : src->cells()) img[uz(x.p)][uz(x.q)].push_back(BiRef::of(m.at(x)));
    return BisimplicialMap(src, po.object, std::move(img));
  };
  po.left = leg(f.target(), bmap);
  po.right = leg(g.target(), cmap);
  return po;
}

BiUnion subobject_union(const BisimplicialMap& a, const BisimplicialMap& b) {
  if (!is_mono(a) || !is_mono(b)) throw std::invalid_argument("union of subobjects needs monomorphisms");
  const BSetPtr& z = a.target();
  std::map<BiCellId, BiCellId> in_a, in_b;  // Z cell -> preimage
  for (const BiCellId& x : a.source()->cells()) in_a[a.image(x).cell] = x;
  for (const BiCellId& x : b.source()->cells()) in_b[b.image(x).cell] = x;
  const BiSubobject inter = bisubobject(z, [&](BiCellId c) { return in_a.count(c) && in_b.count(c); });
  auto restrict_to = [&](const BSetPtr& target, const std::map<BiCellId, BiCellId>& pre) {
    const BisimplicialSet& s = *inter.object;
    std::vector<std::vector<std::vector<BiRef>>> img(uz(s.hdim() + 1), std::vector<std::vector<BiRef>>(uz(s.vdim() + 1)));
    for (const BiCellId& x : s.cells()) img[uz(x.p)][uz(x.q)].push_back(BiRef::of(pre.at(inter.inclusion.image(x).cell)));
    return BisimplicialMap(inter.object, target, std::move(img));
  };
  const BiPushout po = pushout_of_monos(restrict_to(a.source(), in_a), restrict_to(b.source(), in_b));
  std::vector<std::vector<std::vector<BiRef>>> img(uz(po.object->hdim() + 1), std::vector<std::vector<BiRef>>(uz(po.object->vdim() + 1)));
  for (auto& row : img)
    for (std::size_t q = 0; q < row.size(); ++q) row[q].resize(uz(po.object->cell_count(static_cast<int>(&row - img.data()), static_cast<int>(q))));
  for (const BiCellId& x : a.source()->cells()) {
    const BiCellId t = po.left.image(x).cell;
    img[uz(t.p)][uz(t.q)][uz(t.index)] = a.image(x);
  }
  for (const BiCellId& x : b.source()->cells()) {
    const BiCellId t = po.right.image(x).cell;
    img[uz(t.p)][uz(t.q)][uz(t.index)] = b.image(x);
  }
  BiUnion u{po.object, BisimplicialMap(po.object, z, std::move(img))};
  return u;
}

SimplexRef VerticalSlice::simplex(const BiRef& x) const {
  if (x.hdim() != k) throw std::invalid_argument("bisimplex not in this horizontal degree");
  auto it = lookup->find(BiRef{x.h, 0, x.cell});
  if (it == lookup->end()) throw std::out_of_range("bisimplex not in slice");
  return SimplexRef{x.v, it->second};
}

VerticalSlice vertical_slice(const BisimplicialSet& x, int k) {
  if (k < 0) throw std::out_of_range("slice degree must be >= 0");
  VerticalSlice vs;
  vs.k = k;
  auto lookup = std::make_shared<std::unordered_map<BiRef, CellId, BiRefHash>>();
  SimplicialSet out;
  for (int q = 0; q <= x.vdim(); ++q) {
    vs.bisimplex.emplace_back();
    for (int p = 0; p <= std::min(k, x.hdim()); ++p) {
      const auto masks = surjection_masks(k, p);
      for (int c = 0; c < x.cell_count(p, q); ++c)
        for (DegeneracyMask h : masks) {
          const BiRef r{h, 0, {p, q, c}};
          std::vector<SimplexRef> faces;
          for (int i = 0; q >= 1 && i <= q; ++i) {
            const BiRef f = x.vface(r, i);
            faces.push_back(SimplexRef{f.v, lookup->at(BiRef{f.h, 0, f.cell})});
          }
          const int id = out.add_cell(q, std::move(faces), x.label({p, q, c}));
          lookup->emplace(r, CellId{q, id});
          vs.bisimplex.back().push_back(r);
        }
    }
  }
  out.truncation = x.vtruncation;
  vs.object = share(std::move(out));
  vs.lookup = std::move(lookup);
  return vs;
}

SimplicialMap horizontal_operator(const BisimplicialSet& x, const VerticalSlice& from, const VerticalSlice& to, const Monotone& theta) {
  if (theta.target() != from.k || theta.source() != to.k) throw std::invalid_argument("operator does not match slice degrees");
  const SimplicialSet& s = *from.object;
  std::vector<std::vector<SimplexRef>> img(uz(s.dimension() + 1));
  for (int q = 0; q <= s.dimension(); ++q)
    for (int c = 0; c < s.cell_count(q); ++c)
      img[uz(q)].push_back(to.simplex(x.apply(theta, Monotone::identity(q), from.bisimplex[uz(q)][uz(c)])));
  return SimplicialMap(from.object, to.object, std::move(img));
}

SimplicialSet diagonal(const BisimplicialSet& x) {
  SimplicialSet out;
  const int top = x.hdim() + x.vdim();
  std::unordered_map<BiRef, int, BiRefHash> idx;
  for (int n = 0; n <= top; ++n)
    for (int p = 0; p <= std::min(n, x.hdim()); ++p)
      for (int q = std::max(0, n - p); q <= std::min(n, x.vdim()); ++q) {
        const auto hm = surjection_masks(n, p);
        const auto vm = surjection_masks(n, q);
        for (int c = 0; c < x.cell_count(p, q); ++c)
          for (DegeneracyMask h : hm)
            for (DegeneracyMask v : vm) {
              if (h & v) continue;
              const BiRef r{h, v, {p, q, c}};
              std::vector<SimplexRef> faces;
              for (int i = 0; n >= 1 && i <= n; ++i) {
                const BiRef f = x.apply(Monotone::coface(n, i), Monotone::coface(n, i), r);
                const DegeneracyMask common = f.h & f.v;
                const BiRef key{quotient_mask(n - 1, f.h, common), quotient_mask(n - 1, f.v, common), f.cell};
                faces.push_back(SimplexRef{common, {key.hdim(), idx.at(key)}});
              }
              idx.emplace(r, out.add_cell(n, std::move(faces)));
            }
      }
  if (x.htruncation || x.vtruncation) {
    Truncation t{top, true};
    for (const auto& tr : {x.htruncation, x.vtruncation})
      if (tr) {
        t.bound = std::min(t.bound, tr->bound);
        t.exact = t.exact && tr->exact;
      }
    out.truncation = t;
  }
  return out;
}

BisimplicialSet generator_F(int k) { return box_product(standard(k), point()); }

BisimplicialSet generator_Fhat(int k) { return box_product(boundary(k), point()); }

SimplicialSet spine(int n) {
  return simplex_subcomplex(n, [](std::uint32_t s) {
    const int c = std::popcount(s);
    return c == 1 || (c == 2 && (s & (s >> 1)) != 0);
  });
}

GeneratorG generator_G(int n) {
  auto sp = share(spine(n));
  auto dn = share(standard(n));
  auto pt = share(point());
  GeneratorG g;
  g.object = share(box_product(*sp, *pt));
  g.ambient = share(box_product(*dn, *pt));
  g.inclusion = box_map(g.object, g.ambient, simplex_subcomplex_inclusion(sp, n), SimplicialMap::identity(pt));
  return g;
}

}  // namespace segal
