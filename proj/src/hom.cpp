#include "segal/hom.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "segal/limits.hpp"

namespace segal {

MapSearch::MapSearch(const SimplicialSet& source, const SimplexTable& target) : source_(source), target_(target) {
  if (source.dimension() > target.max_dim()) throw std::invalid_argument("target table below source dimension");
  assign_.resize(static_cast<std::size_t>(source.dimension() + 1));
  fixed_.resize(assign_.size());
  for (int n = 0; n <= source.dimension(); ++n) {
    assign_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(source.cell_count(n)), -1);
    fixed_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(source.cell_count(n)), -1);
    for (int c = 0; c < source.cell_count(n); ++c) order_.push_back({n, c});
  }
  cofaces_.resize(assign_.size());
  for (int n = 0; n <= source.dimension(); ++n)
    cofaces_[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(source.cell_count(n)));
  for (int n = 1; n <= source.dimension(); ++n)
    for (int c = 0; c < source.cell_count(n); ++c)
      for (const SimplexRef& f : source.faces({n, c})) {
        auto& w = cofaces_[static_cast<std::size_t>(f.cell.dim)][static_cast<std::size_t>(f.cell.index)];
        if (w.empty() || w.back() != CellId{n, c}) w.push_back({n, c});
      }
}

bool MapSearch::cofaces_feasible(CellId c) const {
  // One step of lookahead: every coface whose boundary is now fully assigned
  // must still have a candidate.
  for (const CellId& e : cofaces_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)]) {
    const auto& faces = source_.faces(e);
    std::vector<int> key;
    key.reserve(faces.size());
    for (const SimplexRef& f : faces) {
      if (assign_[static_cast<std::size_t>(f.cell.dim)][static_cast<std::size_t>(f.cell.index)] < 0) break;
      key.push_back(face_image(f));
    }
    if (key.size() != faces.size()) continue;
    const auto& cands = target_.with_boundary(e.dim, key);
    if (cands.empty()) return false;
    const int forced = fixed_[static_cast<std::size_t>(e.dim)][static_cast<std::size_t>(e.index)];
    if (forced >= 0 && std::find(cands.begin(), cands.end(), forced) == cands.end()) return false;
  }
  return true;
}

void MapSearch::fix(CellId c, const SimplexRef& image) {
  if (image.dim() != c.dim) throw std::invalid_argument("fixed image has the wrong dimension");
  const int idx = target_.index_of(image);
  if (idx < 0) throw std::invalid_argument("fixed image not in target table");
  fixed_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)] = idx;
}

int MapSearch::face_image(const SimplexRef& face) const {
  const int a = assign_[static_cast<std::size_t>(face.cell.dim)][static_cast<std::size_t>(face.cell.index)];
  return target_.degenerate(face.cell.dim, a, face.degeneracy);
}

bool MapSearch::step(std::size_t pos, const std::function<bool(const Assignment&)>& visit) {
  if (pos == order_.size()) {
    if (!visit(assign_)) stop_ = true;
    return !stop_;
  }
  const CellId c = order_[pos];
  int& slot = assign_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)];
  const int forced = fixed_[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)];
  auto attempt = [&](int cand) {
    if (filter_ && !filter_(c, cand)) return true;
    slot = cand;
    if (!cofaces_feasible(c)) {
      slot = -1;
      return true;
    }
    const bool go_on = step(pos + 1, visit);
    slot = -1;
    return go_on;
  };
  if (c.dim == 0) {
    if (forced >= 0) return attempt(forced);
    for (int v = 0; v < target_.size(0); ++v)
      if (!attempt(v)) return false;
    return true;
  }
  std::vector<int> key(static_cast<std::size_t>(c.dim + 1));
  const auto& faces = source_.faces(c);
  for (int i = 0; i <= c.dim; ++i) key[static_cast<std::size_t>(i)] = face_image(faces[static_cast<std::size_t>(i)]);
  const std::vector<int>& cands = target_.with_boundary(c.dim, key);
  if (forced >= 0) {
    if (std::find(cands.begin(), cands.end(), forced) == cands.end()) return true;
    return attempt(forced);
  }
  for (int cand : cands)
    if (!attempt(cand)) return false;
  return true;
}

void MapSearch::run(const std::function<bool(const Assignment&)>& visit) {
  stop_ = false;
  step(0, visit);
}

std::uint64_t MapSearch::count() {
  std::uint64_t n = 0;
  run([&](const Assignment&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<MapSearch::Assignment> MapSearch::first() {
  std::optional<Assignment> out;
  run([&](const Assignment& a) {
    out = a;
    return false;
  });
  return out;
}

SimplicialMap MapSearch::to_map(const Assignment& a, SSetPtr source, SSetPtr target) const {
  std::vector<std::vector<SimplexRef>> img(a.size());
  for (std::size_t n = 0; n < a.size(); ++n)
    for (int idx : a[n]) img[n].push_back(target_.simplex(static_cast<int>(n), idx));
  return SimplicialMap(std::move(source), std::move(target), std::move(img));
}

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& k, const SSetPtr& x) {
  std::vector<SimplicialMap> out;
  if (k->empty()) {
    out.emplace_back(k, x, std::vector<std::vector<SimplexRef>>{});
    return out;
  }
  const SimplexTable table(*x, std::max(k->dimension(), 0));
  MapSearch search(*k, table);
  search.run([&](const MapSearch::Assignment& a) {
    out.push_back(search.to_map(a, k, x));
    return true;
  });
  return out;
}

std::uint64_t count_maps(const SimplicialSet& k, const SimplicialSet& x) {
  if (k.empty()) return 1;
  const SimplexTable table(x, k.dimension());
  MapSearch search(k, table);
  return search.count();
}

Leveled from_levels(const LevelData& data) {
  SimplicialSet out;
  Leveled res;
  const int top = static_cast<int>(data.counts.size()) - 1;
  res.normal_form.resize(data.counts.size());
  for (int n = 0; n <= top; ++n) {
    auto& nf = res.normal_form[static_cast<std::size_t>(n)];
    nf.resize(static_cast<std::size_t>(data.counts[static_cast<std::size_t>(n)]));
    for (int x = 0; x < data.counts[static_cast<std::size_t>(n)]; ++x) {
      int degenerate_at = -1;
      for (int j = 0; j < n && degenerate_at < 0; ++j)
        if (data.degeneracy(n - 1, j, data.face(n, j, x)) == x) degenerate_at = j;
      if (degenerate_at >= 0) {
        const SimplexRef& base =
            res.normal_form[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(data.face(n, degenerate_at, x))];
        nf[static_cast<std::size_t>(x)] =
            SimplexRef{add_degeneracy(n - 1, base.degeneracy, degenerate_at), base.cell};
        continue;
      }
      std::vector<SimplexRef> faces;
      if (n > 0)
        for (int i = 0; i <= n; ++i)
          faces.push_back(res.normal_form[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(data.face(n, i, x))]);
      nf[static_cast<std::size_t>(x)] = SimplexRef::of({n, out.add_cell(n, std::move(faces))});
    }
  }
  res.object = share(std::move(out));
  return res;
}

namespace {

std::vector<int> map_key(const SimplicialMap& f) {
  std::vector<int> key;
  for (const auto& level : f.images())
    for (const SimplexRef& r : level) {
      key.push_back(static_cast<int>(r.degeneracy));
      key.push_back(r.cell.dim);
      key.push_back(r.cell.index);
    }
  return key;
}

}  // namespace

MappingSpace mapping_space(const SSetPtr& k, const SSetPtr& x, int max_level) {
  if (max_level < 0) throw std::out_of_range("mapping space needs a level bound >= 0");
  MappingSpace ms;
  std::vector<SSetPtr> simplices;
  std::vector<Product> products;
  std::vector<std::unordered_map<std::vector<int>, int, IntVectorHash>> lookup;
  for (int n = 0; n <= max_level; ++n) {
    simplices.push_back(share(standard(n)));
    products.push_back(product(k, simplices.back()));
    ms.maps.push_back(enumerate_maps(products.back().object, x));
    lookup.emplace_back();
    for (std::size_t i = 0; i < ms.maps.back().size(); ++i) lookup.back().emplace(map_key(ms.maps.back()[i]), static_cast<int>(i));
  }
  const SimplicialMap id_k = SimplicialMap::identity(k);
  // Structure maps K x Delta^m -> K x Delta^n for the cofaces and codegeneracies.
  std::vector<std::vector<SimplicialMap>> coface(static_cast<std::size_t>(max_level + 1));
  std::vector<std::vector<SimplicialMap>> codegen(static_cast<std::size_t>(max_level + 1));
  for (int n = 1; n <= max_level; ++n)
    for (int i = 0; i <= n; ++i) {
      const auto theta = simplex_map(simplices[static_cast<std::size_t>(n - 1)], simplices[static_cast<std::size_t>(n)], Monotone::coface(n, i));
      coface[static_cast<std::size_t>(n)].push_back(
          product_map(products[static_cast<std::size_t>(n - 1)], products[static_cast<std::size_t>(n)], id_k, theta));
    }
  for (int n = 0; n < max_level; ++n)
    for (int j = 0; j <= n; ++j) {
      const auto theta = simplex_map(simplices[static_cast<std::size_t>(n + 1)], simplices[static_cast<std::size_t>(n)], Monotone::codegeneracy(n, j));
      codegen[static_cast<std::size_t>(n)].push_back(
          product_map(products[static_cast<std::size_t>(n + 1)], products[static_cast<std::size_t>(n)], id_k, theta));
    }
  // Memoised face/degeneracy tables.
  std::vector<std::vector<int>> face_tab(static_cast<std::size_t>(max_level + 1));
  std::vector<std::vector<int>> degen_tab(static_cast<std::size_t>(max_level + 1));
  for (int n = 1; n <= max_level; ++n)
    for (const SimplicialMap& f : ms.maps[static_cast<std::size_t>(n)])
      for (int i = 0; i <= n; ++i)
        face_tab[static_cast<std::size_t>(n)].push_back(
            lookup[static_cast<std::size_t>(n - 1)].at(map_key(compose(f, coface[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]))));
  for (int n = 0; n < max_level; ++n)
    for (const SimplicialMap& f : ms.maps[static_cast<std::size_t>(n)])
      for (int j = 0; j <= n; ++j)
        degen_tab[static_cast<std::size_t>(n)].push_back(
            lookup[static_cast<std::size_t>(n + 1)].at(map_key(compose(f, codegen[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]))));
  LevelData data;
  for (const auto& level : ms.maps) data.counts.push_back(static_cast<int>(level.size()));
  data.face = [&](int n, int i, int v) { return face_tab[static_cast<std::size_t>(n)][static_cast<std::size_t>(v * (n + 1) + i)]; };
  data.degeneracy = [&](int n, int j, int v) { return degen_tab[static_cast<std::size_t>(n)][static_cast<std::size_t>(v * (n + 1) + j)]; };
  Leveled lv = from_levels(data);
  SimplicialSet obj = *lv.object;
  obj.truncation = Truncation{max_level, k->empty()};
  obj.coskeletal = x->coskeletal;
  ms.object = share(std::move(obj));
  ms.normal_form = std::move(lv.normal_form);
  return ms;
}

}  // namespace segal
