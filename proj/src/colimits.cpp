#include "segal/colimits.hpp"

#include <numeric>
#include <stdexcept>

#include "segal/simplex_table.hpp"

namespace segal {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // Smaller index wins so roots are deterministic.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

bool same_object(const SSetPtr& a, const SSetPtr& b) { return a == b || *a == *b; }

}  // namespace

Quotient quotient(const SSetPtr& b_in, const std::vector<Relation>& relations, std::optional<int> max_dim) {
  SSetPtr b = b_in;
  if (max_dim && b->dimension() > *max_dim) b = skeleton(b_in, *max_dim).object;
  int top = b->dimension();
  if (!max_dim)
    for (const auto& [u, v] : relations) top = std::max(top, u.dim());
  else
    top = std::max(top, std::min(*max_dim, [&] {
                     int t = -1;
                     for (const auto& r : relations) t = std::max(t, r.first.dim());
                     return t;
                   }()));
  Quotient q;
  if (top < 0) {
    q.object = share(SimplicialSet{});
    q.projection = SimplicialMap(b, q.object, {});
    return q;
  }
  const SimplexTable table(*b, top);
  std::vector<UnionFind> uf;
  for (int m = 0; m <= top; ++m) uf.emplace_back(table.size(m));
  std::vector<std::vector<std::vector<Monotone>>> maps_cache;
  auto monotone_maps = [&](int m, int p) -> const std::vector<Monotone>& {
    if (static_cast<int>(maps_cache.size()) <= p) maps_cache.resize(static_cast<std::size_t>(p + 1));
    auto& row = maps_cache[static_cast<std::size_t>(p)];
    if (row.empty()) row.resize(static_cast<std::size_t>(top + 1));
    auto& cell = row[static_cast<std::size_t>(m)];
    if (cell.empty()) cell = all_monotone(m, p);
    return cell;
  };
  for (const auto& [u, v] : relations) {
    const int p = u.dim();
    if (v.dim() != p) throw std::invalid_argument("relation between simplices of different dimension");
    for (int m = 0; m <= top; ++m)
      for (const Monotone& theta : monotone_maps(m, p)) {
        const int a = table.index_of(b->apply(theta, u));
        const int c = table.index_of(b->apply(theta, v));
        uf[static_cast<std::size_t>(m)].unite(a, c);
      }
  }
  // Per class: whether it contains a degenerate simplex (and which).
  SimplicialSet out;
  std::vector<std::vector<SimplexRef>> cell_nf(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<int>> class_cell(static_cast<std::size_t>(top + 1));
  q.representative.resize(static_cast<std::size_t>(top + 1));
  for (int m = 0; m <= top; ++m) {
    const int sz = table.size(m);
    std::vector<int> degenerate_member(static_cast<std::size_t>(sz), -1);
    for (int s = 0; s < sz; ++s) {
      const int r = uf[static_cast<std::size_t>(m)].find(s);
      if (!table.simplex(m, s).is_nondegenerate() && degenerate_member[static_cast<std::size_t>(r)] < 0)
        degenerate_member[static_cast<std::size_t>(r)] = s;
    }
    auto& nf = cell_nf[static_cast<std::size_t>(m)];
    nf.resize(static_cast<std::size_t>(b->cell_count(m)));
    class_cell[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(sz), -1);
    // Nondegenerate cells of level m sit in the table in B-cell order.
    for (int s = 0; s < sz; ++s) {
      const SimplexRef& x = table.simplex(m, s);
      if (!x.is_nondegenerate() || x.cell.dim != m) continue;
      const int r = uf[static_cast<std::size_t>(m)].find(s);
      const int deg = degenerate_member[static_cast<std::size_t>(r)];
      if (deg >= 0) {
        const SimplexRef& z = table.simplex(m, deg);
        const SimplexRef& base = cell_nf[static_cast<std::size_t>(z.cell.dim)][static_cast<std::size_t>(z.cell.index)];
        nf[static_cast<std::size_t>(x.cell.index)] =
            SimplexRef{compose_surjections(m, z.degeneracy, base.degeneracy), base.cell};
        continue;
      }
      int& cell = class_cell[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)];
      if (cell < 0) {
        std::vector<SimplexRef> faces;
        if (m > 0)
          for (const SimplexRef& f : b->faces(x.cell)) {
            const SimplexRef& base = cell_nf[static_cast<std::size_t>(f.cell.dim)][static_cast<std::size_t>(f.cell.index)];
            faces.push_back(SimplexRef{compose_surjections(m - 1, f.degeneracy, base.degeneracy), base.cell});
          }
        cell = out.add_cell(m, std::move(faces), b->label(x.cell));
        q.representative[static_cast<std::size_t>(m)].push_back(x.cell);
      }
      nf[static_cast<std::size_t>(x.cell.index)] = SimplexRef::of({m, cell});
    }
  }
  q.representative.resize(static_cast<std::size_t>(out.dimension() + 1));
  cell_nf.resize(static_cast<std::size_t>(b->dimension() + 1));
  out.truncation = b->truncation;
  q.object = share(std::move(out));
  q.projection = SimplicialMap(b, q.object, std::move(cell_nf));
  return q;
}

Coproduct disjoint_union(const std::vector<SSetPtr>& parts) {
  SimplicialSet out;
  int top = -1;
  for (const auto& p : parts) top = std::max(top, p->dimension());
  std::vector<std::vector<int>> offset(parts.size(), std::vector<int>(static_cast<std::size_t>(top + 1), 0));
  std::vector<int> running(static_cast<std::size_t>(top + 1), 0);
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (int n = 0; n <= top; ++n) {
      offset[k][static_cast<std::size_t>(n)] = running[static_cast<std::size_t>(n)];
      running[static_cast<std::size_t>(n)] += parts[k]->cell_count(n);
    }
  auto shift = [&](std::size_t k, SimplexRef r) {
    r.cell.index += offset[k][static_cast<std::size_t>(r.cell.dim)];
    return r;
  };
  for (int n = 0; n <= top; ++n)
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (int c = 0; c < parts[k]->cell_count(n); ++c) {
        std::vector<SimplexRef> faces;
        for (const SimplexRef& f : parts[k]->faces({n, c})) faces.push_back(shift(k, f));
        out.add_cell(n, std::move(faces), parts[k]->label({n, c}));
      }
  for (const auto& p : parts)
    if (p->truncation) {
      Truncation t = out.truncation.value_or(*p->truncation);
      t.bound = std::min(t.bound, p->truncation->bound);
      t.exact = t.exact && p->truncation->exact;
      out.truncation = t;
    }
  Coproduct cp;
  cp.object = share(std::move(out));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(parts[k]->dimension() + 1));
    for (int n = 0; n <= parts[k]->dimension(); ++n)
      for (int c = 0; c < parts[k]->cell_count(n); ++c) img[static_cast<std::size_t>(n)].push_back(shift(k, SimplexRef::of({n, c})));
    cp.injections.emplace_back(parts[k], cp.object, std::move(img));
  }
  return cp;
}

Pushout pushout(const SimplicialMap& f, const SimplicialMap& g, std::optional<int> max_dim) {
  if (!same_object(f.source(), g.source())) throw std::invalid_argument("pushout legs need a common source");
  const Coproduct u = disjoint_union({f.target(), g.target()});
  std::vector<Relation> rel;
  const SimplicialSet& a = *f.source();
  for (int n = 0; n <= a.dimension(); ++n)
    for (int c = 0; c < a.cell_count(n); ++c) rel.emplace_back(u.injections[0](f.image({n, c})), u.injections[1](g.image({n, c})));
  const Quotient q = quotient(u.object, rel, max_dim);
  Pushout p;
  p.object = q.object;
  auto restrict_to = [&](const SimplicialMap& inj) {
    const SimplicialSet& s = *inj.source();
    const int top = max_dim ? std::min(*max_dim, s.dimension()) : s.dimension();
    std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(s.dimension() + 1));
    for (int n = 0; n <= top; ++n)
      for (int c = 0; c < s.cell_count(n); ++c) img[static_cast<std::size_t>(n)].push_back(q.projection(inj.image({n, c})));
    if (top < s.dimension()) {
      // Cells above the bound have no image; callers asked for a truncation.
      return SimplicialMap(skeleton(inj.source(), top).object, q.object, {img.begin(), img.begin() + top + 1});
    }
    return SimplicialMap(inj.source(), q.object, std::move(img));
  };
  p.left = restrict_to(u.injections[0]);
  p.right = restrict_to(u.injections[1]);
  return p;
}

Coequalizer coequalizer(const SimplicialMap& f, const SimplicialMap& g, std::optional<int> max_dim) {
  if (!same_object(f.source(), g.source()) || !same_object(f.target(), g.target()))
    throw std::invalid_argument("coequalizer needs parallel maps");
  std::vector<Relation> rel;
  const SimplicialSet& a = *f.source();
  for (int n = 0; n <= a.dimension(); ++n)
    for (int c = 0; c < a.cell_count(n); ++c) rel.emplace_back(f.image({n, c}), g.image({n, c}));
  const Quotient q = quotient(f.target(), rel, max_dim);
  return Coequalizer{q.object, q.projection};
}

}  // namespace segal
