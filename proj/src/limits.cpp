#include "segal/limits.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace segal {

struct ProductKey {
  CellId a;
  CellId b;
  DegeneracyMask sa = 0;
  DegeneracyMask sb = 0;
  bool operator==(const ProductKey&) const = default;
};

struct ProductKeyHash {
  std::size_t operator()(const ProductKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.a.dim) * 31 + static_cast<std::uint64_t>(k.a.index);
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k.b.dim) * 31 + static_cast<std::uint64_t>(k.b.index);
    h = h * 0x9E3779B97F4A7C15ull + k.sa;
    h = h * 0x9E3779B97F4A7C15ull + k.sb;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct ProductIndex {
  std::unordered_map<ProductKey, CellId, ProductKeyHash> cells;
};

SimplexRef Product::pair(const SimplexRef& x, const SimplexRef& y) const {
  const int m = x.dim();
  if (y.dim() != m) throw std::invalid_argument("product pair of simplices of different dimension");
  const DegeneracyMask common = x.degeneracy & y.degeneracy;
  const ProductKey key{x.cell, y.cell, quotient_mask(m, x.degeneracy, common), quotient_mask(m, y.degeneracy, common)};
  auto it = index->cells.find(key);
  if (it == index->cells.end()) throw std::out_of_range("pair lies above the product truncation");
  return SimplexRef{common, it->second};
}

Product product(const SSetPtr& x, const SSetPtr& y, std::optional<int> max_dim) {
  const int top = (x->empty() || y->empty()) ? -1 : x->dimension() + y->dimension();
  const int bound = max_dim ? std::min(*max_dim, top) : top;
  auto idx = std::make_shared<ProductIndex>();
  SimplicialSet out;
  std::vector<std::vector<SimplexRef>> first(static_cast<std::size_t>(std::max(bound + 1, 0)));
  std::vector<std::vector<SimplexRef>> second(first.size());
  Product p;
  p.index = idx;
  for (int n = 0; n <= bound; ++n) {
    for (int da = 0; da <= std::min(n, x->dimension()); ++da)
      for (int db = std::max(0, n - da); db <= std::min(n, y->dimension()); ++db) {
        // (n - da) + (n - db) <= n repeats, disjoint
        const auto ma = surjection_masks(n, da);
        const auto mb = surjection_masks(n, db);
        for (int a = 0; a < x->cell_count(da); ++a)
          for (int b = 0; b < y->cell_count(db); ++b)
            for (DegeneracyMask sa : ma)
              for (DegeneracyMask sb : mb) {
                if (sa & sb) continue;
                const SimplexRef xa{sa, {da, a}};
                const SimplexRef yb{sb, {db, b}};
                std::vector<SimplexRef> faces;
                if (n > 0)
                  for (int i = 0; i <= n; ++i) faces.push_back(p.pair(x->face(xa, i), y->face(yb, i)));
                const int id = out.add_cell(n, std::move(faces));
                idx->cells.emplace(ProductKey{{da, a}, {db, b}, sa, sb}, CellId{n, id});
                first[static_cast<std::size_t>(n)].push_back(xa);
                second[static_cast<std::size_t>(n)].push_back(yb);
              }
      }
  }
  if (x->truncation || y->truncation || (max_dim && *max_dim < top)) {
    Truncation t{bound, true};
    for (const auto* s : {x.get(), y.get()})
      if (s->truncation) {
        t.bound = std::min(t.bound, s->truncation->bound);
        t.exact = t.exact && s->truncation->exact;
      }
    if (max_dim && *max_dim < top) t.exact = false;
    out.truncation = t;
  }
  p.object = share(std::move(out));
  p.first = SimplicialMap(p.object, x, std::move(first));
  p.second = SimplicialMap(p.object, y, std::move(second));
  return p;
}

SimplicialMap product_lift(const Product& p, const SimplicialMap& h, const SimplicialMap& k) {
  if (h.source() != k.source() && !(*h.source() == *k.source()))
    throw std::invalid_argument("product lift needs maps with a common source");
  const SimplicialSet& w = *h.source();
  std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(w.dimension() + 1));
  for (int n = 0; n <= w.dimension(); ++n)
    for (int c = 0; c < w.cell_count(n); ++c)
      img[static_cast<std::size_t>(n)].push_back(p.pair(h.image({n, c}), k.image({n, c})));
  return SimplicialMap(h.source(), p.object, std::move(img));
}

SimplicialMap product_map(const Product& source, const Product& target, const SimplicialMap& f, const SimplicialMap& g) {
  return product_lift(target, compose(f, source.first), compose(g, source.second));
}

FiberProduct fiber_product(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.target() != g.target() && !(*f.target() == *g.target()))
    throw std::invalid_argument("fiber product of maps with different codomains");
  FiberProduct fp;
  fp.ambient = product(f.source(), g.source());
  const Product& p = fp.ambient;
  fp.sub = subcomplex(p.object, [&](CellId c) { return f(p.first.image(c)) == g(p.second.image(c)); });
  fp.object = fp.sub.object;
  fp.first = compose(p.first, fp.sub.inclusion);
  fp.second = compose(p.second, fp.sub.inclusion);
  return fp;
}

SimplicialMap fiber_product_lift(const FiberProduct& p, const SimplicialMap& h, const SimplicialMap& k) {
  const SimplicialMap into = product_lift(p.ambient, h, k);
  const SimplicialSet& w = *h.source();
  std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(w.dimension() + 1));
  for (int n = 0; n <= w.dimension(); ++n)
    for (int c = 0; c < w.cell_count(n); ++c) {
      SimplexRef r = into.image({n, c});
      const int sub_idx = p.sub.index[static_cast<std::size_t>(r.cell.dim)][static_cast<std::size_t>(r.cell.index)];
      if (sub_idx < 0) throw std::invalid_argument("maps do not agree over the common codomain");
      r.cell.index = sub_idx;
      img[static_cast<std::size_t>(n)].push_back(r);
    }
  return SimplicialMap(h.source(), p.object, std::move(img));
}

}  // namespace segal
