#include "segal/segal_space.hpp"

#include <bit>
#include <stdexcept>

namespace segal {

BisimplicialSet disc_nerve(const FiniteCategory& c, int max_dim) {
  const Nerve nv = nerve(c, max_dim);
  BisimplicialSet out = box_product(*nv.object, point());
  out.vtruncation.reset();
  return out;
}

GeneratorI generator_I(int max_dim) {
  GeneratorI g;
  g.object = share(disc_nerve(chaotic_groupoid(1), max_dim));
  g.point = share(generator_F(0));
  g.inclusion = BisimplicialMap(g.point, g.object, {{{BiRef::of({0, 0, 0})}}});
  return g;
}

SegalMap segal_map(const BisimplicialSet& x, int n) {
  if (n < 1) throw std::invalid_argument("segal_map needs n >= 1");
  SegalMap s;
  s.n = n;
  s.source = vertical_slice(x, n);
  s.edges = vertical_slice(x, 1);
  s.vertices = vertical_slice(x, 0);
  const SimplicialMap d0 = horizontal_operator(x, s.edges, s.vertices, Monotone::coface(1, 0));
  const SimplicialMap d1 = horizontal_operator(x, s.edges, s.vertices, Monotone::coface(1, 1));
  auto edge_of = [&](int t) { return horizontal_operator(x, s.source, s.edges, Monotone::edge(n, n - 1 - t, n - t)); };

  s.target = s.edges.object;
  s.factors = {SimplicialMap::identity(s.target)};
  s.comparison = edge_of(0);
  for (int t = 1; t < n; ++t) {
    const FiberProduct fp = fiber_product(compose(d1, s.factors.back()), d0);
    for (auto& f : s.factors) f = compose(f, fp.first);
    s.factors.push_back(fp.second);
    s.comparison = fiber_product_lift(fp, s.comparison, edge_of(t));
    s.target = fp.object;
  }
  return s;
}

bool comparison_is_spine_restriction(const BSetPtr& x, const SegalMap& s, int max_q) {
  const int n = s.n;
  const auto dn = share(standard(n));
  for (int q = 0; q <= max_q; ++q) {
    const auto shape = share(box_product(*dn, standard(q)));
    for (const BisimplicialMap& m : enumerate_bimaps(shape, x)) {
      // The top cell of Delta^n x~ Delta^q is the last one of its bidegree.
      const BiRef top = m.image({n, q, 0});
      const SimplexRef sx = s.source.simplex(top);
      const SimplexRef image = s.comparison(sx);
      for (int t = 0; t < n; ++t) {
        // Edge (n-1-t, n-t) of Delta^n, paired with the top cell of Delta^q.
        const std::uint32_t verts = (1u << (n - 1 - t)) | (1u << (n - t));
        int edge_index = -1;
        for (int e = 0; e < dn->cell_count(1); ++e) {
          const auto& f = dn->faces({1, e});
          if (((1u << f[0].cell.index) | (1u << f[1].cell.index)) == verts) edge_index = e;
        }
        const BiRef restricted = m.image({1, q, edge_index});
        if (s.factors[static_cast<std::size_t>(t)](image) != s.edges.simplex(restricted)) return false;
      }
    }
  }
  return true;
}

namespace {

BisimplicialMap sub_box(const BSetPtr& ambient, int h, const std::function<bool(std::uint32_t)>& hkeep, int v,
                        const std::function<bool(std::uint32_t)>& vkeep) {
  const auto hs = share(simplex_subcomplex(h, hkeep));
  const auto vs = share(simplex_subcomplex(v, vkeep));
  const auto obj = share(box_product(*hs, *vs));
  return box_map(obj, ambient, simplex_subcomplex_inclusion(hs, h), simplex_subcomplex_inclusion(vs, v));
}

}  // namespace

ReedyGenerators reedy_generators(int n, int k, std::optional<int> r) {
  if (n < 0 || k < 0) throw std::out_of_range("reedy_generators needs n, k >= 0");
  auto all = [](std::uint32_t) { return true; };
  auto bdry = [](int d) {
    const std::uint32_t full = (1u << (d + 1)) - 1;
    return std::function<bool(std::uint32_t)>([full](std::uint32_t s) { return s != full; });
  };
  ReedyGenerators g;
  {
    const auto ambient = share(box_product(standard(n), standard(k)));
    const BiUnion u = subobject_union(sub_box(ambient, n, bdry(n), k, all), sub_box(ambient, n, all, k, bdry(k)));
    g.cofibration = u.inclusion;
  }
  if (r) {
    if (n < 1 || *r < 0 || *r > n) throw std::out_of_range("horn index r out of range");
    const std::uint32_t full = (1u << (n + 1)) - 1;
    const std::uint32_t missing = full & ~(1u << *r);
    auto hornk = [=](std::uint32_t s) { return s != full && s != missing; };
    const auto ambient = share(box_product(standard(k), standard(n)));
    const BiUnion u = subobject_union(sub_box(ambient, k, bdry(k), n, all), sub_box(ambient, k, all, n, hornk));
    g.trivial_cofibration = u.inclusion;
  }
  return g;
}

}  // namespace segal
