#include "segal/presheaf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "segal/adjunction.hpp"
#include "segal/checkers.hpp"
#include "segal/colimits.hpp"
#include "segal/homology.hpp"
#include "segal/nerve.hpp"

namespace segal {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

std::string name_of(const FiniteCategory& c, int m) { return c.morphism_name(m); }

void validate_topology(const FiniteCategory& c, const Topology& t) {
  if (t.covering.empty()) return;
  if (t.covering.size() != uz(c.object_count())) throw std::invalid_argument("topology: one sieve list per object expected");
  for (int u = 0; u < c.object_count(); ++u)
    for (const auto& sieve : t.covering[uz(u)]) {
      for (int m : sieve) {
        if (m < 0 || m >= c.morphism_count() || c.target(m) != u) throw std::invalid_argument("topology: sieve member with wrong target");
        for (int k = 0; k < c.morphism_count(); ++k)
          if (c.target(k) == c.source(m) && !std::binary_search(sieve.begin(), sieve.end(), c.compose(m, k)))
            throw std::invalid_argument("topology: sieve not closed under precomposition");
      }
    }
}

}  // namespace

void validate(const CategoryPresheaf& a) {
  const FiniteCategory& c = a.index;
  if (a.sections.size() != uz(c.object_count())) throw std::invalid_argument("presheaf: one section per object expected");
  if (a.restrictions.size() != uz(c.morphism_count())) throw std::invalid_argument("presheaf: one restriction per morphism expected");
  for (int m = 0; m < c.morphism_count(); ++m) {
    const FunctorData& r = a.restrictions[uz(m)];
    if (!is_functor(a.sections[uz(c.target(m))], a.sections[uz(c.source(m))], r))
      throw std::invalid_argument("presheaf: restriction along " + name_of(c, m) + " is not a functor");
    if (c.is_identity(m) && r != identity_functor(a.sections[uz(c.source(m))]))
      throw std::invalid_argument("presheaf: restriction along " + name_of(c, m) + " is not the identity");
  }
  for (int b = 0; b < c.morphism_count(); ++b)
    for (int al = 0; al < c.morphism_count(); ++al) {
      if (c.target(al) != c.source(b)) continue;
      if (a.restrictions[uz(c.compose(b, al))] != compose_functors(a.restrictions[uz(al)], a.restrictions[uz(b)]))
        throw std::invalid_argument("presheaf: restriction along " + name_of(c, b) + " o " + name_of(c, al) + " is not the composite");
    }
  validate_topology(c, a.topology);
}

CategoryPresheaf constant_presheaf(const FiniteCategory& index, const FiniteCategory& value) {
  CategoryPresheaf a;
  a.index = index;
  a.sections.assign(uz(index.object_count()), value);
  a.restrictions.assign(uz(index.morphism_count()), identity_functor(value));
  return a;
}

void validate(const SSetPresheaf& x) {
  const FiniteCategory& c = x.index;
  if (x.sections.size() != uz(c.object_count())) throw std::invalid_argument("presheaf: one section per object expected");
  if (x.restrictions.size() != uz(c.morphism_count())) throw std::invalid_argument("presheaf: one restriction per morphism expected");
  auto same = [](const SSetPtr& a, const SSetPtr& b) { return a == b || *a == *b; };
  for (int m = 0; m < c.morphism_count(); ++m) {
    const SimplicialMap& r = x.restrictions[uz(m)];
    if (!same(r.source(), x.sections[uz(c.target(m))]) || !same(r.target(), x.sections[uz(c.source(m))]))
      throw std::invalid_argument("presheaf: restriction along " + name_of(c, m) + " has the wrong endpoints");
    if (c.is_identity(m) && r != SimplicialMap::identity(r.source()))
      throw std::invalid_argument("presheaf: restriction along " + name_of(c, m) + " is not the identity");
  }
  for (int b = 0; b < c.morphism_count(); ++b)
    for (int al = 0; al < c.morphism_count(); ++al) {
      if (c.target(al) != c.source(b) || c.is_identity(al) || c.is_identity(b)) continue;
      if (x.restrictions[uz(c.compose(b, al))] != compose(x.restrictions[uz(al)], x.restrictions[uz(b)]))
        throw std::invalid_argument("presheaf: restriction along " + name_of(c, b) + " o " + name_of(c, al) + " is not the composite");
    }
  validate_topology(c, x.topology);
}

SSetPresheaf nerve_presheaf(const CategoryPresheaf& a, int max_dim) {
  validate(a);
  SSetPresheaf out;
  out.index = a.index;
  out.topology = a.topology;
  std::vector<Nerve> nerves;
  for (const FiniteCategory& s : a.sections) {
    nerves.push_back(nerve(s, max_dim));
    out.sections.push_back(nerves.back().object);
  }
  for (int m = 0; m < a.index.morphism_count(); ++m)
    out.restrictions.push_back(nerve_map(nerves[uz(a.index.target(m))], nerves[uz(a.index.source(m))], a.restrictions[uz(m)]));
  return out;
}

int Grothendieck::object_of(int u, int x) const {
  const auto it = std::find(objects.begin(), objects.end(), std::make_pair(u, x));
  return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

int Grothendieck::morphism_of(int alpha, int f, int target) const {
  for (int m = 0; m < category.morphism_count(); ++m)
    if (morphisms[uz(m)] == std::make_pair(alpha, f) && category.target(m) == target) return m;
  return -1;
}

Grothendieck grothendieck(const CategoryPresheaf& a) {
  validate(a);
  const FiniteCategory& c = a.index;
  Grothendieck g;
  FiniteCategory& out = g.category;
  std::map<std::pair<int, int>, int> obj;
  for (int u = 0; u < c.object_count(); ++u)
    for (int x = 0; x < a.sections[uz(u)].object_count(); ++x) {
      obj[{u, x}] = out.add_object(c.object_name(u) + "." + a.sections[uz(u)].object_name(x));
      g.objects.emplace_back(u, x);
    }
  g.morphisms.resize(uz(out.morphism_count()));
  for (std::size_t o = 0; o < g.objects.size(); ++o) {
    const auto [u, x] = g.objects[o];
    g.morphisms[uz(out.identity(static_cast<int>(o)))] = {c.identity(u), a.sections[uz(u)].identity(x)};
  }
  // (alpha, f) alone does not fix the target when alpha^* identifies objects.
  std::map<std::tuple<int, int, int>, int> mor;
  for (std::size_t m = 0; m < g.morphisms.size(); ++m) mor[{g.morphisms[m].first, g.morphisms[m].second, out.target(static_cast<int>(m))}] = static_cast<int>(m);
  // (alpha, f) : (V, y) -> (U, x) with f : alpha^*(x) -> y in A(V).
  for (const auto& [vy, src] : obj)
    for (const auto& [ux, tgt] : obj)
      for (int alpha : c.hom(vy.first, ux.first)) {
        const FiniteCategory& av = a.sections[uz(vy.first)];
        const int ax = a.restrictions[uz(alpha)].objects[uz(ux.second)];
        for (int f : av.hom(ax, vy.second)) {
          if (mor.count({alpha, f, tgt})) continue;
          const int id = out.add_morphism(src, tgt, "(" + c.morphism_name(alpha) + "," + av.morphism_name(f) + ")");
          g.morphisms.emplace_back(alpha, f);
          mor[{alpha, f, tgt}] = id;
        }
      }
  // (alpha, f) o (gamma, g) = (alpha gamma, g . gamma^*(f))
  for (int p = 0; p < out.morphism_count(); ++p)
    for (int q = 0; q < out.morphism_count(); ++q) {
      if (out.target(q) != out.source(p) || out.is_identity(p) || out.is_identity(q)) continue;
      const auto [alpha, f] = g.morphisms[uz(p)];
      const auto [gamma, gm] = g.morphisms[uz(q)];
      const int w = c.source(gamma);
      const int gf = a.restrictions[uz(gamma)].morphisms[uz(f)];
      const int h = a.sections[uz(w)].compose(gm, gf);
      out.set_composite(p, q, mor.at({c.compose(alpha, gamma), h, out.target(p)}));
    }
  out.validate();
  for (int o = 0; o < out.object_count(); ++o) g.forgetful.objects.push_back(g.objects[uz(o)].first);
  for (int m = 0; m < out.morphism_count(); ++m) g.forgetful.morphisms.push_back(g.morphisms[uz(m)].first);
  if (!a.topology.covering.empty()) {
    g.topology.covering.resize(uz(out.object_count()));
    for (int o = 0; o < out.object_count(); ++o)
      for (const auto& s : a.topology.covering[uz(g.objects[uz(o)].first)]) {
        std::vector<int> sieve;
        for (int m = 0; m < out.morphism_count(); ++m)
          if (out.target(m) == o && std::binary_search(s.begin(), s.end(), g.morphisms[uz(m)].first)) sieve.push_back(m);
        g.topology.covering[uz(o)].push_back(std::move(sieve));
      }
  }
  return g;
}

int SimplexCategory::index_of(const Monotone& theta) const {
  for (int m : category.hom(theta.source(), theta.target()))
    if (maps[uz(m)] == theta) return m;
  throw std::out_of_range("monotone map outside the truncated simplex category");
}

SimplexCategory simplex_category(int max_dim) {
  if (max_dim < 0 || max_dim > 8) throw std::out_of_range("simplex_category: 0 <= max_dim <= 8");
  SimplexCategory s;
  s.max_dim = max_dim;
  for (int n = 0; n <= max_dim; ++n) {
    s.category.add_object("[" + std::to_string(n) + "]");
    s.maps.push_back(Monotone::identity(n));
  }
  for (int m = 0; m <= max_dim; ++m)
    for (int n = 0; n <= max_dim; ++n)
      for (const Monotone& theta : all_monotone(m, n)) {
        if (m == n && theta == Monotone::identity(n)) continue;
        s.category.add_morphism(m, n, theta.str());
        s.maps.push_back(theta);
      }
  for (int g = 0; g < s.category.morphism_count(); ++g)
    for (int f = 0; f < s.category.morphism_count(); ++f) {
      if (s.category.target(f) != s.category.source(g) || s.category.is_identity(f) || s.category.is_identity(g)) continue;
      s.category.set_composite(g, f, s.index_of(compose(s.maps[uz(g)], s.maps[uz(f)])));
    }
  return s;
}

namespace {

struct ADiagramChecker {
  const ADiagram& d;
  ADiagramReport report;

  bool fail(std::string axiom, std::vector<int> witness, std::string detail) {
    report.ok = false;
    report.axiom = std::move(axiom);
    report.witness = std::move(witness);
    report.detail = std::move(detail);
    return false;
  }

  int pi_of(int u, const SimplexRef& r) const { return d.pi[uz(u)][uz(r.cell.dim)][uz(r.cell.index)]; }

  SimplexRef act(int u, int f, const SimplexRef& r) const {
    const SimplexRef& img = d.action[uz(u)][uz(f)][uz(r.cell.dim)][uz(r.cell.index)];
    return d.x.sections[uz(u)]->apply(Monotone::surjection(r.dim(), r.degeneracy), img);
  }

  bool shapes() {
    const int objects = d.a.index.object_count();
    if (d.pi.size() != uz(objects) || d.action.size() != uz(objects)) return fail("shape", {}, "pi and action need one entry per index object");
    for (int u = 0; u < objects; ++u) {
      const SimplicialSet& x = *d.x.sections[uz(u)];
      const FiniteCategory& au = d.a.sections[uz(u)];
      auto sized = [&](const std::vector<std::vector<int>>& v) {
        if (v.size() != uz(x.dimension() + 1)) return false;
        for (int n = 0; n <= x.dimension(); ++n)
          if (v[uz(n)].size() != uz(x.cell_count(n))) return false;
        return true;
      };
      if (!sized(d.pi[uz(u)])) return fail("shape", {u}, "pi does not match the cells of the section");
      if (d.action[uz(u)].size() != uz(au.morphism_count())) return fail("shape", {u}, "action needs one entry per morphism of A(U)");
      for (int f = 0; f < au.morphism_count(); ++f) {
        const auto& af = d.action[uz(u)][uz(f)];
        if (af.size() != uz(x.dimension() + 1)) return fail("shape", {u, f}, "action does not match the cells of the section");
        for (int n = 0; n <= x.dimension(); ++n)
          if (af[uz(n)].size() != uz(x.cell_count(n))) return fail("shape", {u, f}, "action does not match the cells of the section");
      }
    }
    return true;
  }

  bool run() {
    try {
      validate(d.a);
      validate(d.x);
    } catch (const std::invalid_argument& e) {
      return fail("presheaf", {}, e.what());
    }
    if (!(d.a.index == d.x.index)) return fail("presheaf", {}, "A and X live on different index categories");
    if (!shapes()) return false;
    const FiniteCategory& c = d.a.index;
    for (int u = 0; u < c.object_count(); ++u) {
      const SimplicialSet& x = *d.x.sections[uz(u)];
      const FiniteCategory& au = d.a.sections[uz(u)];
      for (int n = 0; n <= x.dimension(); ++n)
        for (int k = 0; k < x.cell_count(n); ++k) {
          const int p = d.pi[uz(u)][uz(n)][uz(k)];
          if (p < 0 || p >= au.object_count()) return fail("pi", {u, n, k}, "not an object of A(U)");
          for (int i = 0; n > 0 && i <= n; ++i)
            if (pi_of(u, x.faces({n, k})[uz(i)]) != p) return fail("pi", {u, n, k, i}, "pi is not constant along a face");
        }
    }
    // pi is natural.
    for (int al = 0; al < c.morphism_count(); ++al) {
      const int u = c.target(al), v = c.source(al);
      const SimplicialSet& x = *d.x.sections[uz(u)];
      for (int n = 0; n <= x.dimension(); ++n)
        for (int k = 0; k < x.cell_count(n); ++k)
          if (pi_of(v, d.x.restrictions[uz(al)].image({n, k})) != d.a.restrictions[uz(al)].objects[uz(d.pi[uz(u)][uz(n)][uz(k)])])
            return fail("pi", {u, n, k, al}, "pi does not commute with restriction");
    }
    for (int u = 0; u < c.object_count(); ++u) {
      const SimplicialSet& x = *d.x.sections[uz(u)];
      const FiniteCategory& au = d.a.sections[uz(u)];
      for (int n = 0; n <= x.dimension(); ++n)
        for (int k = 0; k < x.cell_count(n); ++k) {
          const SimplexRef s = SimplexRef::of({n, k});
          const int p = d.pi[uz(u)][uz(n)][uz(k)];
          for (int f = 0; f < au.morphism_count(); ++f) {
            if (au.source(f) != p) continue;
            const SimplexRef img = d.action[uz(u)][uz(f)][uz(n)][uz(k)];
            if (img.dim() != n || img.cell.dim > x.dimension() || img.cell.index >= x.cell_count(img.cell.dim))
              return fail("action-square", {u, n, k, f}, "m(x, f) is not a simplex of the same dimension");
            if (pi_of(u, img) != au.target(f)) return fail("action-square", {u, n, k, f}, "pi(m(x, f)) != t(f)");
            for (int i = 0; n > 0 && i <= n; ++i)
              if (act(u, f, x.faces({n, k})[uz(i)]) != x.face(img, i))
                return fail("simplicial", {u, n, k, f, i}, "m does not commute with face " + std::to_string(i));
          }
          if (act(u, au.identity(p), s) != s) return fail("identity", {u, n, k}, "m(x, id) != x");
          for (int f = 0; f < au.morphism_count(); ++f) {
            if (au.source(f) != p) continue;
            const SimplexRef once = act(u, f, s);
            for (int g = 0; g < au.morphism_count(); ++g) {
              if (au.source(g) != au.target(f)) continue;
              if (act(u, g, once) != act(u, au.compose(g, f), s))
                return fail("composition", {u, n, k, f, g}, "m(m(x, f), g) != m(x, g f)");
            }
          }
        }
    }
    for (int al = 0; al < c.morphism_count(); ++al) {
      const int u = c.target(al), v = c.source(al);
      const SimplicialSet& x = *d.x.sections[uz(u)];
      const FiniteCategory& au = d.a.sections[uz(u)];
      const SimplicialMap& r = d.x.restrictions[uz(al)];
      for (int n = 0; n <= x.dimension(); ++n)
        for (int k = 0; k < x.cell_count(n); ++k)
          for (int f = 0; f < au.morphism_count(); ++f) {
            if (au.source(f) != d.pi[uz(u)][uz(n)][uz(k)]) continue;
            if (r(act(u, f, SimplexRef::of({n, k}))) != act(v, d.a.restrictions[uz(al)].morphisms[uz(f)], r.image({n, k})))
              return fail("naturality", {u, n, k, f, al}, "m does not commute with restriction");
          }
    }
    return true;
  }
};

}  // namespace

ADiagramReport check_adiagram(const ADiagram& d) {
  ADiagramChecker checker{d, {}};
  checker.run();
  return checker.report;
}

SSetPresheaf bisimplicial_to_presheaf(const BisimplicialSet& x, int max_dim) {
  const SimplexCategory delta = simplex_category(max_dim);
  SSetPresheaf out;
  out.index = delta.category;
  std::vector<VerticalSlice> slices;
  for (int n = 0; n <= max_dim; ++n) {
    slices.push_back(vertical_slice(x, n));
    out.sections.push_back(slices.back().object);
  }
  for (int m = 0; m < delta.category.morphism_count(); ++m) {
    const Monotone& theta = delta.maps[uz(m)];
    out.restrictions.push_back(horizontal_operator(x, slices[uz(theta.target())], slices[uz(theta.source())], theta));
  }
  return out;
}

BSetPtr presheaf_to_bisimplicial(const SSetPresheaf& p, int max_dim) {
  const SimplexCategory delta = simplex_category(max_dim);
  if (!(p.index == delta.category)) throw std::invalid_argument("presheaf_to_bisimplicial: index is not the truncated simplex category");
  validate(p);
  std::vector<SimplexTable> tables;
  for (const SSetPtr& s : p.sections) tables.emplace_back(*s, max_dim);
  auto along = [&](const Monotone& theta, int level, int e) {
    const SimplicialMap& r = p.restrictions[uz(delta.index_of(theta))];
    return tables[uz(theta.source())].index_of(r(tables[uz(theta.target())].simplex(level, e)));
  };
  BiLevelData data;
  data.counts.assign(uz(max_dim + 1), std::vector<int>(uz(max_dim + 1)));
  for (int m = 0; m <= max_dim; ++m)
    for (int n = 0; n <= max_dim; ++n) data.counts[uz(m)][uz(n)] = tables[uz(m)].size(n);
  data.hface = [&](int m, int n, int i, int e) { return along(Monotone::coface(m, i), n, e); };
  data.hdegeneracy = [&](int m, int n, int j, int e) { return along(Monotone::codegeneracy(m, j), n, e); };
  data.vface = [&](int m, int n, int i, int e) { return tables[uz(m)].face(n, e, i); };
  data.vdegeneracy = [&](int m, int n, int j, int e) { return tables[uz(m)].degeneracy(n, e, j); };
  BisimplicialSet out = *from_bilevels(data).object;
  bool tall = false;
  for (const SSetPtr& s : p.sections) tall = tall || s->dimension() > max_dim;
  if (tall) out.vtruncation = Truncation{max_dim, false};
  return share(std::move(out));
}

ADiagram adiagram_from_bisimplicial(const BisimplicialSet& x, int max_dim) {
  const SimplexCategory delta = simplex_category(max_dim);
  std::vector<int> to_op;
  const FiniteCategory op = opposite(delta.category, &to_op);
  ADiagram d;
  d.a = constant_presheaf(terminal_category(), op);
  std::vector<VerticalSlice> slices;
  std::vector<SSetPtr> parts;
  for (int n = 0; n <= max_dim; ++n) {
    slices.push_back(vertical_slice(x, n));
    parts.push_back(slices.back().object);
  }
  const Coproduct cp = disjoint_union(parts);
  d.x.index = terminal_category();
  d.x.sections = {cp.object};
  d.x.restrictions = {SimplicialMap::identity(cp.object)};
  const SimplicialSet& total = *cp.object;
  // Cell of the coproduct -> (slice, cell of the slice).
  std::vector<std::vector<std::pair<int, CellId>>> origin(uz(total.dimension() + 1));
  for (int n = 0; n <= total.dimension(); ++n) origin[uz(n)].resize(uz(total.cell_count(n)));
  for (int s = 0; s <= max_dim; ++s) {
    const SimplicialSet& part = *parts[uz(s)];
    for (int n = 0; n <= part.dimension(); ++n)
      for (int k = 0; k < part.cell_count(n); ++k) {
        const SimplexRef at = cp.injections[uz(s)].image({n, k});
        origin[uz(at.cell.dim)][uz(at.cell.index)] = {s, CellId{n, k}};
      }
  }
  d.pi.resize(1);
  d.pi[0].resize(uz(total.dimension() + 1));
  for (int n = 0; n <= total.dimension(); ++n)
    for (int k = 0; k < total.cell_count(n); ++k) d.pi[0][uz(n)].push_back(origin[uz(n)][uz(k)].first);
  d.action.resize(1);
  d.action[0].resize(uz(op.morphism_count()));
  for (int m = 0; m < delta.category.morphism_count(); ++m) {
    // f : [n] -> [k] in Delta^op is theta : [k] -> [n].
    const Monotone& theta = delta.maps[uz(m)];
    const int f = to_op[uz(m)];
    const SimplicialMap h = horizontal_operator(x, slices[uz(theta.target())], slices[uz(theta.source())], theta);
    auto& af = d.action[0][uz(f)];
    af.resize(uz(total.dimension() + 1));
    for (int n = 0; n <= total.dimension(); ++n)
      for (int k = 0; k < total.cell_count(n); ++k) {
        const auto& [s, cell] = origin[uz(n)][uz(k)];
        af[uz(n)].push_back(s == theta.target() ? cp.injections[uz(theta.source())](h.image(cell)) : SimplexRef::of({n, k}));
      }
  }
  return d;
}

namespace {

std::string join_homology(const SimplicialSet& x) {
  std::string out;
  for (const HomologyGroup& h : homology(x)) out += (out.empty() ? "" : ", ") + h.str();
  return out;
}

}  // namespace

SectionwiseResult sectionwise_apply(const std::string& name, const SSetPresheaf& p, int param) {
  validate(p);
  const FiniteCategory& c = p.index;
  SectionwiseResult res;
  auto natural_fail = [&](const std::string& what) {
    if (res.natural) res.detail = what;
    res.natural = false;
  };
  if (name == "homology" || name == "kan" || name == "qcat") {
    for (int u = 0; u < c.object_count(); ++u) {
      const SSetPtr& s = p.sections[uz(u)];
      std::string line = c.object_name(u) + ": ";
      if (name == "homology")
        line += join_homology(*s);
      else
        line += to_string((name == "kan" ? is_kan(s, param) : is_quasi_category(s, param)).status);
      res.report.push_back(std::move(line));
    }
    return res;
  }
  SSetPresheaf out;
  out.index = c;
  out.topology = p.topology;
  if (name == "identity") {
    out = p;
  } else if (name == "k-shriek") {
    std::vector<KShriek> ks;
    for (const SSetPtr& s : p.sections) {
      ks.push_back(k_shriek(s, param));
      out.sections.push_back(ks.back().value);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int u = c.target(m), v = c.source(m);
      const SimplicialMap& r = p.restrictions[uz(m)];
      out.restrictions.push_back(k_shriek_map(r, ks[uz(u)], ks[uz(v)]));
      if (p.sections[uz(u)]->dimension() <= param && p.sections[uz(v)]->dimension() <= param &&
          compose(out.restrictions.back(), ks[uz(u)].unit) != compose(ks[uz(v)].unit, r))
        natural_fail("unit does not commute with restriction along " + c.morphism_name(m));
    }
  } else if (name == "k-upper") {
    int bound = param;
    for (const SSetPtr& s : p.sections) bound = std::max(bound, std::max(s->dimension(), 0) + 2);
    std::vector<KUpper> ku;
    for (const SSetPtr& s : p.sections) {
      ku.push_back(k_upper(s, param, bound));
      out.sections.push_back(ku.back().value);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int u = c.target(m), v = c.source(m);
      const SimplicialMap& r = p.restrictions[uz(m)];
      out.restrictions.push_back(k_upper_map(r, ku[uz(u)], ku[uz(v)]));
      if (compose(ku[uz(v)].counit, out.restrictions.back()) != compose(r, ku[uz(u)].counit))
        natural_fail("counit does not commute with restriction along " + c.morphism_name(m));
    }
  } else if (name == "core-J") {
    std::vector<Subcomplex> js;
    for (const SSetPtr& s : p.sections) {
      js.push_back(core_J(s));
      out.sections.push_back(js.back().object);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int u = c.target(m), v = c.source(m);
      const SimplicialMap& r = p.restrictions[uz(m)];
      const SimplicialSet& ju = *js[uz(u)].object;
      std::vector<std::vector<SimplexRef>> im(uz(ju.dimension() + 1));
      bool ok = true;
      for (int n = 0; n <= ju.dimension() && ok; ++n)
        for (int k = 0; k < ju.cell_count(n) && ok; ++k) {
          SimplexRef s = r(js[uz(u)].inclusion.image({n, k}));
          const int idx = js[uz(v)].index[uz(s.cell.dim)][uz(s.cell.index)];
          if (idx < 0) {
            ok = false;
            break;
          }
          s.cell.index = idx;
          im[uz(n)].push_back(s);
        }
      if (!ok) {
        natural_fail("restriction along " + c.morphism_name(m) + " leaves J");
        return res;
      }
      out.restrictions.emplace_back(js[uz(u)].object, js[uz(v)].object, std::move(im));
      if (compose(js[uz(v)].inclusion, out.restrictions.back()) != compose(r, js[uz(u)].inclusion))
        natural_fail("inclusion does not commute with restriction along " + c.morphism_name(m));
    }
  } else {
    throw std::invalid_argument("sectionwise_apply: unknown functor " + name);
  }
  try {
    validate(out);
  } catch (const std::invalid_argument& e) {
    natural_fail(e.what());
  }
  res.presheaf = std::move(out);
  return res;
}

}  // namespace segal
