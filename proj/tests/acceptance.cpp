// One PASS/FAIL line per acceptance criterion, with wall-clock limits.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "segal/adjunction.hpp"
#include "segal/checkers.hpp"
#include "segal/colimits.hpp"
#include "segal/corpus.hpp"
#include "segal/hom.hpp"
#include "segal/homology.hpp"
#include "segal/iso.hpp"
#include "segal/limits.hpp"
#include "segal/presheaf.hpp"
#include "segal/segal_space.hpp"
#include "segal/simplex_table.hpp"

using namespace segal;

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

SSetPtr simplex(int n) { return share(standard(n)); }
SSetPtr pt() {
  static const SSetPtr p = share(point());
  return p;
}

std::string str(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

// 1. Face and degeneracy composites in Delta^n against vertex sequences.

std::vector<int> vertices_of(const SimplicialSet& d, const SimplexRef& x) {
  std::vector<int> out;
  for (int a = 0; a <= x.dim(); ++a) out.push_back(std::stoi(d.label(d.vertex(x, a).cell)));
  return out;
}

void nondecreasing(int m, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m + 1) {
    out.push_back(cur);
    return;
  }
  for (int v = cur.empty() ? 0 : cur.back(); v <= n; ++v) {
    cur.push_back(v);
    nondecreasing(m, n, cur, out);
    cur.pop_back();
  }
}

Outcome ez_suite() {
  Outcome o;
  long checks = 0;
  for (int n = 0; n <= 4; ++n) {
    const SimplicialSet d = standard(n);
    const SimplexRef top = SimplexRef::of({n, 0});
    for (int m = 0; m <= n + 2; ++m) {
      std::vector<std::vector<int>> seqs;
      std::vector<int> cur;
      nondecreasing(m, n, cur, seqs);
      for (const auto& seq : seqs) {
        const SimplexRef x = d.apply(Monotone(n, seq), top);
        o.require(vertices_of(d, x) == seq, "apply " + str(seq));
        for (int i = 0; m > 0 && i <= m; ++i) {
          auto expect = seq;
          expect.erase(expect.begin() + i);
          o.require(vertices_of(d, d.face(x, i)) == expect, "d_" + std::to_string(i) + " of " + str(seq));
          ++checks;
        }
        for (int j = 0; j <= m; ++j) {
          auto expect = seq;
          expect.insert(expect.begin() + j, seq[uz(j)]);
          o.require(vertices_of(d, d.degeneracy(x, j)) == expect, "s_" + std::to_string(j) + " of " + str(seq));
          ++checks;
        }
        // theta^* phi^* = (phi theta)^* against composition of sequences.
        for (int k = 0; k <= 2; ++k) {
          std::vector<std::vector<int>> inner;
          std::vector<int> c2;
          nondecreasing(k, m, c2, inner);
          for (const auto& th : inner) {
            std::vector<int> expect;
            for (int v : th) expect.push_back(seq[uz(v)]);
            o.require(vertices_of(d, d.apply(Monotone(m, th), x)) == expect, "composite " + str(seq) + " after " + str(th));
            ++checks;
          }
        }
      }
    }
  }
  o.detail = o.ok ? std::to_string(checks) + " composites in Delta^0..Delta^4" : o.detail;
  return o;
}

// 2. hom(F(k), X) against the vertical slices.

SimplicialSet random_simplex_subcomplex(std::mt19937& rng, int n) {
  const std::uint32_t full = (1u << (n + 1)) - 1;
  std::vector<std::uint32_t> tops;
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < count; ++i) tops.push_back(std::uniform_int_distribution<std::uint32_t>(1, full)(rng));
  return simplex_subcomplex(n, [tops](std::uint32_t s) {
    if (std::popcount(s) == 1) return true;
    for (std::uint32_t t : tops)
      if ((s & ~t) == 0) return true;
    return false;
  });
}

Outcome slice_suite() {
  Outcome o;
  std::vector<std::pair<std::string, BSetPtr>> xs;
  for (const auto& nb : bisimplicial_corpus())
    if (nb.object->total_cells() <= 40) xs.emplace_back(nb.name, nb.object);
  std::mt19937 rng(5);
  for (int t = 0; t < 3; ++t) xs.emplace_back("random_box" + std::to_string(t), share(box_product(random_simplex_subcomplex(rng, 2), random_simplex_subcomplex(rng, 2))));
  int pairs = 0;
  for (const auto& [name, x] : xs) {
    for (int k = 0; k <= 3; ++k) {
      const VerticalSlice s = vertical_slice(*x, k);
      const int top = 2;
      const SimplexTable table(*s.object, top);
      for (int q = 0; q <= top; ++q) {
        const BSetPtr shape = share(box_product(standard(k), standard(q)));
        const auto maps = enumerate_bimaps(shape, x);
        std::set<SimplexRef> seen;
        for (const auto& m : maps) seen.insert(s.simplex(m.image({k, q, 0})));
        o.require(static_cast<int>(maps.size()) == table.size(q) && seen.size() == maps.size(),
                  name + " k=" + std::to_string(k) + " q=" + std::to_string(q));
      }
      ++pairs;
    }
  }
  o.require(xs.size() >= 10, "corpus too small");
  if (o.ok) o.detail = std::to_string(xs.size()) + " objects, " + std::to_string(pairs) + " (X, k) pairs, levels q <= 2";
  return o;
}

// 3. k_! preserves monos; the unit is a homology isomorphism below N.

Outcome mono_suite() {
  Outcome o;
  const int nmax = 4;
  std::mt19937 rng(77);
  int monos = 0;
  while (monos < 24) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const SSetPtr b = share(random_simplex_subcomplex(rng, n));
    // A random face-closed subcomplex of B.
    const std::uint32_t drop = std::uniform_int_distribution<std::uint32_t>(0, 7)(rng);
    const Subcomplex a = subcomplex(b, [&](CellId c) { return c.dim == 0 || ((c.index + c.dim) % 8 != static_cast<int>(drop) && c.dim < b->dimension()); });
    const KShriek ka = k_shriek(a.object, nmax);
    const KShriek kb = k_shriek(b, nmax);
    const SimplicialMap kf = k_shriek_map(a.inclusion, ka, kb);
    o.require(kf.is_valid() && is_mono(kf), "k_! of mono #" + std::to_string(monos));
    ++monos;
  }
  int complexes = 0;
  for (const auto& nc : simplicial_corpus()) {
    if (nc.object->truncation) continue;
    const KShriek k = k_shriek(nc.object, nmax);
    o.require(homology_isomorphism_below(k.unit, nmax), "unit on " + nc.name);
    ++complexes;
  }
  o.require(complexes >= 10, "fewer than 10 complexes");
  if (o.ok) o.detail = std::to_string(monos) + " random monos, " + std::to_string(complexes) + " unit homology checks at N = 4";
  return o;
}

// 4. k_!(dDelta^2) against the coequalizer of the face maps.

SimplicialMap coproduct_map(const Coproduct& src, const Coproduct& tgt, const std::vector<std::pair<int, SimplicialMap>>& parts) {
  const SimplicialSet& s = *src.object;
  std::vector<std::vector<SimplexRef>> im(uz(s.dimension() + 1));
  for (int n = 0; n <= s.dimension(); ++n) im[uz(n)].resize(uz(s.cell_count(n)));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const SimplicialMap& inj = src.injections[p];
    const SimplicialSet& piece = *inj.source();
    for (int n = 0; n <= piece.dimension(); ++n)
      for (int c = 0; c < piece.cell_count(n); ++c) {
        const SimplexRef at = inj.image({n, c});
        im[uz(at.cell.dim)][uz(at.cell.index)] = tgt.injections[uz(parts[p].first)](parts[p].second.image({n, c}));
      }
  }
  return SimplicialMap(src.object, tgt.object, std::move(im));
}

SSetPtr boundary_coequalizer(int n, int nmax) {
  const Nerve small = nerve(chaotic_groupoid(n - 2), nmax);
  const Nerve face = nerve(chaotic_groupoid(n - 1), nmax);
  std::vector<SSetPtr> a_parts, b_parts;
  std::vector<std::pair<int, SimplicialMap>> left, right;
  for (int i = 0; i <= n; ++i) b_parts.push_back(face.object);
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      a_parts.push_back(small.object);
      left.emplace_back(i, chaotic_nerve_map(small, face, Monotone::coface(n - 1, j - 1)));
      right.emplace_back(j, chaotic_nerve_map(small, face, Monotone::coface(n - 1, i)));
    }
  const Coproduct a = disjoint_union(a_parts);
  const Coproduct b = disjoint_union(b_parts);
  return coequalizer(coproduct_map(a, b, left), coproduct_map(a, b, right)).object;
}

Outcome coequalizer_suite() {
  Outcome o;
  const int nmax = 4;
  const KShriek k = k_shriek(share(boundary(2)), nmax);
  const SSetPtr c = boundary_coequalizer(2, nmax);
  const SimplexTable tk(*k.value, nmax), tc(*c, nmax);
  std::vector<int> ck, cc;
  for (int n = 0; n <= nmax; ++n) {
    ck.push_back(k.value->cell_count(n));
    cc.push_back(c->cell_count(n));
    o.require(tk.size(n) == tc.size(n), "level " + std::to_string(n));
  }
  o.require(ck == cc, "cell counts " + str(ck) + " vs " + str(cc));
  o.require(isomorphic(*k.value, *c), "no isomorphism");
  if (o.ok) o.detail = "nondegenerate cells " + str(ck) + " on both sides";
  return o;
}

// 5. Counit and the comparison k^!(X) -> J(X) in exact mode.

// Unlabeled posets on n points: relations minimal under relabeling.
std::vector<FiniteCategory> posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<int> perm(uz(n));
  std::vector<FiniteCategory> out;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    auto leq = [&](std::uint32_t b, int x, int y) {
      if (x == y) return true;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k] == std::make_pair(x, y)) return ((b >> k) & 1u) != 0;
      return false;
    };
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (x != y && leq(bits, x, y) && leq(bits, y, x)) ok = false;
        for (int z = 0; z < n && ok; ++z)
          if (leq(bits, x, y) && leq(bits, y, z) && !leq(bits, x, z)) ok = false;
      }
    if (!ok) continue;
    for (int i = 0; i < n; ++i) perm[uz(i)] = i;
    bool minimal = true;
    while (std::next_permutation(perm.begin(), perm.end()) && minimal) {
      std::uint32_t relabeled = 0;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if ((bits >> k) & 1u)
          for (std::size_t k2 = 0; k2 < pairs.size(); ++k2)
            if (pairs[k2] == std::make_pair(perm[uz(pairs[k].first)], perm[uz(pairs[k].second)])) relabeled |= 1u << k2;
      if (relabeled < bits) minimal = false;
    }
    if (minimal) out.push_back(poset(n, [&](int x, int y) { return leq(bits, x, y); }));
  }
  return out;
}

Outcome counit_suite() {
  Outcome o;
  std::vector<FiniteCategory> groupoids{chaotic_groupoid(2)};
  std::vector<FiniteCategory> others;
  for (const FiniteCategory& c : exhaustive_categories()) (is_groupoid(c) ? groupoids : others).push_back(c);
  for (int n = 1; n <= 4; ++n)
    for (FiniteCategory& p : posets(n)) others.push_back(std::move(p));
  for (const auto& nc : named_categories())
    if (nc.category.object_count() <= 4 && !is_groupoid(nc.category)) others.push_back(nc.category);
  for (const FiniteCategory& g : groupoids) {
    const KUpper k = k_upper(nerve(g, 3), 3);
    const Verdict v = is_trivial_fibration(k.counit, 3);
    o.require(v.status == Status::holds, "counit on a groupoid with " + std::to_string(g.morphism_count()) + " morphisms: " + v.detail);
  }
  for (const FiniteCategory& c : others) {
    const CounitComparison cc = counit_comparison(nerve(c, 3), 3);
    const Verdict v = is_trivial_fibration(cc.map, 3);
    o.require(compose(cc.core.inclusion, cc.map) == cc.k.counit, "comparison does not factor the counit");
    o.require(v.status == Status::holds, "k^! -> J on a category with " + std::to_string(c.object_count()) + " objects: " + to_string(v.status) + " " + v.detail);
  }
  if (o.ok) o.detail = std::to_string(groupoids.size()) + " groupoid counits, " + std::to_string(others.size()) + " poset/mixed comparisons, bound 3";
  return o;
}

// 6. J(B C) against B(Iso C) on the exhaustive corpus.

Outcome core_suite() {
  Outcome o;
  const auto cats = exhaustive_categories();
  for (const FiniteCategory& c : cats) {
    const Subcomplex j = core_J(nerve(c, 3).object);
    o.require(isomorphic(*j.object, *nerve(iso_subcategory(c), 3).object), "J differs on a category with " + std::to_string(c.morphism_count()) + " morphisms");
  }
  if (o.ok) o.detail = std::to_string(cats.size()) + " categories (<= 3 objects, <= 8 morphisms)";
  return o;
}

// 7. t^! levels against k^! of mapping spaces; t_! against Delta^n x B pi(Delta^m)
// and the colimit over bicells.

SSetPtr direct_t_shriek(const BisimplicialSet& x, int nmax) {
  std::map<std::pair<int, int>, Product> prods;
  std::map<int, Nerve> pis;
  auto pi = [&](int q) -> const Nerve& {
    auto it = pis.find(q);
    if (it == pis.end()) it = pis.emplace(q, nerve(chaotic_groupoid(q), nmax)).first;
    return it->second;
  };
  auto prod = [&](int p, int q) -> const Product& {
    auto it = prods.find({p, q});
    if (it == prods.end()) it = prods.emplace(std::make_pair(p, q), product(simplex(p), pi(q).object, nmax)).first;
    return it->second;
  };
  const std::vector<BiCellId> cells = x.cells();
  std::map<BiCellId, int> part;
  std::vector<SSetPtr> parts;
  for (const BiCellId& c : cells) {
    part[c] = static_cast<int>(parts.size());
    parts.push_back(prod(c.p, c.q).object);
  }
  const Coproduct cp = disjoint_union(parts);
  auto along = [&](int p2, int q2, int p, int q, const Monotone& a, const Monotone& b) {
    return product_map(prod(p2, q2), prod(p, q), simplex_map(simplex(p2), simplex(p), a), chaotic_nerve_map(pi(q2), pi(q), b));
  };
  std::vector<Relation> rel;
  auto relate = [&](const BiCellId& c, const SimplicialMap& lhs, const BiRef& face, int p2, int q2) {
    const SimplicialMap rhs = along(p2, q2, face.cell.p, face.cell.q, Monotone::surjection(p2, face.h), Monotone::surjection(q2, face.v));
    const SimplicialSet& s = *lhs.source();
    for (int k = 0; k <= s.dimension(); ++k)
      for (int y = 0; y < s.cell_count(k); ++y)
        rel.push_back({cp.injections[uz(part[c])](lhs.image({k, y})), cp.injections[uz(part[face.cell])](rhs.image({k, y}))});
  };
  for (const BiCellId& c : cells) {
    for (int i = 0; c.p > 0 && i <= c.p; ++i)
      relate(c, along(c.p - 1, c.q, c.p, c.q, Monotone::coface(c.p, i), Monotone::identity(c.q)), x.hfaces(c)[uz(i)], c.p - 1, c.q);
    for (int i = 0; c.q > 0 && i <= c.q; ++i)
      relate(c, along(c.p, c.q - 1, c.p, c.q, Monotone::identity(c.p), Monotone::coface(c.q, i)), x.vfaces(c)[uz(i)], c.p, c.q - 1);
  }
  return quotient(cp.object, rel).object;
}

Outcome equation_suite() {
  Outcome o;
  int eq1 = 0, eq2 = 0;
  for (const auto& nc : named_categories()) {
    const FiniteCategory& c = nc.category;
    if (c.object_count() > 3 || c.morphism_count() > 6) continue;
    const BSetPtr t = t_upper(nerve(c, 4), 2, 2);
    for (int m = 0; m <= 2; ++m) {
      // Y^{Delta^m} is B Fun([m], C); check its levels against the mapping space.
      const FiniteCategory fun = functor_category(linear_order(m), c);
      const Nerve nf = nerve(fun, 3);
      const MappingSpace ms = mapping_space(simplex(m), nerve(c, 4).object, 2);
      const SimplexTable a(*ms.object, 2), b(*nf.object, 2);
      for (int q = 0; q <= 2; ++q) o.require(a.size(q) == b.size(q), nc.name + ": Y^{Delta^" + std::to_string(m) + "} level " + std::to_string(q));
      const KUpper k = k_upper(nf, 2);
      o.require(isomorphic(*vertical_slice(*t, m).object, *k.value), nc.name + ": t^!(Y)_{" + std::to_string(m) + ",*}");
      ++eq1;
    }
  }
  const int nmax = 3;
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m) {
      const TShriek t = t_shriek(share(box_product(standard(n), standard(m))), nmax);
      const Product p = product(simplex(n), nerve(chaotic_groupoid(m), nmax).object, nmax);
      o.require(isomorphic(*t.value, *p.object), "t_!(Delta^{" + std::to_string(n) + "," + std::to_string(m) + "})");
      ++eq2;
    }
  for (const auto& nb : bisimplicial_corpus()) {
    if (nb.object->total_cells() > 12 || nb.object->hdim() > nmax || nb.object->vdim() > nmax) continue;
    const TShriek t = t_shriek(nb.object, nmax);
    o.require(isomorphic(*t.value, *direct_t_shriek(*nb.object, nmax)), "t_! of " + nb.name + " against the bicell colimit");
    ++eq2;
  }
  if (o.ok) o.detail = std::to_string(eq1) + " t^! slices, " + std::to_string(eq2) + " t_! comparisons at N = 3";
  return o;
}

// 8. Segal maps and completeness.

Outcome segal_suite(std::string& note) {
  Outcome o;
  int count = 0;
  for (const auto& nc : named_categories()) {
    const BSetPtr x = share(disc_nerve(nc.category, 4));
    for (int n = 1; n <= 3; ++n) {
      o.require(is_iso(segal_map(*x, n).comparison), "Segal map of Disc(" + nc.name + ") at n = " + std::to_string(n));
      ++count;
    }
  }
  o.require(check_complete(share(generator_F(0)), 3).status == Status::holds, "F(0) is not complete");
  const BSetPtr cut = bisubobject(share(generator_F(2)), [](BiCellId c) { return c.p < 2; }).object;
  o.require(!is_iso(segal_map(*cut, 2).comparison), "F(2) without its 2-cell passes the Segal condition");
  o.require(check_segal(cut, Strategy::iso, 3).status == Status::fails, "negative control not rejected");
  note = "Disc(pi[1]) completeness: " + to_string(check_complete(share(disc_nerve(chaotic_groupoid(1), 3)), 2).status);
  if (o.ok) o.detail = std::to_string(count) + " Segal maps of discrete nerves; F(0) complete; 2-cell removal rejected";
  return o;
}

// 9. J-squares of Kan fibrations between nerves.

bool edges_invertible(const Nerve& n, const SimplexRef& x) {
  const FiniteCategory& c = *n.category;
  for (int a = 0; a <= x.dim(); ++a)
    for (int b = a + 1; b <= x.dim(); ++b) {
      const std::vector<int> chain = n.chain_of(n.object->edge(x, a, b));
      if (!c.is_iso(chain.at(0))) return false;
    }
  return true;
}

Outcome pullback_suite() {
  Outcome o;
  std::vector<std::pair<FiniteCategory, FiniteCategory>> pairs;
  for (const FiniteCategory& c : {linear_order(1), linear_order(2), iso_and_arrow(), chaotic_groupoid(1)}) {
    pairs.emplace_back(c, chaotic_groupoid(1));
    pairs.emplace_back(c, discrete_category(2));
    pairs.emplace_back(c, monoid_category({{0, 1}, {1, 0}}));
  }
  int verified = 0;
  for (const auto& [c, g] : pairs) {
    const FiniteCategory cg = product_category(c, g);
    const Nerve ncg = nerve(cg, 3), ncn = nerve(c, 3);
    std::optional<SimplicialMap> proj;
    for (const FunctorData& f : enumerate_functors(cg, c)) {
      bool ok = true;
      for (int x = 0; x < cg.object_count() && ok; ++x) ok = f.objects[uz(x)] == x / g.object_count();
      for (int a = 0; a < c.object_count() && ok; ++a)
        for (int a2 = 0; a2 < c.object_count() && ok; ++a2) {
          std::set<int> hit;
          for (int m : cg.hom(a * g.object_count(), a2 * g.object_count())) hit.insert(f.morphisms[uz(m)]);
          ok = hit.size() == c.hom(a, a2).size();
        }
      if (ok) {
        proj = nerve_map(ncg, ncn, f);
        break;
      }
    }
    o.require(proj.has_value(), "no projection");
    if (!proj) continue;
    if (is_kan_fibration(*proj, 3).status != Status::holds) continue;
    const JSquare sq = j_square(*proj);
    // Levelwise: a simplex of X lies in J(X) iff its image lies in J(Y).
    const SimplexTable tx(*ncg.object, 3);
    bool levelwise = true;
    for (int q = 0; q <= 3; ++q)
      for (int e = 0; e < tx.size(q); ++e) {
        const SimplexRef s = tx.simplex(q, e);
        levelwise = levelwise && (edges_invertible(ncg, s) == edges_invertible(ncn, (*proj)(s)));
      }
    const FiberProduct fp = fiber_product(*proj, sq.jy.inclusion);
    const bool generic = is_iso(fiber_product_lift(fp, sq.jx.inclusion, sq.restricted));
    o.require(sq.is_pullback && levelwise && generic, "J-square of a projection is not a pullback");
    ++verified;
  }
  const Nerve l = nerve(linear_order(1), 3), p = nerve(chaotic_groupoid(1), 3);
  const SimplicialMap bad = nerve_map(l, p, thin_functor(linear_order(1), chaotic_groupoid(1), {0, 1}));
  o.require(is_kan_fibration(bad, 3).status == Status::fails && !j_square(bad).is_pullback, "negative control");
  o.require(verified >= 5, "only " + std::to_string(verified) + " Kan fibrations");
  if (o.ok) o.detail = std::to_string(verified) + " Kan fibrations with pullback J-squares; B[1] -> B pi[1] control rejected";
  return o;
}

// 10. solve_lifting against exhaustive assignment.

std::vector<SimplexRef> simplices_of(const SimplicialSet& x, int n) {
  std::vector<SimplexRef> out;
  for (int k = 0; k <= std::min(n, x.dimension()); ++k)
    for (DegeneracyMask m : surjection_masks(n, k))
      for (int c = 0; c < x.cell_count(k); ++c) out.push_back(SimplexRef{m, {k, c}});
  return out;
}

SimplexRef extend(const SimplicialSet& x, const std::vector<std::vector<SimplexRef>>& asg, const SimplexRef& s) {
  return x.apply(Monotone::surjection(s.dim(), s.degeneracy), asg[uz(s.cell.dim)][uz(s.cell.index)]);
}

bool brute_force_lift_exists(const LiftingProblem& p) {
  const SimplicialSet& b = *p.i.target();
  const SimplicialSet& x = *p.f.source();
  const SimplicialSet& a = *p.i.source();
  std::vector<CellId> cells;
  for (int n = 0; n <= b.dimension(); ++n)
    for (int c = 0; c < b.cell_count(n); ++c) cells.push_back({n, c});
  std::vector<std::vector<SimplexRef>> asg(uz(b.dimension() + 1));
  for (int n = 0; n <= b.dimension(); ++n) asg[uz(n)].resize(uz(b.cell_count(n)));
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == cells.size()) {
      for (const CellId& c : cells)
        for (int i = 0; c.dim > 0 && i <= c.dim; ++i)
          if (x.face(asg[uz(c.dim)][uz(c.index)], i) != extend(x, asg, b.faces(c)[uz(i)])) return false;
      for (int n = 0; n <= a.dimension(); ++n)
        for (int c = 0; c < a.cell_count(n); ++c)
          if (extend(x, asg, p.i.image({n, c})) != p.top.image({n, c})) return false;
      for (const CellId& c : cells)
        if (p.f(asg[uz(c.dim)][uz(c.index)]) != p.bottom.image(c)) return false;
      return true;
    }
    const CellId c = cells[k];
    for (const SimplexRef& s : simplices_of(x, c.dim)) {
      asg[uz(c.dim)][uz(c.index)] = s;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

Outcome solver_suite() {
  Outcome o;
  std::mt19937 rng(2025);
  int done = 0, lifts = 0, attempts = 0;
  while (done < 100 && attempts < 20000) {
    ++attempts;
    const SSetPtr x = share(random_simplex_subcomplex(rng, 3));
    if (x->total_cells() > 12) continue;
    const SSetPtr y = std::uniform_int_distribution<int>(0, 1)(rng) ? pt() : simplex(1);
    const auto fs = enumerate_maps(x, y);
    if (fs.empty()) continue;
    const SimplicialMap f = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
    const int bn = std::uniform_int_distribution<int>(1, 2)(rng);
    const SSetPtr a = share(random_simplex_subcomplex(rng, bn));
    const SimplicialMap i = simplex_subcomplex_inclusion(a, bn);
    const auto tops = enumerate_maps(a, x);
    if (tops.empty()) continue;
    const SimplicialMap top = tops[std::uniform_int_distribution<std::size_t>(0, tops.size() - 1)(rng)];
    std::vector<SimplicialMap> bottoms;
    for (const SimplicialMap& bt : enumerate_maps(i.target(), y))
      if (compose(bt, i) == compose(f, top)) bottoms.push_back(bt);
    if (bottoms.empty()) continue;
    const LiftingProblem p{i, f, top, bottoms[std::uniform_int_distribution<std::size_t>(0, bottoms.size() - 1)(rng)]};
    const auto lift = solve_lifting(p);
    o.require(lift.has_value() == brute_force_lift_exists(p), "disagreement on problem " + std::to_string(done));
    if (lift) {
      o.require(compose(*lift, i) == top && compose(f, *lift) == p.bottom, "lift does not solve problem " + std::to_string(done));
      ++lifts;
    }
    ++done;
  }
  o.require(done == 100, "generated only " + std::to_string(done) + " problems");
  if (o.ok) o.detail = "100 problems (" + std::to_string(lifts) + " with a lift), targets <= 12 cells";
  return o;
}

// 11. Grothendieck construction and the bisimplicial/presheaf identification.

CategoryPresheaf on_arrow(const FiniteCategory& a0, const FiniteCategory& a1, const FunctorData& r) {
  CategoryPresheaf a;
  a.index = linear_order(1);
  a.sections = {a0, a1};
  a.restrictions.resize(uz(a.index.morphism_count()));
  a.restrictions[uz(a.index.identity(0))] = identity_functor(a0);
  a.restrictions[uz(a.index.identity(1))] = identity_functor(a1);
  a.restrictions[uz(a.index.hom(0, 1).at(0))] = r;
  return a;
}

Outcome grothendieck_suite() {
  Outcome o;
  std::map<std::string, FiniteCategory> named;
  for (const auto& nc : named_categories()) named.emplace(nc.name, nc.category);
  const std::vector<std::string> small{"terminal", "linear1", "discrete2", "chaotic1", "z2", "idempotent", "parallel", "span"};
  std::vector<CategoryPresheaf> corpus;
  for (const auto& index : {"linear2", "span", "z2"})
    for (const auto& c : small) corpus.push_back(constant_presheaf(named.at(index), named.at(c)));
  for (const auto& c0 : small)
    for (const auto& c1 : small)
      for (const FunctorData& r : enumerate_functors(named.at(c1), named.at(c0))) corpus.push_back(on_arrow(named.at(c0), named.at(c1), r));
  long triples = 0;
  for (const CategoryPresheaf& a : corpus) {
    const Grothendieck g = grothendieck(a);
    const FiniteCategory& e = g.category;
    const FiniteCategory& c = a.index;
    for (int p = 0; p < e.morphism_count(); ++p) {
      const auto [alpha, f] = g.morphisms[uz(p)];
      o.require(e.compose(p, e.identity(e.source(p))) == p && e.compose(e.identity(e.target(p)), p) == p, "unit law");
      for (int q = 0; q < e.morphism_count(); ++q) {
        if (e.target(q) != e.source(p)) continue;
        const auto [gamma, gm] = g.morphisms[uz(q)];
        const int expect = a.sections[uz(c.source(gamma))].compose(gm, a.restrictions[uz(gamma)].morphisms[uz(f)]);
        o.require(g.morphisms[uz(e.compose(p, q))] == std::make_pair(c.compose(alpha, gamma), expect), "composition formula");
        for (int r = 0; r < e.morphism_count(); ++r)
          if (e.target(r) == e.source(q)) {
            o.require(e.compose(e.compose(p, q), r) == e.compose(p, e.compose(q, r)), "associativity");
            ++triples;
          }
      }
    }
  }
  int trips = 0;
  for (const auto& nb : bisimplicial_corpus())
    for (int n = 0; n <= 3; ++n) {
      const BSetPtr back = presheaf_to_bisimplicial(bisimplicial_to_presheaf(*nb.object, n), n);
      const BSetPtr trunc = bisubobject(nb.object, [&](BiCellId c) { return c.p <= n && c.q <= n; }).object;
      o.require(isomorphic(*back, *trunc), "round trip of " + nb.name + " at N = " + std::to_string(n));
      ++trips;
    }
  if (o.ok)
    o.detail = std::to_string(corpus.size()) + " presheaves, " + std::to_string(triples) + " composable triples; " + std::to_string(trips) + " round trips";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::string segal_note;
  const std::vector<Criterion> criteria{
      {1, "normal forms in Delta^n, n <= 4", 1, ez_suite},
      {2, "hom(F(k), X) = X_{k,*}", 10, slice_suite},
      {3, "k_! preserves monos; unit homology", 60, mono_suite},
      {4, "k_!(dDelta^2) = coequalizer at N = 4", 10, coequalizer_suite},
      {5, "counit and k^! -> J trivial fibrations", 120, counit_suite},
      {6, "J(BC) = B(Iso C) exhaustive", 60, core_suite},
      {7, "t^! and t_! formulas", 120, equation_suite},
      {8, "Segal and completeness", 60, [&] { return segal_suite(segal_note); }},
      {9, "J-square pullbacks of Kan fibrations", 60, pullback_suite},
      {10, "lifting solver against brute force", 120, solver_suite},
      {11, "Grothendieck construction and presheaf round trip", 30, grothendieck_suite},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit;
    if (o.ok && !pass) o.detail += "; over the time limit";
    if (!pass) ++failed;
    std::printf("%s %2d %s [%.2f s / %.0f s] %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit, o.detail.c_str());
    std::fflush(stdout);
  }
  if (!segal_note.empty()) std::printf("note: %s\n", segal_note.c_str());
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
