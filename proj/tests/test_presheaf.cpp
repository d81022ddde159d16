#include "doctest.h"
#include "segal/adjunction.hpp"
#include "segal/colimits.hpp"
#include "segal/corpus.hpp"
#include "segal/homology.hpp"
#include "segal/iso.hpp"
#include "segal/nerve.hpp"
#include "segal/presheaf.hpp"
#include "segal/segal_space.hpp"

using namespace segal;

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

const FiniteCategory& named(const std::string& name) {
  static const auto all = named_categories();
  for (const auto& nc : all)
    if (nc.name == name) return nc.category;
  throw std::out_of_range(name);
}

// Presheaves A on [1] (0 -> 1) are functors A(1) -> A(0).
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

// Presheaves on a one-object group or monoid M: an action of M on A(*).
std::vector<CategoryPresheaf> actions(const FiniteCategory& m, const FiniteCategory& d) {
  std::vector<CategoryPresheaf> out;
  const int k = m.morphism_count();
  std::vector<FunctorData> endo = enumerate_functors(d, d);
  std::vector<int> pick(uz(k), 0);
  // Assign a functor to each morphism and keep the functorial assignments.
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      CategoryPresheaf a;
      a.index = m;
      a.sections = {d};
      for (int j = 0; j < k; ++j) a.restrictions.push_back(endo[uz(pick[uz(j)])]);
      try {
        validate(a);
        out.push_back(std::move(a));
      } catch (const std::invalid_argument&) {
      }
      return;
    }
    for (std::size_t e = 0; e < endo.size(); ++e) {
      pick[uz(i)] = static_cast<int>(e);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<CategoryPresheaf> presheaf_corpus() {
  std::vector<CategoryPresheaf> out;
  const std::vector<std::string> small{"terminal", "linear1", "discrete2", "chaotic1", "z2", "idempotent", "parallel", "span"};
  for (const auto& c : small) out.push_back(constant_presheaf(named("linear2"), named(c)));
  for (const auto& c0 : small)
    for (const auto& c1 : small)
      for (const FunctorData& r : enumerate_functors(named(c1), named(c0))) out.push_back(on_arrow(named(c0), named(c1), r));
  for (const auto& m : {"z2", "idempotent"})
    for (const auto& d : {"linear1", "discrete2", "chaotic1", "parallel"})
      for (auto& a : actions(named(m), named(d))) out.push_back(std::move(a));
  return out;
}

BSetPtr truncate(const BSetPtr& x, int n) { return bisubobject(x, [&](BiCellId c) { return c.p <= n && c.q <= n; }).object; }

}  // namespace

TEST_CASE("opposite category") {
  for (const auto& nc : named_categories()) {
    std::vector<int> map;
    const FiniteCategory op = opposite(nc.category, &map);
    op.validate();
    CHECK(op.morphism_count() == nc.category.morphism_count());
    for (int f = 0; f < nc.category.morphism_count(); ++f) {
      CHECK(op.source(map[uz(f)]) == nc.category.target(f));
      for (int g = 0; g < nc.category.morphism_count(); ++g)
        if (nc.category.target(f) == nc.category.source(g))
          CHECK(op.compose(map[uz(f)], map[uz(g)]) == map[uz(nc.category.compose(g, f))]);
    }
    CHECK(find_category_isomorphism(opposite(op), nc.category).has_value());
  }
}

TEST_CASE("grothendieck of a constant terminal presheaf is the index") {
  for (const auto& nc : named_categories()) {
    const Grothendieck g = grothendieck(constant_presheaf(nc.category, terminal_category()));
    CHECK(find_category_isomorphism(g.category, nc.category).has_value());
    CHECK(is_functor(g.category, nc.category, g.forgetful));
    CHECK(g.forgetful.objects.size() == uz(nc.category.object_count()));
  }
}

TEST_CASE("grothendieck over the point is the opposite category") {
  for (const auto& nc : named_categories()) {
    const FiniteCategory& d = nc.category;
    const Grothendieck g = grothendieck(constant_presheaf(terminal_category(), d));
    int count = 0;
    for (int x = 0; x < d.object_count(); ++x)
      for (int y = 0; y < d.object_count(); ++y) count += static_cast<int>(d.hom(x, y).size());
    CHECK(g.category.morphism_count() == count);
    CHECK(find_category_isomorphism(g.category, opposite(d)).has_value());
  }
}

TEST_CASE("grothendieck of the truncated simplex category gives Delta") {
  for (int n = 0; n <= 3; ++n) {
    const SimplexCategory delta = simplex_category(n);
    delta.category.validate();
    int count = 0;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) count += static_cast<int>(all_monotone(a, b).size());
    CHECK(delta.category.morphism_count() == count);
    const Grothendieck g = grothendieck(constant_presheaf(terminal_category(), opposite(delta.category)));
    CHECK(find_category_isomorphism(g.category, delta.category).has_value());
  }
}

TEST_CASE("grothendieck composition: formula, associativity and units on the corpus") {
  const auto corpus = presheaf_corpus();
  CHECK(corpus.size() >= 100);
  std::size_t checked = 0;
  for (const CategoryPresheaf& a : corpus) {
    const Grothendieck g = grothendieck(a);
    const FiniteCategory& e = g.category;
    const FiniteCategory& c = a.index;
    for (int p = 0; p < e.morphism_count(); ++p) {
      const auto [alpha, f] = g.morphisms[uz(p)];
      const auto [u, x] = g.objects[uz(e.target(p))];
      const auto [v, y] = g.objects[uz(e.source(p))];
      // f : alpha^*(x) -> y in A(V).
      REQUIRE(c.source(alpha) == v);
      REQUIRE(c.target(alpha) == u);
      REQUIRE(a.sections[uz(v)].source(f) == a.restrictions[uz(alpha)].objects[uz(x)]);
      REQUIRE(a.sections[uz(v)].target(f) == y);
      for (int q = 0; q < e.morphism_count(); ++q) {
        if (e.target(q) != e.source(p)) continue;
        const auto [gamma, gm] = g.morphisms[uz(q)];
        const int w = c.source(gamma);
        const int expect_f = a.sections[uz(w)].compose(gm, a.restrictions[uz(gamma)].morphisms[uz(f)]);
        const int h = e.compose(p, q);
        CHECK(g.morphisms[uz(h)] == std::make_pair(c.compose(alpha, gamma), expect_f));
        for (int r = 0; r < e.morphism_count(); ++r)
          if (e.target(r) == e.source(q)) CHECK(e.compose(e.compose(p, q), r) == e.compose(p, e.compose(q, r)));
      }
      CHECK(e.compose(p, e.identity(e.source(p))) == p);
      CHECK(e.compose(e.identity(e.target(p)), p) == p);
    }
    CHECK(is_functor(e, c, g.forgetful));
    ++checked;
  }
  CHECK(checked == corpus.size());
}

TEST_CASE("non-functorial presheaves are rejected") {
  // z2 acting on [1] by the constant functor at 0: t^* t^* != id^*.
  const FiniteCategory& z2 = named("z2");
  const FiniteCategory l1 = linear_order(1);
  CategoryPresheaf a;
  a.index = z2;
  a.sections = {l1};
  for (int m = 0; m < z2.morphism_count(); ++m)
    a.restrictions.push_back(z2.is_identity(m) ? identity_functor(l1) : FunctorData{{0, 0}, {l1.identity(0), l1.identity(0), l1.identity(0)}});
  CHECK_THROWS_AS(validate(a), std::invalid_argument);
  CHECK_THROWS_AS(grothendieck(a), std::invalid_argument);
  // Not a functor at all.
  CategoryPresheaf b = on_arrow(l1, l1, FunctorData{{1, 0}, {l1.identity(1), l1.identity(0), l1.hom(0, 1)[0]}});
  CHECK_THROWS_AS(validate(b), std::invalid_argument);
}

TEST_CASE("covering sieves are carried to the pairs") {
  CategoryPresheaf a = on_arrow(discrete_category(2), terminal_category(), FunctorData{{0}, {0}});
  a.sections[0] = discrete_category(2);
  a.restrictions[uz(a.index.hom(0, 1)[0])] = FunctorData{{0}, {discrete_category(2).identity(0)}};
  // Sieves on object 1 of [1]: the maximal one and {0 -> 1}.
  const int arrow = a.index.hom(0, 1)[0];
  std::vector<int> maximal{a.index.identity(1), arrow};
  std::sort(maximal.begin(), maximal.end());
  a.topology.covering = {{{a.index.identity(0)}}, {maximal, {arrow}}};
  const Grothendieck g = grothendieck(a);
  REQUIRE(g.topology.covering.size() == uz(g.category.object_count()));
  const int top = g.object_of(1, 0);
  REQUIRE(g.topology.covering[uz(top)].size() == 2);
  for (int m : g.topology.covering[uz(top)][1]) CHECK(g.morphisms[uz(m)].first == arrow);
  // c^{-1}({0 -> 1}) on (1, x) contains every (arrow, f) into it.
  int into = 0;
  for (int m = 0; m < g.category.morphism_count(); ++m)
    if (g.category.target(m) == top && g.morphisms[uz(m)].first == arrow) ++into;
  CHECK(static_cast<int>(g.topology.covering[uz(top)][1].size()) == into);
  a.topology.covering = {{{arrow}}, {}};
  CHECK_THROWS_AS(validate(a), std::invalid_argument);
}

TEST_CASE("A-diagrams: trivial actions and a corrupted composition") {
  // Identity-only A = discrete(2) acting trivially on Delta^1 + dDelta^2.
  const Coproduct cp = disjoint_union({share(standard(1)), share(boundary(2))});
  ADiagram d;
  d.a = constant_presheaf(terminal_category(), discrete_category(2));
  d.x.index = terminal_category();
  d.x.sections = {cp.object};
  d.x.restrictions = {SimplicialMap::identity(cp.object)};
  const SimplicialSet& x = *cp.object;
  d.pi = {std::vector<std::vector<int>>(uz(x.dimension() + 1))};
  for (int part = 0; part < 2; ++part) {
    const SimplicialSet& s = *cp.injections[uz(part)].source();
    for (int n = 0; n <= s.dimension(); ++n)
      for (int k = 0; k < s.cell_count(n); ++k) {
        const CellId at = cp.injections[uz(part)].image({n, k}).cell;
        auto& level = d.pi[0][uz(at.dim)];
        if (level.size() <= uz(at.index)) level.resize(uz(at.index + 1));
        level[uz(at.index)] = part;
      }
  }
  d.action = {std::vector<std::vector<std::vector<SimplexRef>>>(2)};
  for (int f = 0; f < 2; ++f) {
    d.action[0][uz(f)].resize(uz(x.dimension() + 1));
    for (int n = 0; n <= x.dimension(); ++n)
      for (int k = 0; k < x.cell_count(n); ++k) d.action[0][uz(f)][uz(n)].push_back(SimplexRef::of({n, k}));
  }
  CHECK(check_adiagram(d).ok);
  // Mislabel one vertex.
  ADiagram bad = d;
  bad.pi[0][0][0] = 1 - bad.pi[0][0][0];
  const ADiagramReport r0 = check_adiagram(bad);
  CHECK_FALSE(r0.ok);
  CHECK(r0.axiom == "pi");

  // Z/2 acting on two points; the corrupted action sends both to a, so
  // m(m(b, t), t) = a but m(b, t t) = m(b, id) = b.
  const FiniteCategory& z2 = named("z2");
  const int t = z2.identity(0) == 0 ? 1 : 0;
  ADiagram e;
  e.a = constant_presheaf(terminal_category(), z2);
  SimplicialSet two;
  two.add_cell(0, {});
  two.add_cell(0, {});
  e.x.index = terminal_category();
  e.x.sections = {share(std::move(two))};
  e.x.restrictions = {SimplicialMap::identity(e.x.sections[0])};
  e.pi = {{{0, 0}}};
  e.action = {std::vector<std::vector<std::vector<SimplexRef>>>(2)};
  const SimplexRef a = SimplexRef::of({0, 0}), b = SimplexRef::of({0, 1});
  e.action[0][uz(z2.identity(0))] = {{a, b}};
  e.action[0][uz(t)] = {{b, a}};
  CHECK(check_adiagram(e).ok);
  e.action[0][uz(t)] = {{a, a}};
  const ADiagramReport r = check_adiagram(e);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "composition");
  CHECK(r.witness == std::vector<int>{0, 0, 1, t, t});
}

TEST_CASE("A-diagrams of bisimplicial sets") {
  for (const auto& nb : bisimplicial_corpus())
    for (int n = 1; n <= 2; ++n) {
      const ADiagram d = adiagram_from_bisimplicial(*nb.object, n);
      const ADiagramReport r = check_adiagram(d);
      CHECK_MESSAGE(r.ok, nb.name << " " << r.axiom << " " << r.detail);
    }
  // Corrupting the action of a coface breaks some axiom.
  ADiagram d = adiagram_from_bisimplicial(generator_F(2), 2);
  const SimplexCategory delta = simplex_category(2);
  std::vector<int> to_op;
  opposite(delta.category, &to_op);
  const int f = to_op[uz(delta.index_of(Monotone::coface(2, 0)))];
  // The edge 0 -> 2 of slice 2 is sent to the vertex slice as its source.
  auto& level = d.action[0][uz(f)];
  bool corrupted = false;
  for (int n = 0; n < static_cast<int>(level.size()) && !corrupted; ++n)
    for (int k = 0; k < static_cast<int>(level[uz(n)].size()) && !corrupted; ++k)
      if (d.pi[0][uz(n)][uz(k)] == 2) {
        for (int k2 = 0; k2 < static_cast<int>(level[uz(n)].size()); ++k2)
          if (level[uz(n)][uz(k2)] != level[uz(n)][uz(k)] && d.pi[0][uz(level[uz(n)][uz(k2)].cell.dim)][uz(level[uz(n)][uz(k2)].cell.index)] == 1) {
            level[uz(n)][uz(k)] = level[uz(n)][uz(k2)];
            corrupted = true;
            break;
          }
      }
  REQUIRE(corrupted);
  CHECK_FALSE(check_adiagram(d).ok);
}

TEST_CASE("bisimplicial sets and presheaves on Delta are inverse on truncations") {
  for (const auto& nb : bisimplicial_corpus())
    for (int n = 0; n <= 3; ++n) {
      const SSetPresheaf p = bisimplicial_to_presheaf(*nb.object, n);
      validate(p);
      const BSetPtr back = presheaf_to_bisimplicial(p, n);
      CHECK_MESSAGE(isomorphic(*back, *truncate(nb.object, n)), nb.name << " N=" << n);
      // And the other way: sections of the round trip match.
      const SSetPresheaf again = bisimplicial_to_presheaf(*back, n);
      for (int m = 0; m <= n; ++m) CHECK(isomorphic(*skeleton(again.sections[uz(m)], n).object, *skeleton(p.sections[uz(m)], n).object));
    }
  const BSetPtr f2 = share(generator_F(2));
  const BSetPtr r = presheaf_to_bisimplicial(bisimplicial_to_presheaf(*f2, 3), 3);
  CHECK(isomorphic(*r, *f2));
  for (int p = 0; p <= 2; ++p) CHECK(r->cell_count(p, 0) == f2->cell_count(p, 0));
  CHECK(r->cell_count(0, 0) == 3);
  CHECK(r->cell_count(1, 0) == 3);
  CHECK(r->cell_count(2, 0) == 1);

  const BSetPtr box = share(box_product(standard(1), standard(1)));
  const BSetPtr rb = presheaf_to_bisimplicial(bisimplicial_to_presheaf(*box, 2), 2);
  const auto iso = find_isomorphism(rb, box);
  REQUIRE(iso);
  for (const BiCellId& c : rb->cells()) CHECK(iso->image(c).is_nondegenerate());
  CHECK(rb->total_cells() == box->total_cells());

  for (const auto& nc : named_categories()) {
    const SSetPresheaf p = bisimplicial_to_presheaf(disc_nerve(nc.category, 3), 3);
    for (const SSetPtr& s : p.sections) CHECK(s->dimension() <= 0);
  }
  CHECK_THROWS_AS(presheaf_to_bisimplicial(bisimplicial_to_presheaf(*f2, 2), 3), std::invalid_argument);
}

TEST_CASE("sectionwise application") {
  // A presheaf of categories on [1]: iso_and_arrow restricted to chaotic1
  // along every functor; the nerves carry J sectionwise.
  const FiniteCategory ia = iso_and_arrow(), c1 = chaotic_groupoid(1);
  int tried = 0;
  for (const FunctorData& r : enumerate_functors(ia, c1)) {
    const CategoryPresheaf a = on_arrow(c1, ia, r);
    const SSetPresheaf p = nerve_presheaf(a, 3);
    const SectionwiseResult j = sectionwise_apply("core-J", p, 0);
    REQUIRE(j.presheaf);
    CHECK(j.natural);
    for (int u = 0; u < 2; ++u)
      CHECK(isomorphic(*j.presheaf->sections[uz(u)], *nerve(iso_subcategory(a.sections[uz(u)]), 3).object));
    ++tried;
  }
  CHECK(tried > 0);

  // Identity.
  const CategoryPresheaf a = on_arrow(chaotic_groupoid(1), linear_order(1), FunctorData{{0, 1}, {0, 1, 2}});
  validate(a);
  const SSetPresheaf p = nerve_presheaf(a, 3);
  const SectionwiseResult id = sectionwise_apply("identity", p, 0);
  REQUIRE(id.presheaf);
  for (int u = 0; u < 2; ++u) CHECK(*id.presheaf->sections[uz(u)] == *p.sections[uz(u)]);
  for (std::size_t m = 0; m < p.restrictions.size(); ++m) CHECK(id.presheaf->restrictions[m] == p.restrictions[m]);

  // k_! and k^! sectionwise, with their naturality squares.
  for (const char* name : {"k-shriek", "k-upper"}) {
    const SectionwiseResult r = sectionwise_apply(name, p, 3);
    REQUIRE(r.presheaf);
    CHECK_MESSAGE(r.natural, name << ": " << r.detail);
  }
  const SectionwiseResult ks = sectionwise_apply("k-shriek", p, 3);
  CHECK(isomorphic(*ks.presheaf->sections[1], *k_shriek(p.sections[1], 3).value));

  // Homology over a two-object index category matches direct calls.
  SSetPresheaf two;
  two.index = discrete_category(2);
  two.sections = {share(boundary(3)), share(boundary(2))};
  for (int m = 0; m < 2; ++m) two.restrictions.push_back(SimplicialMap::identity(two.sections[uz(two.index.source(m))]));
  const SectionwiseResult h = sectionwise_apply("homology", two, 0);
  REQUIRE(h.report.size() == 2);
  for (int u = 0; u < 2; ++u) {
    std::string expect;
    for (const HomologyGroup& g : homology(*two.sections[uz(u)])) expect += (expect.empty() ? "" : ", ") + g.str();
    CHECK(h.report[uz(u)] == two.index.object_name(u) + ": " + expect);
  }
  CHECK(h.report[0] == "0: Z, 0, Z");
  const SectionwiseResult k = sectionwise_apply("kan", two, 2);
  CHECK(k.report[0] == "0: fails");
  CHECK_THROWS_AS(sectionwise_apply("nonsense", two, 0), std::invalid_argument);
}
