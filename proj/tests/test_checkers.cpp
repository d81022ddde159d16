#include <random>

#include "doctest.h"
#include "segal/checkers.hpp"
#include "segal/corpus.hpp"
#include "segal/hom.hpp"
#include "segal/segal_space.hpp"

using namespace segal;

namespace {

SSetPtr pt() {
  static const SSetPtr p = share(point());
  return p;
}

// All simplices of X of dimension n, degenerate ones included.
std::vector<SimplexRef> simplices_of(const SimplicialSet& x, int n) {
  std::vector<SimplexRef> out;
  for (int k = 0; k <= std::min(n, x.dimension()); ++k)
    for (DegeneracyMask m : surjection_masks(n, k))
      for (int c = 0; c < x.cell_count(k); ++c) out.push_back(SimplexRef{m, {k, c}});
  return out;
}

// Applies an assignment on nondegenerate cells to an arbitrary simplex.
SimplexRef extend(const SimplicialSet& x, const std::vector<std::vector<SimplexRef>>& asg, const SimplexRef& s) {
  const SimplexRef& base = asg[static_cast<std::size_t>(s.cell.dim)][static_cast<std::size_t>(s.cell.index)];
  return x.apply(Monotone::surjection(s.dim(), s.degeneracy), base);
}

// Exhaustive search over every assignment of B's cells, checking everything
// at the end.
bool brute_force_lift_exists(const LiftingProblem& p) {
  const SimplicialSet& b = *p.i.target();
  const SimplicialSet& x = *p.f.source();
  std::vector<CellId> cells;
  for (int n = 0; n <= b.dimension(); ++n)
    for (int c = 0; c < b.cell_count(n); ++c) cells.push_back({n, c});
  std::vector<std::vector<SimplexRef>> asg(static_cast<std::size_t>(b.dimension() + 1));
  for (int n = 0; n <= b.dimension(); ++n) asg[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(b.cell_count(n)));
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == cells.size()) {
      for (const CellId& c : cells)
        for (int i = 0; c.dim > 0 && i <= c.dim; ++i)
          if (x.face(asg[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)], i) != extend(x, asg, b.faces(c)[static_cast<std::size_t>(i)]))
            return false;
      const SimplicialSet& a = *p.i.source();
      for (int n = 0; n <= a.dimension(); ++n)
        for (int c = 0; c < a.cell_count(n); ++c)
          if (extend(x, asg, p.i.image({n, c})) != p.top.image({n, c})) return false;
      for (const CellId& c : cells)
        if (p.f(asg[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)]) != p.bottom.image(c)) return false;
      return true;
    }
    const CellId c = cells[k];
    for (const SimplexRef& s : simplices_of(x, c.dim)) {
      asg[static_cast<std::size_t>(c.dim)][static_cast<std::size_t>(c.index)] = s;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

SimplicialSet random_subcomplex(std::mt19937& rng, int n) {
  const std::uint32_t full = (1u << (n + 1)) - 1;
  std::vector<std::uint32_t> tops;
  std::uniform_int_distribution<std::uint32_t> pick(1, full);
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < count; ++i) tops.push_back(pick(rng));
  return simplex_subcomplex(n, [tops](std::uint32_t s) {
    for (std::uint32_t t : tops)
      if ((s & ~t) == 0) return true;
    return false;
  });
}

}  // namespace

TEST_CASE("lifting examples") {
  const Nerve b1 = nerve(linear_order(1), 3);
  const SimplicialMap to_pt = to_point(b1.object, pt());
  const SSetPtr d2 = share(standard(2));
  const SSetPtr l21 = share(horn(2, 1));
  const SimplicialMap inner = simplex_subcomplex_inclusion(l21, 2);
  int lifts = 0;
  for (const SimplicialMap& top : enumerate_maps(l21, b1.object)) {
    const LiftingProblem p{inner, to_pt, top, to_point(d2, pt())};
    const auto l = solve_lifting(p);
    REQUIRE(l.has_value());
    CHECK(compose(*l, inner) == top);
    // Unique: fixing the horn leaves one map.
    const SimplexTable table(*b1.object, 2);
    MapSearch s(*d2, table);
    for (int n = 0; n <= 1; ++n)
      for (int c = 0; c < l21->cell_count(n); ++c) s.fix(inner.image({n, c}).cell, top.image({n, c}));
    CHECK(s.count() == 1);
    ++lifts;
  }
  CHECK(lifts == 4);

  // Empty source: any vertex lifts.
  const SSetPtr empty = share(empty_set());
  const SSetPtr d0 = share(standard(0));
  const SimplicialMap from_empty(empty, d0, {});
  const SimplicialMap empty_top(empty, b1.object, {});
  CHECK(solve_lifting({from_empty, to_pt, empty_top, SimplicialMap::identity(d0)}).has_value());

  // The endpoint inclusion 0 -> Delta^1 always lifts (degenerate edge).
  const SSetPtr d1 = share(standard(1));
  const SSetPtr l10 = share(horn(1, 0));
  const SimplicialMap end0 = simplex_subcomplex_inclusion(l10, 1);
  const SimplicialMap at1 = classifying_map(l10, b1.object, b1.vertex(1));
  CHECK(solve_lifting({end0, to_pt, at1, to_point(d1, pt())}).has_value());
  // Boundary (1, 0) has no edge from 1 to 0.
  const SSetPtr b1d = share(boundary(1));
  const SimplicialMap rev(b1d, b1.object, {{b1.vertex(1), b1.vertex(0)}});
  CHECK_FALSE(solve_lifting({simplex_subcomplex_inclusion(b1d, 1), to_pt, rev, to_point(d1, pt())}).has_value());

  // A square that does not commute is rejected.
  const SimplicialMap pick0 = classifying_map(d1, d1, SimplexRef{1, {0, 0}});
  const SimplicialMap bad_top = classifying_map(l10, d1, SimplexRef::of({0, 1}));
  CHECK_THROWS_AS(solve_lifting({end0, SimplicialMap::identity(d1), bad_top, pick0}), std::invalid_argument);
}

TEST_CASE("solve_lifting agrees with exhaustive assignment") {
  std::mt19937 rng(2024);
  int done = 0, with_lift = 0, attempts = 0;
  while (done < 40 && attempts < 2000) {
    ++attempts;
    const SSetPtr x = share(random_subcomplex(rng, 3));
    if (x->total_cells() > 12) continue;
    const SSetPtr y = std::uniform_int_distribution<int>(0, 1)(rng) ? pt() : share(standard(1));
    const auto fs = enumerate_maps(x, y);
    if (fs.empty()) continue;
    const SimplicialMap f = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
    const int bn = std::uniform_int_distribution<int>(1, 2)(rng);
    SimplicialSet a_raw = random_subcomplex(rng, bn);
    const SSetPtr a = share(std::move(a_raw));
    const SimplicialMap i = simplex_subcomplex_inclusion(a, bn);
    const SSetPtr b = i.target();
    const auto tops = enumerate_maps(a, x);
    if (tops.empty()) continue;
    const SimplicialMap top = tops[std::uniform_int_distribution<std::size_t>(0, tops.size() - 1)(rng)];
    std::vector<SimplicialMap> bottoms;
    for (const SimplicialMap& bt : enumerate_maps(b, y))
      if (compose(bt, i) == compose(f, top)) bottoms.push_back(bt);
    if (bottoms.empty()) continue;
    const LiftingProblem p{i, f, top, bottoms[std::uniform_int_distribution<std::size_t>(0, bottoms.size() - 1)(rng)]};
    const auto lift = solve_lifting(p);
    CHECK(lift.has_value() == brute_force_lift_exists(p));
    if (lift) {
      CHECK(compose(*lift, i) == top);
      CHECK(compose(f, *lift) == p.bottom);
      ++with_lift;
    }
    ++done;
  }
  CHECK(done == 40);
  CHECK(with_lift > 0);
  CHECK(with_lift < done);
}

TEST_CASE("Kan and quasi-category checks") {
  const Nerve b1 = nerve(linear_order(1), 3);
  const Verdict v = is_kan(b1, 3);
  CHECK(v.status == Status::fails);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->i.target()->dimension() == 2);
  CHECK_FALSE(solve_lifting(*v.counterexample).has_value());
  CHECK(is_kan(b1.object, 3).status == Status::fails);

  const Nerve g = nerve(chaotic_groupoid(1), 4);
  CHECK(is_kan(g, 3).status == Status::holds);
  // Generic path: truncated, but 2-coskeletal and checked through dimension 3.
  const Verdict kg = is_kan(g.object, 3);
  CHECK(kg.status == Status::holds);
  CHECK(is_kan(g.object, 2).status == Status::unknown);

  for (const NamedCategory& c : named_categories()) {
    const Nerve n = nerve(c.category, 4);
    CAPTURE(c.name);
    CHECK(is_quasi_category(n, 3).status == Status::holds);
    CHECK(is_quasi_category(n.object, 3).status == Status::holds);
    CHECK((is_kan(n, 3).status == Status::holds) == is_groupoid(c.category));
  }
  CHECK(is_quasi_category(share(horn(2, 1)), 2).status == Status::fails);
  CHECK(is_kan(share(boundary(2)), 2).status == Status::fails);
  CHECK(is_kan(pt(), 3).status == Status::holds);
}

TEST_CASE("trivial fibrations") {
  const SSetPtr d1 = share(standard(1));
  CHECK(is_trivial_fibration(SimplicialMap::identity(d1), 3).status == Status::holds);
  const Verdict v = is_trivial_fibration(to_point(d1, pt()), 3);
  CHECK(v.status == Status::fails);
  REQUIRE(v.counterexample);
  CHECK(v.detail.find("boundary(1)") != std::string::npos);
  const Nerve g = nerve(chaotic_groupoid(1), 4);
  CHECK(is_trivial_fibration(to_point(g.object, pt()), 3).status == Status::holds);
  // Holds by search, but only up to the truncation without the certificate.
  CHECK(is_trivial_fibration(to_point(g.object, pt()), 1).status == Status::unknown);
}

TEST_CASE("quasi-fibrations") {
  const Nerve g = nerve(chaotic_groupoid(1), 4);
  CHECK(is_quasi_fibration(to_point(g.object, pt()), 3).status == Status::holds);
  const Nerve b1 = nerve(linear_order(1), 4);
  // Over a point the endpoint condition is met by constant maps.
  CHECK(is_quasi_fibration(to_point(b1.object, pt()), 3).status == Status::holds);
}

TEST_CASE("Segal checks") {
  for (const NamedCategory& c : named_categories()) {
    CAPTURE(c.name);
    const BSetPtr d = share(disc_nerve(c.category, 4));
    CHECK(check_segal(d, Strategy::iso, 3).status == Status::holds);
  }
  const BSetPtr lin = share(disc_nerve(linear_order(2), 3));
  CHECK(check_segal(lin, Strategy::rlp, 3).status == Status::holds);
  CHECK(check_segal(lin, Strategy::homology, 3).status == Status::holds);
  // Removing the 2-cell of F(2) breaks the n = 2 condition.
  const BSetPtr f2 = share(generator_F(2));
  const BSetPtr cut = bisubobject(f2, [](BiCellId c) { return c.p < 2; }).object;
  CHECK(check_segal(cut, Strategy::iso, 3).status == Status::fails);
  CHECK(check_segal(cut, Strategy::iso, 1).status == Status::holds);
  for (const NamedBisimplicial& x : bisimplicial_corpus()) CHECK(check_segal(x.object, Strategy::iso, 1).status != Status::fails);
}

TEST_CASE("completeness checks") {
  CHECK(check_complete(share(generator_F(0)), 2).status == Status::holds);
  CHECK(check_complete(share(disc_nerve(linear_order(1), 3)), 2).status == Status::holds);
  const Verdict bad = check_complete(share(disc_nerve(chaotic_groupoid(1), 3)), 2);
  CHECK(bad.status == Status::fails);
  CHECK(check_complete(share(disc_nerve(chaotic_groupoid(1), 3)), 2, Strategy::homology).status == Status::fails);
}

TEST_CASE("weak equivalence oracle") {
  const std::vector<Strategy> all{Strategy::iso, Strategy::rlp, Strategy::homology, Strategy::homotopy};
  const SSetPtr circle = share(boundary(2));
  const Verdict id = weq_oracle(SimplicialMap::identity(circle), all, 3);
  CHECK(id.status == Status::holds);
  CHECK(id.strategy == "iso");

  const Nerve b = nerve(chaotic_groupoid(1), 4);
  const SSetPtr d1 = share(standard(1));
  const SimplicialMap unit = classifying_map(d1, b.object, b.chain_simplex(std::vector<int>{b.category->hom(0, 1)[0]}));
  const Verdict u = weq_oracle(unit, all, 4);
  CHECK(u.status == Status::holds);
  CHECK(u.strategy == "homology");
  CHECK(u.detail.find("necessary condition") != std::string::npos);

  const Verdict collapse = weq_oracle(to_point(circle, pt()), all, 3);
  CHECK(collapse.status == Status::fails);
  CHECK(collapse.strategy == "homology");

  const Verdict h = weq_oracle(to_point(d1, pt()), {Strategy::homotopy}, 2);
  CHECK(h.status == Status::holds);
  CHECK(h.strategy == "homotopy");
  CHECK(weq_oracle(to_point(circle, pt()), {Strategy::homotopy}, 2).status == Status::unknown);
}
