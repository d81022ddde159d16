#include "segal/checkers.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "segal/hom.hpp"
#include "segal/homology.hpp"
#include "segal/limits.hpp"
#include "segal/segal_space.hpp"

namespace segal {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

bool same_map(const SimplicialMap& a, const SimplicialMap& b) {
  const SimplicialSet& s = *a.source();
  for (int n = 0; n <= s.dimension(); ++n)
    for (int c = 0; c < s.cell_count(n); ++c)
      if (a.image({n, c}) != b.image({n, c})) return false;
  return true;
}

// Clips a bound to non-exact truncations.
struct Clip {
  int bound = 0;
  bool inexact = false;
  void add(const std::optional<Truncation>& t) {
    if (t && !t->exact) {
      bound = std::min(bound, t->bound);
      inexact = true;
    }
  }
};

int source_dim(const NamedInclusion& m) { return m.map.target()->dimension(); }

// Calls visit for every commutative square over family member m.
bool for_each_square(const SimplicialMap& f, const SimplicialMap& i, const std::function<bool(const LiftingProblem&)>& visit) {
  const SSetPtr& a = i.source();
  const SSetPtr& b = i.target();
  const SimplexTable ty(*f.target(), std::max(b->dimension(), 0));
  bool keep_going = true;
  for (const SimplicialMap& top : enumerate_maps(a, f.source())) {
    MapSearch search(*b, ty);
    bool consistent = true;
    for (int n = 0; n <= a->dimension() && consistent; ++n)
      for (int c = 0; c < a->cell_count(n); ++c) {
        const SimplexRef ic = i.image({n, c});
        const SimplexRef want = f(top.image({n, c}));
        if (ic.is_nondegenerate()) search.fix(ic.cell, want);
      }
    search.run([&](const MapSearch::Assignment& asg) {
      SimplicialMap bottom = search.to_map(asg, b, f.target());
      if (!same_map(compose(bottom, i), compose(f, top))) return true;
      keep_going = visit(LiftingProblem{i, f, top, std::move(bottom)});
      return keep_going;
    });
    if (!keep_going) break;
  }
  return keep_going;
}

// Lifting search for a square known to commute; tx covers X up to dim B.
std::optional<SimplicialMap> lift_with(const LiftingProblem& p, const SimplexTable& tx) {
  const SSetPtr& a = p.i.source();
  const SSetPtr& b = p.i.target();
  MapSearch search(*b, tx);
  bool i_mono = true;
  for (int n = 0; n <= a->dimension(); ++n)
    for (int c = 0; c < a->cell_count(n); ++c) {
      const SimplexRef ic = p.i.image({n, c});
      if (ic.is_nondegenerate())
        search.fix(ic.cell, p.top.image({n, c}));
      else
        i_mono = false;
    }
  search.set_filter([&](CellId c, int cand) { return p.f(tx.simplex(c.dim, cand)) == p.bottom.image(c); });
  std::optional<SimplicialMap> lift;
  search.run([&](const MapSearch::Assignment& asg) {
    SimplicialMap l = search.to_map(asg, b, p.f.source());
    if (!i_mono && !same_map(compose(l, p.i), p.top)) return true;
    lift = std::move(l);
    return false;
  });
  return lift;
}

struct RlpResult {
  Verdict verdict;
  bool inexact = false;
};

RlpResult rlp_core(const SimplicialMap& f, const std::vector<NamedInclusion>& family, int bound) {
  Clip clip{bound};
  clip.add(f.source()->truncation);
  clip.add(f.target()->truncation);
  RlpResult res;
  res.inexact = clip.inexact;
  res.verdict.strategy = "rlp";
  res.verdict.bound = clip.bound;
  for (const NamedInclusion& m : family) {
    if (source_dim(m) > clip.bound) continue;
    std::optional<LiftingProblem> bad;
    const SimplexTable tx(*f.source(), std::max(source_dim(m), 0));
    for_each_square(f, m.map, [&](const LiftingProblem& p) {
      if (lift_with(p, tx)) return true;
      bad = p;
      return false;
    });
    if (bad) {
      res.verdict.status = Status::fails;
      res.verdict.detail = "no lift against " + m.name;
      res.verdict.counterexample = std::move(bad);
      return res;
    }
  }
  res.verdict.status = clip.inexact ? Status::unknown : Status::holds;
  res.verdict.detail = clip.inexact ? "all squares lift up to dimension " + std::to_string(clip.bound) + " of a non-exact truncation"
                                    : "all squares lift up to dimension " + std::to_string(clip.bound);
  return res;
}

// Upgrades a bounded pass to "holds" when coskeletality covers all higher dimensions.
void certify(Verdict& v, std::optional<int> cosk, int needed, const std::string& why) {
  if (v.status == Status::fails || !cosk) return;
  if (v.bound >= needed) {
    v.status = Status::holds;
    v.detail += "; " + why;
  }
}

SSetPtr shared_point() {
  static const SSetPtr pt = share(point());
  return pt;
}

}  // namespace

void check_square(const LiftingProblem& p) {
  if (p.i.target().get() != p.bottom.source().get() && !(*p.i.target() == *p.bottom.source()))
    throw std::invalid_argument("lifting problem: i and bottom disagree on B");
  if (!(*p.i.source() == *p.top.source())) throw std::invalid_argument("lifting problem: i and top disagree on A");
  if (!(*p.f.source() == *p.top.target())) throw std::invalid_argument("lifting problem: top does not land in the source of f");
  if (!(*p.f.target() == *p.bottom.target())) throw std::invalid_argument("lifting problem: bottom does not land in the target of f");
  if (!same_map(compose(p.f, p.top), compose(p.bottom, p.i))) throw std::invalid_argument("lifting problem: square does not commute");
}

std::optional<SimplicialMap> solve_lifting(const LiftingProblem& p) {
  check_square(p);
  const SimplexTable tx(*p.f.source(), std::max(p.i.target()->dimension(), 0));
  return lift_with(p, tx);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::unknown: return "unknown-at-bound";
  }
  return "unknown-at-bound";
}

std::vector<NamedInclusion> horn_inclusions(int max_dim, bool inner_only) {
  std::vector<NamedInclusion> out;
  for (int n = inner_only ? 2 : 1; n <= max_dim; ++n)
    for (int k = inner_only ? 1 : 0; k <= (inner_only ? n - 1 : n); ++k)
      out.push_back({"horn(" + std::to_string(n) + "," + std::to_string(k) + ")", simplex_subcomplex_inclusion(share(horn(n, k)), n)});
  return out;
}

std::vector<NamedInclusion> boundary_inclusions(int max_dim) {
  std::vector<NamedInclusion> out;
  for (int n = 0; n <= max_dim; ++n)
    out.push_back({"boundary(" + std::to_string(n) + ")", simplex_subcomplex_inclusion(share(boundary(n)), n)});
  return out;
}

Verdict has_rlp(const SimplicialMap& f, const std::vector<NamedInclusion>& family, int bound) {
  return rlp_core(f, family, bound).verdict;
}

Verdict is_kan(const SSetPtr& x, int bound) {
  Verdict v = rlp_core(to_point(x, shared_point()), horn_inclusions(bound, false), bound).verdict;
  if (x->coskeletal)
    certify(v, x->coskeletal, *x->coskeletal + 1, "higher horns fill since X is " + std::to_string(*x->coskeletal) + "-coskeletal");
  return v;
}

Verdict is_quasi_category(const SSetPtr& x, int bound) {
  Verdict v = rlp_core(to_point(x, shared_point()), horn_inclusions(bound, true), bound).verdict;
  if (x->coskeletal)
    certify(v, x->coskeletal, *x->coskeletal + 1, "higher horns fill since X is " + std::to_string(*x->coskeletal) + "-coskeletal");
  return v;
}

Verdict is_kan(const Nerve& n, int bound) {
  Verdict v;
  v.strategy = "groupoid";
  v.bound = bound;
  if (is_groupoid(*n.category)) {
    v.status = Status::holds;
    v.detail = "nerve of a groupoid";
    return v;
  }
  // Some outer 2-horn has no filler; find one as the certificate.
  const Nerve small = nerve(*n.category, 2);
  Verdict search = rlp_core(to_point(small.object, shared_point()), horn_inclusions(2, false), 2).verdict;
  v.status = Status::fails;
  v.detail = "category has a non-invertible morphism";
  if (search.status == Status::fails) {
    v.detail += "; " + search.detail;
    v.counterexample = std::move(search.counterexample);
  }
  return v;
}

Verdict is_quasi_category(const Nerve& n, int bound) {
  (void)n;
  Verdict v;
  v.status = Status::holds;
  v.strategy = "nerve";
  v.bound = bound;
  v.detail = "nerves have unique inner horn fillers";
  return v;
}

Verdict is_trivial_fibration(const SimplicialMap& f, int bound) {
  Verdict v = rlp_core(f, boundary_inclusions(bound), bound).verdict;
  const auto& cx = f.source()->coskeletal;
  const auto& cy = f.target()->coskeletal;
  if (cx && cy) {
    const int c = std::max(*cx, *cy);
    certify(v, c, c, "higher boundaries lift uniquely since both sides are " + std::to_string(c) + "-coskeletal");
  }
  return v;
}

Verdict is_kan_fibration(const SimplicialMap& f, int bound) {
  Verdict v = rlp_core(f, horn_inclusions(bound, false), bound).verdict;
  const auto& cx = f.source()->coskeletal;
  const auto& cy = f.target()->coskeletal;
  if (cx && cy) {
    const int c = std::max(*cx, *cy);
    certify(v, c, c + 1, "higher horns lift since both sides are " + std::to_string(c) + "-coskeletal");
  }
  return v;
}

Verdict is_quasi_fibration(const SimplicialMap& f, int bound) {
  RlpResult inner = rlp_core(f, horn_inclusions(bound, true), bound);
  if (inner.verdict.status == Status::fails) return inner.verdict;
  const Nerve j = nerve(chaotic_groupoid(1), bound);
  const SimplicialMap end = classifying_map(shared_point(), j.object, j.vertex(0));
  RlpResult iso = rlp_core(f, {NamedInclusion{"endpoint of B pi(Delta^1)", end}}, bound);
  if (iso.verdict.status == Status::fails) return iso.verdict;
  Verdict v = inner.verdict;
  v.bound = std::min(inner.verdict.bound, iso.verdict.bound);
  const auto& cx = f.source()->coskeletal;
  const auto& cy = f.target()->coskeletal;
  // The interval is truncated at `bound`; its lifts are exact only when both
  // sides are coskeletal below the truncation.
  if (cx && cy && v.bound >= std::max(*cx, *cy) + 1) {
    v.status = Status::holds;
    v.detail = "inner horns and the interval endpoint lift; exact by coskeletality";
  } else {
    v.status = Status::unknown;
    v.detail = "inner horns and the truncated interval endpoint lift up to dimension " + std::to_string(v.bound);
  }
  return v;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::iso: return "iso";
    case Strategy::rlp: return "rlp";
    case Strategy::homology: return "homology";
    case Strategy::homotopy: return "homotopy";
  }
  return "iso";
}

Strategy strategy_from_string(const std::string& name) {
  for (Strategy s : {Strategy::iso, Strategy::rlp, Strategy::homology, Strategy::homotopy})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

namespace {

// Decides one comparison map with a single strategy.
Verdict test_map(const SimplicialMap& f, Strategy s, int bound) {
  if (s == Strategy::iso) {
    Verdict v;
    v.strategy = "iso";
    v.bound = bound;
    v.status = is_iso(f) ? Status::holds : Status::fails;
    v.detail = v.status == Status::holds ? "isomorphism" : "not an isomorphism";
    return v;
  }
  return weq_oracle(f, {s}, bound);
}

}  // namespace

Verdict check_segal(const BSetPtr& x, Strategy strategy, int bound) {
  Clip clip{bound};
  clip.add(x->htruncation);
  const bool vinexact = x->vtruncation && !x->vtruncation->exact;
  Verdict out;
  out.strategy = to_string(strategy);
  out.bound = clip.bound;
  bool all_exact = true;
  for (int n = 1; n <= clip.bound; ++n) {
    const SegalMap s = segal_map(*x, n);
    Verdict v = test_map(s.comparison, strategy, bound);
    if (v.status == Status::fails) {
      v.detail = "Segal map for n = " + std::to_string(n) + ": " + v.detail;
      v.bound = n;
      return v;
    }
    if (v.status == Status::unknown) all_exact = false;
    if (strategy == Strategy::homology && v.status == Status::holds) out.detail = v.detail;
  }
  out.status = Status::holds;
  std::string note = "Segal maps pass for n <= " + std::to_string(clip.bound);
  if (!out.detail.empty()) note += " (" + out.detail + ")";
  out.detail = note;
  if (!all_exact || vinexact) {
    out.status = Status::unknown;
    out.detail += "; some level is only known up to a truncation";
  } else if (clip.inexact) {
    out.status = Status::unknown;
    out.detail += " on a non-exact horizontal truncation";
    // A c-coskeletal X satisfies every Segal condition once n <= c + 1 do.
    if (x->hcoskeletal && clip.bound >= *x->hcoskeletal + 1) {
      out.status = Status::holds;
      out.detail += "; higher n follow since X is horizontally " + std::to_string(*x->hcoskeletal) + "-coskeletal";
    }
  }
  return out;
}

Verdict check_complete(const BSetPtr& x, int bound, Strategy strategy) {
  Verdict out;
  out.strategy = to_string(strategy);
  Clip hclip{bound};
  hclip.add(x->htruncation);
  Clip vclip{bound};
  vclip.add(x->vtruncation);
  const int t = hclip.bound;
  const int top_q = vclip.bound;
  out.bound = std::min(t, top_q);
  // hom(K, X) = hom(sk_c K, X) for horizontally c-coskeletal X.
  const bool exact_interval = x->hcoskeletal && *x->hcoskeletal <= t;

  const Nerve interval = nerve(chaotic_groupoid(1), std::max(t, 0));
  std::vector<BSetPtr> boxes;
  std::vector<SSetPtr> simplices;
  std::vector<std::vector<BisimplicialMap>> maps;
  std::vector<std::map<std::vector<std::vector<std::vector<BiRef>>>, int>> index;
  auto key = [](const BisimplicialMap& m) {
    std::vector<std::vector<std::vector<BiRef>>> k;
    const BisimplicialSet& s = *m.source();
    k.resize(uz(s.hdim() + 1), std::vector<std::vector<BiRef>>(uz(s.vdim() + 1)));
    for (const BiCellId& c : s.cells()) k[uz(c.p)][uz(c.q)].push_back(m.image(c));
    return k;
  };
  for (int q = 0; q <= top_q + 1; ++q) {
    simplices.push_back(share(standard(q)));
    boxes.push_back(share(box_product(*interval.object, *simplices.back())));
    if (q > top_q) break;
    maps.push_back(enumerate_bimaps(boxes.back(), x));
    index.emplace_back();
    for (std::size_t e = 0; e < maps.back().size(); ++e) index.back()[key(maps.back()[e])] = static_cast<int>(e);
  }
  const SSetPtr kb = interval.object;
  const SimplicialMap kid = SimplicialMap::identity(kb);
  auto restrict_along = [&](int from_q, int to_q, const Monotone& theta, int e) {
    const BisimplicialMap along = box_map(boxes[uz(to_q)], boxes[uz(from_q)], kid, simplex_map(simplices[uz(to_q)], simplices[uz(from_q)], theta));
    return index[uz(to_q)].at(key(compose(maps[uz(from_q)][uz(e)], along)));
  };
  LevelData data;
  for (int q = 0; q <= top_q; ++q) data.counts.push_back(static_cast<int>(maps[uz(q)].size()));
  data.face = [&](int n, int i, int e) { return restrict_along(n, n - 1, Monotone::coface(n, i), e); };
  data.degeneracy = [&](int n, int j, int e) { return restrict_along(n, n + 1, Monotone::codegeneracy(n, j), e); };
  const Leveled hom_space = from_levels(data);

  // Restriction to the vertex 0 of the interval.
  const VerticalSlice slice0 = vertical_slice(*x, 0);
  const Subcomplex target = skeleton(slice0.object, top_q);
  std::vector<std::vector<SimplexRef>> images(uz(hom_space.object->dimension() + 1));
  for (int q = 0; q <= top_q; ++q)
    for (std::size_t e = 0; e < maps[uz(q)].size(); ++e) {
      const SimplexRef& nf = hom_space.normal_form[uz(q)][e];
      if (!nf.is_nondegenerate()) continue;
      const BiRef b = maps[uz(q)][e](BiRef::of({0, q, 0}));
      const SimplexRef s = slice0.simplex(b);
      auto& row = images[uz(q)];
      if (row.size() <= uz(nf.cell.index)) row.resize(uz(nf.cell.index) + 1);
      row[uz(nf.cell.index)] = SimplexRef{s.degeneracy, {s.cell.dim, target.index[uz(s.cell.dim)][uz(s.cell.index)]}};
    }
  const SimplicialMap restriction(hom_space.object, target.object, std::move(images));

  Verdict v = test_map(restriction, strategy, bound);
  v.bound = out.bound;
  v.strategy = out.strategy;
  if (v.status == Status::fails) {
    v.detail = "restriction along F(0) -> I: " + v.detail;
    if (!exact_interval) {
      v.status = Status::unknown;
      v.detail += " (interval truncated at " + std::to_string(t) + " without a coskeletal certificate)";
    }
    return v;
  }
  v.detail = "restriction along F(0) -> I for q <= " + std::to_string(top_q) + ": " + v.detail;
  if (v.status == Status::holds && (!exact_interval || vclip.inexact)) {
    v.status = Status::unknown;
    v.detail += exact_interval ? "; vertical truncation is not exact" : "; interval truncated without a coskeletal certificate";
  }
  return v;
}

namespace {

// A homotopy between a and b (either direction) as a map X x Delta^1 -> Y.
bool homotopic(const SimplicialMap& a, const SimplicialMap& b) {
  const SSetPtr& x = a.source();
  const SSetPtr d1 = share(standard(1));
  const Product cyl = product(x, d1);
  const SimplexTable ty(*a.target(), std::max(cyl.object->dimension(), 0));
  auto end_inclusion = [&](int v) {
    const SimplicialMap c = compose(classifying_map(shared_point(), d1, SimplexRef::of({0, v})), to_point(x, shared_point()));
    return product_lift(cyl, SimplicialMap::identity(x), c);
  };
  const SimplicialMap i0 = end_inclusion(0), i1 = end_inclusion(1);
  for (int dir = 0; dir < 2; ++dir) {
    const SimplicialMap& at0 = dir == 0 ? a : b;
    const SimplicialMap& at1 = dir == 0 ? b : a;
    MapSearch search(*cyl.object, ty);
    for (int n = 0; n <= x->dimension(); ++n)
      for (int c = 0; c < x->cell_count(n); ++c) {
        search.fix(i0.image({n, c}).cell, at0.image({n, c}));
        search.fix(i1.image({n, c}).cell, at1.image({n, c}));
      }
    if (search.first()) return true;
  }
  return false;
}

constexpr int kInverseCandidates = 4096;

}  // namespace

Verdict weq_oracle(const SimplicialMap& f, const std::vector<Strategy>& strategies, int bound) {
  auto wants = [&](Strategy s) { return std::find(strategies.begin(), strategies.end(), s) != strategies.end(); };
  Clip clip{bound};
  clip.add(f.source()->truncation);
  clip.add(f.target()->truncation);
  std::vector<std::string> notes;
  if (wants(Strategy::iso)) {
    if (is_iso(f)) {
      Verdict v{clip.inexact ? Status::unknown : Status::holds, "iso", clip.bound, "isomorphism", {}, {}};
      if (clip.inexact) v.detail += " of non-exact truncations";
      else return v;
      notes.push_back(v.detail);
    } else {
      notes.push_back("not an isomorphism");
    }
  }
  if (wants(Strategy::rlp)) {
    Verdict v = is_trivial_fibration(f, bound);
    if (v.status == Status::holds) return v;
    notes.push_back("trivial fibration: " + to_string(v.status) + " (" + v.detail + ")");
  }
  if (wants(Strategy::homology)) {
    const int degree = clip.inexact ? clip.bound : std::max({f.source()->dimension(), f.target()->dimension(), 0}) + 1;
    const bool iso = homology_isomorphism_below(f, degree);
    Verdict v;
    v.strategy = "homology";
    v.bound = degree;
    if (!iso) {
      v.status = Status::fails;
      v.detail = "homology differs below degree " + std::to_string(degree);
      return v;
    }
    v.status = Status::holds;
    v.detail = "homology isomorphism in degrees < " + std::to_string(degree) + " (necessary condition only)";
    return v;
  }
  if (wants(Strategy::homotopy) && !clip.inexact) {
    const SimplexTable tx(*f.source(), std::max(f.target()->dimension(), 0));
    MapSearch search(*f.target(), tx);
    std::optional<SimplicialMap> inverse;
    int tried = 0;
    const SimplicialMap idx = SimplicialMap::identity(f.source());
    const SimplicialMap idy = SimplicialMap::identity(f.target());
    search.run([&](const MapSearch::Assignment& asg) {
      SimplicialMap g = search.to_map(asg, f.target(), f.source());
      if (homotopic(compose(g, f), idx) && homotopic(compose(f, g), idy)) {
        inverse = std::move(g);
        return false;
      }
      return ++tried < kInverseCandidates;
    });
    if (inverse) {
      Verdict v{Status::holds, "homotopy", clip.bound, "homotopy inverse found", std::move(inverse), {}};
      return v;
    }
    notes.push_back(tried >= kInverseCandidates ? "homotopy search exhausted its candidate budget" : "no homotopy inverse with one-step homotopies");
  }
  Verdict v;
  v.status = Status::unknown;
  v.strategy = strategies.empty() ? "none" : to_string(strategies.back());
  v.bound = clip.bound;
  for (const std::string& n : notes) v.detail += (v.detail.empty() ? "" : "; ") + n;
  return v;
}

}  // namespace segal
