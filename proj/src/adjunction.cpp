#include "segal/adjunction.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "segal/colimits.hpp"
#include "segal/hom.hpp"
#include "segal/limits.hpp"

namespace segal {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

SimplicialMap retarget(const SimplicialMap& f, const SSetPtr& target) { return SimplicialMap(f.source(), target, f.images()); }
SimplicialMap resource(const SimplicialMap& f, const SSetPtr& source) { return SimplicialMap(source, f.target(), f.images()); }

SSetPtr with_truncation(const SSetPtr& x, Truncation t) {
  SimplicialSet copy = *x;
  copy.truncation = t;
  return share(std::move(copy));
}

std::vector<int> chain_spine(const FiniteCategory& chaotic, int n) {
  std::vector<int> chain;
  for (int i = 0; i < n; ++i) chain.push_back(chaotic.hom(i, i + 1).at(0));
  return chain;
}

// The nondegenerate cell -> element index inverse of a normal-form table.
std::vector<std::vector<int>> cell_elements(const std::vector<std::vector<SimplexRef>>& nf, const SimplicialSet& x) {
  std::vector<std::vector<int>> out(uz(x.dimension() + 1));
  for (int n = 0; n <= x.dimension(); ++n) out[uz(n)].assign(uz(x.cell_count(n)), -1);
  for (std::size_t n = 0; n < nf.size(); ++n)
    for (std::size_t e = 0; e < nf[n].size(); ++e)
      if (nf[n][e].is_nondegenerate()) out[n][uz(nf[n][e].cell.index)] = static_cast<int>(e);
  return out;
}

std::shared_ptr<const Nerve> chaotic_nerve(int n, int max_dim) {
  static std::map<std::pair<int, int>, std::shared_ptr<const Nerve>> cache;
  static std::mutex lock;
  const std::lock_guard guard(lock);
  auto& slot = cache[{n, max_dim}];
  if (!slot) slot = std::make_shared<const Nerve>(nerve(chaotic_groupoid(n), max_dim));
  return slot;
}

bool has_nontrivial_iso(const FiniteCategory& c) {
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m) && c.is_iso(m)) return true;
  return false;
}

}  // namespace

FunctorData thin_functor(const FiniteCategory& c, const FiniteCategory& d, const std::vector<int>& objects) {
  FunctorData f;
  f.objects = objects;
  for (int m = 0; m < c.morphism_count(); ++m) {
    const auto& h = d.hom(objects.at(uz(c.source(m))), objects.at(uz(c.target(m))));
    if (h.size() != 1) throw std::invalid_argument("thin_functor: target hom-set is not a singleton");
    f.morphisms.push_back(h[0]);
  }
  return f;
}

SimplicialMap chaotic_nerve_map(const Nerve& source, const Nerve& target, const Monotone& theta) {
  return nerve_map(source, target, thin_functor(*source.category, *target.category, theta.values()));
}

KShriek k_shriek(const SSetPtr& x, int max_dim) {
  if (max_dim < 0) throw std::out_of_range("k_shriek needs max_dim >= 0");
  KShriek out;
  out.source = x;
  out.max_dim = max_dim;
  out.exact = x->dimension() <= 0;
  const int top = x->dimension();
  std::vector<SSetPtr> parts;
  std::vector<std::vector<int>> part_of(uz(top + 1));
  out.pieces.resize(uz(top + 1));
  for (int n = 0; n <= top; ++n)
    for (int c = 0; c < x->cell_count(n); ++c) {
      out.pieces[uz(n)].push_back(chaotic_nerve(n, max_dim));
      part_of[uz(n)].push_back(static_cast<int>(parts.size()));
      parts.push_back(out.pieces[uz(n)].back()->object);
    }
  const Coproduct cp = disjoint_union(parts);

  // inj_c(B pi(d^i) y) ~ inj_d(B pi(s) y) for every face d_i c = s^* d.
  std::map<std::tuple<int, int, std::uint32_t>, SimplicialMap> maps;
  auto piece_map = [&](int from, int to, const Monotone& theta, std::uint32_t key) -> const SimplicialMap& {
    auto it = maps.find({from, to, key});
    if (it == maps.end()) it = maps.emplace(std::make_tuple(from, to, key), chaotic_nerve_map(*chaotic_nerve(from, max_dim), *chaotic_nerve(to, max_dim), theta)).first;
    return it->second;
  };
  std::vector<Relation> rel;
  for (int n = 1; n <= top; ++n)
    for (int c = 0; c < x->cell_count(n); ++c)
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& face = x->faces({n, c})[uz(i)];
        const int m = face.cell.dim;
        const SimplicialMap& lhs = piece_map(n - 1, n, Monotone::coface(n, i), 0x80000000u | static_cast<std::uint32_t>(i));
        const SimplicialMap& rhs = piece_map(n - 1, m, Monotone::surjection(n - 1, face.degeneracy), face.degeneracy);
        const SimplicialMap& inj_c = cp.injections[uz(part_of[uz(n)][uz(c)])];
        const SimplicialMap& inj_d = cp.injections[uz(part_of[uz(m)][uz(face.cell.index)])];
        const SimplicialSet& src = *lhs.source();
        for (int k = 0; k <= src.dimension(); ++k)
          for (int y = 0; y < src.cell_count(k); ++y) rel.push_back({inj_c(lhs.image({k, y})), inj_d(rhs.image({k, y}))});
      }
  const Quotient q = quotient(cp.object, rel);
  out.value = with_truncation(q.object, Truncation{max_dim, out.exact});

  out.legs.resize(uz(top + 1));
  for (int n = 0; n <= top; ++n)
    for (int c = 0; c < x->cell_count(n); ++c)
      out.legs[uz(n)].push_back(retarget(compose(q.projection, cp.injections[uz(part_of[uz(n)][uz(c)])]), out.value));

  // Origins: invert the injections on cells.
  std::map<CellId, std::pair<CellId, CellId>> from_cp;
  for (int n = 0; n <= top; ++n)
    for (int c = 0; c < x->cell_count(n); ++c) {
      const SimplicialMap& inj = cp.injections[uz(part_of[uz(n)][uz(c)])];
      const SimplicialSet& piece = *inj.source();
      for (int k = 0; k <= piece.dimension(); ++k)
        for (int y = 0; y < piece.cell_count(k); ++y) from_cp[inj.image({k, y}).cell] = {CellId{n, c}, CellId{k, y}};
    }
  out.origin.resize(q.representative.size());
  for (std::size_t k = 0; k < q.representative.size(); ++k)
    for (const CellId& r : q.representative[k]) out.origin[k].push_back(from_cp.at(r));

  SSetPtr unit_source = x;
  if (top > max_dim) unit_source = skeleton(x, max_dim).object;
  std::vector<std::vector<SimplexRef>> im(uz(unit_source->dimension() + 1));
  for (int n = 0; n <= unit_source->dimension(); ++n)
    for (int c = 0; c < unit_source->cell_count(n); ++c) {
      const Nerve& piece = *out.pieces[uz(n)][uz(c)];
      const SimplexRef chain = n == 0 ? piece.vertex(0) : piece.chain_simplex(chain_spine(*piece.category, n));
      im[uz(n)].push_back(out.legs[uz(n)][uz(c)](chain));
    }
  out.unit = SimplicialMap(unit_source, out.value, std::move(im));
  return out;
}

SimplicialMap k_shriek_map(const SimplicialMap& f, const KShriek& source, const KShriek& target) {
  if (source.max_dim != target.max_dim) throw std::invalid_argument("k_shriek_map: bounds differ");
  const SimplicialSet& v = *source.value;
  std::map<std::pair<int, std::uint32_t>, SimplicialMap> cache;
  std::vector<std::vector<SimplexRef>> im(uz(v.dimension() + 1));
  for (int k = 0; k <= v.dimension(); ++k)
    for (int z = 0; z < v.cell_count(k); ++z) {
      const auto& [c, y] = source.origin[uz(k)][uz(z)];
      const SimplexRef fc = f.image(c);
      const int m = fc.cell.dim;
      auto it = cache.find({c.dim, fc.degeneracy});
      if (it == cache.end())
        it = cache.emplace(std::make_pair(c.dim, fc.degeneracy),
                           chaotic_nerve_map(*chaotic_nerve(c.dim, source.max_dim), *chaotic_nerve(m, source.max_dim), Monotone::surjection(c.dim, fc.degeneracy)))
                 .first;
      im[uz(k)].push_back(target.legs[uz(m)][uz(fc.cell.index)](it->second.image(y)));
    }
  return SimplicialMap(source.value, target.value, std::move(im));
}

KUpper k_upper(const Nerve& x, int max_dim) {
  if (max_dim < 0) throw std::out_of_range("k_upper needs max_dim >= 0");
  const auto& tr = x.object->truncation;
  if (tr && !tr->exact && tr->bound < max_dim) throw std::invalid_argument("k_upper: nerve truncated below max_dim");
  const FiniteCategory& c = *x.category;
  KUpper out;
  out.max_dim = max_dim;
  out.exact = !has_nontrivial_iso(c);
  std::vector<FiniteCategory> chaos;
  for (int n = 0; n <= max_dim + 1; ++n) chaos.push_back(chaotic_groupoid(n));
  std::vector<std::map<FunctorData, int>> index(uz(max_dim + 1));
  out.functors.resize(uz(max_dim + 1));
  for (int n = 0; n <= max_dim; ++n) {
    out.functors[uz(n)] = enumerate_functors(chaos[uz(n)], c);
    for (std::size_t e = 0; e < out.functors[uz(n)].size(); ++e) index[uz(n)][out.functors[uz(n)][e]] = static_cast<int>(e);
  }
  LevelData data;
  for (int n = 0; n <= max_dim; ++n) data.counts.push_back(static_cast<int>(out.functors[uz(n)].size()));
  data.face = [&](int n, int i, int e) {
    const FunctorData d = thin_functor(chaos[uz(n - 1)], chaos[uz(n)], Monotone::coface(n, i).values());
    return index[uz(n - 1)].at(compose_functors(out.functors[uz(n)][uz(e)], d));
  };
  data.degeneracy = [&](int n, int j, int e) {
    const FunctorData s = thin_functor(chaos[uz(n + 1)], chaos[uz(n)], Monotone::codegeneracy(n, j).values());
    return index[uz(n + 1)].at(compose_functors(out.functors[uz(n)][uz(e)], s));
  };
  const Leveled lv = from_levels(data);
  SimplicialSet value = *lv.object;
  value.truncation = Truncation{max_dim, out.exact};
  // Isomorphic to the nerve of Iso(C).
  value.coskeletal = 2;
  out.value = share(std::move(value));
  out.normal_form = lv.normal_form;

  const auto elems = cell_elements(lv.normal_form, *out.value);
  std::vector<std::vector<SimplexRef>> im(elems.size());
  for (std::size_t n = 0; n < elems.size(); ++n)
    for (int e : elems[n]) {
      const FunctorData& f = out.functors[n][uz(e)];
      if (n == 0) {
        im[n].push_back(x.vertex(f.objects[0]));
        continue;
      }
      std::vector<int> chain;
      for (int m : chain_spine(chaos[n], static_cast<int>(n))) chain.push_back(f.morphisms[uz(m)]);
      im[n].push_back(x.chain_simplex(chain));
    }
  out.counit = SimplicialMap(out.value, x.object, std::move(im));
  return out;
}

KUpper k_upper(const SSetPtr& x, int max_dim, std::optional<int> piece_bound) {
  if (max_dim < 0) throw std::out_of_range("k_upper needs max_dim >= 0");
  const int d = std::max(x->dimension(), 0);
  const int t = piece_bound.value_or(std::max(d + 2, max_dim));
  if (t < max_dim) throw std::invalid_argument("k_upper: piece bound below max_dim");
  KUpper out;
  out.max_dim = max_dim;
  out.piece_bound = t;
  out.exact = x->dimension() <= 0 && !(x->truncation && !x->truncation->exact);
  std::vector<std::map<std::vector<std::vector<SimplexRef>>, int>> index(uz(max_dim + 1));
  out.maps.resize(uz(max_dim + 1));
  for (int n = 0; n <= max_dim; ++n) {
    out.maps[uz(n)] = enumerate_maps(chaotic_nerve(n, t)->object, x);
    for (std::size_t e = 0; e < out.maps[uz(n)].size(); ++e) index[uz(n)][out.maps[uz(n)][e].images()] = static_cast<int>(e);
  }
  LevelData data;
  for (int n = 0; n <= max_dim; ++n) data.counts.push_back(static_cast<int>(out.maps[uz(n)].size()));
  data.face = [&](int n, int i, int e) {
    const SimplicialMap d = chaotic_nerve_map(*chaotic_nerve(n - 1, t), *chaotic_nerve(n, t), Monotone::coface(n, i));
    return index[uz(n - 1)].at(compose(out.maps[uz(n)][uz(e)], d).images());
  };
  data.degeneracy = [&](int n, int j, int e) {
    const SimplicialMap s = chaotic_nerve_map(*chaotic_nerve(n + 1, t), *chaotic_nerve(n, t), Monotone::codegeneracy(n, j));
    return index[uz(n + 1)].at(compose(out.maps[uz(n)][uz(e)], s).images());
  };
  const Leveled lv = from_levels(data);
  out.value = with_truncation(lv.object, Truncation{max_dim, out.exact});
  out.normal_form = lv.normal_form;
  const auto elems = cell_elements(lv.normal_form, *out.value);
  std::vector<std::vector<SimplexRef>> im(elems.size());
  for (std::size_t n = 0; n < elems.size(); ++n)
    for (int e : elems[n]) {
      const Nerve& piece = *chaotic_nerve(static_cast<int>(n), t);
      const SimplexRef chain = n == 0 ? piece.vertex(0) : piece.chain_simplex(chain_spine(*piece.category, static_cast<int>(n)));
      im[n].push_back(out.maps[n][uz(e)](chain));
    }
  out.counit = SimplicialMap(out.value, x, std::move(im));
  return out;
}

SimplicialMap k_upper_map(const FunctorData& q, const KUpper& kc, const KUpper& kd) {
  if (kc.functors.empty() || kd.functors.empty()) throw std::invalid_argument("k_upper_map needs exact-mode results");
  const auto elems = cell_elements(kc.normal_form, *kc.value);
  std::vector<std::vector<SimplexRef>> im(elems.size());
  for (std::size_t n = 0; n < elems.size(); ++n) {
    std::map<FunctorData, int> index;
    for (std::size_t e = 0; e < kd.functors[n].size(); ++e) index[kd.functors[n][e]] = static_cast<int>(e);
    for (int e : elems[n]) im[n].push_back(kd.normal_form[n][uz(index.at(compose_functors(q, kc.functors[n][uz(e)])))]);
  }
  return SimplicialMap(kc.value, kd.value, std::move(im));
}

SimplicialMap k_upper_map(const SimplicialMap& f, const KUpper& kx, const KUpper& ky) {
  if (kx.maps.empty() || ky.maps.empty()) throw std::invalid_argument("k_upper_map needs truncated-mode results");
  if (kx.piece_bound != ky.piece_bound || kx.max_dim != ky.max_dim) throw std::invalid_argument("k_upper_map: bounds differ");
  const auto elems = cell_elements(kx.normal_form, *kx.value);
  std::vector<std::vector<SimplexRef>> im(elems.size());
  for (std::size_t n = 0; n < elems.size(); ++n) {
    std::map<std::vector<std::vector<SimplexRef>>, int> index;
    for (std::size_t e = 0; e < ky.maps[n].size(); ++e) index[ky.maps[n][e].images()] = static_cast<int>(e);
    for (int e : elems[n]) im[n].push_back(ky.normal_form[n][uz(index.at(compose(f, kx.maps[n][uz(e)]).images()))]);
  }
  return SimplicialMap(kx.value, ky.value, std::move(im));
}

TShriek t_shriek(const BSetPtr& x, int max_dim) {
  if (max_dim < 0) throw std::out_of_range("t_shriek needs max_dim >= 0");
  const int top = max_dim;
  std::vector<VerticalSlice> slices;
  std::vector<KShriek> ks;
  std::vector<SimplexTable> tables;
  TShriek out;
  out.max_dim = max_dim;
  out.exact = true;
  for (int m = 0; m <= top; ++m) {
    slices.push_back(vertical_slice(*x, m));
    ks.push_back(k_shriek(slices.back().object, max_dim));
    out.exact = out.exact && ks.back().exact;
  }
  for (int m = 0; m <= top; ++m) tables.emplace_back(*ks[uz(m)].value, max_dim);
  // k_!(theta) for the horizontal cofaces and codegeneracies.
  std::vector<std::vector<SimplicialMap>> hf(uz(top + 1)), hd(uz(top + 1));
  for (int m = 1; m <= top; ++m)
    for (int i = 0; i <= m; ++i)
      hf[uz(m)].push_back(k_shriek_map(horizontal_operator(*x, slices[uz(m)], slices[uz(m - 1)], Monotone::coface(m, i)), ks[uz(m)], ks[uz(m - 1)]));
  for (int m = 0; m < top; ++m)
    for (int j = 0; j <= m; ++j)
      hd[uz(m)].push_back(
          k_shriek_map(horizontal_operator(*x, slices[uz(m)], slices[uz(m + 1)], Monotone::codegeneracy(m, j)), ks[uz(m)], ks[uz(m + 1)]));
  BiLevelData data;
  data.counts.assign(uz(top + 1), std::vector<int>(uz(top + 1)));
  for (int m = 0; m <= top; ++m)
    for (int n = 0; n <= top; ++n) data.counts[uz(m)][uz(n)] = tables[uz(m)].size(n);
  data.hface = [&](int m, int n, int i, int e) { return tables[uz(m - 1)].index_of(hf[uz(m)][uz(i)](tables[uz(m)].simplex(n, e))); };
  data.hdegeneracy = [&](int m, int n, int j, int e) { return tables[uz(m + 1)].index_of(hd[uz(m)][uz(j)](tables[uz(m)].simplex(n, e))); };
  data.vface = [&](int m, int n, int i, int e) { return tables[uz(m)].face(n, e, i); };
  data.vdegeneracy = [&](int m, int n, int j, int e) { return tables[uz(m)].degeneracy(n, e, j); };
  BisimplicialSet z = *from_bilevels(data).object;
  z.htruncation = Truncation{max_dim, false};
  z.vtruncation = Truncation{max_dim, out.exact};
  out.sectionwise = share(std::move(z));
  // Above max_dim the diagonal sees levels that were never computed.
  const SSetPtr full = share(diagonal(*out.sectionwise));
  out.exact = out.exact && x->hdim() <= max_dim && full->dimension() <= max_dim;
  SimplicialSet d = *skeleton(full, max_dim).object;
  d.truncation = Truncation{max_dim, out.exact};
  out.value = share(std::move(d));
  return out;
}

BSetPtr t_upper(const Nerve& y, int max_h, int max_v) {
  if (max_h < 0 || max_v < 0) throw std::out_of_range("t_upper needs nonnegative bounds");
  const FiniteCategory& c = *y.category;
  const int mh = max_h + 1, mv = max_v + 1;
  std::vector<std::vector<FiniteCategory>> cat(uz(mh + 1));
  std::vector<std::vector<std::vector<FunctorData>>> funcs(uz(max_h + 1), std::vector<std::vector<FunctorData>>(uz(max_v + 1)));
  std::vector<std::vector<std::map<FunctorData, int>>> index(uz(max_h + 1), std::vector<std::map<FunctorData, int>>(uz(max_v + 1)));
  for (int m = 0; m <= mh; ++m)
    for (int n = 0; n <= mv; ++n) cat[uz(m)].push_back(product_category(linear_order(m), chaotic_groupoid(n)));
  for (int m = 0; m <= max_h; ++m)
    for (int n = 0; n <= max_v; ++n) {
      funcs[uz(m)][uz(n)] = enumerate_functors(cat[uz(m)][uz(n)], c);
      for (std::size_t e = 0; e < funcs[uz(m)][uz(n)].size(); ++e) index[uz(m)][uz(n)][funcs[uz(m)][uz(n)][e]] = static_cast<int>(e);
    }
  // Precompose with alpha x beta : [m'] x pi[n'] -> [m] x pi[n].
  auto pull = [&](int m, int n, int m2, int n2, const Monotone& a, const Monotone& b, int e) {
    std::vector<int> obj;
    for (int i = 0; i <= m2; ++i)
      for (int j = 0; j <= n2; ++j) obj.push_back(a(i) * (n + 1) + b(j));
    const FunctorData along = thin_functor(cat[uz(m2)][uz(n2)], cat[uz(m)][uz(n)], obj);
    return index[uz(m2)][uz(n2)].at(compose_functors(funcs[uz(m)][uz(n)][uz(e)], along));
  };
  BiLevelData data;
  data.counts.assign(uz(max_h + 1), std::vector<int>(uz(max_v + 1)));
  for (int m = 0; m <= max_h; ++m)
    for (int n = 0; n <= max_v; ++n) data.counts[uz(m)][uz(n)] = static_cast<int>(funcs[uz(m)][uz(n)].size());
  data.hface = [&](int m, int n, int i, int e) { return pull(m, n, m - 1, n, Monotone::coface(m, i), Monotone::identity(n), e); };
  data.vface = [&](int m, int n, int i, int e) { return pull(m, n, m, n - 1, Monotone::identity(m), Monotone::coface(n, i), e); };
  data.hdegeneracy = [&](int m, int n, int j, int e) { return pull(m, n, m + 1, n, Monotone::codegeneracy(m, j), Monotone::identity(n), e); };
  data.vdegeneracy = [&](int m, int n, int j, int e) { return pull(m, n, m, n + 1, Monotone::identity(m), Monotone::codegeneracy(n, j), e); };
  BisimplicialSet out = *from_bilevels(data).object;
  out.htruncation = Truncation{max_h, nerve(c, max_h + 1).object->dimension() <= max_h};
  out.vtruncation = Truncation{max_v, !has_nontrivial_iso(c)};
  // Horizontal slices are nerves of functor categories.
  out.hcoskeletal = 2;
  return share(std::move(out));
}

BSetPtr t_upper(const SSetPtr& y, int max_h, int max_v) {
  if (max_h < 0 || max_v < 0) throw std::out_of_range("t_upper needs nonnegative bounds");
  const int t = std::max(std::max(y->dimension(), 0) + 2, max_v);
  std::vector<SSetPtr> simplices;
  for (int m = 0; m <= max_h + 1; ++m) simplices.push_back(share(standard(m)));
  std::vector<std::vector<Product>> prods(uz(max_h + 2));
  for (int m = 0; m <= max_h + 1; ++m)
    for (int n = 0; n <= max_v + 1; ++n) prods[uz(m)].push_back(product(simplices[uz(m)], chaotic_nerve(n, t)->object, t));
  std::vector<std::vector<std::vector<SimplicialMap>>> maps(uz(max_h + 1), std::vector<std::vector<SimplicialMap>>(uz(max_v + 1)));
  std::vector<std::vector<std::map<std::vector<std::vector<SimplexRef>>, int>>> index(
      uz(max_h + 1), std::vector<std::map<std::vector<std::vector<SimplexRef>>, int>>(uz(max_v + 1)));
  for (int m = 0; m <= max_h; ++m)
    for (int n = 0; n <= max_v; ++n) {
      maps[uz(m)][uz(n)] = enumerate_maps(prods[uz(m)][uz(n)].object, y);
      for (std::size_t e = 0; e < maps[uz(m)][uz(n)].size(); ++e) index[uz(m)][uz(n)][maps[uz(m)][uz(n)][e].images()] = static_cast<int>(e);
    }
  auto pull = [&](int m, int n, int m2, int n2, const Monotone& a, const Monotone& b, int e) {
    const SimplicialMap along = product_map(prods[uz(m2)][uz(n2)], prods[uz(m)][uz(n)], simplex_map(simplices[uz(m2)], simplices[uz(m)], a),
                                            chaotic_nerve_map(*chaotic_nerve(n2, t), *chaotic_nerve(n, t), b));
    return index[uz(m2)][uz(n2)].at(compose(maps[uz(m)][uz(n)][uz(e)], along).images());
  };
  BiLevelData data;
  data.counts.assign(uz(max_h + 1), std::vector<int>(uz(max_v + 1)));
  for (int m = 0; m <= max_h; ++m)
    for (int n = 0; n <= max_v; ++n) data.counts[uz(m)][uz(n)] = static_cast<int>(maps[uz(m)][uz(n)].size());
  data.hface = [&](int m, int n, int i, int e) { return pull(m, n, m - 1, n, Monotone::coface(m, i), Monotone::identity(n), e); };
  data.vface = [&](int m, int n, int i, int e) { return pull(m, n, m, n - 1, Monotone::identity(m), Monotone::coface(n, i), e); };
  data.hdegeneracy = [&](int m, int n, int j, int e) { return pull(m, n, m + 1, n, Monotone::codegeneracy(m, j), Monotone::identity(n), e); };
  data.vdegeneracy = [&](int m, int n, int j, int e) { return pull(m, n, m, n + 1, Monotone::identity(m), Monotone::codegeneracy(n, j), e); };
  BisimplicialSet out = *from_bilevels(data).object;
  out.htruncation = Truncation{max_h, y->dimension() <= max_h && !(y->truncation && !y->truncation->exact)};
  out.vtruncation = Truncation{max_v, y->dimension() <= 0};
  return share(std::move(out));
}

HomotopyCategory homotopy_category(const SSetPtr& x, int precheck_bound) {
  const Verdict pre = is_quasi_category(x, precheck_bound);
  if (pre.status == Status::fails) throw std::invalid_argument("homotopy_category: not a quasi-category (" + pre.detail + ")");
  const SimplexTable t(*x, 2);
  const int edges = t.size(1);
  std::vector<int> parent(uz(edges));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[uz(a)] == a ? a : parent[uz(a)] = find(parent[uz(a)]); };
  auto unite = [&](int a, int b) { parent[uz(find(a))] = find(b); };
  for (int s = 0; s < t.size(2); ++s) {
    const int d0 = t.face(2, s, 0), d1 = t.face(2, s, 1), d2 = t.face(2, s, 2);
    if (!t.simplex(1, d0).is_nondegenerate()) unite(d2, d1);
    if (!t.simplex(1, d2).is_nondegenerate()) unite(d0, d1);
  }
  HomotopyCategory out;
  FiniteCategory& c = out.category;
  for (int v = 0; v < x->cell_count(0); ++v) c.add_object(x->label({0, v}));
  auto vertex = [&](int edge, int i) { return t.simplex(0, t.face(1, edge, i)).cell.index; };
  std::map<int, int> morphism_of_root;
  // Identities first, so every class containing a degenerate edge maps to one.
  for (int e = 0; e < edges; ++e)
    if (!t.simplex(1, e).is_nondegenerate()) morphism_of_root[find(e)] = c.identity(vertex(e, 0));
  for (int e = 0; e < edges; ++e)
    if (!morphism_of_root.count(find(e))) morphism_of_root[find(e)] = c.add_morphism(vertex(e, 1), vertex(e, 0), x->label(t.simplex(1, e).cell));
  out.edge_class.resize(uz(edges));
  for (int e = 0; e < edges; ++e) out.edge_class[uz(e)] = morphism_of_root.at(find(e));
  std::map<std::pair<int, int>, int> composite;
  for (int s = 0; s < t.size(2); ++s) {
    const int f = out.edge_class[uz(t.face(2, s, 2))];
    const int g = out.edge_class[uz(t.face(2, s, 0))];
    const int h = out.edge_class[uz(t.face(2, s, 1))];
    if (c.is_identity(f) || c.is_identity(g)) continue;
    auto [it, fresh] = composite.emplace(std::make_pair(g, f), h);
    if (!fresh && it->second != h) throw std::invalid_argument("homotopy_category: composite not well defined");
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(f) || c.is_identity(g) || c.target(f) != c.source(g)) continue;
      auto it = composite.find({g, f});
      if (it == composite.end()) throw std::invalid_argument("homotopy_category: missing composite (inner horn not filled)");
      c.set_composite(g, f, it->second);
    }
  c.validate();
  return out;
}

Subcomplex core_J(const SSetPtr& x, int precheck_bound) {
  const HomotopyCategory ho = homotopy_category(x, precheck_bound);
  const SimplexTable t(*x, 1);
  const Subcomplex sub = subcomplex(x, [&](CellId c) {
    for (int a = 0; a < c.dim; ++a)
      for (int b = a + 1; b <= c.dim; ++b)
        if (!ho.category.is_iso(ho.edge_class[uz(t.index_of(x->edge(SimplexRef::of(c), a, b)))])) return false;
    return true;
  });
  // Fillers of boundaries of dimension >= 2 only use edges of the boundary,
  // so J(X) keeps a coskeletal value >= 1.
  if (!(x->coskeletal && *x->coskeletal >= 1)) return sub;
  SimplicialSet copy = *sub.object;
  copy.coskeletal = x->coskeletal;
  Subcomplex out = sub;
  out.object = share(std::move(copy));
  out.inclusion = resource(sub.inclusion, out.object);
  return out;
}

CounitComparison counit_comparison(const Nerve& x, int max_dim) {
  CounitComparison out{k_upper(x, max_dim), core_J(x.object), {}};
  const SimplicialSet& v = *out.k.value;
  std::vector<std::vector<SimplexRef>> im(uz(v.dimension() + 1));
  for (int n = 0; n <= v.dimension(); ++n)
    for (int c = 0; c < v.cell_count(n); ++c) {
      const SimplexRef s = out.k.counit.image({n, c});
      const int idx = out.core.index[uz(s.cell.dim)][uz(s.cell.index)];
      if (idx < 0) throw std::logic_error("counit does not factor through J");
      im[uz(n)].push_back(SimplexRef{s.degeneracy, {s.cell.dim, idx}});
    }
  out.map = SimplicialMap(out.k.value, out.core.object, std::move(im));
  return out;
}

JSquare j_square(const SimplicialMap& f, int precheck_bound) {
  JSquare out{core_J(f.source(), precheck_bound), core_J(f.target(), precheck_bound), {}, {}, {}, {}, false};
  auto into_jy = [&](const SimplexRef& s) {
    const int idx = out.jy.index[uz(s.cell.dim)][uz(s.cell.index)];
    return idx < 0 ? std::optional<SimplexRef>{} : SimplexRef{s.degeneracy, {s.cell.dim, idx}};
  };
  auto restrict_to = [&](const SimplicialMap& incl, const SSetPtr& source) {
    const SimplicialSet& w = *source;
    std::vector<std::vector<SimplexRef>> im(uz(w.dimension() + 1));
    for (int n = 0; n <= w.dimension(); ++n)
      for (int c = 0; c < w.cell_count(n); ++c) {
        const auto s = into_jy(f(incl.image({n, c})));
        if (!s) throw std::invalid_argument("j_square: f does not preserve invertible edges");
        im[uz(n)].push_back(*s);
      }
    return SimplicialMap(source, out.jy.object, std::move(im));
  };
  out.restricted = restrict_to(out.jx.inclusion, out.jx.object);
  out.pullback = subcomplex(f.source(), [&](CellId c) { return into_jy(f.image(c)).has_value(); });
  out.to_jy = restrict_to(out.pullback.inclusion, out.pullback.object);
  const SimplicialSet& jx = *out.jx.object;
  std::vector<std::vector<SimplexRef>> im(uz(jx.dimension() + 1));
  for (int n = 0; n <= jx.dimension(); ++n)
    for (int c = 0; c < jx.cell_count(n); ++c) {
      const SimplexRef s = out.jx.inclusion.image({n, c});
      im[uz(n)].push_back(SimplexRef{s.degeneracy, {s.cell.dim, out.pullback.index[uz(s.cell.dim)][uz(s.cell.index)]}});
    }
  out.comparison = SimplicialMap(out.jx.object, out.pullback.object, std::move(im));
  out.is_pullback = is_iso(out.comparison);
  return out;
}

}  // namespace segal
