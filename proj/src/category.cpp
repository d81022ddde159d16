#include "segal/category.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace segal {

namespace {
const std::vector<int> kEmpty;
}

void FiniteCategory::grow_table(int old_count) {
  const int n = morphism_count();
  std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (int g = 0; g < old_count; ++g)
    for (int f = 0; f < old_count; ++f)
      t[static_cast<std::size_t>(g * n + f)] = table_[static_cast<std::size_t>(g * old_count + f)];
  table_ = std::move(t);
}

int FiniteCategory::add_object(std::string name) {
  const int id = object_count();
  if (name.empty()) name = std::to_string(id);
  objects_.push_back({std::move(name), -1});
  for (auto& row : hom_) row.emplace_back();
  hom_.emplace_back(static_cast<std::size_t>(id + 1));
  objects_.back().identity = add_morphism(id, id, "id." + objects_.back().name);
  return id;
}

int FiniteCategory::add_morphism(int source, int target, std::string name) {
  if (source < 0 || target < 0 || source >= object_count() || target >= object_count())
    throw std::out_of_range("morphism endpoint is not an object");
  const int id = morphism_count();
  if (name.empty()) name = "m" + std::to_string(id);
  morphisms_.push_back({source, target, std::move(name)});
  grow_table(id);
  hom_[static_cast<std::size_t>(source)][static_cast<std::size_t>(target)].push_back(id);
  return id;
}

void FiniteCategory::set_composite(int g, int f, int h) {
  if (target(f) != source(g)) throw std::invalid_argument("composite of non-composable morphisms");
  if (source(h) != source(f) || target(h) != target(g)) throw std::invalid_argument("composite has wrong endpoints");
  table_[static_cast<std::size_t>(g * morphism_count() + f)] = h;
}

int FiniteCategory::compose(int g, int f) const {
  if (target(f) != source(g)) return -1;
  if (is_identity(f)) return g;
  if (is_identity(g)) return f;
  return table_[static_cast<std::size_t>(g * morphism_count() + f)];
}

const std::vector<int>& FiniteCategory::hom(int a, int b) const {
  if (a < 0 || b < 0 || a >= object_count() || b >= object_count()) return kEmpty;
  return hom_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

void FiniteCategory::validate() const {
  const int n = morphism_count();
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      if (target(f) != source(g)) continue;
      if (compose(g, f) < 0)
        throw std::invalid_argument("composite " + morphism_name(g) + " o " + morphism_name(f) + " missing");
    }
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      if (target(g) != source(h)) continue;
      const int hg = compose(h, g);
      for (int f = 0; f < n; ++f) {
        if (target(f) != source(g)) continue;
        if (compose(hg, f) != compose(h, compose(g, f)))
          throw std::invalid_argument("associativity fails for (" + morphism_name(h) + ", " + morphism_name(g) + ", " +
                                      morphism_name(f) + ")");
      }
    }
}

int FiniteCategory::inverse(int m) const {
  for (int g : hom(target(m), source(m)))
    if (compose(g, m) == identity(source(m)) && compose(m, g) == identity(target(m))) return g;
  return -1;
}

FiniteCategory poset(int n, const std::function<bool(int, int)>& leq) {
  FiniteCategory c;
  for (int a = 0; a < n; ++a) c.add_object();
  std::vector<std::vector<int>> arrow(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a) {
    arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = c.identity(a);
    for (int b = 0; b < n; ++b)
      if (a != b && leq(a, b))
        arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            c.add_morphism(a, b, std::to_string(a) + "." + std::to_string(b));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        const int f = arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        const int g = arrow[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)];
        if (f < 0 || g < 0 || a == b || b == d) continue;
        const int h = arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)];
        if (h < 0) throw std::invalid_argument("poset relation is not transitive");
        c.set_composite(g, f, h);
      }
  return c;
}

FiniteCategory linear_order(int n) { return poset(n + 1, [](int a, int b) { return a <= b; }); }

FiniteCategory terminal_category() { return linear_order(0); }

FiniteCategory discrete_category(int n) { return poset(n, [](int a, int b) { return a == b; }); }

FiniteCategory chaotic_groupoid(int n) {
  FiniteCategory c;
  const int k = n + 1;
  for (int a = 0; a < k; ++a) c.add_object();
  std::vector<std::vector<int>> arrow(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          a == b ? c.identity(a) : c.add_morphism(a, b, std::to_string(a) + "." + std::to_string(b));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int d = 0; d < k; ++d) {
        if (a == b || b == d) continue;
        c.set_composite(arrow[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)],
                        arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                        arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)]);
      }
  return c;
}

FiniteCategory monoid_category(const std::vector<std::vector<int>>& mult) {
  FiniteCategory c;
  c.add_object("*");
  const int k = static_cast<int>(mult.size());
  std::vector<int> id(static_cast<std::size_t>(k));
  id[0] = c.identity(0);
  for (int e = 1; e < k; ++e) id[static_cast<std::size_t>(e)] = c.add_morphism(0, 0, "e" + std::to_string(e));
  for (int g = 1; g < k; ++g)
    for (int f = 1; f < k; ++f)
      c.set_composite(id[static_cast<std::size_t>(g)], id[static_cast<std::size_t>(f)],
                      id[static_cast<std::size_t>(mult[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)])]);
  return c;
}

bool is_groupoid(const FiniteCategory& c) {
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_iso(m)) return false;
  return true;
}

FiniteCategory iso_subcategory(const FiniteCategory& c, std::vector<int>* morphism_map) {
  FiniteCategory out;
  std::vector<int> to_new(static_cast<std::size_t>(c.morphism_count()), -1);
  std::vector<int> to_old;
  for (int a = 0; a < c.object_count(); ++a) {
    out.add_object(c.object_name(a));
    to_new[static_cast<std::size_t>(c.identity(a))] = out.identity(a);
  }
  to_old.resize(static_cast<std::size_t>(out.morphism_count()));
  for (int a = 0; a < c.object_count(); ++a) to_old[static_cast<std::size_t>(out.identity(a))] = c.identity(a);
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m) || !c.is_iso(m)) continue;
    to_new[static_cast<std::size_t>(m)] = out.add_morphism(c.source(m), c.target(m), c.morphism_name(m));
    to_old.push_back(m);
  }
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f) {
      const int ng = to_new[static_cast<std::size_t>(g)], nf = to_new[static_cast<std::size_t>(f)];
      if (ng < 0 || nf < 0 || c.is_identity(g) || c.is_identity(f) || c.target(f) != c.source(g)) continue;
      out.set_composite(ng, nf, to_new[static_cast<std::size_t>(c.compose(g, f))]);
    }
  if (morphism_map) *morphism_map = std::move(to_old);
  return out;
}

FiniteCategory opposite(const FiniteCategory& c, std::vector<int>* morphism_map) {
  FiniteCategory out;
  std::vector<int> to_new(static_cast<std::size_t>(c.morphism_count()), -1);
  for (int a = 0; a < c.object_count(); ++a) {
    out.add_object(c.object_name(a));
    to_new[static_cast<std::size_t>(c.identity(a))] = out.identity(a);
  }
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) to_new[static_cast<std::size_t>(m)] = out.add_morphism(c.target(m), c.source(m), c.morphism_name(m));
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f) {
      if (c.is_identity(g) || c.is_identity(f) || c.target(f) != c.source(g)) continue;
      // (g f)^op = f^op g^op
      out.set_composite(to_new[static_cast<std::size_t>(f)], to_new[static_cast<std::size_t>(g)], to_new[static_cast<std::size_t>(c.compose(g, f))]);
    }
  if (morphism_map) *morphism_map = std::move(to_new);
  return out;
}

bool is_functor(const FiniteCategory& c, const FiniteCategory& d, const FunctorData& f) {
  if (static_cast<int>(f.objects.size()) != c.object_count() || static_cast<int>(f.morphisms.size()) != c.morphism_count())
    return false;
  for (int a = 0; a < c.object_count(); ++a)
    if (f.morphisms[static_cast<std::size_t>(c.identity(a))] != d.identity(f.objects[static_cast<std::size_t>(a)])) return false;
  for (int m = 0; m < c.morphism_count(); ++m) {
    const int fm = f.morphisms[static_cast<std::size_t>(m)];
    if (fm < 0 || fm >= d.morphism_count()) return false;
    if (d.source(fm) != f.objects[static_cast<std::size_t>(c.source(m))] || d.target(fm) != f.objects[static_cast<std::size_t>(c.target(m))])
      return false;
  }
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int h = 0; h < c.morphism_count(); ++h) {
      const int gh = c.compose(g, h);
      if (gh < 0) continue;
      if (f.morphisms[static_cast<std::size_t>(gh)] != d.compose(f.morphisms[static_cast<std::size_t>(g)], f.morphisms[static_cast<std::size_t>(h)]))
        return false;
    }
  return true;
}

namespace {

class FunctorSearch {
 public:
  FunctorSearch(const FiniteCategory& c, const FiniteCategory& d, const std::function<bool(const FunctorData&)>& visit)
      : c_(c), d_(d), visit_(visit) {
    f_.objects.assign(static_cast<std::size_t>(c.object_count()), -1);
    f_.morphisms.assign(static_cast<std::size_t>(c.morphism_count()), -1);
    for (int m = 0; m < c.morphism_count(); ++m)
      if (!c.is_identity(m)) order_.push_back(m);
    std::vector<int> pos(static_cast<std::size_t>(c.morphism_count()), -1);
    for (std::size_t i = 0; i < order_.size(); ++i) pos[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
    checks_.resize(order_.size());
    for (int g : order_)
      for (int f : order_) {
        const int h = c.compose(g, f);
        if (h < 0) continue;
        int last = std::max(pos[static_cast<std::size_t>(g)], pos[static_cast<std::size_t>(f)]);
        if (!c.is_identity(h)) last = std::max(last, pos[static_cast<std::size_t>(h)]);
        checks_[static_cast<std::size_t>(last)].push_back({g, f, h});
      }
    // Objects: a morphism constrains the pair once both ends are assigned.
    obj_checks_.resize(static_cast<std::size_t>(c.object_count()));
    for (int m : order_)
      obj_checks_[static_cast<std::size_t>(std::max(c.source(m), c.target(m)))].push_back(m);
  }

  void run() { objects(0); }

 private:
  struct Check {
    int g, f, h;
  };

  bool objects(int k) {
    if (k == c_.object_count()) {
      for (int a = 0; a < c_.object_count(); ++a)
        f_.morphisms[static_cast<std::size_t>(c_.identity(a))] = d_.identity(f_.objects[static_cast<std::size_t>(a)]);
      return morphisms(0);
    }
    for (int x = 0; x < d_.object_count(); ++x) {
      f_.objects[static_cast<std::size_t>(k)] = x;
      bool ok = true;
      for (int m : obj_checks_[static_cast<std::size_t>(k)])
        if (d_.hom(f_.objects[static_cast<std::size_t>(c_.source(m))], f_.objects[static_cast<std::size_t>(c_.target(m))]).empty()) {
          ok = false;
          break;
        }
      if (ok && !objects(k + 1)) return false;
    }
    f_.objects[static_cast<std::size_t>(k)] = -1;
    return true;
  }

  bool morphisms(std::size_t i) {
    if (i == order_.size()) return visit_(f_);
    const int m = order_[i];
    for (int y : d_.hom(f_.objects[static_cast<std::size_t>(c_.source(m))], f_.objects[static_cast<std::size_t>(c_.target(m))])) {
      f_.morphisms[static_cast<std::size_t>(m)] = y;
      bool ok = true;
      for (const Check& ch : checks_[i])
        if (f_.morphisms[static_cast<std::size_t>(ch.h)] !=
            d_.compose(f_.morphisms[static_cast<std::size_t>(ch.g)], f_.morphisms[static_cast<std::size_t>(ch.f)])) {
          ok = false;
          break;
        }
      if (ok && !morphisms(i + 1)) return false;
    }
    f_.morphisms[static_cast<std::size_t>(m)] = -1;
    return true;
  }

  const FiniteCategory& c_;
  const FiniteCategory& d_;
  const std::function<bool(const FunctorData&)>& visit_;
  FunctorData f_;
  std::vector<int> order_;
  std::vector<std::vector<Check>> checks_;
  std::vector<std::vector<int>> obj_checks_;
};

}  // namespace

void for_each_functor(const FiniteCategory& c, const FiniteCategory& d, const std::function<bool(const FunctorData&)>& visit) {
  FunctorSearch(c, d, visit).run();
}

std::vector<FunctorData> enumerate_functors(const FiniteCategory& c, const FiniteCategory& d) {
  std::vector<FunctorData> out;
  for_each_functor(c, d, [&](const FunctorData& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  FunctorData h;
  for (int x : f.objects) h.objects.push_back(g.objects.at(static_cast<std::size_t>(x)));
  for (int m : f.morphisms) h.morphisms.push_back(g.morphisms.at(static_cast<std::size_t>(m)));
  return h;
}

FunctorData identity_functor(const FiniteCategory& c) {
  FunctorData f;
  for (int a = 0; a < c.object_count(); ++a) f.objects.push_back(a);
  for (int m = 0; m < c.morphism_count(); ++m) f.morphisms.push_back(m);
  return f;
}

bool is_equivalence(const FiniteCategory& c, const FiniteCategory& d, const FunctorData& f) {
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < c.object_count(); ++b) {
      const auto& src = c.hom(a, b);
      const auto& tgt = d.hom(f.objects[static_cast<std::size_t>(a)], f.objects[static_cast<std::size_t>(b)]);
      if (src.size() != tgt.size()) return false;
      std::vector<int> img;
      for (int m : src) img.push_back(f.morphisms[static_cast<std::size_t>(m)]);
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
    }
  for (int y = 0; y < d.object_count(); ++y) {
    bool hit = false;
    for (int a = 0; a < c.object_count() && !hit; ++a)
      for (int m : d.hom(f.objects[static_cast<std::size_t>(a)], y))
        if (d.is_iso(m)) {
          hit = true;
          break;
        }
    if (!hit) return false;
  }
  return true;
}

std::optional<FunctorData> find_category_isomorphism(const FiniteCategory& c, const FiniteCategory& d) {
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return std::nullopt;
  std::optional<FunctorData> out;
  for_each_functor(c, d, [&](const FunctorData& f) {
    std::vector<bool> seen(static_cast<std::size_t>(d.morphism_count()), false);
    for (int m : f.morphisms) {
      if (seen[static_cast<std::size_t>(m)]) return true;
      seen[static_cast<std::size_t>(m)] = true;
    }
    std::vector<bool> seen_obj(static_cast<std::size_t>(d.object_count()), false);
    for (int x : f.objects) {
      if (seen_obj[static_cast<std::size_t>(x)]) return true;
      seen_obj[static_cast<std::size_t>(x)] = true;
    }
    out = f;
    return false;
  });
  return out;
}

FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d) {
  FiniteCategory p;
  const int nd = d.object_count();
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < nd; ++b) p.add_object(c.object_name(a) + "," + d.object_name(b));
  const int md = d.morphism_count();
  std::vector<int> idx(static_cast<std::size_t>(c.morphism_count() * md), -1);
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < md; ++g) {
      const int s = c.source(f) * nd + d.source(g);
      const int t = c.target(f) * nd + d.target(g);
      idx[static_cast<std::size_t>(f * md + g)] = (c.is_identity(f) && d.is_identity(g))
                                                      ? p.identity(s)
                                                      : p.add_morphism(s, t, c.morphism_name(f) + "," + d.morphism_name(g));
    }
  for (int f1 = 0; f1 < c.morphism_count(); ++f1)
    for (int g1 = 0; g1 < md; ++g1)
      for (int f2 = 0; f2 < c.morphism_count(); ++f2)
        for (int g2 = 0; g2 < md; ++g2) {
          const int f = c.compose(f2, f1), g = d.compose(g2, g1);
          if (f < 0 || g < 0) continue;
          const int a = idx[static_cast<std::size_t>(f1 * md + g1)], b = idx[static_cast<std::size_t>(f2 * md + g2)];
          if (p.is_identity(a) || p.is_identity(b)) continue;
          p.set_composite(b, a, idx[static_cast<std::size_t>(f * md + g)]);
        }
  return p;
}

namespace {

void natural_transformations(const FiniteCategory& c, const FiniteCategory& d, const FunctorData& f, const FunctorData& g,
                             const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> comp(static_cast<std::size_t>(c.object_count()), -1);
  std::function<void(int)> rec = [&](int k) {
    if (k == c.object_count()) {
      visit(comp);
      return;
    }
    for (int y : d.hom(f.objects[static_cast<std::size_t>(k)], g.objects[static_cast<std::size_t>(k)])) {
      comp[static_cast<std::size_t>(k)] = y;
      bool ok = true;
      for (int m = 0; m < c.morphism_count() && ok; ++m) {
        const int s = c.source(m), t = c.target(m);
        if (s > k || t > k) continue;
        if (s != k && t != k) continue;
        ok = d.compose(g.morphisms[static_cast<std::size_t>(m)], comp[static_cast<std::size_t>(s)]) ==
             d.compose(comp[static_cast<std::size_t>(t)], f.morphisms[static_cast<std::size_t>(m)]);
      }
      if (ok) rec(k + 1);
    }
    comp[static_cast<std::size_t>(k)] = -1;
  };
  rec(0);
}

}  // namespace

FiniteCategory functor_category(const FiniteCategory& c, const FiniteCategory& d, std::vector<FunctorData>* functors) {
  const std::vector<FunctorData> fs = enumerate_functors(c, d);
  FiniteCategory out;
  for (std::size_t i = 0; i < fs.size(); ++i) out.add_object("F" + std::to_string(i));
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;
  std::vector<std::pair<std::pair<int, int>, std::vector<int>>> nats;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    std::vector<int> ids;
    for (int a = 0; a < c.object_count(); ++a) ids.push_back(d.identity(fs[static_cast<std::size_t>(i)].objects[static_cast<std::size_t>(a)]));
    index[{{i, i}, ids}] = out.identity(i);
  }
  nats.resize(static_cast<std::size_t>(out.morphism_count()));
  for (const auto& [key, m] : index) nats[static_cast<std::size_t>(m)] = key;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    for (int j = 0; j < static_cast<int>(fs.size()); ++j)
      natural_transformations(c, d, fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)], [&](const std::vector<int>& comp) {
        if (index.count({{i, j}, comp})) return;
        const int m = out.add_morphism(i, j, "n" + std::to_string(out.morphism_count()));
        index[{{i, j}, comp}] = m;
        nats.push_back({{i, j}, comp});
      });
  for (int b = 0; b < out.morphism_count(); ++b)
    for (int a = 0; a < out.morphism_count(); ++a) {
      if (out.target(a) != out.source(b) || out.is_identity(a) || out.is_identity(b)) continue;
      std::vector<int> comp;
      for (int x = 0; x < c.object_count(); ++x)
        comp.push_back(d.compose(nats[static_cast<std::size_t>(b)].second[static_cast<std::size_t>(x)], nats[static_cast<std::size_t>(a)].second[static_cast<std::size_t>(x)]));
      out.set_composite(b, a, index.at({{out.source(a), out.target(b)}, comp}));
    }
  if (functors) *functors = fs;
  return out;
}

}  // namespace segal
