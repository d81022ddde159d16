#include "segal/corpus.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>

#include "segal/colimits.hpp"
#include "segal/limits.hpp"
#include "segal/nerve.hpp"
#include "segal/segal_space.hpp"

namespace segal {

FiniteCategory iso_and_arrow() {
  FiniteCategory c;
  const int a = c.add_object("a"), b = c.add_object("b"), z = c.add_object("c");
  const int f = c.add_morphism(a, b, "f"), g = c.add_morphism(b, a, "g");
  const int h = c.add_morphism(b, z, "h"), hf = c.add_morphism(a, z, "hf");
  c.set_composite(g, f, c.identity(a));
  c.set_composite(f, g, c.identity(b));
  c.set_composite(h, f, hf);
  c.set_composite(hf, g, h);
  return c;
}

namespace {

// Two parallel arrows a => b.
FiniteCategory parallel_pair() {
  FiniteCategory c;
  c.add_object("a");
  c.add_object("b");
  c.add_morphism(0, 1, "u");
  c.add_morphism(0, 1, "v");
  return c;
}

// An idempotent e on a with a retraction a -> b -> a splitting it.
FiniteCategory split_idempotent() {
  FiniteCategory c;
  const int a = c.add_object("a"), b = c.add_object("b");
  const int e = c.add_morphism(a, a, "e");
  const int r = c.add_morphism(a, b, "r"), s = c.add_morphism(b, a, "s");
  c.set_composite(e, e, e);
  c.set_composite(s, r, e);
  c.set_composite(r, s, c.identity(b));
  c.set_composite(r, e, r);
  c.set_composite(e, s, s);
  return c;
}

FiniteCategory span_poset() {
  return poset(3, [](int a, int b) { return a == b || (a == 0 && b > 0); });
}

}  // namespace

std::vector<NamedCategory> named_categories() {
  std::vector<NamedCategory> out;
  out.push_back({"terminal", terminal_category()});
  for (int n = 1; n <= 3; ++n) out.push_back({"linear" + std::to_string(n), linear_order(n)});
  out.push_back({"discrete2", discrete_category(2)});
  out.push_back({"discrete3", discrete_category(3)});
  out.push_back({"span", span_poset()});
  out.push_back({"cospan", poset(3, [](int a, int b) { return a == b || (b == 2 && a < 2); })});
  out.push_back({"square", poset(4, [](int a, int b) { return (a & b) == a; })});
  out.push_back({"chaotic1", chaotic_groupoid(1)});
  out.push_back({"chaotic2", chaotic_groupoid(2)});
  out.push_back({"z2", monoid_category({{0, 1}, {1, 0}})});
  out.push_back({"z3", monoid_category({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})});
  out.push_back({"idempotent", monoid_category({{0, 1}, {1, 1}})});
  out.push_back({"iso_and_arrow", iso_and_arrow()});
  out.push_back({"parallel", parallel_pair()});
  out.push_back({"split_idempotent", split_idempotent()});
  return out;
}

namespace {

struct Shape {
  int objects = 0;
  std::vector<int> src, tgt;
  std::vector<bool> identity;
  std::vector<std::vector<std::vector<int>>> hom;
};

class CategorySearch {
 public:
  CategorySearch(const Shape& s, std::function<void(const std::vector<int>&)> emit) : s_(s), emit_(std::move(emit)) {
    const int m = static_cast<int>(s.src.size());
    table_.assign(static_cast<std::size_t>(m * m), -1);
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f)
        if (!s.identity[static_cast<std::size_t>(g)] && !s.identity[static_cast<std::size_t>(f)] && s.tgt[static_cast<std::size_t>(f)] == s.src[static_cast<std::size_t>(g)])
          pairs_.emplace_back(g, f);
    for (int h = 0; h < m; ++h)
      for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
          if (!s.identity[static_cast<std::size_t>(h)] && !s.identity[static_cast<std::size_t>(g)] && !s.identity[static_cast<std::size_t>(f)] &&
              s.tgt[static_cast<std::size_t>(f)] == s.src[static_cast<std::size_t>(g)] && s.tgt[static_cast<std::size_t>(g)] == s.src[static_cast<std::size_t>(h)])
            triples_.push_back({h, g, f});
  }

  void run() { step(0); }

 private:
  const Shape& s_;
  std::function<void(const std::vector<int>&)> emit_;
  std::vector<int> table_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::array<int, 3>> triples_;

  int comp(int g, int f) const {
    if (g < 0 || f < 0) return -1;
    if (s_.identity[static_cast<std::size_t>(g)]) return f;
    if (s_.identity[static_cast<std::size_t>(f)]) return g;
    return table_[static_cast<std::size_t>(g) * s_.src.size() + static_cast<std::size_t>(f)];
  }

  bool associative_so_far() const {
    for (const auto& t : triples_) {
      const int l = comp(comp(t[0], t[1]), t[2]);
      const int r = comp(t[0], comp(t[1], t[2]));
      if (l >= 0 && r >= 0 && l != r) return false;
    }
    return true;
  }

  void step(std::size_t pos) {
    if (pos == pairs_.size()) {
      emit_(table_);
      return;
    }
    const auto [g, f] = pairs_[pos];
    for (int h : s_.hom[static_cast<std::size_t>(s_.src[static_cast<std::size_t>(f)])][static_cast<std::size_t>(s_.tgt[static_cast<std::size_t>(g)])]) {
      table_[static_cast<std::size_t>(g) * s_.src.size() + static_cast<std::size_t>(f)] = h;
      if (associative_so_far()) step(pos + 1);
    }
    table_[static_cast<std::size_t>(g) * s_.src.size() + static_cast<std::size_t>(f)] = -1;
  }
};

// Isomorphism-invariant fingerprint: per morphism (source/target hom sizes,
// iso, idempotent, number of factorisations), sorted.
std::vector<std::array<int, 6>> fingerprint(const FiniteCategory& c) {
  std::vector<std::array<int, 6>> out;
  std::vector<int> factorisations(static_cast<std::size_t>(c.morphism_count()), 0);
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f) {
      const int h = c.compose(g, f);
      if (h >= 0) ++factorisations[static_cast<std::size_t>(h)];
    }
  for (int m = 0; m < c.morphism_count(); ++m)
    out.push_back({static_cast<int>(c.hom(c.source(m), c.source(m)).size()), static_cast<int>(c.hom(c.target(m), c.target(m)).size()),
                   static_cast<int>(c.hom(c.source(m), c.target(m)).size()), c.is_iso(m) ? 1 : 0, c.compose(m, m) == m ? 1 : 0,
                   factorisations[static_cast<std::size_t>(m)]});
  std::sort(out.begin(), out.end());
  return out;
}

// Whether flattening h is lexicographically minimal under object permutations.
bool canonical_hom_sizes(const std::vector<std::vector<int>>& h) {
  const int k = static_cast<int>(h.size());
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> base;
  for (const auto& row : h) base.insert(base.end(), row.begin(), row.end());
  do {
    std::vector<int> alt;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) alt.push_back(h[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])][static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])]);
    if (alt < base) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

void hom_size_matrices(int k, const CategoryBounds& b, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<std::vector<int>> h(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == k * k) {
      if (canonical_hom_sizes(h)) visit(h);
      return;
    }
    const int a = pos / k, c = pos % k;
    const int lo = a == c ? 1 : 0;
    const int hi = a == c ? b.max_endomorphisms : b.max_morphisms;
    for (int v = lo; v <= hi && used + v <= b.max_morphisms; ++v) {
      h[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = v;
      rec(pos + 1, used + v);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<FiniteCategory> exhaustive_categories(const CategoryBounds& bounds) {
  std::vector<FiniteCategory> out;
  for (int k = 1; k <= bounds.max_objects; ++k)
    hom_size_matrices(k, bounds, [&](const std::vector<std::vector<int>>& h) {
      Shape s;
      s.objects = k;
      s.hom.assign(static_cast<std::size_t>(k), std::vector<std::vector<int>>(static_cast<std::size_t>(k)));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          for (int i = 0; i < h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; ++i) {
            s.hom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].push_back(static_cast<int>(s.src.size()));
            s.src.push_back(a);
            s.tgt.push_back(b);
            s.identity.push_back(a == b && i == 0);
          }
      std::map<std::vector<std::array<int, 6>>, std::vector<std::size_t>> seen;
      CategorySearch search(s, [&](const std::vector<int>& table) {
        FiniteCategory c;
        for (int a = 0; a < k; ++a) c.add_object(std::string(1, static_cast<char>('a' + a)));
        const int m = static_cast<int>(s.src.size());
        std::vector<int> id(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          id[static_cast<std::size_t>(i)] = s.identity[static_cast<std::size_t>(i)]
                                                ? c.identity(s.src[static_cast<std::size_t>(i)])
                                                : c.add_morphism(s.src[static_cast<std::size_t>(i)], s.tgt[static_cast<std::size_t>(i)], "m" + std::to_string(i));
        for (int g = 0; g < m; ++g)
          for (int f = 0; f < m; ++f) {
            const int v = table[static_cast<std::size_t>(g * m + f)];
            if (v >= 0) c.set_composite(id[static_cast<std::size_t>(g)], id[static_cast<std::size_t>(f)], id[static_cast<std::size_t>(v)]);
          }
        auto& bucket = seen[fingerprint(c)];
        for (std::size_t i : bucket)
          if (find_category_isomorphism(c, out[i])) return;
        bucket.push_back(out.size());
        out.push_back(std::move(c));
      });
      search.run();
    });
  return out;
}

std::vector<NamedComplex> simplicial_corpus() {
  std::vector<NamedComplex> out;
  for (int n = 0; n <= 3; ++n) out.push_back({"simplex" + std::to_string(n), share(standard(n))});
  out.push_back({"boundary2", share(boundary(2))});
  out.push_back({"boundary3", share(boundary(3))});
  out.push_back({"horn2_0", share(horn(2, 0))});
  out.push_back({"horn2_1", share(horn(2, 1))});
  out.push_back({"horn3_1", share(horn(3, 1))});
  out.push_back({"spine3", share(spine(3))});
  out.push_back({"two_points", share(boundary(1))});
  {
    const auto d1 = share(standard(1));
    const auto ends = share(boundary(1));
    const SimplicialMap inc = simplex_subcomplex_inclusion(ends, 1);
    out.push_back({"circle", pushout(inc, to_point(ends, share(point()))).object});
    out.push_back({"square", product(d1, d1).object});
  }
  out.push_back({"nerve_span", nerve(span_poset(), 3).object});
  return out;
}

std::vector<NamedBisimplicial> bisimplicial_corpus() {
  std::vector<NamedBisimplicial> out;
  for (int k = 0; k <= 3; ++k) out.push_back({"F" + std::to_string(k), share(generator_F(k))});
  out.push_back({"Fhat2", share(generator_Fhat(2))});
  out.push_back({"G2", generator_G(2).object});
  out.push_back({"G3", generator_G(3).object});
  out.push_back({"I3", generator_I(3).object});
  out.push_back({"disc_linear2", share(disc_nerve(linear_order(2), 3))});
  out.push_back({"disc_span", share(disc_nerve(span_poset(), 3))});
  out.push_back({"box_boundary2_simplex1", share(box_product(boundary(2), standard(1)))});
  out.push_back({"box_simplex1_simplex1", share(box_product(standard(1), standard(1)))});
  out.push_back({"box_horn21_boundary2", share(box_product(horn(2, 1), boundary(2)))});
  out.push_back({"reedy_boundary11", reedy_generators(1, 1).cofibration.source()});
  return out;
}

}  // namespace segal
