#include "segal/nerve.hpp"

#include <functional>
#include <stdexcept>

#include "segal/iso.hpp"

namespace segal {

namespace {

SimplexRef chain_simplex_impl(const FiniteCategory& c, const Nerve& nv, std::span<const int> chain, int base_obj) {
  if (chain.empty()) return SimplexRef::of({0, base_obj});
  DegeneracyMask mask = 0;
  std::vector<int> core;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (c.is_identity(chain[i]))
      mask |= 1u << i;
    else
      core.push_back(chain[i]);
  }
  if (core.empty()) return SimplexRef{mask, {0, c.source(chain[0])}};
  const int k = static_cast<int>(core.size());
  if (static_cast<std::size_t>(k) >= nv.lookup.size()) throw std::out_of_range("chain above the nerve truncation");
  auto it = nv.lookup[static_cast<std::size_t>(k)].find(core);
  if (it == nv.lookup[static_cast<std::size_t>(k)].end())
    throw std::out_of_range("chain above the nerve truncation");
  return SimplexRef{mask, {k, it->second}};
}

}  // namespace

Nerve nerve(const FiniteCategory& c, int max_dim) {
  if (max_dim < 0) throw std::out_of_range("nerve needs a level bound >= 0");
  Nerve nv;
  nv.category = std::make_shared<const FiniteCategory>(c);
  SimplicialSet out;
  nv.lookup.resize(static_cast<std::size_t>(max_dim + 1));
  nv.chains.resize(static_cast<std::size_t>(max_dim + 1));
  for (int a = 0; a < c.object_count(); ++a) {
    out.add_cell(0, {}, c.object_name(a));
    nv.chains[0].push_back({a});
    nv.lookup[0][{a}] = a;
  }
  std::vector<int> nonid;
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) nonid.push_back(m);
  std::vector<std::vector<int>> prev;
  for (int m : nonid) prev.push_back({m});
  for (int n = 1; n <= max_dim; ++n) {
    std::vector<std::vector<int>> next;
    for (const auto& chain : prev) {
      std::vector<SimplexRef> faces;
      {
        std::vector<int> d0(chain.begin() + 1, chain.end());
        faces.push_back(chain_simplex_impl(c, nv, d0, c.target(chain[0])));
      }
      for (int i = 1; i < n; ++i) {
        std::vector<int> di;
        for (int t = 0; t < n; ++t) {
          if (t == i - 1) {
            di.push_back(c.compose(chain[static_cast<std::size_t>(i)], chain[static_cast<std::size_t>(i - 1)]));
            ++t;
          } else {
            di.push_back(chain[static_cast<std::size_t>(t)]);
          }
        }
        faces.push_back(chain_simplex_impl(c, nv, di, c.source(chain[0])));
      }
      {
        std::vector<int> dn(chain.begin(), chain.end() - 1);
        faces.push_back(chain_simplex_impl(c, nv, dn, c.source(chain[0])));
      }
      std::string label;
      for (std::size_t i = 0; i < chain.size(); ++i) label += (i ? "," : "") + c.morphism_name(chain[i]);
      const int id = out.add_cell(n, std::move(faces), std::move(label));
      nv.lookup[static_cast<std::size_t>(n)][chain] = id;
      nv.chains[static_cast<std::size_t>(n)].push_back(chain);
      for (int m : nonid)
        if (c.source(m) == c.target(chain.back())) {
          auto ext = chain;
          ext.push_back(m);
          next.push_back(std::move(ext));
        }
    }
    prev = std::move(next);
  }
  out.truncation = Truncation{max_dim, prev.empty()};
  out.coskeletal = 2;
  nv.object = share(std::move(out));
  return nv;
}

SimplexRef Nerve::chain_simplex(std::span<const int> chain) const {
  if (chain.empty()) throw std::invalid_argument("empty chain; use vertex()");
  return chain_simplex_impl(*category, *this, chain, category->source(chain[0]));
}

int Nerve::first_object(const SimplexRef& x) const {
  const auto& core = chains[static_cast<std::size_t>(x.cell.dim)][static_cast<std::size_t>(x.cell.index)];
  return x.cell.dim == 0 ? core[0] : category->source(core[0]);
}

std::vector<int> Nerve::chain_of(const SimplexRef& x) const {
  const FiniteCategory& c = *category;
  const int n = x.dim();
  if (n == 0) return {};
  const auto& core = chains[static_cast<std::size_t>(x.cell.dim)][static_cast<std::size_t>(x.cell.index)];
  std::vector<int> out;
  // Walk the surjection: position t of the expanded chain is an identity iff
  // bit t of the mask is set.
  int obj = x.cell.dim == 0 ? core[0] : c.source(core[0]);
  std::size_t k = 0;
  for (int t = 0; t < n; ++t) {
    if ((x.degeneracy >> t) & 1u) {
      out.push_back(c.identity(obj));
    } else {
      out.push_back(core[k]);
      obj = c.target(core[k]);
      ++k;
    }
  }
  return out;
}

SimplicialMap nerve_map(const Nerve& nc, const Nerve& nd, const FunctorData& f) {
  const FiniteCategory& c = *nc.category;
  const SimplicialSet& src = *nc.object;
  std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(src.dimension() + 1));
  for (int n = 0; n <= src.dimension(); ++n)
    for (int cell = 0; cell < src.cell_count(n); ++cell) {
      const auto& chain = nc.chains[static_cast<std::size_t>(n)][static_cast<std::size_t>(cell)];
      if (n == 0) {
        img[0].push_back(SimplexRef::of({0, f.objects[static_cast<std::size_t>(chain[0])]}));
        continue;
      }
      std::vector<int> mapped;
      for (int m : chain) mapped.push_back(f.morphisms[static_cast<std::size_t>(m)]);
      img[static_cast<std::size_t>(n)].push_back(chain_simplex_impl(*nd.category, nd, mapped, f.objects[static_cast<std::size_t>(c.source(chain[0]))]));
    }
  return SimplicialMap(nc.object, nd.object, std::move(img));
}

GroupoidPresentation fundamental_groupoid_presentation(const SimplicialSet& k) {
  GroupoidPresentation p;
  p.objects = k.cell_count(0);
  auto endpoint = [&](const SimplexRef& r) { return r.cell.index; };
  for (int e = 0; e < k.cell_count(1); ++e) {
    const auto& f = k.faces({1, e});
    p.generators.emplace_back(endpoint(f[1]), endpoint(f[0]));
  }
  for (int t = 0; t < k.cell_count(2); ++t) {
    const auto& f = k.faces({2, t});
    // d_0 . d_2 . d_1^{-1} = 1, read right to left.
    std::vector<std::pair<int, int>> word;
    auto push = [&](const SimplexRef& e, int exp) {
      if (e.is_nondegenerate()) word.emplace_back(e.cell.index, exp);
    };
    push(f[1], -1);
    push(f[2], 1);
    push(f[0], 1);
    p.relations.push_back(std::move(word));
  }
  const int n = k.dimension();
  if (n >= 0 && isomorphic(k, standard(n))) p.normal_form = chaotic_groupoid(n);
  return p;
}

}  // namespace segal
