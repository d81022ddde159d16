#include "segal/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace segal {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h * 0xBF58476D1CE4E5B9ull;
}

std::vector<std::uint64_t> refine(const CellGraph& g, int rounds) {
  const std::size_t n = g.grade.size();
  std::vector<std::vector<std::pair<int, int>>> cofaces(n);
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& l : g.faces[c]) cofaces[static_cast<std::size_t>(l.target)].emplace_back(l.op, static_cast<int>(c));
  std::vector<std::uint64_t> color(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::uint64_t h = mix(0, g.grade[c]);
    for (const auto& l : g.faces[c]) h = mix(mix(h, static_cast<std::uint64_t>(l.op)), l.tag);
    h = mix(h, cofaces[c].size());
    color[c] = h;
  }
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::uint64_t h = color[c];
      for (const auto& l : g.faces[c]) h = mix(h, color[static_cast<std::size_t>(l.target)]);
      std::vector<std::uint64_t> co;
      for (const auto& [op, src] : cofaces[c]) co.push_back(mix(static_cast<std::uint64_t>(op), color[static_cast<std::size_t>(src)]));
      std::sort(co.begin(), co.end());
      for (auto v : co) h = mix(h, v);
      next[c] = h;
    }
    color = std::move(next);
  }
  return color;
}

class IsoSearch {
 public:
  IsoSearch(const CellGraph& a, const CellGraph& b) : a_(a), b_(b) {}

  std::optional<std::vector<int>> run() {
    const std::size_t n = a_.grade.size();
    if (b_.grade.size() != n) return std::nullopt;
    ca_ = refine(a_, 4);
    cb_ = refine(b_, 4);
    auto sa = ca_, sb = cb_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) by_color_[cb_[c]].push_back(static_cast<int>(c));
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return a_.faces[static_cast<std::size_t>(x)].size() > a_.faces[static_cast<std::size_t>(y)].size();
    });
    map_.assign(n, -1);
    used_.assign(n, false);
    if (!search(0)) return std::nullopt;
    return map_;
  }

 private:
  bool assign(int u, int v) {
    if (map_[static_cast<std::size_t>(u)] >= 0) return map_[static_cast<std::size_t>(u)] == v;
    if (used_[static_cast<std::size_t>(v)] || ca_[static_cast<std::size_t>(u)] != cb_[static_cast<std::size_t>(v)]) return false;
    const auto& fa = a_.faces[static_cast<std::size_t>(u)];
    const auto& fb = b_.faces[static_cast<std::size_t>(v)];
    if (fa.size() != fb.size()) return false;
    map_[static_cast<std::size_t>(u)] = v;
    used_[static_cast<std::size_t>(v)] = true;
    trail_.push_back(u);
    for (std::size_t k = 0; k < fa.size(); ++k) {
      if (fa[k].op != fb[k].op || fa[k].tag != fb[k].tag) return false;
      if (!assign(fa[k].target, fb[k].target)) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int u = trail_.back();
      trail_.pop_back();
      used_[static_cast<std::size_t>(map_[static_cast<std::size_t>(u)])] = false;
      map_[static_cast<std::size_t>(u)] = -1;
    }
  }

  bool search(std::size_t pos) {
    while (pos < order_.size() && map_[static_cast<std::size_t>(order_[pos])] >= 0) ++pos;
    if (pos == order_.size()) return true;
    const int u = order_[pos];
    for (int v : by_color_[ca_[static_cast<std::size_t>(u)]]) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      const std::size_t mark = trail_.size();
      if (assign(u, v) && search(pos + 1)) return true;
      undo(mark);
    }
    return false;
  }

  const CellGraph& a_;
  const CellGraph& b_;
  std::vector<std::uint64_t> ca_, cb_;
  std::map<std::uint64_t, std::vector<int>> by_color_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> trail_;
};

}  // namespace

std::optional<std::vector<int>> find_cell_isomorphism(const CellGraph& a, const CellGraph& b) {
  return IsoSearch(a, b).run();
}

CellGraph cell_graph(const SimplicialSet& x) {
  CellGraph g;
  std::vector<int> offset;
  int total = 0;
  for (int n = 0; n <= x.dimension(); ++n) {
    offset.push_back(total);
    total += x.cell_count(n);
  }
  for (int n = 0; n <= x.dimension(); ++n)
    for (int c = 0; c < x.cell_count(n); ++c) {
      g.grade.push_back(static_cast<std::uint64_t>(n));
      std::vector<CellGraph::Link> links;
      if (n > 0) {
        int i = 0;
        for (const SimplexRef& f : x.faces({n, c}))
          links.push_back({i++, f.degeneracy, offset[static_cast<std::size_t>(f.cell.dim)] + f.cell.index});
      }
      g.faces.push_back(std::move(links));
    }
  return g;
}

std::optional<SimplicialMap> find_isomorphism(const SSetPtr& x, const SSetPtr& y) {
  if (x->cell_counts() != y->cell_counts()) return std::nullopt;
  const auto m = find_cell_isomorphism(cell_graph(*x), cell_graph(*y));
  if (!m) return std::nullopt;
  std::vector<int> ybase;
  int total = 0;
  for (int n = 0; n <= y->dimension(); ++n) {
    ybase.push_back(total);
    total += y->cell_count(n);
  }
  std::vector<std::vector<SimplexRef>> img(static_cast<std::size_t>(x->dimension() + 1));
  std::size_t k = 0;
  for (int n = 0; n <= x->dimension(); ++n)
    for (int c = 0; c < x->cell_count(n); ++c, ++k)
      img[static_cast<std::size_t>(n)].push_back(SimplexRef::of({n, (*m)[k] - ybase[static_cast<std::size_t>(n)]}));
  return SimplicialMap(x, y, std::move(img));
}

bool isomorphic(const SimplicialSet& x, const SimplicialSet& y) {
  if (x.cell_counts() != y.cell_counts()) return false;
  return find_cell_isomorphism(cell_graph(x), cell_graph(y)).has_value();
}

}  // namespace segal
