#include "segal/document.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>

namespace segal {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

constexpr int kMaxDocumentDim = 30;

struct Token {
  std::string text;
  int column = 1;
};
struct Line {
  int number = 0;
  std::vector<Token> tokens;
  int end_column = 1;
  const std::string& key() const { return tokens[0].text; }
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    line.end_column = static_cast<int>(raw.size()) + 1;
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, std::size_t token, const std::string& message) {
  throw ParseError(l.number, token < l.tokens.size() ? l.tokens[token].column : l.end_column, message);
}

bool valid_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
                    c == '\'' || c == '+' || c == '*' || c == '^' || c == '~' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

int parse_int(const Line& l, std::size_t t, int lo, int hi, const char* what) {
  if (t >= l.tokens.size()) fail(l, t, std::string("expected ") + what);
  const auto v = to_int(l.tokens[t].text);
  if (!v || *v < lo || *v > hi) fail(l, t, std::string("bad ") + what + " '" + l.tokens[t].text + "'");
  return *v;
}

std::string id_token(const Line& l, std::size_t t) {
  if (t >= l.tokens.size()) fail(l, t, "expected an identifier");
  if (!valid_id(l.tokens[t].text)) fail(l, t, "bad identifier '" + l.tokens[t].text + "'");
  return l.tokens[t].text;
}

void expect(const Line& l, std::size_t t, const char* text) {
  if (t >= l.tokens.size() || l.tokens[t].text != text) fail(l, t, std::string("expected '") + text + "'");
}

void expect_end(const Line& l, std::size_t t) {
  if (t < l.tokens.size()) fail(l, t, "unexpected '" + l.tokens[t].text + "'");
}

Truncation parse_truncation(const Line& l) {
  Truncation t;
  t.bound = parse_int(l, 1, 0, kMaxDocumentDim, "truncation bound");
  if (l.tokens.size() < 3 || (l.tokens[2].text != "exact" && l.tokens[2].text != "inexact")) fail(l, 2, "expected 'exact' or 'inexact'");
  t.exact = l.tokens[2].text == "exact";
  expect_end(l, 3);
  return t;
}

/// Word after '@' with the prefix stripped; strictly decreasing and valid on
/// a cell of dimension `dim`.
DegeneracyMask parse_word(const Line& l, std::size_t t, std::string_view w, int dim) {
  std::vector<int> word;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = w.find(',', pos);
    const auto v = to_int(w.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!v || *v < 0) fail(l, t, "bad degeneracy word '" + std::string(w) + "'");
    word.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i - 1] <= word[i]) fail(l, t, "degeneracy word '" + std::string(w) + "' is not strictly decreasing");
  const int k = static_cast<int>(word.size());
  if (dim + k > kMaxDocumentDim) fail(l, t, "degenerate simplex of dimension above " + std::to_string(kMaxDocumentDim));
  for (int i = 0; i < k; ++i)
    if (word[uz(i)] > dim + k - 1 - i) fail(l, t, "degeneracy index " + std::to_string(word[uz(i)]) + " out of range");
  return normalize_word(word, dim);
}

std::string word_suffix(DegeneracyMask mask) {
  std::string s;
  for (int j : mask_to_word(mask)) s += (s.empty() ? "" : ",") + std::to_string(j);
  return s;
}

// Simplicial bodies.

struct SimplicialBody {
  SimplicialSet set;
  std::map<std::string, CellId> ids;
};

SimplexRef parse_simplex_ref(const Line& l, std::size_t t, const std::map<std::string, CellId>& ids) {
  const std::string& text = l.tokens[t].text;
  const auto at = text.find('@');
  const std::string id = text.substr(0, at);
  const auto it = ids.find(id);
  if (it == ids.end()) fail(l, t, "unknown cell '" + id + "'");
  SimplexRef r = SimplexRef::of(it->second);
  if (at != std::string::npos) r.degeneracy = parse_word(l, t, std::string_view(text).substr(at + 1), it->second.dim);
  return r;
}

SimplicialBody parse_simplicial(std::span<const Line> lines) {
  struct Raw {
    std::string id;
    int dim;
    const Line* line;
  };
  SimplicialBody out;
  std::vector<Raw> raw;
  for (const Line& l : lines) {
    if (l.key() == "truncation") {
      if (out.set.truncation) fail(l, 0, "duplicate truncation");
      out.set.truncation = parse_truncation(l);
    } else if (l.key() == "coskeletal") {
      if (out.set.coskeletal) fail(l, 0, "duplicate coskeletal");
      out.set.coskeletal = parse_int(l, 1, 0, kMaxDocumentDim, "coskeletal value");
      expect_end(l, 2);
    } else if (l.key() == "cell") {
      const std::string id = id_token(l, 1);
      if (out.ids.contains(id)) fail(l, 1, "duplicate cell '" + id + "'");
      const int dim = parse_int(l, 2, 0, kMaxDocumentDim, "dimension");
      const std::size_t faces = l.tokens.size() > 3 ? l.tokens.size() - 4 : 0;
      if (l.tokens.size() > 3) expect(l, 3, ":");
      if (faces != uz(dim == 0 ? 0 : dim + 1))
        fail(l, 2, "cell '" + id + "' of dimension " + std::to_string(dim) + " needs " + std::to_string(dim == 0 ? 0 : dim + 1) + " faces");
      out.ids[id] = {};
      raw.push_back({id, dim, &l});
    } else {
      fail(l, 0, "unknown directive '" + l.key() + "'");
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return std::tie(a.dim, a.id) < std::tie(b.dim, b.id); });
  std::vector<int> next(kMaxDocumentDim + 1, 0);
  for (const Raw& r : raw) out.ids[r.id] = CellId{r.dim, next[uz(r.dim)]++};
  for (const Raw& r : raw) {
    std::vector<SimplexRef> faces;
    for (std::size_t t = 4; t < r.line->tokens.size(); ++t) {
      const SimplexRef f = parse_simplex_ref(*r.line, t, out.ids);
      if (f.dim() != r.dim - 1)
        fail(*r.line, t, "face d_" + std::to_string(t - 4) + " of '" + r.id + "' has dimension " + std::to_string(f.dim()));
      faces.push_back(f);
    }
    out.set.add_cell(r.dim, std::move(faces), r.id);
  }
  for (const Raw& r : raw) {
    const SimplexRef x = SimplexRef::of(out.ids.at(r.id));
    for (int j = 1; j <= r.dim && r.dim >= 2; ++j)
      for (int i = 0; i < j; ++i)
        if (out.set.face(out.set.face(x, j), i) != out.set.face(out.set.face(x, i), j - 1))
          fail(*r.line, 1,
               "simplicial identity d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                   " fails for '" + r.id + "'");
  }
  return out;
}

// Bisimplicial bodies.

BiRef parse_biref(const Line& l, std::size_t t, const std::map<std::string, BiCellId>& ids) {
  const std::string& text = l.tokens[t].text;
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto at = text.find('@', pos);
    parts.push_back(std::string_view(text).substr(pos, at == std::string::npos ? std::string::npos : at - pos));
    if (at == std::string::npos) break;
    pos = at + 1;
  }
  const std::string id(parts[0]);
  const auto it = ids.find(id);
  if (it == ids.end()) fail(l, t, "unknown cell '" + id + "'");
  BiRef r = BiRef::of(it->second);
  bool seen_h = false, seen_v = false;
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const std::string_view part = parts[p];
    if (part.size() >= 2 && part[0] == 'h' && !seen_h && !seen_v) {
      r.h = parse_word(l, t, part.substr(1), it->second.p);
      seen_h = true;
    } else if (part.size() >= 2 && part[0] == 'v' && !seen_v) {
      r.v = parse_word(l, t, part.substr(1), it->second.q);
      seen_v = true;
    } else {
      fail(l, t, "bad degeneracy suffix '" + std::string(part) + "'");
    }
  }
  return r;
}

struct BisimplicialBody {
  BisimplicialSet set;
  std::map<std::string, BiCellId> ids;
};

BisimplicialBody parse_bisimplicial(std::span<const Line> lines) {
  struct Raw {
    std::string id;
    int p, q;
    const Line* line;
    std::size_t bar;
  };
  BisimplicialBody out;
  std::vector<Raw> raw;
  std::set<std::string> seen;
  for (const Line& l : lines) {
    if (l.key() == "htruncation" || l.key() == "vtruncation") {
      auto& slot = l.key() == "htruncation" ? out.set.htruncation : out.set.vtruncation;
      if (slot) fail(l, 0, "duplicate " + l.key());
      slot = parse_truncation(l);
    } else if (l.key() == "hcoskeletal") {
      if (out.set.hcoskeletal) fail(l, 0, "duplicate hcoskeletal");
      out.set.hcoskeletal = parse_int(l, 1, 0, kMaxDocumentDim, "coskeletal value");
      expect_end(l, 2);
    } else if (l.key() == "cell") {
      const std::string id = id_token(l, 1);
      if (!seen.insert(id).second) fail(l, 1, "duplicate cell '" + id + "'");
      const int p = parse_int(l, 2, 0, kMaxDocumentDim, "horizontal dimension");
      const int q = parse_int(l, 3, 0, kMaxDocumentDim, "vertical dimension");
      const std::size_t nh = uz(p == 0 ? 0 : p + 1), nv = uz(q == 0 ? 0 : q + 1);
      std::size_t bar = 5 + nh;
      if (l.tokens.size() == 4) {
        if (nh + nv != 0) fail(l, 4, "cell '" + id + "' needs faces");
        bar = 4;
      } else {
        expect(l, 4, ":");
        if (bar >= l.tokens.size() || l.tokens[bar].text != "|") fail(l, bar, "cell '" + id + "' needs " + std::to_string(nh) + " horizontal faces, then '|'");
        if (l.tokens.size() != bar + 1 + nv) fail(l, 3, "cell '" + id + "' needs " + std::to_string(nv) + " vertical faces");
      }
      raw.push_back({id, p, q, &l, bar});
    } else {
      fail(l, 0, "unknown directive '" + l.key() + "'");
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return std::tie(a.p, a.q, a.id) < std::tie(b.p, b.q, b.id); });
  std::map<std::pair<int, int>, int> next;
  for (const Raw& r : raw) out.ids[r.id] = BiCellId{r.p, r.q, next[{r.p, r.q}]++};
  for (const Raw& r : raw) {
    std::vector<BiRef> hf, vf;
    if (r.bar > 4) {
      for (std::size_t t = 5; t < r.bar; ++t) {
        const BiRef f = parse_biref(*r.line, t, out.ids);
        if (f.hdim() != r.p - 1 || f.vdim() != r.q) fail(*r.line, t, "horizontal face of '" + r.id + "' has the wrong bidegree");
        hf.push_back(f);
      }
      for (std::size_t t = r.bar + 1; t < r.line->tokens.size(); ++t) {
        const BiRef f = parse_biref(*r.line, t, out.ids);
        if (f.hdim() != r.p || f.vdim() != r.q - 1) fail(*r.line, t, "vertical face of '" + r.id + "' has the wrong bidegree");
        vf.push_back(f);
      }
    }
    out.set.add_cell(r.p, r.q, std::move(hf), std::move(vf), r.id);
  }
  const BisimplicialSet& x = out.set;
  for (const Raw& r : raw) {
    const BiRef c = BiRef::of(out.ids.at(r.id));
    auto bad = [&](const std::string& which) { fail(*r.line, 1, which + " identity fails for '" + r.id + "'"); };
    for (int j = 1; j <= r.p && r.p >= 2; ++j)
      for (int i = 0; i < j; ++i)
        if (x.hface(x.hface(c, j), i) != x.hface(x.hface(c, i), j - 1)) bad("horizontal simplicial");
    for (int j = 1; j <= r.q && r.q >= 2; ++j)
      for (int i = 0; i < j; ++i)
        if (x.vface(x.vface(c, j), i) != x.vface(x.vface(c, i), j - 1)) bad("vertical simplicial");
    for (int i = 0; i <= r.p && r.p >= 1; ++i)
      for (int j = 0; j <= r.q && r.q >= 1; ++j)
        if (x.hface(x.vface(c, j), i) != x.vface(x.hface(c, i), j)) bad("interchange");
  }
  return out;
}

// Categories.

struct CategoryBody {
  FiniteCategory category;
  std::map<std::string, int> objects;
  std::map<std::string, int> morphisms;
};

CategoryBody parse_category(std::span<const Line> lines, const Line& anchor) {
  CategoryBody out;
  std::vector<std::pair<std::string, const Line*>> objects;
  struct RawMor {
    std::string id, source, target;
    const Line* line;
  };
  std::vector<RawMor> morphisms;
  std::vector<const Line*> composites;
  std::set<std::string> seen_obj, seen_mor;
  for (const Line& l : lines) {
    if (l.key() == "object") {
      const std::string id = id_token(l, 1);
      expect_end(l, 2);
      if (!seen_obj.insert(id).second) fail(l, 1, "duplicate object '" + id + "'");
      objects.emplace_back(id, &l);
    } else if (l.key() == "morphism") {
      const std::string id = id_token(l, 1);
      if (!seen_mor.insert(id).second) fail(l, 1, "duplicate morphism '" + id + "'");
      expect(l, 2, ":");
      const std::string s = id_token(l, 3);
      expect(l, 4, "->");
      const std::string t = id_token(l, 5);
      expect_end(l, 6);
      morphisms.push_back({id, s, t, &l});
    } else if (l.key() == "compose") {
      composites.push_back(&l);
    } else {
      fail(l, 0, "unknown directive '" + l.key() + "'");
    }
  }
  std::sort(objects.begin(), objects.end());
  std::sort(morphisms.begin(), morphisms.end(), [](const RawMor& a, const RawMor& b) { return a.id < b.id; });
  FiniteCategory& c = out.category;
  for (const auto& [id, line] : objects) out.objects[id] = c.add_object(id);
  for (const RawMor& m : morphisms) {
    const auto s = out.objects.find(m.source), t = out.objects.find(m.target);
    if (s == out.objects.end()) fail(*m.line, 3, "unknown object '" + m.source + "'");
    if (t == out.objects.end()) fail(*m.line, 5, "unknown object '" + m.target + "'");
    out.morphisms[m.id] = c.add_morphism(s->second, t->second, m.id);
  }
  auto morphism = [&](const Line& l, std::size_t t) {
    if (t >= l.tokens.size()) fail(l, t, "expected a morphism");
    const std::string& text = l.tokens[t].text;
    if (text.starts_with("id:")) {
      const auto o = out.objects.find(text.substr(3));
      if (o == out.objects.end()) fail(l, t, "unknown object '" + text.substr(3) + "'");
      return c.identity(o->second);
    }
    const auto m = out.morphisms.find(text);
    if (m == out.morphisms.end()) fail(l, t, "unknown morphism '" + text + "'");
    return m->second;
  };
  std::set<std::pair<int, int>> entered;
  for (const Line* l : composites) {
    const int g = morphism(*l, 1), f = morphism(*l, 2);
    expect(*l, 3, "=");
    const int h = morphism(*l, 4);
    expect_end(*l, 5);
    if (c.source(g) != c.target(f)) fail(*l, 1, "'" + l->tokens[1].text + "' and '" + l->tokens[2].text + "' are not composable");
    if (c.source(h) != c.source(f) || c.target(h) != c.target(g)) fail(*l, 4, "composite has the wrong source or target");
    if (c.is_identity(g) || c.is_identity(f)) {
      if (h != (c.is_identity(g) ? f : g)) fail(*l, 4, "composite with an identity must be the other morphism");
      continue;
    }
    if (!entered.insert({g, f}).second) fail(*l, 1, "duplicate composite");
    c.set_composite(g, f, h);
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    const Line& at = composites.empty() ? anchor : *composites.back();
    throw ParseError(at.number, 1, std::string("category: ") + e.what());
  }
  return out;
}

// Serialization helpers.

std::string padded(int value, int width) {
  std::string s = std::to_string(value);
  return std::string(uz(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

int digits(int n) { return static_cast<int>(std::to_string(std::max(0, n)).size()); }

struct SimplicialIds {
  std::vector<std::vector<std::string>> ids;
  /// Cells of each dimension in identifier order.
  std::vector<std::vector<int>> order;
  std::string ref(const SimplexRef& r) const {
    std::string s = ids[uz(r.cell.dim)][uz(r.cell.index)];
    if (r.degeneracy) s += "@" + word_suffix(r.degeneracy);
    return s;
  }
};

SimplicialIds simplicial_ids(const SimplicialSet& x) {
  SimplicialIds out;
  std::set<std::string> seen;
  bool labels = true;
  int widest = 0;
  for (int n = 0; n <= x.dimension(); ++n) {
    widest = std::max(widest, x.cell_count(n) - 1);
    for (int k = 0; k < x.cell_count(n) && labels; ++k) {
      const std::string& l = x.label({n, k});
      labels = valid_id(l) && seen.insert(l).second;
    }
  }
  const int width = digits(widest);
  out.ids.resize(uz(x.dimension() + 1));
  out.order.resize(uz(x.dimension() + 1));
  for (int n = 0; n <= x.dimension(); ++n) {
    for (int k = 0; k < x.cell_count(n); ++k)
      out.ids[uz(n)].push_back(labels ? x.label({n, k}) : "c" + std::to_string(n) + "_" + padded(k, width));
    auto& o = out.order[uz(n)];
    o.resize(uz(x.cell_count(n)));
    for (int k = 0; k < x.cell_count(n); ++k) o[uz(k)] = k;
    std::sort(o.begin(), o.end(), [&](int a, int b) { return out.ids[uz(n)][uz(a)] < out.ids[uz(n)][uz(b)]; });
  }
  return out;
}

std::string truncation_line(const char* key, const Truncation& t) {
  return std::string(key) + " " + std::to_string(t.bound) + (t.exact ? " exact\n" : " inexact\n");
}

std::string simplicial_body(const SimplicialSet& x, const SimplicialIds& ids) {
  std::string s;
  if (x.truncation) s += truncation_line("truncation", *x.truncation);
  if (x.coskeletal) s += "coskeletal " + std::to_string(*x.coskeletal) + "\n";
  for (int n = 0; n <= x.dimension(); ++n)
    for (int k : ids.order[uz(n)]) {
      s += "cell " + ids.ids[uz(n)][uz(k)] + " " + std::to_string(n);
      if (n > 0) {
        s += " :";
        for (const SimplexRef& f : x.faces({n, k})) s += " " + ids.ref(f);
      }
      s += "\n";
    }
  return s;
}

struct CategoryIds {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;  // identities as id:OBJ
  std::vector<int> object_order;
  std::vector<int> morphism_order;  // non-identities only
};

CategoryIds category_ids(const FiniteCategory& c) {
  CategoryIds out;
  std::set<std::string> seen;
  bool names = true;
  for (int o = 0; o < c.object_count() && names; ++o) names = valid_id(c.object_name(o)) && seen.insert(c.object_name(o)).second;
  for (int o = 0; o < c.object_count(); ++o) out.objects.push_back(names ? c.object_name(o) : "o" + padded(o, digits(c.object_count() - 1)));
  seen.clear();
  names = true;
  for (int m = 0; m < c.morphism_count() && names; ++m)
    if (!c.is_identity(m)) names = valid_id(c.morphism_name(m)) && seen.insert(c.morphism_name(m)).second;
  int count = 0;
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) {
      out.morphisms.push_back("id:" + out.objects[uz(c.source(m))]);
    } else {
      out.morphisms.push_back(names ? c.morphism_name(m) : "m" + padded(count, digits(c.morphism_count() - 1)));
      out.morphism_order.push_back(m);
      ++count;
    }
  }
  for (int o = 0; o < c.object_count(); ++o) out.object_order.push_back(o);
  std::sort(out.object_order.begin(), out.object_order.end(), [&](int a, int b) { return out.objects[uz(a)] < out.objects[uz(b)]; });
  std::sort(out.morphism_order.begin(), out.morphism_order.end(), [&](int a, int b) { return out.morphisms[uz(a)] < out.morphisms[uz(b)]; });
  return out;
}

std::string category_body(const FiniteCategory& c, const CategoryIds& ids) {
  std::string s;
  for (int o : ids.object_order) s += "object " + ids.objects[uz(o)] + "\n";
  for (int m : ids.morphism_order)
    s += "morphism " + ids.morphisms[uz(m)] + " : " + ids.objects[uz(c.source(m))] + " -> " + ids.objects[uz(c.target(m))] + "\n";
  for (int g : ids.morphism_order)
    for (int f : ids.morphism_order)
      if (c.source(g) == c.target(f)) s += "compose " + ids.morphisms[uz(g)] + " " + ids.morphisms[uz(f)] + " = " + ids.morphisms[uz(c.compose(g, f))] + "\n";
  return s;
}

const char* kHeader = "segal 1\n";

Document parse_presheaf(std::span<const Line> body, const Line& kind_line) {
  if (body.empty() || body[0].key() != "index") fail(body.empty() ? kind_line : body[0], 0, "expected 'index'");
  expect_end(body[0], 1);
  std::size_t pos = 1;
  while (pos < body.size() && body[pos].key() != "section" && body[pos].key() != "restriction") ++pos;
  const CategoryBody index = parse_category(body.subspan(1, pos - 1), body[0]);
  const FiniteCategory& c = index.category;

  struct Block {
    const Line* head;
    std::span<const Line> lines;
  };
  std::map<int, Block> sections, restrictions;
  while (pos < body.size()) {
    const Line& head = body[pos];
    std::size_t end = pos + 1;
    while (end < body.size() && body[end].key() != "section" && body[end].key() != "restriction") ++end;
    const Block block{&head, body.subspan(pos + 1, end - pos - 1)};
    const std::string id = id_token(head, 1);
    expect_end(head, 2);
    if (head.key() == "section") {
      const auto o = index.objects.find(id);
      if (o == index.objects.end()) fail(head, 1, "unknown object '" + id + "'");
      if (!sections.emplace(o->second, block).second) fail(head, 1, "duplicate section '" + id + "'");
    } else {
      const auto m = index.morphisms.find(id);
      if (m == index.morphisms.end()) fail(head, 1, "unknown morphism '" + id + "'");
      if (!restrictions.emplace(m->second, block).second) fail(head, 1, "duplicate restriction '" + id + "'");
    }
    pos = end;
  }
  const Line& last = body.back();
  SSetPresheaf p;
  p.index = c;
  std::vector<SimplicialBody> parsed;
  for (int o = 0; o < c.object_count(); ++o) {
    const auto it = sections.find(o);
    if (it == sections.end()) throw ParseError(last.number, last.end_column, "missing section for object '" + c.object_name(o) + "'");
    parsed.push_back(parse_simplicial(it->second.lines));
    p.sections.push_back(share(parsed.back().set));
  }
  for (int m = 0; m < c.morphism_count(); ++m) {
    const SSetPtr& src = p.sections[uz(c.target(m))];
    const SSetPtr& dst = p.sections[uz(c.source(m))];
    if (c.is_identity(m)) {
      p.restrictions.push_back(SimplicialMap::identity(src));
      continue;
    }
    const auto it = restrictions.find(m);
    if (it == restrictions.end()) throw ParseError(last.number, last.end_column, "missing restriction for '" + c.morphism_name(m) + "'");
    const Line& head = *it->second.head;
    const SimplicialBody& from = parsed[uz(c.target(m))];
    const SimplicialBody& to = parsed[uz(c.source(m))];
    std::vector<std::vector<std::optional<SimplexRef>>> images(uz(src->dimension() + 1));
    for (int n = 0; n <= src->dimension(); ++n) images[uz(n)].resize(uz(src->cell_count(n)));
    for (const Line& l : it->second.lines) {
      if (l.key() != "image") fail(l, 0, "unknown directive '" + l.key() + "'");
      if (l.tokens.size() != 3) fail(l, std::min<std::size_t>(l.tokens.size(), 3), "expected 'image CELL REF'");
      const auto cell = from.ids.find(l.tokens[1].text);
      if (cell == from.ids.end()) fail(l, 1, "unknown cell '" + l.tokens[1].text + "'");
      const SimplexRef r = parse_simplex_ref(l, 2, to.ids);
      if (r.dim() != cell->second.dim) fail(l, 2, "image of '" + l.tokens[1].text + "' has dimension " + std::to_string(r.dim()));
      auto& slot = images[uz(cell->second.dim)][uz(cell->second.index)];
      if (slot) fail(l, 1, "duplicate image for '" + l.tokens[1].text + "'");
      slot = r;
    }
    std::vector<std::vector<SimplexRef>> imgs(images.size());
    for (const auto& [id, cell] : from.ids) {
      const auto& slot = images[uz(cell.dim)][uz(cell.index)];
      if (!slot) fail(head, 1, "restriction '" + head.tokens[1].text + "' has no image for '" + id + "'");
    }
    for (std::size_t n = 0; n < images.size(); ++n)
      for (const auto& slot : images[n]) imgs[n].push_back(*slot);
    SimplicialMap map(src, dst, std::move(imgs));
    try {
      map.validate();
    } catch (const std::invalid_argument& e) {
      fail(head, 1, "restriction '" + head.tokens[1].text + "' is not simplicial: " + e.what());
    }
    p.restrictions.push_back(std::move(map));
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    fail(body[0], 0, std::string("presheaf: ") + e.what());
  }
  Document d;
  d.kind = DocumentKind::presheaf;
  d.presheaf = std::make_shared<const SSetPresheaf>(std::move(p));
  return d;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message), line_(line), column_(column) {}

std::string to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::simplicial: return "simplicial";
    case DocumentKind::bisimplicial: return "bisimplicial";
    case DocumentKind::category: return "category";
    case DocumentKind::presheaf: return "presheaf";
  }
  return "?";
}

Document parse_document(std::string_view text) {
  const std::vector<Line> lines = lex(text);
  if (lines.empty()) throw ParseError(1, 1, "empty document");
  const Line& header = lines[0];
  if (header.key() != "segal") fail(header, 0, "expected header 'segal 1'");
  if (header.tokens.size() < 2 || header.tokens[1].text != "1") fail(header, 1, "unsupported format version");
  expect_end(header, 2);
  if (lines.size() < 2) throw ParseError(header.number, header.end_column, "missing document kind");
  const Line& kind = lines[1];
  expect_end(kind, 1);
  const std::span<const Line> body = std::span(lines).subspan(2);
  Document d;
  if (kind.key() == "simplicial") {
    d.kind = DocumentKind::simplicial;
    d.simplicial = share(parse_simplicial(body).set);
  } else if (kind.key() == "bisimplicial") {
    d.kind = DocumentKind::bisimplicial;
    d.bisimplicial = share(parse_bisimplicial(body).set);
  } else if (kind.key() == "category") {
    d.kind = DocumentKind::category;
    d.category = std::make_shared<const FiniteCategory>(parse_category(body, kind).category);
  } else if (kind.key() == "presheaf") {
    d = parse_presheaf(body, kind);
  } else {
    fail(kind, 0, "unknown document kind '" + kind.key() + "'");
  }
  return d;
}

std::string serialize(const SimplicialSet& x) { return std::string(kHeader) + "simplicial\n" + simplicial_body(x, simplicial_ids(x)); }

std::string serialize(const BisimplicialSet& x) {
  std::map<std::pair<int, int>, std::vector<BiCellId>> by_degree;
  for (const BiCellId& c : x.cells()) by_degree[{c.p, c.q}].push_back(c);
  std::set<std::string> seen;
  bool labels = true;
  int widest = 0;
  for (const auto& [pq, cells] : by_degree) {
    widest = std::max(widest, static_cast<int>(cells.size()) - 1);
    for (const BiCellId& c : cells)
      if (labels) labels = valid_id(x.label(c)) && seen.insert(x.label(c)).second;
  }
  std::map<BiCellId, std::string> ids;
  for (const auto& [pq, cells] : by_degree)
    for (const BiCellId& c : cells)
      ids[c] = labels ? x.label(c) : "c" + std::to_string(c.p) + "_" + std::to_string(c.q) + "_" + padded(c.index, digits(widest));
  auto ref = [&](const BiRef& r) {
    std::string s = ids.at(r.cell);
    if (r.h) s += "@h" + word_suffix(r.h);
    if (r.v) s += "@v" + word_suffix(r.v);
    return s;
  };
  std::string s = std::string(kHeader) + "bisimplicial\n";
  if (x.htruncation) s += truncation_line("htruncation", *x.htruncation);
  if (x.vtruncation) s += truncation_line("vtruncation", *x.vtruncation);
  if (x.hcoskeletal) s += "hcoskeletal " + std::to_string(*x.hcoskeletal) + "\n";
  for (auto& [pq, cells] : by_degree) {
    std::sort(cells.begin(), cells.end(), [&](const BiCellId& a, const BiCellId& b) { return ids.at(a) < ids.at(b); });
    for (const BiCellId& c : cells) {
      s += "cell " + ids.at(c) + " " + std::to_string(c.p) + " " + std::to_string(c.q);
      if (c.p > 0 || c.q > 0) {
        s += " :";
        for (const BiRef& f : x.hfaces(c)) s += " " + ref(f);
        s += " |";
        for (const BiRef& f : x.vfaces(c)) s += " " + ref(f);
      }
      s += "\n";
    }
  }
  return s;
}

std::string serialize(const FiniteCategory& c) { return std::string(kHeader) + "category\n" + category_body(c, category_ids(c)); }

std::string serialize(const SSetPresheaf& p) {
  const FiniteCategory& c = p.index;
  const CategoryIds cids = category_ids(c);
  std::string s = std::string(kHeader) + "presheaf\nindex\n" + category_body(c, cids);
  std::vector<SimplicialIds> ids;
  for (const SSetPtr& x : p.sections) ids.push_back(simplicial_ids(*x));
  for (int o : cids.object_order) s += "section " + cids.objects[uz(o)] + "\n" + simplicial_body(*p.sections[uz(o)], ids[uz(o)]);
  for (int m : cids.morphism_order) {
    s += "restriction " + cids.morphisms[uz(m)] + "\n";
    const SimplicialMap& r = p.restrictions[uz(m)];
    const SimplicialIds& from = ids[uz(c.target(m))];
    const SimplicialIds& to = ids[uz(c.source(m))];
    for (std::size_t n = 0; n < from.order.size(); ++n)
      for (int k : from.order[n]) s += "image " + from.ids[n][uz(k)] + " " + to.ref(r.image({static_cast<int>(n), k})) + "\n";
  }
  return s;
}

std::string serialize(const Document& d) {
  switch (d.kind) {
    case DocumentKind::simplicial: return serialize(*d.simplicial);
    case DocumentKind::bisimplicial: return serialize(*d.bisimplicial);
    case DocumentKind::category: return serialize(*d.category);
    case DocumentKind::presheaf: return serialize(*d.presheaf);
  }
  return {};
}

std::string canonical(std::string_view text) { return serialize(parse_document(text)); }

}  // namespace segal
