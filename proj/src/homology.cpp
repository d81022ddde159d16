#include "segal/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace segal {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in homology computation");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in homology computation");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) { return add(a, mul(b, -1)); }

// Extended gcd: returns g and sets x, y with a x + b y = g >= 0.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t t = sub(a, mul(q, b));
    a = b;
    b = t;
    t = sub(x0, mul(q, x1));
    x0 = x1;
    x1 = t;
    t = sub(y0, mul(q, y1));
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

// Column ops on a (and on u when given): (c_i, c_j) <- (p c_i + q c_j, r c_i + s c_j).
void combine_columns(IntMatrix& a, IntMatrix* u, int i, int j, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  auto apply = [&](IntMatrix& m) {
    for (int row = 0; row < m.rows; ++row) {
      const std::int64_t ci = m.at(row, i), cj = m.at(row, j);
      m.at(row, i) = add(mul(p, ci), mul(q, cj));
      m.at(row, j) = add(mul(r, ci), mul(s, cj));
    }
  };
  apply(a);
  if (u) apply(*u);
}

struct Echelon {
  IntMatrix e;
  IntMatrix u;
  std::vector<int> pivot_rows;  // pivot column k has its pivot at pivot_rows[k]
};

// Unimodular column reduction: e = m u in column echelon form.
Echelon column_echelon(const IntMatrix& m) {
  Echelon ec{m, IntMatrix(m.cols, m.cols), {}};
  for (int i = 0; i < m.cols; ++i) ec.u.at(i, i) = 1;
  int p = 0;
  for (int r = 0; r < m.rows && p < m.cols; ++r) {
    for (int j = p + 1; j < m.cols; ++j) {
      const std::int64_t a = ec.e.at(r, p), b = ec.e.at(r, j);
      if (b == 0) continue;
      std::int64_t x, y;
      const std::int64_t g = xgcd(a, b, x, y);
      // [a b] * [[x, -b/g], [y, a/g]] = [g, 0], determinant 1.
      combine_columns(ec.e, &ec.u, p, j, x, y, -(b / g), a / g);
    }
    if (ec.e.at(r, p) != 0) {
      ec.pivot_rows.push_back(r);
      ++p;
    }
  }
  return ec;
}

}  // namespace

std::vector<std::int64_t> smith_invariants(IntMatrix m) {
  std::vector<std::int64_t> out;
  int t = 0;
  while (t < m.rows && t < m.cols) {
    // Smallest nonzero entry in the remaining block as pivot.
    int pr = -1, pc = -1;
    for (int r = t; r < m.rows; ++r)
      for (int c = t; c < m.cols; ++c)
        if (m.at(r, c) != 0 && (pr < 0 || std::llabs(m.at(r, c)) < std::llabs(m.at(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, t), m.at(r, pc));
    bool clean = false;
    while (!clean) {
      clean = true;
      const std::int64_t piv = m.at(t, t);
      for (int r = t + 1; r < m.rows; ++r) {
        const std::int64_t q = m.at(r, t) / piv;
        if (q != 0)
          for (int c = t; c < m.cols; ++c) m.at(r, c) = sub(m.at(r, c), mul(q, m.at(t, c)));
        if (m.at(r, t) != 0) clean = false;
      }
      for (int c = t + 1; c < m.cols; ++c) {
        const std::int64_t q = m.at(t, c) / piv;
        if (q != 0)
          for (int r = t; r < m.rows; ++r) m.at(r, c) = sub(m.at(r, c), mul(q, m.at(r, t)));
        if (m.at(t, c) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: fold an offending entry into the pivot row.
        for (int r = t + 1; r < m.rows && clean; ++r)
          for (int c = t + 1; c < m.cols && clean; ++c)
            if (m.at(r, c) % piv != 0) {
              for (int cc = t; cc < m.cols; ++cc) m.at(t, cc) = add(m.at(t, cc), m.at(r, cc));
              clean = false;
            }
      }
      if (!clean) {
        // Move the smallest nonzero entry of the pivot row/column to the corner.
        int br = t, bc = t;
        for (int r = t; r < m.rows; ++r)
          if (m.at(r, t) != 0 && (m.at(br, bc) == 0 || std::llabs(m.at(r, t)) < std::llabs(m.at(br, bc)))) {
            br = r;
            bc = t;
          }
        for (int c = t; c < m.cols; ++c)
          if (m.at(t, c) != 0 && (m.at(br, bc) == 0 || std::llabs(m.at(t, c)) < std::llabs(m.at(br, bc)))) {
            br = t;
            bc = c;
          }
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(t, c), m.at(br, c));
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, t), m.at(r, bc));
      }
    }
    out.push_back(std::llabs(m.at(t, t)));
    ++t;
  }
  return out;
}

std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& m) {
  const Echelon ec = column_echelon(m);
  std::vector<std::vector<std::int64_t>> out;
  for (int j = static_cast<int>(ec.pivot_rows.size()); j < m.cols; ++j) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(m.cols));
    for (int i = 0; i < m.cols; ++i) v[static_cast<std::size_t>(i)] = ec.u.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

bool in_integer_image(const IntMatrix& m, const std::vector<std::int64_t>& v) {
  if (static_cast<int>(v.size()) != m.rows) throw std::invalid_argument("vector length does not match matrix rows");
  const Echelon ec = column_echelon(m);
  std::vector<std::int64_t> res = v;
  for (std::size_t k = 0; k < ec.pivot_rows.size(); ++k) {
    const int r = ec.pivot_rows[k];
    const std::int64_t piv = ec.e.at(r, static_cast<int>(k));
    if (res[static_cast<std::size_t>(r)] % piv != 0) return false;
    const std::int64_t t = res[static_cast<std::size_t>(r)] / piv;
    for (int row = 0; row < m.rows; ++row)
      res[static_cast<std::size_t>(row)] = sub(res[static_cast<std::size_t>(row)], mul(t, ec.e.at(row, static_cast<int>(k))));
  }
  return std::all_of(res.begin(), res.end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix boundary_matrix(const SimplicialSet& x, int n) {
  IntMatrix m(n >= 1 ? x.cell_count(n - 1) : 0, x.cell_count(n));
  if (n < 1) return m;
  for (int c = 0; c < x.cell_count(n); ++c) {
    const auto& faces = x.faces({n, c});
    for (int i = 0; i <= n; ++i) {
      const SimplexRef& f = faces[static_cast<std::size_t>(i)];
      if (!f.is_nondegenerate()) continue;
      m.at(f.cell.index, c) = add(m.at(f.cell.index, c), (i % 2 == 0) ? 1 : -1);
    }
  }
  return m;
}

std::string HomologyGroup::str() const {
  std::string s;
  if (rank == 0 && torsion.empty()) return "0";
  if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (std::int64_t t : torsion) s += (s.empty() ? "" : "+") + std::string("Z/") + std::to_string(t);
  return s;
}

std::vector<HomologyGroup> homology(const SimplicialSet& x) {
  const int top = x.dimension();
  std::vector<HomologyGroup> out(static_cast<std::size_t>(std::max(top + 1, 0)));
  std::vector<std::vector<std::int64_t>> inv(static_cast<std::size_t>(top + 2));
  for (int n = 1; n <= top; ++n) inv[static_cast<std::size_t>(n)] = smith_invariants(boundary_matrix(x, n));
  for (int n = 0; n <= top; ++n) {
    const int rank_out = static_cast<int>(inv[static_cast<std::size_t>(n)].size());
    const auto& in = inv[static_cast<std::size_t>(n + 1)];
    HomologyGroup& h = out[static_cast<std::size_t>(n)];
    h.rank = x.cell_count(n) - rank_out - static_cast<int>(in.size());
    for (std::int64_t d : in)
      if (d > 1) h.torsion.push_back(d);
  }
  return out;
}

namespace {

// Mapping cone boundary C_k -> C_{k-1} with C_k = X_{k-1} + Y_k.
IntMatrix cone_boundary(const SimplicialMap& f, int k) {
  const SimplicialSet& x = *f.source();
  const SimplicialSet& y = *f.target();
  auto cnt = [](const SimplicialSet& s, int n) { return n < 0 ? 0 : s.cell_count(n); };
  const int rx = cnt(x, k - 2), ry = cnt(y, k - 1), cx = cnt(x, k - 1), cy = cnt(y, k);
  IntMatrix m(rx + ry, cx + cy);
  if (k - 1 >= 1) {
    const IntMatrix dx = boundary_matrix(x, k - 1);
    for (int r = 0; r < rx; ++r)
      for (int c = 0; c < cx; ++c) m.at(r, c) = -dx.at(r, c);
  }
  for (int c = 0; c < cx; ++c) {
    const SimplexRef img = f.image({k - 1, c});
    if (img.is_nondegenerate()) m.at(rx + img.cell.index, c) = add(m.at(rx + img.cell.index, c), 1);
  }
  if (k >= 1) {
    const IntMatrix dy = boundary_matrix(y, k);
    for (int r = 0; r < ry; ++r)
      for (int c = 0; c < cy; ++c) m.at(rx + r, cx + c) = dy.at(r, c);
  }
  return m;
}

bool complete_through(const SimplicialSet& s, int n) { return !s.truncation || s.truncation->exact || s.truncation->bound >= n; }

}  // namespace

bool homology_isomorphism_below(const SimplicialMap& f, int degree_bound) {
  if (degree_bound <= 0) return true;
  if (!complete_through(*f.source(), degree_bound) || !complete_through(*f.target(), degree_bound))
    throw std::invalid_argument("homology comparison needs both sides complete through the degree bound");
  const int n = degree_bound;
  std::vector<IntMatrix> d(static_cast<std::size_t>(n + 1));
  std::vector<int> dim(static_cast<std::size_t>(n + 1));
  std::vector<std::vector<std::int64_t>> inv(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    dim[static_cast<std::size_t>(k)] = (k >= 1 ? f.source()->cell_count(k - 1) : 0) + f.target()->cell_count(k);
    if (k >= 1) {
      d[static_cast<std::size_t>(k)] = cone_boundary(f, k);
      inv[static_cast<std::size_t>(k)] = smith_invariants(d[static_cast<std::size_t>(k)]);
    }
  }
  // H_k(cone) = 0 for k < n.
  for (int k = 0; k < n; ++k) {
    const auto& in = inv[static_cast<std::size_t>(k + 1)];
    const int rank_out = k >= 1 ? static_cast<int>(inv[static_cast<std::size_t>(k)].size()) : 0;
    if (dim[static_cast<std::size_t>(k)] - rank_out - static_cast<int>(in.size()) != 0) return false;
    for (std::int64_t t : in)
      if (t != 1) return false;
  }
  // Injectivity in degree n-1: the X-part of every n-cycle of the cone bounds in X.
  const int cx = f.source()->cell_count(n - 1);
  if (cx == 0) return true;
  const IntMatrix dxn = boundary_matrix(*f.source(), n);
  for (const auto& z : integer_kernel(d[static_cast<std::size_t>(n)])) {
    std::vector<std::int64_t> xpart(z.begin(), z.begin() + cx);
    if (std::all_of(xpart.begin(), xpart.end(), [](std::int64_t v) { return v == 0; })) continue;
    if (!in_integer_image(dxn, xpart)) return false;
  }
  return true;
}

}  // namespace segal
