#include "tropmod/polyhedral.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropmod {

namespace {

long cross(const Exponent& o, const Exponent& a, const Exponent& b) {
  return (long)(a[0] - o[0]) * (b[1] - o[1]) - (long)(a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

std::vector<Exponent> convex_hull(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Exponent> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Rational twice_area(const std::vector<Exponent>& hull) {
  long s = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    s += (long)p[0] * q[1] - (long)q[0] * p[1];
  }
  return Rational(std::labs(s));
}

bool on_segment(const Exponent& a, const Exponent& b, const Exponent& p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool in_polygon(const std::vector<Exponent>& hull, const Exponent& p) {
  if (hull.size() == 1) return hull[0] == p;
  if (hull.size() == 2) return on_segment(hull[0], hull[1], p);
  for (size_t i = 0; i < hull.size(); ++i)
    if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

bool collinear(const std::vector<Exponent>& pts) {
  for (size_t i = 2; i < pts.size(); ++i)
    if (cross(pts[0], pts[1], pts[i]) != 0) return false;
  if (pts.size() >= 2 && pts[0] == pts[1]) {
    // Degenerate base pair; fall back to the hull.
    return convex_hull(pts).size() < 3;
  }
  return true;
}

NewtonSubdivision regular_subdivision(const std::vector<Exponent>& support,
                                      const std::vector<Rational>& hts) {
  if (support.size() != hts.size()) throw DomainError("support and heights differ in size");
  NewtonSubdivision sub;
  // Keep input order stable but sorted for determinism.
  std::vector<size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return support[a] < support[b]; });
  for (size_t i : order) {
    if (!sub.support.empty() && sub.support.back() == support[i])
      throw DomainError("repeated support point");
    sub.support.push_back(support[i]);
    sub.heights.push_back(hts[i]);
  }
  const auto& P = sub.support;
  const auto& H = sub.heights;
  size_t n = P.size();
  if (n < 3 || convex_hull(P).size() < 3) {
    sub.degenerate = true;
    return sub;
  }
  std::set<std::vector<size_t>> seen;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        long cr = cross(P[i], P[j], P[k]);
        if (cr == 0) continue;
        // Plane through three lifted points: z = alpha x + beta y + gamma.
        Rational x1 = P[j][0] - P[i][0], y1 = P[j][1] - P[i][1], z1 = H[j] - H[i];
        Rational x2 = P[k][0] - P[i][0], y2 = P[k][1] - P[i][1], z2 = H[k] - H[i];
        Rational det = x1 * y2 - y1 * x2;
        Rational alpha = (z1 * y2 - y1 * z2) / det;
        Rational beta = (x1 * z2 - z1 * x2) / det;
        Rational gamma = H[i] - alpha * P[i][0] - beta * P[i][1];
        std::vector<size_t> on;
        bool ok = true;
        for (size_t s = 0; s < n && ok; ++s) {
          Rational v = alpha * P[s][0] + beta * P[s][1] + gamma;
          if (H[s] > v) ok = false;
          else if (H[s] == v) on.push_back(s);
        }
        if (!ok || !seen.insert(on).second) continue;
        MarkedCell c;
        for (size_t s : on) c.marked.push_back(P[s]);
        c.vertices = convex_hull(c.marked);
        c.alpha = alpha;
        c.beta = beta;
        c.gamma = gamma;
        sub.cells.push_back(std::move(c));
      }
  std::sort(sub.cells.begin(), sub.cells.end(),
            [](const MarkedCell& a, const MarkedCell& b) { return a.marked < b.marked; });
  std::map<std::pair<Exponent, Exponent>, size_t> edge_index;
  for (size_t ci = 0; ci < sub.cells.size(); ++ci) {
    const auto& c = sub.cells[ci];
    for (size_t v = 0; v < c.vertices.size(); ++v) {
      Exponent a = c.vertices[v], b = c.vertices[(v + 1) % c.vertices.size()];
      auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        SubdivisionEdge e;
        e.a = key.first;
        e.b = key.second;
        for (auto& m : c.marked)
          if (on_segment(e.a, e.b, m)) e.marked.push_back(m);
        std::sort(e.marked.begin(), e.marked.end());
        e.cell = (int)ci;
        edge_index[key] = sub.edges.size();
        sub.edges.push_back(std::move(e));
      } else {
        sub.edges[it->second].other = (int)ci;
      }
    }
  }
  return sub;
}

NewtonSubdivision subdivision_of(const PlanePoly& g) {
  if (g.nvars() != 2) throw DomainError("plane curves need exactly two variables");
  std::vector<Exponent> pts;
  std::vector<Rational> hs;
  for (auto& [e, c] : g.terms()) {
    pts.push_back(e);
    hs.push_back(-c.valuation());
  }
  return regular_subdivision(pts, hs);
}

std::vector<long> primitive_direction(const std::vector<Rational>& v) {
  Integer den = 1;
  for (auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> w;
  Integer g = 0;
  for (auto& q : v) {
    Integer k = Rational(q * den).get_num();
    w.push_back(k);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
  }
  if (g == 0) throw DomainError("primitive direction of the zero vector");
  std::vector<long> d;
  for (auto& k : w) d.push_back(Integer(k / g).get_si());
  return d;
}

Rational lattice_length(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  if (p.size() != q.size()) throw DomainError("lattice_length: dimension mismatch");
  std::vector<Rational> v(p.size());
  for (size_t i = 0; i < p.size(); ++i) v[i] = q[i] - p[i];
  auto d = primitive_direction(v);
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) {
      Rational l = v[i] / d[i];
      l.canonicalize();
      return l;
    }
  throw DomainError("lattice_length of equal points");
}

long lattice_length_int(const Exponent& a, const Exponent& b) {
  return std::gcd(std::abs(b[0] - a[0]), std::abs(b[1] - a[1]));
}

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> m) {
  std::vector<Integer> out;
  if (m.empty()) return out;
  size_t rows = m.size(), cols = m[0].size();
  size_t t = 0;
  while (t < rows && t < cols) {
    // Find a nonzero pivot with minimal absolute value in the remaining block.
    size_t pr = rows, pc = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Integer q = m[i][t] / m[t][t];
        for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Integer q = m[t][j] / m[t][t];
        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility condition on the remaining block.
        for (size_t i = t + 1; i < rows && clean; ++i)
          for (size_t j = t + 1; j < cols && clean; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
      }
    }
    out.push_back(abs(m[t][t]));
    ++t;
  }
  return out;
}

std::vector<std::vector<Integer>> lattice_basis(std::vector<std::vector<Integer>> m) {
  // Row-style Hermite reduction.
  std::vector<std::vector<Integer>> basis;
  if (m.empty()) return basis;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    while (true) {
      size_t piv = m.size();
      for (size_t i = r; i < m.size(); ++i)
        if (m[i][c] != 0 && (piv == m.size() || abs(m[i][c]) < abs(m[piv][c]))) piv = i;
      if (piv == m.size()) break;
      std::swap(m[r], m[piv]);
      bool done = true;
      for (size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        Integer q = m[i][c] / m[r][c];
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  for (size_t i = 0; i < r; ++i) basis.push_back(m[i]);
  return basis;
}

namespace {

std::vector<std::vector<Integer>> homogenize(const std::vector<Exponent>& pts) {
  std::vector<std::vector<Integer>> m;
  for (auto& p : pts) {
    std::vector<Integer> row{Integer(1)};
    for (int k : p) row.push_back(Integer(k));
    m.push_back(row);
  }
  return m;
}

// Coordinates of v in the given basis (rows), assuming v lies in its rational span.
std::vector<Rational> coordinates(const std::vector<std::vector<Integer>>& basis,
                                  const std::vector<Integer>& v) {
  size_t r = basis.size(), n = v.size();
  // Solve sum c_i basis_i = v by Gaussian elimination on the transposed system.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(r + 1));
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < r; ++i) a[j][i] = basis[i][j];
    a[j][r] = v[j];
  }
  std::vector<size_t> pivcol;
  size_t row = 0;
  for (size_t c = 0; c < r && row < n; ++c) {
    size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    for (size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (size_t k = c; k <= r; ++k) a[i][k] -= f * a[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<Rational> x(r);
  for (size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = a[i][r] / a[i][pivcol[i]];
  return x;
}

}  // namespace

Integer lattice_index(const std::vector<Exponent>& B,
                      const std::optional<std::vector<Exponent>>& ambient) {
  if (B.empty()) throw DomainError("lattice_index of an empty set");
  auto hb = homogenize(B);
  std::vector<std::vector<Integer>> coords;
  if (!ambient) {
    coords = hb;
  } else {
    auto basis = lattice_basis(homogenize(*ambient));
    for (auto& v : hb) {
      auto c = coordinates(basis, v);
      std::vector<Integer> ci;
      for (auto& q : c) {
        if (q.get_den() != 1) throw DomainError("lattice_index: B is not inside Z.A");
        ci.push_back(q.get_num());
      }
      coords.push_back(ci);
    }
  }
  Integer idx = 1;
  for (auto& d : smith_invariants(coords)) idx *= d;
  return idx;
}

namespace {

struct FaceProjection {
  int codim;  // 1 for an edge, 2 for a vertex
  // Edge: functional phi(a) = <eta, a> - c, nonnegative on A, zero on F.
  long eta0 = 0, eta1 = 0, c = 0;
  Exponent vertex;
};

FaceProjection face_projection(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A) {
  FaceProjection fp;
  std::vector<Exponent> f = fcap;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (f.size() == 1) {
    fp.codim = 2;
    fp.vertex = f[0];
    return fp;
  }
  fp.codim = 1;
  long dx = f.back()[0] - f.front()[0], dy = f.back()[1] - f.front()[1];
  long g = std::gcd(std::labs(dx), std::labs(dy));
  long e0 = -dy / g, e1 = dx / g;
  long c = e0 * f.front()[0] + e1 * f.front()[1];
  bool neg = false, pos = false;
  for (auto& a : A) {
    long v = e0 * a[0] + e1 * a[1] - c;
    if (v < 0) neg = true;
    if (v > 0) pos = true;
  }
  if (neg && pos) throw DomainError("subdiagram_volume: F is not a face of conv(A)");
  if (neg) {
    e0 = -e0;
    e1 = -e1;
    c = -c;
  }
  fp.eta0 = e0;
  fp.eta1 = e1;
  fp.c = c;
  return fp;
}

}  // namespace

Integer subdiagram_volume(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A) {
  auto fp = face_projection(fcap, A);
  std::set<Exponent> fset(fcap.begin(), fcap.end());
  std::vector<Exponent> rest;
  for (auto& a : A)
    if (!fset.count(a)) rest.push_back(a);
  if (rest.empty()) throw DomainError("subdiagram_volume: F cap A must be a proper subset");
  if (fp.codim == 1) {
    long m = -1;
    for (auto& a : rest) {
      long v = fp.eta0 * a[0] + fp.eta1 * a[1] - fp.c;
      if (v <= 0) throw DomainError("subdiagram_volume: F is not a face of conv(A)");
      if (m < 0 || v < m) m = v;
    }
    return Integer(m);
  }
  // Vertex: 2 * area(conv A \ conv(A \ v)); the quotient lattice is Z^2 via a -> a - v.
  for (auto& a : rest)
    if (a == fp.vertex) throw DomainError("subdiagram_volume: vertex listed twice");
  std::vector<Exponent> all = A;
  Rational big = twice_area(convex_hull(all));
  auto hr = convex_hull(rest);
  Rational small = hr.size() >= 3 ? twice_area(hr) : Rational(0);
  Rational u = big - small;
  return u.get_num();
}

Rational subdiagram_volume_gkz(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A) {
  auto fp = face_projection(fcap, A);
  Integer u = subdiagram_volume(fcap, A);
  // Index of pi(Z.A) in pi(Z^3) from the projected lattice generators.
  auto basis = lattice_basis(homogenize(A));
  std::vector<std::vector<Integer>> proj;
  for (auto& b : basis) {
    if (fp.codim == 1) {
      proj.push_back({b[1] * fp.eta0 + b[2] * fp.eta1 - b[0] * fp.c});
    } else {
      proj.push_back({b[1] - b[0] * fp.vertex[0], b[2] - b[0] * fp.vertex[1]});
    }
  }
  Integer idx = 1;
  for (auto& d : smith_invariants(proj)) idx *= d;
  return Rational(u) / Rational(idx);
}

Rational normalized_volume(const std::vector<Exponent>& cell_vertices, const Integer& idx) {
  if (cell_vertices.size() < 3) throw DomainError("normalized_volume needs a 2-cell");
  return twice_area(convex_hull(cell_vertices)) / Rational(idx);
}

}  // namespace tropmod
