#include "tropmod/discrim.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tropmod {

std::string coefficient_name(const Exponent& p) {
  std::string s = "c";
  bool small = true;
  for (int k : p)
    if (k < 0 || k > 9) small = false;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!small && i > 0) s += "_";
    s += std::to_string(p[i]);
  }
  return s;
}

namespace {

ResiduePoly to_residue(const SymPoly& p) {
  ResiduePoly r(p.vars());
  for (auto& [e, c] : p.terms()) r.add_term(e, FieldElem(c));
  return r;
}

SymPoly from_residue(const ResiduePoly& p) {
  SymPoly r(p.vars());
  for (auto& [e, c] : p.terms()) {
    if (!c.is_rational()) throw DomainError("expected rational coefficients");
    r.add_term(e, c.rational_part());
  }
  return r;
}

// Divides out the monomial content and the integer content, then fixes the sign.
SymPoly normalize(const SymPoly& p) {
  if (p.is_zero()) return p;
  size_t n = p.nvars();
  Exponent m = p.terms().begin()->first;
  for (auto& [e, c] : p.terms())
    for (size_t i = 0; i < n; ++i) m[i] = std::min(m[i], e[i]);
  for (auto& k : m) k = -k;
  SymPoly q = p.shifted_monomial(m);
  Integer num = 0, den = 1;
  for (auto& [e, c] : q.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational f(den, num);
  f.canonicalize();
  if (sgn(q.display_order().front().second) < 0) f = -f;
  return q.scaled(f);
}

std::vector<Exponent> sorted_unique(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<std::string> names_of(const std::vector<Exponent>& pts) {
  std::vector<std::string> v;
  for (auto& p : pts) v.push_back(coefficient_name(p));
  return v;
}

long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::labs(a);
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Integer coordinates of the points in a basis of the affine lattice they generate.
struct Reduced {
  int rank = 0;
  std::vector<std::vector<long>> coords;  // parallel to the input points
};

Reduced reduce_affine(const std::vector<Exponent>& pts) {
  Reduced r;
  r.coords.assign(pts.size(), {});
  std::vector<std::vector<Integer>> diffs;
  for (auto& p : pts)
    diffs.push_back({Integer(p[0] - pts[0][0]), Integer(p[1] - pts[0][1])});
  auto basis = lattice_basis(diffs);
  r.rank = (int)basis.size();
  if (r.rank == 0) {
    for (auto& c : r.coords) c = {};
    return r;
  }
  if (r.rank == 1) {
    const auto& b = basis[0];
    int k = b[0] != 0 ? 0 : 1;
    for (size_t i = 0; i < pts.size(); ++i) r.coords[i] = {Integer(diffs[i][k] / b[k]).get_si()};
    return r;
  }
  const auto& b0 = basis[0];
  const auto& b1 = basis[1];
  Integer det = b0[0] * b1[1] - b0[1] * b1[0];
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& d = diffs[i];
    Integer u = d[0] * b1[1] - d[1] * b1[0];
    Integer v = b0[0] * d[1] - b0[1] * d[0];
    r.coords[i] = {Integer(u / det).get_si(), Integer(v / det).get_si()};
  }
  return r;
}

using SymU = std::vector<SymPoly>;

void sym_trim(SymU& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Discriminant of a univariate polynomial with symbolic coefficients, up to a unit.
SymPoly sym_udisc(SymU p, const std::vector<std::string>& vars) {
  sym_trim(p);
  size_t lo = 0;
  while (lo < p.size() && p[lo].is_zero()) ++lo;
  p.erase(p.begin(), p.begin() + lo);
  if (p.size() <= 2) return SymPoly::constant(vars, Rational(1));
  SymU dp;
  for (size_t k = 1; k < p.size(); ++k) dp.push_back(p[k].scaled(Rational((long)k)));
  SymPoly res = sym_resultant(p, dp, vars);
  auto q = exact_divide(to_residue(res), to_residue(p.back()));
  if (!q) throw DomainError("discriminant: resultant not divisible by the leading coefficient");
  return from_residue(*q);
}

Discriminant make_disc(const std::vector<Exponent>& pts, SymPoly poly, bool defective,
                       const std::string& shape) {
  Discriminant d;
  d.points = pts;
  d.poly = defective ? SymPoly::constant(names_of(pts), Rational(1)) : normalize(poly);
  if (!defective && d.poly.total_degree() == 0) defective = true;
  d.defective = defective;
  d.shape = shape;
  return d;
}

long width_along(const std::vector<std::vector<long>>& c, long a, long b, long& lo) {
  lo = a * c[0][0] + b * c[0][1];
  long hi = lo;
  for (auto& p : c) {
    long v = a * p[0] + b * p[1];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace

Discriminant configuration_discriminant(const std::vector<Exponent>& marked) {
  auto pts = sorted_unique(marked);
  if (pts.empty()) throw DomainError("empty configuration");
  auto vars = names_of(pts);
  auto var = [&](size_t i) { return SymPoly::variable(vars, i); };
  auto red = reduce_affine(pts);
  if (red.rank == 0) return make_disc(pts, SymPoly(vars), true, "point");
  if (red.rank == 1) {
    long mn = red.coords[0][0];
    for (auto& c : red.coords) mn = std::min(mn, c[0]);
    long mx = mn;
    for (auto& c : red.coords) mx = std::max(mx, c[0]);
    if (pts.size() <= 2) return make_disc(pts, SymPoly(vars), true, "segment");
    SymU p(mx - mn + 1, SymPoly(vars));
    for (size_t i = 0; i < pts.size(); ++i) p[red.coords[i][0] - mn] = var(i);
    return make_disc(pts, sym_udisc(p, vars), false, "segment");
  }
  // Pyramid: all points but one on a line.
  for (size_t skip = 0; skip < pts.size(); ++skip) {
    std::vector<Exponent> rest;
    for (size_t i = 0; i < pts.size(); ++i)
      if (i != skip) rest.push_back(pts[i]);
    if (collinear(rest)) return make_disc(pts, SymPoly(vars), true, "pyramid");
  }
  const auto& c = red.coords;
  long bound = 1;
  for (auto& p : c) bound = std::max({bound, std::labs(p[0]), std::labs(p[1])});
  bound = std::min(bound + 1, 12L);
  long best = -1;
  std::vector<std::pair<long, long>> dirs;
  for (long a = 0; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      if (a == 0 && b <= 0) continue;
      if (std::gcd(a, std::labs(b)) != 1) continue;
      long lo;
      long w = width_along(c, a, b, lo);
      if (best < 0 || w < best) {
        best = w;
        dirs.clear();
      }
      if (w == best) dirs.push_back({a, b});
    }
  for (auto [a, b] : dirs) {
    // Complementary functional (p, q) with a q - b p = 1.
    long x, y;
    ext_gcd(a, -b, x, y);
    long q = x, p = y;
    if (a * q - b * p != 1) {
      q = -q;
      p = -p;
    }
    long lo;
    width_along(c, a, b, lo);
    std::vector<std::vector<std::pair<long, size_t>>> rows(best + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      long lvl = a * c[i][0] + b * c[i][1] - lo;
      long pos = p * c[i][0] + q * c[i][1];
      rows[lvl].push_back({pos, i});
    }
    if (best == 1) {
      auto row_poly = [&](const std::vector<std::pair<long, size_t>>& row) {
        long mn = row[0].first, mx = row[0].first;
        for (auto& [ps, i] : row) {
          mn = std::min(mn, ps);
          mx = std::max(mx, ps);
        }
        SymU u(mx - mn + 1, SymPoly(vars));
        for (auto& [ps, i] : row) u[ps - mn] = var(i);
        return u;
      };
      SymU h1 = row_poly(rows[0]), h2 = row_poly(rows[1]);
      if (h1.size() < h2.size()) std::swap(h1, h2);
      return make_disc(pts, sym_resultant(h2, h1, vars), false, "trapezoid");
    }
    if (best == 2) {
      if (rows[0].size() != 1 && rows[2].size() == 1) std::swap(rows[0], rows[2]);
      if (rows[0].size() != 1) continue;
      long mn = rows[0][0].first;
      for (auto& r : rows)
        for (auto& [ps, i] : r) mn = std::min(mn, ps);
      long mx = mn;
      for (auto& r : rows)
        for (auto& [ps, i] : r) mx = std::max(mx, ps);
      auto dense = [&](const std::vector<std::pair<long, size_t>>& row) {
        SymU u(mx - mn + 1, SymPoly(vars));
        for (auto& [ps, i] : row) u[ps - mn] = var(i);
        return u;
      };
      SymU P2 = dense(rows[0]), P1 = dense(rows[1]), P0 = dense(rows[2]);
      SymU D(2 * (mx - mn) + 1, SymPoly(vars));
      for (size_t i = 0; i < P2.size(); ++i)
        for (size_t j = 0; j < P0.size(); ++j) {
          if (P2[i].is_zero() || P0[j].is_zero()) continue;
          D[i + j] += (P2[i] * P0[j]).scaled(Rational(4));
        }
      for (size_t i = 0; i < P1.size(); ++i)
        for (size_t j = 0; j < P1.size(); ++j) {
          if (P1[i].is_zero() || P1[j].is_zero()) continue;
          D[i + j] -= P1[i] * P1[j];
        }
      return make_disc(pts, sym_udisc(D, vars), false, "apex");
    }
  }
  throw Unsupported("discriminant of a cell of lattice width " + std::to_string(best) +
                    " without a one-point extreme row");
}

Discriminant trapezoid_discriminant(const MarkedCell& cell) {
  auto d = configuration_discriminant(cell.marked);
  if (d.shape != "trapezoid" && d.shape != "pyramid")
    throw Unsupported("cell is not of lattice width one");
  return d;
}

Discriminant edge_discriminant(const std::vector<Exponent>& edge_points) {
  auto pts = sorted_unique(edge_points);
  if (pts.size() >= 2 && !collinear(pts)) throw DomainError("edge points are not collinear");
  return configuration_discriminant(pts);
}

SymPoly linear_base_resultant(int n) {
  if (n < 1) throw DomainError("linear_base_resultant needs n >= 1");
  std::vector<std::string> vars;
  for (int k = 0; k <= n; ++k) vars.push_back("a" + std::to_string(k));
  vars.push_back("b0");
  vars.push_back("b1");
  SymPoly r(vars);
  for (int k = 0; k <= n; ++k) {
    Exponent e(vars.size(), 0);
    e[k] = 1;
    e[n + 1] = k;
    e[n + 2] = n - k;
    r.add_term(e, Rational(k % 2 ? -1 : 1));
  }
  return r;
}

bool is_defective(const std::vector<Exponent>& marked) {
  auto pts = sorted_unique(marked);
  auto red = reduce_affine(pts);
  if (red.rank == 0) return true;
  if (red.rank == 1) return pts.size() <= 2;
  for (size_t skip = 0; skip < pts.size(); ++skip) {
    std::vector<Exponent> rest;
    for (size_t i = 0; i < pts.size(); ++i)
      if (i != skip) rest.push_back(pts[i]);
    if (collinear(rest)) return true;
  }
  return false;
}

FieldElem evaluate_at_init(const Discriminant& d, const PlanePoly& g) {
  std::vector<FieldElem> vals;
  for (auto& p : d.points) {
    Puiseux c = g.coefficient(p);
    vals.push_back(c.is_zero() ? FieldElem(0) : c.init());
  }
  return sym_eval(d.poly, vals);
}

bool vanishes_at_init(const Discriminant& d, const PlanePoly& g) {
  return evaluate_at_init(d, g).is_zero();
}

SymPoly substitute(const Discriminant& d, const std::vector<SymPoly>& values,
                   const std::vector<std::string>& target) {
  return d.poly.compose(values, target);
}

std::vector<LocalDiscriminant> local_discriminants(const PlanePoly& g, bool edges) {
  auto sub = subdivision_of(g);
  std::vector<LocalDiscriminant> out;
  auto fill = [&](LocalDiscriminant& ld) {
    try {
      ld.disc = configuration_discriminant(ld.points);
      ld.vanishes = !ld.disc->defective && vanishes_at_init(*ld.disc, g);
    } catch (const Unsupported& e) {
      ld.unsupported = e.what();
    }
  };
  for (size_t i = 0; i < sub.cells.size(); ++i) {
    LocalDiscriminant ld;
    ld.index = (int)i;
    ld.points = sub.cells[i].marked;
    fill(ld);
    out.push_back(std::move(ld));
  }
  if (edges)
    for (size_t i = 0; i < sub.edges.size(); ++i) {
      LocalDiscriminant ld;
      ld.index = (int)i;
      ld.is_edge = true;
      ld.points = sub.edges[i].marked;
      fill(ld);
      out.push_back(std::move(ld));
    }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Cubic invariants

namespace {

// Exponent triple of the ternary monomial attached to point k.
std::array<int, 3> triple(const Exponent& p) { return {p[0], p[1], 3 - p[0] - p[1]}; }

std::vector<Exponent> invariant_monomials(const std::vector<Exponent>& pts, int deg) {
  int w = deg;  // each of x, y, z appears deg * 3 / 3 times
  std::vector<Exponent> out;
  Exponent cur(pts.size(), 0);
  std::function<void(size_t, int, int, int)> rec = [&](size_t k, int left, int wx, int wy) {
    if (wx > w || wy > w) return;
    if (k == pts.size()) {
      if (left == 0 && wx == w && wy == w) out.push_back(cur);
      return;
    }
    for (int m = left; m >= 0; --m) {
      cur[k] = m;
      rec(k + 1, left - m, wx + m * pts[k][0], wy + m * pts[k][1]);
    }
    cur[k] = 0;
  };
  rec(0, deg, 0, 0);
  return out;
}

// Nullspace of the sl3-derivations on the span of the weight-balanced monomials.
SymPoly solve_invariant(const std::vector<Exponent>& pts, const std::vector<std::string>& vars,
                        int deg) {
  auto monos = invariant_monomials(pts, deg);
  std::map<Exponent, int> col;
  for (size_t i = 0; i < monos.size(); ++i) col[monos[i]] = (int)i;
  std::map<std::array<int, 3>, size_t> idx;
  for (size_t k = 0; k < pts.size(); ++k) idx[triple(pts[k])] = k;
  // Rows are indexed by (derivation, image monomial).
  std::map<std::pair<int, Exponent>, std::map<int, Rational>> rows;
  int gens[4][2] = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
  for (int g = 0; g < 4; ++g) {
    int a = gens[g][0], b = gens[g][1];
    for (size_t mi = 0; mi < monos.size(); ++mi) {
      const auto& m = monos[mi];
      for (size_t k = 0; k < pts.size(); ++k) {
        if (m[k] == 0) continue;
        auto n = triple(pts[k]);
        // D = sum (n_b + 1) c_{n + e_b - e_a} d/dc_n over n with n_a >= 1
        if (n[a] < 1) continue;
        auto src = n;
        src[b] += 1;
        src[a] -= 1;
        size_t ks = idx.at(src);
        Exponent img = m;
        img[k] -= 1;
        img[ks] += 1;
        Rational coef = Rational(m[k]) * Rational(n[b] + 1);
        auto& row = rows[{g, img}];
        row[(int)mi] += coef;
      }
    }
  }
  std::map<int, std::map<int, Rational>> pivots;
  for (auto& [key, row0] : rows) {
    std::map<int, Rational> row;
    for (auto& [c, v] : row0)
      if (sgn(v) != 0) row[c] = v;
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) break;
      Rational f = lead->second;
      for (auto& [c, v] : it->second) {
        Rational nv = row[c] - f * v;
        if (sgn(nv) == 0) row.erase(c); else row[c] = nv;
      }
    }
    if (row.empty()) continue;
    Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    pivots[row.begin()->first] = std::move(row);
  }
  std::vector<int> free;
  for (int i = 0; i < (int)monos.size(); ++i)
    if (!pivots.count(i)) free.push_back(i);
  if (free.size() != 1) throw DomainError("invariant space has unexpected dimension");
  std::vector<Rational> x(monos.size());
  x[free[0]] = 1;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational s = 0;
    for (auto& [c, v] : it->second)
      if (c != it->first) s -= v * x[c];
    x[it->first] = s;
  }
  SymPoly p(vars);
  for (size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], x[i]);
  return normalize(p);
}

}  // namespace

const CubicInvariants& cubic_invariants() {
  static const CubicInvariants inv = [] {
    CubicInvariants r;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) r.points.push_back({i, j});
    std::sort(r.points.begin(), r.points.end());
    r.vars = names_of(r.points);
    r.S = solve_invariant(r.points, r.vars, 4);
    r.T = solve_invariant(r.points, r.vars, 6);
    r.A = r.S.pow(3);
    // Nodal cubic y^2 z - x^3 - x^2 z.
    std::vector<FieldElem> node(r.points.size(), FieldElem(0));
    for (size_t k = 0; k < r.points.size(); ++k) {
      const auto& p = r.points[k];
      if (p == Exponent{0, 2}) node[k] = 1;
      if (p == Exponent{3, 0} || p == Exponent{2, 0}) node[k] = -1;
    }
    Rational s0 = sym_eval(r.S, node).rational_part();
    Rational t0 = sym_eval(r.T, node).rational_part();
    if (sgn(s0) == 0) throw DomainError("invariant S vanishes on the nodal cubic");
    r.a = s0 * s0 * s0;
    r.b = -t0 * t0;
    SymPoly d = r.T.pow(2).scaled(r.a) + r.A.scaled(r.b);
    SymPoly nd = normalize(d);
    r.scale = nd.display_order().front().second / d.coefficient(nd.display_order().front().first);
    r.Delta = nd;
    return r;
  }();
  return inv;
}

SymPoly initial_part(const SymPoly& p, const std::vector<std::optional<Rational>>& vals) {
  std::optional<Rational> best;
  for (auto& [e, c] : p.terms()) {
    Rational s = 0;
    bool ok = true;
    for (size_t i = 0; i < e.size() && ok; ++i) {
      if (e[i] == 0) continue;
      if (!vals[i]) ok = false; else s += *vals[i] * e[i];
    }
    if (ok && (!best || s < *best)) best = s;
  }
  SymPoly r(p.vars());
  if (!best) return r;
  for (auto& [e, c] : p.terms()) {
    Rational s = 0;
    bool ok = true;
    for (size_t i = 0; i < e.size() && ok; ++i) {
      if (e[i] == 0) continue;
      if (!vals[i]) ok = false; else s += *vals[i] * e[i];
    }
    if (ok && s == *best) r.add_term(e, c);
  }
  return r;
}

JValuation cubic_j_valuation(const PlanePoly& g) {
  if (g.nvars() != 2) throw DomainError("a cubic needs two variables");
  if (g.total_degree() > 3) throw DomainError("not a cubic: total degree exceeds 3");
  for (auto& [e, c] : g.terms())
    if (e[0] < 0 || e[1] < 0) throw DomainError("not a polynomial");
  const auto& inv = cubic_invariants();
  std::vector<Puiseux> coef;
  std::vector<std::optional<Rational>> vals;
  for (auto& p : inv.points) {
    Puiseux c = g.coefficient(p);
    coef.push_back(c);
    vals.push_back(c.val());
  }
  Puiseux S = sym_eval(inv.S, coef), T = sym_eval(inv.T, coef);
  Puiseux D = (T * T).scaled(FieldElem(inv.a * inv.scale)) +
              (S * S * S).scaled(FieldElem(inv.b * inv.scale));
  if (D.is_zero()) throw DomainError("singular cubic");
  JValuation r;
  r.val_Delta = D.valuation();
  SymPoly ip = initial_part(inv.Delta, vals);
  if (ip.is_zero()) throw DomainError("singular cubic");
  {
    const auto& e = ip.terms().begin()->first;
    Rational s = 0;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) s += *vals[i] * e[i];
    r.generic_val_Delta = s;
  }
  r.generic = r.val_Delta == r.generic_val_Delta;
  if (S.is_zero()) {
    r.status = "A vanishes";
    return r;
  }
  r.status = "ok";
  r.val_A = 3 * S.valuation();
  r.val = r.val_A - r.val_Delta;
  return r;
}

// ---------------------------------------------------------------------------------------------
// Factorization bookkeeping

namespace {

std::vector<Exponent> points_on_line(const std::vector<Exponent>& A, const Exponent& a,
                                     const Exponent& b) {
  std::vector<Exponent> out;
  for (auto& p : A) {
    long cr = (long)(b[0] - a[0]) * (p[1] - a[1]) - (long)(b[1] - a[1]) * (p[0] - a[0]);
    if (cr == 0) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool check_lattice_identity(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A) {
  Integer lhs = lattice_index(fcap) * subdiagram_volume(fcap, A);
  Rational rhs = Rational(lattice_index(A) * lattice_index(fcap, A)) * subdiagram_volume_gkz(fcap, A);
  return Rational(lhs) == rhs;
}

// Faces of conv(A) as their point sets: edges, then vertices.
std::vector<std::vector<Exponent>> faces(const std::vector<Exponent>& A) {
  std::vector<std::vector<Exponent>> out;
  auto hull = convex_hull(A);
  for (size_t i = 0; i < hull.size(); ++i)
    out.push_back(points_on_line(A, hull[i], hull[(i + 1) % hull.size()]));
  for (auto& v : hull) out.push_back({v});
  return out;
}

bool is_nonneg_integer(const Rational& q) { return q.get_den() == 1 && sgn(q) >= 0; }

Integer pow_int(const Integer& base, const Rational& e) {
  if (e.get_den() != 1 || sgn(e) < 0) throw DomainError("exponent must be a nonnegative integer");
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_num().get_ui());
  return r;
}

}  // namespace

FactorizationReport factorization_check(const NewtonSubdivision& sub) {
  if (sub.degenerate) throw DomainError("factorization check needs a two-dimensional configuration");
  FactorizationReport r;
  const auto& A = sub.support;
  r.index_A = lattice_index(A);
  auto identity = [&](const std::vector<Exponent>& F, const std::vector<Exponent>& X, const std::string& where) {
    ++r.identity_checks;
    if (!check_lattice_identity(F, X)) {
      r.identity_ok = false;
      r.failures.push_back("lattice-index identity fails on a face of " + where);
    }
  };
  for (auto& F : faces(A)) identity(F, A, "A");
  Rational num = 1, den = 1;
  for (size_t j = 0; j < sub.cells.size(); ++j) {
    const auto& cell = sub.cells[j];
    CellFactor cf;
    cf.cell = (int)j;
    cf.points = cell.marked;
    cf.index = lattice_index(cell.marked);
    if (cf.index % r.index_A != 0) {
      r.exponents_ok = false;
      r.failures.push_back("i(A) does not divide i(A_j)");
    }
    cf.exponent = cf.index / r.index_A;
    cf.volume = twice_area(cell.vertices);
    for (auto& F : faces(cell.marked)) identity(F, cell.marked, "a cell");
    num *= Rational(pow_int(cf.exponent, cf.volume));
    r.cells.push_back(std::move(cf));
  }
  for (size_t i = 0; i < sub.edges.size(); ++i) {
    const auto& se = sub.edges[i];
    EdgeFactor ef;
    ef.edge = (int)i;
    ef.points = se.marked;
    ef.boundary = se.boundary();
    ef.index = lattice_index(se.marked);
    ef.length = lattice_length_int(se.a, se.b);
    ef.u_cell = subdiagram_volume(se.marked, sub.cells[se.cell].marked);
    if (ef.boundary) {
      auto FA = points_on_line(A, se.a, se.b);
      ef.u_other = subdiagram_volume(FA, A);
      ef.exponent = Rational(ef.index * (ef.u_cell - ef.u_other)) / Rational(r.index_A);
      Integer iF = lattice_index(FA);
      if (ef.index % iF != 0) {
        r.exponents_ok = false;
        r.failures.push_back("edge lattice is not a sublattice of the face lattice");
      }
      Integer idx = ef.index / iF;
      Rational e = ef.u_other * ef.length;
      if (e.get_den() != 1) r.failures.push_back("non-integral edge volume");
      den *= Rational(pow_int(idx, e));
    } else {
      ef.u_other = subdiagram_volume(se.marked, sub.cells[se.other].marked);
      ef.exponent = Rational(ef.index * (ef.u_cell + ef.u_other)) / Rational(r.index_A);
    }
    if (!is_nonneg_integer(ef.exponent)) {
      r.exponents_ok = false;
      r.failures.push_back("edge exponent " + ef.exponent.get_str() + " is not a nonnegative integer");
    }
    r.edges.push_back(std::move(ef));
  }
  r.R = num / den;
  if (r.R.get_den() == 1) {
    Integer R = abs(r.R.get_num());
    Integer root;
    unsigned long k = r.index_A.get_ui();
    if (mpz_root(root.get_mpz_t(), R.get_mpz_t(), k) != 0) r.lambda = root;
  }
  if (!r.lambda) r.failures.push_back("lambda is not integral");
  return r;
}

// ---------------------------------------------------------------------------------------------

namespace {

Rational predicted_degree_1d(const std::vector<Exponent>& pts) {
  // Positions along the line in lattice steps.
  long dx = pts.back()[0] - pts.front()[0], dy = pts.back()[1] - pts.front()[1];
  long step = std::gcd(std::labs(dx), std::labs(dy));
  std::vector<long> pos;
  for (auto& p : pts) {
    long d = std::labs(p[0] - pts.front()[0]) + std::labs(p[1] - pts.front()[1]);
    long unit = std::labs(dx) + std::labs(dy);
    pos.push_back(d * step / unit);
  }
  std::sort(pos.begin(), pos.end());
  long len = pos.back() - pos.front();
  long ua = pos[1] - pos[0], ub = pos.back() - pos[pos.size() - 2];
  return Rational(2 * len - ua - ub) / Rational(lattice_index(pts));
}

}  // namespace

Rational predicted_degree(const std::vector<Exponent>& marked) {
  auto pts = sorted_unique(marked);
  if (pts.size() <= 1) return 0;
  if (collinear(pts)) return predicted_degree_1d(pts);
  Rational total = 3 * twice_area(convex_hull(pts));
  for (auto& F : faces(pts)) {
    Integer u = subdiagram_volume(F, pts);
    if (F.size() == 1) {
      total -= u;
    } else {
      total -= Rational(lattice_index(F) * u) * predicted_degree_1d(F);
    }
  }
  return total / Rational(lattice_index(pts));
}

}  // namespace tropmod
