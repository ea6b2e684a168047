#include "tropmod/modify.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tropmod {

namespace {

Rational height(const Puiseux& c) { return -c.valuation(); }

std::string upper(std::string s) {
  for (auto& ch : s) ch = (char)std::toupper((unsigned char)ch);
  return s;
}

// A piece of a weighted complex on a rational line: base + s * dir for s in [lo, hi].
using LineKey = std::pair<IVec, QPoint>;
struct Piece {
  std::optional<Rational> lo, hi;
  long mult = 0;
  int chart = -1;
};
using LineMap = std::map<LineKey, std::vector<Piece>>;

// Segment from p along the primitive direction d, for parameter length len (nullopt: ray).
void add_piece(LineMap& m, const QPoint& p, IVec d, const std::optional<Rational>& len, long mult,
               int chart) {
  size_t k0 = 0;
  while (k0 < d.size() && d[k0] == 0) ++k0;
  if (k0 == d.size()) throw DomainError("piece with zero direction");
  bool flip = d[k0] < 0;
  if (flip)
    for (auto& v : d) v = -v;
  Rational t0 = p[k0] / Rational(d[k0]);
  QPoint base(p.size());
  for (size_t k = 0; k < p.size(); ++k) base[k] = p[k] - t0 * d[k];
  Piece pc;
  pc.mult = mult;
  pc.chart = chart;
  if (!flip) {
    pc.lo = t0;
    if (len) pc.hi = Rational(t0 + *len);
  } else {
    pc.hi = t0;
    if (len) pc.lo = Rational(t0 - *len);
  }
  m[{d, base}].push_back(pc);
}

bool le_lo(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  // a <= b as lower ends (nullopt = -inf)
  if (!a) return true;
  if (!b) return false;
  return *a <= *b;
}
bool ge_hi(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return true;
  if (!b) return false;
  return *a >= *b;
}

struct Elementary {
  std::optional<Rational> lo, hi;
};

std::vector<Elementary> elementary_intervals(const std::vector<Piece>& ps) {
  std::set<Rational> ends;
  bool neg = false, pos = false;
  for (auto& p : ps) {
    if (p.lo) ends.insert(*p.lo); else neg = true;
    if (p.hi) ends.insert(*p.hi); else pos = true;
  }
  std::vector<Elementary> out;
  std::vector<Rational> e(ends.begin(), ends.end());
  if (e.empty()) {
    out.push_back({std::nullopt, std::nullopt});
    return out;
  }
  if (neg) out.push_back({std::nullopt, e.front()});
  for (size_t i = 0; i + 1 < e.size(); ++i) out.push_back({e[i], e[i + 1]});
  if (pos) out.push_back({e.back(), std::nullopt});
  return out;
}

bool covers(const Piece& p, const Elementary& I) { return le_lo(p.lo, I.lo) && ge_hi(p.hi, I.hi); }

QPoint at(const LineKey& key, const Rational& s) {
  QPoint q = key.second;
  for (size_t k = 0; k < q.size(); ++k) q[k] += s * key.first[k];
  return q;
}

// Weighted complex with multiplicities per elementary interval, adjacent equal pieces merged.
using Canonical = std::map<LineKey, std::vector<std::tuple<std::optional<Rational>, std::optional<Rational>, long>>>;

Canonical canonicalize(const LineMap& m) {
  Canonical out;
  for (auto& [key, ps] : m) {
    std::vector<std::tuple<std::optional<Rational>, std::optional<Rational>, long>> row;
    for (auto& I : elementary_intervals(ps)) {
      long w = 0;
      for (auto& p : ps)
        if (covers(p, I)) w += p.mult;
      if (w == 0) continue;
      if (!row.empty() && std::get<2>(row.back()) == w && std::get<1>(row.back()) && I.lo &&
          *std::get<1>(row.back()) == *I.lo) {
        std::get<1>(row.back()) = I.hi;
        continue;
      }
      row.emplace_back(I.lo, I.hi, w);
    }
    if (!row.empty()) out[key] = row;
  }
  return out;
}

LineMap pieces_of(const TropicalCurve& c) {
  LineMap m;
  for (auto& e : c.edges) {
    if (e.mult == 0) continue;
    std::optional<Rational> len;
    if (!e.is_ray()) len = e.length;
    add_piece(m, c.vertices[e.a].pos, e.dir, len, e.mult, -1);
  }
  return m;
}

// Builds a curve in R^n from elementary intervals with positive multiplicity, then removes
// two-valent vertices between collinear edges of equal multiplicity.
TropicalCurve assemble(const std::vector<std::tuple<LineKey, Elementary, long>>& parts, int dim,
                       const std::vector<std::string>& coords) {
  TropicalCurve c;
  c.dim = dim;
  c.coords = coords;
  std::map<QPoint, int> vid;
  auto vertex = [&](const QPoint& q) {
    auto it = vid.find(q);
    if (it != vid.end()) return it->second;
    int id = (int)c.vertices.size();
    CurveVertex v;
    v.pos = q;
    c.vertices.push_back(v);
    vid[q] = id;
    return id;
  };
  for (auto& [key, I, mult] : parts) {
    CurveEdge e;
    e.mult = mult;
    if (I.lo && I.hi) {
      e.a = vertex(at(key, *I.lo));
      e.b = vertex(at(key, *I.hi));
      e.dir = key.first;
      e.length = *I.hi - *I.lo;
      c.edges.push_back(e);
    } else if (I.lo) {
      e.a = vertex(at(key, *I.lo));
      e.dir = key.first;
      c.edges.push_back(e);
    } else if (I.hi) {
      e.a = vertex(at(key, *I.hi));
      e.dir = key.first;
      for (auto& v : e.dir) v = -v;
      c.edges.push_back(e);
    } else {
      int v0 = vertex(at(key, 0));
      e.a = v0;
      e.dir = key.first;
      c.edges.push_back(e);
      for (auto& v : e.dir) v = -v;
      c.edges.push_back(e);
    }
  }
  // Merge two-valent vertices.
  std::vector<bool> alive(c.edges.size(), true), valive(c.vertices.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> star(c.vertices.size());
    for (size_t k = 0; k < c.edges.size(); ++k) {
      if (!alive[k]) continue;
      star[c.edges[k].a].push_back((int)k);
      if (!c.edges[k].is_ray()) star[c.edges[k].b].push_back((int)k);
    }
    for (size_t v = 0; v < c.vertices.size() && !changed; ++v) {
      if (!valive[v] || star[v].size() != 2) continue;
      int e1 = star[v][0], e2 = star[v][1];
      if (e1 == e2) continue;
      IVec o1 = c.outgoing(e1, (int)v), o2 = c.outgoing(e2, (int)v);
      bool opposite = true;
      for (size_t k = 0; k < o1.size(); ++k)
        if (o1[k] != -o2[k]) opposite = false;
      if (!opposite || c.edges[e1].mult != c.edges[e2].mult) continue;
      auto far = [&](int e) {
        const auto& ed = c.edges[e];
        if (ed.is_ray()) return -1;
        return ed.a == (int)v ? ed.b : ed.a;
      };
      int a = far(e1), b = far(e2);
      if (a < 0 && b < 0) continue;
      if (a < 0) {
        std::swap(a, b);
        std::swap(e1, e2);
        std::swap(o1, o2);
      }
      CurveEdge ne;
      ne.mult = c.edges[e1].mult;
      ne.a = a;
      ne.dir = o2;  // from a through v
      if (b >= 0) {
        ne.b = b;
        ne.length = c.edges[e1].length + c.edges[e2].length;
      }
      alive[e1] = alive[e2] = false;
      valive[v] = false;
      c.edges.push_back(ne);
      alive.push_back(true);
      changed = true;
    }
  }
  TropicalCurve out;
  out.dim = dim;
  out.coords = coords;
  std::vector<int> remap(c.vertices.size(), -1);
  // Deterministic vertex order: lexicographic in position.
  std::vector<int> order;
  for (size_t v = 0; v < c.vertices.size(); ++v)
    if (valive[v]) order.push_back((int)v);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c.vertices[a].pos < c.vertices[b].pos; });
  for (int v : order) {
    remap[v] = (int)out.vertices.size();
    out.vertices.push_back(c.vertices[v]);
  }
  for (size_t k = 0; k < c.edges.size(); ++k) {
    if (!alive[k]) continue;
    CurveEdge e = c.edges[k];
    e.a = remap[e.a];
    if (!e.is_ray()) e.b = remap[e.b];
    if (!e.is_ray() && e.b < e.a) {
      std::swap(e.a, e.b);
      for (auto& d : e.dir) d = -d;
    }
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const CurveEdge& x, const CurveEdge& y) {
    return std::tie(x.a, x.b, x.dir, x.mult) < std::tie(y.a, y.b, y.dir, y.mult);
  });
  return out;
}

// Tropical value of u_k = alpha u_i + beta u_j + gamma along a planar segment p + s d.
struct FormTerm {
  Rational v0, slope;
  int which;  // 0 alpha, 1 beta, 2 gamma
};

std::vector<FormTerm> form_terms(const std::array<Puiseux, 3>& f, const QPoint& p, const IVec& d) {
  std::vector<FormTerm> t;
  if (!f[0].is_zero()) t.push_back({height(f[0]) + p[0], Rational(d[0]), 0});
  if (!f[1].is_zero()) t.push_back({height(f[1]) + p[1], Rational(d[1]), 1});
  if (!f[2].is_zero()) t.push_back({height(f[2]), Rational(0), 2});
  return t;
}

Rational form_max(const std::vector<FormTerm>& t, const Rational& s) {
  Rational best = t[0].v0 + t[0].slope * s;
  for (auto& x : t) best = std::max(best, Rational(x.v0 + x.slope * s));
  return best;
}

// Initial form of the linear form u_k in the chart variables at a point w.
std::optional<ResiduePoly> tie_form(const std::array<Puiseux, 3>& f, const QPoint& w,
                                    const std::vector<std::string>& vars) {
  std::vector<std::pair<Rational, int>> vals;
  if (!f[0].is_zero()) vals.push_back({height(f[0]) + w[0], 0});
  if (!f[1].is_zero()) vals.push_back({height(f[1]) + w[1], 1});
  if (!f[2].is_zero()) vals.push_back({height(f[2]), 2});
  Rational best = vals[0].first;
  for (auto& v : vals) best = std::max(best, v.first);
  ResiduePoly r(vars);
  int count = 0;
  for (auto& [v, which] : vals) {
    if (v != best) continue;
    ++count;
    Exponent e{which == 0 ? 1 : 0, which == 1 ? 1 : 0};
    r.add_term(e, f[which].init());
  }
  if (count < 2) return std::nullopt;
  FieldElem lead = r.terms().rbegin()->second;
  return r.scaled(lead.inverse());
}

int divide_out(ResiduePoly& h, const ResiduePoly& b) {
  int k = 0;
  while (auto q = exact_divide(h, b)) {
    h = *q;
    ++k;
  }
  return k;
}

QPoint planar(const QPoint& W, int i, int j) { return {W[i], W[j]}; }

}  // namespace

Puiseux Lifting::shift() const { return A * Puiseux::t_power(-level); }

std::string Lifting::line_string() const {
  switch (type) {
    case LineType::Vertical: return "X=" + to_string(level);
    case LineType::Horizontal: return "Y=" + to_string(level);
    case LineType::Skew: return "X-Y=" + to_string(level);
  }
  return "";
}

std::string Lifting::str(const std::string& xvar, const std::string& yvar) const {
  std::vector<std::string> vars{xvar, yvar};
  PlanePoly p(vars);
  if (type == LineType::Vertical) {
    p = PlanePoly::variable(vars, 0) + PlanePoly::constant(vars, shift());
  } else if (type == LineType::Horizontal) {
    p = PlanePoly::variable(vars, 1) + PlanePoly::constant(vars, shift());
  } else {
    p = PlanePoly::variable(vars, 0) + PlanePoly::variable(vars, 1).scaled(shift());
  }
  return to_string(p);
}

std::string Coordinate::str(const std::vector<std::string>& base) const {
  PlanePoly p = PlanePoly::variable(base, 0).scaled(a) + PlanePoly::variable(base, 1).scaled(b) +
                PlanePoly::constant(base, c);
  return to_string(p);
}

Embedding Embedding::plane(const PlanePoly& g) {
  if (g.nvars() != 2) throw DomainError("plane curves need exactly two variables");
  Embedding e;
  e.g = g;
  e.coords.push_back({g.vars()[0], Puiseux(1), Puiseux(), Puiseux()});
  e.coords.push_back({g.vars()[1], Puiseux(), Puiseux(1), Puiseux()});
  return e;
}

int Embedding::index(const std::string& name) const {
  for (size_t k = 0; k < coords.size(); ++k)
    if (coords[k].name == name) return (int)k;
  return -1;
}

std::vector<std::string> Embedding::names() const {
  std::vector<std::string> n;
  for (auto& c : coords) n.push_back(c.name);
  return n;
}

Coordinate lifted_coordinate(const Embedding& e, int i, int j, const Lifting& f) {
  if (i < 0 || j < 0 || i >= (int)e.dim() || j >= (int)e.dim() || i == j)
    throw DomainError("lifting: invalid coordinate pair");
  if (e.index(f.var) >= 0) throw DomainError("variable name already in use: " + f.var);
  if (f.A.is_zero() || sgn(f.A.valuation()) != 0) throw DomainError("lifting: val(A) must be 0");
  const auto& u = e.coords[i];
  const auto& v = e.coords[j];
  Puiseux s = f.shift();
  Coordinate c;
  c.name = f.var;
  switch (f.type) {
    case LineType::Vertical:
      c.a = u.a;
      c.b = u.b;
      c.c = u.c + s;
      break;
    case LineType::Horizontal:
      c.a = v.a;
      c.b = v.b;
      c.c = v.c + s;
      break;
    case LineType::Skew:
      c.a = u.a + s * v.a;
      c.b = u.b + s * v.b;
      c.c = u.c + s * v.c;
      break;
  }
  return c;
}

std::optional<Chart> make_chart(const Embedding& e, int i, int j) {
  const auto& U = e.coords[i];
  const auto& V = e.coords[j];
  Puiseux det = U.a * V.b - V.a * U.b;
  if (det.is_zero() || !det.is_single_term()) return std::nullopt;
  std::vector<std::string> vars{U.name, V.name};
  Puiseux X1 = V.b.divided_by(det), X2 = (-U.b).divided_by(det);
  Puiseux X0 = (U.b * V.c - V.b * U.c).divided_by(det);
  Puiseux Y1 = (-V.a).divided_by(det), Y2 = U.a.divided_by(det);
  Puiseux Y0 = (V.a * U.c - U.a * V.c).divided_by(det);
  auto affine = [&](const Puiseux& c1, const Puiseux& c2, const Puiseux& c0) {
    return PlanePoly::variable(vars, 0).scaled(c1) + PlanePoly::variable(vars, 1).scaled(c2) +
           PlanePoly::constant(vars, c0);
  };
  Chart ch;
  ch.i = i;
  ch.j = j;
  ch.inverse = AffineMap{vars, {affine(X1, X2, X0), affine(Y1, Y2, Y0)}};
  ch.g = e.g.compose(ch.inverse.images, vars);
  for (int k = 0; k < (int)e.dim(); ++k) {
    if (k == i || k == j) continue;
    const auto& W = e.coords[k];
    ch.others.push_back(k);
    ch.forms.push_back({W.a * X1 + W.b * Y1, W.a * X2 + W.b * Y2, W.c + W.a * X0 + W.b * Y0});
  }
  return ch;
}

TropicalCurve project(const TropicalCurve& c, int i, int j) {
  LineMap m;
  for (auto& e : c.edges) {
    long di = e.dir[i], dj = e.dir[j];
    if (di == 0 && dj == 0) continue;
    long g = std::gcd(std::labs(di), std::labs(dj));
    std::optional<Rational> len;
    if (!e.is_ray()) len = Rational(e.length * g);
    add_piece(m, planar(c.vertices[e.a].pos, i, j), IVec{di / g, dj / g}, len, e.mult * g, -1);
  }
  std::vector<std::tuple<LineKey, Elementary, long>> parts;
  for (auto& [key, row] : canonicalize(m))
    for (auto& [lo, hi, w] : row) parts.push_back({key, Elementary{lo, hi}, w});
  std::vector<std::string> names{c.coords.size() > (size_t)i ? c.coords[i] : "U",
                                 c.coords.size() > (size_t)j ? c.coords[j] : "V"};
  return assemble(parts, 2, names);
}

bool same_weighted_complex(const TropicalCurve& a, const TropicalCurve& b) {
  return canonicalize(pieces_of(a)) == canonicalize(pieces_of(b));
}

GluedCurve glue(const Embedding& e) {
  GluedCurve out;
  int n = (int)e.dim();
  std::vector<std::string> names;
  for (auto& c : e.coords) names.push_back(upper(c.name));
  LineMap m;
  std::vector<Chart> charts;
  std::vector<TropicalCurve> planar_curves;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto ch = make_chart(e, i, j);
      if (!ch) continue;
      int cid = (int)charts.size();
      out.charts.push_back({i, j});
      TropicalCurve T = tropicalize(ch->g);
      for (auto& ed : T.edges) {
        const QPoint& p = T.vertices[ed.a].pos;
        const IVec& d = ed.dir;
        std::vector<std::vector<FormTerm>> terms;
        std::set<Rational> cuts;
        for (auto& f : ch->forms) {
          terms.push_back(form_terms(f, p, d));
          auto& t = terms.back();
          for (size_t a = 0; a < t.size(); ++a)
            for (size_t b = a + 1; b < t.size(); ++b) {
              if (t[a].slope == t[b].slope) continue;
              Rational s = (t[b].v0 - t[a].v0) / (t[a].slope - t[b].slope);
              if (sgn(s) > 0 && (ed.is_ray() || s < ed.length)) cuts.insert(s);
            }
        }
        std::vector<Rational> pts{Rational(0)};
        pts.insert(pts.end(), cuts.begin(), cuts.end());
        if (!ed.is_ray()) pts.push_back(ed.length);
        size_t pieces = ed.is_ray() ? pts.size() : pts.size() - 1;
        for (size_t s = 0; s < pieces; ++s) {
          Rational sa = pts[s];
          bool last_ray = ed.is_ray() && s + 1 == pts.size();
          Rational mid = last_ray ? Rational(sa + 1) : Rational((sa + pts[s + 1]) / 2);
          QPoint wm{p[0] + mid * d[0], p[1] + mid * d[1]};
          QPoint W(n);
          IVec D(n);
          W[i] = p[0] + sa * d[0];
          W[j] = p[1] + sa * d[1];
          D[i] = d[0];
          D[j] = d[1];
          ResiduePoly h = init_form(ch->g, wm);
          std::vector<ResiduePoly> ties;
          for (size_t k = 0; k < ch->others.size(); ++k) {
            const auto& t = terms[k];
            W[ch->others[k]] = form_max(t, sa);
            Rational top = form_max(t, mid);
            for (auto& x : t)
              if (x.v0 + x.slope * mid == top) D[ch->others[k]] = x.slope.get_num().get_si();
            if (auto b = tie_form(ch->forms[k], wm, ch->g.vars())) {
              if (std::find(ties.begin(), ties.end(), *b) == ties.end()) ties.push_back(*b);
            }
          }
          long mult = ed.mult;
          for (auto& b : ties) mult -= divide_out(h, b);
          if (mult < 0) {
            out.consistent = false;
            out.failures.push_back("negative multiplicity in chart (" + e.coords[i].name + "," +
                                   e.coords[j].name + ")");
            mult = 0;
          }
          std::optional<Rational> len;
          if (!last_ray) len = Rational(pts[s + 1] - sa);
          add_piece(m, W, D, len, mult, cid);
        }
      }
      charts.push_back(*ch);
      planar_curves.push_back(std::move(T));
    }
  if (charts.empty()) throw DomainError("no valid chart for the embedding");

  std::vector<std::tuple<LineKey, Elementary, long>> parts;
  for (auto& [key, ps] : m) {
    for (auto& I : elementary_intervals(ps)) {
      std::optional<long> w;
      for (auto& p : ps) {
        if (!covers(p, I)) continue;
        if (!w) {
          w = p.mult;
        } else if (*w != p.mult) {
          out.consistent = false;
          out.failures.push_back("charts disagree on a multiplicity");
          *w = std::max(*w, p.mult);
        }
      }
      if (w && *w > 0) parts.push_back({key, I, *w});
    }
  }
  out.curve = assemble(parts, n, names);
  out.balanced = check_balancing(out.curve).ok;
  if (!out.balanced) out.failures.push_back("glued curve is not balanced");
  out.pushforward_ok = true;
  for (size_t c = 0; c < charts.size(); ++c) {
    TropicalCurve pf = project(out.curve, charts[c].i, charts[c].j);
    if (!same_weighted_complex(pf, planar_curves[c])) {
      out.pushforward_ok = false;
      out.failures.push_back("push-forward to (" + e.coords[charts[c].i].name + "," +
                             e.coords[charts[c].j].name + ") differs from the chart curve");
    }
  }
  auto cycles = find_cycles(out.curve);
  if (cycles.size() == 1) out.cycle = cycles[0];
  return out;
}

std::optional<LocalForm> local_form(const Embedding& e, const GluedCurve& glued, int vertex) {
  const auto& c = glued.curve;
  const QPoint& W = c.vertices[vertex].pos;
  auto star = c.star(vertex);
  for (auto [i, j] : glued.charts) {
    bool contracted = false;
    for (int ed : star) {
      IVec o = c.outgoing(ed, vertex);
      if (o[i] == 0 && o[j] == 0) contracted = true;
    }
    if (contracted) continue;
    auto ch = make_chart(e, i, j);
    QPoint w = planar(W, i, j);
    bool visible = true;
    std::vector<ResiduePoly> ties;
    for (size_t k = 0; k < ch->others.size(); ++k) {
      auto t = form_terms(ch->forms[k], w, IVec{0, 0});
      if (form_max(t, 0) != W[ch->others[k]]) visible = false;
      if (auto b = tie_form(ch->forms[k], w, ch->g.vars()))
        if (std::find(ties.begin(), ties.end(), *b) == ties.end()) ties.push_back(*b);
    }
    if (!visible) continue;
    LocalForm lf;
    lf.i = i;
    lf.j = j;
    lf.h = init_form(ch->g, w);
    for (auto& b : ties) divide_out(lf.h, b);
    return lf;
  }
  return std::nullopt;
}

namespace {

struct Interval {
  std::optional<Rational> lo, hi;
};

// Parameters s with base + s * dir on the planar curve, as a union of closed intervals.
std::vector<Interval> line_intersection(const TropicalCurve& c, const QPoint& base, const IVec& dir) {
  std::vector<Interval> raw;
  auto cross = [](const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
    return Rational(a0 * b1 - a1 * b0);
  };
  for (auto& e : c.edges) {
    const QPoint& p = c.vertices[e.a].pos;
    Rational d0 = e.dir[0], d1 = e.dir[1], e0 = dir[0], e1 = dir[1];
    Rational q0 = p[0] - base[0], q1 = p[1] - base[1];
    Rational den = cross(e0, e1, d0, d1);
    if (sgn(den) == 0) {
      if (sgn(cross(q0, q1, e0, e1)) != 0) continue;
      // Collinear: parameters of the endpoints along dir.
      Rational sa = sgn(e0) != 0 ? Rational(q0 / e0) : Rational(q1 / e1);
      Rational step = sgn(e0) != 0 ? Rational(d0 / e0) : Rational(d1 / e1);
      Interval I;
      if (e.is_ray()) {
        if (sgn(step) > 0) I.lo = sa; else I.hi = sa;
      } else {
        Rational sb = sa + step * e.length;
        I.lo = std::min(sa, sb);
        I.hi = std::max(sa, sb);
      }
      raw.push_back(I);
      continue;
    }
    // base + s e = p + r d
    Rational s = cross(q0, q1, d0, d1) / den;
    Rational r = cross(q0, q1, e0, e1) / den;
    if (sgn(r) < 0 || (!e.is_ray() && r > e.length)) continue;
    raw.push_back({s, s});
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    if (!a.lo || !b.lo) return !a.lo && b.lo;
    return *a.lo < *b.lo;
  });
  std::vector<Interval> out;
  for (auto& I : raw) {
    if (!out.empty() && (!out.back().hi || (I.lo && *I.lo <= *out.back().hi) || !I.lo)) {
      if (!I.hi || (out.back().hi && *I.hi > *out.back().hi)) out.back().hi = I.hi;
      continue;
    }
    out.push_back(I);
  }
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (auto& x : a)
    for (auto& y : b) {
      Interval z;
      if (!x.lo) z.lo = y.lo;
      else if (!y.lo) z.lo = x.lo;
      else z.lo = std::max(*x.lo, *y.lo);
      if (!x.hi) z.hi = y.hi;
      else if (!y.hi) z.hi = x.hi;
      else z.hi = std::min(*x.hi, *y.hi);
      if (z.lo && z.hi && *z.lo > *z.hi) continue;
      out.push_back(z);
    }
  return out;
}

bool on_edge(const TropicalCurve& c, const CurveEdge& e, const QPoint& q) {
  const QPoint& p = c.vertices[e.a].pos;
  std::optional<Rational> s;
  for (size_t k = 0; k < q.size(); ++k) {
    Rational diff = q[k] - p[k];
    if (e.dir[k] == 0) {
      if (sgn(diff) != 0) return false;
      continue;
    }
    Rational sk = diff / Rational(e.dir[k]);
    if (s && *s != sk) return false;
    s = sk;
  }
  if (!s || sgn(*s) < 0) return false;
  return e.is_ray() || *s <= e.length;
}

ReembeddedCurve reembed_impl(const PlanePoly& g, const Lifting& f) {
  if (g.nvars() != 2) throw DomainError("plane curves need exactly two variables");
  ReembeddedCurve r;
  r.lifting = f;
  r.g = g;
  r.embedding = Embedding::plane(g);
  r.embedding.coords.push_back(lifted_coordinate(r.embedding, 0, 1, f));
  const auto& x = g.vars()[0];
  const auto& y = g.vars()[1];
  if (f.type == LineType::Horizontal) {
    r.gt = chart_polynomial(r.embedding, x, f.var);
  } else {
    r.gt = chart_polynomial(r.embedding, f.var, y);
  }
  r.chart1 = tropicalize(r.g);
  r.chart2 = tropicalize(r.gt);
  r.chart1.coords = {upper(x), upper(y)};
  r.chart2.coords = f.type == LineType::Horizontal ? std::vector<std::string>{upper(x), upper(f.var)}
                                                    : std::vector<std::string>{upper(f.var), upper(y)};
  r.glued = glue(r.embedding);
  auto before = find_cycles(r.chart1);
  if (before.size() == 1) r.cycle_before = before[0].length;
  if (r.glued.cycle) r.cycle_after = r.glued.cycle->length;

  // Gluing line: both charts meet it along the same planar line.
  const Rational& l = f.level;
  QPoint base;
  IVec pdir, dir3;
  std::function<QPoint(const Rational&)> lift;
  switch (f.type) {
    case LineType::Vertical:
      base = {l, 0};
      pdir = {0, 1};
      dir3 = {0, 1, 0};
      lift = [l](const Rational& s) { return QPoint{l, s, l}; };
      break;
    case LineType::Horizontal:
      base = {0, l};
      pdir = {1, 0};
      dir3 = {1, 0, 1};
      lift = [l](const Rational& s) { return QPoint{s, l, l}; };
      break;
    case LineType::Skew:
      base = {l, 0};
      pdir = {1, 1};
      dir3 = {1, 1, 1};
      lift = [l](const Rational& s) { return QPoint{s + l, s, s + l}; };
      break;
  }
  auto comps = intersect(line_intersection(r.chart1, base, pdir), line_intersection(r.chart2, base, pdir));
  std::set<Rational> verts;
  const auto& gc = r.glued.curve;
  for (auto& I : comps) {
    if (I.lo) verts.insert(*I.lo);
    if (I.hi) verts.insert(*I.hi);
    if (I.lo && I.hi && *I.lo == *I.hi) continue;
    GluingSegment seg{I.lo, I.hi, 0};
    Rational mid = I.lo && I.hi ? Rational((*I.lo + *I.hi) / 2) : I.lo ? Rational(*I.lo + 1)
                                                                       : Rational(*I.hi - 1);
    QPoint q = lift(mid);
    for (auto& e : gc.edges) {
      bool along = true;
      for (int k = 0; k < 3; ++k)
        if (std::labs(e.dir[k]) != std::labs(dir3[k])) along = false;
      if (along && on_edge(gc, e, q)) seg.mult = e.mult;
    }
    r.gluing_segments.push_back(seg);
  }
  r.gluing_vertices.assign(verts.begin(), verts.end());

  // sigma_3: points strictly below the tropical value of the lifting.
  const auto& z = r.embedding.coords[2];
  auto below = [&](const QPoint& W) {
    Rational F;
    bool first = true;
    auto upd = [&](const Rational& v) {
      if (first || v > F) F = v;
      first = false;
    };
    if (!z.a.is_zero()) upd(height(z.a) + W[0]);
    if (!z.b.is_zero()) upd(height(z.b) + W[1]);
    if (!z.c.is_zero()) upd(height(z.c));
    return W[2] < F;
  };
  bool only_down = true, vertical_bounded = false;
  for (auto& e : gc.edges) {
    QPoint q = gc.vertices[e.a].pos;
    if (e.is_ray()) {
      for (int k = 0; k < 3; ++k) q[k] += e.dir[k];
    } else {
      const QPoint& b = gc.vertices[e.b].pos;
      for (int k = 0; k < 3; ++k) q[k] = (q[k] + b[k]) / 2;
    }
    if (!below(q)) continue;
    bool vertical = e.dir[0] == 0 && e.dir[1] == 0;
    if (!(e.is_ray() && vertical && e.dir[2] < 0)) only_down = false;
    if (!e.is_ray() && vertical) vertical_bounded = true;
  }
  if (r.cycle_before && !r.cycle_after) r.classification = "cycle-broken";
  else if (only_down) r.classification = "generic";
  else if (vertical_bounded) r.classification = "decontraction";
  else r.classification = "unfolding";
  return r;
}

}  // namespace

ReembeddedCurve reembed(const PlanePoly& g, const Lifting& f) { return reembed_impl(g, f); }

ReembeddedCurve reembed_skew(const PlanePoly& g, const Lifting& f) {
  if (f.type != LineType::Skew) throw DomainError("reembed_skew needs a skew lifting");
  return reembed_impl(g, f);
}

Lifting find_special_lifting(const PlanePoly& g, int cell, LineType type, const std::string& var) {
  auto sub = subdivision_of(g);
  if (cell < 0 || cell >= (int)sub.cells.size()) throw DomainError("no such cell");
  const auto& C = sub.cells[cell];
  long lo = level_functional(type, C.marked[0]), hi = lo, amin = along_functional(type, C.marked[0]);
  for (auto& p : C.marked) {
    lo = std::min(lo, level_functional(type, p));
    hi = std::max(hi, level_functional(type, p));
    amin = std::min(amin, along_functional(type, p));
  }
  if (hi - lo != 1) throw DomainError("cell does not have lattice width one across the " + to_string(type) + " line");
  UPoly h[2];
  ExtensionHandle ext;
  for (auto& p : C.marked) {
    int row = level_functional(type, p) == lo ? 0 : 1;
    size_t k = along_functional(type, p) - amin;
    if (h[row].size() <= k) h[row].resize(k + 1);
    FieldElem c = g.coefficient(p).init();
    if (c.extension()) ext = c.extension();
    h[row][k] = c;
  }
  UPoly d = ugcd(h[0], h[1]);
  if (degree(d) < 1) throw DomainError("vertex already locally irreducible");
  std::vector<FieldElem> roots;
  for (auto& r : field_roots(d, ext))
    if (!r.is_zero()) roots.push_back(r);
  if (roots.empty()) {
    if (ueval(d, FieldElem(0)).is_zero() && degree(d) == 1) throw DomainError("common root not in the torus");
    throw Unsupported("common root outside supported extensions");
  }
  Lifting f;
  f.type = type;
  f.var = var;
  f.A = Puiseux(-roots.front());
  Rational vx = -C.alpha, vy = -C.beta;
  f.level = type == LineType::Vertical ? vx : type == LineType::Horizontal ? vy : Rational(vx - vy);
  return f;
}

Lifting fat_edge_lifting(const PlanePoly& g, int edge, const std::string& var) {
  TropicalCurve c = tropicalize(g);
  if (edge < 0 || edge >= (int)c.edges.size()) throw DomainError("no such edge");
  const auto& e = c.edges[edge];
  if (e.is_ray()) throw DomainError("fat edge must be bounded");
  bool vertical = e.dir[0] == 0, horizontal = e.dir[1] == 0;
  if (!vertical && !horizontal) throw DomainError("fat edge must be vertical or horizontal");
  if (e.mult < 2) throw DomainError("edge has multiplicity one");
  if (c.star(e.a).size() != 3 || c.star(e.b).size() != 3) throw DomainError("fat edge endpoints must be trivalent");
  const auto& se = c.subdivision.edges[e.dual];
  int along = vertical ? 0 : 1;
  int amin = se.marked.front()[along];
  for (auto& p : se.marked) amin = std::min(amin, p[along]);
  UPoly h;
  ExtensionHandle ext;
  for (auto& p : se.marked) {
    size_t k = p[along] - amin;
    if (h.size() <= k) h.resize(k + 1);
    h[k] = g.coefficient(p).init();
    if (h[k].extension()) ext = h[k].extension();
  }
  trim(h);
  if (udiscriminant(h).is_zero()) throw DomainError("repeated root: unfolding not guaranteed");
  // Roots in A of h(-A).
  UPoly q = h;
  for (size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
  std::vector<FieldElem> roots;
  for (auto& r : field_roots(q, ext))
    if (!r.is_zero()) roots.push_back(r);
  if (roots.empty() && degree(q) == 2 && !ext) {
    Rational c1 = (q[1] / q[2]).rational_part(), c0 = (q[0] / q[2]).rational_part();
    auto nx = make_extension(c1, c0, "u");
    FieldElem u = FieldElem::generator(nx);
    roots = {u, FieldElem(-c1) - u};
    std::sort(roots.begin(), roots.end());
  }
  if (roots.empty()) throw Unsupported("root outside supported extensions");
  Lifting f;
  f.type = vertical ? LineType::Vertical : LineType::Horizontal;
  f.var = var;
  f.A = Puiseux(roots.front());
  const QPoint& p = c.vertices[e.a].pos;
  f.level = vertical ? p[0] : p[1];
  return f;
}

bool visible_side(const TropicalCurve& c, const CycleDescriptor& cycle, LineType type, const Rational& l) {
  for (int v : cycle.vertices) {
    const QPoint& p = c.vertices[v].pos;
    Rational val = type == LineType::Vertical ? p[0] : type == LineType::Horizontal ? p[1] : Rational(p[0] - p[1]);
    if (val < l) return false;
  }
  return true;
}

void ChartStack::push(const Lifting& f, const std::string& x, const std::string& y) {
  if (steps.size() >= max_depth) throw Unsupported("chart stack deeper than 3 liftings");
  int i = embedding.index(x), j = embedding.index(y);
  if (i < 0 || j < 0) throw DomainError("unknown coordinate in lifting");
  embedding.coords.push_back(lifted_coordinate(embedding, i, j, f));
  steps.push_back({f, x, y});
}

PlanePoly chart_polynomial(const Embedding& e, const std::string& u, const std::string& v) {
  int i = e.index(u), j = e.index(v);
  if (i < 0 || j < 0) throw DomainError("unknown coordinate");
  auto ch = make_chart(e, i, j);
  if (!ch) throw DomainError("dependent coordinates: " + u + ", " + v);
  return ch->g;
}

TropicalCurve multi_chart_project(const ChartStack& stack, const std::string& u, const std::string& v) {
  TropicalCurve c = tropicalize(chart_polynomial(stack.embedding, u, v));
  c.coords = {upper(u), upper(v)};
  return c;
}

}  // namespace tropmod
