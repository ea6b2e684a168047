#include "tropmod/repair.hpp"

#include <algorithm>

namespace tropmod {

std::string to_string(RepairStatus s) {
  switch (s) {
    case RepairStatus::Repaired: return "repaired";
    case RepairStatus::AlreadyFaithful: return "already-faithful";
    case RepairStatus::RationalCurve: return "rational-curve";
    case RepairStatus::NoCycleInput: return "no-cycle-input";
    case RepairStatus::Unsupported: return "unsupported";
  }
  return "?";
}

std::vector<ProblemVertex> problematic_vertices(const PlanePoly& g, const TropicalCurve& c,
                                                const std::vector<int>& vertices) {
  std::vector<ProblemVertex> out;
  for (int v : vertices) {
    if (!local_reducibility(c, v)) continue;
    int cell = c.vertices[v].cell;
    ProblemVertex pv;
    pv.vertex = v;
    pv.pos = c.vertices[v].pos;
    for (auto& cls : classify_cubic_cycle_vertex(c.subdivision.cells[cell])) {
      try {
        pv.liftings.push_back(find_special_lifting(g, cell, cls.type));
      } catch (const DomainError&) {
      }
    }
    if (!pv.liftings.empty()) out.push_back(pv);
  }
  std::sort(out.begin(), out.end(), [](const ProblemVertex& a, const ProblemVertex& b) { return a.pos < b.pos; });
  return out;
}

bool faithfulness_certificate(const Embedding& e, const GluedCurve& glued) {
  if (!glued.cycle) return false;
  const auto& c = glued.curve;
  for (int ed : glued.cycle->edges)
    if (c.edges[ed].mult != 1) return false;
  for (int v : glued.cycle->vertices) {
    std::vector<IVec> dirs;
    std::vector<long> mults;
    for (int ed : c.star(v)) {
      dirs.push_back(c.outgoing(ed, v));
      mults.push_back(c.edges[ed].mult);
    }
    if (!reducible_star(dirs, mults)) continue;
    auto lf = local_form(e, glued, v);
    if (!lf) return false;
    std::vector<std::string> vars{"x", "y"};
    Exponent lo{1 << 20, 1 << 20};
    for (auto& [ex, cf] : lf->h.terms())
      for (int k = 0; k < 2; ++k) lo[k] = std::min(lo[k], ex[k]);
    PlanePoly h(vars);
    std::vector<Exponent> pts;
    for (auto& [ex, cf] : lf->h.terms()) {
      Exponent p{ex[0] - lo[0], ex[1] - lo[1]};
      pts.push_back(p);
      h.add_term(p, Puiseux(cf));
    }
    try {
      Discriminant d = configuration_discriminant(pts);
      if (d.defective) continue;
      if (vanishes_at_init(d, h)) return false;
    } catch (const Unsupported&) {
      return false;
    }
  }
  return true;
}

bool faithfulness_certificate(const PlanePoly& g) {
  Embedding e = Embedding::plane(g);
  return faithfulness_certificate(e, glue(e));
}

namespace {

std::optional<Rational> planar_cycle(const TropicalCurve& c) {
  auto cy = find_cycles(c);
  if (cy.size() != 1) return std::nullopt;
  return cy[0].length;
}

void shift_in_place(Embedding& e, int target, int i, int j, Lifting f) {
  std::string keep = e.coords[target].name;
  f.var = "_tmp";
  Coordinate c = lifted_coordinate(e, i, j, f);
  c.name = keep;
  e.coords[target] = c;
}

void rename(Embedding& e, const std::string& from, const std::string& to) {
  int k = e.index(from);
  if (k >= 0) e.coords[k].name = to;
}

constexpr int max_steps = 40;

class Repairer {
 public:
  explicit Repairer(const PlanePoly& g) : e_(Embedding::plane(g)), X_(g.vars()[0]), Y_(g.vars()[1]) {}

  RepairStatus status = RepairStatus::Repaired;
  std::string message;

  PlanePoly planar() const { return chart_polynomial(e_, X_, Y_); }

  // Planar replacements along skew lines and along visible vertical/horizontal lines.
  void normalize() {
    for (int iter = 0; iter < max_steps; ++iter) {
      PlanePoly gp = planar();
      TropicalCurve C = tropicalize(gp);
      auto cycles = find_cycles(C);
      if (cycles.size() != 1) return;
      const auto& cyc = cycles[0];
      bool applied = false;
      for (auto& pv : problematic_vertices(gp, C, cyc.vertices)) {
        for (auto f : pv.liftings) {
          if (f.type != LineType::Skew && !visible_side(C, cyc, f.type, f.level)) continue;
          f.var = "_z";
          ReembeddedCurve r = reembed(gp, f);
          if (r.classification == "cycle-broken") {
            auto opts = planar_options(f);
            record(f.type == LineType::Skew ? "normalize-skew" : "normalize-visible", f, opts[0].coord, X_, Y_,
                   std::nullopt);
            e_ = opts[0].e;
            X_ = opts[0].x;
            Y_ = opts[0].y;
            status = RepairStatus::RationalCurve;
            message = "the modification breaks the cycle: the curve is rational";
            return;
          }
          if (try_planar(f, cyc.length)) {
            applied = true;
            break;
          }
        }
        if (applied) break;
      }
      if (!applied) return;
    }
    status = RepairStatus::Unsupported;
    message = "normalization did not terminate";
  }

  // Dimension-3 step along the vertical line through v1.
  void v1() {
    PlanePoly gp = planar();
    TropicalCurve C = tropicalize(gp);
    auto cycles = find_cycles(C);
    if (cycles.size() != 1) return;
    for (auto& pv : problematic_vertices(gp, C, cycles[0].vertices)) {
      for (auto f : pv.liftings) {
        if (f.type != LineType::Vertical) continue;
        f.var = "z1";
        Embedding next = e_;
        next.coords.push_back(lifted_coordinate(next, next.index(X_), next.index(Y_), f));
        GluedCurve gc = glue(next);
        if (!gc.cycle) {
          e_ = next;
          record("v1-vertical", f, "z1", X_, Y_, std::nullopt);
          status = RepairStatus::RationalCurve;
          message = "the modification breaks the cycle: the curve is rational";
          return;
        }
        if (gc.cycle->length <= cycles[0].length) continue;
        e_ = next;
        v1_pos_ = pv.pos;
        record("v1-vertical", f, "z1", X_, Y_, gc.cycle->length);
        iterate("z1", Y_, 0, f.level, "v1-iterate");
        return;
      }
    }
  }

  // Dimension-4 step along the horizontal line through v2.
  void v2() {
    if (status != RepairStatus::Repaired) return;
    PlanePoly gp = planar();
    TropicalCurve C = tropicalize(gp);
    auto cycles = find_cycles(C);
    if (cycles.size() != 1) return;
    Rational current = current_length();
    for (auto& pv : problematic_vertices(gp, C, cycles[0].vertices)) {
      if (v1_pos_ && pv.pos == *v1_pos_) continue;
      for (auto f : pv.liftings) {
        if (f.type != LineType::Horizontal || visible_side(C, cycles[0], f.type, f.level)) continue;
        f.var = "z2";
        Embedding next = e_;
        next.coords.push_back(lifted_coordinate(next, next.index(X_), next.index(Y_), f));
        GluedCurve gc = glue(next);
        if (!gc.cycle) {
          e_ = next;
          record("v2-horizontal", f, "z2", X_, Y_, std::nullopt);
          status = RepairStatus::RationalCurve;
          message = "the modification breaks the cycle: the curve is rational";
          return;
        }
        if (gc.cycle->length <= current) continue;
        e_ = next;
        record("v2-horizontal", f, "z2", X_, Y_, gc.cycle->length);
        iterate(X_, "z2", 1, f.level, "v2-iterate");
        return;
      }
    }
  }

  // Drops the original x coordinate once z3 replaces it.
  void merge_project() {
    if (status != RepairStatus::Repaired || e_.index("z3") < 0) return;
    GluedCurve before = glue(e_);
    Embedding next = e_;
    next.coords.erase(next.coords.begin() + next.index(X_));
    GluedCurve after = glue(next);
    if (!before.cycle || !after.cycle || after.cycle->length != before.cycle->length) return;
    RepairStep s;
    s.kind = "merge-project";
    s.coordinate = X_;
    s.lifting_text = "drop " + X_;
    s.cycle_length = after.cycle->length;
    trace.push_back(s);
    e_ = next;
    X_ = "z3";
  }

  RepairResult finish(const std::optional<Rational>& target) {
    RepairResult r;
    r.trace = trace;
    r.val_j = target ? std::optional<Rational>(-*target) : std::nullopt;
    r.embedding = e_;
    r.curve = glue(e_);
    fill_generators(r);
    r.certified = faithfulness_certificate(e_, r.curve);
    r.status = status;
    r.message = message;
    if (status != RepairStatus::Repaired) return r;
    if (!r.curve.cycle) {
      r.status = RepairStatus::RationalCurve;
      r.message = "the final curve has no cycle";
    } else if (!target) {
      r.status = RepairStatus::Unsupported;
      r.message = "the cubic is singular but the cycle persists";
    } else if (r.curve.cycle->length != *target) {
      r.status = RepairStatus::Unsupported;
      r.message = "final cycle length " + to_string(r.curve.cycle->length) + " differs from -val(j) = " +
                  to_string(*target);
    } else if (!r.certified) {
      r.status = RepairStatus::Unsupported;
      r.message = "cycle length matches but the faithfulness certificate fails";
    }
    return r;
  }

  std::vector<RepairStep> trace;
  Embedding e_;
  std::string X_, Y_;

 private:
  std::optional<QPoint> v1_pos_;

  Rational current_length() {
    GluedCurve gc = glue(e_);
    return gc.cycle ? gc.cycle->length : Rational(0);
  }

  void record(const std::string& kind, const Lifting& f, const std::string& coord, const std::string& u,
              const std::string& v, const std::optional<Rational>& len) {
    RepairStep s;
    s.kind = kind;
    s.lifting = f;
    s.lifting.value().var = coord;
    s.coordinate = coord;
    s.lifting_text = f.str(u, v);
    s.cycle_length = len;
    trace.push_back(s);
  }

  struct Option {
    Embedding e;
    std::string x, y, coord;
    std::optional<Rational> len;
  };

  // In-place replacements of X or Y by f; for skew lines the replacement of Y comes first.
  std::vector<Option> planar_options(const Lifting& f) const {
    int ix = e_.index(X_), iy = e_.index(Y_);
    auto fresh = [](const std::string& cur, const std::string& base, const std::string& alt) {
      return cur == base ? alt : cur;
    };
    std::vector<Option> opts;
    if (f.type != LineType::Vertical) {
      Option o{e_, X_, Y_, ""};
      shift_in_place(o.e, iy, ix, iy, f);
      o.y = fresh(Y_, "y", "v");
      rename(o.e, Y_, o.y);
      o.coord = o.y;
      opts.push_back(o);
    }
    if (f.type != LineType::Horizontal) {
      Option o{e_, X_, Y_, ""};
      shift_in_place(o.e, ix, ix, iy, f);
      o.x = fresh(X_, "x", "s");
      rename(o.e, X_, o.x);
      o.coord = o.x;
      opts.push_back(o);
    }
    return opts;
  }

  bool try_planar(const Lifting& f, const Rational& old) {
    auto opts = planar_options(f);
    Option* best = nullptr;
    for (auto& o : opts) {
      o.len = planar_cycle(tropicalize(chart_polynomial(o.e, o.x, o.y)));
      if (o.len && *o.len > old && (!best || *o.len > *best->len)) best = &o;
    }
    if (!best) return false;
    record(f.type == LineType::Skew ? "normalize-skew" : "normalize-visible", f, best->coord, X_, Y_, best->len);
    e_ = best->e;
    X_ = best->x;
    Y_ = best->y;
    return true;
  }

  // Refines inside sigma_3 of the chart (u, v): points with coordinate `side` below `level`.
  void iterate(const std::string& u0, const std::string& v0, int side, const Rational& level,
               const std::string& kind) {
    std::string u = u0, v = v0;
    for (int iter = 0; iter < max_steps; ++iter) {
      PlanePoly gc = chart_polynomial(e_, u, v);
      TropicalCurve C = tropicalize(gc);
      std::vector<int> region;
      for (size_t k = 0; k < C.vertices.size(); ++k)
        if (C.vertices[k].pos[side] < level) region.push_back((int)k);
      Rational current = current_length();
      bool applied = false;
      for (auto& pv : problematic_vertices(gc, C, region)) {
        std::vector<Lifting> order;
        for (auto t : {LineType::Vertical, LineType::Horizontal})
          for (auto& f : pv.liftings)
            if (f.type == t) order.push_back(f);
        for (auto f : order) {
          Embedding next = e_;
          int iu = next.index(u), iv = next.index(v);
          std::string coord, nu = u;
          if (f.type == LineType::Vertical && kind == "v2-iterate" && u == X_) {
            f.var = "z3";
            next.coords.push_back(lifted_coordinate(next, iu, iv, f));
            coord = nu = "z3";
          } else if (f.type == LineType::Vertical) {
            shift_in_place(next, iu, iu, iv, f);
            coord = u;
          } else {
            shift_in_place(next, iv, iu, iv, f);
            coord = v;
          }
          GluedCurve glued = glue(next);
          if (!glued.cycle) {
            e_ = next;
            record(kind, f, coord, u, v, std::nullopt);
            status = RepairStatus::RationalCurve;
            message = "the modification breaks the cycle: the curve is rational";
            return;
          }
          if (glued.cycle->length <= current) continue;
          record(kind, f, coord, u, v, glued.cycle->length);
          e_ = next;
          u = nu;
          applied = true;
          break;
        }
        if (applied) break;
      }
      if (!applied) return;
    }
    status = RepairStatus::Unsupported;
    message = kind + " did not terminate";
  }

  void fill_generators(RepairResult& r) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string xr = e_.index("z3") >= 0 ? "z3" : X_;
    pairs.push_back({xr, Y_});
    auto names = e_.names();
    for (size_t a = 0; a < names.size(); ++a)
      for (size_t b = a + 1; b < names.size(); ++b) pairs.push_back({names[a], names[b]});
    for (auto& [u, v] : pairs) {
      int i = e_.index(u), j = e_.index(v);
      if (i < 0 || j < 0) continue;
      auto ch = make_chart(e_, i, j);
      if (!ch) continue;
      r.chart = {u, v};
      std::vector<PlanePoly> emb{PlanePoly::variable(names, i), PlanePoly::variable(names, j)};
      r.generators.push_back(ch->g.compose(emb, names));
      for (size_t k = 0; k < ch->others.size(); ++k) {
        const auto& f = ch->forms[k];
        PlanePoly lin = PlanePoly::variable(names, ch->others[k]) - emb[0].scaled(f[0]) - emb[1].scaled(f[1]) -
                        PlanePoly::constant(names, f[2]);
        r.generators.push_back(lin);
      }
      return;
    }
  }
};

std::optional<Rational> target_length(const PlanePoly& g) {
  try {
    auto jv = cubic_j_valuation(g);
    if (jv.val) return -*jv.val;
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize(const PlanePoly& g) {
  Repairer rp(g);
  rp.normalize();
  NormalizeResult out;
  out.status = rp.status;
  out.trace = rp.trace;
  auto ch = make_chart(rp.e_, rp.e_.index(rp.X_), rp.e_.index(rp.Y_));
  out.psi = ch->inverse;
  out.g_psi = ch->g;
  return out;
}

V1Result repair_v1(const PlanePoly& g) {
  Repairer rp(g);
  rp.v1();
  V1Result out;
  out.status = rp.status;
  out.trace = rp.trace;
  auto ch = make_chart(rp.e_, rp.e_.index(rp.X_), rp.e_.index(rp.Y_));
  out.psi = ch->inverse;
  int k = rp.e_.index("z1");
  if (k >= 0) out.f = rp.e_.coords[k];
  return out;
}

RepairResult repair_elliptic(const PlanePoly& g) {
  if (g.nvars() != 2 || g.total_degree() != 3) throw DomainError("repair_elliptic needs a plane cubic");
  auto target = target_length(g);
  TropicalCurve T = tropicalize(g);
  Repairer rp(g);
  if (find_cycles(T).empty()) {
    RepairResult r = rp.finish(target);
    r.status = RepairStatus::NoCycleInput;
    r.message = "Trop(g) has no cycle";
    return r;
  }
  if (target && sgn(*target) <= 0) {
    RepairResult r = rp.finish(target);
    r.status = RepairStatus::AlreadyFaithful;
    r.message = "val(j) >= 0: no repair needed";
    return r;
  }
  if (faithfulness_certificate(g)) {
    RepairResult r = rp.finish(target);
    if (r.status == RepairStatus::Repaired) {
      r.status = RepairStatus::AlreadyFaithful;
      r.message = "the cycle is already faithful";
    }
    return r;
  }
  rp.normalize();
  if (rp.status == RepairStatus::Repaired) rp.v1();
  if (rp.status == RepairStatus::Repaired) rp.v2();
  rp.merge_project();
  return rp.finish(target);
}

RepairResult unfold_to_cycle(const PlanePoly& g) {
  TropicalCurve T = tropicalize(g);
  if (!find_cycles(T).empty()) throw DomainError("Trop(g) already has a cycle");
  std::vector<int> bounded, rays;
  for (size_t k = 0; k < T.edges.size(); ++k) {
    const auto& e = T.edges[k];
    bool axis = e.dir[0] == 0 || e.dir[1] == 0;
    if (!axis || e.mult < 2) continue;
    (e.is_ray() ? rays : bounded).push_back((int)k);
  }
  if (bounded.empty() && rays.empty())
    throw DomainError("no vertical or horizontal edge of multiplicity at least two");
  RepairResult r;
  r.val_j = target_length(g) ? std::optional<Rational>(-*target_length(g)) : std::nullopt;
  std::string failure;
  for (int k : bounded) {
    try {
      Lifting f = fat_edge_lifting(g, k, "z");
      ReembeddedCurve re = reembed(g, f);
      if (!re.glued.cycle) continue;
      RepairStep s;
      s.kind = f.type == LineType::Vertical ? "v1-vertical" : "v2-horizontal";
      s.lifting = f;
      s.coordinate = f.var;
      s.lifting_text = f.str(g.vars()[0], g.vars()[1]);
      s.cycle_length = re.glued.cycle->length;
      r.trace.push_back(s);
      r.embedding = re.embedding;
      r.curve = re.glued;
      r.certified = faithfulness_certificate(re.embedding, re.glued);
      r.status = r.certified ? RepairStatus::Repaired : RepairStatus::Unsupported;
      r.message = r.certified ? "unfolded a fat edge into a cycle" : "cycle produced but not certified";
      auto names = re.embedding.names();
      r.chart = {names[0], names[1]};
      r.generators.push_back(g.compose({PlanePoly::variable(names, 0), PlanePoly::variable(names, 1)}, names));
      const auto& z = re.embedding.coords[2];
      r.generators.push_back(PlanePoly::variable(names, 2) - PlanePoly::variable(names, 0).scaled(z.a) -
                             PlanePoly::variable(names, 1).scaled(z.b) - PlanePoly::constant(names, z.c));
      return r;
    } catch (const DomainError& ex) {
      failure = ex.what();
    }
  }
  // Diagnose the edges with a repeated root: feed the root and report the coefficients that drop.
  r.status = RepairStatus::Unsupported;
  std::vector<int> all = bounded;
  all.insert(all.end(), rays.begin(), rays.end());
  for (int k : all) {
    const auto& e = T.edges[k];
    bool vertical = e.dir[0] == 0;
    const auto& se = T.subdivision.edges[e.dual];
    int along = vertical ? 0 : 1;
    int amin = se.marked.front()[along];
    for (auto& p : se.marked) amin = std::min(amin, p[along]);
    UPoly h;
    for (auto& p : se.marked) {
      size_t idx = p[along] - amin;
      if (h.size() <= idx) h.resize(idx + 1);
      h[idx] = g.coefficient(p).init();
    }
    trim(h);
    if (!udiscriminant(h).is_zero()) continue;
    ExtensionHandle ext;
    for (auto& c : h)
      if (c.extension()) ext = c.extension();
    auto roots = field_roots(h, ext);
    const FieldElem* rep = nullptr;
    for (auto& x0 : roots)
      if (!x0.is_zero() && root_order(h, x0) >= 2) rep = &x0;
    if (!rep) continue;
    Lifting f;
    f.type = vertical ? LineType::Vertical : LineType::Horizontal;
    f.A = Puiseux(-*rep);
    f.level = T.vertices[e.a].pos[vertical ? 0 : 1];
    ReembeddedCurve re = reembed(g, f);
    std::vector<Exponent> pts = se.marked;
    std::sort(pts.begin(), pts.end(), [&](const Exponent& a, const Exponent& b) { return a[along] < b[along]; });
    std::vector<std::string> dropped;
    for (auto& p : pts) {
      // Same support point in the chart (z, y) or (x, z).
      Puiseux c0 = g.coefficient(p), c1 = re.gt.coefficient(p);
      if (c1.is_zero() || c1.valuation() > c0.valuation()) dropped.push_back(coefficient_name(p));
    }
    r.embedding = re.embedding;
    r.curve = re.glued;
    RepairStep s;
    s.kind = vertical ? "v1-vertical" : "v2-horizontal";
    s.lifting = f;
    s.coordinate = f.var;
    s.lifting_text = f.str(g.vars()[0], g.vars()[1]);
    if (re.glued.cycle) s.cycle_length = re.glued.cycle->length;
    r.trace.push_back(s);
    std::string list;
    for (auto& d : dropped) list += (list.empty() ? "" : ", ") + d;
    r.message = "discriminant of the fat edge vanishes; feeding the repeated root lowers " + list +
                " of g~, so the method fails to produce a bounded weight two edge";
    return r;
  }
  r.message = failure.empty() ? "no fat edge could be unfolded" : failure;
  return r;
}

}  // namespace tropmod
