#include "tropmod/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tropmod/textio.hpp"

namespace tropmod {

const std::vector<CorpusEntry>& example_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"two-step",
       "-t^3*x^3 + (t^4+t^5)*x^2*y + (-t^5+t^6)*x*y^2 + t^3*y^3 + (t^2-t^3)*x^2 + 4*x*y + (2*t^2+3*t^3)*y^2 + 2*x + "
       "(2+2*t)*y + (1+t)",
       "", "cycle of length 6 repaired by two visible vertical liftings to length 8"},
      {"dim-4",
       "x^3 + (1-9*t^2)*x^2*y + 2*t^4*x*y^2 + t^20*y^3 + (1-24*t^9-t^40)*x^2 + (1+5*t-16*t^9+144*t^11)*x*y + "
       "8*t^67*y^2 + (1-16*t^9+t^15+192*t^18)*x + (2*t^4+64*t^18-576*t^20)*y + (1-8*t^9+64*t^18-8*t^24)",
       "", "two hidden reducible vertices; repair in dimension four"},
      {"double-edge",
       "t^3*x^3 + x^2*y + t^3*x*y^2 + t*y^3 + t^4*x^2 + (1+t^2)*x*y + t^2*y^2 + t^5*x + (1+t)*y + t", "",
       "vertical double edge unfolded by x + (1+sqrt(-3))/2"},
      {"edge-unfolding", "t^3*x^3 + t^5*x^2*y + t^3*x*y^2 + t*y^3 + x^2 + 3*x*y + t^2*y^2 + (2+3/2*t)*x + (3+t^2)*y + 1", "",
       "modification along X = 0 unfolds an edge"},
      {"unfold-cycle", "t^4*x^2*y + 5*t^3*x*y^2 + t^9*y^3 + x^2 + 3*x*y + t^2*y^2 + 2*x + (3-t^4)*y + 1", "",
       "rational cubic whose cycle is unfolded"},
      {"pushed-edge",
       "-t^2*x^3 + t^200*x^2*y + (t^2+t^4)*x*y^2 + t^14*y^3 + (-3*t^3-t^200)*x^2 + (t^3+t^5-t^6+t^12-t^202)*y^2 + "
       "(1+2*t^201)*x*y + (-3*t^4+t^200-2*t^201)*x + (t+t^2+t^202)*y + (2*t^2-t^5+t^201-t^202)",
       "", "non-generic modification along X = -1 with f = x + t"},
      {"cycle-appears", "t^10*x^3 + x^2*y + x*y^2 + t^11*y^3 + 3*x*y - 1", "",
       "no cycle; three modifications produce a cycle of length 10"},
      {"unfold-impossible", "t^10*x^3 + x*y^2 + t^11*y^3 + x^2 + 4*x*y + 2*x + 1", "",
       "double end that a linear modification cannot unfold"},
      {"genus-3",
       "t^13*x^4 + (1+3*t^4)*x^2*y^2 + (1-2*t^5)*x*y^3 + t^12*y^4 + (1+2*t^2)*x^3 + (1-t^3)*x^2*y + t*x*y^2 + "
       "t^6*x^2 + t^3*x*y + t^10*y + t^14",
       "", "quartic; skew modification decontracts an edge"},
      {"other-reducible-vertex",
       "(t+2*t^2)*x^3*y^3 + (1-t^3)*x^2*y^2 + (1+t)*x*y^3 + (1-t^4)*x^3 + (1+3*t^2)*x^2 + (1+6*t)*y^2 + (1+t)*y", "",
       "vertex (0,0) reducible with a tropical line as component"},
  };
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (auto& e : example_corpus())
    if (e.name == name) return e;
  throw DomainError("unknown corpus example: " + name);
}

PlanePoly corpus_polynomial(const std::string& name) {
  const auto& e = corpus_entry(name);
  ParseOptions opts;
  opts.vars = {"x", "y"};
  if (!e.adjoin.empty()) opts.ext = parse_adjoin(e.adjoin);
  return parse_poly(e.poly, opts);
}

namespace {

FieldElem init_coeff(const PlanePoly& g, int i, int j) {
  Puiseux c = g.coefficient(Exponent{i, j});
  return c.is_zero() ? FieldElem(0) : c.init();
}

// Repeated roots of the initial form on a column or row through the origin vertex.
std::optional<FieldElem> repeated_root(const UPoly& h) {
  for (auto& r : field_roots(h, nullptr))
    if (!r.is_zero() && root_order(h, r) >= 2) return r;
  return std::nullopt;
}

}  // namespace

CycleAppearsRun run_cycle_appears(const PlanePoly& g) {
  CycleAppearsRun run;
  try {
    auto jv = cubic_j_valuation(g);
    run.val_j = jv.val;
  } catch (const DomainError&) {
  }
  // Feeding condition for the downward double end at (0,0) in g(z + A, y).
  FieldElem c00 = init_coeff(g, 0, 0), c11 = init_coeff(g, 1, 1), c21 = init_coeff(g, 2, 1),
            c12 = init_coeff(g, 1, 2);
  UPoly lin{c11, c21};
  UPoly sq = umul(lin, lin);
  run.feeding = uadd(umul(UPoly{FieldElem(0), FieldElem(1)}, sq), UPoly{-FieldElem(4) * c00 * c12});
  trim(run.feeding);
  for (auto& r : field_roots(run.feeding, nullptr)) run.roots.push_back({r, root_order(run.feeding, r)});
  auto rep = repeated_root(run.feeding);
  if (!rep) throw DomainError("feeding condition has no repeated root");
  run.chosen = *rep;

  ChartStack stack(g);
  run.f1 = Lifting{LineType::Vertical, Rational(0), Puiseux(-run.chosen), "z"};
  stack.push(run.f1, "x", "y");

  // Horizontal end of multiplicity two in g1(z, y): its dual edge is a column.
  PlanePoly g1 = chart_polynomial(stack.embedding, "z", "y");
  TropicalCurve t1 = tropicalize(g1);
  UPoly col;
  for (auto& e : t1.edges) {
    if (!e.is_ray() || e.mult < 2 || e.dir[1] != 0) continue;
    const auto& marked = t1.subdivision.edges[e.dual].marked;
    int lo = marked.front()[1];
    for (auto& p : marked) lo = std::min(lo, p[1]);
    col.assign(marked.size(), FieldElem(0));
    for (auto& p : marked) col[p[1] - lo] = init_coeff(g1, p[0], p[1]);
    break;
  }
  trim(col);
  auto y0 = repeated_root(col);
  if (!y0) throw DomainError("the end of g1 at the origin has no repeated root");
  run.f2 = Lifting{LineType::Horizontal, Rational(0), Puiseux(-*y0), "v"};
  stack.push(run.f2, "z", "y");

  // Double edge of g2 on the diagonal: try both readings of the third lifting.
  PlanePoly g2 = chart_polynomial(stack.embedding, "z", "v");
  TropicalCurve t2 = tropicalize(g2);
  std::optional<Rational> level;
  for (auto& e : t2.edges)
    if (!e.is_ray() && e.mult == 2 && e.dir[0] == e.dir[1]) {
      const auto& p = t2.vertices[e.a].pos;
      level = p[0] - p[1];
    }
  if (!level) throw DomainError("g2 has no bounded double edge on a diagonal line");
  for (int d : {3, -3}) {
    SkewCandidate cand;
    cand.label = d > 0 ? "(1+sqrt(3))/2" : "(1+sqrt(-3))/2";
    // (1 + sqrt(d))/2 is a root of w^2 - w + (1 - d)/4.
    auto ext = make_extension(Rational(-1), Rational(1 - d, 4), "w");
    cand.lifting = Lifting{LineType::Skew, *level, Puiseux(FieldElem::generator(ext)), "u"};
    ChartStack s3 = stack;
    s3.push(cand.lifting, "z", "v");
    GluedCurve gc = glue(s3.embedding);
    if (gc.cycle) cand.cycle = gc.cycle->length;
    cand.certified = faithfulness_certificate(s3.embedding, gc);
    bool ok = cand.cycle && cand.certified && run.val_j && *cand.cycle == -*run.val_j;
    if (ok && run.accepted < 0) {
      run.accepted = (int)run.candidates.size();
      run.embedding = s3.embedding;
      run.curve = gc;
    }
    run.candidates.push_back(cand);
  }
  return run;
}

PlanePoly random_cubic(std::mt19937_64& rng, int max_val, int range, bool with_cycle) {
  std::uniform_int_distribution<int> coef(-range, range), val(with_cycle ? 1 : 0, max_val), extra(0, 3);
  PlanePoly g(std::vector<std::string>{"x", "y"});
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; i + j <= 3; ++j) {
      int c = 0;
      while (c == 0) c = coef(rng);
      int v = with_cycle && i == 1 && j == 1 ? 0 : val(rng);
      Puiseux p = Puiseux::monomial(FieldElem(c), Rational(v));
      if (extra(rng) == 0) {
        int c2 = coef(rng);
        if (c2 != 0) p += Puiseux::monomial(FieldElem(c2), p.valuation() + 1 + extra(rng));
      }
      g.add_term(Exponent{i, j}, p);
    }
  return g;
}

namespace {

PlanePoly in_vars(const PlanePoly& p, const std::vector<std::string>& vars) {
  std::vector<PlanePoly> subs;
  for (auto& v : p.vars()) {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw DomainError("variable " + v + " missing");
    subs.push_back(PlanePoly::variable(vars, it - vars.begin()));
  }
  return p.compose(subs, vars);
}

std::string str(const Rational& q) { return q.get_str(); }
std::string str(const std::optional<Rational>& q) { return q ? q->get_str() : "none"; }

struct Checker {
  CheckResult r;
  Checker(int id, std::string name) {
    r.id = id;
    r.name = std::move(name);
    r.pass = true;
  }
  void expect(bool ok, const std::string& what) {
    r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) r.pass = false;
  }
  void note(const std::string& s) { r.details.push_back("     " + s); }
};

std::optional<Rational> planar_cycle(const PlanePoly& g) {
  auto cy = find_cycles(tropicalize(g));
  if (cy.size() != 1) return std::nullopt;
  return cy[0].length;
}

CheckResult check_two_step() {
  Checker c(1, "two-step repair");
  PlanePoly g = corpus_polynomial("two-step");
  auto len0 = planar_cycle(g);
  c.expect(len0 && *len0 == 6, "input cycle length " + str(len0) + " == 6");
  RepairResult r = repair_elliptic(g);
  c.note("status " + to_string(r.status) + ", val(j) " + str(r.val_j));
  bool liftings = r.trace.size() == 2 && r.trace[0].lifting && r.trace[1].lifting &&
                  r.trace[0].lifting->shift() == Puiseux(Rational(1, 2)) &&
                  r.trace[1].lifting->shift() == parse_series("1/2*t");
  std::string tr;
  for (auto& s : r.trace) tr += " [" + s.kind + " " + s.lifting_text + "]";
  c.expect(liftings, "trace liftings x + 1/2 then + t/2:" + tr);
  int k = r.embedding.index("s");
  bool merged = k >= 0 && r.embedding.coords[k].a == Puiseux(1) && r.embedding.coords[k].b.is_zero() &&
                r.embedding.coords[k].c == parse_series("1/2 + 1/2*t");
  c.expect(merged, "merged coordinate s = x + 1/2 + t/2");
  if (merged && !r.generators.empty()) {
    std::vector<std::string> sv{"s", "y"};
    PlanePoly expected = g.compose({PlanePoly::variable(sv, 0) - PlanePoly::constant(sv, parse_series("1/2 + 1/2*t")),
                                    PlanePoly::variable(sv, 1)},
                                   sv);
    c.expect(in_vars(expected, r.generators[0].vars()) == r.generators[0], "generator equals g(s - (1/2+t/2), y)");
  }
  auto len = r.curve.cycle ? std::optional<Rational>(r.curve.cycle->length) : std::nullopt;
  c.expect(len && *len == 8, "final cycle length " + str(len) + " == 8");
  c.expect(len && r.val_j && *len == -*r.val_j, "final cycle length == -val(j)");
  c.expect(r.status == RepairStatus::Repaired, "status repaired");
  return c.r;
}

CheckResult check_dim4() {
  Checker c(2, "dimension-4 repair");
  PlanePoly g = corpus_polynomial("dim-4");
  auto jv = cubic_j_valuation(g);
  c.expect(jv.val && *jv.val == -15, "val(j) " + str(jv.val) + " == -15");
  TropicalCurve T = tropicalize(g);
  auto cy = find_cycles(T);
  auto len0 = cy.size() == 1 ? std::optional<Rational>(cy[0].length) : std::nullopt;
  c.expect(len0 && *len0 == 12, "input cycle length " + str(len0) + " == 12");
  std::set<QPoint> got;
  if (cy.size() == 1)
    for (auto& pv : problematic_vertices(g, T, cy[0].vertices)) got.insert(pv.pos);
  std::set<QPoint> want{{Rational(0), Rational(0)}, {Rational(-4), Rational(4)}};
  std::string gs;
  for (auto& p : got) gs += " (" + p[0].get_str() + "," + p[1].get_str() + ")";
  c.expect(got == want, "reducible vertices with vanishing discriminant:" + gs + " == (0,0) (-4,4)");
  RepairResult r = repair_elliptic(g);
  c.note("status " + to_string(r.status) + ": " + r.message);
  std::string tr;
  for (auto& s : r.trace) tr += " [" + s.kind + " " + s.coordinate + " = " + s.lifting_text + "]";
  c.note("trace" + tr);
  for (auto& p : r.generators) c.note("generator " + to_string(p));
  std::vector<std::string> vars{"z3", "y", "z1", "z2"};
  auto v = [&](int k) { return PlanePoly::variable(vars, k); };
  auto k = [&](const std::string& s) { return PlanePoly::constant(vars, parse_series(s)); };
  std::vector<PlanePoly> want_gens{g.compose({v(0) - k("2*t^4"), v(1)}, vars), v(3) - v(1) - k("1/2*t^-4"),
                                   v(0) - v(2) + k("1 + 2*t^4")};
  c.expect(same_generators(r.generators, want_gens),
           "generators <g(z3-2t^4,y), z2-y-t^-4/2, z3-z1+1+2t^4> up to normalization");
  auto len = r.curve.cycle ? std::optional<Rational>(r.curve.cycle->length) : std::nullopt;
  c.expect(len && *len == 15, "final cycle length " + str(len) + " == 15");
  return c.r;
}

CheckResult check_double_edge() {
  Checker c(3, "double edge unfolding");
  PlanePoly g = corpus_polynomial("double-edge");
  RepairResult r = unfold_to_cycle(g);
  c.note("status " + to_string(r.status) + ": " + r.message);
  c.expect(r.status == RepairStatus::Repaired, "unfold_to_cycle succeeds");
  bool root = false;
  if (!r.trace.empty() && r.trace[0].lifting) {
    FieldElem a = r.trace[0].lifting->A.init();
    root = (FieldElem(1) - a + a * a).is_zero() && r.trace[0].lifting->A.is_single_term();
    c.note("lifting " + r.trace[0].lifting_text);
  }
  c.expect(root, "lifting coefficient A0 satisfies 1 - A0 + A0^2 = 0");
  bool tri = r.curve.cycle.has_value(), mult1 = tri;
  std::string valences;
  if (tri) {
    for (int v : r.curve.cycle->vertices) {
      size_t k = r.curve.curve.star(v).size();
      tri = tri && k == 3;
      valences += " " + std::to_string(k);
    }
    for (int e : r.curve.cycle->edges) mult1 = mult1 && r.curve.curve.edges[e].mult == 1;
  }
  c.expect(mult1, "output cycle edges have multiplicity one");
  c.expect(tri, "output cycle vertices trivalent (valences" + valences + ")");
  c.expect(r.certified, "faithfulness certificate");
  return c.r;
}

CheckResult check_unfold_cycle() {
  Checker c(4, "unfold-cycle");
  PlanePoly g = corpus_polynomial("unfold-cycle");
  ReembeddedCurve re = reembed(g, Lifting{LineType::Vertical, Rational(0), Puiseux(1), "z"});
  ParseOptions po;
  po.vars = {"z", "y"};
  PlanePoly shown = parse_poly("t^4*z^2*y + 5*t^3*z*y^2 + t^9*y^3 + z^2 + (3-2*t^4)*z*y + (t^2-5*t^3)*y^2", po);
  c.note("g~ = " + to_string(re.gt));
  c.expect(re.gt == shown, "g~ equals the displayed polynomial");
  c.expect(re.gt.coefficient(Exponent{0, 0}).is_zero() && re.gt.coefficient(Exponent{1, 0}).is_zero(),
           "c~00 = c~10 = 0");
  RepairResult r = repair_elliptic(g);
  c.note("repair: " + r.message);
  c.expect(r.status == RepairStatus::RationalCurve, "status " + to_string(r.status) + " == rational-curve");
  return c.r;
}

CheckResult check_section21() {
  Checker c(5, "non-generic modification");
  PlanePoly g = corpus_polynomial("pushed-edge");
  ReembeddedCurve re = reembed(g, Lifting{LineType::Vertical, Rational(-1), Puiseux(1), "z"});
  c.expect(re.classification != "generic", "f = x + t is non-generic (" + re.classification + ")");
  std::optional<Rational> left;
  auto cy = find_cycles(re.chart2);
  if (cy.size() == 1)
    for (int e : cy[0].edges) {
      const auto& ed = re.chart2.edges[e];
      if (ed.dir[0] != 0) continue;
      Rational x = re.chart2.vertices[ed.a].pos[0];
      if (!left || x < *left) left = x;
    }
  c.expect(left && *left == -2, "leftmost vertical cycle edge of chart 2 on Z = " + str(left));
  bool generic = true;
  for (const char* a : {"2", "3", "-1", "1/2", "-7/3"}) {
    ReembeddedCurve o = reembed(g, Lifting{LineType::Vertical, Rational(-1), parse_series(a), "z"});
    if (o.classification != "generic") {
      generic = false;
      c.note(std::string("A = ") + a + " gives " + o.classification);
    }
  }
  c.expect(generic, "other initial coefficients give generic modifications");
  return c.r;
}

CheckResult check_unfold_impossible() {
  Checker c(6, "unfold-impossible");
  PlanePoly g = corpus_polynomial("unfold-impossible");
  // a, b, c on the bottom edge, d = c11, q = c12.
  std::vector<Exponent> pts{{0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, 2}};
  Discriminant d = configuration_discriminant(pts);
  std::vector<std::string> lv{"a", "b", "c", "d", "q"};
  auto var = [&](int k) { return SymPoly::variable(lv, k); };
  std::map<Exponent, SymPoly> label{{{0, 0}, var(0)}, {{1, 0}, var(1)}, {{2, 0}, var(2)}, {{1, 1}, var(3)},
                                    {{1, 2}, var(4)}};
  std::vector<SymPoly> vals;
  for (auto& p : d.points) vals.push_back(label.at(p));
  SymPoly got = substitute(d, vals, lv);
  ParseOptions po;
  po.vars = lv;
  PlanePoly want_p = parse_poly("d^4 - 8*b*d^2*q + 16*b^2*q^2 - 64*a*c*q^2", po);
  SymPoly want(lv);
  for (auto& [e, cf] : want_p.terms()) want.add_term(e, cf.init().rational_part());
  c.expect(got == want || got == want.scaled(Rational(-1)), "Delta_(0,0) = d^4-8bd^2q+16b^2q^2-64acq^2");
  c.expect(vanishes_at_init(d, g), "Delta_(0,0) vanishes at the initial coefficients");
  Discriminant de = edge_discriminant({{0, 0}, {1, 0}, {2, 0}});
  std::vector<SymPoly> ev;
  for (auto& p : de.points) ev.push_back(label.at(p));
  SymPoly ge = substitute(de, ev, lv);
  PlanePoly we_p = parse_poly("b^2 - 4*a*c", po);
  SymPoly we(lv);
  for (auto& [e, cf] : we_p.terms()) we.add_term(e, cf.init().rational_part());
  c.expect(ge == we || ge == we.scaled(Rational(-1)), "Delta_e = b^2 - 4ac");
  c.expect(vanishes_at_init(de, g), "Delta_e vanishes at the initial coefficients");
  RepairResult r = unfold_to_cycle(g);
  c.note(r.message);
  c.expect(r.status == RepairStatus::Unsupported, "unfold_to_cycle returns " + to_string(r.status));
  c.expect(r.message.find("c10") != std::string::npos, "diagnosis names c10");
  return c.r;
}

CheckResult check_properties(double scale, unsigned seed) {
  Checker c(7, "random cubic properties");
  std::mt19937_64 rng(seed);
  int n = std::max(1, (int)(1000 * scale));
  int balanced = 0, duality = 0, pushed = 0, pushed_total = 0, repaired_ok = 0;
  std::map<std::string, int> statuses;
  std::vector<std::string> bad;
  for (int it = 0; it < n; ++it) {
    PlanePoly g = random_cubic(rng, it % 2 ? 4 : 6, it % 2 ? 2 : 3, it % 2 == 1);
    TropicalCurve T = tropicalize(g);
    if (check_balancing(T).ok) ++balanced;
    else bad.push_back("unbalanced: " + to_string(g));
    size_t interior = 0, boundary = 0, rays = 0, bounded = 0;
    for (auto& e : T.subdivision.edges) (e.boundary() ? boundary : interior)++;
    for (auto& e : T.edges) (e.is_ray() ? rays : bounded)++;
    if (T.vertices.size() == T.subdivision.cells.size() && interior == bounded && boundary == rays) ++duality;
    else bad.push_back("duality: " + to_string(g));
    // Push-forward of a modification along lines through two random vertices.
    for (int rep = 0; rep < 2; ++rep) {
      const auto& v = T.vertices[rng() % T.vertices.size()];
      LineType type = rep == 0 ? LineType::Vertical : LineType::Horizontal;
      Rational level = type == LineType::Vertical ? v.pos[0] : v.pos[1];
      int a = (int)(rng() % 5) + 1;
      ReembeddedCurve re = reembed(g, Lifting{type, level, Puiseux(rng() % 2 ? a : -a), "z"});
      ++pushed_total;
      if (re.glued.consistent && re.glued.balanced && re.glued.pushforward_ok) ++pushed;
      else bad.push_back("push-forward: " + to_string(g));
    }
    try {
      RepairResult r = repair_elliptic(g);
      bool faithful = r.status == RepairStatus::Repaired ||
                      (r.status == RepairStatus::AlreadyFaithful && r.certified);
      bool ok = !faithful || (r.curve.cycle && r.val_j && r.curve.cycle->length == -*r.val_j);
      statuses[to_string(r.status) + (r.message.empty() ? "" : " (" + r.message + ")")]++;
      bool classified = r.status == RepairStatus::Repaired || !r.message.empty();
      if (ok && classified) ++repaired_ok;
      else bad.push_back("repair: " + to_string(g));
    } catch (const std::exception& ex) {
      statuses[std::string("error: ") + ex.what()]++;
    }
  }
  c.expect(balanced == n, "balanced " + std::to_string(balanced) + "/" + std::to_string(n));
  c.expect(duality == n, "duality counts " + std::to_string(duality) + "/" + std::to_string(n));
  c.expect(pushed == pushed_total, "push-forward identities " + std::to_string(pushed) + "/" +
                                       std::to_string(pushed_total));
  c.expect(repaired_ok == n, "repair terminates with -val(j) or a classified outcome " +
                                 std::to_string(repaired_ok) + "/" + std::to_string(n));
  for (auto& [s, k] : statuses) c.note(s + ": " + std::to_string(k));
  for (size_t i = 0; i < bad.size() && i < 5; ++i) c.note(bad[i]);
  return c.r;
}

CheckResult check_discriminants(double scale, unsigned seed) {
  Checker c(8, "discriminant identities");
  bool eq3 = true;
  for (int n = 1; n <= 5; ++n) {
    SymPoly closed = linear_base_resultant(n);
    auto vars = closed.vars();
    std::vector<SymPoly> a, b{SymPoly::variable(vars, n + 1), SymPoly::variable(vars, n + 2)};
    for (int k = 0; k <= n; ++k) a.push_back(SymPoly::variable(vars, k));
    SymPoly syl = sym_resultant(a, b, vars);
    if (!(syl == closed || syl == closed.scaled(Rational(-1)))) eq3 = false;
  }
  c.expect(eq3, "closed form equals the Sylvester resultant for n <= 5, s = 1");

  const CubicInvariants& inv = cubic_invariants();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  std::optional<Rational> ratio;
  bool constant = true;
  int samples = 0;
  while (samples < 20) {
    Rational a(d(rng), 1 + rng() % 4), b(d(rng), 1 + rng() % 4);
    Rational w = 4 * a * a * a + 27 * b * b;
    if (sgn(w) == 0) continue;
    std::vector<FieldElem> vals;
    for (auto& p : inv.points) {
      Rational v = 0;
      if (p == Exponent{0, 2}) v = 1;
      if (p == Exponent{3, 0}) v = -1;
      if (p == Exponent{1, 0}) v = -a;
      if (p == Exponent{0, 0}) v = -b;
      vals.push_back(FieldElem(v));
    }
    Rational q = Rational(sym_eval(inv.Delta, vals).rational_part() / w);
    if (!ratio) ratio = q;
    if (sgn(q) == 0 || q != *ratio) constant = false;
    ++samples;
  }
  c.expect(constant, "Delta / (4a^3 + 27b^2) constant over 20 Weierstrass samples (" + str(ratio) + ")");

  int want = std::max(1, (int)(200 * scale)), seen = 0, agree = 0, vanishing = 0, tries = 0;
  while (seen < want && tries < 100000) {
    ++tries;
    PlanePoly g = random_cubic(rng, 3, 2);
    NewtonSubdivision sub = subdivision_of(g);
    bool vertex = false;
    for (auto& cell : sub.cells)
      for (auto& v : cell.vertices) vertex = vertex || v == Exponent{1, 1};
    if (!vertex) continue;
    JValuation jv;
    try {
      jv = cubic_j_valuation(g);
    } catch (const DomainError&) {
      continue;
    }
    bool lhs = jv.val_Delta > jv.generic_val_Delta;
    bool rhs = false, skip = false;
    for (auto& ld : local_discriminants(g, false)) {
      if (!ld.disc) {
        skip = true;
        break;
      }
      if (!ld.disc->defective && ld.vanishes) rhs = true;
    }
    if (skip) continue;
    ++seen;
    if (lhs == rhs) ++agree;
    if (rhs) ++vanishing;
  }
  c.expect(seen == want && agree == seen, "initial discriminant equivalence " + std::to_string(agree) + "/" +
                                              std::to_string(seen) + " (" + std::to_string(vanishing) +
                                              " with a vanishing cell)");
  return c.r;
}

CheckResult check_factorization(double scale, unsigned seed) {
  Checker c(9, "factorization checker");
  std::mt19937_64 rng(seed + 9);
  int want = std::max(1, (int)(100 * scale)), done = 0, ok_exp = 0, ok_lambda = 0, ok_identity = 0;
  while (done < want) {
    int npts = 4 + (int)(rng() % 7);
    std::set<Exponent> pts;
    while ((int)pts.size() < npts) pts.insert(Exponent{(long)(rng() % 5), (long)(rng() % 5)});
    std::vector<Exponent> A(pts.begin(), pts.end());
    if (collinear(A)) continue;
    std::vector<Rational> h;
    for (size_t k = 0; k < A.size(); ++k) h.push_back(Rational((long)(rng() % 7)));
    FactorizationReport rep = factorization_check(regular_subdivision(A, h));
    ++done;
    if (rep.exponents_ok) ++ok_exp;
    if (rep.lambda) ++ok_lambda;
    if (rep.identity_ok && rep.identity_checks > 0) ++ok_identity;
  }
  auto frac = [&](int k) { return std::to_string(k) + "/" + std::to_string(want); };
  c.expect(ok_exp == want, "exponents nonnegative integers " + frac(ok_exp));
  c.expect(ok_lambda == want, "lambda integral " + frac(ok_lambda));
  c.expect(ok_identity == want, "lattice-index identity " + frac(ok_identity));
  return c.r;
}

CheckResult check_cycle_appears() {
  Checker c(10, "cycle appears after three modifications");
  PlanePoly g = corpus_polynomial("cycle-appears");
  CycleAppearsRun run = run_cycle_appears(g);
  UPoly want = umul(umul(UPoly{FieldElem(1), FieldElem(1)}, UPoly{FieldElem(1), FieldElem(1)}),
                    UPoly{FieldElem(4), FieldElem(1)});
  c.expect(run.feeding == want, "feeding condition is (A+1)^2 (A+4)");
  std::string roots;
  for (auto& [r, m] : run.roots) roots += " " + r.str() + "^" + std::to_string(m);
  c.note("roots" + roots);
  c.expect(run.chosen == FieldElem(-1), "selected root " + run.chosen.str() + " == -1");
  c.note("f1 = " + run.f1.str() + ", f2 = " + run.f2.str("z", "y"));
  for (auto& cand : run.candidates)
    c.note("f3 with " + cand.label + ": cycle " + str(cand.cycle) + (cand.certified ? ", certified" : ""));
  std::optional<Rational> len = run.curve.cycle ? std::optional<Rational>(run.curve.cycle->length) : std::nullopt;
  c.expect(run.accepted >= 0, "a third lifting unfolds the double edge");
  c.expect(len && *len == 10 && run.val_j && *len == -*run.val_j,
           "final cycle length " + str(len) + " == 10 == -val(j)");
  return c.r;
}

}  // namespace

bool same_generators(const std::vector<PlanePoly>& a, const std::vector<PlanePoly>& b) {
  if (a.size() != b.size()) return false;
  std::set<std::string> names;
  for (auto* side : {&a, &b})
    for (auto& p : *side)
      for (auto& v : p.vars()) names.insert(v);
  std::vector<std::string> vars(names.begin(), names.end());
  std::vector<PlanePoly> x, y;
  for (auto& p : a) x.push_back(in_vars(p, vars));
  for (auto& p : b) y.push_back(in_vars(p, vars));
  std::vector<bool> used(y.size(), false);
  for (auto& p : x) {
    bool found = false;
    for (size_t k = 0; k < y.size() && !found; ++k)
      if (!used[k] && (p == y[k] || p == y[k].scaled(Puiseux(-1)))) used[k] = found = true;
    if (!found) return false;
  }
  return true;
}

CheckResult run_acceptance_check(int id, double scale, unsigned seed) {
  try {
    switch (id) {
      case 1: return check_two_step();
      case 2: return check_dim4();
      case 3: return check_double_edge();
      case 4: return check_unfold_cycle();
      case 5: return check_section21();
      case 6: return check_unfold_impossible();
      case 7: return check_properties(scale, seed);
      case 8: return check_discriminants(scale, seed);
      case 9: return check_factorization(scale, seed);
      case 10: return check_cycle_appears();
    }
  } catch (const std::exception& ex) {
    CheckResult r;
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.details.push_back(std::string("FAIL exception: ") + ex.what());
    return r;
  }
  throw DomainError("no check " + std::to_string(id));
}

std::vector<CheckResult> run_acceptance_checks(double scale, unsigned seed) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= 10; ++id) out.push_back(run_acceptance_check(id, scale, seed));
  return out;
}

}  // namespace tropmod
