#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "tropmod/corpus.hpp"
#include "tropmod/document.hpp"
#include "tropmod/textio.hpp"

using namespace tropmod;

namespace {

struct Options {
  std::string poly;
  std::string adjoin;
  std::string format = "text";
  std::string out;
  std::string chart;
  std::string line;
  std::string lifting;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open " + path + " for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

bool structured(const Options& o) { return o.format == "structured"; }

PlanePoly read_poly(const Options& o) {
  std::string text = o.poly;
  if (text.rfind("corpus:", 0) == 0) return corpus_polynomial(text.substr(7));
  ParseOptions po;
  if (!o.adjoin.empty()) po.ext = parse_adjoin(o.adjoin);
  return parse_poly(text, po);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_curve(std::ostream& os, const TropicalCurve& c) {
  for (size_t v = 0; v < c.vertices.size(); ++v) {
    os << "  v" << v << " (";
    for (size_t k = 0; k < c.vertices[v].pos.size(); ++k) os << (k ? ", " : "") << to_string(c.vertices[v].pos[k]);
    os << ")\n";
  }
  for (size_t k = 0; k < c.edges.size(); ++k) {
    const auto& e = c.edges[k];
    os << "  e" << k << " v" << e.a << " -> " << (e.is_ray() ? std::string("ray") : "v" + std::to_string(e.b))
       << " dir (";
    for (size_t i = 0; i < e.dir.size(); ++i) os << (i ? ", " : "") << e.dir[i];
    os << ") mult " << e.mult;
    if (!e.is_ray()) os << " length " << to_string(e.length);
    os << "\n";
  }
  auto cycles = find_cycles(c);
  if (cycles.empty()) os << "  no cycle\n";
  for (auto& cy : cycles) os << "  cycle length " << to_string(cy.length) << "\n";
}

std::optional<std::pair<std::string, std::string>> chart_pair(const Options& o) {
  if (o.chart.empty()) return std::nullopt;
  auto comma = o.chart.find(',');
  if (comma == std::string::npos) throw ParseError("--chart expects u,v", 0);
  return std::make_pair(o.chart.substr(0, comma), o.chart.substr(comma + 1));
}

// "X=l", "Y=l" or "X-Y=l".
std::pair<LineType, Rational> parse_line(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos) throw ParseError("--line expects X=l, Y=l or X-Y=l", 0);
  std::string lhs = s.substr(0, eq);
  Rational l;
  try {
    l = parse_rational(s.substr(eq + 1));
  } catch (const DomainError&) {
    throw ParseError("bad level in --line", eq + 1);
  }
  if (lhs == "X") return {LineType::Vertical, l};
  if (lhs == "Y") return {LineType::Horizontal, l};
  if (lhs == "X-Y") return {LineType::Skew, l};
  throw ParseError("--line expects X=l, Y=l or X-Y=l", 0);
}

// x + c, y + c or x + c*y in the variables of g.
Lifting parse_lifting(const std::string& text, const PlanePoly& g, const ExtensionHandle& ext) {
  ParseOptions po;
  po.vars = g.vars();
  po.ext = ext;
  PlanePoly f = parse_poly(text, po);
  Puiseux cx = f.coefficient(Exponent{1, 0}), cy = f.coefficient(Exponent{0, 1}), c0 = f.coefficient(Exponent{0, 0});
  for (auto& [e, c] : f.terms())
    if (e[0] + e[1] > 1) throw DomainError("lifting must be linear");
  Lifting out;
  Puiseux shift;
  if (cx == Puiseux(1) && cy.is_zero()) {
    out.type = LineType::Vertical;
    shift = c0;
  } else if (cx.is_zero() && cy == Puiseux(1)) {
    out.type = LineType::Horizontal;
    shift = c0;
  } else if (cx == Puiseux(1) && !cy.is_zero() && c0.is_zero()) {
    out.type = LineType::Skew;
    shift = cy;
  } else {
    throw DomainError("lifting must be x + c, y + c or x + c*y");
  }
  if (shift.is_zero()) throw DomainError("lifting has zero shift");
  out.level = -shift.valuation();
  out.A = shift.shifted(-shift.valuation());
  return out;
}

Lifting lifting_from_line(const PlanePoly& g, LineType type, const Rational& level) {
  TropicalCurve c = tropicalize(g);
  for (size_t v = 0; v < c.vertices.size(); ++v) {
    const auto& p = c.vertices[v].pos;
    Rational val = type == LineType::Vertical ? p[0] : type == LineType::Horizontal ? p[1] : p[0] - p[1];
    if (val != level) continue;
    try {
      return find_special_lifting(g, c.vertices[v].cell, type);
    } catch (const DomainError&) {
    }
  }
  throw DomainError("no locally reducible vertex with a special lifting on the line");
}

int cmd_trop(const Options& o) {
  PlanePoly g = read_poly(o);
  TropicalCurve c = tropicalize(g);
  Output out(o.out);
  if (structured(o)) {
    out.os() << print_document(document_of(g, c));
  } else {
    out.os() << "Trop(" << to_string(g) << ")\n";
    print_curve(out.os(), c);
  }
  return 0;
}

int cmd_subdivide(const Options& o) {
  PlanePoly g = read_poly(o);
  NewtonSubdivision sub = subdivision_of(g);
  Output out(o.out);
  auto pt = [](const Exponent& e) { return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")"; };
  if (structured(o)) out.os() << "tropmod-subdivision 1\n";
  for (size_t k = 0; k < sub.cells.size(); ++k) {
    const auto& c = sub.cells[k];
    out.os() << (structured(o) ? "cell " : "cell ") << k << " vertices";
    for (auto& v : c.vertices) out.os() << " " << pt(v);
    out.os() << " marked";
    for (auto& v : c.marked) out.os() << " " << pt(v);
    out.os() << " area2 " << to_string(twice_area(c.vertices)) << "\n";
  }
  for (size_t k = 0; k < sub.edges.size(); ++k) {
    const auto& e = sub.edges[k];
    out.os() << "edge " << k << " " << pt(e.a) << " " << pt(e.b) << " cells " << e.cell << " " << e.other << "\n";
  }
  return 0;
}

int cmd_discriminants(const Options& o) {
  PlanePoly g = read_poly(o);
  Output out(o.out);
  if (structured(o)) out.os() << "tropmod-discriminants 1\n";
  for (auto& ld : local_discriminants(g, true)) {
    out.os() << (ld.is_edge ? "edge " : "cell ") << ld.index << " points";
    for (auto& p : ld.points) out.os() << " " << coefficient_name(p);
    if (!ld.disc) {
      out.os() << " unsupported " << ld.unsupported << "\n";
      continue;
    }
    out.os() << " shape " << ld.disc->shape;
    if (ld.disc->defective) out.os() << " defective";
    else out.os() << " disc " << to_string(ld.disc->poly);
    out.os() << " vanishes " << (ld.vanishes ? "true" : "false") << "\n";
  }
  try {
    auto jv = cubic_j_valuation(g);
    out.os() << "val_j " << (jv.val ? to_string(*jv.val) : std::string("undetermined (") + jv.status + ")")
             << (jv.generic ? " generic" : " non-generic") << "\n";
  } catch (const DomainError& e) {
    out.os() << "val_j none (" << e.what() << ")\n";
  }
  return 0;
}

int cmd_reembed(const Options& o) {
  PlanePoly g = read_poly(o);
  ExtensionHandle ext = o.adjoin.empty() ? nullptr : parse_adjoin(o.adjoin);
  Lifting f;
  if (!o.lifting.empty()) {
    f = parse_lifting(o.lifting, g, ext);
    if (!o.line.empty()) {
      auto [type, level] = parse_line(o.line);
      if (type != f.type || level != f.level)
        throw DomainError("lifting breaks along " + f.line_string() + ", not " + o.line);
    }
  } else if (!o.line.empty()) {
    auto [type, level] = parse_line(o.line);
    f = lifting_from_line(g, type, level);
  } else {
    throw DomainError("reembed needs --lifting or --line");
  }
  ReembeddedCurve r = reembed(g, f);
  Output out(o.out);
  if (auto pair = chart_pair(o)) {
    ChartStack st(g);
    st.push(f, g.vars()[0], g.vars()[1]);
    TropicalCurve c = multi_chart_project(st, pair->first, pair->second);
    if (structured(o)) {
      CurveDocument d;
      d.meta.push_back({"lifting", f.var + " = " + f.str(g.vars()[0], g.vars()[1])});
      d.sections.push_back(section_of(c, "chart " + pair->first + "," + pair->second));
      out.os() << print_document(d);
    } else {
      out.os() << "projection to (" << pair->first << ", " << pair->second << ")\n";
      print_curve(out.os(), c);
    }
    return 0;
  }
  if (structured(o)) {
    out.os() << print_document(document_of(r));
    return 0;
  }
  out.os() << "lifting " << f.var << " = " << f.str(g.vars()[0], g.vars()[1]) << " along " << f.line_string() << "\n";
  out.os() << "modified " << to_string(r.gt) << "\n";
  out.os() << "classification " << r.classification << "\n";
  out.os() << "cycle " << (r.cycle_before ? to_string(*r.cycle_before) : "none") << " -> "
           << (r.cycle_after ? to_string(*r.cycle_after) : "none") << "\n";
  out.os() << "gluing vertices";
  for (auto& v : r.gluing_vertices) out.os() << " " << to_string(v);
  out.os() << "\nglued curve (consistent " << r.glued.consistent << ", balanced " << r.glued.balanced
           << ", push-forward " << r.glued.pushforward_ok << ")\n";
  print_curve(out.os(), r.glued.curve);
  return 0;
}

void print_repair(std::ostream& os, const RepairResult& r) {
  os << "status " << to_string(r.status) << "\n";
  if (!r.message.empty()) os << "message " << r.message << "\n";
  if (r.val_j) os << "val_j " << to_string(*r.val_j) << "\n";
  for (auto& s : r.trace) {
    os << "step " << s.kind << " " << s.coordinate << " = " << s.lifting_text;
    if (s.cycle_length) os << "  cycle " << to_string(*s.cycle_length);
    os << "\n";
  }
  for (auto& g : r.generators) os << "generator " << to_string(g) << "\n";
  if (r.curve.cycle) os << "cycle length " << to_string(r.curve.cycle->length) << "\n";
  os << "certified " << (r.certified ? "true" : "false") << "\n";
}

int cmd_repair_like(const Options& o, bool unfold) {
  PlanePoly g = read_poly(o);
  RepairResult r = unfold ? unfold_to_cycle(g) : repair_elliptic(g);
  Output out(o.out);
  if (auto pair = chart_pair(o)) {
    TropicalCurve c = tropicalize(chart_polynomial(r.embedding, pair->first, pair->second));
    CurveDocument d = document_of(r);
    d.sections = {section_of(c, "chart " + pair->first + "," + pair->second)};
    if (structured(o)) out.os() << print_document(d);
    else {
      print_repair(out.os(), r);
      out.os() << "projection to (" << pair->first << ", " << pair->second << ")\n";
      print_curve(out.os(), c);
    }
    return 0;
  }
  if (structured(o)) out.os() << print_document(document_of(r));
  else print_repair(out.os(), r);
  return 0;
}

int cmd_corpus(bool list, double scale, int jobs, bool details, const Options& o) {
  Output out(o.out);
  if (list) {
    for (auto& e : example_corpus()) out.os() << e.name << "\t" << e.note << "\n\t" << e.poly << "\n";
    return 0;
  }
  std::vector<CheckResult> results(10);
  if (jobs <= 1) {
    results = run_acceptance_checks(scale);
  } else {
    std::vector<std::future<CheckResult>> fut;
    for (int id = 1; id <= 10; ++id) fut.push_back(std::async(std::launch::async, [id, scale] {
      return run_acceptance_check(id, scale);
    }));
    for (int k = 0; k < 10; ++k) results[k] = fut[k].get();
  }
  int failed = 0;
  for (auto& r : results) {
    out.os() << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.name << "\n";
    if (details || !r.pass)
      for (auto& d : r.details) out.os() << "      " << d << "\n";
    failed += !r.pass;
  }
  out.os() << (10 - failed) << "/10 checks pass\n";
  return failed ? 1 : 0;
}

int cmd_render(const std::string& path, const Options& o) {
  CurveDocument d = parse_document(read_text(path));
  Output out(o.out);
  out.os() << render_svg(d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical plane curves, linear re-embeddings and repair of elliptic cycles"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool poly) {
    if (poly) sub->add_option("poly", o.poly, "polynomial, or corpus:NAME")->required();
    sub->add_option("--adjoin", o.adjoin, "quadratic generator, e.g. \"u: u^2-u+1\"");
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", o.out, "output file");
  };
  auto* trop = app.add_subcommand("trop", "tropical curve of a polynomial");
  common(trop, true);
  auto* subdivide = app.add_subcommand("subdivide", "regular subdivision of the Newton polygon");
  common(subdivide, true);
  auto* discs = app.add_subcommand("discriminants", "local discriminants and val(j)");
  common(discs, true);
  auto* reemb = app.add_subcommand("reembed", "linear tropical modification");
  common(reemb, true);
  reemb->add_option("--line", o.line, "X=l, Y=l or X-Y=l");
  reemb->add_option("--lifting", o.lifting, "x + c, y + c or x + c*y");
  reemb->add_option("--chart", o.chart, "project to the coordinate pair u,v");
  auto* unfold = app.add_subcommand("unfold", "unfold a fat edge into a cycle");
  common(unfold, true);
  unfold->add_option("--chart", o.chart, "project to the coordinate pair u,v");
  auto* repair = app.add_subcommand("repair", "repair the cycle of an elliptic cubic");
  common(repair, true);
  repair->add_option("--chart", o.chart, "project to the coordinate pair u,v");
  auto* corpus = app.add_subcommand("corpus", "run the example checks");
  common(corpus, false);
  bool list = false, details = false;
  double scale = 1.0;
  int jobs = 1;
  corpus->add_flag("--list", list, "list the examples");
  corpus->add_flag("--details", details, "print every check line");
  corpus->add_option("--scale", scale, "size factor for the randomized suites");
  corpus->add_option("--jobs", jobs, "checks evaluated in parallel");
  auto* render = app.add_subcommand("render", "SVG plot of a curve document");
  common(render, false);
  std::string doc_path;
  render->add_option("document", doc_path, "curve document file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  auto fail = [&](const char* kind, const std::string& msg, int code) {
    if (o.format == "structured") std::cerr << "error " << kind << " " << msg << "\n";
    else std::cerr << kind << " error: " << msg << "\n";
    return code;
  };
  try {
    if (trop->parsed()) return cmd_trop(o);
    if (subdivide->parsed()) return cmd_subdivide(o);
    if (discs->parsed()) return cmd_discriminants(o);
    if (reemb->parsed()) return cmd_reembed(o);
    if (unfold->parsed()) return cmd_repair_like(o, true);
    if (repair->parsed()) return cmd_repair_like(o, false);
    if (corpus->parsed()) return cmd_corpus(list, scale, jobs, details, o);
    if (render->parsed()) return cmd_render(doc_path, o);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), 2);
  } catch (const Unsupported& e) {
    return fail("unsupported", e.what(), 1);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), 1);
  }
  return 0;
}
