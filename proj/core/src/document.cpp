#include "tropmod/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tropmod/textio.hpp"

namespace tropmod {

const std::string* CurveDocument::find_meta(const std::string& key) const {
  for (auto& [k, v] : meta)
    if (k == key) return &v;
  return nullptr;
}

CurveSection section_of(const TropicalCurve& c, const std::string& name) {
  CurveSection s;
  s.name = name;
  s.coords = c.coords;
  for (auto& v : c.vertices) s.vertices.push_back({v.pos, v.mult, v.cell});
  for (auto& e : c.edges) s.edges.push_back({e.a, e.b, e.dir, e.mult, e.length});
  auto cycles = find_cycles(c);
  if (cycles.size() == 1) {
    s.cycle_length = cycles[0].length;
    s.cycle_edges = cycles[0].edges;
  }
  return s;
}

TropicalCurve curve_of(const CurveSection& s) {
  TropicalCurve c;
  c.dim = (int)s.coords.size();
  c.coords = s.coords;
  for (auto& v : s.vertices) c.vertices.push_back({v.pos, v.cell, v.mult});
  for (auto& e : s.edges) {
    CurveEdge ce;
    ce.a = e.a;
    ce.b = e.b;
    ce.dir = e.dir;
    ce.mult = e.mult;
    ce.length = e.length;
    c.edges.push_back(ce);
  }
  return c;
}

namespace {

std::string line_of(const Lifting& f) { return f.line_string(); }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

CurveDocument document_of(const PlanePoly& g, const TropicalCurve& c) {
  CurveDocument d;
  d.meta.push_back({"polynomial", to_string(g)});
  d.sections.push_back(section_of(c, "planar"));
  return d;
}

CurveDocument document_of(const ReembeddedCurve& r) {
  CurveDocument d;
  d.meta.push_back({"polynomial", to_string(r.g)});
  d.meta.push_back({"lifting", r.lifting.var + " = " + r.lifting.str()});
  d.meta.push_back({"line", line_of(r.lifting)});
  d.meta.push_back({"modified", to_string(r.gt)});
  d.meta.push_back({"classification", r.classification});
  d.meta.push_back({"consistent", r.glued.consistent ? "true" : "false"});
  d.meta.push_back({"balanced", r.glued.balanced ? "true" : "false"});
  d.meta.push_back({"pushforward", r.glued.pushforward_ok ? "true" : "false"});
  CurveSection s1 = section_of(r.chart1, "chart1");
  s1.lines.push_back(line_of(r.lifting));
  d.sections.push_back(s1);
  d.sections.push_back(section_of(r.chart2, "chart2"));
  d.sections.push_back(section_of(r.glued.curve, "glued"));
  return d;
}

CurveDocument document_of(const RepairResult& r) {
  CurveDocument d;
  d.meta.push_back({"status", to_string(r.status)});
  if (!r.message.empty()) d.meta.push_back({"message", r.message});
  if (r.val_j) d.meta.push_back({"val_j", to_string(*r.val_j)});
  d.meta.push_back({"certified", r.certified ? "true" : "false"});
  for (size_t k = 0; k < r.trace.size(); ++k) {
    const auto& s = r.trace[k];
    std::string v = s.kind + " " + s.coordinate + " = " + s.lifting_text;
    if (s.cycle_length) v += " ; cycle " + to_string(*s.cycle_length);
    d.meta.push_back({"step", v});
  }
  for (auto& g : r.generators) d.meta.push_back({"generator", to_string(g)});
  if (!r.embedding.coords.empty()) d.sections.push_back(section_of(r.curve.curve, "repaired"));
  if (!r.chart.first.empty()) {
    PlanePoly gp = chart_polynomial(r.embedding, r.chart.first, r.chart.second);
    CurveSection s = section_of(tropicalize(gp), "chart " + r.chart.first + "," + r.chart.second);
    d.sections.push_back(s);
  }
  return d;
}

std::string print_document(const CurveDocument& d) {
  std::ostringstream os;
  os << "tropmod-curve " << d.version << "\n";
  for (auto& [k, v] : d.meta) os << "meta " << k << " " << v << "\n";
  for (auto& s : d.sections) {
    os << "section " << s.name << "\n";
    os << "coords " << join(s.coords, " ") << "\n";
    for (auto& v : s.vertices) {
      os << "vertex";
      for (auto& q : v.pos) os << " " << to_string(q);
      os << " mult " << to_string(v.mult) << " cell " << v.cell << "\n";
    }
    for (auto& e : s.edges) {
      os << "edge " << e.a << " " << (e.b < 0 ? std::string("ray") : std::to_string(e.b)) << " dir";
      for (auto x : e.dir) os << " " << x;
      os << " mult " << e.mult << " length " << to_string(e.length) << "\n";
    }
    if (s.cycle_length) {
      os << "cycle length " << to_string(*s.cycle_length) << " edges";
      for (int e : s.cycle_edges) os << " " << e;
      os << "\n";
    }
    for (auto& l : s.lines) os << "line " << l << "\n";
    os << "end\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> w;
  std::string t;
  while (is >> t) w.push_back(t);
  return w;
}

long to_long(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", lineno);
  }
}

Rational to_rational(const std::string& s, size_t lineno) {
  try {
    return parse_rational(s);
  } catch (const DomainError&) {
    throw ParseError("expected a rational, got '" + s + "'", lineno);
  }
}

}  // namespace

CurveDocument parse_document(const std::string& text) {
  CurveDocument d;
  std::istringstream is(text);
  std::string line;
  size_t lineno = 0;
  bool header = false;
  CurveSection* cur = nullptr;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto w = words(line);
    if (w.empty()) continue;
    if (!header) {
      if (w.size() != 2 || w[0] != "tropmod-curve") throw ParseError("missing tropmod-curve header", lineno);
      d.version = (int)to_long(w[1], lineno);
      if (d.version != CurveDocument::current_version)
        throw ParseError("unsupported document version " + w[1], lineno);
      header = true;
      continue;
    }
    const std::string& key = w[0];
    if (key == "meta") {
      if (w.size() < 2) throw ParseError("meta without key", lineno);
      size_t start = line.find(w[1], line.find("meta") + 4) + w[1].size();
      std::string value = start < line.size() ? line.substr(start + 1) : "";
      d.meta.push_back({w[1], value});
    } else if (key == "section") {
      if (cur) throw ParseError("section without end", lineno);
      d.sections.emplace_back();
      cur = &d.sections.back();
      cur->name = line.substr(8);
    } else if (!cur) {
      throw ParseError("'" + key + "' outside a section", lineno);
    } else if (key == "coords") {
      cur->coords.assign(w.begin() + 1, w.end());
    } else if (key == "vertex") {
      size_t n = cur->coords.size();
      if (w.size() != n + 5 || w[n + 1] != "mult" || w[n + 3] != "cell") throw ParseError("malformed vertex", lineno);
      CurveSection::Vertex v;
      for (size_t k = 0; k < n; ++k) v.pos.push_back(to_rational(w[1 + k], lineno));
      v.mult = to_rational(w[n + 2], lineno);
      v.cell = (int)to_long(w[n + 4], lineno);
      cur->vertices.push_back(v);
    } else if (key == "edge") {
      size_t n = cur->coords.size();
      if (w.size() != n + 8 || w[3] != "dir" || w[n + 4] != "mult" || w[n + 6] != "length")
        throw ParseError("malformed edge", lineno);
      CurveSection::Edge e;
      e.a = (int)to_long(w[1], lineno);
      e.b = w[2] == "ray" ? -1 : (int)to_long(w[2], lineno);
      for (size_t k = 0; k < n; ++k) e.dir.push_back(to_long(w[4 + k], lineno));
      e.mult = to_long(w[n + 5], lineno);
      e.length = to_rational(w[n + 7], lineno);
      int nv = (int)cur->vertices.size();
      if (e.a < 0 || e.a >= nv || e.b >= nv) throw ParseError("edge endpoint out of range", lineno);
      cur->edges.push_back(e);
    } else if (key == "cycle") {
      if (w.size() < 4 || w[1] != "length" || w[3] != "edges") throw ParseError("malformed cycle", lineno);
      cur->cycle_length = to_rational(w[2], lineno);
      for (size_t k = 4; k < w.size(); ++k) cur->cycle_edges.push_back((int)to_long(w[k], lineno));
    } else if (key == "line") {
      if (w.size() != 2) throw ParseError("malformed line", lineno);
      cur->lines.push_back(w[1]);
    } else if (key == "end") {
      cur = nullptr;
    } else {
      throw ParseError("unknown record '" + key + "'", lineno);
    }
  }
  if (!header) throw ParseError("empty document", lineno);
  if (cur) throw ParseError("section without end", lineno);
  return d;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Panel {
  double x0, y0, size;
  double lo[2], hi[2];
  double sx(double x) const { return x0 + (x - lo[0]) / (hi[0] - lo[0]) * size; }
  double sy(double y) const { return y0 + size - (y - lo[1]) / (hi[1] - lo[1]) * size; }
};

}  // namespace

std::string render_svg(const CurveDocument& d) {
  const double size = 360, pad = 40;
  int n = std::max<int>(1, (int)d.sections.size());
  std::ostringstream os;
  double width = n * (size + pad) + pad, height = size + 2 * pad + 20;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int k = 0; k < (int)d.sections.size(); ++k) {
    const auto& s = d.sections[k];
    Panel p{pad + k * (size + pad), pad + 20, size, {0, 0}, {0, 0}};
    bool first = true;
    for (auto& v : s.vertices) {
      for (int a = 0; a < 2; ++a) {
        double x = a < (int)v.pos.size() ? v.pos[a].get_d() : 0;
        if (first || x < p.lo[a]) p.lo[a] = x;
        if (first || x > p.hi[a]) p.hi[a] = x;
      }
      first = false;
    }
    double span = std::max({p.hi[0] - p.lo[0], p.hi[1] - p.lo[1], 1.0});
    for (int a = 0; a < 2; ++a) {
      double mid = (p.lo[a] + p.hi[a]) / 2;
      p.lo[a] = mid - 0.75 * span;
      p.hi[a] = mid + 0.75 * span;
    }
    os << "<g>\n<text x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0 - 8) << "\" font-family=\"sans-serif\" font-size=\"14\">"
       << escape(s.name) << (s.coords.size() >= 2 ? " (" + s.coords[0] + ", " + s.coords[1] + ")" : "") << "</text>\n";
    os << "<rect x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0) << "\" width=\"" << fmt(size) << "\" height=\""
       << fmt(size) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    for (auto& l : s.lines) {
      auto eq = l.find('=');
      if (eq == std::string::npos) continue;
      double lv = parse_rational(l.substr(eq + 1)).get_d();
      std::string lhs = l.substr(0, eq);
      double x1, y1, x2, y2;
      if (lhs == "X") {
        x1 = x2 = lv;
        y1 = p.lo[1];
        y2 = p.hi[1];
      } else if (lhs == "Y") {
        y1 = y2 = lv;
        x1 = p.lo[0];
        x2 = p.hi[0];
      } else {
        x1 = p.lo[0];
        y1 = x1 - lv;
        x2 = p.hi[0];
        y2 = x2 - lv;
      }
      os << "<line x1=\"" << fmt(p.sx(x1)) << "\" y1=\"" << fmt(p.sy(y1)) << "\" x2=\"" << fmt(p.sx(x2))
         << "\" y2=\"" << fmt(p.sy(y2)) << "\" stroke=\"#c00\" stroke-dasharray=\"6,4\"/>\n";
    }
    std::vector<bool> on_cycle(s.edges.size(), false);
    for (int e : s.cycle_edges)
      if (e >= 0 && e < (int)on_cycle.size()) on_cycle[e] = true;
    for (size_t ei = 0; ei < s.edges.size(); ++ei) {
      const auto& e = s.edges[ei];
      const auto& a = s.vertices[e.a].pos;
      double ax = a[0].get_d(), ay = a.size() > 1 ? a[1].get_d() : 0, bx, by;
      double dx = e.dir[0], dy = e.dir.size() > 1 ? e.dir[1] : 0;
      if (e.b >= 0) {
        const auto& b = s.vertices[e.b].pos;
        bx = b[0].get_d();
        by = b.size() > 1 ? b[1].get_d() : 0;
      } else {
        if (dx == 0 && dy == 0) continue;
        double t = 1e9;
        if (dx > 0) t = std::min(t, (p.hi[0] - ax) / dx);
        if (dx < 0) t = std::min(t, (p.lo[0] - ax) / dx);
        if (dy > 0) t = std::min(t, (p.hi[1] - ay) / dy);
        if (dy < 0) t = std::min(t, (p.lo[1] - ay) / dy);
        bx = ax + t * dx;
        by = ay + t * dy;
      }
      if (ax == bx && ay == by) continue;
      os << "<line x1=\"" << fmt(p.sx(ax)) << "\" y1=\"" << fmt(p.sy(ay)) << "\" x2=\"" << fmt(p.sx(bx))
         << "\" y2=\"" << fmt(p.sy(by)) << "\" stroke=\"" << (on_cycle[ei] ? "#06c" : "black")
         << "\" stroke-width=\"" << (e.mult > 1 ? "3" : "1.5") << "\"/>\n";
      if (e.mult > 1) {
        double mx = (ax + bx) / 2, my = (ay + by) / 2;
        if (e.b < 0) {
          mx = ax + (bx - ax) * 0.3;
          my = ay + (by - ay) * 0.3;
        }
        os << "<text x=\"" << fmt(p.sx(mx) + 4) << "\" y=\"" << fmt(p.sy(my) - 4)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << e.mult << "</text>\n";
      }
    }
    for (auto& v : s.vertices) {
      double x = v.pos[0].get_d(), y = v.pos.size() > 1 ? v.pos[1].get_d() : 0;
      os << "<circle cx=\"" << fmt(p.sx(x)) << "\" cy=\"" << fmt(p.sy(y)) << "\" r=\"2.5\"/>\n";
    }
    if (s.cycle_length)
      os << "<text x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0 + size + 18)
         << "\" font-family=\"sans-serif\" font-size=\"12\">cycle length " << to_string(*s.cycle_length)
         << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tropmod
