#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/repair.hpp"

namespace tropmod {

// Line-oriented text description of one or more tropical curves (planar or in R^n).
//
//   tropmod-curve 1
//   meta <key> <value...>
//   section <name>
//   coords X Y
//   vertex <coords...> mult <q> cell <k>
//   edge <a> <b|ray> dir <d...> mult <m> length <q>
//   cycle length <q> edges <e...>
//   line X=0
//   end
struct CurveSection {
  std::string name;
  std::vector<std::string> coords;
  struct Vertex {
    QPoint pos;
    Rational mult = 0;
    int cell = -1;
    bool operator==(const Vertex&) const = default;
  };
  struct Edge {
    int a = -1, b = -1;  // b = -1 for rays
    IVec dir;
    long mult = 1;
    Rational length = 0;
    bool operator==(const Edge&) const = default;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::optional<Rational> cycle_length;
  std::vector<int> cycle_edges;
  std::vector<std::string> lines;  // modification lines, drawn dashed

  bool operator==(const CurveSection&) const = default;
};

struct CurveDocument {
  static constexpr int current_version = 1;
  int version = current_version;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<CurveSection> sections;

  bool operator==(const CurveDocument&) const = default;
  const std::string* find_meta(const std::string& key) const;
};

CurveSection section_of(const TropicalCurve& c, const std::string& name);
TropicalCurve curve_of(const CurveSection& s);

CurveDocument document_of(const PlanePoly& g, const TropicalCurve& c);
CurveDocument document_of(const ReembeddedCurve& r);
CurveDocument document_of(const RepairResult& r);

std::string print_document(const CurveDocument& d);
// Throws ParseError with the line number as position.
CurveDocument parse_document(const std::string& text);

// Standalone SVG, one panel per section, drawn in its first two coordinates.
std::string render_svg(const CurveDocument& d);

}  // namespace tropmod
