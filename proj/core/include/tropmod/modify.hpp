#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropmod/discrim.hpp"
#include "tropmod/tropcurve.hpp"

namespace tropmod {

// f = x + A t^{-l} (vertical), f = y + A t^{-l} (horizontal) or f = x + A t^{-l} y (skew).
// The induced substitution is x -> z - A t^{-l} (resp. y, resp. x -> z - A t^{-l} y).
struct Lifting {
  LineType type = LineType::Vertical;
  Rational level = 0;
  Puiseux A;
  std::string var = "z";

  Puiseux shift() const;  // A t^{-l}
  // Tropical line where the modification breaks: X = l, Y = l or X - Y = l.
  std::string line_string() const;
  // "x + 1/2", "y + 1/2*t^-4", "x + y" in the given base variables.
  std::string str(const std::string& xvar = "x", const std::string& yvar = "y") const;
};

// A coordinate u = a*x + b*y + c, where x, y are the base variables of the embedding.
struct Coordinate {
  std::string name;
  Puiseux a, b, c;
  std::string str(const std::vector<std::string>& base) const;
};

// The curve {g = 0} in the plane of the base variables, embedded by affine coordinates.
struct Embedding {
  PlanePoly g;
  std::vector<Coordinate> coords;

  static Embedding plane(const PlanePoly& g);
  int index(const std::string& name) const;  // -1 when absent
  std::vector<std::string> names() const;
  size_t dim() const { return coords.size(); }
};

// Coordinate f(u_i, u_j) for a lifting written in the coordinates i (x role) and j (y role).
Coordinate lifted_coordinate(const Embedding& e, int i, int j, const Lifting& f);

// Elimination of all coordinates but u_i, u_j. Valid when the pair is independent with a
// monomial determinant; the other coordinates become u_k = alpha u_i + beta u_j + gamma.
struct Chart {
  int i = 0, j = 1;
  PlanePoly g;  // in (name_i, name_j)
  AffineMap inverse;  // base x, y as affine forms in (u_i, u_j)
  std::vector<int> others;
  std::vector<std::array<Puiseux, 3>> forms;
};
std::optional<Chart> make_chart(const Embedding& e, int i, int j);

// Tropicalization of the embedded curve in R^n, glued from all valid charts.
struct GluedCurve {
  TropicalCurve curve;
  std::vector<std::pair<int, int>> charts;
  bool consistent = true;     // charts agree on every shared piece
  bool balanced = false;
  bool pushforward_ok = false;
  std::vector<std::string> failures;
  std::optional<CycleDescriptor> cycle;
};
GluedCurve glue(const Embedding& e);

// Planar push-forward of a curve in R^n to coordinates (i, j).
TropicalCurve project(const TropicalCurve& c, int i, int j);
// Equality of weighted planar complexes, ignoring subdivision of edges.
bool same_weighted_complex(const TropicalCurve& a, const TropicalCurve& b);

// Initial form at a point W of the glued curve, read in a chart where the point is visible and
// no edge of its star is contracted, with the factors of dropped coordinates divided out.
struct LocalForm {
  int i = -1, j = -1;
  ResiduePoly h;
};
std::optional<LocalForm> local_form(const Embedding& e, const GluedCurve& glued, int vertex);

struct GluingSegment {
  std::optional<Rational> lo, hi;  // along the gluing line; nullopt is infinite
  long mult = 0;                   // 0 = phantom
};

struct ReembeddedCurve {
  Lifting lifting;
  Embedding embedding;  // x, y and the new coordinate
  PlanePoly g, gt;      // gt in (z, y) for vertical and skew lines, (x, z) for horizontal ones
  TropicalCurve chart1, chart2;
  GluedCurve glued;
  // The gluing line is parametrized by Y (vertical, skew) or X (horizontal).
  std::vector<Rational> gluing_vertices;
  std::vector<GluingSegment> gluing_segments;
  std::string classification;  // generic, decontraction, unfolding or cycle-broken
  std::optional<Rational> cycle_before, cycle_after;
};

ReembeddedCurve reembed(const PlanePoly& g, const Lifting& f);
ReembeddedCurve reembed_skew(const PlanePoly& g, const Lifting& f);

// Special lifting at the vertex dual to the given cell of the subdivision of g.
Lifting find_special_lifting(const PlanePoly& g, int cell, LineType type, const std::string& var = "z");
// Lifting unfolding a bounded vertical or horizontal edge of Trop(g) of multiplicity >= 2.
Lifting fat_edge_lifting(const PlanePoly& g, int edge, const std::string& var = "z");

// Cycle contained in {X >= l} (vertical), {Y >= l} (horizontal) or {X - Y >= l} (skew).
bool visible_side(const TropicalCurve& c, const CycleDescriptor& cycle, LineType type, const Rational& l);

// Ordered liftings applied to a plane curve; each acts on two existing coordinates.
struct ChartStack {
  static constexpr size_t max_depth = 3;
  Embedding embedding;
  struct Step {
    Lifting lifting;
    std::string x, y;  // coordinates playing the roles of x and y
  };
  std::vector<Step> steps;

  explicit ChartStack(const PlanePoly& g) : embedding(Embedding::plane(g)) {}
  // Throws Unsupported beyond max_depth.
  void push(const Lifting& f, const std::string& x, const std::string& y);
};

TropicalCurve multi_chart_project(const ChartStack& stack, const std::string& u, const std::string& v);
PlanePoly chart_polynomial(const Embedding& e, const std::string& u, const std::string& v);

}  // namespace tropmod
