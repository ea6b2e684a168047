#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/polyhedral.hpp"

namespace tropmod {

using QPoint = std::vector<Rational>;
using IVec = std::vector<long>;

struct CurveVertex {
  QPoint pos;
  int cell = -1;       // dual 2-cell (planar curves)
  Rational mult = 0;   // normalized area of the dual cell (planar curves)
};

struct CurveEdge {
  int a = -1;
  int b = -1;          // -1 for a ray
  IVec dir;            // primitive, pointing from a to b (or along the ray)
  long mult = 1;
  Rational length = 0; // lattice length; 0 for rays
  int dual = -1;       // dual subdivision edge (planar curves)
  bool is_ray() const { return b < 0; }
};

// Weighted rational 1-complex in Q^n; planar curves carry dual pointers.
struct TropicalCurve {
  int dim = 2;
  std::vector<std::string> coords{"X", "Y"};
  std::vector<CurveVertex> vertices;
  std::vector<CurveEdge> edges;
  bool degenerate = false;
  NewtonSubdivision subdivision;  // planar curves only

  std::vector<int> star(int v) const;
  // Outgoing primitive direction of edge e at vertex v.
  IVec outgoing(int e, int v) const;
};

TropicalCurve dualize(const NewtonSubdivision& sub);
TropicalCurve tropicalize(const PlanePoly& g);

struct BalanceReport {
  bool ok = true;
  int vertex = -1;
  IVec defect;
};
BalanceReport check_balancing(const TropicalCurve& c);

struct CycleDescriptor {
  std::vector<int> edges;     // in walk order
  std::vector<int> vertices;  // vertices[i] is the start of edges[i]
  Rational length = 0;
};

// Fundamental cycles of the bounded part with positive multiplicities.
std::vector<CycleDescriptor> find_cycles(const TropicalCurve& c);
// The unique cycle; throws if there are several.
std::optional<CycleDescriptor> find_cycle(const TropicalCurve& c);

struct ReducibleWitness {
  int vertex = -1;
  std::vector<int> star;        // edge indices
  std::vector<long> sub_mult;   // balanced proper sub-multiplicities
};
std::optional<ReducibleWitness> local_reducibility(const TropicalCurve& c, int v);
std::vector<ReducibleWitness> locally_reducible_vertices(const TropicalCurve& c);
// Same test on an abstract star (directions with multiplicities).
std::optional<std::vector<long>> reducible_star(const std::vector<IVec>& dirs, const std::vector<long>& mults);

enum class LineType { Vertical, Horizontal, Skew };
std::string to_string(LineType t);

struct LineClass {
  LineType type;
  // Values of the level functional on the two bases (lower, upper) and their lattice lengths.
  long low_level = 0;
  long low_length = 0;
  long high_length = 0;
};

// Line families traversing the vertex dual to a cell of trapezoid type (width 1, both bases of length >= 1).
std::vector<LineClass> classify_cubic_cycle_vertex(const MarkedCell& cell);

// Lattice functional whose level sets are the bases for each line type.
long level_functional(LineType t, const Exponent& p);
// Position along a base (the univariate exponent).
long along_functional(LineType t, const Exponent& p);

}  // namespace tropmod
