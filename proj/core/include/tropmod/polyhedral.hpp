#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropmod/mpoly.hpp"

namespace tropmod {

// Planar lattice points are Exponent vectors of length 2.
struct MarkedCell {
  std::vector<Exponent> vertices;  // counterclockwise
  std::vector<Exponent> marked;    // sorted
  int dim = 2;
  // Lifted face z = alpha*x + beta*y + gamma (heights h = -val).
  Rational alpha, beta, gamma;
};

struct SubdivisionEdge {
  Exponent a, b;
  std::vector<Exponent> marked;  // sorted from a to b
  int cell = -1;                 // a cell containing the edge
  int other = -1;                // the second cell, -1 on the boundary of conv(A)
  bool boundary() const { return other < 0; }
};

struct NewtonSubdivision {
  std::vector<Exponent> support;
  std::vector<Rational> heights;
  std::vector<MarkedCell> cells;
  std::vector<SubdivisionEdge> edges;
  bool degenerate = false;  // support contained in a line
};

NewtonSubdivision regular_subdivision(const std::vector<Exponent>& support,
                                      const std::vector<Rational>& heights);
NewtonSubdivision subdivision_of(const PlanePoly& g);

// Convex hull vertices, counterclockwise, collinear points dropped.
std::vector<Exponent> convex_hull(std::vector<Exponent> pts);
// Twice the Euclidean area of a convex polygon given by its vertices.
Rational twice_area(const std::vector<Exponent>& hull);
bool in_polygon(const std::vector<Exponent>& hull, const Exponent& p);
bool on_segment(const Exponent& a, const Exponent& b, const Exponent& p);
bool collinear(const std::vector<Exponent>& pts);

// Primitive integer direction of a nonzero rational vector.
std::vector<long> primitive_direction(const std::vector<Rational>& v);
Rational lattice_length(const std::vector<Rational>& p, const std::vector<Rational>& q);
long lattice_length_int(const Exponent& a, const Exponent& b);

// Nonzero invariant factors of an integer matrix (rows = generators).
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> m);
// A basis of the row lattice.
std::vector<std::vector<Integer>> lattice_basis(std::vector<std::vector<Integer>> m);

// i(B, A) = [Z.A cap R.B : Z.B] with points homogenized as (1, a).
// ambient == nullopt means A = Z^k.
Integer lattice_index(const std::vector<Exponent>& B,
                      const std::optional<std::vector<Exponent>>& ambient = std::nullopt);

// u(F cap A, A) for a proper face F of conv(A) in the plane; fcap are the points of A on F.
Integer subdiagram_volume(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A);
// The same volume renormalized to the lattice Z.A / (Z.A cap R.F).
Rational subdiagram_volume_gkz(const std::vector<Exponent>& fcap, const std::vector<Exponent>& A);

// 2*area divided by the index of the lattice (a fundamental triangle has volume 1).
Rational normalized_volume(const std::vector<Exponent>& cell_vertices, const Integer& lattice_index = 1);

}  // namespace tropmod
