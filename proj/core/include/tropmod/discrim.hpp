#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/polyhedral.hpp"

namespace tropmod {

// Name of the coefficient attached to a lattice point: c12 for (1,2), c10_3 for (10,3).
std::string coefficient_name(const Exponent& p);

// A-discriminant of a marked configuration, as a polynomial in the coefficients c_a.
// The polynomial is primitive over Z, has no monomial factor and is defined up to sign;
// the sign is fixed so that the first term in display order is positive.
struct Discriminant {
  std::vector<Exponent> points;  // sorted; variable k of poly is c_{points[k]}
  SymPoly poly;
  bool defective = false;
  // point, segment, pyramid, trapezoid or apex
  std::string shape;
  int degree() const { return poly.total_degree(); }
};

// Throws Unsupported for configurations outside: segments, lattice-width-1 cells and
// lattice-width-2 cells with a one-point extreme row (after reduction to the affine lattice).
Discriminant configuration_discriminant(const std::vector<Exponent>& marked);
// Width-1 cells only; the resultant Res(h2, h1) of the two base polynomials.
Discriminant trapezoid_discriminant(const MarkedCell& cell);
Discriminant edge_discriminant(const std::vector<Exponent>& edge_points);
bool is_defective(const std::vector<Exponent>& marked);

// Res(h1, h2) for h1 = a0 + ... + an x^n and h2 = b0 + b1 x, expanded in closed form:
// sum_k (-1)^k a_k b0^k b1^(n-k). Variables a0..an, b0, b1.
SymPoly linear_base_resultant(int n);

// Evaluates at init_t of the coefficients of g (absent coefficients count as 0).
FieldElem evaluate_at_init(const Discriminant& d, const PlanePoly& g);
bool vanishes_at_init(const Discriminant& d, const PlanePoly& g);

// Same polynomial with each c_a replaced by the given symbolic values.
SymPoly substitute(const Discriminant& d, const std::vector<SymPoly>& values,
                   const std::vector<std::string>& target);

// Local discriminants of the cells and edges of the subdivision of g.
struct LocalDiscriminant {
  int index = -1;  // cell or edge index in the subdivision
  bool is_edge = false;
  std::vector<Exponent> points;
  std::optional<Discriminant> disc;
  std::string unsupported;  // reason when disc is empty
  bool vanishes = false;
};
std::vector<LocalDiscriminant> local_discriminants(const PlanePoly& g, bool edges = true);

// Invariants of the ternary cubic sum c_{ij} x^i y^j z^{3-i-j}, derived once by solving the
// linear conditions of sl3-invariance; A = S^3 and Delta = a T^2 + b S^3 vanishes on nodal cubics.
struct CubicInvariants {
  std::vector<Exponent> points;  // the ten (i, j) with i + j <= 3
  std::vector<std::string> vars;
  SymPoly S, T, A, Delta;
  Rational a, b;  // Delta = a*T^2 + b*S^3 (before making Delta primitive: scale)
  Rational scale;
};
const CubicInvariants& cubic_invariants();

struct JValuation {
  std::optional<Rational> val;  // nullopt when A(g) = 0 (j = 0)
  std::string status;           // "ok" or "A vanishes"
  Rational val_A;               // meaningful only when status is "ok"
  Rational val_Delta;
  Rational generic_val_Delta;   // min over monomials of Delta at the heights of g
  bool generic = true;
};
// Throws DomainError("singular cubic") when Delta(g) = 0 and for non-cubic input.
JValuation cubic_j_valuation(const PlanePoly& g);

// Terms of p minimizing sum e_k * vals[k]; nullopt values stand for absent coefficients.
SymPoly initial_part(const SymPoly& p, const std::vector<std::optional<Rational>>& vals);

// Exponent bookkeeping of the factorization of init_w(Delta_A) along a regular subdivision.
struct CellFactor {
  int cell = -1;
  std::vector<Exponent> points;
  Integer index;     // i(A_j)
  Integer exponent;  // [Z.A : Z.A_j]
  Rational volume;   // 2 * area
};
struct EdgeFactor {
  int edge = -1;
  std::vector<Exponent> points;  // e cap A_j
  bool boundary = false;
  Integer index;  // i(e cap A_j)
  Integer u_cell, u_other;  // u(e cap A_j, A_j), and u(e cap A_l, A_l) or u(R.e cap A, A)
  Rational exponent;
  Rational length;
};
struct FactorizationReport {
  Integer index_A;
  std::vector<CellFactor> cells;
  std::vector<EdgeFactor> edges;
  Rational R;
  std::optional<Integer> lambda;  // integral i(A)-th root of R when it exists
  bool exponents_ok = true;       // every exponent a nonnegative integer
  bool identity_ok = true;           // i(F,Z^k) u(F,A) = i(A) i(F,Z.A) u_GKZ(F,A) on every face
  int identity_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return exponents_ok && identity_ok && lambda.has_value(); }
};
FactorizationReport factorization_check(const NewtonSubdivision& sub);

// Degree of Delta_A predicted by the principal A-determinant: deg E_A = 3 vol (planar) or
// 2 length (segments), minus the face contributions, divided by i(A).
Rational predicted_degree(const std::vector<Exponent>& marked);

}  // namespace tropmod
