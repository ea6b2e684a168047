#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/modify.hpp"

namespace tropmod {

enum class RepairStatus { Repaired, AlreadyFaithful, RationalCurve, NoCycleInput, Unsupported };
std::string to_string(RepairStatus s);

struct RepairStep {
  // normalize-skew, normalize-visible, v1-vertical, v1-iterate, v2-horizontal, v2-iterate, merge-project
  std::string kind;
  std::optional<Lifting> lifting;
  std::string coordinate;  // coordinate created, shifted or dropped
  std::string lifting_text;  // the lifting in the variables of its chart
  std::optional<Rational> cycle_length;
};

struct RepairResult {
  RepairStatus status = RepairStatus::Unsupported;
  std::string message;
  std::optional<Rational> val_j;
  Embedding embedding;
  // g composed with the affine change of coordinates, then linear forms u_k - (a u_i + b u_j + c);
  // all in the variables of the embedding.
  std::vector<PlanePoly> generators;
  std::pair<std::string, std::string> chart;  // variables of the first generator
  GluedCurve curve;
  std::vector<RepairStep> trace;
  bool certified = false;
};

struct NormalizeResult {
  RepairStatus status = RepairStatus::Repaired;  // RationalCurve when a step breaks the cycle
  AffineMap psi;   // x, y in terms of the new variables
  PlanePoly g_psi;
  std::vector<RepairStep> trace;
};
NormalizeResult normalize(const PlanePoly& g);

struct V1Result {
  RepairStatus status = RepairStatus::Repaired;
  AffineMap psi;  // identity on x, y -> y + alpha
  std::optional<Coordinate> f;  // iterated vertical lifting, absent when there is no problematic vertex
  std::vector<RepairStep> trace;
};
V1Result repair_v1(const PlanePoly& g);

RepairResult repair_elliptic(const PlanePoly& g);
RepairResult unfold_to_cycle(const PlanePoly& g);

// Every cycle edge has multiplicity one and every cycle vertex is locally irreducible or has a
// non-vanishing local discriminant.
bool faithfulness_certificate(const Embedding& e, const GluedCurve& glued);
bool faithfulness_certificate(const PlanePoly& g);

// Planar vertices on the cycle that are locally reducible with a special lifting, by line type.
struct ProblemVertex {
  int vertex = -1;
  QPoint pos;
  std::vector<Lifting> liftings;  // skew, vertical, horizontal order
};
std::vector<ProblemVertex> problematic_vertices(const PlanePoly& g, const TropicalCurve& c,
                                                const std::vector<int>& vertices);

}  // namespace tropmod
