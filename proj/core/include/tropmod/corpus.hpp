#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropmod/repair.hpp"

namespace tropmod {

struct CorpusEntry {
  std::string name;
  std::string poly;
  std::string adjoin;  // empty when no extension is needed
  std::string note;
};
const std::vector<CorpusEntry>& example_corpus();
const CorpusEntry& corpus_entry(const std::string& name);
PlanePoly corpus_polynomial(const std::string& name);

// Three consecutive modifications producing a cycle from a curve without one: a vertical line
// through the vertex (0,0) chosen by a feeding condition, a horizontal line unfolding the
// resulting multiplicity two end, then a skew line unfolding the bounded double edge.
struct SkewCandidate {
  std::string label;  // "(1+sqrt(3))/2", ...
  Lifting lifting;
  std::optional<Rational> cycle;
  bool certified = false;
};
struct CycleAppearsRun {
  // A*(c11 + c21*A)^2 - 4*c00*c12 in the initial coefficients, A as in x = z + A.
  UPoly feeding;
  std::vector<std::pair<FieldElem, int>> roots;  // with multiplicity
  FieldElem chosen;
  Lifting f1, f2;
  std::vector<SkewCandidate> candidates;
  int accepted = -1;
  Embedding embedding;
  GluedCurve curve;
  std::optional<Rational> val_j;
};
CycleAppearsRun run_cycle_appears(const PlanePoly& g);

// Random cubic with integer coefficients in [-range, range] and valuations in [0, max_val].
// With with_cycle, c11 has valuation 0 and the others at least 1, so Trop(g) has a cycle.
PlanePoly random_cubic(std::mt19937_64& rng, int max_val = 6, int range = 3, bool with_cycle = false);

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
};
// Acceptance checks 1..10 in order; sizes of the randomized suites can be scaled down.
std::vector<CheckResult> run_acceptance_checks(double scale = 1.0, unsigned seed = 20140601);
CheckResult run_acceptance_check(int id, double scale = 1.0, unsigned seed = 20140601);

// Equality of generator sets up to order and sign, after renaming into common variables.
bool same_generators(const std::vector<PlanePoly>& a, const std::vector<PlanePoly>& b);

}  // namespace tropmod
