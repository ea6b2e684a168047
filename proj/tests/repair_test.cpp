#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"

using namespace tropmod;
using testing_util::P;
using testing_util::S;

TEST_CASE("two step cubic: merged vertical lifting and planar repair") {
  PlanePoly g = corpus_polynomial("two-step");
  V1Result v1 = repair_v1(g);
  REQUIRE(v1.f.has_value());
  CHECK(v1.f->c == S("1/2 + 1/2*t"));

  RepairResult r = repair_elliptic(g);
  CHECK(r.status == RepairStatus::Repaired);
  CHECK(r.certified);
  REQUIRE(r.curve.cycle.has_value());
  CHECK(r.curve.cycle->length == 8);
  CHECK(r.val_j == Rational(-8));
  REQUIRE(r.generators.size() == 1);
  PlanePoly want = shift_substitute(g, "x", S("1/2 + 1/2*t"), 0, "s");
  CHECK(r.generators[0] == want.renamed(r.generators[0].vars()));
}

TEST_CASE("certificate before and after repair") {
  CHECK_FALSE(faithfulness_certificate(corpus_polynomial("two-step")));
  RepairResult r = repair_elliptic(corpus_polynomial("dim-4"));
  CHECK(r.status == RepairStatus::Repaired);
  CHECK(faithfulness_certificate(r.embedding, r.curve));
  REQUIRE(r.curve.cycle.has_value());
  CHECK(r.curve.cycle->length == -*r.val_j);
}

TEST_CASE("unfolding that breaks the cycle gives a rational curve") {
  NormalizeResult n = normalize(corpus_polynomial("unfold-cycle"));
  CHECK(n.status == RepairStatus::RationalCurve);
  CHECK(repair_elliptic(corpus_polynomial("unfold-cycle")).status == RepairStatus::RationalCurve);
}

TEST_CASE("already faithful and cycle-free inputs") {
  RepairResult none = repair_elliptic(corpus_polynomial("cycle-appears"));
  CHECK(none.status == RepairStatus::NoCycleInput);

  PlanePoly honeycomb = P("t^3*x^3 + t*x^2*y + t*x*y^2 + t^3*y^3 + t*x^2 + x*y + t*y^2 + t*x + t*y + t^3");
  if (faithfulness_certificate(honeycomb)) {
    RepairResult r = repair_elliptic(honeycomb);
    CHECK(r.status == RepairStatus::AlreadyFaithful);
    CHECK(r.trace.empty());
  }
}

TEST_CASE("normalize is the identity on a normalized cubic") {
  PlanePoly g = P("t^3*x^3 + t*x^2*y + t*x*y^2 + t^3*y^3 + t*x^2 + x*y + t*y^2 + t*x + t*y + t^3");
  NormalizeResult n = normalize(g);
  CHECK(n.trace.empty());
  CHECK(n.g_psi == g);
}

TEST_CASE("unfolding a double edge") {
  RepairResult r = unfold_to_cycle(corpus_polynomial("double-edge"));
  CHECK(r.status == RepairStatus::Repaired);
  REQUIRE(r.curve.cycle.has_value());
  CHECK(r.curve.cycle->length == 3);

  RepairResult bad = unfold_to_cycle(corpus_polynomial("unfold-impossible"));
  CHECK(bad.status == RepairStatus::Unsupported);
  CHECK(bad.message.find("bounded weight two edge") != std::string::npos);
}

TEST_CASE("cycle appears after three modifications") {
  CycleAppearsRun run = run_cycle_appears(corpus_polynomial("cycle-appears"));
  REQUIRE(run.accepted >= 0);
  auto& cand = run.candidates[run.accepted];
  CHECK(cand.certified);
  REQUIRE(run.val_j.has_value());
  CHECK(cand.cycle == -*run.val_j);
}

TEST_CASE("random cubics: repaired cycles reach -val(j)") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 60; ++it) {
    PlanePoly g = random_cubic(rng, 4, 2, true);
    RepairResult r;
    try {
      r = repair_elliptic(g);
    } catch (const DomainError&) {
      continue;
    }
    if (r.status == RepairStatus::Repaired || (r.status == RepairStatus::AlreadyFaithful && r.certified)) {
      REQUIRE(r.curve.cycle.has_value());
      REQUIRE(r.val_j.has_value());
      CHECK(r.curve.cycle->length == -*r.val_j);
    }
    if (r.status == RepairStatus::Repaired) CHECK(r.curve.balanced);
  }
}
