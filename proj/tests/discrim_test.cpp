#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"
#include "tropmod/discrim.hpp"
#include "tropmod/repair.hpp"

using namespace tropmod;
using testing_util::P;

namespace {

bool equal_up_to_sign(const SymPoly& a, const SymPoly& b) { return a == b || a == -b; }

SymPoly sym(const std::string& s, const std::vector<std::string>& vars) {
  PlanePoly p = P(s, vars);
  SymPoly r(vars);
  for (auto& [e, c] : p.terms()) r.add_term(e, c.init().rational_part());
  return r;
}

}  // namespace

TEST_CASE("resultant of a linear base") {
  std::vector<std::string> v1{"a0", "a1", "b0", "b1"};
  CHECK(linear_base_resultant(1) == sym("a0*b1 - a1*b0", v1));
  std::vector<std::string> v2{"a0", "a1", "a2", "b0", "b1"};
  CHECK(linear_base_resultant(2) == sym("a0*b1^2 - a1*b0*b1 + a2*b0^2", v2));
}

TEST_CASE("closed form agrees with the Sylvester resultant") {
  for (int n = 1; n <= 4; ++n) {
    SymPoly closed = linear_base_resultant(n);
    auto vars = closed.vars();
    std::vector<SymPoly> a, b;
    for (int k = 0; k <= n; ++k) a.push_back(SymPoly::variable(vars, k));
    b.push_back(SymPoly::variable(vars, n + 1));
    b.push_back(SymPoly::variable(vars, n + 2));
    CHECK(equal_up_to_sign(sym_resultant(a, b, vars), closed));
  }
}

TEST_CASE("unit square discriminant") {
  Discriminant d = configuration_discriminant({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(equal_up_to_sign(d.poly, sym("c00*c11 - c01*c10", {"c00", "c01", "c10", "c11"})));
  CHECK_FALSE(d.defective);
}

TEST_CASE("edge discriminants") {
  Discriminant d = edge_discriminant({{1, 0}, {1, 1}, {1, 2}});
  CHECK(equal_up_to_sign(d.poly, sym("c11^2 - 4*c12*c10", d.poly.vars())));
  CHECK(edge_discriminant({{0, 0}, {1, 0}}).poly == SymPoly::constant(edge_discriminant({{0, 0}, {1, 0}}).poly.vars(), 1));

  // Length three: Res(h, h') is the leading coefficient times the discriminant.
  Discriminant d3 = edge_discriminant({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  auto vars = d3.poly.vars();
  std::vector<SymPoly> h, dh;
  for (int k = 0; k <= 3; ++k) h.push_back(SymPoly::variable(vars, k));
  for (int k = 1; k <= 3; ++k) dh.push_back(h[k].scaled(Rational(k)));
  SymPoly res = sym_resultant(h, dh, vars);
  std::mt19937_64 rng(1);
  std::optional<Rational> ratio;
  for (int it = 0; it < 20; ++it) {
    std::vector<FieldElem> vals;
    for (int k = 0; k <= 3; ++k) vals.push_back(FieldElem(int(rng() % 11) - 5));
    FieldElem dv = sym_eval(d3.poly, vals);
    FieldElem rv = sym_eval(res, vals);
    if (dv.is_zero() || vals[3].is_zero()) {
      CHECK(rv.is_zero());
      continue;
    }
    Rational q = (rv / (dv * vals[3])).rational_part();
    if (!ratio) ratio = q;
    CHECK(q == *ratio);
  }
  REQUIRE(ratio.has_value());
  CHECK(*ratio != 0);
}

TEST_CASE("defectiveness") {
  CHECK(is_defective({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(is_defective({{0, 0}, {1, 0}}));
  CHECK_FALSE(is_defective({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK_FALSE(is_defective({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}));
}

TEST_CASE("vanishing at initial coefficients") {
  PlanePoly two = corpus_polynomial("two-step");
  Discriminant sq = configuration_discriminant({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(vanishes_at_init(sq, two));

  PlanePoly de = corpus_polynomial("double-edge");
  // The double edge of this cubic sits on the row y = 1.
  Discriminant e = edge_discriminant({{0, 1}, {1, 1}, {2, 1}});
  CHECK_FALSE(vanishes_at_init(e, de));
}

TEST_CASE("valuation of the j-invariant") {
  CHECK(*cubic_j_valuation(corpus_polynomial("two-step")).val == -8);
  CHECK(*cubic_j_valuation(corpus_polynomial("cycle-appears")).val == -10);
  CHECK_THROWS_AS(cubic_j_valuation(P("x^2 + y^2 + 1")), DomainError);
}

TEST_CASE("cubic invariants: Delta vanishes on a nodal cubic") {
  // y^2 = x^2 (x + 1) has a node at the origin.
  PlanePoly nodal = P("y^2 - x^3 - x^2");
  CHECK_THROWS_AS(cubic_j_valuation(nodal), DomainError);
  const CubicInvariants& ci = cubic_invariants();
  CHECK(ci.points.size() == 10);
  CHECK(ci.A.total_degree() == 12);
  CHECK(ci.Delta.total_degree() == 12);
}

TEST_CASE("cycle length matches the valuation of j on random cubics") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    PlanePoly g = random_cubic(rng, 6, 3, true);
    JValuation j;
    try {
      j = cubic_j_valuation(g);
    } catch (const DomainError&) {
      continue;
    }
    if (!j.val || !j.generic) continue;
    auto cy = find_cycle(tropicalize(g));
    REQUIRE(cy.has_value());
    if (faithfulness_certificate(g)) {
      CHECK(cy->length == -*j.val);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("factorization exponents and lattice identity on random cubics") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    auto sub = subdivision_of(random_cubic(rng, 6, 3, true));
    FactorizationReport r = factorization_check(sub);
    CHECK(r.exponents_ok);
    CHECK(r.identity_ok);
    CHECK(r.identity_checks > 0);
  }
}

TEST_CASE("closed-form constant is not always integral") {
  // A boundary edge of a unimodular cell skipping a lattice point of A contributes 2^2 to the
  // denominator, while only one index-2 cell contributes to the numerator.
  std::vector<Exponent> A{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0}};
  std::vector<Rational> h{-5, -2, -1, -2, -6, 0, -4, -1, -1, -6};
  FactorizationReport r = factorization_check(regular_subdivision(A, h));
  CHECK(r.exponents_ok);
  CHECK(r.identity_ok);
  CHECK(r.R == Rational(1, 4));
  CHECK_FALSE(r.lambda.has_value());
}

TEST_CASE("closed-form constant on a single cell") {
  FactorizationReport r = factorization_check(regular_subdivision({{0, 0}, {1, 0}, {2, 0}, {0, 1}}, {0, -1, 0, 0}));
  CHECK(r.R == 1);
  REQUIRE(r.lambda.has_value());
  CHECK(*r.lambda == 1);
}

TEST_CASE("predicted discriminant degrees") {
  CHECK(predicted_degree({{0, 0}, {1, 0}, {0, 1}, {1, 1}}) == 2);
  std::vector<Exponent> cubic;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) cubic.push_back({i, j});
  CHECK(predicted_degree(cubic) == 12);
}
