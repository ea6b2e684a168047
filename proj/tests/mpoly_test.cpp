#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"

using namespace tropmod;
using testing_util::P;
using testing_util::Q;
using testing_util::S;

TEST_CASE("initial form at a vertex of the double edge cubic") {
  PlanePoly g = corpus_polynomial("double-edge");
  ResiduePoly h = init_form(g, {0, 0});
  ResiduePoly want(std::vector<std::string>{"x", "y"});
  want.add_term({2, 1}, 1);
  want.add_term({1, 1}, 1);
  want.add_term({0, 1}, 1);
  CHECK(h == want);
}

TEST_CASE("initial form of a single term") {
  PlanePoly g = P("3*t^2*x^2*y");
  ResiduePoly h = init_form(g, {Q("5/3"), -7});
  CHECK(h.size() == 1);
  CHECK(h.coefficient({2, 1}) == FieldElem(3));
}

TEST_CASE("shift substitution reproduces the unfolded polynomial") {
  PlanePoly g = corpus_polynomial("unfold-cycle");
  // The displayed form is g(z - 1, y).
  PlanePoly gt = shift_substitute(g, "x", Puiseux(1), 0, "z");
  CHECK(gt == P("t^4*z^2*y + 5*t^3*z*y^2 + t^9*y^3 + z^2 + (3-2*t^4)*z*y + (t^2-5*t^3)*y^2", {"z", "y"}));
}

TEST_CASE("shift substitution on a line") {
  PlanePoly g = P("x + 1");
  CHECK(shift_substitute(g, "x", Puiseux(3), 0, "z") == P("z - 2", {"z", "y"}));
}

TEST_CASE("skew substitution") {
  PlanePoly g = P("x*y");
  PlanePoly r = skew_substitute(g, "x", "y", Puiseux(2), 0, "z");
  CHECK(r == P("z*y - 2*y^2", {"z", "y"}));
}

TEST_CASE("affine composition") {
  PlanePoly g = P("x^2 + t*x*y + 1");
  AffineMap id{{"x", "y"}, {P("x"), P("y")}};
  CHECK(affine_compose(g, id) == g);
  AffineMap psi{{"s", "y"}, {P("s - 1/2", {"s", "y"}), P("y", {"s", "y"})}};
  CHECK(affine_compose(g, psi) == P("s^2 - s + 1/4 + t*s*y - 1/2*t*y + 1", {"s", "y"}));
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    PlanePoly a = random_cubic(rng, 4, 3), b = random_cubic(rng, 4, 3);
    Puiseux A = Puiseux::monomial(FieldElem(int(rng() % 5) + 1), Rational(int(rng() % 3)));
    Rational l = int(rng() % 3) - 1;
    auto sub = [&](const PlanePoly& p) { return shift_substitute(p, "x", A, l, "z"); };
    CHECK(sub(a * b) == sub(a) * sub(b));
    CHECK(sub(a + b) == sub(a) + sub(b));
    auto back = shift_substitute(sub(a), "z", -A, l, "x");
    CHECK(back == a);
  }
}

TEST_CASE("rescaling round trip and normalization") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    PlanePoly g = random_cubic(rng, 6, 3, true);
    Rescaling r{Rational(int(rng() % 5) - 2, 2), Rational(int(rng() % 5) - 2), Rational(1, 3)};
    CHECK(undo_rescaling(apply_rescaling(g, r), r) == g);

    auto sub = subdivision_of(g);
    for (auto& cell : sub.cells) {
      if (!std::binary_search(cell.marked.begin(), cell.marked.end(), Exponent{1, 1})) continue;
      auto [gn, rs] = rescale_normalize(g, cell.marked);
      auto hs = heights(gn);
      for (auto& p : cell.marked) CHECK(hs.at(p) == 0);
      CHECK(undo_rescaling(gn, rs) == g);
    }
  }
}

TEST_CASE("heights are negative valuations") {
  auto hs = heights(P("t^3*x + t^(-2)*y + 1"));
  CHECK(hs.at({1, 0}) == -3);
  CHECK(hs.at({0, 1}) == 2);
  CHECK(hs.at({0, 0}) == 0);
}

TEST_CASE("univariate helpers") {
  UPoly p{FieldElem(2), FieldElem(-3), FieldElem(1)};  // (x-1)(x-2)
  CHECK(degree(p) == 2);
  CHECK(field_roots(p, nullptr) == std::vector<FieldElem>{FieldElem(1), FieldElem(2)});
  CHECK(udiscriminant(p) == FieldElem(1));
  UPoly sq = umul(p, p);
  CHECK(root_order(sq, FieldElem(2)) == 2);
  CHECK(degree(ugcd(sq, uderivative(sq))) == 2);
  auto ext = make_extension(-1, 1);
  auto roots = field_roots({FieldElem(1), FieldElem(-1), FieldElem(1)}, ext);
  REQUIRE(roots.size() == 2);
  for (auto& r : roots) CHECK(ueval({FieldElem(1), FieldElem(-1), FieldElem(1)}, r).is_zero());
}

TEST_CASE("parser accepts the double edge input and rejects garbage") {
  PlanePoly g = parse_poly(
      "t^3*x^3 + x^2*y + t^3*x*y^2 + t*y^3 + t^4*x^2 + (1+t^2)*x*y + t^2*y^2 + t^5*x + (1+t)*y + t");
  CHECK(g.size() == 10);
  CHECK(g.coefficient({1, 1}) == S("1 + t^2"));
  CHECK(parse_poly("x + y + 1").size() == 3);
  CHECK_THROWS_AS(parse_poly("x + * y"), ParseError);
  CHECK_THROWS_AS(parse_poly("x + w"), ParseError);
  auto ext = parse_adjoin("u^2-u+1");
  ParseOptions o;
  o.ext = ext;
  PlanePoly h = parse_poly("(1/2 + 1/2*u)*x", o);
  CHECK(h.coefficient({1, 0}).init() == FieldElem(Q("1/2"), Q("1/2"), ext));
}
