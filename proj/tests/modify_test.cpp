#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"
#include "tropmod/modify.hpp"

using namespace tropmod;
using testing_util::P;

namespace {

int cell_at(const TropicalCurve& c, const QPoint& p) {
  for (auto& v : c.vertices)
    if (v.pos == p) return v.cell;
  return -1;
}

}  // namespace

TEST_CASE("special liftings of the two step cubic") {
  PlanePoly g = corpus_polynomial("two-step");
  TropicalCurve c = tropicalize(g);
  int cell = cell_at(c, {0, 0});
  REQUIRE(cell >= 0);
  Lifting f1 = find_special_lifting(g, cell, LineType::Vertical);
  CHECK(f1.level == 0);
  CHECK(f1.shift() == Puiseux(Rational(1, 2)));

  PlanePoly g1 = shift_substitute(g, "x", f1.shift(), 0, "z").renamed({"x", "y"});
  TropicalCurve c1 = tropicalize(g1);
  int cell1 = cell_at(c1, {-1, 0});
  REQUIRE(cell1 >= 0);
  Lifting f2 = find_special_lifting(g1, cell1, LineType::Vertical);
  CHECK(f2.shift() == parse_series("1/2*t"));
}

TEST_CASE("unfolding by a vertical line through the cycle") {
  PlanePoly g = corpus_polynomial("edge-unfolding");
  ReembeddedCurve r = reembed(g, Lifting{LineType::Vertical, 0, Puiseux(1), "z"});
  CHECK(r.classification == "unfolding");
  CHECK(r.gt == shift_substitute(g, "x", Puiseux(1), 0, "z"));
  CHECK(r.glued.balanced);
  CHECK(r.glued.consistent);
  CHECK(r.glued.pushforward_ok);
}

TEST_CASE("pushing a cycle edge with a non-generic coefficient") {
  PlanePoly g = corpus_polynomial("pushed-edge");
  ReembeddedCurve r = reembed(g, Lifting{LineType::Vertical, -1, Puiseux(1), "z"});
  CHECK(r.classification != "generic");
  auto cy = find_cycle(r.chart2);
  REQUIRE(cy.has_value());
  std::optional<Rational> left;
  for (int e : cy->edges) {
    auto& ed = r.chart2.edges[e];
    if (ed.dir[0] != 0) continue;
    Rational x = r.chart2.vertices[ed.a].pos[0];
    if (!left || x < *left) left = x;
  }
  CHECK(left == Rational(-2));

  ReembeddedCurve gen = reembed(g, Lifting{LineType::Vertical, -1, Puiseux(3), "z"});
  CHECK(gen.classification == "generic");
}

TEST_CASE("skew modification of the genus three curve contracts a vertical edge") {
  PlanePoly g = corpus_polynomial("genus-3");
  ReembeddedCurve r = reembed_skew(g, Lifting{LineType::Skew, 0, Puiseux(1), "z"});
  CHECK(r.glued.balanced);
  CHECK(r.glued.consistent);
  const TropicalCurve& c = r.glued.curve;
  REQUIRE(c.dim == 3);
  bool found = false;
  for (auto& e : c.edges) {
    if (e.is_ray()) continue;
    std::set<QPoint> ends{c.vertices[e.a].pos, c.vertices[e.b].pos};
    if (ends == std::set<QPoint>{{0, 0, -1}, {0, 0, 0}}) found = true;
  }
  CHECK(found);
}

TEST_CASE("visible side of a line") {
  TropicalCurve two = tropicalize(corpus_polynomial("two-step"));
  CHECK(visible_side(two, *find_cycle(two), LineType::Vertical, 0));
  CHECK(visible_side(two, *find_cycle(two), LineType::Vertical, -100));
  TropicalCurve d4 = tropicalize(corpus_polynomial("dim-4"));
  CHECK_FALSE(visible_side(d4, *find_cycle(d4), LineType::Horizontal, 4));
}

TEST_CASE("fat edge lifting") {
  PlanePoly g = corpus_polynomial("double-edge");
  TropicalCurve c = tropicalize(g);
  int fat = -1, thin = -1;
  for (size_t e = 0; e < c.edges.size(); ++e) {
    if (c.edges[e].is_ray()) continue;
    if (c.edges[e].mult == 2) fat = (int)e;
    else if (thin < 0) thin = (int)e;
  }
  REQUIRE(fat >= 0);
  Lifting f = fat_edge_lifting(g, fat);
  FieldElem a0 = f.A.init();
  CHECK((FieldElem(1) - a0 + a0 * a0).is_zero());
  REQUIRE(thin >= 0);
  CHECK_THROWS_AS(fat_edge_lifting(g, thin), DomainError);
}

TEST_CASE("chart projections") {
  PlanePoly g = corpus_polynomial("two-step");
  ChartStack st(g);
  CHECK(same_weighted_complex(multi_chart_project(st, "x", "y"), tropicalize(g)));
  st.push(Lifting{LineType::Vertical, 0, Puiseux(Rational(1, 2)), "z1"}, "x", "y");
  CHECK(chart_polynomial(st.embedding, "z1", "y") == shift_substitute(g, "x", Puiseux(Rational(1, 2)), 0, "z1"));
  st.push(Lifting{LineType::Horizontal, 0, Puiseux(1), "z2"}, "x", "y");
  st.push(Lifting{LineType::Horizontal, 1, Puiseux(1), "z3"}, "x", "y");
  CHECK_THROWS_AS(st.push(Lifting{LineType::Vertical, 1, Puiseux(1), "z4"}, "x", "y"), Unsupported);
}

TEST_CASE("re-embeddings of random cubics glue to balanced curves projecting onto Trop(g)") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    PlanePoly g = random_cubic(rng, 5, 3, it % 2 == 0);
    TropicalCurve c = tropicalize(g);
    const auto& v = c.vertices[rng() % c.vertices.size()];
    LineType type = it % 3 == 0 ? LineType::Horizontal : LineType::Vertical;
    Rational level = type == LineType::Vertical ? v.pos[0] : v.pos[1];
    ReembeddedCurve r = reembed(g, Lifting{type, level, Puiseux(int(rng() % 4) + 1), "z"});
    CHECK(r.glued.consistent);
    CHECK(r.glued.balanced);
    CHECK(r.glued.pushforward_ok);
    CHECK(same_weighted_complex(project(r.glued.curve, 0, 1), c));
  }
}
