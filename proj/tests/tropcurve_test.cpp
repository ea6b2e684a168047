#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"
#include "tropmod/tropcurve.hpp"

using namespace tropmod;
using testing_util::P;

namespace {

std::set<IVec> ray_dirs(const TropicalCurve& c) {
  std::set<IVec> s;
  for (auto& e : c.edges)
    if (e.is_ray()) s.insert(e.dir);
  return s;
}

}  // namespace

TEST_CASE("tropical line") {
  TropicalCurve c = tropicalize(P("x + y + 1"));
  REQUIRE(c.vertices.size() == 1);
  CHECK(c.vertices[0].pos == QPoint{0, 0});
  CHECK(ray_dirs(c) == std::set<IVec>{{-1, 0}, {0, -1}, {1, 1}});
  for (auto& e : c.edges) CHECK(e.mult == 1);
}

TEST_CASE("balancing and duality on the corpus") {
  for (auto& entry : example_corpus()) {
    TropicalCurve c = tropicalize(corpus_polynomial(entry.name));
    CHECK_MESSAGE(check_balancing(c).ok, entry.name);
    size_t interior = 0, boundary = 0, rays = 0, bounded = 0;
    for (auto& e : c.subdivision.edges) (e.boundary() ? boundary : interior)++;
    for (auto& e : c.edges) (e.is_ray() ? rays : bounded)++;
    CHECK(c.vertices.size() == c.subdivision.cells.size());
    CHECK(interior == bounded);
    CHECK(boundary == rays);
    for (auto& e : c.edges) {
      auto& d = c.subdivision.edges[e.dual];
      CHECK(e.mult == lattice_length_int(d.a, d.b));
    }
  }
}

TEST_CASE("corrupted multiplicity is reported") {
  TropicalCurve c = tropicalize(corpus_polynomial("two-step"));
  c.edges[0].mult += 1;
  BalanceReport r = check_balancing(c);
  CHECK_FALSE(r.ok);
  CHECK((r.vertex == c.edges[0].a || r.vertex == c.edges[0].b));
}

TEST_CASE("cycle lengths") {
  CHECK(find_cycle(tropicalize(corpus_polynomial("two-step")))->length == 6);
  CHECK(find_cycle(tropicalize(corpus_polynomial("dim-4")))->length == 12);
  CHECK_FALSE(find_cycle(tropicalize(corpus_polynomial("cycle-appears"))).has_value());
}

TEST_CASE("cycle is a closed walk whose length sums the edges") {
  TropicalCurve c = tropicalize(corpus_polynomial("pushed-edge"));
  auto cy = find_cycle(c);
  REQUIRE(cy.has_value());
  Rational total = 0;
  std::set<int> used;
  for (size_t k = 0; k < cy->edges.size(); ++k) {
    auto& e = c.edges[cy->edges[k]];
    total += e.length * e.mult;
    CHECK(used.insert(cy->edges[k]).second);
    int from = cy->vertices[k], to = cy->vertices[(k + 1) % cy->vertices.size()];
    CHECK(((e.a == from && e.b == to) || (e.b == from && e.a == to)));
  }
  CHECK(total == cy->length);
  // The cycle lies to the right of X = -1.
  for (int v : cy->vertices) CHECK(c.vertices[v].pos[0] >= -1);
}

TEST_CASE("double edge cubic has a vertical double edge with trivalent ends") {
  TropicalCurve c = tropicalize(corpus_polynomial("double-edge"));
  CHECK(find_cycles(c).empty());
  int found = 0;
  for (auto& e : c.edges)
    if (!e.is_ray() && e.mult == 2 && e.dir[0] == 0) {
      ++found;
      CHECK(c.star(e.a).size() == 3);
      CHECK(c.star(e.b).size() == 3);
    }
  CHECK(found == 1);
}

TEST_CASE("local reducibility") {
  CHECK_FALSE(reducible_star({{1, 0}, {0, 1}, {-1, -1}}, {1, 1, 1}).has_value());
  auto w = reducible_star({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1});
  REQUIRE(w.has_value());
  long total = 0;
  for (long m : *w) total += m;
  CHECK(total == 2);
  CHECK((*w)[0] == (*w)[1]);

  TropicalCurve c = tropicalize(corpus_polynomial("dim-4"));
  std::set<QPoint> pos;
  for (auto& r : locally_reducible_vertices(c)) pos.insert(c.vertices[r.vertex].pos);
  CHECK(pos == std::set<QPoint>{{0, 0}, {-4, 4}});
}

TEST_CASE("trapezoid line families") {
  MarkedCell cell;
  cell.vertices = {{0, 0}, {2, 0}, {1, 1}, {0, 1}};
  cell.marked = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
  auto cl = classify_cubic_cycle_vertex(cell);
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].type == LineType::Vertical);

  MarkedCell refl;
  refl.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 2}};
  refl.marked = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}};
  cl = classify_cubic_cycle_vertex(refl);
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].type == LineType::Horizontal);

  // Bases on x + y = 1 and x + y = 2.
  MarkedCell skew;
  skew.vertices = {{1, 0}, {2, 0}, {1, 1}, {0, 1}};
  skew.marked = {{0, 1}, {1, 0}, {1, 1}, {2, 0}};
  cl = classify_cubic_cycle_vertex(skew);
  REQUIRE_FALSE(cl.empty());
  CHECK(std::any_of(cl.begin(), cl.end(), [](auto& l) { return l.type == LineType::Skew; }));
}

TEST_CASE("random cubics: the cycle surrounds the interior point") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    TropicalCurve c = tropicalize(random_cubic(rng, 6, 3, true));
    CHECK(check_balancing(c).ok);
    auto cy = find_cycle(c);
    REQUIRE(cy.has_value());
    for (int v : cy->vertices) {
      const auto& cell = c.subdivision.cells[c.vertices[v].cell];
      CHECK(std::binary_search(cell.marked.begin(), cell.marked.end(), Exponent{1, 1}));
    }
    for (int e : cy->edges) CHECK(c.edges[e].mult == 1);
  }
}
