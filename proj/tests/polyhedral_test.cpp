#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"
#include "tropmod/polyhedral.hpp"

using namespace tropmod;
using testing_util::Q;

TEST_CASE("unit square with flat heights is one cell") {
  auto sub = regular_subdivision({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 0});
  REQUIRE(sub.cells.size() == 1);
  CHECK(sub.cells[0].marked.size() == 4);
  CHECK(sub.cells[0].vertices.size() == 4);
}

TEST_CASE("double edge cubic contains the length two edge") {
  auto sub = subdivision_of(corpus_polynomial("double-edge"));
  bool found = false;
  for (auto& e : sub.edges)
    if (e.marked == std::vector<Exponent>{{0, 1}, {1, 1}, {2, 1}} ||
        e.marked == std::vector<Exponent>{{2, 1}, {1, 1}, {0, 1}}) {
      found = true;
      CHECK_FALSE(e.boundary());
    }
  CHECK(found);
}

TEST_CASE("cells tile the Newton polygon") {
  for (auto& entry : example_corpus()) {
    auto sub = subdivision_of(corpus_polynomial(entry.name));
    Rational total = 0;
    for (auto& c : sub.cells) total += twice_area(c.vertices);
    CHECK_MESSAGE(total == twice_area(convex_hull(sub.support)), entry.name);
  }
}

TEST_CASE("coherence: each cell is the lower face of the lifted points") {
  for (auto& entry : example_corpus()) {
    auto sub = subdivision_of(corpus_polynomial(entry.name));
    for (auto& c : sub.cells)
      for (size_t k = 0; k < sub.support.size(); ++k) {
        auto& p = sub.support[k];
        Rational face = c.alpha * p[0] + c.beta * p[1] + c.gamma;
        bool marked = std::binary_search(c.marked.begin(), c.marked.end(), p);
        if (marked) CHECK(sub.heights[k] == face);
        else CHECK(sub.heights[k] < face);
      }
  }
}

TEST_CASE("lattice lengths") {
  CHECK(lattice_length({0, 0}, {2, 0}) == 2);
  CHECK(lattice_length({0, 0}, {3, 3}) == 3);
  CHECK(lattice_length({0, 0}, {Q("1/2"), Q("1/2")}) == Q("1/2"));
  CHECK(lattice_length_int({1, 0}, {1, 2}) == 2);
  CHECK(primitive_direction({Q("4/3"), Q("-2/3")}) == std::vector<long>{2, -1});
}

TEST_CASE("lattice index") {
  CHECK(lattice_index({{0, 0}, {1, 0}, {0, 1}}) == 1);
  CHECK(lattice_index({{0, 0}, {2, 0}}) == 2);
  CHECK(lattice_index({{0, 0}, {2, 0}, {0, 2}}) == 4);
  auto inv = smith_invariants({{2, 0}, {0, 2}});
  CHECK(inv == std::vector<Integer>{2, 2});
}

TEST_CASE("subdiagram volumes") {
  std::vector<Exponent> cubic;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) cubic.push_back({i, j});
  CHECK(subdiagram_volume({{3, 0}}, cubic) == 1);
  CHECK(subdiagram_volume({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, cubic) == 1);
  CHECK(subdiagram_volume({{0, 0}, {1, 0}}, {{0, 0}, {1, 0}, {0, 2}}) == 2);
  CHECK_THROWS_AS(subdiagram_volume({{0, 0}, {1, 1}}, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}), DomainError);
}

TEST_CASE("normalized volumes") {
  CHECK(normalized_volume({{0, 0}, {1, 0}, {0, 1}}) == 1);
  CHECK(normalized_volume({{0, 0}, {1, 0}, {1, 1}, {0, 1}}) == 2);
  CHECK(normalized_volume({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2) == 1);
}

TEST_CASE("collinear support is degenerate") {
  auto sub = regular_subdivision({{0, 0}, {1, 0}, {2, 0}}, {0, 1, 0});
  CHECK(sub.degenerate);
}
