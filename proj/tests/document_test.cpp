#include "doctest.h"
#include "helpers.hpp"
#include "tropmod/corpus.hpp"
#include "tropmod/document.hpp"

using namespace tropmod;

TEST_CASE("document round trip") {
  for (auto& entry : example_corpus()) {
    PlanePoly g = corpus_polynomial(entry.name);
    CurveDocument d = document_of(g, tropicalize(g));
    std::string text = print_document(d);
    CurveDocument back = parse_document(text);
    CHECK_MESSAGE(back == d, entry.name);
    CHECK(print_document(back) == text);
  }
  RepairResult r = repair_elliptic(corpus_polynomial("two-step"));
  CurveDocument d = document_of(r);
  CHECK(parse_document(print_document(d)) == d);
  REQUIRE(d.find_meta("status"));
  CHECK(*d.find_meta("status") == "repaired");
}

TEST_CASE("curve survives the section conversion") {
  TropicalCurve c = tropicalize(corpus_polynomial("dim-4"));
  TropicalCurve back = curve_of(section_of(c, "plane"));
  CHECK(same_weighted_complex(back, c));
  CHECK(find_cycle(back)->length == 12);
}

TEST_CASE("document parse errors carry the line") {
  CHECK_THROWS_AS(parse_document("nonsense"), ParseError);
  CHECK_THROWS_AS(parse_document("tropmod-curve 99\n"), ParseError);
  try {
    parse_document("tropmod-curve 1\nsection a\ncoords X Y\nvertex 0 zero mult 1 cell 0\nend\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("svg output is deterministic and draws modification lines dashed") {
  PlanePoly g = corpus_polynomial("edge-unfolding");
  ReembeddedCurve r = reembed(g, Lifting{LineType::Vertical, 0, Puiseux(1), "z"});
  CurveDocument d = document_of(r);
  std::string a = render_svg(d), b = render_svg(parse_document(print_document(d)));
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("stroke-dasharray") != std::string::npos);
}
