#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace tropmod;
using testing_util::Q;
using testing_util::S;

TEST_CASE("valuation of series") {
  CHECK(*S("t + t^2 + t^202").val() == 1);
  CHECK_FALSE(Puiseux().val().has_value());
  CHECK(*S("2*t^2 - t^5 + t^201 - t^202").val() == 2);
  CHECK(*S("t^(-3/2) + 7").val() == Q("-3/2"));
}

TEST_CASE("initial coefficient") {
  CHECK(S("1 + 2*t^201").init() == FieldElem(1));
  CHECK(S("-3*t^3 - t^200").init() == FieldElem(-3));
  CHECK(Puiseux::monomial(FieldElem(Q("5/7")), Q("4/3")).init() == FieldElem(Q("5/7")));
}

TEST_CASE("series arithmetic") {
  CHECK(S("1 + t") * S("1 - t") == S("1 - t^2"));
  CHECK(S("t^2 + t^4").divided_by(S("t^2")) == S("1 + t^2"));
  CHECK(S("t") - S("t") == Puiseux());
  CHECK(S("1 + t").pow(3) == S("1 + 3*t + 3*t^2 + t^3"));
  CHECK(S("t^2").shifted(-2) == Puiseux(1));
}

TEST_CASE("quadratic extensions") {
  auto ext = make_extension(-1, 1);  // u^2 - u + 1
  FieldElem u = FieldElem::generator(ext);
  CHECK((FieldElem(1) - u + u * u).is_zero());
  CHECK(u * (FieldElem(1) - u) == FieldElem(1));
  CHECK(u.pow(6) == FieldElem(1));
  CHECK(u * u.inverse() == FieldElem(1));

  auto e2 = make_extension(0, -2);
  FieldElem r = FieldElem::generator(e2);
  CHECK(r * r == FieldElem(2));

  CHECK_THROWS_AS(make_extension(0, -1), DomainError);
  CHECK_THROWS_AS(parse_adjoin("u^2 - 1"), DomainError);
}

TEST_CASE("square roots in the field") {
  auto ext = make_extension(-1, 1);
  auto s = field_sqrt(FieldElem(-3), ext);
  REQUIRE(s.has_value());
  CHECK(*s * *s == FieldElem(-3));
  CHECK_FALSE(field_sqrt(FieldElem(2), ext).has_value());
  CHECK(*field_sqrt(FieldElem(Q("9/4")), nullptr) * *field_sqrt(FieldElem(Q("9/4")), nullptr) == FieldElem(Q("9/4")));
}

TEST_CASE("ring axioms on random series") {
  auto ext = make_extension(-1, 1);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-4, 4), e(-3, 5), d(1, 3);
  auto rnd = [&] {
    std::vector<PuiseuxTerm> terms;
    int n = 1 + rng() % 3;
    for (int k = 0; k < n; ++k)
      terms.push_back({Rational(e(rng), d(rng)), FieldElem(Rational(c(rng)), Rational(c(rng)), ext)});
    return Puiseux::from_terms(terms);
  };
  for (int it = 0; it < 200; ++it) {
    Puiseux a = rnd(), b = rnd(), cc = rnd();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + cc == a + (b + cc));
    CHECK((a * b) * cc == a * (b * cc));
    CHECK(a * (b + cc) == a * b + a * cc);
    CHECK(a - a == Puiseux());
    if (!a.is_zero() && !b.is_zero()) {
      CHECK(*(a * b).val() == *a.val() + *b.val());
      CHECK((a * b).init() == a.init() * b.init());
    }
    if (!a.is_zero() && !b.is_zero() && !(a + b).is_zero())
      CHECK(*(a + b).val() >= std::min(*a.val(), *b.val()));
  }
}

TEST_CASE("parsing series and rationals") {
  CHECK(parse_rational("-7/14") == Q("-1/2"));
  CHECK(S("(1/2)*t^(-4)").val() == Rational(-4));
  auto ext = parse_adjoin("u: u^2-u+1");
  Puiseux p = S("1/2 + 1/2*u", ext);
  CHECK(p.init().extension_part() == Q("1/2"));
}
