#include <doctest.h>

#include "divlink/geometry.h"
#include "divlink/rational.h"

#include <stdexcept>

using namespace divlink;

TEST_CASE("parse_rational accepts fractions, decimals and integers") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(parse_rational("+2") == Rational(2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("to_string is lowest terms") {
  CHECK(to_string(Rational(6, 8)) == "3/4");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(to_string(Point2{Rational(1, 2), Rational(0)}) == "(1/2,0)");
}

TEST_CASE("round_to_grid") {
  CHECK(round_to_grid(0.5, 20) == Rational(1, 2));
  CHECK(round_to_grid(0.1, 4) == Rational(1, 8));
}

TEST_CASE("segment intersection kinds") {
  using K = SegmentIntersection::Kind;
  Point2 a{Rational(-1), Rational(0)}, b{Rational(1), Rational(0)};
  Point2 c{Rational(0), Rational(-1)}, d{Rational(0), Rational(1)};
  auto hit = intersect_segments(a, b, c, d);
  CHECK(hit.kind == K::Proper);
  CHECK(hit.point == Point2{Rational(0), Rational(0)});
  CHECK(hit.s == Rational(1, 2));
  CHECK(hit.t == Rational(1, 2));

  Point2 e{Rational(0), Rational(0)};
  CHECK(intersect_segments(a, b, e, d).kind == K::Touch);
  CHECK(intersect_segments(a, b, Point2{Rational(0), Rational(0)}, Point2{Rational(2), Rational(0)}).kind ==
        K::Overlap);
  CHECK(intersect_segments(a, e, b, Point2{Rational(2), Rational(0)}).kind == K::None);
  CHECK(intersect_segments(a, b, Point2{Rational(0), Rational(1)}, Point2{Rational(1), Rational(2)}).kind ==
        K::None);
}
