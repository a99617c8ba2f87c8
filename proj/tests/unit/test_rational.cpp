#include "doctest.h"
#include "strichartz/error.hpp"
#include "strichartz/rational.hpp"

using strichartz::ExponentRational;

TEST_CASE("rational arithmetic reduces") {
  const ExponentRational a(6, 8), b(1, 4);
  CHECK(a == ExponentRational(3, 4));
  CHECK(a + b == ExponentRational(1));
  CHECK(a - b == ExponentRational(1, 2));
  CHECK(a * b == ExponentRational(3, 16));
  CHECK(a / b == ExponentRational(3));
  CHECK(ExponentRational(1, -2) == ExponentRational(-1, 2));
  CHECK(ExponentRational(2, 3) < ExponentRational(3, 4));
}

TEST_CASE("infinity behaves as a limit") {
  const auto inf = ExponentRational::infinity();
  CHECK(inf.is_infinite());
  CHECK(inf.reciprocal() == ExponentRational(0));
  CHECK(ExponentRational(0).reciprocal() == inf);
  CHECK(ExponentRational(5) < inf);
  CHECK(strichartz::dual_exponent(inf) == ExponentRational(1));
  CHECK(strichartz::dual_exponent(ExponentRational(1)) == inf);
  CHECK(strichartz::dual_exponent(ExponentRational(3)) == ExponentRational(3, 2));
}

TEST_CASE("parse accepts fractions, decimals and inf") {
  CHECK(ExponentRational::parse("3/2") == ExponentRational(3, 2));
  CHECK(ExponentRational::parse("1.4") == ExponentRational(7, 5));
  CHECK(ExponentRational::parse("inf").is_infinite());
  CHECK(ExponentRational::parse("-2") == ExponentRational(-2));
  CHECK_THROWS_AS(ExponentRational::parse("3/0x"), strichartz::Error);
  CHECK_THROWS_AS(ExponentRational::parse(""), strichartz::Error);
  CHECK(ExponentRational::parse("3/2").to_string() == "3/2");
}

TEST_CASE("overflow is reported") {
  const ExponentRational big(INT64_MAX / 2 + 1);
  try {
    (void)(big * big);
    FAIL("expected overflow");
  } catch (const strichartz::Error& e) {
    CHECK(e.kind() == strichartz::ErrorKind::Overflow);
  }
}
