#include <cmath>

#include "doctest.h"
#include "strichartz/error.hpp"
#include "strichartz/exponents.hpp"

using namespace strichartz;

namespace {
double inv(const ExponentRational& r) { return r.is_infinite() ? 0.0 : 1.0 / r.to_double(); }
}  // namespace

TEST_CASE("worked exponent values") {
  CHECK(a_of_p(3, 3) == ExponentRational(2));
  CHECK(a_of_p(3, ExponentRational::infinity()) == ExponentRational(1));
  const auto pr = strichartz_pair(3, 3);
  CHECK(pr.l == ExponentRational(3));
  CHECK(pr.theta == ExponentRational(4));
  const auto p1 = strichartz_pair(1, ExponentRational(3, 2));
  CHECK(p1.l == ExponentRational(6));
  CHECK(p1.theta == ExponentRational(6));
  CHECK(is_admissible(3, 6, 2));
  const auto d = derivative_exponents(3, ExponentRational(3, 2));
  CHECK(d.b == ExponentRational(2));
  CHECK(d.q == ExponentRational(6, 5));
  CHECK(d.p_tilde == ExponentRational(2));
}

TEST_CASE("closed forms agree with floating-point evaluation over a sweep") {
  for (int n = 1; n <= 7; ++n) {
    for (int num = 1; num <= 40; ++num) {
      const ExponentRational p(num, 4);
      if (p.to_double() * 2 <= n) continue;  // a(p) needs p > n/2
      const double pd = p.to_double();
      CHECK(inv(a_of_p(n, p)) == doctest::Approx(1.0 - n / (2.0 * pd)));
      if (pd >= 1.0) {
        const auto pr = strichartz_pair(n, p);
        CHECK(inv(pr.l) == doctest::Approx(0.5 - 1.0 / (2.0 * pd)));
        CHECK(inv(pr.theta) == doctest::Approx(n / (4.0 * pd)));
        // Every generated pair must pass the exact admissibility test.
        const double two_over = 2.0 * inv(pr.theta);
        if (two_over <= 1.0) CHECK(is_admissible(n, pr.l, pr.theta));
      }
      if (n >= 3) {
        const auto de = derivative_exponents(n, p);
        CHECK(inv(de.b) == doctest::Approx((4.0 * pd - n) / (4.0 * pd)));
        const double q = n == 3 ? 2.0 * pd / (pd + 1.0) : 2.0 * n * pd / (n + 4.0 * pd);
        CHECK(de.q.to_double() == doctest::Approx(q));
      }
    }
  }
}

TEST_CASE("admissibility boundaries") {
  // 2/sigma = n (1/2 - 1/lambda)
  CHECK(is_admissible(1, 2, ExponentRational::infinity()));
  CHECK(is_admissible(1, ExponentRational::infinity(), 4));
  CHECK_FALSE(is_admissible(1, ExponentRational::infinity(), 3));
  CHECK(is_admissible(2, 4, 4));
  CHECK_FALSE(is_admissible(3, 7, 2));
}

TEST_CASE("relative dimension of clusters") {
  CHECK(relative_dimension(ClusterSpec({1}, 3)) == 3);
  CHECK(relative_dimension(ClusterSpec({1, 2}, 3)) == 3);
  CHECK(relative_dimension(ClusterSpec({1, 2, 3}, 2)) == 4);
  CHECK_THROWS_AS(ClusterSpec({1, 3}, 1).validate_against(2), Error);
}

TEST_CASE("classification examples") {
  const auto r14 = classify_power_potential(3, ExponentRational(7, 5), Assumption::V2);
  CHECK(r14.feasible);
  REQUIRE(r14.witness);
  CHECK(*r14.witness == ExponentRational(3, 2));
  CHECK_FALSE(classify_power_potential(3, ExponentRational(8, 5), Assumption::V2).feasible);
  CHECK(classify_power_potential(3, ExponentRational(0), Assumption::V2).feasible);
  CHECK(power_locally_integrable(3, 1, 2));
  CHECK_FALSE(power_locally_integrable(3, ExponentRational(3, 2), 2));
}

TEST_CASE("n=3 V-2 threshold sits at 3/2") {
  const auto scan = scan_gamma_threshold(3, Assumption::V2, 100, ExponentRational(2));
  CHECK(scan.monotone);
  CHECK(scan.last_feasible == ExponentRational(149, 100));
  CHECK(scan.first_infeasible == ExponentRational(3, 2));
}
