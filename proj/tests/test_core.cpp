#include "doctest.h"
#include "orbcover/core.hpp"

using namespace orbcover;

TEST_CASE("julian date of J2000 epoch") {
  CHECK(julian_date_utc(2000, 1, 1, 12, 0, 0.0) == doctest::Approx(2451545.0));
}

TEST_CASE("iso8601 parsing") {
  CHECK(parse_utc_iso8601("2025-01-01T12:00:00Z") ==
        doctest::Approx(2460677.0));
  CHECK(parse_utc_iso8601("2025-01-01T12:00:00.000Z") ==
        doctest::Approx(2460677.0));
  CHECK(parse_utc_iso8601("2022-12-18T18:00:00Z") ==
        doctest::Approx(julian_date_utc(2022, 12, 18, 18, 0, 0.0)));
  CHECK_THROWS_AS(parse_utc_iso8601("2025-13-01T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_utc_iso8601("not a date"), ParseError);
}

TEST_CASE("wrap_deg stays in [0,360)") {
  CHECK(wrap_deg(-30.0) == doctest::Approx(330.0));
  CHECK(wrap_deg(725.0) == doctest::Approx(5.0));
  CHECK(wrap_deg(0.0) == 0.0);
}

TEST_CASE("fnv1a64 known vector") {
  // FNV-1a reference: the empty string hashes to the offset basis.
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") != fnv1a64("b"));
}

TEST_CASE("vec3 algebra") {
  Vec3 a{1, 2, 3}, b{4, 5, 6};
  CHECK((a + b).x == 5);
  CHECK(a.dot(b) == doctest::Approx(32.0));
  Vec3 c = a.cross(b);
  CHECK(c.x == doctest::Approx(-3.0));
  CHECK(c.y == doctest::Approx(6.0));
  CHECK(c.z == doctest::Approx(-3.0));
  CHECK(Vec3{3, 4, 0}.norm() == doctest::Approx(5.0));
}
