#include <doctest.h>

#include "clmodel/rational.hpp"

using clmodel::Rat;

TEST_SUITE("rational") {

TEST_CASE("decimal parsing is exact") {
  CHECK(Rat::from_decimal("2.83") == Rat(283, 100));
  CHECK(Rat::from_decimal("1066.67") == Rat(106667, 100));
  CHECK(Rat::from_decimal("64") == Rat(64));
  CHECK(Rat::from_decimal("-0.5") == Rat(-1, 2));
  CHECK(Rat::from_decimal("6.7e-1") == Rat(67, 100));
  CHECK(Rat::from_decimal("1.5e2") == Rat(150));
  CHECK_THROWS(Rat::from_decimal("abc"));
  CHECK_THROWS(Rat::from_decimal(""));
  CHECK_THROWS(Rat::from_decimal("1.2.3"));
}

TEST_CASE("from_double recovers short decimals") {
  CHECK(Rat::from_double(2.83) == Rat(283, 100));
  CHECK(Rat::from_double(0.25) == Rat(1, 4));
  CHECK(Rat::from_double(13.9) == Rat(139, 10));
}

TEST_CASE("arithmetic and normalization") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(64) / Rat(128, 10) * Rat(283, 100) == Rat(1415, 100));
  CHECK(Rat(4, 8) == Rat(1, 2));
  CHECK(Rat(3, -6) == Rat(-1, 2));
  CHECK(Rat(2, 3) < Rat(3, 4));
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("round_nearest: halves go away from zero") {
  CHECK(Rat(5, 2).round_nearest() == 3);
  CHECK(Rat(-5, 2).round_nearest() == -3);
  CHECK(Rat(726, 10).round_nearest() == 73);
  CHECK(Rat(2535, 100).round_nearest() == 25);
  CHECK(Rat(507, 10).round_nearest() == 51);
  CHECK(Rat(16).round_nearest() == 16);
}

}  // TEST_SUITE
