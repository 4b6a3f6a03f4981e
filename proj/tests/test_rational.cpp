#include "doctest.h"
#include "sqcert/rational.hpp"
#include "sqcert/rng.hpp"

using namespace sqcert;

TEST_CASE("rational string round trip") {
  CHECK(rational_to_string(rat(3, 12)) == "1/4");
  CHECK(rational_to_string(rat(-3, 12)) == "-1/4");
  CHECK(rational_to_string(rat(7)) == "7");
  CHECK(rational_to_string(rat(0, 5)) == "0");
  CHECK(rational_to_string(rat(5, -10)) == "-1/2");

  for (const char* text : {"1/4", "-7", "0", "59/60", "123456789123456789123/100000000000000007"}) {
    const auto q = parse_rational(text);
    REQUIRE(q.has_value());
    CHECK(rational_to_string(*q) == text);
  }
}

TEST_CASE("rational parsing rejects malformed text") {
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("a/4").has_value());
  CHECK_FALSE(parse_rational("1/-4").has_value());
  CHECK_FALSE(parse_rational("1.5").has_value());
  CHECK_FALSE(parse_rational("2/").has_value());
  CHECK_FALSE(parse_rational("-").has_value());
}

TEST_CASE("parsed rationals are canonical") {
  const auto q = parse_rational("6/8");
  REQUIRE(q.has_value());
  CHECK(q->get_num() == 3);
  CHECK(q->get_den() == 4);
}

TEST_CASE("bit length telemetry") {
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(1)) == 1);
  CHECK(bit_length(BigInt(255)) == 8);
  CHECK(max_bit_length(rat(255, 257)) == 9);
}

TEST_CASE("splitmix64 determinism and range") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 g(7);
  for (int i = 0; i < 1000; ++i) {
    const auto v = g.below(13);
    CHECK(v < 13);
  }
  SplitMix64 h(7);
  const Rational q = h.unit_rational();
  CHECK(q >= 0);
  CHECK(q <= 1);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}
