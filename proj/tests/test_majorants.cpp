#include <cmath>

#include "doctest.h"
#include "sqcert/majorants.hpp"
#include "sqcert/modring.hpp"

using namespace sqcert;
using namespace sqcert::majorants;

TEST_CASE("w-trick parameters") {
  const auto p = wtrick_params(1000000, 5);
  CHECK(p.w == doctest::Approx(0.967).epsilon(0.01));
  CHECK(p.W == 8);  // empty odd-prime product
  CHECK(p.N == 50000);
  CHECK(p.w_within_log);
  CHECK(wtrick_params(1000000, 5, 6.0).W == 120);
  CHECK(wtrick_params(1000000, 5, 8.0).W == 840);
  CHECK_THROWS_AS(wtrick_params(15, 5), std::invalid_argument);
}

TEST_CASE("prime sieve") {
  CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
  CHECK(sieve_primes(1000000).size() == 78498);
  CHECK_THROWS_AS(sieve_primes(1), std::invalid_argument);
}

TEST_CASE("majorant construction") {
  const auto nu = build_nu(1, 8, 100);
  // 8n+1 = p^2 within [9, 801]: p in {3,5,7,11,13,17,19,23}
  REQUIRE(nu.weights.size() == 8);
  CHECK(nu.weights[0].first == 1);   // 3^2
  CHECK(nu.weights[1].first == 3);   // 5^2
  CHECK(nu.weights[1].second ==
        doctest::Approx(0.5 / 4.0 * 2.0 * 5.0 * std::log(5.0)));  // phi(8)/(8*sigma)=1/8
  CHECK(nu.weights.back().first == (23ULL * 23 - 1) / 8);

  // every supported n corresponds to a prime square, cross-checked by an
  // independent primality test
  for (const auto& [n, w] : nu.weights) {
    const std::uint64_t val = 8 * n + 1;
    const auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(val))));
    CHECK(root * root == val);
    CHECK(modring::is_prime_u64(root));
    CHECK(w > 0.0);
  }

  CHECK_THROWS_AS(build_nu(2, 8, 100), std::domain_error);
  CHECK_THROWS_AS(build_nu(1, 8, 0), std::invalid_argument);
  CHECK(build_nu(1, 16, 1).weights.empty());  // 17 is not a square
}

TEST_CASE("filtered weight stays below the majorant") {
  const auto nu = build_nu(1, 8, 2000);
  const auto f1mod4 = build_f([](std::uint64_t p) { return p % 4 == 1; }, 1, 8, 2000);
  CHECK(f1mod4.weights.size() < nu.weights.size());
  CHECK_FALSE(f1mod4.weights.empty());
  // every filtered weight appears in nu with the same value
  std::size_t k = 0;
  for (const auto& [n, w] : f1mod4.weights) {
    while (k < nu.weights.size() && nu.weights[k].first < n) ++k;
    REQUIRE(k < nu.weights.size());
    CHECK(nu.weights[k].first == n);
    CHECK(nu.weights[k].second == w);
  }
  CHECK(build_f([](std::uint64_t) { return false; }, 1, 8, 2000).weights.empty());
  const auto all = build_f([](std::uint64_t) { return true; }, 1, 8, 2000);
  CHECK(all.weights.size() == nu.weights.size());
  CHECK(all.total() == nu.total());
}

TEST_CASE("normalization check") {
  const auto c = normalization_check(1, 8, 10000);
  CHECK(c.total == doctest::Approx(10000.0).epsilon(0.06));
  CHECK(c.relative_deviation < 0.06);
  const auto small = normalization_check(1, 8, 1);
  CHECK(small.total > 0.0);  // 8*1+1 = 9 = 3^2 contributes
}

TEST_CASE("chebyshev trend") {
  const auto t = chebyshev_trend(10000);
  CHECK(t.ratio_to_half_x_squared == doctest::Approx(1.0).epsilon(0.02));
  const auto t100 = chebyshev_trend(100);
  CHECK(t100.sum > 0.0);
  CHECK_THROWS_AS(chebyshev_trend(99), std::invalid_argument);
}
