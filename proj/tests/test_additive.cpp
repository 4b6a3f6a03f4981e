#include <cmath>

#include "doctest.h"
#include "sqcert/additive.hpp"
#include "sqcert/rng.hpp"

using namespace sqcert;
using namespace sqcert::additive;
using modring::SquareKind;

TEST_CASE("convolution counts") {
  const std::vector<std::vector<std::uint64_t>> pair = {{0, 1}, {0, 1}};
  const auto rep = convolution_counts(pair, 3);
  CHECK(rep.counts == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(rep.total == 4);

  // full sets: every target hits W^{s-1}
  std::vector<std::uint64_t> full(5);
  for (std::uint64_t i = 0; i < 5; ++i) full[i] = i;
  const auto fr = convolution_counts({full, full, full}, 5);
  for (auto c : fr.counts) CHECK(c == 25);

  // singletons give the indicator of the sum
  const auto sr = convolution_counts({{2}, {3}, {4}}, 7);
  for (std::uint64_t y = 0; y < 7; ++y) CHECK(sr.counts[y] == (y == 2 ? 1u : 0u));

  CHECK_THROWS_AS(convolution_counts({}, 5), std::invalid_argument);
  CHECK_THROWS_AS(convolution_counts({{1}, {}}, 5), std::invalid_argument);
}

TEST_CASE("convolution mass conservation on random sets") {
  SplitMix64 g(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t W = 5 + g.below(496);
    const int s = 2 + static_cast<int>(g.below(3));
    std::vector<std::vector<std::uint64_t>> sets(s);
    BigInt expected(1);
    for (auto& set : sets) {
      const std::uint64_t size = 1 + g.below(std::min<std::uint64_t>(W, 40));
      std::vector<char> used(W, 0);
      while (set.size() < size) {
        const std::uint64_t v = g.below(W);
        if (!used[v]) {
          used[v] = 1;
          set.push_back(v);
        }
      }
      expected *= bigint_u64(set.size());
    }
    CHECK(convolution_counts(sets, W).total == expected);
  }
}

TEST_CASE("t_count examples and bound") {
  CHECK(t_count(5, 1, 1) == 2);  // (1,0) and (0,4)
  CHECK(t_count(3, 1, 1) == 1);  // squares mod 3 are {0,1}: only (1,0)
  CHECK(t_count_bound(5, 1) == rat(3));
  CHECK(t_count_bound(3, 1) == rat(5, 2));
  CHECK(rat_u64(t_count(7, 2, 1)) <= t_count_bound(7, 2));
  CHECK(t_count_bound(7, 2) == rat(42, 4) + 2);
  CHECK_THROWS_AS(t_count(5, 1, 10), std::domain_error);
  CHECK_THROWS_AS(t_count(4, 1, 1), std::invalid_argument);

  const auto sweep = t_count_sweep(300);
  CHECK(sweep.all_ok);
}

TEST_CASE("additive energy of squares") {
  const auto e3 = additive_energy_squares(3);
  CHECK(e3.energy == 6);
  CHECK(e3.square_count == 2);
  CHECK(additive_energy_squares(1).energy == 1);

  // diagonal quadruples alone give square_count^2
  for (std::uint64_t w : {2ULL, 7ULL, 12ULL, 45ULL}) {
    const auto r = additive_energy_squares(w);
    CHECK(r.energy >= r.square_count * r.square_count);
  }

  const auto table = energy_reports_up_to(200);
  CHECK(energy_multiplicative(table, 200));
}

TEST_CASE("indicator restriction ratio") {
  // (3*6)^{1/4} / 2
  CHECK(indicator_restriction_ratio(3, 1) ==
        doctest::Approx(std::pow(18.0, 0.25) / 2.0).epsilon(1e-9));
  CHECK_THROWS_AS(indicator_restriction_ratio(4, 1), std::invalid_argument);
  // trend toward 1 for growing p
  const double r11 = indicator_restriction_ratio(11, 1);
  const double r199 = indicator_restriction_ratio(199, 1);
  CHECK(r11 > 1.0);
  CHECK(r199 > 1.0);
  CHECK(r199 < r11);
}

TEST_CASE("green-ruzsa lower bound") {
  const auto ex = green_ruzsa_verify(5, {0, 1}, {0, 1}, 1);
  CHECK(ex.lhs == 3);
  CHECK(ex.rhs == 2);
  CHECK(ex.ok);

  std::vector<std::uint64_t> z5 = {0, 1, 2, 3, 4};
  const auto full = green_ruzsa_verify(5, z5, z5, 5);
  CHECK(full.lhs == 25);
  CHECK(full.rhs == 20);
  CHECK(full.ok);

  const auto single = green_ruzsa_verify(5, {2}, {0, 1, 2}, 1);
  CHECK(single.lhs == 3);
  CHECK(single.rhs == 2);  // min(5, 1+3-1-1) = 2
  CHECK(single.ok);

  CHECK_THROWS_AS(green_ruzsa_verify(5, {0, 1}, {0, 1}, 3), std::invalid_argument);

  SplitMix64 g(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t W = 2 + g.below(119);
    auto sample_set = [&](std::uint64_t size) {
      std::vector<char> used(W, 0);
      std::vector<std::uint64_t> set;
      while (set.size() < size) {
        const std::uint64_t v = g.below(W);
        if (!used[v]) {
          used[v] = 1;
          set.push_back(v);
        }
      }
      return set;
    };
    const auto A = sample_set(1 + g.below(W));
    const auto B = sample_set(1 + g.below(W));
    const std::uint64_t t = 1 + g.below(std::min(A.size(), B.size()));
    CHECK(green_ruzsa_verify(W, A, B, t).ok);
  }
}

TEST_CASE("cauchy-davenport") {
  CHECK(cauchy_davenport_verify(7, {{1}, {2}, {3}}).sumset_size == 1);
  CHECK(cauchy_davenport_verify(7, {{1}, {2}, {3}}).ok);
  std::vector<std::uint64_t> zp;
  for (std::uint64_t i = 0; i < 13; ++i) zp.push_back(i);
  CHECK(cauchy_davenport_verify(13, {zp, zp}).sumset_size == 13);

  SplitMix64 g(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 2 + static_cast<int>(g.below(3));
    std::vector<std::vector<std::uint64_t>> sets(s);
    for (auto& set : sets) {
      std::vector<char> used(13, 0);
      const std::uint64_t size = 1 + g.below(13);
      while (set.size() < size) {
        const std::uint64_t v = g.below(13);
        if (!used[v]) {
          used[v] = 1;
          set.push_back(v);
        }
      }
    }
    CHECK(cauchy_davenport_verify(13, sets).ok);
  }
  CHECK_THROWS_AS(cauchy_davenport_verify(12, {{1}}), std::invalid_argument);
}

TEST_CASE("interval counterexample construction") {
  const auto c = interval_counterexample(997, 5, 0.1);
  CHECK(c.eta == doctest::Approx(0.15));
  CHECK_FALSE(c.missing.empty());
  CHECK(static_cast<double>(c.set.size()) >= 0.1 * (997.0 + 1.0) / 2.0);
  // sums of s positive interval elements stay strictly inside (0, p)
  CHECK(c.missing.front() == 0);
  for (std::uint64_t a : c.set) {
    CHECK(a >= 1);
    CHECK(static_cast<double>(a) <= c.eta * 997.0);
  }
  CHECK_THROWS_AS(interval_counterexample(997, 5, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(interval_counterexample(11, 5, 0.19), std::domain_error);

  // tau = 0: any eta below 1/s works, missing still guaranteed
  const auto z = interval_counterexample(997, 5, 0.0);
  CHECK(z.eta == doctest::Approx(0.1));
  CHECK_FALSE(z.missing.empty());
}

TEST_CASE("representation witness counts") {
  const auto squares29 = modring::squares_mod(29, SquareKind::All).elements;
  for (std::uint64_t y = 0; y < 29; ++y) CHECK(theorem_main_witness(29, 5, squares29, y).count > 0);

  CHECK(theorem_main_witness(29, 5, {0}, 0).count == 1);
  CHECK(theorem_main_witness(29, 5, {0}, 3).count == 0);

  // random 40% subset of the squares mod 101 at s = 5 still covers every target
  const auto squares101 = modring::squares_mod(101, SquareKind::All).elements;
  SplitMix64 g(5);
  std::vector<std::uint64_t> A;
  for (std::uint64_t x : squares101)
    if (g.below(100) < 40) A.push_back(x);
  REQUIRE(A.size() >= 15);
  std::uint64_t min_count = ~0ULL;
  for (std::uint64_t y = 0; y < 101; ++y)
    min_count = std::min(min_count, theorem_main_witness(101, 5, A, y).count);
  CHECK(min_count > 0);
}
