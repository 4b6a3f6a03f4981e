#include <algorithm>
#include <map>

#include "doctest.h"
#include "sqcert/comblemma.hpp"
#include "sqcert/rng.hpp"

using namespace sqcert;
using namespace sqcert::comblemma;

TEST_CASE("threshold tables") {
  CHECK(threshold_d(5) == rat(9, 10));
  CHECK(threshold_D(5) == rat(59, 60));
  CHECK(threshold_d(6) == rat(5, 6));
  CHECK(threshold_D(6) == rat(7, 8));
  CHECK(threshold_d(7) == rat(5, 7));
  CHECK(threshold_D(7) == rat(3, 4));
  CHECK(threshold_d(8) == rat(21, 32));
  CHECK(threshold_D(8) == rat(21, 32));
  CHECK(threshold_d(10) == rat(23, 40));
  CHECK(threshold_D(10) == rat(23, 40));
  CHECK(threshold_d(13) == rat(1, 2));
  CHECK(threshold_D(13) == rat(1, 2));
  CHECK_THROWS_AS(threshold_d(4), std::invalid_argument);
  CHECK_THROWS_AS(threshold_D(4), std::invalid_argument);
  for (int s = 5; s <= 64; ++s) {
    CHECK(threshold_D(s) >= threshold_d(s));
    CHECK(threshold_d(s) >= rat(1, 2));
    CHECK(threshold_d(s) >= rat(s + 13, 4 * s));
  }
}

TEST_CASE("canonical tuple counts") {
  CHECK(canonical_t_tuples(5, 5).size() == 126);
  CHECK(canonical_t_tuples(6, 3).size() == 28);
  CHECK(canonical_t_tuples(7, 3).size() == 36);
  CHECK(canonical_t_tuples(8, 3).size() == 45);
  CHECK(canonical_t_tuples(9, 3).size() == 55);
  CHECK(canonical_t_tuples(10, 3).size() == 66);
  CHECK(canonical_t_tuples(11, 3).size() == 78);
  // multiset count C(n+s-1, s) on a few shapes
  CHECK(canonical_t_tuples(5, 3).size() == 21);
  CHECK(canonical_t_tuples(2, 4).size() == 10);
  // non-decreasing and in range
  for (const auto& t : canonical_t_tuples(6, 3)) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      CHECK(t[j] >= 1);
      CHECK(t[j] <= 3);
      if (j > 0) CHECK(t[j - 1] <= t[j]);
    }
  }
}

TEST_CASE("generated lp structure") {
  const std::vector<int> full(6, 3);
  const auto p = generate_lp(6, 3, full);
  CHECK(p.num_vars == 18);
  // independent count of the averaging tuples: sum >= 6 over {0,1,2}^6
  std::int64_t expected = 0;
  for (int a = 0; a < 729; ++a) {
    int v = a, sum = 0;
    for (int j = 0; j < 6; ++j) {
      sum += v % 3;
      v /= 3;
    }
    if (sum >= 6) ++expected;
  }
  const std::int64_t mono = 6 * 2;
  CHECK(static_cast<std::int64_t>(p.rows.size()) == mono + expected);
  CHECK(generated_row_count(6, 3, full) == mono + expected);
  for (std::size_t i = mono; i < p.rows.size(); ++i) {
    CHECK(p.rows[i].idx.size() == 6);
    for (const auto& v : p.rows[i].val) CHECK(v == rat(1, 6));
    CHECK(p.rhs[i] == rat(5, 6));
  }
  for (const auto& c : p.objective) CHECK(c == rat(1, 18));

  // trivial support: no averaging rows, optimum = s/(ns) = 1/3
  const std::vector<int> ones(6, 1);
  const auto p1 = generate_lp(6, 3, ones);
  CHECK(p1.rows.empty());
  const auto s1 = solve_generated_lp(6, 3, ones, true);
  CHECK(s1.solution.value == rat(1, 3));
  CHECK_FALSE(s1.certificate_flaw.has_value());

  CHECK_THROWS_AS(generate_lp(4, 3, std::vector<int>(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(generate_lp(6, 3, std::vector<int>(6, 4)), std::invalid_argument);
}

TEST_CASE("streamed rows match the materialized problem") {
  for (const auto& t : {std::vector<int>{1, 2, 2, 3, 3, 3}, std::vector<int>{2, 2, 2, 2, 2, 2}}) {
    const auto p = generate_lp(6, 3, t);
    std::int64_t seen = 0;
    stream_generated_rows(6, 3, t, [&](std::int64_t i, const exactlp::SparseRow& row,
                                       const Rational& rhs) {
      REQUIRE(i == seen);
      REQUIRE(i < static_cast<std::int64_t>(p.rows.size()));
      CHECK(row.idx == p.rows[i].idx);
      CHECK(row.val == p.rows[i].val);
      CHECK(rhs == p.rhs[i]);
      ++seen;
    });
    CHECK(seen == static_cast<std::int64_t>(p.rows.size()));
  }
}

TEST_CASE("averaging tuple index inverts the stream order") {
  const std::vector<int> t{2, 3, 3, 1, 3, 2};
  const auto p = generate_lp(6, 3, t);
  const std::int64_t mono = [&] {
    std::int64_t m = 0;
    for (int tj : t) m += tj - 1;
    return m;
  }();
  // recover each averaging row's tuple from its variable indices
  std::vector<int> offset(6);
  int acc = 0;
  for (int j = 0; j < 6; ++j) {
    offset[j] = acc;
    acc += t[j];
  }
  for (std::int64_t i = mono; i < static_cast<std::int64_t>(p.rows.size()); ++i) {
    std::vector<int> tuple(6);
    for (int j = 0; j < 6; ++j) tuple[j] = p.rows[i].idx[j] - offset[j];
    CHECK(averaging_tuple_index(6, 3, t, tuple) == i);
  }
}

TEST_CASE("base case (6,3) is bounded by d_6 with verified certificates") {
  const auto report = verify_base_case(6, 3);
  CHECK(report.cases.size() == 28);
  CHECK(report.all_bounded);
  CHECK(report.all_certified);
  CHECK(report.max_optimum <= rat(5, 6));
  for (const auto& c : report.cases) {
    CHECK(c.bounded);
    CHECK(c.certificate_ok);
  }
}

TEST_CASE("negative control: (5,3) exceeds d_5 somewhere") {
  const auto report = verify_base_case(5, 3);
  CHECK(report.cases.size() == 21);
  CHECK_FALSE(report.all_bounded);
  bool found = false;
  for (const auto& c : report.cases) {
    CHECK(c.certificate_ok);  // optimum is certified even when above d_5
    if (!(c.optimum <= rat(9, 10))) found = true;
  }
  CHECK(found);
}

TEST_CASE("column permutation invariance of the optimum") {
  SplitMix64 g(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 5 + static_cast<int>(g.below(3));
    const int n = 3;
    std::vector<int> t(s);
    for (auto& v : t) v = 1 + static_cast<int>(g.below(n));
    std::vector<int> perm = t;
    for (int k = static_cast<int>(perm.size()) - 1; k > 0; --k)
      std::swap(perm[k], perm[g.below(static_cast<std::uint64_t>(k + 1))]);
    const auto a = solve_generated_lp(s, n, t, false);
    const auto b = solve_generated_lp(s, n, perm, false);
    CHECK(a.solution.value == b.solution.value);
  }
}

TEST_CASE("adding a constraint never increases the optimum") {
  SplitMix64 g(1212);
  for (int trial = 0; trial < 20; ++trial) {
    const int s = 5 + static_cast<int>(g.below(2));
    std::vector<int> t(s);
    for (auto& v : t) v = 1 + static_cast<int>(g.below(3));
    auto p = generate_lp(s, 3, t);
    const auto before = exactlp::simplex_solve(p);
    exactlp::SparseRow extra;
    extra.idx.push_back(static_cast<std::int32_t>(g.below(p.num_vars)));
    extra.val.push_back(Rational(1));
    p.rows.push_back(extra);
    p.rhs.push_back(rat(1, 1 + static_cast<long>(g.below(3))));
    const auto after = exactlp::simplex_solve(p);
    CHECK(after.value <= before.value);
  }
}

TEST_CASE("conclusion search on crafted matrices") {
  DensityMatrix ones;
  ones.s = 6;
  ones.n = 3;
  ones.columns.assign(6, std::vector<Rational>(3, Rational(1)));
  const auto w = lemma_conclusion_search(ones, threshold_d(6));
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<int>{0, 0, 0, 2, 2, 2});  // lexicographically first witness

  DensityMatrix flat;
  flat.s = 6;
  flat.n = 3;
  flat.columns.assign(6, std::vector<Rational>(3, rat(5, 6)));
  CHECK_FALSE(lemma_conclusion_search(flat, rat(5, 6)).has_value());

  DensityMatrix zeroed = ones;
  zeroed.columns[2].assign(3, Rational(0));
  CHECK_FALSE(lemma_conclusion_search(zeroed, threshold_d(6)).has_value());
}

TEST_CASE("conclusion search agrees with brute force") {
  SplitMix64 g(777);
  int witnesses = 0, nones = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 5 + static_cast<int>(g.below(3));
    const int n = 3 + static_cast<int>(g.below(2));
    DensityMatrix m;
    m.s = s;
    m.n = n;
    m.columns.assign(s, std::vector<Rational>(n));
    for (auto& col : m.columns) {
      for (auto& a : col) a = g.below(3) == 0 ? Rational(0) : g.unit_rational();
      std::sort(col.begin(), col.end(), std::greater<Rational>());
    }
    const Rational threshold = rat_u64(g.below(1000), 1000);
    const auto fast = lemma_conclusion_search(m, threshold);
    const auto slow = lemma_conclusion_search_bruteforce(m, threshold);
    CHECK(fast == slow);
    if (fast) ++witnesses;
    else ++nones;
  }
  CHECK(witnesses > 20);
  CHECK(nones > 20);
}

TEST_CASE("hypothesis sampler") {
  const Rational d6 = threshold_d(6);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto m = sample_hypothesis_matrix(6, 3, seed);
    m.validate();
    CHECK(m.total_average() > d6);
    for (const auto& col : m.columns) CHECK(col[0] > 0);
  }
  // adversarial mode sits exactly at d + 1/1000
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = sample_density_matrix(12, 3, rat(1, 2), seed, true);
    CHECK(m.total_average() == rat(1, 2) + rat(1, 1000));
  }
  // determinism
  const auto a = sample_hypothesis_matrix(7, 3, 99);
  const auto b = sample_hypothesis_matrix(7, 3, 99);
  CHECK(a.columns == b.columns);
  CHECK_THROWS_AS(sample_hypothesis_matrix(5, 3, 1), std::invalid_argument);
}

TEST_CASE("conclusion-witness property smoke") {
  CHECK(lemma71_property_test(6, 3, 60, 12345).ok());
  CHECK(lemma71_property_test(5, 5, 40, 54321).ok());
  CHECK(lemma71_property_test(6, 4, 40, 2222, true).ok());
  CHECK(lemma72_property_test(12, rat(1, 2), 60, 777).ok());
  CHECK(lemma72_property_test(15, rat(1, 2), 40, 778, true).ok());
  CHECK_THROWS_AS(lemma72_property_test(11, rat(1, 2), 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(lemma72_property_test(12, rat(1, 3), 5, 1), std::invalid_argument);
}

TEST_CASE("small moduli adversary sweep, s = 7 reproduces the tight case") {
  const auto report = small_moduli_adversary_check(7);
  CHECK(report.m == 5);
  CHECK(report.all_within);
  CHECK(report.all_certified);
  bool seen = false;
  for (const auto& c : report.cases) {
    if (c.y != 1 || c.support != std::vector<std::uint64_t>{1, 4}) continue;
    seen = true;
    // single representation: four 1s and three 4s
    REQUIRE(c.constraints == 1);
    REQUIRE(c.binding_counts.size() == 1);
    CHECK(c.binding_counts[0] == std::vector<int>{4, 3});
    CHECK(c.optimum == rat(3, 4));  // equals D_7 exactly, binding row active
    CHECK(c.binding_rows == std::vector<std::int64_t>{0});
  }
  CHECK(seen);
}

TEST_CASE("small moduli adversary sweep, s = 8 and the unconstrained supports") {
  const auto report = small_moduli_adversary_check(8);
  CHECK(report.all_within);
  CHECK(report.max_optimum <= rat(21, 32));
  // a support without any representation maximizes |S|/#unit-squares
  bool unconstrained_seen = false;
  for (const auto& c : report.cases) {
    if (c.constraints == 0) {
      unconstrained_seen = true;
      CHECK(c.optimum == rat(static_cast<long>(c.support.size()), 2));
    }
  }
  CHECK(unconstrained_seen);
}

TEST_CASE("local theorem and theorem-24W property smoke") {
  CHECK(local_theorem_property_test(7, 6, 25, 31).ok());
  CHECK(local_theorem_property_test(11, 5, 15, 32).ok());
  CHECK(theorem82_property_test(5, 8, 15, 33).ok());
  CHECK(theorem82_property_test(385, 5, 3, 34).ok());  // 5*7*11, exercises the CRT cascade
  CHECK_THROWS_AS(local_theorem_property_test(10, 6, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(local_theorem_property_test(7, 5, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(theorem82_property_test(6, 8, 5, 1), std::invalid_argument);
}
