#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqcert/exactlp.hpp"
#include "sqcert/rational.hpp"

namespace sqcert::comblemma {

// Density thresholds for the local (d) and global (D) problems; exact
// piecewise rationals. Throws std::invalid_argument for s < 5.
Rational threshold_d(int s);
Rational threshold_D(int s);

// Column-decreasing array a_{i,j}, 0 <= i < n, 1 <= j <= s, entries in [0,1].
struct DensityMatrix {
  int s = 0;
  int n = 0;
  std::vector<std::vector<Rational>> columns;  // columns[j][i], decreasing in i

  Rational total_average() const;
  void validate() const;  // throws on shape/monotonicity/range violations
};

// One non-decreasing representative per multiset of support cutoffs;
// column permutations do not change the optimum.
std::vector<std::vector<int>> canonical_t_tuples(int s, int n);

// The averaging-constraint family for support cutoffs t: variables a_{i,j}
// for i < t_j with bounds [0,1], column monotonicity rows first, then one row
// (1/s) sum_j a_{i_j, j} <= d_s per index tuple with sum i_j >= 2n, i_j < t_j,
// in lexicographic tuple order. Objective: maximize the total average.
exactlp::LpProblem generate_lp(int s, int n, const std::vector<int>& t);

// Row count and streaming enumeration with indexing identical to generate_lp.
std::int64_t generated_row_count(int s, int n, const std::vector<int>& t);
void stream_generated_rows(int s, int n, const std::vector<int>& t,
                           const exactlp::RowVisitor& visit);

// Global row index of the averaging constraint for one index tuple; inverse
// of the streaming order, used to lift sparse certificates onto the family.
std::int64_t averaging_tuple_index(int s, int n, const std::vector<int>& t,
                                   const std::vector<int>& tuple);

struct GeneratedSolve {
  exactlp::LpSolution solution;  // certificate row indices refer to the full family
  std::int64_t total_rows = 0;
  int separation_rounds = 0;
  std::optional<std::string> certificate_flaw;  // set when verify requested
};

// Solves the generated LP by constraint generation: only averaging rows that
// an exact separation oracle reports violated are added, every other row is
// implied by monotonicity; the final certificate (zero duals on unused rows)
// is checked against the complete streamed family when verify is set.
GeneratedSolve solve_generated_lp(int s, int n, const std::vector<int>& t, bool verify);

struct BaseCaseResult {
  std::vector<int> t;
  Rational optimum;
  bool bounded = false;  // optimum <= d_s, exact comparison
  bool certificate_ok = false;
  std::uint64_t certificate_digest = 0;
  std::int64_t rows = 0;
  std::int64_t pivots = 0;
  int separation_rounds = 0;
  std::size_t max_coeff_bits = 0;
  double wall_seconds = 0.0;
};

struct BaseCaseReport {
  int s = 0;
  int n = 0;
  Rational d;
  std::vector<BaseCaseResult> cases;  // canonical tuple order
  bool all_bounded = false;
  bool all_certified = false;
  Rational max_optimum;
};

// Solves every canonical LP(t) for the pair (s, n); tuple_limit > 0 restricts
// to the first tuples (smoke mode).
BaseCaseReport verify_base_case(int s, int n, int tuple_limit = 0);

// Exhaustive conclusion oracle: lexicographically first index tuple with
// sum i_j >= 2n, all a_{i_j, j} nonzero and (1/s) sum a_{i_j, j} > threshold;
// implemented as an exact suffix-maximum DP walk over the nonzero prefixes.
std::optional<std::vector<int>> lemma_conclusion_search(const DensityMatrix& m,
                                                        const Rational& threshold);
// Plain odometer scan, kept as the oracle's oracle for tests.
std::optional<std::vector<int>> lemma_conclusion_search_bruteforce(const DensityMatrix& m,
                                                                   const Rational& threshold);

// Seeded hypothesis sampler: column-sorted, entries k/1000, positive leading
// entries, total average strictly above the threshold (exact mixing).
// Adversarial mode pins the average at threshold + 1/1000.
DensityMatrix sample_density_matrix(int s, int n, const Rational& threshold, std::uint64_t seed,
                                    bool adversarial);
DensityMatrix sample_hypothesis_matrix(int s, int n, std::uint64_t seed);

struct AdversaryCase {
  std::uint64_t y = 0;
  std::vector<std::uint64_t> support;
  Rational optimum;
  bool within = false;  // optimum <= D_s
  std::int64_t constraints = 0;
  std::vector<std::int64_t> binding_rows;       // zero-slack averaging rows
  std::vector<std::vector<int>> binding_counts;  // multiplicity vectors of those rows
};

struct AdversaryReport {
  int s = 0;
  std::uint64_t m = 0;
  Rational d;
  Rational D;
  std::vector<AdversaryCase> cases;
  bool all_within = false;
  bool all_certified = false;
  Rational max_optimum;
};

// Support-enumerated adversary LPs over (Z/m)^{x(2)}, m = 5 for s >= 6 and
// m = 35 for s = 5: maximize the mean of f subject to the averaging constraint
// of every representation of y inside the support.
AdversaryReport small_moduli_adversary_check(int s);

struct TrialFailure {
  int trial = -1;
  std::uint64_t y = 0;
  std::string detail;
};

struct PropertyReport {
  std::string name;
  int trials = 0;
  std::vector<TrialFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Sampled functions on (Z/W)^{x(2)} with mean average above d_s must admit,
// for every target y, a decomposition with average above d_s and nonzero
// values; exhaustive residue DP per target.
PropertyReport local_theorem_property_test(std::uint64_t W, int s, int trials, std::uint64_t seed);

// Same over Z/24W with mean above D_s, targets y = s mod 24, conclusion
// threshold d_s.
PropertyReport theorem82_property_test(std::uint64_t W, int s, int trials, std::uint64_t seed);

PropertyReport lemma71_property_test(int s, int n, int trials, std::uint64_t seed,
                                     bool adversarial = false);
PropertyReport lemma72_property_test(int s, const Rational& D, int trials, std::uint64_t seed,
                                     bool adversarial = false);

}  // namespace sqcert::comblemma
