// Acceptance suite: one verdict line per criterion, exact tolerances pinned
// in code. Exit code = number of failed criteria.
//
// Known measured failure: criterion 13's monotone-deviation clause for the
// prime-square majorant does not hold at desk scale (prime fluctuations
// dominate the error term at N <= 10^6); the suite checks it as stated and
// reports the measured table. See the project README for the analysis.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sqcert/additive.hpp"
#include "sqcert/calibration.hpp"
#include "sqcert/charsums.hpp"
#include "sqcert/comblemma.hpp"
#include "sqcert/exactlp.hpp"
#include "sqcert/majorants.hpp"
#include "sqcert/modring.hpp"
#include "sqcert/rng.hpp"

using namespace sqcert;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void verdict(int criterion, bool ok, const std::string& text, double seconds) {
  std::printf("criterion %02d [%s] %s (%.1fs)\n", criterion, ok ? "PASS" : "FAIL", text.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// 1: the full LP family, plus 2: the (5,3) negative control
void criteria_base_cases() {
  Timer timer;
  const std::vector<std::pair<int, int>> pairs{{5, 5}, {6, 3}, {7, 3}, {8, 3},
                                               {9, 3}, {10, 3}, {11, 3}};
  const std::vector<std::size_t> expected_counts{126, 28, 36, 45, 55, 66, 78};
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [s, n] = pairs[i];
    const auto report = comblemma::verify_base_case(s, n);
    const bool case_ok = report.cases.size() == expected_counts[i] && report.all_bounded &&
                         report.all_certified;
    ok = ok && case_ok;
    detail += (i ? " " : "") + std::to_string(report.cases.size());
    if (!case_ok)
      detail += "(FAIL: bounded=" + std::string(report.all_bounded ? "y" : "n") +
                " certified=" + std::string(report.all_certified ? "y" : "n") + ")";
  }
  verdict(1, ok,
          "LP base cases (s,n) in {(5,5),(6,3),...,(11,3)}: problem counts " + detail +
              ", every exact optimum <= d_s, every certificate verified against the full family",
          timer.seconds());

  Timer timer2;
  const auto control = comblemma::verify_base_case(5, 3);
  std::string witness = "no violation found (DISCREPANCY: requires investigation)";
  bool found = false;
  for (const auto& c : control.cases) {
    if (c.optimum > control.d) {
      found = true;
      witness = "t=[";
      for (std::size_t j = 0; j < c.t.size(); ++j)
        witness += (j ? "," : "") + std::to_string(c.t[j]);
      witness += "] optimum " + rational_to_string(c.optimum) + " > 9/10";
      break;
    }
  }
  verdict(2, found && control.all_certified,
          "negative control (5,3): " + witness, timer2.seconds());
}

void criterion_reduced_gauss() {
  Timer timer;
  const double dev = charsums::reduced_gauss_max_deviation(199, 3);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "reduced Gauss sums p<=199, n<=3, all t coprime to p: max |sum - closed form| = "
                "%.2e < 1e-8",
                dev);
  verdict(3, dev < 1e-8, buf, timer.seconds());
}

void criterion_square_counts() {
  Timer timer;
  bool ok = true;
  for (std::uint64_t p = 3; p <= 50; p += 2) {
    if (!modring::is_prime_u64(p)) continue;
    std::uint64_t pn = 1;
    for (unsigned n = 1; n <= 4; ++n) {
      pn *= p;
      const auto enumerated =
          modring::squares_mod(pn, modring::SquareKind::All).elements.size();
      ok = ok && modring::count_squares(p, n) == BigInt(static_cast<unsigned long>(enumerated));
    }
  }
  verdict(4, ok, "closed-form square counts match exhaustive enumeration (odd p <= 50, n <= 4)",
          timer.seconds());
}

void criterion_t_count() {
  Timer timer;
  const auto sweep = additive::t_count_sweep(2000);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "difference-of-squares counts <= (p^n - p^{n-1})/4 + 2 for every odd prime power "
                "<= 2000 and every unit (min slack %.2f)",
                sweep.worst_slack);
  verdict(5, sweep.all_ok, buf, timer.seconds());
}

void criterion_energy() {
  Timer timer;
  const auto table = additive::energy_reports_up_to(2500);
  verdict(6, additive::energy_multiplicative(table, 2500),
          "additive energy of squares multiplicative over coprime pairs, products <= 2500, exact",
          timer.seconds());
}

void criterion_green_ruzsa() {
  Timer timer;
  SplitMix64 g(20240808);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t w = 2 + g.below(119);
    auto sample = [&](std::uint64_t size) {
      std::vector<char> used(w, 0);
      std::vector<std::uint64_t> set;
      while (set.size() < size) {
        const std::uint64_t v = g.below(w);
        if (!used[v]) {
          used[v] = 1;
          set.push_back(v);
        }
      }
      return set;
    };
    const auto A = sample(1 + g.below(w));
    const auto B = sample(1 + g.below(w));
    const std::uint64_t t = 1 + g.below(std::min(A.size(), B.size()));
    if (!additive::green_ruzsa_verify(w, A, B, t).ok) ++violations;
  }
  verdict(7, violations == 0,
          "Green-Ruzsa lower bound on 1000 seeded instances with W <= 120: " +
              std::to_string(violations) + " violations",
          timer.seconds());
}

void criterion_counterexample() {
  Timer timer;
  bool ok = true;
  std::string detail;
  for (std::uint64_t p : {1009ULL, 2003ULL, 10007ULL, 50021ULL, 99991ULL}) {
    const auto c = additive::interval_counterexample(p, 5, 0.15);
    const bool dense = static_cast<double>(c.set.size()) >= 0.15 * double(p + 1) / 2.0;
    ok = ok && dense && !c.missing.empty();
    detail += std::to_string(p) + ":" + std::to_string(c.missing.size()) + " ";
  }
  verdict(8, ok,
          "interval counterexamples (s=5, tau=0.15) dense enough with nonempty missing sets at "
          "p { " + detail + "}",
          timer.seconds());
}

void criterion_equidistribution() {
  Timer timer;
  std::vector<double> etas;
  for (int k = 1; k <= 9; ++k) etas.push_back(k / 10.0);
  const double sup = charsums::qr_equidistribution_max_error(100000, etas);
  const double bound = calibration().qr_equidistribution_bound;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "quadratic-residue equidistribution p <= 1e5, eta in {0.1..0.9}: sup normalized "
                "error %.4f <= frozen %.4f",
                sup, bound);
  verdict(9, sup <= bound, buf, timer.seconds());
}

void criterion_adversary() {
  Timer timer;
  bool ok = true;
  for (int s = 5; s <= 16; ++s) {
    const auto r = comblemma::small_moduli_adversary_check(s);
    ok = ok && r.all_within && r.all_certified;
  }
  // the s = 7 tight case: y = 1, S = {1,4} is cut by (4 f(1) + 3 f(4))/7 alone
  bool tight_ok = false;
  const auto r7 = comblemma::small_moduli_adversary_check(7);
  for (const auto& c : r7.cases) {
    if (c.y != 1 || c.support != std::vector<std::uint64_t>{1, 4}) continue;
    tight_ok = c.constraints == 1 && c.binding_counts.size() == 1 &&
               c.binding_counts[0] == std::vector<int>{4, 3} && c.optimum == rat(3, 4) &&
               c.binding_rows == std::vector<std::int64_t>{0};
  }
  verdict(10, ok && tight_ok,
          "small-moduli adversary LPs for s in {5..16}: every optimum <= D_s exactly; s=7, y=1, "
          "S={1,4} is bound by (4f(1)+3f(4))/7 <= d_7 with the binding row identified",
          timer.seconds());
}

void criterion_conclusion_suites() {
  Timer timer;
  bool ok = true;
  std::string failed;
  const std::vector<std::pair<int, int>> configs{{5, 5}, {6, 3}, {7, 3}, {8, 3}, {9, 3},
                                                 {10, 3}, {11, 3},  // base cases
                                                 {5, 6}, {6, 4}, {7, 4}, {8, 4}, {9, 4},
                                                 {10, 4}, {11, 4}};  // inductive regime
  for (const auto& [s, n] : configs) {
    const auto r = comblemma::lemma71_property_test(s, n, 500, 1000 + s * 100 + n);
    if (!r.ok()) {
      ok = false;
      failed += r.name + " ";
    }
  }
  for (int s : {12, 15}) {
    const auto r = comblemma::lemma72_property_test(s, rat(1, 2), 500, 9000 + s);
    if (!r.ok()) {
      ok = false;
      failed += r.name + " ";
    }
  }
  verdict(11, ok,
          "conclusion-witness property suites: 500 seeded matrices per configuration, base cases "
          "plus the inductive regime, s in {12,15} at D=1/2" +
              (failed.empty() ? std::string{} : ("; FAILED: " + failed)),
          timer.seconds());
}

void criterion_local_suites() {
  Timer timer;
  const bool ok = comblemma::local_theorem_property_test(7, 6, 100, 111).ok() &&
                  comblemma::local_theorem_property_test(11, 5, 100, 112).ok() &&
                  comblemma::local_theorem_property_test(77, 6, 100, 113).ok() &&
                  comblemma::theorem82_property_test(5, 8, 100, 114).ok() &&
                  comblemma::theorem82_property_test(35, 5, 100, 115).ok();
  verdict(12, ok,
          "local decomposition suites: W in {7,11,77} and moduli 24*5, 24*35, 100 seeded trials "
          "each, zero failures",
          timer.seconds());
}

void criterion_majorant_trend() {
  Timer timer;
  bool trend_ok = true;
  std::string table;
  for (std::uint64_t W : {8ULL, 120ULL, 840ULL}) {
    double prev = 0.0;
    table += "W=" + std::to_string(W) + ":";
    for (std::uint64_t N : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
      const auto c = majorants::normalization_check(1, W, N);
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.4f", c.relative_deviation);
      table += buf;
      if (N > 1000 && c.relative_deviation > prev) trend_ok = false;
      prev = c.relative_deviation;
    }
    table += " ";
  }
  const auto cheb = majorants::chebyshev_trend(1000000);
  const bool cheb_ok = std::abs(cheb.ratio_to_half_x_squared - 1.0) <= 0.005;
  char cbuf[64];
  std::snprintf(cbuf, sizeof(cbuf), "chebyshev ratio at 1e6 = %.5f", cheb.ratio_to_half_x_squared);
  verdict(13, trend_ok && cheb_ok,
          "majorant normalization deviation decreasing along N in {1e3..1e6}: " +
              std::string(trend_ok ? "yes" : "NO (measured ") + (trend_ok ? "" : table + "- prime "
              "fluctuations dominate at desk scale, see README)") + "; " + cbuf,
          timer.seconds());
}

exactlp::LpProblem random_lp(SplitMix64& g, std::int32_t max_vars) {
  exactlp::LpProblem p;
  p.num_vars = 1 + static_cast<std::int32_t>(g.below(max_vars));
  for (std::int32_t j = 0; j < p.num_vars; ++j) {
    p.objective.push_back(rat(static_cast<long>(g.below(13)) - 6, 1 + g.below(3)));
    exactlp::Bound b;
    b.lo = Rational(0);
    if (g.below(10) < 7) b.hi = rat(1 + g.below(4), 1 + g.below(2));
    p.bounds.push_back(b);
  }
  const int rows = static_cast<int>(g.below(7));
  for (int i = 0; i < rows; ++i) {
    exactlp::SparseRow row;
    for (std::int32_t j = 0; j < p.num_vars; ++j) {
      if (g.below(10) < 7) {
        row.idx.push_back(j);
        row.val.push_back(rat(static_cast<long>(g.below(11)) - 5, 1 + g.below(3)));
      }
    }
    if (row.idx.empty()) continue;
    p.rows.push_back(std::move(row));
    p.rhs.push_back(rat(static_cast<long>(g.below(17)) - 4, 1 + g.below(3)));
  }
  return p;
}

void criterion_solver_soundness() {
  Timer timer;
  SplitMix64 g(987654321);
  int solved = 0;
  bool agree = true;
  int mutations = 0, rejected = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_lp(g, 6);
    const auto fast = exactlp::simplex_solve(p);
    const auto oracle = exactlp::vertex_enumerate(p);
    if (fast.status != oracle.status ||
        (fast.status == exactlp::LpStatus::Optimal && fast.value != oracle.value)) {
      agree = false;
      break;
    }
    if (fast.status != exactlp::LpStatus::Optimal) continue;
    ++solved;
    if (!exactlp::verify_certificate(p, fast)) {
      agree = false;
      break;
    }
    // mutation suite: value, primal, and dual tampering must all be caught
    auto m1 = fast;  // broken duality identity
    m1.value += rat(1, 1000000);
    m1.certificate.value = m1.value;
    auto m2 = fast;  // infeasible primal (below the lower bound)
    const auto j2 = g.below(m2.primal.size());
    m2.primal[j2] = *p.bounds[j2].lo - 1;
    auto m3 = fast;  // negative row dual
    if (m3.certificate.row_duals.empty())
      m3.certificate.row_duals.emplace_back(0, rat(-1, 7));
    else
      m3.certificate.row_duals[g.below(m3.certificate.row_duals.size())].second = rat(-1, 7);
    auto m4 = fast;  // broken reduced-cost identity
    m4.certificate.reduced_costs[g.below(m4.certificate.reduced_costs.size())] -= rat(1, 13);
    for (const auto& m : {m1, m2, m3, m4}) {
      ++mutations;
      if (!exactlp::verify_certificate(p, m)) ++rejected;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "simplex = vertex enumeration on 500 seeded LPs (%d optimal); %d/%d tampered "
                "certificates rejected",
                solved, rejected, mutations);
  verdict(14, agree && solved > 150 && rejected == mutations, buf, timer.seconds());
}

}  // namespace

int main() {
  const Timer total;
  std::printf("sqcert acceptance suite\n");
  criteria_base_cases();
  criterion_reduced_gauss();
  criterion_square_counts();
  criterion_t_count();
  criterion_energy();
  criterion_green_ruzsa();
  criterion_counterexample();
  criterion_equidistribution();
  criterion_adversary();
  criterion_conclusion_suites();
  criterion_local_suites();
  criterion_majorant_trend();
  criterion_solver_soundness();
  std::printf("%d of 14 criteria failed (%.1fs total)\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
