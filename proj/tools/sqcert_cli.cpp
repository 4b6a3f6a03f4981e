// sqcert: batch verification CLI. Every subcommand computes exact or
// calibrated checks and emits a JSON report with an embedded run manifest.
// Exit codes: 0 all assertions passed, 1 a mathematical assertion failed
// (the report pinpoints the instance), 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sqcert/additive.hpp"
#include "sqcert/calibration.hpp"
#include "sqcert/charsums.hpp"
#include "sqcert/comblemma.hpp"
#include "sqcert/exactlp.hpp"
#include "sqcert/majorants.hpp"
#include "sqcert/modring.hpp"
#include "sqcert/parallel.hpp"
#include "sqcert/report_io.hpp"
#include "sqcert/rng.hpp"

using namespace sqcert;
using report_io::Json;

namespace {

struct RunContext {
  std::string subcommand;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::string out_path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::string started = report_io::iso_timestamp();

  Json finish(Json body) const {
    report_io::Manifest m;
    m.subcommand = subcommand;
    m.args = args;
    m.seed = seed;
    m.threads = global_threads();
    m.started = started;
    m.finished = report_io::iso_timestamp();
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    body["manifest"] = report_io::manifest_json(m);
    return body;
  }

  void emit(const Json& report) const {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      report_io::write_text_file(out_path, text);
      std::cout << "report written to " << out_path << "\n";
    }
  }
};

int run_base_cases(RunContext& ctx, int s, int n, bool quick) {
  const auto report = comblemma::verify_base_case(s, n, quick ? 8 : 0);
  Json j = report_io::base_case_report_json(report);
  ctx.emit(ctx.finish(std::move(j)));
  std::printf("base cases (%d,%d): %zu problems, all_bounded=%s, all_certified=%s, max=%s (d=%s)\n",
              s, n, report.cases.size(), report.all_bounded ? "yes" : "no",
              report.all_certified ? "yes" : "no", rational_to_string(report.max_optimum).c_str(),
              rational_to_string(report.d).c_str());
  return (report.all_bounded && report.all_certified) ? 0 : 1;
}

int run_prop(RunContext& ctx, const std::string& which, std::uint64_t W, int s, int n, int trials,
             std::uint64_t seed, const std::string& d_text, bool adversarial) {
  if (which == "adversary") {
    const auto report = comblemma::small_moduli_adversary_check(s);
    ctx.emit(ctx.finish(report_io::adversary_report_json(report, true)));
    std::printf("adversary sweep s=%d m=%llu: %zu cases, all <= D_s: %s, max=%s\n", s,
                static_cast<unsigned long long>(report.m), report.cases.size(),
                report.all_within ? "yes" : "no", rational_to_string(report.max_optimum).c_str());
    return (report.all_within && report.all_certified) ? 0 : 1;
  }
  comblemma::PropertyReport report;
  if (which == "lemma71") {
    report = comblemma::lemma71_property_test(s, n, trials, seed, adversarial);
  } else if (which == "lemma72") {
    const auto D = parse_rational(d_text);
    if (!D) throw std::invalid_argument("prop-test: malformed --threshold rational");
    report = comblemma::lemma72_property_test(s, *D, trials, seed, adversarial);
  } else if (which == "local") {
    report = comblemma::local_theorem_property_test(W, s, trials, seed);
  } else {
    report = comblemma::theorem82_property_test(W, s, trials, seed);
  }
  ctx.emit(ctx.finish(report_io::property_report_json(report)));
  std::printf("%s: %d trials, %zu failures\n", report.name.c_str(), report.trials,
              report.failures.size());
  return report.ok() ? 0 : 1;
}

Json gauss_report_json(const charsums::GaussSumReport& r) {
  return Json{{"modulus", r.modulus},
              {"t", r.t},
              {"re", r.value.real()},
              {"im", r.value.imag()},
              {"magnitude", r.magnitude},
              {"bound", r.bound},
              {"satisfied", r.satisfied}};
}

int run_gauss(RunContext& ctx, const std::string& which, std::uint64_t p_max, unsigned n_max,
              std::uint64_t n3_full, std::uint64_t w_max, const std::string& calib_out) {
  if (which == "batch") {
    // GaussSumReport batch for one prime power: every frequency up to t-max
    const std::uint64_t p = p_max;
    std::uint64_t pn = 1;
    for (unsigned i = 0; i < n_max; ++i) pn *= p;
    const std::uint64_t t_hi = w_max == 0 ? pn : std::min<std::uint64_t>(pn, w_max);
    Json batch = Json::array();
    bool ok = true;
    for (std::uint64_t t = 0; t < t_hi; ++t) {
      const auto r = charsums::square_gauss_report(p, n_max, t, calibration().gauss_bound_c);
      ok = ok && r.satisfied;
      batch.push_back(gauss_report_json(r));
    }
    ctx.emit(ctx.finish(Json{{"check", "square-gauss-batch"},
                             {"p", p},
                             {"n", n_max},
                             {"t_count", t_hi},
                             {"all_satisfied", ok},
                             {"reports", batch}}));
    std::printf("gauss batch p=%llu n=%u: %llu frequencies, bound %s\n",
                static_cast<unsigned long long>(p), n_max,
                static_cast<unsigned long long>(t_hi), ok ? "satisfied" : "VIOLATED");
    return ok ? 0 : 1;
  }
  if (which == "reduced") {
    const double dev = charsums::reduced_gauss_max_deviation(p_max, n_max);
    ctx.emit(ctx.finish(Json{{"check", "reduced-gauss-closed-form"},
                             {"p_max", p_max},
                             {"n_max", n_max},
                             {"max_abs_deviation", dev},
                             {"tolerance", 1e-8},
                             {"ok", dev < 1e-8}}));
    std::printf("reduced gauss sums p<=%llu n<=%u: max deviation %.3e\n",
                static_cast<unsigned long long>(p_max), n_max, dev);
    return dev < 1e-8 ? 0 : 1;
  }
  if (which == "bound") {
    const double sup = charsums::square_gauss_bound_ratio_max(p_max, n3_full);
    const double c = calibration().gauss_bound_c;
    ctx.emit(ctx.finish(Json{{"check", "square-gauss-bound"},
                             {"p_max", p_max},
                             {"n3_full_p_max", n3_full},
                             {"sup_ratio", sup},
                             {"frozen_constant", c},
                             {"ok", sup <= c}}));
    std::printf("square gauss bound: sup |G|/(gcd*sqrt p) = %.6f (frozen %.4f)\n", sup, c);
    return sup <= c ? 0 : 1;
  }
  if (which == "nu-hat") {
    const double sup = charsums::nu_hat_statistic_max(w_max);
    const double bound = calibration().nu_hat_statistic_bound;
    ctx.emit(ctx.finish(Json{{"check", "nu-hat-pseudorandomness"},
                             {"w_max", w_max},
                             {"sup_statistic", sup},
                             {"frozen_constant", bound},
                             {"ok", sup <= bound}}));
    std::printf("nu-hat statistic sup over W<=%llu: %.6f (frozen %.4f)\n",
                static_cast<unsigned long long>(w_max), sup, bound);
    return sup <= bound ? 0 : 1;
  }
  if (which == "equidist") {
    std::vector<double> etas;
    for (int k = 1; k <= 9; ++k) etas.push_back(k / 10.0);
    const double sup = charsums::qr_equidistribution_max_error(p_max, etas);
    const double bound = calibration().qr_equidistribution_bound;
    ctx.emit(ctx.finish(Json{{"check", "qr-equidistribution"},
                             {"p_max", p_max},
                             {"etas", etas},
                             {"sup_normalized_error", sup},
                             {"frozen_constant", bound},
                             {"ok", sup <= bound}}));
    std::printf("equidistribution sup error p<=%llu: %.6f (frozen %.4f)\n",
                static_cast<unsigned long long>(p_max), sup, bound);
    return sup <= bound ? 0 : 1;
  }
  // calibrate: run the full grids and propose constants with 25% headroom
  const double gauss_sup = charsums::square_gauss_bound_ratio_max(97, 37);
  const double nu_sup = charsums::nu_hat_statistic_max(1000);
  std::vector<double> etas;
  for (int k = 1; k <= 9; ++k) etas.push_back(k / 10.0);
  const double qr_sup = charsums::qr_equidistribution_max_error(100000, etas);
  double k_sup = 0.0;
  for (std::uint64_t p = 11; p <= 499; p += 2) {
    if (!modring::is_prime_u64(p)) continue;
    k_sup = std::max(k_sup, (additive::indicator_restriction_ratio(p, 1) - 1.0) *
                                static_cast<double>(p));
  }
  Json points = Json::array();
  for (std::uint64_t W : {8ULL, 120ULL, 840ULL}) {
    for (std::uint64_t N : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
      const auto c = majorants::normalization_check(1, W, N);
      points.push_back(Json{{"W", W},
                            {"b", 1},
                            {"N", N},
                            {"max_relative_deviation", 1.25 * c.relative_deviation}});
    }
  }
  Json proposal{{"version", report_io::iso_timestamp()},
                {"_observed", Json{{"gauss_bound_c", gauss_sup},
                                   {"nu_hat_statistic_bound", nu_sup},
                                   {"qr_equidistribution_bound", qr_sup},
                                   {"restriction_ratio_k", k_sup}}},
                {"gauss_bound_c", 1.25 * gauss_sup},
                {"nu_hat_statistic_bound", 1.25 * nu_sup},
                {"qr_equidistribution_bound", 1.25 * qr_sup},
                {"restriction_ratio_k", 1.25 * k_sup},
                {"majorant_deviation_bounds", points}};
  if (!calib_out.empty()) {
    report_io::write_text_file(calib_out, proposal.dump(2) + "\n");
    std::printf("calibration proposal written to %s\n", calib_out.c_str());
  }
  ctx.emit(ctx.finish(Json{{"check", "calibrate"}, {"proposal", proposal}}));
  return 0;
}

int run_energy(RunContext& ctx, std::uint64_t w_max, std::uint64_t product_max,
               const std::string& csv_path) {
  std::ostringstream csv;
  csv << "p,n,S,energy,ratio\n";
  Json rows = Json::array();
  for (std::uint64_t p = 3; p <= w_max; p += 2) {
    if (!modring::is_prime_u64(p)) continue;
    std::uint64_t pn = p;
    unsigned n = 1;
    while (pn <= w_max) {
      const auto r = additive::additive_energy_squares(pn);
      csv << p << "," << n << "," << r.square_count << "," << r.energy << ","
          << r.indicator_ratio << "\n";
      rows.push_back(Json{{"p", p},
                          {"n", n},
                          {"S", r.square_count},
                          {"energy", r.energy},
                          {"ratio", r.indicator_ratio}});
      if (pn > w_max / p) break;
      pn *= p;
      ++n;
    }
  }
  if (!csv_path.empty()) report_io::write_text_file(csv_path, csv.str());
  bool multiplicative = true;
  if (product_max >= 4) {
    const auto table = additive::energy_reports_up_to(product_max);
    multiplicative = additive::energy_multiplicative(table, product_max);
  }
  ctx.emit(ctx.finish(Json{{"check", "energy-sweep"},
                           {"w_max", w_max},
                           {"product_max", product_max},
                           {"multiplicative", multiplicative},
                           {"rows", rows}}));
  std::printf("energy sweep done; multiplicativity up to %llu: %s\n",
              static_cast<unsigned long long>(product_max), multiplicative ? "ok" : "VIOLATED");
  return multiplicative ? 0 : 1;
}

int run_sumset(RunContext& ctx, const std::string& which, std::uint64_t W, int s, int instances,
               std::uint64_t seed) {
  if (which == "green-ruzsa") {
    SplitMix64 g(seed);
    Json failures = Json::array();
    for (int trial = 0; trial < instances; ++trial) {
      const std::uint64_t w = 2 + g.below(W - 1);
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
      const auto check = additive::green_ruzsa_verify(w, A, B, t);
      if (!check.ok) {
        Json f;
        f["trial"] = trial;
        f["W"] = w;
        f["t"] = t;
        f["lhs"] = check.lhs;
        f["rhs"] = check.rhs;
        failures.push_back(std::move(f));
      }
    }
    ctx.emit(ctx.finish(Json{{"check", "green-ruzsa"},
                             {"instances", instances},
                             {"w_max", W},
                             {"failures", failures}}));
    std::printf("green-ruzsa: %d instances, %zu violations\n", instances, failures.size());
    return failures.empty() ? 0 : 1;
  }
  if (which == "cauchy-davenport") {
    SplitMix64 g(seed);
    int violations = 0;
    for (int trial = 0; trial < instances; ++trial) {
      std::vector<std::vector<std::uint64_t>> sets(2 + g.below(3));
      for (auto& set : sets) {
        std::vector<char> used(W, 0);
        const std::uint64_t size = 1 + g.below(W);
        while (set.size() < size) {
          const std::uint64_t v = g.below(W);
          if (!used[v]) {
            used[v] = 1;
            set.push_back(v);
          }
        }
      }
      if (!additive::cauchy_davenport_verify(W, sets).ok) ++violations;
    }
    ctx.emit(ctx.finish(Json{{"check", "cauchy-davenport"},
                             {"p", W},
                             {"instances", instances},
                             {"violations", violations}}));
    std::printf("cauchy-davenport mod %llu: %d instances, %d violations\n",
                static_cast<unsigned long long>(W), instances, violations);
    return violations == 0 ? 0 : 1;
  }
  // witness: representation counts for every target over the full square set
  const auto squares = modring::squares_mod(W, modring::SquareKind::All).elements;
  std::uint64_t min_count = ~0ULL, min_y = 0;
  for (std::uint64_t y = 0; y < W; ++y) {
    const auto wr = additive::theorem_main_witness(W, s, squares, y);
    if (wr.count < min_count) {
      min_count = wr.count;
      min_y = y;
    }
  }
  const auto worst = additive::theorem_main_witness(W, s, squares, min_y);
  ctx.emit(ctx.finish(Json{{"check", "representation-witness"},
                           {"W", W},
                           {"s", s},
                           {"min_count", min_count},
                           {"min_witness", min_y},
                           {"normalized_constant", worst.normalized}}));
  std::printf("witness W=%llu s=%d: min count %llu at y=%llu (normalized %.6f)\n",
              static_cast<unsigned long long>(W), s,
              static_cast<unsigned long long>(min_count),
              static_cast<unsigned long long>(min_y), worst.normalized);
  return 0;
}

int run_counterexample(RunContext& ctx, std::uint64_t p, int s, double tau) {
  const auto c = additive::interval_counterexample(p, s, tau);
  Json j{{"check", "interval-counterexample"},
         {"p", p},
         {"s", s},
         {"tau", tau},
         {"eta", c.eta},
         {"set_size", c.set.size()},
         {"density", c.density},
         {"required_density", tau},
         {"missing_count", c.missing.size()},
         {"missing", c.missing}};
  ctx.emit(ctx.finish(std::move(j)));
  std::printf("counterexample p=%llu s=%d tau=%.3f: |A|=%zu, %zu residues missing from sA\n",
              static_cast<unsigned long long>(p), s, tau, c.set.size(), c.missing.size());
  return c.missing.empty() ? 1 : 0;
}

int run_majorant(RunContext& ctx, const std::string& which, std::uint64_t y, int s,
                 std::optional<double> w_override, std::uint64_t W, std::uint64_t b,
                 std::uint64_t N, std::uint64_t X, const std::string& csv_path) {
  if (which == "params") {
    const auto p = majorants::wtrick_params(y, s, w_override);
    ctx.emit(ctx.finish(Json{{"check", "w-trick-params"},
                             {"y", p.y},
                             {"s", p.s},
                             {"w", p.w},
                             {"W", p.W},
                             {"N", p.N},
                             {"w_within_log", p.w_within_log}}));
    std::printf("w=%.4f W=%llu N=%llu%s\n", p.w, static_cast<unsigned long long>(p.W),
                static_cast<unsigned long long>(p.N),
                p.w_within_log ? "" : " (flag: W > log N at this scale)");
    return 0;
  }
  if (which == "nu") {
    const auto nu = majorants::build_nu(b, W, N);
    Json weights = Json::array();
    for (const auto& [n, w] : nu.weights) weights.push_back(Json{{"n", n}, {"weight", w}});
    ctx.emit(ctx.finish(Json{{"check", "majorant-nu"},
                             {"W", W},
                             {"b", b},
                             {"N", N},
                             {"support_size", nu.weights.size()},
                             {"total", nu.total()},
                             {"weights", weights}}));
    std::printf("nu(b=%llu, W=%llu, N=%llu): %zu prime squares, total %.3f\n",
                static_cast<unsigned long long>(b), static_cast<unsigned long long>(W),
                static_cast<unsigned long long>(N), nu.weights.size(), nu.total());
    return 0;
  }
  if (which == "check") {
    const auto c = majorants::normalization_check(b, W, N);
    std::optional<double> frozen;
    for (const auto& pt : calibration().majorant_points)
      if (pt.W == W && pt.b == b && pt.N == N) frozen = pt.max_relative_deviation;
    const bool ok = !frozen || c.relative_deviation <= *frozen;
    Json j{{"check", "majorant-normalization"},
           {"W", W},
           {"b", b},
           {"N", N},
           {"total", c.total},
           {"relative_deviation", c.relative_deviation},
           {"ok", ok}};
    if (frozen) j["frozen_bound"] = *frozen;
    ctx.emit(ctx.finish(std::move(j)));
    std::printf("normalization W=%llu b=%llu N=%llu: total %.3f, deviation %.5f%s\n",
                static_cast<unsigned long long>(W), static_cast<unsigned long long>(b),
                static_cast<unsigned long long>(N), c.total, c.relative_deviation,
                ok ? "" : " (EXCEEDS frozen bound)");
    return ok ? 0 : 1;
  }
  if (which == "trend") {
    // report the deviation table against the frozen per-point bounds; the
    // strict monotone-trend assertion lives in the acceptance suite, where
    // its measured failure at desk scale is documented
    std::ostringstream csv;
    csv << "W,b,N,relative_deviation\n";
    Json rows = Json::array();
    bool regression_ok = true;
    for (const auto& pt : calibration().majorant_points) {
      const auto c = majorants::normalization_check(pt.b, pt.W, pt.N);
      regression_ok = regression_ok && c.relative_deviation <= pt.max_relative_deviation;
      rows.push_back(Json{{"W", pt.W},
                          {"b", pt.b},
                          {"N", pt.N},
                          {"relative_deviation", c.relative_deviation},
                          {"frozen_bound", pt.max_relative_deviation}});
      csv << pt.W << "," << pt.b << "," << pt.N << "," << c.relative_deviation << "\n";
    }
    if (!csv_path.empty()) report_io::write_text_file(csv_path, csv.str());
    ctx.emit(ctx.finish(Json{{"check", "majorant-trend"},
                             {"regression_ok", regression_ok},
                             {"rows", rows}}));
    std::printf("majorant deviation table done; frozen regression bounds: %s\n",
                regression_ok ? "ok" : "EXCEEDED");
    return regression_ok ? 0 : 1;
  }
  // chebyshev
  const auto t = majorants::chebyshev_trend(X);
  const bool assertable = X >= 1000000;
  const bool ok = !assertable || std::abs(t.ratio_to_half_x_squared - 1.0) <= 0.005;
  ctx.emit(ctx.finish(Json{{"check", "chebyshev-trend"},
                           {"X", X},
                           {"sum", t.sum},
                           {"ratio_to_half_x_squared", t.ratio_to_half_x_squared},
                           {"asserted", assertable},
                           {"ok", ok}}));
  std::printf("chebyshev X=%llu: ratio %.6f%s\n", static_cast<unsigned long long>(X),
              t.ratio_to_half_x_squared, assertable ? "" : " (informational)");
  return ok ? 0 : 1;
}

int run_lp_solve(RunContext& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
    return 2;
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: malformed JSON: %s\n", e.what());
    return 2;
  }
  std::string why;
  const auto problem = report_io::lp_problem_from_json(j, &why);
  if (!problem) {
    std::fprintf(stderr, "error: invalid LP: %s\n", why.c_str());
    return 2;
  }
  const auto sol = exactlp::simplex_solve(*problem);
  Json out{{"problem_label", problem->label}, {"solution", report_io::lp_solution_json(sol)}};
  bool ok = true;
  if (sol.status == exactlp::LpStatus::Optimal) {
    const auto flaw = exactlp::certificate_flaw(*problem, sol);
    ok = !flaw.has_value();
    out["certificate_verified"] = ok;
    if (flaw) out["certificate_flaw"] = *flaw;
  }
  ctx.emit(ctx.finish(std::move(out)));
  std::printf("lp solve: status %s%s\n", exactlp::to_string(sol.status),
              sol.status == exactlp::LpStatus::Optimal
                  ? (", value " + rational_to_string(sol.value)).c_str()
                  : "");
  return ok ? 0 : 1;
}

int run_all(RunContext& ctx, bool quick) {
  int failures = 0;
  Json checks = Json::array();
  auto record = [&](const std::string& name, bool ok, Json detail = {}) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
    Json entry{{"name", name}, {"ok", ok}};
    if (!detail.is_null()) entry["detail"] = std::move(detail);
    checks.push_back(std::move(entry));
  };

  const std::vector<std::pair<int, int>> pairs =
      quick ? std::vector<std::pair<int, int>>{{6, 3}, {7, 3}}
            : std::vector<std::pair<int, int>>{{5, 5}, {6, 3}, {7, 3}, {8, 3},
                                               {9, 3}, {10, 3}, {11, 3}};
  for (const auto& [s, n] : pairs) {
    const auto r = comblemma::verify_base_case(s, n);
    record("base-cases (" + std::to_string(s) + "," + std::to_string(n) + ")",
           r.all_bounded && r.all_certified,
           Json{{"cases", r.cases.size()}, {"max_optimum", rational_to_string(r.max_optimum)}});
  }
  {
    const auto r = comblemma::verify_base_case(5, 3);
    record("negative control (5,3) finds an optimum above d_5", !r.all_bounded,
           Json{{"max_optimum", rational_to_string(r.max_optimum)}});
  }
  {
    const double dev = charsums::reduced_gauss_max_deviation(quick ? 61 : 199, 3);
    record("reduced gauss closed form", dev < 1e-8, Json{{"max_deviation", dev}});
  }
  {
    const double sup = charsums::square_gauss_bound_ratio_max(quick ? 37 : 97, 19);
    record("square gauss bound", sup <= calibration().gauss_bound_c, Json{{"sup", sup}});
  }
  {
    const double sup = charsums::nu_hat_statistic_max(quick ? 301 : 1000);
    record("nu-hat pseudorandomness statistic", sup <= calibration().nu_hat_statistic_bound,
           Json{{"sup", sup}});
  }
  {
    std::vector<double> etas;
    for (int k = 1; k <= 9; ++k) etas.push_back(k / 10.0);
    const double sup = charsums::qr_equidistribution_max_error(quick ? 10000 : 100000, etas);
    record("qr equidistribution", sup <= calibration().qr_equidistribution_bound,
           Json{{"sup", sup}});
  }
  {
    const auto sweep = additive::t_count_sweep(quick ? 500 : 2000);
    record("t-count bound", sweep.all_ok, Json{{"worst_slack", sweep.worst_slack}});
  }
  {
    const std::uint64_t limit = quick ? 600 : 2500;
    record("energy multiplicativity",
           additive::energy_multiplicative(additive::energy_reports_up_to(limit), limit),
           Json{{"product_max", limit}});
  }
  {
    SplitMix64 g(20240808);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
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
      ok = additive::green_ruzsa_verify(w, A, B, 1 + g.below(std::min(A.size(), B.size()))).ok;
    }
    record("green-ruzsa inequality (1000 seeded)", ok);
  }
  {
    bool ok = true;
    Json detail = Json::array();
    for (std::uint64_t p : quick ? std::vector<std::uint64_t>{1009, 10007}
                                 : std::vector<std::uint64_t>{1009, 2003, 10007, 50021, 99991}) {
      const auto c = additive::interval_counterexample(p, 5, 0.15);
      const bool dense = static_cast<double>(c.set.size()) >= 0.15 * double(p + 1) / 2.0;
      ok = ok && dense && !c.missing.empty();
      detail.push_back(Json{{"p", p}, {"set", c.set.size()}, {"missing", c.missing.size()}});
    }
    record("interval counterexamples (s=5, tau=0.15)", ok, std::move(detail));
  }
  {
    bool ok = true;
    for (int s : quick ? std::vector<int>{5, 7, 8} : std::vector<int>{5, 6, 7, 8, 9, 10, 11,
                                                                      12, 13, 14, 15, 16}) {
      const auto r = comblemma::small_moduli_adversary_check(s);
      ok = ok && r.all_within && r.all_certified;
    }
    record("small-moduli adversary LPs", ok);
  }
  {
    const int trials = quick ? 100 : 500;
    bool ok = true;
    for (const auto& [s, n] : pairs) ok = ok && comblemma::lemma71_property_test(s, n, trials, 4242).ok();
    ok = ok && comblemma::lemma72_property_test(12, rat(1, 2), trials, 4343).ok();
    ok = ok && comblemma::lemma72_property_test(15, rat(1, 2), trials, 4344).ok();
    record("conclusion-witness property suites", ok, Json{{"trials", trials}});
  }
  {
    const int trials = quick ? 25 : 100;
    const bool ok = comblemma::local_theorem_property_test(7, 6, trials, 555).ok() &&
                    comblemma::local_theorem_property_test(11, 5, trials, 556).ok() &&
                    comblemma::local_theorem_property_test(77, 6, quick ? 10 : trials, 557).ok() &&
                    comblemma::theorem82_property_test(5, 8, trials, 558).ok() &&
                    comblemma::theorem82_property_test(35, 5, quick ? 10 : trials, 559).ok();
    record("local decomposition property suites", ok, Json{{"trials", trials}});
  }
  {
    bool ok = true;
    Json rows = Json::array();
    for (const auto& pt : calibration().majorant_points) {
      if (quick && pt.N > 10000) continue;
      const auto c = majorants::normalization_check(pt.b, pt.W, pt.N);
      ok = ok && c.relative_deviation <= pt.max_relative_deviation;
      rows.push_back(Json{{"W", pt.W}, {"N", pt.N}, {"dev", c.relative_deviation}});
    }
    record("majorant normalization regression bounds", ok, std::move(rows));
  }
  {
    const std::uint64_t X = quick ? 10000 : 1000000;
    const auto t = majorants::chebyshev_trend(X);
    const double tol = quick ? 0.02 : 0.005;
    record("chebyshev trend", std::abs(t.ratio_to_half_x_squared - 1.0) <= tol,
           Json{{"X", X}, {"ratio", t.ratio_to_half_x_squared}});
  }
  ctx.emit(ctx.finish(Json{{"check", "all"}, {"quick", quick}, {"failures", failures},
                           {"checks", checks}}));
  std::printf("%d check group(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sqcert: exact verification toolkit for additive problems on squares in residue rings"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware default)");

  RunContext ctx;
  for (int i = 0; i < argc; ++i) ctx.args.emplace_back(argv[i]);
  std::function<int()> runner;

  // verify-base-cases
  auto* base = app.add_subcommand("verify-base-cases", "solve the canonical LP family for (s, n)");
  int bc_s = 6, bc_n = 3;
  bool bc_quick = false;
  base->add_option("--s", bc_s, "number of summands")->required();
  base->add_option("--n", bc_n, "sequence length")->required();
  base->add_flag("--quick", bc_quick, "only the first 8 canonical tuples");
  base->add_option("--out", ctx.out_path, "write the JSON report here");
  base->callback([&] {
    ctx.subcommand = "verify-base-cases";
    runner = [&] { return run_base_cases(ctx, bc_s, bc_n, bc_quick); };
  });

  // prop-test
  auto* prop = app.add_subcommand("prop-test", "seeded property suites");
  std::string prop_which;
  prop->add_option("mode", prop_which, "lemma71|lemma72|local|thm82|adversary")
      ->required()
      ->check(CLI::IsMember({"lemma71", "lemma72", "local", "thm82", "adversary"}));
  int pt_trials = 100, pt_s = 6, pt_n = 3;
  std::uint64_t pt_seed = 1, pt_w = 7;
  std::string pt_threshold = "1/2";
  bool pt_adversarial = false;
  prop->add_option("--trials", pt_trials, "trial count");
  prop->add_option("--seed", pt_seed, "base seed");
  prop->add_option("--s", pt_s, "number of summands");
  prop->add_option("--n", pt_n, "sequence length (lemma71)");
  prop->add_option("--w", pt_w, "modulus W (local, thm82)");
  prop->add_option("--threshold", pt_threshold, "threshold D as a rational (lemma72)");
  prop->add_flag("--adversarial", pt_adversarial, "near-threshold sampler mode");
  prop->add_option("--out", ctx.out_path, "write the JSON report here");
  prop->callback([&] {
    ctx.subcommand = "prop-test " + prop_which;
    ctx.seed = pt_seed;
    runner = [&] {
      return run_prop(ctx, prop_which, pt_w, pt_s, pt_n, pt_trials, pt_seed, pt_threshold,
                      pt_adversarial);
    };
  });

  // gauss
  auto* gauss = app.add_subcommand("gauss", "character-sum verifications");
  std::string gauss_which;
  gauss->add_option("mode", gauss_which, "reduced|bound|nu-hat|equidist|batch|calibrate")
      ->required()
      ->check(CLI::IsMember({"reduced", "bound", "nu-hat", "equidist", "batch", "calibrate"}));
  std::uint64_t g_pmax = 199, g_n3full = 19, g_wmax = 1000;
  unsigned g_nmax = 3;
  std::string g_calib_out;
  gauss->add_option("--p-max", g_pmax, "largest prime");
  gauss->add_option("--n-max", g_nmax, "largest exponent (reduced)");
  gauss->add_option("--n3-full", g_n3full, "exhaustive-t cutoff for n=3 (bound)");
  gauss->add_option("--w-max", g_wmax, "largest modulus (nu-hat)");
  gauss->add_option("--write", g_calib_out, "write the calibration proposal here (calibrate)");
  gauss->add_option("--out", ctx.out_path, "write the JSON report here");
  gauss->callback([&] {
    ctx.subcommand = "gauss " + gauss_which;
    runner = [&] {
      std::uint64_t pmax = g_pmax;
      std::uint64_t wmax = g_wmax;
      if (gauss_which == "bound" && pmax == 199) pmax = 97;
      if (gauss_which == "equidist" && pmax == 199) pmax = 100000;
      if (gauss_which == "batch") {
        if (pmax == 199) pmax = 7;  // here --p-max names the prime itself
        if (wmax == 1000) wmax = 0;  // and --w-max caps t (0 = every frequency)
      }
      return run_gauss(ctx, gauss_which, pmax, g_nmax, g_n3full, wmax, g_calib_out);
    };
  });

  // energy
  auto* energy = app.add_subcommand("energy", "additive-energy sweep over prime powers");
  std::uint64_t e_wmax = 500, e_prodmax = 2500;
  std::string e_csv;
  energy->add_option("--w-max", e_wmax, "largest prime power in the CSV sweep");
  energy->add_option("--product-max", e_prodmax, "multiplicativity check limit (0 = skip)");
  energy->add_option("--csv", e_csv, "write the sweep table here");
  energy->add_option("--out", ctx.out_path, "write the JSON report here");
  energy->callback([&] {
    ctx.subcommand = "energy";
    runner = [&] { return run_energy(ctx, e_wmax, e_prodmax, e_csv); };
  });

  // sumset
  auto* sumset = app.add_subcommand("sumset", "sumset inequality verifications");
  std::string ss_which;
  sumset->add_option("mode", ss_which, "green-ruzsa|cauchy-davenport|witness")
      ->required()
      ->check(CLI::IsMember({"green-ruzsa", "cauchy-davenport", "witness"}));
  std::uint64_t ss_w = 120, ss_seed = 1;
  int ss_instances = 1000, ss_s = 5;
  sumset->add_option("--w", ss_w, "modulus bound (green-ruzsa) or modulus (others)");
  sumset->add_option("--s", ss_s, "number of summands (witness)");
  sumset->add_option("--instances", ss_instances, "instance count");
  sumset->add_option("--seed", ss_seed, "generator seed");
  sumset->add_option("--out", ctx.out_path, "write the JSON report here");
  sumset->callback([&] {
    ctx.subcommand = "sumset " + ss_which;
    ctx.seed = ss_seed;
    runner = [&] {
      std::uint64_t w = ss_w;
      if (ss_which == "cauchy-davenport" && w == 120) w = 13;
      if (ss_which == "witness" && w == 120) w = 101;
      return run_sumset(ctx, ss_which, w, ss_s, ss_instances, ss_seed);
    };
  });

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "density-threshold sharpness construction");
  std::uint64_t ce_p = 10007;
  int ce_s = 5;
  double ce_tau = 0.15;
  counter->add_option("--p", ce_p, "prime modulus")->required();
  counter->add_option("--s", ce_s, "number of summands");
  counter->add_option("--tau", ce_tau, "target relative density, below 1/s");
  counter->add_option("--out", ctx.out_path, "write the JSON report here");
  counter->callback([&] {
    ctx.subcommand = "counterexample";
    runner = [&] { return run_counterexample(ctx, ce_p, ce_s, ce_tau); };
  });

  // majorant
  auto* maj = app.add_subcommand("majorant", "prime-square majorant checks");
  std::string mj_which;
  maj->add_option("mode", mj_which, "params|nu|check|trend|chebyshev")
      ->required()
      ->check(CLI::IsMember({"params", "nu", "check", "trend", "chebyshev"}));
  std::uint64_t mj_y = 1000000, mj_w = 8, mj_b = 1, mj_n = 10000, mj_x = 1000000;
  int mj_s = 5;
  double mj_override = 0.0;
  std::string mj_csv;
  maj->add_option("--y", mj_y, "target integer (params)");
  maj->add_option("--s", mj_s, "number of summands (params)");
  maj->add_option("--w-override", mj_override, "replace log log log y (params)");
  maj->add_option("--w", mj_w, "modulus W");
  maj->add_option("--b", mj_b, "unit-square residue b");
  maj->add_option("--n", mj_n, "support length N");
  maj->add_option("--x", mj_x, "upper limit X (chebyshev)");
  maj->add_option("--csv", mj_csv, "write the deviation table here (trend)");
  maj->add_option("--out", ctx.out_path, "write the JSON report here");
  maj->callback([&] {
    ctx.subcommand = "majorant " + mj_which;
    runner = [&] {
      return run_majorant(ctx, mj_which, mj_y, mj_s,
                          mj_override > 0 ? std::optional<double>(mj_override) : std::nullopt,
                          mj_w, mj_b, mj_n, mj_x, mj_csv);
    };
  });

  // lp
  auto* lp = app.add_subcommand("lp", "exact LP solving");
  auto* lp_solve = lp->add_subcommand("solve", "solve an LP from its JSON form");
  std::string lp_path;
  lp_solve->add_option("file", lp_path, "problem file")->required();
  lp_solve->add_option("--out", ctx.out_path, "write the JSON report here");
  lp_solve->callback([&] {
    ctx.subcommand = "lp solve";
    runner = [&] { return run_lp_solve(ctx, lp_path); };
  });
  lp->require_subcommand(1);

  // all
  auto* all = app.add_subcommand("all", "run the full verification battery");
  bool all_quick = false;
  all->add_flag("--quick", all_quick, "reduced grids and trial counts for CI");
  all->add_option("--out", ctx.out_path, "write the JSON report here");
  all->callback([&] {
    ctx.subcommand = "all";
    runner = [&] { return run_all(ctx, all_quick); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  set_global_threads(threads);
  if (!runner) {
    std::fprintf(stderr, "error: no subcommand selected\n");
    return 2;
  }
  try {
    return runner();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "assertion failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
