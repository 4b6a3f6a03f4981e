// Benchmark of the OpenMP sweep kernels against their serial reference
// implementations. The references recompute every value through the scalar
// operations, so agreement doubles as an end-to-end consistency check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "CLI11.hpp"
#include "sqcert/additive.hpp"
#include "sqcert/charsums.hpp"
#include "sqcert/parallel.hpp"

using namespace sqcert;

namespace {

double time_of(const std::function<double()>& fn, double* result) {
  const auto t0 = std::chrono::steady_clock::now();
  *result = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, const std::function<double()>& serial,
         const std::function<double()>& parallel, double tol) {
  double rs = 0, rp = 0;
  const double ts = time_of(serial, &rs);
  const double tp = time_of(parallel, &rp);
  const bool agree = std::abs(rs - rp) <= tol;
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   agree %s\n", name, ts, tp,
              ts / tp, agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sqcert kernel benchmark: serial reference vs OpenMP"};
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware default)");
  CLI11_PARSE(app, argc, argv);
  set_global_threads(threads);
  std::printf("threads: %d\n", global_threads());

  row("reduced gauss (p<=61)",
      [] { return charsums::reduced_gauss_max_deviation_serial(61, 3); },
      [] { return charsums::reduced_gauss_max_deviation(61, 3); }, 1e-9);
  row("gauss bound (p<=37)",
      [] { return charsums::square_gauss_bound_ratio_max_serial(37, 13); },
      [] { return charsums::square_gauss_bound_ratio_max(37, 13); }, 0.0);
  row("nu-hat statistic (W<=401)",
      [] { return charsums::nu_hat_statistic_max_serial(401); },
      [] { return charsums::nu_hat_statistic_max(401); }, 1e-9);
  std::vector<double> etas;
  for (int k = 1; k <= 9; ++k) etas.push_back(k / 10.0);
  row("qr equidistribution (p<=4e3)",
      [&] { return charsums::qr_equidistribution_max_error_serial(4000, etas); },
      [&] { return charsums::qr_equidistribution_max_error(4000, etas); }, 0.0);
  row("t-count sweep (p^n<=700)",
      [] { return additive::t_count_sweep_serial(700).worst_slack; },
      [] { return additive::t_count_sweep(700).worst_slack; }, 0.0);
  row("energy sweep (W<=700)",
      [] { return static_cast<double>(additive::energy_reports_up_to_serial(700).back().energy); },
      [] { return static_cast<double>(additive::energy_reports_up_to(700).back().energy); }, 0.0);
  return 0;
}
