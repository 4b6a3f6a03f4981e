#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace sqcert::majorants {

struct WTrickParams {
  std::uint64_t y = 0;
  int s = 0;
  double w = 0.0;            // log log log y unless overridden
  std::uint64_t W = 8;       // 8 * prod of odd primes below w
  std::uint64_t N = 0;       // floor(2y / (sW))
  bool w_within_log = false; // W <= log N
};

// Throws std::invalid_argument for y < 16 (nested logarithm) or s < 1.
WTrickParams wtrick_params(std::uint64_t y, int s, std::optional<double> w_override = {});

// Plain Eratosthenes.
std::vector<std::uint64_t> sieve_primes(std::uint64_t X);

struct MajorantVector {
  std::uint64_t b = 1, W = 8, N = 0;
  // (n, weight) with Wn + b a prime square, ascending n;
  // weight = phi(W)/(W*sigma_W(b)) * 2p*log(p).
  std::vector<std::pair<std::uint64_t, double>> weights;

  double total() const;  // compensated, ascending-n order
};

// Majorant over [1, N] supported on n with Wn + b a prime square. Requires b
// to be a unit square mod W (std::domain_error otherwise) and W >= 2, N >= 1.
MajorantVector build_nu(std::uint64_t b, std::uint64_t W, std::uint64_t N);

// Restriction of nu to primes accepted by the filter; componentwise <= nu.
MajorantVector build_f(const std::function<bool(std::uint64_t)>& prime_filter, std::uint64_t b,
                       std::uint64_t W, std::uint64_t N);

struct NormalizationCheck {
  double total = 0.0;
  double relative_deviation = 0.0;  // |total - N| / N
};

NormalizationCheck normalization_check(std::uint64_t b, std::uint64_t W, std::uint64_t N);

struct ChebyshevTrend {
  double sum = 0.0;                     // sum of x*Lambda(x) over x <= X
  double ratio_to_half_x_squared = 0.0;
};

// Exact prime-power enumeration, X >= 100.
ChebyshevTrend chebyshev_trend(std::uint64_t X);

}  // namespace sqcert::majorants
