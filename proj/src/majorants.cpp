#include "sqcert/majorants.hpp"

#include <cmath>
#include <stdexcept>

#include "sqcert/kahan.hpp"
#include "sqcert/modring.hpp"

namespace sqcert::majorants {

WTrickParams wtrick_params(std::uint64_t y, int s, std::optional<double> w_override) {
  if (y < 16) throw std::invalid_argument("wtrick_params: y too small for log log log");
  if (s < 1) throw std::invalid_argument("wtrick_params: s must be positive");
  WTrickParams p;
  p.y = y;
  p.s = s;
  p.w = w_override ? *w_override : std::log(std::log(std::log(static_cast<double>(y))));
  p.W = 8;
  if (p.w > 3.0) {
    for (std::uint64_t q : sieve_primes(static_cast<std::uint64_t>(std::ceil(p.w)))) {
      if (q < 3 || static_cast<double>(q) >= p.w) continue;
      p.W *= q;
    }
  }
  p.N = (2 * y) / (static_cast<std::uint64_t>(s) * p.W);
  p.w_within_log = p.N > 1 && static_cast<double>(p.W) <= std::log(static_cast<double>(p.N));
  return p;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t X) {
  if (X < 2) throw std::invalid_argument("sieve_primes: X must be at least 2");
  std::vector<bool> composite(X + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t v = 2; v <= X; ++v) {
    if (composite[v]) continue;
    primes.push_back(v);
    for (std::uint64_t w = v * v; w <= X; w += v) composite[w] = true;
  }
  return primes;
}

double MajorantVector::total() const {
  KahanSum acc;
  for (const auto& [n, weight] : weights) acc.add(weight);
  return acc.value();
}

namespace {

MajorantVector build_filtered(const std::function<bool(std::uint64_t)>* prime_filter,
                              std::uint64_t b, std::uint64_t W, std::uint64_t N) {
  if (W < 2) throw std::invalid_argument("build_nu: W must be at least 2");
  if (N < 1) throw std::invalid_argument("build_nu: N must be at least 1");
  b %= W;
  if (!modring::is_unit_square(W, b))
    throw std::domain_error("build_nu: b is not a unit square mod W");
  MajorantVector v;
  v.b = b;
  v.W = W;
  v.N = N;
  const std::uint64_t sigma = modring::sigma_w(W, b);
  const std::uint64_t phi = modring::euler_phi(modring::factorize(W));
  const double scale = static_cast<double>(phi) / (static_cast<double>(W) * static_cast<double>(sigma));
  // Wn + b = p^2 with 1 <= n <= N
  const auto p_hi = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(W * N + b))) + 2;
  for (std::uint64_t p : sieve_primes(p_hi)) {
    const std::uint64_t p2 = p * p;
    if (p2 < W + b) continue;
    if ((p2 - b) % W != 0) continue;
    const std::uint64_t n = (p2 - b) / W;
    if (n < 1 || n > N) continue;
    if (prime_filter && !(*prime_filter)(p)) continue;
    v.weights.emplace_back(n, scale * 2.0 * static_cast<double>(p) * std::log(static_cast<double>(p)));
  }
  return v;
}

}  // namespace

MajorantVector build_nu(std::uint64_t b, std::uint64_t W, std::uint64_t N) {
  return build_filtered(nullptr, b, W, N);
}

MajorantVector build_f(const std::function<bool(std::uint64_t)>& prime_filter, std::uint64_t b,
                       std::uint64_t W, std::uint64_t N) {
  return build_filtered(&prime_filter, b, W, N);
}

NormalizationCheck normalization_check(std::uint64_t b, std::uint64_t W, std::uint64_t N) {
  const MajorantVector nu = build_nu(b, W, N);
  NormalizationCheck c;
  c.total = nu.total();
  c.relative_deviation = std::abs(c.total - static_cast<double>(N)) / static_cast<double>(N);
  return c;
}

ChebyshevTrend chebyshev_trend(std::uint64_t X) {
  if (X < 100) throw std::invalid_argument("chebyshev_trend: X must be at least 100");
  KahanSum acc;
  for (std::uint64_t p : sieve_primes(X)) {
    const double logp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q <= X; q *= p) {
      acc.add(static_cast<double>(q) * logp);
      if (q > X / p) break;  // q*p would overflow past X anyway
    }
  }
  ChebyshevTrend t;
  t.sum = acc.value();
  t.ratio_to_half_x_squared = t.sum / (0.5 * static_cast<double>(X) * static_cast<double>(X));
  return t;
}

}  // namespace sqcert::majorants
