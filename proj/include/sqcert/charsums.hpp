#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqcert/modring.hpp"

namespace sqcert::charsums {

// e^{2*pi*i*k/W}; the single place angles are computed, so independent
// summation routes stay bit-comparable.
std::complex<double> unit_root(std::uint64_t k, std::uint64_t W);

// Legendre symbol by Euler's criterion. 0 iff p | t.
int legendre(std::int64_t t, std::uint64_t p);

// 1 for p = 1 mod 4, i for p = 3 mod 4.
std::complex<double> epsilon_p(std::uint64_t p);

// sum of e_W(t*x) over a residue set; direct compensated summation.
std::complex<double> indicator_exponential_sum(const modring::SquareSet& set, std::uint64_t t);

// sum over squares mod p^n of e_{p^n}(t*x), p odd prime.
std::complex<double> square_gauss_sum(std::uint64_t p, unsigned n, std::uint64_t t);

// sum over units y mod p^n of e_{p^n}(t*y^2); requires gcd(t, p) = 1.
std::complex<double> reduced_gauss_sum(std::uint64_t p, unsigned n, std::uint64_t t);

// (t/p)*eps_p*sqrt(p) - 1 for n = 1, and 0 for n >= 2.
std::complex<double> reduced_gauss_closed_form(std::uint64_t p, unsigned n, std::uint64_t t);

struct GaussSumReport {
  std::uint64_t modulus = 0;
  std::uint64_t t = 0;
  std::complex<double> value;
  double magnitude = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

// |square_gauss_sum| against c_bound * gcd(t, p^n) * sqrt(p).
GaussSumReport square_gauss_report(std::uint64_t p, unsigned n, std::uint64_t t, double c_bound);

// Normalized Fourier coefficient of the square-indicator measure:
// nu_hat(xi) = S(W)^{-1} * sum over squares x of e_W(-x*xi), evaluated through
// the multiplicative splitting into prime-power Gauss sums. The report checks
// the statistic |nu_hat(xi)| * sqrt(min prime) against statistic_bound.
// Requires W odd with every prime factor >= 3 and xi != 0 mod W.
GaussSumReport nu_hat_check(const modring::ModulusFactorization& f, std::uint64_t xi,
                            double statistic_bound);

struct QrIntervalCount {
  std::uint64_t count = 0;       // #{1 <= x <= eta*p : x is a square mod p}
  double main_term = 0.0;        // eta*(p+1)/2
  double normalized_error = 0.0; // |count - main| / (sqrt(p)*log p)
};

// Exhaustive Legendre evaluation over the interval; 0 < eta < 1.
QrIntervalCount qr_interval_count(std::uint64_t p, double eta);

// ---- sweep kernels -------------------------------------------------------
// Each sweep has an OpenMP kernel and a plain serial reference that goes
// through the scalar operations; tests pin them against each other.

// max over odd p <= p_max, 1 <= n <= n_max, 1 <= t < p of
// |reduced_gauss_sum - closed form|.
double reduced_gauss_max_deviation(std::uint64_t p_max, unsigned n_max);
double reduced_gauss_max_deviation_serial(std::uint64_t p_max, unsigned n_max);

// max of |square gauss sum| / (gcd(t,p^n)*sqrt(p)) over odd p <= p_max,
// n <= 2 exhaustive in t; n = 3 exhaustive in t for p <= n3_full_p_max and on
// gcd-class representatives above (the sum depends on t only through
// v_p(t) and the Legendre class of t/p^v, so representatives cover the range).
double square_gauss_bound_ratio_max(std::uint64_t p_max, std::uint64_t n3_full_p_max);
double square_gauss_bound_ratio_max_serial(std::uint64_t p_max, std::uint64_t n3_full_p_max);

// max of |nu_hat(xi)|*sqrt(min prime) over odd square-free W in [3, w_max]
// and xi in [1, W).
double nu_hat_statistic_max(std::uint64_t w_max);
double nu_hat_statistic_max_serial(std::uint64_t w_max);

// max normalized equidistribution error over odd primes p <= p_max and the
// given eta grid.
double qr_equidistribution_max_error(std::uint64_t p_max, const std::vector<double>& etas);
double qr_equidistribution_max_error_serial(std::uint64_t p_max, const std::vector<double>& etas);

}  // namespace sqcert::charsums
