#pragma once

#include <cstdint>
#include <vector>

#include "sqcert/modring.hpp"
#include "sqcert/rational.hpp"

namespace sqcert::additive {

struct RepresentationReport {
  std::uint64_t W = 1;
  std::vector<std::uint64_t> counts;  // per target residue
  std::uint64_t min_count = 0;
  std::uint64_t min_witness = 0;      // smallest residue attaining min_count
  BigInt total;                       // sum of counts = product of set sizes
};

// Exact s-fold convolution of indicator functions by direct O(s*W^2) folding.
// Throws on an empty set list or an empty set; overflow past 64 bits raises
// std::overflow_error (desk-scale inputs stay far below that).
RepresentationReport convolution_counts(const std::vector<std::vector<std::uint64_t>>& sets,
                                        std::uint64_t W);

// #{(x, y) : x, y squares mod p^n, x - y = l}, gcd(l, p) = 1.
std::uint64_t t_count(std::uint64_t p, unsigned n, std::uint64_t l);

// (p^n - p^{n-1})/4 + 2, exact.
Rational t_count_bound(std::uint64_t p, unsigned n);

struct TCountSweep {
  bool all_ok = true;
  std::uint64_t worst_modulus = 0;
  std::uint64_t worst_l = 0;
  std::uint64_t worst_count = 0;
  double worst_slack = 0.0;  // min over grid of (bound - count)
};

// Checks count <= bound over every odd prime power <= pn_max and every unit l.
TCountSweep t_count_sweep(std::uint64_t pn_max);
TCountSweep t_count_sweep_serial(std::uint64_t pn_max);

struct EnergyReport {
  std::uint64_t modulus = 1;
  std::uint64_t energy = 0;        // #{(x,y,z,w) squares : x + z = y + w}
  std::uint64_t square_count = 0;
  double indicator_ratio = 0.0;    // (W*energy)^{1/4} / S(W)
};

// Additive energy of the squares via the pair-sum histogram, O(S(W)^2).
EnergyReport additive_energy_squares(std::uint64_t W);

std::vector<EnergyReport> energy_reports_up_to(std::uint64_t w_max);
std::vector<EnergyReport> energy_reports_up_to_serial(std::uint64_t w_max);

// energy(W1*W2) == energy(W1)*energy(W2) for every coprime pair with
// product <= product_max; expects table = energy_reports_up_to(product_max).
bool energy_multiplicative(const std::vector<EnergyReport>& table, std::uint64_t product_max);

struct GreenRuzsaCheck {
  std::int64_t lhs = 0;  // sum over x of min(t, 1_A*1_B(x))
  std::int64_t rhs = 0;  // t * min(W, |A| + |B| - t - D(Z/W))
  bool ok = false;
};

// Requires 1 <= t <= min(|A|, |B|).
GreenRuzsaCheck green_ruzsa_verify(std::uint64_t W, const std::vector<std::uint64_t>& A,
                                   const std::vector<std::uint64_t>& B, std::uint64_t t);

// Size of the largest proper subgroup of Z/W: W / (least prime factor); 0 for W = 1.
std::uint64_t largest_proper_subgroup(std::uint64_t W);

struct CauchyDavenportCheck {
  std::uint64_t sumset_size = 0;
  std::uint64_t bound = 0;  // min(p, sum |I_j| - (s-1))
  bool ok = false;
};

CauchyDavenportCheck cauchy_davenport_verify(std::uint64_t p,
                                             const std::vector<std::vector<std::uint64_t>>& sets);

struct IntervalCounterexample {
  std::uint64_t p = 0;
  int s = 0;
  double tau = 0.0;
  double eta = 0.0;                    // midpoint of (tau, 1/s)
  std::vector<std::uint64_t> set;      // squares mod p in [1, eta*p]
  double density = 0.0;                // |set| / ((p+1)/2)
  std::vector<std::uint64_t> missing;  // residues outside the s-fold sumset
};

// Construction behind the sharpness example: a positive-density subset of the
// squares whose s-fold sumset misses residues. Throws std::domain_error when
// p is too small to reach density tau (caller retries with larger p).
IntervalCounterexample interval_counterexample(std::uint64_t p, int s, double tau);

struct WitnessReport {
  std::uint64_t count = 0;       // representations of y as a sum of s elements of A
  double normalized = 0.0;       // count * W / S(W)^s
};

// Exact representation count for one target y, A a subset of the squares.
WitnessReport theorem_main_witness(std::uint64_t W, int s, const std::vector<std::uint64_t>& A,
                                   std::uint64_t y);

// (p^n * energy)^{1/4} / S(p^n); empirical lower bound for the q=4
// restriction constant realized by the all-ones input.
double indicator_restriction_ratio(std::uint64_t p, unsigned n);

}  // namespace sqcert::additive
