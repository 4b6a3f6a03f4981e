#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sqcert/rational.hpp"

namespace sqcert::modring {

struct PrimePower {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::uint64_t value = 0;  // p^n
};

// A modulus together with its certified prime factorization. Immutable after
// construction; everything downstream that splits along prime powers goes
// through this.
struct ModulusFactorization {
  std::uint64_t W = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes; empty for W=1

  std::uint64_t smallest_prime() const;  // throws for W=1
  bool odd() const { return W % 2 == 1; }
};

// Trial division with a deterministic Miller-Rabin certificate on the final
// cofactor. Total for W >= 1; throws std::invalid_argument for W = 0.
ModulusFactorization factorize(std::uint64_t W);

bool is_prime_u64(std::uint64_t n);

std::uint64_t euler_phi(const ModulusFactorization& f);

enum class SquareKind { All, Units };

struct SquareSet {
  std::uint64_t modulus = 1;
  SquareKind kind = SquareKind::All;
  std::vector<std::uint64_t> elements;  // sorted, deduplicated

  bool contains(std::uint64_t x) const;
  std::size_t size() const { return elements.size(); }
};

// Exact enumeration: squares of all residues, or of all units. For W = 1 both
// kinds give the single element 0 (the trivial group).
SquareSet squares_mod(std::uint64_t W, SquareKind kind);

// Closed-form count of squares mod p^n, odd prime p. Exact; intermediates in
// BigInt, divisions asserted exact. Throws for p = 2 or composite p.
BigInt count_squares(std::uint64_t p, unsigned n);

// Residue splitting/recombination along the prime powers of f.
std::vector<std::uint64_t> crt_split(std::uint64_t x, const ModulusFactorization& f);
std::uint64_t crt_combine(std::span<const std::uint64_t> parts, const ModulusFactorization& f);

bool is_unit_square(std::uint64_t W, std::uint64_t b);

// Number of x in (Z/W)^x with x^2 = b; equals phi(W) / #unit-squares for
// every valid b. Throws std::domain_error when b is not a unit square.
std::uint64_t sigma_w(std::uint64_t W, std::uint64_t b);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Inverse of a mod m, gcd(a, m) = 1; throws std::domain_error otherwise.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

}  // namespace sqcert::modring
