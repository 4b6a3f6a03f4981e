#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace sqcert {

// Exact arbitrary-precision scalars. GMP does the heavy lifting; these
// aliases plus a few helpers are the only surface the rest of the code uses.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat_u64(std::uint64_t num, std::uint64_t den = 1) {
  Rational q;
  mpz_import(q.get_num_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
  mpz_import(q.get_den_mpz_t(), 1, 1, sizeof(den), 0, 0, &den);
  q.canonicalize();
  return q;
}

inline BigInt bigint_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

// "-3/4", "7", "0"; canonical form, positive denominator.
std::string rational_to_string(const Rational& q);

// Accepts the same grammar rational_to_string emits. Returns nullopt on
// malformed text or a zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

std::size_t bit_length(const BigInt& v);

// max of numerator/denominator bit lengths; pivot-size telemetry.
std::size_t max_bit_length(const Rational& q);

}  // namespace sqcert
