#include "sqcert/modring.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sqcert::modring {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on signed 128-bit to dodge overflow for large m
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("inv_mod: argument not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit with the standard 12-base set
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t ModulusFactorization::smallest_prime() const {
  if (factors.empty()) throw std::domain_error("smallest_prime: trivial modulus");
  return factors.front().p;
}

ModulusFactorization factorize(std::uint64_t W) {
  if (W == 0) throw std::invalid_argument("factorize: modulus must be positive");
  ModulusFactorization f;
  f.W = W;
  std::uint64_t rest = W;
  auto push = [&](std::uint64_t p) {
    PrimePower pp{p, 0, 1};
    while (rest % p == 0) {
      rest /= p;
      ++pp.n;
      pp.value *= p;
    }
    f.factors.push_back(pp);
  };
  if (rest % 2 == 0) push(2);
  if (rest % 3 == 0) push(3);
  for (std::uint64_t d = 5; d * d <= rest; d += 6) {
    if (rest % d == 0) push(d);
    if (rest % (d + 2) == 0) push(d + 2);
  }
  if (rest > 1) {
    // cofactor has no divisor up to its square root, but certify anyway
    if (!is_prime_u64(rest)) throw std::logic_error("factorize: cofactor failed primality certificate");
    f.factors.push_back(PrimePower{rest, 1, rest});
  }
  return f;
}

std::uint64_t euler_phi(const ModulusFactorization& f) {
  std::uint64_t phi = 1;
  for (const auto& pp : f.factors) phi *= pp.value / pp.p * (pp.p - 1);
  return phi;
}

bool SquareSet::contains(std::uint64_t x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

SquareSet squares_mod(std::uint64_t W, SquareKind kind) {
  if (W == 0) throw std::invalid_argument("squares_mod: modulus must be positive");
  SquareSet s;
  s.modulus = W;
  s.kind = kind;
  if (W == 1) {
    s.elements = {0};
    return s;
  }
  std::vector<bool> seen(W, false);
  for (std::uint64_t y = 0; y < W; ++y) {
    if (kind == SquareKind::Units && gcd_u64(y, W) != 1) continue;
    seen[mul_mod(y, y, W)] = true;
  }
  for (std::uint64_t x = 0; x < W; ++x)
    if (seen[x]) s.elements.push_back(x);
  return s;
}

BigInt count_squares(std::uint64_t p, unsigned n) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("count_squares: p must be an odd prime");
  if (n == 0) throw std::invalid_argument("count_squares: n must be positive");
  const BigInt bp = bigint_u64(p);
  BigInt pn;  // p^n
  mpz_pow_ui(pn.get_mpz_t(), bp.get_mpz_t(), n);
  BigInt numer = (n % 2 == 1) ? BigInt(pn * bp - 1) : BigInt(bp * (pn - 1));
  const BigInt denom = 2 * (bp + 1);
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  assert(r == 0 && "count_squares: closed form must divide exactly");
  return q + 1;
}

std::vector<std::uint64_t> crt_split(std::uint64_t x, const ModulusFactorization& f) {
  std::vector<std::uint64_t> parts;
  parts.reserve(f.factors.size());
  for (const auto& pp : f.factors) parts.push_back(x % pp.value);
  return parts;
}

std::uint64_t crt_combine(std::span<const std::uint64_t> parts, const ModulusFactorization& f) {
  if (parts.size() != f.factors.size())
    throw std::invalid_argument("crt_combine: component count mismatch");
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::uint64_t q = f.factors[i].value;
    const std::uint64_t m = f.W / q;          // complement modulus
    const std::uint64_t mi = inv_mod(m % q, q);
    // x += parts[i] * m * (m^{-1} mod q), all mod W
    x = (x + mul_mod(mul_mod(parts[i] % q, mi, f.W), m, f.W)) % f.W;
  }
  return x;
}

bool is_unit_square(std::uint64_t W, std::uint64_t b) {
  if (W == 1) return true;
  if (gcd_u64(b % W, W) != 1) return false;
  return squares_mod(W, SquareKind::Units).contains(b % W);
}

std::uint64_t sigma_w(std::uint64_t W, std::uint64_t b) {
  if (W == 0) throw std::invalid_argument("sigma_w: modulus must be positive");
  if (W == 1) return 1;
  b %= W;
  if (!is_unit_square(W, b)) throw std::domain_error("sigma_w: b is not a unit square");
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < W; ++x) {
    if (gcd_u64(x, W) != 1) continue;
    if (mul_mod(x, x, W) == b) ++count;
  }
  return count;
}

}  // namespace sqcert::modring
