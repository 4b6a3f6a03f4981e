#include "sqcert/additive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqcert/charsums.hpp"
#include "sqcert/parallel.hpp"

namespace sqcert::additive {

using modring::SquareKind;

namespace {

std::vector<std::uint64_t> fold_counts(const std::vector<std::uint64_t>& acc,
                                       const std::vector<std::uint64_t>& set, std::uint64_t W) {
  std::vector<std::uint64_t> next(W, 0);
  for (std::uint64_t y = 0; y < W; ++y) {
    const std::uint64_t c = acc[y];
    if (c == 0) continue;
    for (std::uint64_t a : set) {
      const std::uint64_t target = (y + a) % W;
      const unsigned __int128 v = static_cast<unsigned __int128>(next[target]) + c;
      if (v > ~0ULL) throw std::overflow_error("convolution_counts: count exceeds 64 bits");
      next[target] = static_cast<std::uint64_t>(v);
    }
  }
  return next;
}

}  // namespace

RepresentationReport convolution_counts(const std::vector<std::vector<std::uint64_t>>& sets,
                                        std::uint64_t W) {
  if (W == 0) throw std::invalid_argument("convolution_counts: modulus must be positive");
  if (sets.empty()) throw std::invalid_argument("convolution_counts: no sets given");
  for (const auto& s : sets)
    if (s.empty()) throw std::invalid_argument("convolution_counts: empty set");
  std::vector<std::uint64_t> counts(W, 0);
  for (std::uint64_t a : sets[0]) ++counts[a % W];
  for (std::size_t j = 1; j < sets.size(); ++j) counts = fold_counts(counts, sets[j], W);
  RepresentationReport r;
  r.W = W;
  r.counts = std::move(counts);
  r.min_count = r.counts[0];
  r.min_witness = 0;
  for (std::uint64_t y = 0; y < W; ++y) {
    r.total += bigint_u64(r.counts[y]);
    if (r.counts[y] < r.min_count) {
      r.min_count = r.counts[y];
      r.min_witness = y;
    }
  }
  return r;
}

namespace {

std::uint64_t pow_u64(std::uint64_t p, unsigned n) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < n; ++i) v *= p;
  return v;
}

}  // namespace

std::uint64_t t_count(std::uint64_t p, unsigned n, std::uint64_t l) {
  if (p < 3 || !modring::is_prime_u64(p)) throw std::invalid_argument("t_count: p must be an odd prime");
  if (n == 0) throw std::invalid_argument("t_count: n must be positive");
  const std::uint64_t pn = pow_u64(p, n);
  if (l % p == 0) throw std::domain_error("t_count: l must be a unit mod p^n");
  const auto squares = modring::squares_mod(pn, SquareKind::All);
  std::uint64_t count = 0;
  for (std::uint64_t x : squares.elements) {
    const std::uint64_t y = (x + pn - l % pn) % pn;
    if (squares.contains(y)) ++count;
  }
  return count;
}

Rational t_count_bound(std::uint64_t p, unsigned n) {
  const std::uint64_t pn = pow_u64(p, n);
  return rat_u64(pn - pn / p, 4) + 2;
}

namespace {

struct ModulusWorst {
  std::uint64_t l = 0;
  std::uint64_t count = 0;
  double slack = 0.0;
  bool ok = true;
};

ModulusWorst t_count_check_modulus(std::uint64_t p, unsigned n) {
  const std::uint64_t pn = pow_u64(p, n);
  const auto squares = modring::squares_mod(pn, SquareKind::All).elements;
  std::vector<std::uint64_t> diff(pn, 0);
  for (std::uint64_t x : squares)
    for (std::uint64_t y : squares) ++diff[(x + pn - y) % pn];
  const Rational bound = t_count_bound(p, n);
  ModulusWorst worst;
  bool first = true;
  for (std::uint64_t l = 1; l < pn; ++l) {
    if (l % p == 0) continue;
    if (rat_u64(diff[l]) > bound) worst.ok = false;  // exact comparison
    const double slack = bound.get_d() - static_cast<double>(diff[l]);
    if (first || slack < worst.slack) {
      worst.l = l;
      worst.count = diff[l];
      worst.slack = slack;
      first = false;
    }
  }
  return worst;
}

TCountSweep t_count_sweep_impl(std::uint64_t pn_max, bool parallel) {
  std::vector<std::pair<std::uint64_t, unsigned>> moduli;  // (p, n) with p^n <= pn_max
  for (std::uint64_t p = 3; p <= pn_max; p += 2) {
    if (!modring::is_prime_u64(p)) continue;
    std::uint64_t pn = p;
    unsigned n = 1;
    while (pn <= pn_max) {
      moduli.emplace_back(p, n);
      if (pn > pn_max / p) break;
      pn *= p;
      ++n;
    }
  }
  std::vector<ModulusWorst> results(moduli.size());
  auto body = [&](std::int64_t i) {
    results[i] = t_count_check_modulus(moduli[i].first, moduli[i].second);
  };
  if (parallel) {
    parallel_for(static_cast<std::int64_t>(moduli.size()), body);
  } else {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(moduli.size()); ++i) body(i);
  }
  TCountSweep sweep;
  bool first = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok) sweep.all_ok = false;
    if (first || results[i].slack < sweep.worst_slack) {
      sweep.worst_modulus = pow_u64(moduli[i].first, moduli[i].second);
      sweep.worst_l = results[i].l;
      sweep.worst_count = results[i].count;
      sweep.worst_slack = results[i].slack;
      first = false;
    }
  }
  return sweep;
}

}  // namespace

TCountSweep t_count_sweep(std::uint64_t pn_max) { return t_count_sweep_impl(pn_max, true); }
TCountSweep t_count_sweep_serial(std::uint64_t pn_max) { return t_count_sweep_impl(pn_max, false); }

EnergyReport additive_energy_squares(std::uint64_t W) {
  if (W == 0) throw std::invalid_argument("additive_energy_squares: modulus must be positive");
  const auto squares = modring::squares_mod(W, SquareKind::All).elements;
  std::vector<std::uint64_t> sums(W, 0);
  for (std::uint64_t x : squares)
    for (std::uint64_t z : squares) ++sums[(x + z) % W];
  EnergyReport r;
  r.modulus = W;
  r.square_count = squares.size();
  for (std::uint64_t h : sums) r.energy += h * h;
  r.indicator_ratio = std::pow(static_cast<double>(W) * static_cast<double>(r.energy), 0.25) /
                      static_cast<double>(r.square_count);
  return r;
}

namespace {

std::vector<EnergyReport> energy_reports_impl(std::uint64_t w_max, bool parallel) {
  std::vector<EnergyReport> table(w_max + 1);
  auto body = [&](std::int64_t i) { table[i + 1] = additive_energy_squares(i + 1); };
  if (parallel) {
    parallel_for(static_cast<std::int64_t>(w_max), body);
  } else {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(w_max); ++i) body(i);
  }
  return table;
}

}  // namespace

std::vector<EnergyReport> energy_reports_up_to(std::uint64_t w_max) {
  return energy_reports_impl(w_max, true);
}

std::vector<EnergyReport> energy_reports_up_to_serial(std::uint64_t w_max) {
  return energy_reports_impl(w_max, false);
}

bool energy_multiplicative(const std::vector<EnergyReport>& table, std::uint64_t product_max) {
  for (std::uint64_t w1 = 2; w1 * w1 <= product_max; ++w1) {
    for (std::uint64_t w2 = w1; w1 * w2 <= product_max; ++w2) {
      if (modring::gcd_u64(w1, w2) != 1) continue;
      if (table[w1 * w2].energy != table[w1].energy * table[w2].energy) return false;
    }
  }
  return true;
}

std::uint64_t largest_proper_subgroup(std::uint64_t W) {
  if (W <= 1) return 0;
  return W / modring::factorize(W).factors.front().p;
}

GreenRuzsaCheck green_ruzsa_verify(std::uint64_t W, const std::vector<std::uint64_t>& A,
                                   const std::vector<std::uint64_t>& B, std::uint64_t t) {
  if (W == 0) throw std::invalid_argument("green_ruzsa_verify: modulus must be positive");
  if (t < 1 || t > std::min(A.size(), B.size()))
    throw std::invalid_argument("green_ruzsa_verify: t out of range");
  std::vector<std::uint64_t> conv(W, 0);
  for (std::uint64_t a : A)
    for (std::uint64_t b : B) ++conv[(a + b) % W];
  GreenRuzsaCheck r;
  for (std::uint64_t x = 0; x < W; ++x)
    r.lhs += static_cast<std::int64_t>(std::min<std::uint64_t>(t, conv[x]));
  const std::int64_t d = static_cast<std::int64_t>(largest_proper_subgroup(W));
  const std::int64_t inner = static_cast<std::int64_t>(A.size()) + static_cast<std::int64_t>(B.size()) -
                             static_cast<std::int64_t>(t) - d;
  r.rhs = static_cast<std::int64_t>(t) * std::min<std::int64_t>(static_cast<std::int64_t>(W), inner);
  r.ok = r.lhs >= r.rhs;
  return r;
}

CauchyDavenportCheck cauchy_davenport_verify(std::uint64_t p,
                                             const std::vector<std::vector<std::uint64_t>>& sets) {
  if (!modring::is_prime_u64(p)) throw std::invalid_argument("cauchy_davenport_verify: p must be prime");
  if (sets.empty()) throw std::invalid_argument("cauchy_davenport_verify: no sets given");
  std::uint64_t size_sum = 0;
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("cauchy_davenport_verify: empty set");
    size_sum += s.size();
  }
  std::vector<char> reach(p, 0);
  for (std::uint64_t a : sets[0]) reach[a % p] = 1;
  for (std::size_t j = 1; j < sets.size(); ++j) {
    std::vector<char> next(p, 0);
    for (std::uint64_t x = 0; x < p; ++x) {
      if (!reach[x]) continue;
      for (std::uint64_t a : sets[j]) next[(x + a) % p] = 1;
    }
    reach.swap(next);
  }
  CauchyDavenportCheck r;
  for (char c : reach) r.sumset_size += c;
  const std::uint64_t inner = size_sum - (sets.size() - 1);
  r.bound = std::min<std::uint64_t>(p, inner);
  r.ok = r.sumset_size >= r.bound;
  return r;
}

IntervalCounterexample interval_counterexample(std::uint64_t p, int s, double tau) {
  if (s < 5) throw std::invalid_argument("interval_counterexample: s must be at least 5");
  if (!(tau >= 0.0 && tau < 1.0 / s))
    throw std::invalid_argument("interval_counterexample: tau must lie in [0, 1/s)");
  if (p < 3 || !modring::is_prime_u64(p))
    throw std::invalid_argument("interval_counterexample: p must be an odd prime");
  IntervalCounterexample r;
  r.p = p;
  r.s = s;
  r.tau = tau;
  r.eta = (tau + 1.0 / s) / 2.0;  // midpoint keeps margin on both sides
  const auto cutoff = static_cast<std::uint64_t>(std::floor(r.eta * static_cast<double>(p)));
  for (std::uint64_t x = 1; x <= cutoff; ++x)
    if (charsums::legendre(static_cast<std::int64_t>(x), p) == 1) r.set.push_back(x);
  const double half = static_cast<double>(p + 1) / 2.0;
  r.density = static_cast<double>(r.set.size()) / half;
  if (static_cast<double>(r.set.size()) < tau * half)
    throw std::domain_error("interval_counterexample: density shortfall, retry with larger p");
  // boolean s-fold sumset
  std::vector<char> reach(p, 0);
  for (std::uint64_t a : r.set) reach[a] = 1;
  for (int fold = 1; fold < s; ++fold) {
    std::vector<char> next(p, 0);
    for (std::uint64_t x = 0; x < p; ++x) {
      if (!reach[x]) continue;
      for (std::uint64_t a : r.set) next[(x + a) % p] = 1;
    }
    reach.swap(next);
  }
  for (std::uint64_t x = 0; x < p; ++x)
    if (!reach[x]) r.missing.push_back(x);
  return r;
}

WitnessReport theorem_main_witness(std::uint64_t W, int s, const std::vector<std::uint64_t>& A,
                                   std::uint64_t y) {
  if (s < 2) throw std::invalid_argument("theorem_main_witness: s must be at least 2");
  const auto squares = modring::squares_mod(W, SquareKind::All);
  for (std::uint64_t a : A)
    if (!squares.contains(a % W))
      throw std::invalid_argument("theorem_main_witness: A must consist of squares mod W");
  const std::vector<std::vector<std::uint64_t>> sets(static_cast<std::size_t>(s), A);
  const auto rep = convolution_counts(sets, W);
  WitnessReport r;
  r.count = rep.counts[y % W];
  r.normalized = static_cast<double>(r.count) * static_cast<double>(W) /
                 std::pow(static_cast<double>(squares.size()), s);
  return r;
}

double indicator_restriction_ratio(std::uint64_t p, unsigned n) {
  if (p < 3 || !modring::is_prime_u64(p))
    throw std::invalid_argument("indicator_restriction_ratio: p must be an odd prime");
  return additive_energy_squares(pow_u64(p, n)).indicator_ratio;
}

}  // namespace sqcert::additive
