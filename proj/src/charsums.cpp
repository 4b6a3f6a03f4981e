#include "sqcert/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqcert/kahan.hpp"
#include "sqcert/parallel.hpp"

namespace sqcert::charsums {

using modring::ModulusFactorization;
using modring::SquareKind;
using modring::SquareSet;

std::complex<double> unit_root(std::uint64_t k, std::uint64_t W) {
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(W));
  return {std::cos(angle), std::sin(angle)};
}

int legendre(std::int64_t t, std::uint64_t p) {
  if (p < 3 || !modring::is_prime_u64(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  std::int64_t r = t % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  const std::uint64_t e = modring::pow_mod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
  if (e == 0) return 0;
  return e == 1 ? 1 : -1;
}

std::complex<double> epsilon_p(std::uint64_t p) {
  if (p % 4 == 1) return {1.0, 0.0};
  return {0.0, 1.0};
}

std::complex<double> indicator_exponential_sum(const SquareSet& set, std::uint64_t t) {
  KahanComplexSum acc;
  const std::uint64_t W = set.modulus;
  for (std::uint64_t x : set.elements) acc.add(unit_root(modring::mul_mod(t % W, x, W), W));
  return acc.value();
}

namespace {

std::uint64_t pow_u64(std::uint64_t p, unsigned n) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < n; ++i) v *= p;
  return v;
}

void require_odd_prime(std::uint64_t p, const char* who) {
  if (p < 3 || !modring::is_prime_u64(p)) throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t v = 3; v <= x; v += 2)
    if (modring::is_prime_u64(v)) primes.push_back(v);
  return primes;
}

std::vector<std::complex<double>> root_table(std::uint64_t W) {
  std::vector<std::complex<double>> roots(W);
  for (std::uint64_t k = 0; k < W; ++k) roots[k] = unit_root(k, W);
  return roots;
}

}  // namespace

std::complex<double> square_gauss_sum(std::uint64_t p, unsigned n, std::uint64_t t) {
  require_odd_prime(p, "square_gauss_sum");
  if (n == 0) throw std::invalid_argument("square_gauss_sum: n must be positive");
  return indicator_exponential_sum(modring::squares_mod(pow_u64(p, n), SquareKind::All), t);
}

std::complex<double> reduced_gauss_sum(std::uint64_t p, unsigned n, std::uint64_t t) {
  require_odd_prime(p, "reduced_gauss_sum");
  if (n == 0) throw std::invalid_argument("reduced_gauss_sum: n must be positive");
  if (modring::gcd_u64(t % p, p) != 1) throw std::domain_error("reduced_gauss_sum: t must be coprime to p");
  const std::uint64_t pn = pow_u64(p, n);
  KahanComplexSum acc;
  for (std::uint64_t y = 1; y < pn; ++y) {
    if (y % p == 0) continue;
    acc.add(unit_root(modring::mul_mod(t % pn, modring::mul_mod(y, y, pn), pn), pn));
  }
  return acc.value();
}

std::complex<double> reduced_gauss_closed_form(std::uint64_t p, unsigned n, std::uint64_t t) {
  require_odd_prime(p, "reduced_gauss_closed_form");
  if (modring::gcd_u64(t % p, p) != 1)
    throw std::domain_error("reduced_gauss_closed_form: t must be coprime to p");
  if (n >= 2) return {0.0, 0.0};
  const double sign = static_cast<double>(legendre(static_cast<std::int64_t>(t % p), p));
  return sign * epsilon_p(p) * std::sqrt(static_cast<double>(p)) - std::complex<double>{1.0, 0.0};
}

GaussSumReport square_gauss_report(std::uint64_t p, unsigned n, std::uint64_t t, double c_bound) {
  const std::uint64_t pn = pow_u64(p, n);
  GaussSumReport r;
  r.modulus = pn;
  r.t = t % pn;
  r.value = square_gauss_sum(p, n, t);
  r.magnitude = std::abs(r.value);
  const std::uint64_t g = (r.t == 0) ? pn : modring::gcd_u64(r.t, pn);
  r.bound = c_bound * static_cast<double>(g) * std::sqrt(static_cast<double>(p));
  r.satisfied = r.magnitude <= r.bound + 1e-9;
  return r;
}

namespace {

// Component data for the multiplicative splitting of the square-indicator DFT
// over W = prod q_i: e_W(u) = prod e_{q_i}(beta_i * u).
struct SplitComponent {
  std::uint64_t q = 1;
  std::uint64_t beta = 0;
  std::vector<std::uint64_t> squares;
  std::vector<std::complex<double>> roots;
};

std::vector<SplitComponent> split_components(const ModulusFactorization& f) {
  std::vector<SplitComponent> comps;
  comps.reserve(f.factors.size());
  for (const auto& pp : f.factors) {
    SplitComponent c;
    c.q = pp.value;
    c.beta = modring::inv_mod((f.W / pp.value) % pp.value, pp.value);
    c.squares = modring::squares_mod(pp.value, SquareKind::All).elements;
    c.roots = root_table(pp.value);
    comps.push_back(std::move(c));
  }
  return comps;
}

std::complex<double> split_square_dft(const std::vector<SplitComponent>& comps, std::uint64_t neg_xi) {
  std::complex<double> prod{1.0, 0.0};
  for (const auto& c : comps) {
    const std::uint64_t mult = modring::mul_mod(c.beta, neg_xi % c.q, c.q);
    KahanComplexSum acc;
    for (std::uint64_t x : c.squares) acc.add(c.roots[modring::mul_mod(mult, x, c.q)]);
    prod *= acc.value();
  }
  return prod;
}

}  // namespace

GaussSumReport nu_hat_check(const ModulusFactorization& f, std::uint64_t xi, double statistic_bound) {
  if (!f.odd() || f.W < 3) throw std::invalid_argument("nu_hat_check: W must be odd with prime factors >= 3");
  xi %= f.W;
  if (xi == 0) throw std::domain_error("nu_hat_check: xi = 0 is excluded (nu_hat(0) = 1)");
  const auto comps = split_components(f);
  double s_w = 1.0;
  for (const auto& c : comps) s_w *= static_cast<double>(c.squares.size());
  const std::complex<double> value = split_square_dft(comps, f.W - xi) / s_w;
  GaussSumReport r;
  r.modulus = f.W;
  r.t = xi;
  r.value = value;
  r.magnitude = std::abs(value);
  r.bound = statistic_bound / std::sqrt(static_cast<double>(f.smallest_prime()));
  r.satisfied = r.magnitude <= r.bound + 1e-12;
  return r;
}

QrIntervalCount qr_interval_count(std::uint64_t p, double eta) {
  require_odd_prime(p, "qr_interval_count");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("qr_interval_count: eta must be in (0,1)");
  const auto cutoff = static_cast<std::uint64_t>(std::floor(eta * static_cast<double>(p)));
  QrIntervalCount r;
  for (std::uint64_t x = 1; x <= cutoff; ++x)
    if (legendre(static_cast<std::int64_t>(x), p) == 1) ++r.count;
  r.main_term = eta * static_cast<double>(p + 1) / 2.0;
  r.normalized_error = std::abs(static_cast<double>(r.count) - r.main_term) /
                       (std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p)));
  return r;
}

// ---- sweeps ---------------------------------------------------------------

double reduced_gauss_max_deviation(std::uint64_t p_max, unsigned n_max) {
  double global = 0.0;
  for (std::uint64_t p : odd_primes_up_to(p_max)) {
    for (unsigned n = 1; n <= n_max; ++n) {
      const std::uint64_t pn = pow_u64(p, n);
      const auto unit_squares = modring::squares_mod(pn, SquareKind::Units).elements;
      // gap-encode the sorted support so the inner loop can advance the
      // exponential by one complex rotation per term instead of a table
      // lookup; drift is killed by an exact refresh every few thousand steps
      std::vector<std::uint32_t> gap_values;
      std::vector<std::uint16_t> gap_ids(unit_squares.size(), 0);
      for (std::size_t k = 1; k < unit_squares.size(); ++k) {
        const auto d = static_cast<std::uint32_t>(unit_squares[k] - unit_squares[k - 1]);
        std::size_t id = 0;
        while (id < gap_values.size() && gap_values[id] != d) ++id;
        if (id == gap_values.size()) gap_values.push_back(d);
        gap_ids[k] = static_cast<std::uint16_t>(id);
      }
      std::vector<double> dev(p - 1, 0.0);
      parallel_for(static_cast<std::int64_t>(p - 1), [&](std::int64_t idx) {
        const std::uint64_t t = static_cast<std::uint64_t>(idx) + 1;
        std::vector<std::complex<double>> rot(gap_values.size());
        for (std::size_t id = 0; id < gap_values.size(); ++id)
          rot[id] = unit_root((t * gap_values[id]) % pn, pn);
        KahanComplexSum acc;
        std::complex<double> z = unit_root((t * unit_squares[0]) % pn, pn);
        acc.add(z);
        for (std::size_t k = 1; k < unit_squares.size(); ++k) {
          if ((k & 0xff) == 0)
            z = unit_root((t * unit_squares[k]) % pn, pn);
          else
            z *= rot[gap_ids[k]];
          acc.add(z);
        }
        // units map 2-to-1 onto unit squares for odd p
        const std::complex<double> sum = 2.0 * acc.value();
        dev[idx] = std::abs(sum - reduced_gauss_closed_form(p, n, t));
      });
      for (double d : dev) global = std::max(global, d);
    }
  }
  return global;
}

double reduced_gauss_max_deviation_serial(std::uint64_t p_max, unsigned n_max) {
  double global = 0.0;
  for (std::uint64_t p : odd_primes_up_to(p_max))
    for (unsigned n = 1; n <= n_max; ++n)
      for (std::uint64_t t = 1; t < p; ++t)
        global = std::max(global, std::abs(reduced_gauss_sum(p, n, t) - reduced_gauss_closed_form(p, n, t)));
  return global;
}

namespace {

double bound_ratio(std::uint64_t p, std::uint64_t pn, double magnitude, std::uint64_t t) {
  const std::uint64_t g = (t == 0) ? pn : modring::gcd_u64(t, pn);
  return magnitude / (static_cast<double>(g) * std::sqrt(static_cast<double>(p)));
}

double bound_sweep_one(std::uint64_t p, unsigned n, const std::vector<std::uint64_t>& ts, bool parallel) {
  const std::uint64_t pn = pow_u64(p, n);
  const auto squares = modring::squares_mod(pn, SquareKind::All).elements;
  const auto roots = root_table(pn);
  std::vector<double> ratio(ts.size(), 0.0);
  auto body = [&](std::int64_t idx) {
    const std::uint64_t t = ts[idx];
    KahanComplexSum acc;
    for (std::uint64_t x : squares) acc.add(roots[modring::mul_mod(t, x, pn)]);
    ratio[idx] = bound_ratio(p, pn, std::abs(acc.value()), t);
  };
  if (parallel) {
    parallel_for(static_cast<std::int64_t>(ts.size()), body);
  } else {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ts.size()); ++i) body(i);
  }
  return *std::max_element(ratio.begin(), ratio.end());
}

double bound_sweep(std::uint64_t p_max, std::uint64_t n3_full_p_max, bool parallel) {
  double global = 0.0;
  for (std::uint64_t p : odd_primes_up_to(p_max)) {
    for (unsigned n = 1; n <= 3; ++n) {
      const std::uint64_t pn = pow_u64(p, n);
      std::vector<std::uint64_t> ts;
      if (n <= 2 || p <= n3_full_p_max) {
        ts.resize(pn);
        for (std::uint64_t t = 0; t < pn; ++t) ts[t] = t;
      } else {
        // representatives: |sum| depends on t only through v_p(t) and the
        // quadratic class of t / p^v, so small multiples of each p-power
        // cover every case (u <= 50 always contains a non-residue).
        ts.push_back(0);
        const std::uint64_t u_max = std::min<std::uint64_t>(p - 1, 50);
        for (unsigned v = 0; v < 3; ++v)
          for (std::uint64_t u = 1; u <= u_max; ++u) ts.push_back(u * pow_u64(p, v));
      }
      global = std::max(global, bound_sweep_one(p, n, ts, parallel));
    }
  }
  return global;
}

}  // namespace

double square_gauss_bound_ratio_max(std::uint64_t p_max, std::uint64_t n3_full_p_max) {
  return bound_sweep(p_max, n3_full_p_max, true);
}

double square_gauss_bound_ratio_max_serial(std::uint64_t p_max, std::uint64_t n3_full_p_max) {
  return bound_sweep(p_max, n3_full_p_max, false);
}

double nu_hat_statistic_max(std::uint64_t w_max) {
  std::vector<std::uint64_t> moduli;
  for (std::uint64_t w = 3; w <= w_max; w += 2) {
    const auto f = modring::factorize(w);
    if (std::all_of(f.factors.begin(), f.factors.end(), [](const auto& pp) { return pp.n == 1; }))
      moduli.push_back(w);
  }
  std::vector<double> best(moduli.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(moduli.size()), [&](std::int64_t i) {
    const auto f = modring::factorize(moduli[i]);
    const auto comps = split_components(f);
    double s_w = 1.0;
    for (const auto& c : comps) s_w *= static_cast<double>(c.squares.size());
    const double scale = std::sqrt(static_cast<double>(f.smallest_prime())) / s_w;
    double m = 0.0;
    for (std::uint64_t xi = 1; xi < f.W; ++xi)
      m = std::max(m, std::abs(split_square_dft(comps, f.W - xi)) * scale);
    best[i] = m;
  });
  return best.empty() ? 0.0 : *std::max_element(best.begin(), best.end());
}

double nu_hat_statistic_max_serial(std::uint64_t w_max) {
  double global = 0.0;
  for (std::uint64_t w = 3; w <= w_max; w += 2) {
    const auto f = modring::factorize(w);
    if (!std::all_of(f.factors.begin(), f.factors.end(), [](const auto& pp) { return pp.n == 1; }))
      continue;
    const auto squares = modring::squares_mod(w, SquareKind::All);
    const double scale = std::sqrt(static_cast<double>(f.smallest_prime())) /
                         static_cast<double>(squares.size());
    for (std::uint64_t xi = 1; xi < w; ++xi) {
      // direct DFT of the indicator, the straightforward reference route
      KahanComplexSum acc;
      for (std::uint64_t x : squares.elements)
        acc.add(unit_root((w - modring::mul_mod(x, xi, w)) % w, w));
      global = std::max(global, std::abs(acc.value()) * scale);
    }
  }
  return global;
}

namespace {

double qr_error_for(std::uint64_t p, std::uint64_t count, double eta) {
  const double main_term = eta * static_cast<double>(p + 1) / 2.0;
  return std::abs(static_cast<double>(count) - main_term) /
         (std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p)));
}

}  // namespace

double qr_equidistribution_max_error(std::uint64_t p_max, const std::vector<double>& etas) {
  const auto primes = odd_primes_up_to(p_max);
  std::vector<double> worst(primes.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(primes.size()), [&](std::int64_t i) {
    const std::uint64_t p = primes[i];
    std::vector<char> is_square(p, 0);
    for (std::uint64_t k = 0; k <= (p - 1) / 2; ++k) is_square[modring::mul_mod(k, k, p)] = 1;
    std::vector<std::pair<std::uint64_t, std::size_t>> cuts;  // (cutoff, eta index)
    cuts.reserve(etas.size());
    for (std::size_t e = 0; e < etas.size(); ++e)
      cuts.emplace_back(static_cast<std::uint64_t>(std::floor(etas[e] * static_cast<double>(p))), e);
    std::sort(cuts.begin(), cuts.end());
    double m = 0.0;
    std::uint64_t running = 0;
    std::uint64_t x = 1;
    for (const auto& [cutoff, e] : cuts) {
      for (; x <= cutoff; ++x) running += is_square[x];
      m = std::max(m, qr_error_for(p, running, etas[e]));
    }
    worst[i] = m;
  });
  return worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double qr_equidistribution_max_error_serial(std::uint64_t p_max, const std::vector<double>& etas) {
  double global = 0.0;
  for (std::uint64_t p : odd_primes_up_to(p_max))
    for (double eta : etas) global = std::max(global, qr_interval_count(p, eta).normalized_error);
  return global;
}

}  // namespace sqcert::charsums
