#include "sqcert/comblemma.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "sqcert/modring.hpp"
#include "sqcert/parallel.hpp"
#include "sqcert/rng.hpp"

namespace sqcert::comblemma {

using exactlp::LpProblem;
using exactlp::LpSolution;
using exactlp::LpStatus;
using exactlp::SparseRow;

Rational threshold_d(int s) {
  if (s < 5) throw std::invalid_argument("threshold_d: s must be at least 5");
  if (s == 5) return rat(9, 10);
  if (s == 6) return rat(5, 6);
  if (s <= 12) return rat(s + 13, 4 * s);
  return rat(1, 2);
}

Rational threshold_D(int s) {
  if (s < 5) throw std::invalid_argument("threshold_D: s must be at least 5");
  if (s == 5) return rat(59, 60);
  if (s == 6) return rat(7, 8);
  if (s == 7) return rat(3, 4);
  if (s <= 12) return rat(s + 13, 4 * s);
  return rat(1, 2);
}

Rational DensityMatrix::total_average() const {
  Rational sum(0);
  for (const auto& col : columns)
    for (const auto& a : col) sum += a;
  return sum / rat(n * s);
}

void DensityMatrix::validate() const {
  if (s < 1 || n < 1) throw std::invalid_argument("density matrix: bad shape");
  if (columns.size() != static_cast<std::size_t>(s))
    throw std::invalid_argument("density matrix: column count mismatch");
  for (const auto& col : columns) {
    if (col.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("density matrix: column length mismatch");
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] < 0 || col[i] > 1) throw std::invalid_argument("density matrix: entry outside [0,1]");
      if (i > 0 && col[i - 1] < col[i])
        throw std::invalid_argument("density matrix: column not decreasing");
    }
  }
}

std::vector<std::vector<int>> canonical_t_tuples(int s, int n) {
  if (s < 1 || n < 1) throw std::invalid_argument("canonical_t_tuples: bad parameters");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(s);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == s) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 1);
  return out;
}

namespace {

// Support-resolved shape of LP(t): variable layout, thresholds, row counts.
struct LpShape {
  int s = 0, n = 0;
  std::vector<int> t;
  std::vector<int> offset;  // column j variables live at [offset[j], offset[j] + t[j])
  int num_vars = 0;
  int need = 0;  // 2n
  Rational d;
  std::int64_t mono_rows = 0;
};

LpShape make_shape(int s, int n, const std::vector<int>& t) {
  if (s < 5 || n < 3) throw std::invalid_argument("generate_lp: requires s >= 5 and n >= 3");
  if (t.size() != static_cast<std::size_t>(s)) throw std::invalid_argument("generate_lp: t length mismatch");
  for (int tj : t)
    if (tj < 1 || tj > n) throw std::invalid_argument("generate_lp: t entries must lie in [1, n]");
  LpShape sh;
  sh.s = s;
  sh.n = n;
  sh.t = t;
  sh.offset.resize(s);
  for (int j = 0; j < s; ++j) {
    sh.offset[j] = sh.num_vars;
    sh.num_vars += t[j];
  }
  sh.need = 2 * n;
  sh.d = threshold_d(s);
  for (int j = 0; j < s; ++j) sh.mono_rows += t[j] - 1;
  return sh;
}

// C[j][r] = #tuples (i_j..i_{s-1}) with i < t and index sum >= r, r capped.
std::vector<std::vector<std::uint64_t>> suffix_counts(const LpShape& sh) {
  std::vector<std::vector<std::uint64_t>> C(sh.s + 1,
                                            std::vector<std::uint64_t>(sh.need + 1, 0));
  C[sh.s][0] = 1;
  for (int j = sh.s - 1; j >= 0; --j)
    for (int r = 0; r <= sh.need; ++r)
      for (int i = 0; i < sh.t[j]; ++i) C[j][r] += C[j + 1][std::max(r - i, 0)];
  return C;
}

std::int64_t averaging_row_count(const LpShape& sh) {
  return static_cast<std::int64_t>(suffix_counts(sh)[0][sh.need]);
}

// Lexicographic rank of a valid averaging tuple among all valid tuples.
std::int64_t tuple_rank(const LpShape& sh, const std::vector<std::vector<std::uint64_t>>& C,
                        const std::vector<int>& tuple) {
  std::uint64_t rank = 0;
  int need = sh.need;
  for (int j = 0; j < sh.s; ++j) {
    for (int v = 0; v < tuple[j]; ++v) rank += C[j + 1][std::max(need - v, 0)];
    need = std::max(need - tuple[j], 0);
  }
  return static_cast<std::int64_t>(rank);
}

void emit_monotonicity_rows(const LpShape& sh, const exactlp::RowVisitor& visit) {
  std::int64_t index = 0;
  SparseRow row;
  const Rational zero(0);
  for (int j = 0; j < sh.s; ++j) {
    for (int i = 0; i + 1 < sh.t[j]; ++i) {
      row.idx = {sh.offset[j] + i, sh.offset[j] + i + 1};
      row.val = {Rational(-1), Rational(1)};  // a_{i+1,j} - a_{i,j} <= 0
      visit(index++, row, zero);
    }
  }
}

void emit_averaging_rows(const LpShape& sh, std::int64_t first_index,
                         const exactlp::RowVisitor& visit) {
  std::vector<int> tuple(sh.s, 0);
  const Rational coeff = rat(1, sh.s);
  SparseRow row;
  row.idx.resize(sh.s);
  row.val.assign(sh.s, coeff);
  std::int64_t index = first_index;
  for (;;) {
    int sum = 0;
    for (int j = 0; j < sh.s; ++j) sum += tuple[j];
    if (sum >= sh.need) {
      for (int j = 0; j < sh.s; ++j) row.idx[j] = sh.offset[j] + tuple[j];
      visit(index++, row, sh.d);
    }
    int pos = sh.s - 1;
    while (pos >= 0 && tuple[pos] == sh.t[pos] - 1) {
      tuple[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[pos];
  }
}

LpProblem shape_base_problem(const LpShape& sh) {
  LpProblem p;
  p.num_vars = sh.num_vars;
  p.objective.assign(sh.num_vars, rat(1, sh.n * sh.s));
  p.bounds.assign(sh.num_vars, exactlp::Bound{Rational(0), Rational(1)});
  emit_monotonicity_rows(sh, [&](std::int64_t, const SparseRow& row, const Rational& rhs) {
    p.rows.push_back(row);
    p.rhs.push_back(rhs);
  });
  return p;
}

std::string tuple_label(int s, int n, const std::vector<int>& t) {
  std::string label = "LP(s=" + std::to_string(s) + ",n=" + std::to_string(n) + ",t=";
  for (std::size_t j = 0; j < t.size(); ++j) label += (j ? "," : "[") + std::to_string(t[j]);
  label += "])";
  return label;
}

// Exact separation oracle: maximize sum_j x[i_j, j] over tuples with
// i_j < t_j and sum i_j >= 2n. Returns the optimum and, through the walk,
// the lexicographically smallest maximizer.
struct Separation {
  std::optional<Rational> best;
  std::vector<int> tuple;
};

Separation separate(const LpShape& sh, const std::vector<Rational>& x) {
  const int R = sh.need;
  std::vector<std::vector<std::optional<Rational>>> G(
      sh.s + 1, std::vector<std::optional<Rational>>(R + 1));
  G[sh.s][0] = Rational(0);
  for (int j = sh.s - 1; j >= 0; --j) {
    for (int r = 0; r <= R; ++r) {
      std::optional<Rational> best;
      for (int i = 0; i < sh.t[j]; ++i) {
        const auto& nxt = G[j + 1][std::max(r - i, 0)];
        if (!nxt) continue;
        const Rational cand = x[sh.offset[j] + i] + *nxt;
        if (!best || cand > *best) best = cand;
      }
      G[j][r] = best;
    }
  }
  Separation out;
  if (!G[0][R]) return out;
  out.best = G[0][R];
  out.tuple.resize(sh.s);
  int need = R;
  Rational prefix(0);
  for (int j = 0; j < sh.s; ++j) {
    bool found = false;
    for (int i = 0; i < sh.t[j]; ++i) {
      const int nr = std::max(need - i, 0);
      if (!G[j + 1][nr]) continue;
      if (prefix + x[sh.offset[j] + i] + *G[j + 1][nr] == *out.best) {
        out.tuple[j] = i;
        prefix += x[sh.offset[j] + i];
        need = nr;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("separation walk lost the optimum");
  }
  return out;
}

}  // namespace

std::int64_t generated_row_count(int s, int n, const std::vector<int>& t) {
  const LpShape sh = make_shape(s, n, t);
  return sh.mono_rows + averaging_row_count(sh);
}

void stream_generated_rows(int s, int n, const std::vector<int>& t,
                           const exactlp::RowVisitor& visit) {
  const LpShape sh = make_shape(s, n, t);
  emit_monotonicity_rows(sh, visit);
  emit_averaging_rows(sh, sh.mono_rows, visit);
}

std::int64_t averaging_tuple_index(int s, int n, const std::vector<int>& t,
                                   const std::vector<int>& tuple) {
  const LpShape sh = make_shape(s, n, t);
  if (tuple.size() != static_cast<std::size_t>(s))
    throw std::invalid_argument("averaging_tuple_index: tuple length mismatch");
  int sum = 0;
  for (int j = 0; j < s; ++j) {
    if (tuple[j] < 0 || tuple[j] >= t[j])
      throw std::invalid_argument("averaging_tuple_index: tuple outside support");
    sum += tuple[j];
  }
  if (sum < sh.need) throw std::invalid_argument("averaging_tuple_index: index sum below 2n");
  return sh.mono_rows + tuple_rank(sh, suffix_counts(sh), tuple);
}

LpProblem generate_lp(int s, int n, const std::vector<int>& t) {
  const LpShape sh = make_shape(s, n, t);
  LpProblem p = shape_base_problem(sh);
  emit_averaging_rows(sh, sh.mono_rows, [&](std::int64_t, const SparseRow& row, const Rational& rhs) {
    p.rows.push_back(row);
    p.rhs.push_back(rhs);
  });
  p.label = tuple_label(s, n, t);
  return p;
}

GeneratedSolve solve_generated_lp(int s, int n, const std::vector<int>& t, bool verify) {
  const LpShape sh = make_shape(s, n, t);
  const auto counts = suffix_counts(sh);
  LpProblem work = shape_base_problem(sh);
  work.label = tuple_label(s, n, t);
  std::vector<std::int64_t> added_ranks;
  std::set<std::int64_t> added;
  const Rational sd = sh.d * sh.s;

  GeneratedSolve out;
  for (;;) {
    out.solution = exactlp::simplex_solve(work);
    if (out.solution.status != LpStatus::Optimal)
      throw std::logic_error("generated LP must be feasible and bounded");
    ++out.separation_rounds;
    const Separation sep = separate(sh, out.solution.primal);
    if (!sep.best || *sep.best <= sd) break;
    const std::int64_t rank = tuple_rank(sh, counts, sep.tuple);
    if (!added.insert(rank).second)
      throw std::logic_error("separation oracle repeated a satisfied row");
    SparseRow row;
    row.idx.resize(sh.s);
    row.val.assign(sh.s, rat(1, sh.s));
    for (int j = 0; j < sh.s; ++j) row.idx[j] = sh.offset[j] + sep.tuple[j];
    work.rows.push_back(std::move(row));
    work.rhs.push_back(sh.d);
    added_ranks.push_back(rank);
  }

  // lift the certificate onto the full row family
  for (auto& entry : out.solution.certificate.row_duals)
    if (entry.first >= sh.mono_rows)
      entry.first = sh.mono_rows + added_ranks[entry.first - sh.mono_rows];
  std::sort(out.solution.certificate.row_duals.begin(), out.solution.certificate.row_duals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.total_rows = sh.mono_rows + averaging_row_count(sh);

  if (verify) {
    const exactlp::RowStream stream = [&](const exactlp::RowVisitor& visit) {
      stream_generated_rows(s, n, t, visit);
    };
    out.certificate_flaw =
        exactlp::certificate_flaw_streamed(sh.num_vars, work.objective, work.bounds,
                                           out.total_rows, stream, out.solution);
  }
  return out;
}

BaseCaseReport verify_base_case(int s, int n, int tuple_limit) {
  BaseCaseReport report;
  report.s = s;
  report.n = n;
  report.d = threshold_d(s);
  auto tuples = canonical_t_tuples(s, n);
  if (tuple_limit > 0 && static_cast<std::size_t>(tuple_limit) < tuples.size())
    tuples.resize(tuple_limit);
  report.cases.resize(tuples.size());
  parallel_for(static_cast<std::int64_t>(tuples.size()), [&](std::int64_t i) {
    const auto start = std::chrono::steady_clock::now();
    const GeneratedSolve solved = solve_generated_lp(s, n, tuples[i], true);
    BaseCaseResult& r = report.cases[i];
    r.t = tuples[i];
    r.optimum = solved.solution.value;
    r.bounded = r.optimum <= report.d;
    r.certificate_ok = !solved.certificate_flaw.has_value();
    r.certificate_digest = exactlp::certificate_digest(solved.solution.certificate);
    r.rows = solved.total_rows;
    r.pivots = solved.solution.pivots;
    r.separation_rounds = solved.separation_rounds;
    r.max_coeff_bits = solved.solution.max_coeff_bits;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  report.all_bounded = true;
  report.all_certified = true;
  for (const auto& c : report.cases) {
    report.all_bounded = report.all_bounded && c.bounded;
    report.all_certified = report.all_certified && c.certificate_ok;
    if (c.optimum > report.max_optimum) report.max_optimum = c.optimum;
  }
  return report;
}

std::optional<std::vector<int>> lemma_conclusion_search(const DensityMatrix& m,
                                                        const Rational& threshold) {
  m.validate();
  const int s = m.s;
  const int R = 2 * m.n;
  std::vector<int> nonzero(s, 0);  // entries are sorted, so the support is a prefix
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < m.n && m.columns[j][i] > 0; ++i) nonzero[j] = i + 1;
  std::vector<std::vector<std::optional<Rational>>> G(
      s + 1, std::vector<std::optional<Rational>>(R + 1));
  G[s][0] = Rational(0);
  for (int j = s - 1; j >= 0; --j) {
    for (int r = 0; r <= R; ++r) {
      std::optional<Rational> best;
      for (int i = 0; i < nonzero[j]; ++i) {
        const auto& nxt = G[j + 1][std::max(r - i, 0)];
        if (!nxt) continue;
        const Rational cand = m.columns[j][i] + *nxt;
        if (!best || cand > *best) best = cand;
      }
      G[j][r] = best;
    }
  }
  const Rational target = threshold * s;
  if (!G[0][R] || *G[0][R] <= target) return std::nullopt;
  std::vector<int> witness(s);
  Rational prefix(0);
  int need = R;
  for (int j = 0; j < s; ++j) {
    bool found = false;
    for (int i = 0; i < nonzero[j]; ++i) {
      const int nr = std::max(need - i, 0);
      if (!G[j + 1][nr]) continue;
      if (prefix + m.columns[j][i] + *G[j + 1][nr] > target) {
        witness[j] = i;
        prefix += m.columns[j][i];
        need = nr;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("conclusion witness walk failed");
  }
  return witness;
}

std::optional<std::vector<int>> lemma_conclusion_search_bruteforce(const DensityMatrix& m,
                                                                   const Rational& threshold) {
  m.validate();
  const int s = m.s;
  std::vector<int> nonzero(s, 0);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < m.n && m.columns[j][i] > 0; ++i) nonzero[j] = i + 1;
  for (int j = 0; j < s; ++j)
    if (nonzero[j] == 0) return std::nullopt;
  const Rational target = threshold * s;
  std::vector<int> tuple(s, 0);
  for (;;) {
    int sum = 0;
    for (int j = 0; j < s; ++j) sum += tuple[j];
    if (sum >= 2 * m.n) {
      Rational total(0);
      for (int j = 0; j < s; ++j) total += m.columns[j][tuple[j]];
      if (total > target) return tuple;
    }
    int pos = s - 1;
    while (pos >= 0 && tuple[pos] == nonzero[pos] - 1) {
      tuple[pos] = 0;
      --pos;
    }
    if (pos < 0) return std::nullopt;
    ++tuple[pos];
  }
}

DensityMatrix sample_density_matrix(int s, int n, const Rational& threshold, std::uint64_t seed,
                                    bool adversarial) {
  if (s < 1 || n < 1) throw std::invalid_argument("sample_density_matrix: bad shape");
  if (threshold >= 1) throw std::invalid_argument("sample_density_matrix: threshold must be < 1");
  SplitMix64 g(seed);
  DensityMatrix m;
  m.s = s;
  m.n = n;
  m.columns.assign(s, std::vector<Rational>(n));
  for (int j = 0; j < s; ++j) {
    auto& col = m.columns[j];
    for (int i = 0; i < n; ++i) col[i] = g.unit_rational();
    // occasional zero tails so partial supports get exercised
    if (n > 1 && g.below(2) == 0) {
      const int keep = 1 + static_cast<int>(g.below(n));
      for (int i = keep; i < n; ++i) col[i] = 0;
    }
    std::sort(col.begin(), col.end(), std::greater<Rational>());
    if (col[0] == 0) col[0] = rat_u64(g.below(1000) + 1, 1000);
  }

  Rational avg = m.total_average();
  Rational margin = adversarial ? rat(1, 1000) : rat_u64(1 + g.below(100), 1000);
  const Rational cap = (1 - threshold) / 2;
  if (margin > cap) margin = cap;
  const Rational target = threshold + margin;
  if (avg < target) {
    // try the zero-preserving mix toward the support indicator first
    Rational nz_total(0);
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < n; ++i)
        if (m.columns[j][i] > 0) nz_total += 1;
    const Rational nz_avg = nz_total / rat(n * s);
    if (nz_avg > target) {
      const Rational lambda = (target - avg) / (nz_avg - avg);
      for (auto& col : m.columns)
        for (auto& a : col)
          if (a > 0) a += lambda * (1 - a);
    } else {
      const Rational lambda = (target - avg) / (1 - avg);
      for (auto& col : m.columns)
        for (auto& a : col) a += lambda * (1 - a);
    }
  } else if (adversarial && avg > target) {
    const Rational lambda = (avg - target) / (avg - threshold);
    for (auto& col : m.columns)
      for (auto& a : col) a -= lambda * (a - threshold);
  }
  m.validate();
  return m;
}

DensityMatrix sample_hypothesis_matrix(int s, int n, std::uint64_t seed) {
  const bool valid = (s >= 6 && n >= 3) || (s == 5 && n >= 5);
  if (!valid)
    throw std::invalid_argument("sample_hypothesis_matrix: needs s >= 6, n >= 3 or s = 5, n >= 5");
  return sample_density_matrix(s, n, threshold_d(s), seed, false);
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 1) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

AdversaryReport small_moduli_adversary_check(int s) {
  if (s < 5) throw std::invalid_argument("small_moduli_adversary_check: s must be at least 5");
  AdversaryReport report;
  report.s = s;
  report.m = (s >= 6) ? 5 : 35;
  report.d = threshold_d(s);
  report.D = threshold_D(s);
  const auto unit_squares = modring::squares_mod(report.m, modring::SquareKind::Units).elements;
  const int K = static_cast<int>(unit_squares.size());
  report.all_within = true;
  report.all_certified = true;

  for (std::uint64_t y = 0; y < report.m; ++y) {
    for (unsigned mask = 1; mask < (1u << K); ++mask) {
      AdversaryCase c;
      c.y = y;
      for (int b = 0; b < K; ++b)
        if (mask & (1u << b)) c.support.push_back(unit_squares[b]);
      const int vars = static_cast<int>(c.support.size());

      LpProblem p;
      p.num_vars = vars;
      p.objective.assign(vars, rat(1, K));
      p.bounds.assign(vars, exactlp::Bound{Rational(0), Rational(1)});
      std::vector<std::vector<int>> count_rows;
      std::vector<int> cur;
      compositions(s, vars, cur, [&](const std::vector<int>& counts) {
        std::uint64_t sum = 0;
        for (int v = 0; v < vars; ++v) sum += static_cast<std::uint64_t>(counts[v]) * c.support[v];
        if (sum % report.m != y) return;
        SparseRow row;
        for (int v = 0; v < vars; ++v) {
          if (counts[v] == 0) continue;
          row.idx.push_back(v);
          row.val.push_back(rat(counts[v], s));
        }
        p.rows.push_back(std::move(row));
        p.rhs.push_back(report.d);
        count_rows.push_back(counts);
      });
      c.constraints = static_cast<std::int64_t>(p.rows.size());
      p.label = "adversary(s=" + std::to_string(s) + ",m=" + std::to_string(report.m) +
                ",y=" + std::to_string(y) + ")";

      const LpSolution sol = exactlp::simplex_solve(p);
      if (sol.status != LpStatus::Optimal)
        throw std::logic_error("adversary LP must be feasible and bounded");
      c.optimum = sol.value;
      c.within = c.optimum <= report.D;
      if (exactlp::certificate_flaw(p, sol)) report.all_certified = false;
      for (std::size_t r = 0; r < p.rows.size(); ++r) {
        Rational ax(0);
        for (std::size_t e = 0; e < p.rows[r].idx.size(); ++e)
          ax += p.rows[r].val[e] * sol.primal[p.rows[r].idx[e]];
        if (ax == p.rhs[r]) {
          c.binding_rows.push_back(static_cast<std::int64_t>(r));
          c.binding_counts.push_back(count_rows[r]);
        }
      }
      report.all_within = report.all_within && c.within;
      if (c.optimum > report.max_optimum) report.max_optimum = c.optimum;
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

namespace {

struct SampledFunctions {
  std::vector<std::vector<Rational>> values;  // values[j][k] on the k-th unit square
};

// Sample s functions with exact mean average > target; zeros are kept when a
// support-indicator mix can reach the target, otherwise mix toward all-ones.
SampledFunctions sample_functions(int s, int K, const Rational& target, SplitMix64& g) {
  SampledFunctions f;
  f.values.assign(s, std::vector<Rational>(K));
  for (int j = 0; j < s; ++j) {
    bool any = false;
    for (int k = 0; k < K; ++k) {
      f.values[j][k] = g.unit_rational();
      any = any || f.values[j][k] > 0;
    }
    if (!any) f.values[j][static_cast<int>(g.below(K))] = rat_u64(g.below(1000) + 1, 1000);
  }
  Rational avg(0), nz(0);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < K; ++k) {
      avg += f.values[j][k];
      if (f.values[j][k] > 0) nz += 1;
    }
  avg /= rat(s * K);
  nz /= rat(s * K);
  if (avg < target) {
    if (nz > target) {
      const Rational lambda = (target - avg) / (nz - avg);
      for (auto& col : f.values)
        for (auto& v : col)
          if (v > 0) v += lambda * (1 - v);
    } else {
      const Rational lambda = (target - avg) / (1 - avg);
      for (auto& col : f.values)
        for (auto& v : col) v += lambda * (1 - v);
    }
  }
  return f;
}

// max-sum residue DP restricted to nonzero values; reach[y] is the best
// attainable sum of f_j(x_j) over decompositions of y.
std::vector<std::optional<Rational>> decomposition_dp(
    const std::vector<std::vector<Rational>>& values,
    const std::vector<std::uint64_t>& points, std::uint64_t W) {
  std::vector<std::optional<Rational>> cur(W);
  cur[0] = Rational(0);
  for (const auto& f : values) {
    std::vector<std::optional<Rational>> next(W);
    for (std::uint64_t r = 0; r < W; ++r) {
      if (!cur[r]) continue;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (!(f[k] > 0)) continue;
        const std::uint64_t nr = (r + points[k]) % W;
        const Rational cand = *cur[r] + f[k];
        if (!next[nr] || cand > *next[nr]) next[nr] = cand;
      }
    }
    cur.swap(next);
  }
  return cur;
}

bool square_free(std::uint64_t W) {
  const auto f = modring::factorize(W);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const auto& pp) { return pp.n == 1; });
}

}  // namespace

PropertyReport local_theorem_property_test(std::uint64_t W, int s, int trials, std::uint64_t seed) {
  if (s < 5) throw std::invalid_argument("local test: s must be at least 5");
  if (!square_free(W)) throw std::invalid_argument("local test: W must be square free");
  const std::uint64_t excluded = (s == 5) ? 210 : 30;
  if (modring::gcd_u64(W, excluded) != 1)
    throw std::invalid_argument("local test: W shares a factor with the excluded small primes");
  const auto points = modring::squares_mod(W, modring::SquareKind::Units).elements;
  const int K = static_cast<int>(points.size());
  const Rational d = threshold_d(s);
  const Rational sd = d * s;

  PropertyReport report;
  report.name = "local(W=" + std::to_string(W) + ",s=" + std::to_string(s) + ")";
  report.trials = trials;
  std::vector<std::vector<TrialFailure>> failures(trials);
  parallel_for(trials, [&](std::int64_t trial) {
    SplitMix64 g(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const Rational margin = rat_u64(1 + g.below(20), 1000);
    const auto f = sample_functions(s, K, d + margin, g);
    const auto reach = decomposition_dp(f.values, points, W);
    for (std::uint64_t y = 0; y < W; ++y)
      if (!reach[y] || *reach[y] <= sd)
        failures[trial].push_back({static_cast<int>(trial), y, "no qualifying decomposition"});
  });
  for (auto& fs : failures)
    report.failures.insert(report.failures.end(), fs.begin(), fs.end());
  return report;
}

PropertyReport theorem82_property_test(std::uint64_t W, int s, int trials, std::uint64_t seed) {
  if (s < 5) throw std::invalid_argument("theorem82 test: s must be at least 5");
  if (!square_free(W) || modring::gcd_u64(W, 24) != 1)
    throw std::invalid_argument("theorem82 test: W must be square free and coprime to 24");
  const std::uint64_t M = 24 * W;
  const auto points = modring::squares_mod(M, modring::SquareKind::Units).elements;
  const int K = static_cast<int>(points.size());
  const Rational d = threshold_d(s);
  const Rational D = threshold_D(s);
  const Rational sd = d * s;

  PropertyReport report;
  report.name = "thm82(W=" + std::to_string(W) + ",s=" + std::to_string(s) + ")";
  report.trials = trials;
  std::vector<std::vector<TrialFailure>> failures(trials);
  parallel_for(trials, [&](std::int64_t trial) {
    SplitMix64 g(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    Rational margin = rat_u64(1 + g.below(8), 1000);
    const Rational cap = (1 - D) / 2;
    if (margin > cap) margin = cap;
    const auto f = sample_functions(1, K, D + margin, g);
    const auto reach = decomposition_dp(std::vector<std::vector<Rational>>(s, f.values[0]),
                                        points, M);
    for (std::uint64_t y = static_cast<std::uint64_t>(s % 24); y < M; y += 24)
      if (!reach[y] || *reach[y] <= sd)
        failures[trial].push_back({static_cast<int>(trial), y, "no qualifying decomposition"});
  });
  for (auto& fs : failures)
    report.failures.insert(report.failures.end(), fs.begin(), fs.end());
  return report;
}

PropertyReport lemma71_property_test(int s, int n, int trials, std::uint64_t seed,
                                     bool adversarial) {
  if (!((s >= 6 && n >= 3) || (s == 5 && n >= 5)))
    throw std::invalid_argument("lemma71 test: needs s >= 6, n >= 3 or s = 5, n >= 5");
  PropertyReport report;
  report.name = "lemma71(s=" + std::to_string(s) + ",n=" + std::to_string(n) + ")";
  report.trials = trials;
  const Rational d = threshold_d(s);
  std::vector<char> failed(trials, 0);
  parallel_for(trials, [&](std::int64_t trial) {
    const DensityMatrix m =
        sample_density_matrix(s, n, d, derive_seed(seed, static_cast<std::uint64_t>(trial)),
                              adversarial);
    if (!lemma_conclusion_search(m, d)) failed[trial] = 1;
  });
  for (int trial = 0; trial < trials; ++trial)
    if (failed[trial]) report.failures.push_back({trial, 0, "no conclusion witness"});
  return report;
}

PropertyReport lemma72_property_test(int s, const Rational& D, int trials, std::uint64_t seed,
                                     bool adversarial) {
  if (s < 12) throw std::invalid_argument("lemma72 test: s must be at least 12");
  if (D < rat(1, 2)) throw std::invalid_argument("lemma72 test: D must be at least 1/2");
  PropertyReport report;
  report.name = "lemma72(s=" + std::to_string(s) + ")";
  report.trials = trials;
  std::vector<char> failed(trials, 0);
  parallel_for(trials, [&](std::int64_t trial) {
    const DensityMatrix m =
        sample_density_matrix(s, 3, D, derive_seed(seed, static_cast<std::uint64_t>(trial)),
                              adversarial);
    if (!lemma_conclusion_search(m, D)) failed[trial] = 1;
  });
  for (int trial = 0; trial < trials; ++trial)
    if (failed[trial]) report.failures.push_back({trial, 0, "no conclusion witness"});
  return report;
}

}  // namespace sqcert::comblemma
