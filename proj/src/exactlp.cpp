#include "sqcert/exactlp.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqcert::exactlp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

void LpProblem::validate() const {
  if (num_vars < 0) throw std::invalid_argument("lp: negative variable count");
  if (objective.size() != static_cast<std::size_t>(num_vars))
    throw std::invalid_argument("lp: objective length mismatch");
  if (bounds.size() != static_cast<std::size_t>(num_vars))
    throw std::invalid_argument("lp: bounds length mismatch");
  if (rows.size() != rhs.size()) throw std::invalid_argument("lp: rows/rhs length mismatch");
  for (const auto& row : rows) {
    if (row.idx.size() != row.val.size()) throw std::invalid_argument("lp: row idx/val length mismatch");
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      if (row.idx[k] < 0 || row.idx[k] >= num_vars) throw std::invalid_argument("lp: row index out of range");
      if (k > 0 && row.idx[k - 1] >= row.idx[k])
        throw std::invalid_argument("lp: row indices must be strictly ascending");
    }
  }
  for (const auto& b : bounds)
    if (b.lo && b.hi && *b.lo > *b.hi) throw std::invalid_argument("lp: empty bound interval");
}

namespace {

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Dense-tableau bounded-variable simplex. Columns: structural variables,
// then one slack per row, then phase-1 artificials.
class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : p_(p) {
    p.validate();
    n_ = p.num_vars;
    m_ = static_cast<std::int32_t>(p.rows.size());
    ncols_ = n_ + m_;
    tab_.assign(m_, std::vector<Rational>(ncols_));
    rhs_ = p.rhs;
    for (std::int32_t i = 0; i < m_; ++i) {
      const auto& row = p.rows[i];
      for (std::size_t k = 0; k < row.idx.size(); ++k) tab_[i][row.idx[k]] = row.val[k];
      tab_[i][n_ + i] = 1;
    }
    lo_.resize(ncols_);
    hi_.resize(ncols_);
    state_.assign(ncols_, VarState::AtLower);
    xval_.assign(ncols_, Rational(0));
    for (std::int32_t j = 0; j < n_; ++j) {
      lo_[j] = p.bounds[j].lo;
      hi_[j] = p.bounds[j].hi;
      if (lo_[j]) {
        state_[j] = VarState::AtLower;
        xval_[j] = *lo_[j];
      } else if (hi_[j]) {
        state_[j] = VarState::AtUpper;
        xval_[j] = *hi_[j];
      } else {
        state_[j] = VarState::FreeZero;
      }
    }
    basis_.resize(m_);
    for (std::int32_t i = 0; i < m_; ++i) {
      const std::int32_t s = n_ + i;
      lo_[s] = Rational(0);
      hi_[s].reset();
      state_[s] = VarState::Basic;
      basis_[i] = s;
    }
    recompute_basics();
  }

  LpSolution run() {
    LpSolution sol;
    if (!phase_one()) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = pivots_;
      sol.max_coeff_bits = max_bits_;
      return sol;
    }
    cost_.assign(ncols_, Rational(0));
    for (std::int32_t j = 0; j < n_; ++j) cost_[j] = p_.objective[j];
    if (!iterate_to_optimum()) {
      sol.status = LpStatus::Unbounded;
      sol.pivots = pivots_;
      sol.max_coeff_bits = max_bits_;
      return sol;
    }
    recompute_basics();
    sol.status = LpStatus::Optimal;
    sol.primal.assign(xval_.begin(), xval_.begin() + n_);
    Rational value(0);
    for (std::int32_t j = 0; j < n_; ++j) value += p_.objective[j] * sol.primal[j];
    sol.value = value;
    sol.certificate = extract_certificate(value);
    sol.pivots = pivots_;
    for (const auto& x : sol.primal) max_bits_ = std::max(max_bits_, max_bit_length(x));
    sol.max_coeff_bits = max_bits_;
    return sol;
  }

 private:
  bool column_fixed(std::int32_t j) const { return lo_[j] && hi_[j] && *lo_[j] == *hi_[j]; }

  void recompute_basics() {
    std::vector<Rational> vals = rhs_;
    for (std::int32_t j = 0; j < ncols_; ++j) {
      if (state_[j] == VarState::Basic || xval_[j] == 0) continue;
      for (std::int32_t i = 0; i < m_; ++i)
        if (tab_[i][j] != 0) vals[i] -= tab_[i][j] * xval_[j];
    }
    for (std::int32_t i = 0; i < m_; ++i) xval_[basis_[i]] = vals[i];
  }

  std::vector<Rational> reduced_costs() const {
    std::vector<Rational> d = cost_;
    for (std::int32_t i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (std::int32_t j = 0; j < ncols_; ++j)
        if (tab_[i][j] != 0) d[j] -= cb * tab_[i][j];
    }
    return d;
  }

  void pivot(std::int32_t row, std::int32_t col) {
    const Rational piv = tab_[row][col];
    if (piv == 0) throw std::logic_error("simplex: zero pivot");
    const Rational inv = 1 / piv;
    for (std::int32_t j = 0; j < ncols_; ++j) {
      if (tab_[row][j] == 0) continue;
      tab_[row][j] *= inv;
      max_bits_ = std::max(max_bits_, max_bit_length(tab_[row][j]));
    }
    rhs_[row] *= inv;
    for (std::int32_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const Rational w = tab_[i][col];
      if (w == 0) continue;
      for (std::int32_t j = 0; j < ncols_; ++j)
        if (tab_[row][j] != 0) tab_[i][j] -= w * tab_[row][j];
      rhs_[i] -= w * rhs_[row];
    }
    basis_[row] = col;
    state_[col] = VarState::Basic;
    ++pivots_;
  }

  // One Bland step. Returns false at phase optimality; throws on unbounded
  // when allow_unbounded is false.
  enum class StepResult { Optimal, Moved, Unbounded };

  StepResult step() {
    const auto d = reduced_costs();
    std::int32_t enter = -1;
    int dir = 0;
    for (std::int32_t j = 0; j < ncols_; ++j) {
      if (state_[j] == VarState::Basic || column_fixed(j)) continue;
      if ((state_[j] == VarState::AtLower || state_[j] == VarState::FreeZero) && d[j] > 0) {
        enter = j;
        dir = 1;
        break;
      }
      if ((state_[j] == VarState::AtUpper || state_[j] == VarState::FreeZero) && d[j] < 0) {
        enter = j;
        dir = -1;
        break;
      }
    }
    if (enter < 0) return StepResult::Optimal;

    // ratio test; tie-break on smallest leaving variable index (Bland)
    bool have_limit = false;
    Rational best_t;
    std::int32_t leave_row = -1;          // -1 = bound flip of the entering column
    std::int32_t leave_var = -1;
    if (dir > 0 && hi_[enter]) {
      best_t = *hi_[enter] - xval_[enter];
      have_limit = true;
      leave_var = enter;
    } else if (dir < 0 && lo_[enter]) {
      best_t = xval_[enter] - *lo_[enter];
      have_limit = true;
      leave_var = enter;
    }
    for (std::int32_t i = 0; i < m_; ++i) {
      const Rational& w = tab_[i][enter];
      if (w == 0) continue;
      const Rational delta = (dir > 0) ? Rational(-w) : w;  // change of basic i per unit step
      const std::int32_t b = basis_[i];
      Rational t;
      if (delta > 0) {
        if (!hi_[b]) continue;
        t = (*hi_[b] - xval_[b]) / delta;
      } else {
        if (!lo_[b]) continue;
        t = (xval_[b] - *lo_[b]) / (-delta);
      }
      if (t < 0) throw std::logic_error("simplex: negative ratio from infeasible basic");
      if (!have_limit || t < best_t || (t == best_t && b < leave_var)) {
        best_t = t;
        leave_row = i;
        leave_var = b;
        have_limit = true;
      }
    }
    if (!have_limit) return StepResult::Unbounded;

    if (leave_row < 0) {
      // bound flip
      xval_[enter] = (dir > 0) ? *hi_[enter] : *lo_[enter];
      state_[enter] = (dir > 0) ? VarState::AtUpper : VarState::AtLower;
      recompute_basics();
      return StepResult::Moved;
    }
    const std::int32_t leaving = basis_[leave_row];
    const Rational delta = (dir > 0) ? Rational(-tab_[leave_row][enter]) : tab_[leave_row][enter];
    if (delta > 0) {
      state_[leaving] = VarState::AtUpper;
      xval_[leaving] = *hi_[leaving];
    } else {
      state_[leaving] = VarState::AtLower;
      xval_[leaving] = *lo_[leaving];
    }
    xval_[enter] += (dir > 0) ? best_t : Rational(-best_t);
    pivot(leave_row, enter);
    recompute_basics();
    return StepResult::Moved;
  }

  bool iterate_to_optimum() {  // false = unbounded
    for (;;) {
      switch (step()) {
        case StepResult::Optimal: return true;
        case StepResult::Unbounded: return false;
        case StepResult::Moved: break;
      }
    }
  }

  // Returns false when the problem is infeasible.
  bool phase_one() {
    recompute_basics();
    std::vector<std::int32_t> infeasible_rows;
    for (std::int32_t i = 0; i < m_; ++i)
      if (xval_[basis_[i]] < 0) infeasible_rows.push_back(i);
    if (infeasible_rows.empty()) return true;

    for (std::int32_t r : infeasible_rows) {
      const std::int32_t a = ncols_;
      for (std::int32_t i = 0; i < m_; ++i) tab_[i].push_back(Rational(0));
      tab_[r][a] = -1;
      lo_.push_back(Rational(0));
      hi_.push_back(std::nullopt);
      state_.push_back(VarState::Basic);
      xval_.push_back(Rational(0));
      artificials_.push_back(a);
      ++ncols_;
      // swap the artificial into the basis: the old basis matrix is the
      // identity, so replacing e_r by -e_r just negates row r
      const std::int32_t old_basic = basis_[r];
      state_[old_basic] = VarState::AtLower;
      xval_[old_basic] = *lo_[old_basic];
      for (std::int32_t j = 0; j < ncols_; ++j)
        if (tab_[r][j] != 0) tab_[r][j] = -tab_[r][j];
      rhs_[r] = -rhs_[r];
      basis_[r] = a;
    }
    recompute_basics();
    for (std::int32_t i = 0; i < m_; ++i)
      if (xval_[basis_[i]] < 0) throw std::logic_error("simplex: phase-1 start infeasible");

    cost_.assign(ncols_, Rational(0));
    for (std::int32_t a : artificials_) cost_[a] = -1;
    if (!iterate_to_optimum()) throw std::logic_error("simplex: phase 1 unbounded");
    recompute_basics();
    Rational infeasibility(0);
    for (std::int32_t a : artificials_) infeasibility += xval_[a];
    if (infeasibility > 0) return false;

    // freeze artificials at zero; drive basic ones out where possible
    for (std::int32_t a : artificials_) {
      lo_[a] = Rational(0);
      hi_[a] = Rational(0);
    }
    for (std::int32_t a : artificials_) {
      if (state_[a] != VarState::Basic) continue;
      std::int32_t row = -1;
      for (std::int32_t i = 0; i < m_; ++i)
        if (basis_[i] == a) row = i;
      std::int32_t target = -1;
      for (std::int32_t j = 0; j < n_ + m_; ++j) {
        if (state_[j] == VarState::Basic || column_fixed(j)) continue;
        if (tab_[row][j] != 0) {
          target = j;
          break;
        }
      }
      if (target < 0) continue;  // redundant row; artificial stays basic at 0
      state_[a] = VarState::AtLower;
      xval_[a] = 0;
      pivot(row, target);
      recompute_basics();
    }
    return true;
  }

  LpCertificate extract_certificate(const Rational& value) {
    LpCertificate cert;
    cert.value = value;
    const auto d = reduced_costs();
    cert.reduced_costs.assign(d.begin(), d.begin() + n_);
    Rational dual_obj(0);
    for (std::int32_t i = 0; i < m_; ++i) {
      // y_i = c_B B^{-1} e_i through the slack column
      Rational y(0);
      for (std::int32_t r = 0; r < m_; ++r) {
        const Rational& cb = cost_[basis_[r]];
        if (cb != 0 && tab_[r][n_ + i] != 0) y += cb * tab_[r][n_ + i];
      }
      if (y < 0) throw std::logic_error("simplex: negative row dual at optimum");
      if (y != 0) {
        cert.row_duals.emplace_back(i, y);
        dual_obj += y * p_.rhs[i];
      }
    }
    for (std::int32_t j = 0; j < n_; ++j) {
      if (d[j] > 0) {
        if (!hi_[j]) throw std::logic_error("simplex: positive reduced cost without upper bound");
        dual_obj += d[j] * *hi_[j];
      } else if (d[j] < 0) {
        if (!lo_[j]) throw std::logic_error("simplex: negative reduced cost without lower bound");
        dual_obj += d[j] * *lo_[j];
      }
    }
    if (dual_obj != value) throw std::logic_error("simplex: strong duality identity failed");
    return cert;
  }

  const LpProblem& p_;
  std::int32_t n_ = 0, m_ = 0, ncols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<std::optional<Rational>> lo_, hi_;
  std::vector<VarState> state_;
  std::vector<Rational> xval_;
  std::vector<std::int32_t> basis_;
  std::vector<Rational> cost_;
  std::vector<std::int32_t> artificials_;
  std::int64_t pivots_ = 0;
  std::size_t max_bits_ = 0;
};

}  // namespace

LpSolution simplex_solve(const LpProblem& problem) { return Simplex(problem).run(); }

std::uint64_t certificate_digest(const LpCertificate& cert) {
  std::string bytes = rational_to_string(cert.value);
  for (const auto& [row, y] : cert.row_duals)
    bytes += "|" + std::to_string(row) + ":" + rational_to_string(y);
  bytes += "#";
  for (const auto& d : cert.reduced_costs) bytes += rational_to_string(d) + ";";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<std::string> certificate_flaw_streamed(std::int32_t num_vars,
                                                     const std::vector<Rational>& objective,
                                                     const std::vector<Bound>& bounds,
                                                     std::int64_t num_rows, const RowStream& rows,
                                                     const LpSolution& solution) {
  if (solution.status != LpStatus::Optimal)
    throw std::invalid_argument("certificate check requires an optimal solution");
  const auto& x = solution.primal;
  const auto& cert = solution.certificate;
  if (x.size() != static_cast<std::size_t>(num_vars)) return "primal length mismatch";
  if (cert.reduced_costs.size() != static_cast<std::size_t>(num_vars))
    return "reduced-cost length mismatch";
  if (cert.value != solution.value) return "certificate value differs from solution value";
  for (std::int32_t j = 0; j < num_vars; ++j) {
    if (bounds[j].lo && x[j] < *bounds[j].lo) return "primal violates a lower bound";
    if (bounds[j].hi && x[j] > *bounds[j].hi) return "primal violates an upper bound";
  }
  Rational obj(0);
  for (std::int32_t j = 0; j < num_vars; ++j) obj += objective[j] * x[j];
  if (obj != solution.value) return "objective value mismatch";

  const auto& duals = cert.row_duals;
  for (std::size_t k = 0; k < duals.size(); ++k) {
    if (duals[k].first < 0 || duals[k].first >= num_rows) return "dual row index out of range";
    if (k > 0 && duals[k - 1].first >= duals[k].first) return "dual rows not ascending";
    if (duals[k].second < 0) return "negative row dual";
  }

  Rational dual_obj(0);
  std::vector<Rational> aty(num_vars, Rational(0));
  std::size_t k = 0;
  std::optional<std::string> flaw;
  rows([&](std::int64_t i, const SparseRow& row, const Rational& rhs) {
    if (flaw) return;
    Rational ax(0);
    for (std::size_t e = 0; e < row.idx.size(); ++e) {
      if (row.idx[e] < 0 || row.idx[e] >= num_vars) {
        flaw = "row index out of range";
        return;
      }
      ax += row.val[e] * x[row.idx[e]];
    }
    if (ax > rhs) {
      flaw = "primal violates row " + std::to_string(i);
      return;
    }
    if (k < duals.size() && duals[k].first == i) {
      const Rational& y = duals[k].second;
      dual_obj += y * rhs;
      for (std::size_t e = 0; e < row.idx.size(); ++e) aty[row.idx[e]] += y * row.val[e];
      ++k;
    }
  });
  if (flaw) return flaw;
  if (k != duals.size()) return "dual multiplier on a row the stream never produced";

  for (std::int32_t j = 0; j < num_vars; ++j) {
    if (cert.reduced_costs[j] != objective[j] - aty[j]) return "reduced-cost identity fails";
    const Rational& d = cert.reduced_costs[j];
    if (d > 0) {
      if (!bounds[j].hi) return "positive reduced cost on a variable without upper bound";
      dual_obj += d * *bounds[j].hi;
    } else if (d < 0) {
      if (!bounds[j].lo) return "negative reduced cost on a variable without lower bound";
      dual_obj += d * *bounds[j].lo;
    }
  }
  if (dual_obj != solution.value) return "duality gap: dual objective differs from claimed value";
  return std::nullopt;
}

std::optional<std::string> certificate_flaw(const LpProblem& problem, const LpSolution& solution) {
  problem.validate();
  const RowStream stream = [&problem](const RowVisitor& visit) {
    for (std::size_t i = 0; i < problem.rows.size(); ++i)
      visit(static_cast<std::int64_t>(i), problem.rows[i], problem.rhs[i]);
  };
  return certificate_flaw_streamed(problem.num_vars, problem.objective, problem.bounds,
                                   static_cast<std::int64_t>(problem.rows.size()), stream, solution);
}

bool verify_certificate(const LpProblem& problem, const LpSolution& solution) {
  return !certificate_flaw(problem, solution).has_value();
}

namespace {

// Exact Gaussian elimination; returns false when the system is singular.
bool solve_square_system(std::vector<std::vector<Rational>> M, std::vector<Rational> q,
                         std::vector<Rational>& out) {
  const std::size_t n = q.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(M[piv], M[col]);
    std::swap(q[piv], q[col]);
    const Rational inv = 1 / M[col][col];
    for (std::size_t j = col; j < n; ++j) M[col][j] *= inv;
    q[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      const Rational w = M[i][col];
      for (std::size_t j = col; j < n; ++j) M[i][j] -= w * M[col][j];
      q[i] -= w * q[col];
    }
  }
  out = std::move(q);
  return true;
}

struct Plane {
  std::vector<Rational> a;
  Rational b;
};

bool point_feasible(const LpProblem& p, const std::vector<Rational>& x) {
  for (std::int32_t j = 0; j < p.num_vars; ++j) {
    if (p.bounds[j].lo && x[j] < *p.bounds[j].lo) return false;
    if (p.bounds[j].hi && x[j] > *p.bounds[j].hi) return false;
  }
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    Rational ax(0);
    for (std::size_t e = 0; e < p.rows[i].idx.size(); ++e)
      ax += p.rows[i].val[e] * x[p.rows[i].idx[e]];
    if (ax > p.rhs[i]) return false;
  }
  return true;
}

}  // namespace

VertexEnumResult vertex_enumerate(const LpProblem& problem) {
  problem.validate();
  const std::int32_t n = problem.num_vars;
  if (n > 6) throw std::invalid_argument("vertex_enumerate: more than 6 variables");
  bool any_infinite = false;
  for (const auto& b : problem.bounds) {
    if (!b.lo && !b.hi)
      throw std::invalid_argument("vertex_enumerate: every variable needs a finite bound");
    if (!b.lo || !b.hi) any_infinite = true;
  }

  std::vector<Plane> planes;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    Plane pl;
    pl.a.assign(n, Rational(0));
    for (std::size_t e = 0; e < problem.rows[i].idx.size(); ++e)
      pl.a[problem.rows[i].idx[e]] = problem.rows[i].val[e];
    pl.b = problem.rhs[i];
    planes.push_back(std::move(pl));
  }
  for (std::int32_t j = 0; j < n; ++j) {
    if (!problem.bounds[j].lo) continue;
    Plane pl;
    pl.a.assign(n, Rational(0));
    pl.a[j] = 1;
    pl.b = *problem.bounds[j].lo;
    planes.push_back(std::move(pl));
  }
  for (std::int32_t j = 0; j < n; ++j) {
    if (!problem.bounds[j].hi) continue;
    Plane pl;
    pl.a.assign(n, Rational(0));
    pl.a[j] = 1;
    pl.b = *problem.bounds[j].hi;
    planes.push_back(std::move(pl));
  }

  VertexEnumResult result;
  const std::size_t H = planes.size();
  if (H >= static_cast<std::size_t>(n) && n > 0) {
    std::vector<std::size_t> comb(n);
    for (std::int32_t j = 0; j < n; ++j) comb[j] = j;
    bool done = false;
    bool have_best = false;
    while (!done) {
      std::vector<std::vector<Rational>> M(n);
      std::vector<Rational> q(n);
      for (std::int32_t r = 0; r < n; ++r) {
        M[r] = planes[comb[r]].a;
        q[r] = planes[comb[r]].b;
      }
      std::vector<Rational> x;
      if (solve_square_system(std::move(M), std::move(q), x) && point_feasible(problem, x)) {
        Rational value(0);
        for (std::int32_t j = 0; j < n; ++j) value += problem.objective[j] * x[j];
        if (!have_best || value > result.value) {
          result.value = value;
          result.primal = x;
          have_best = true;
        }
      }
      // next combination in lexicographic order
      std::int32_t pos = n - 1;
      while (pos >= 0 && comb[pos] == H - static_cast<std::size_t>(n - pos)) --pos;
      if (pos < 0) {
        done = true;
      } else {
        ++comb[pos];
        for (std::int32_t r = pos + 1; r < n; ++r) comb[r] = comb[r - 1] + 1;
      }
    }
    if (have_best) result.status = LpStatus::Optimal;
  }
  if (n == 0) {
    result.status = LpStatus::Optimal;
    result.value = 0;
    return result;
  }

  if (result.status == LpStatus::Optimal && any_infinite) {
    // recession check: maximize c.d over {A d <= 0} with the direction box
    LpProblem cone;
    cone.num_vars = n;
    cone.objective = problem.objective;
    cone.rows = problem.rows;
    cone.rhs.assign(problem.rows.size(), Rational(0));
    cone.bounds.resize(n);
    for (std::int32_t j = 0; j < n; ++j) {
      const bool lo_fin = problem.bounds[j].lo.has_value();
      const bool hi_fin = problem.bounds[j].hi.has_value();
      if (lo_fin && hi_fin) {
        cone.bounds[j] = {Rational(0), Rational(0)};
      } else if (lo_fin) {
        cone.bounds[j] = {Rational(0), Rational(1)};
      } else {
        cone.bounds[j] = {Rational(-1), Rational(0)};
      }
    }
    const VertexEnumResult ray = vertex_enumerate(cone);
    if (ray.status == LpStatus::Optimal && ray.value > 0) {
      result.status = LpStatus::Unbounded;
      result.primal.clear();
      result.value = 0;
    }
  }
  return result;
}

}  // namespace sqcert::exactlp
