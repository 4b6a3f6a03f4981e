#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqcert/rational.hpp"

namespace sqcert::exactlp {

struct Bound {
  std::optional<Rational> lo;
  std::optional<Rational> hi;  // nullopt = unbounded on that side
};

struct SparseRow {
  std::vector<std::int32_t> idx;  // ascending variable indices
  std::vector<Rational> val;
};

// Inequality-form problem: maximize objective . x subject to rows[i] . x <=
// rhs[i] and per-variable bounds.
struct LpProblem {
  std::int32_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<Bound> bounds;
  std::string label;

  void validate() const;  // throws std::invalid_argument on malformed data
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus status);

// Optimality certificate checkable by pure rational arithmetic: nonnegative
// row multipliers y and per-variable reduced costs d with d = c - A^T y and
//   value = y.b + sum_j (d_j > 0 ? d_j*hi_j : d_j*lo_j),
// which bounds every feasible point by weak duality.
struct LpCertificate {
  std::vector<std::pair<std::int64_t, Rational>> row_duals;  // sparse, ascending row index
  std::vector<Rational> reduced_costs;
  Rational value;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> primal;
  LpCertificate certificate;
  std::int64_t pivots = 0;
  std::size_t max_coeff_bits = 0;  // largest numerator/denominator seen on pivot rows
};

// Bounded-variable primal simplex, two phases, Bland's rule. Exact and
// deterministic: identical problems give identical solutions and certificates.
LpSolution simplex_solve(const LpProblem& problem);

// FNV-1a over the canonical serialization; report fingerprint, not crypto.
std::uint64_t certificate_digest(const LpCertificate& cert);

// nullopt when the certificate proves optimality of solution.primal; a short
// reason otherwise. Throws std::invalid_argument unless status == Optimal.
std::optional<std::string> certificate_flaw(const LpProblem& problem, const LpSolution& solution);
bool verify_certificate(const LpProblem& problem, const LpSolution& solution);

// Streaming variant for constraint families too large to keep in memory. The
// stream must invoke the visitor once per row in ascending index order.
using RowVisitor = std::function<void(std::int64_t, const SparseRow&, const Rational&)>;
using RowStream = std::function<void(const RowVisitor&)>;
std::optional<std::string> certificate_flaw_streamed(std::int32_t num_vars,
                                                     const std::vector<Rational>& objective,
                                                     const std::vector<Bound>& bounds,
                                                     std::int64_t num_rows, const RowStream& rows,
                                                     const LpSolution& solution);

struct VertexEnumResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> primal;
};

// Independent oracle: enumerate candidate vertices from every n-subset of
// {rows} u {finite bounds} in lexicographic order, plus an explicit recession
// check for unboundedness. Requires num_vars <= 6 and at least one finite
// bound per variable.
VertexEnumResult vertex_enumerate(const LpProblem& problem);

}  // namespace sqcert::exactlp
