#ifndef NSHARDY_LINEAR_PROGRAM_HPP
#define NSHARDY_LINEAR_PROGRAM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "nshardy/rational.hpp"

namespace nshardy {

using RationalVector = std::vector<Rational>;

struct LinearRow {
  RationalVector coeffs;
  Rational rhs;
};

/// maximize objective·x  subject to  eq rows (=), ineq rows (<=), x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  RationalVector objective;
  std::vector<LinearRow> eq_constraints;
  std::vector<LinearRow> ineq_constraints;
  bool nonneg = true;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n) {}

  void add_equality(RationalVector row, Rational rhs);
  void add_inequality(RationalVector row, Rational rhs);

  /// Throws ValidationError on any row/objective length mismatch.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;            // meaningful iff Optimal
  RationalVector solution;   // meaningful iff Optimal
  std::size_t pivots = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// Exact two-phase primal simplex with Bland's rule.
///
/// Phase one drives artificial variables (one per equality row and per
/// inequality row with negative right-hand side) to zero; redundant
/// equality rows are detected there and dropped. The returned solution is a
/// basic feasible solution of the original problem.
LpResult solve_max(const LinearProgram& lp);

/// Phase one only.
bool check_feasible(const LinearProgram& lp);

/// True iff `x` satisfies every constraint of `lp` exactly.
bool satisfies(const LinearProgram& lp, const RationalVector& x);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Rank of a dense rational matrix by exact Gaussian elimination.
std::size_t exact_rank(std::vector<RationalVector> rows);

/// Diagnostic dump: rationals as "num/den" strings.
nlohmann::json to_json(const LinearProgram& lp);

}  // namespace nshardy

#endif  // NSHARDY_LINEAR_PROGRAM_HPP
