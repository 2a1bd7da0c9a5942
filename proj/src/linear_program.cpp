#include "nshardy/linear_program.hpp"

#include <algorithm>
#include <optional>

#include "nshardy/error.hpp"

namespace nshardy {

void LinearProgram::add_equality(RationalVector row, Rational rhs) {
  eq_constraints.push_back({std::move(row), std::move(rhs)});
}

void LinearProgram::add_inequality(RationalVector row, Rational rhs) {
  ineq_constraints.push_back({std::move(row), std::move(rhs)});
}

void LinearProgram::validate() const {
  if (objective.size() != num_vars) {
    throw ValidationError("objective has " + std::to_string(objective.size()) +
                          " coefficients, expected " + std::to_string(num_vars));
  }
  auto check = [&](const std::vector<LinearRow>& rows, const char* what) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].coeffs.size() != num_vars) {
        throw ValidationError(std::string(what) + " row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].coeffs.size()) +
                              " coefficients, expected " + std::to_string(num_vars));
      }
    }
  };
  check(eq_constraints, "equality");
  check(ineq_constraints, "inequality");
  if (!nonneg) throw ValidationError("only nonnegative variables are supported");
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  mpq_class acc = 0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i].raw() * b[i].raw();
  }
  return Rational(acc);
}

bool satisfies(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != lp.num_vars) return false;
  if (lp.nonneg && std::any_of(x.begin(), x.end(), [](const Rational& v) { return v.sign() < 0; })) {
    return false;
  }
  for (const auto& row : lp.eq_constraints) {
    if (dot(row.coeffs, x) != row.rhs) return false;
  }
  for (const auto& row : lp.ineq_constraints) {
    if (dot(row.coeffs, x) > row.rhs) return false;
  }
  return true;
}

namespace {

// Dense simplex tableau. Column layout: structural variables, then one
// slack per inequality row, then artificials. The last column of every
// row holds the right-hand side.
class Tableau {
public:
  explicit Tableau(const LinearProgram& lp) : num_structural_(lp.num_vars) {
    const std::size_t n_ineq = lp.ineq_constraints.size();
    std::size_t n_art = lp.eq_constraints.size();
    for (const auto& r : lp.ineq_constraints) {
      if (r.rhs.sign() < 0) ++n_art;
    }
    first_artificial_ = num_structural_ + n_ineq;
    num_cols_ = first_artificial_ + n_art;

    std::size_t next_art = first_artificial_;
    auto new_row = [&](const LinearRow& src, bool negate) {
      std::vector<mpq_class> row(num_cols_ + 1);
      for (std::size_t j = 0; j < num_structural_; ++j) {
        row[j] = negate ? mpq_class(-src.coeffs[j].raw()) : src.coeffs[j].raw();
      }
      row[num_cols_] = negate ? mpq_class(-src.rhs.raw()) : src.rhs.raw();
      return row;
    };

    for (std::size_t i = 0; i < n_ineq; ++i) {
      const auto& src = lp.ineq_constraints[i];
      const bool negate = src.rhs.sign() < 0;
      auto row = new_row(src, negate);
      const std::size_t slack = num_structural_ + i;
      row[slack] = negate ? -1 : 1;
      if (negate) {
        row[next_art] = 1;
        basis_.push_back(next_art++);
      } else {
        basis_.push_back(slack);
      }
      rows_.push_back(std::move(row));
    }
    for (const auto& src : lp.eq_constraints) {
      auto row = new_row(src, src.rhs.sign() < 0);
      row[next_art] = 1;
      basis_.push_back(next_art++);
      rows_.push_back(std::move(row));
    }
    allowed_.assign(num_cols_, true);
  }

  // Phase one: maximize -sum(artificials). Returns true iff the optimum is 0.
  bool phase_one() {
    std::vector<mpq_class> cost(num_cols_);
    for (std::size_t j = first_artificial_; j < num_cols_; ++j) cost[j] = -1;
    load_objective(cost);
    run();  // bounded above by 0, never unbounded
    if (sgn(objective_[num_cols_]) != 0) return false;
    expel_artificials();
    for (std::size_t j = first_artificial_; j < num_cols_; ++j) allowed_[j] = false;
    return true;
  }

  // Phase two on the structural objective. Returns false iff unbounded.
  bool phase_two(const RationalVector& objective) {
    std::vector<mpq_class> cost(num_cols_);
    for (std::size_t j = 0; j < num_structural_; ++j) cost[j] = objective[j].raw();
    load_objective(cost);
    return run();
  }

  Rational value() const { return Rational(objective_[num_cols_]); }

  RationalVector solution() const {
    RationalVector x(num_structural_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < num_structural_) x[basis_[i]] = Rational(rows_[i][num_cols_]);
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

private:
  // Reduced-cost row r_j = c_j - c_B^T B^{-1} A_j; the rhs slot stores the
  // current objective value c_B^T x_B.
  void load_objective(const std::vector<mpq_class>& cost) {
    objective_.assign(num_cols_ + 1, mpq_class(0));
    for (std::size_t j = 0; j < num_cols_; ++j) objective_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const mpq_class& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) {
        if (sgn(rows_[i][j]) == 0) continue;
        if (j == num_cols_) {
          objective_[j] += cb * rows_[i][j];
        } else {
          objective_[j] -= cb * rows_[i][j];
        }
      }
    }
  }

  // Bland's rule: lowest-index improving column enters, ratio ties broken
  // by lowest basic variable index.
  bool run() {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (allowed_[j] && sgn(objective_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;

      std::optional<std::size_t> leave;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const mpq_class& a = rows_[i][*enter];
        if (sgn(a) <= 0) continue;
        mpq_class ratio = rows_[i][num_cols_] / a;
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& prow = rows_[r];
    const mpq_class inv = 1 / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= num_cols_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<mpq_class>& row, bool is_objective) {
      if (sgn(row[c]) == 0) return;
      const mpq_class f = row[c];
      for (std::size_t j : nz) {
        if (is_objective && j == num_cols_) {
          row[j] += f * prow[j];
        } else {
          row[j] -= f * prow[j];
        }
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i], false);
    }
    eliminate(objective_, true);
    basis_[r] = c;
  }

  // After a zero-valued phase one, pivot artificials out of the basis. A row
  // whose artificial cannot leave is a linear combination of the others and
  // is removed.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t num_structural_;
  std::size_t first_artificial_ = 0;
  std::size_t num_cols_ = 0;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<mpq_class> objective_;
  std::vector<bool> allowed_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_max(const LinearProgram& lp) {
  lp.validate();
  Tableau t(lp);
  LpResult result;
  if (!t.phase_one()) {
    result.status = LpStatus::Infeasible;
    result.pivots = t.pivots();
    return result;
  }
  if (!t.phase_two(lp.objective)) {
    result.status = LpStatus::Unbounded;
    result.pivots = t.pivots();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.solution = t.solution();
  result.value = dot(lp.objective, result.solution);
  result.pivots = t.pivots();
  if (result.value != t.value()) {
    throw InternalError("simplex objective row disagrees with recomputed value");
  }
  return result;
}

bool check_feasible(const LinearProgram& lp) {
  lp.validate();
  Tableau t(lp);
  return t.phase_one();
}

std::size_t exact_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational inv = Rational(1) / rows[rank][c];
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) {
        if (!rows[rank][j].is_zero()) rows[i][j] -= f * rows[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

nlohmann::json to_json(const LinearProgram& lp) {
  auto vec = [](const RationalVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
  };
  auto rows = [&](const std::vector<LinearRow>& rs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rs) out.push_back({{"row", vec(r.coeffs)}, {"rhs", r.rhs.to_string()}});
    return out;
  };
  return {{"num_vars", lp.num_vars},
          {"objective", vec(lp.objective)},
          {"eq_constraints", rows(lp.eq_constraints)},
          {"ineq_constraints", rows(lp.ineq_constraints)},
          {"nonneg", lp.nonneg}};
}

}  // namespace nshardy
