#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stratpoint/linalg.hpp"
#include "stratpoint/rational.hpp"

namespace stratpoint {

/// maximize objective·v  s.t.  eq_rows·v = eq_rhs,  ineq_rows·v <= ineq_rhs.
/// Variables are free; sign constraints are ordinary inequality rows.
struct LpProblem {
  std::size_t var_count = 0;
  Vector objective;
  Matrix eq_rows;
  Vector eq_rhs;
  Matrix ineq_rows;
  Vector ineq_rhs;

  explicit LpProblem(std::size_t vars = 0)
      : var_count(vars), objective(vars, Rational(0)) {}

  void add_eq(Vector row, Rational rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }
  void add_le(Vector row, Rational rhs) {
    ineq_rows.push_back(std::move(row));
    ineq_rhs.push_back(std::move(rhs));
  }
  /// row·v >= rhs
  void add_ge(Vector row, Rational rhs) {
    for (auto& e : row) e = -e;
    add_le(std::move(row), -rhs);
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<Vector> solution;
  std::optional<Rational> value;
};

namespace detail {

// Dense simplex tableau over z >= 0: rows[i]·z = rhs[i], basis[i] basic in row i.
struct Tableau {
  Matrix rows;
  Vector rhs;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows[r][c];
    for (auto& e : rows[r]) e *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[r][k];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }
};

enum class PhaseResult { optimal, unbounded };

// Minimizes cost·z with Bland's rule: lowest-index entering column with a
// negative reduced cost, lowest-index leaving variable among ratio ties.
inline PhaseResult minimize(Tableau& tb, const Vector& cost,
                            const std::vector<bool>& allowed) {
  const std::size_t m = tb.rows.size();
  for (;;) {
    std::optional<std::size_t> enter;
    std::vector<bool> is_basic(tb.cols, false);
    for (auto b : tb.basis) is_basic[b] = true;
    for (std::size_t j = 0; j < tb.cols && !enter; ++j) {
      if (!allowed[j] || is_basic[j]) continue;
      Rational reduced = cost[j];
      for (std::size_t i = 0; i < m; ++i)
        if (tb.rows[i][j] != 0) reduced -= cost[tb.basis[i]] * tb.rows[i][j];
      if (reduced < 0) enter = j;
    }
    if (!enter) return PhaseResult::optimal;
    const std::size_t c = *enter;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tb.rows[i][c] <= 0) continue;
      Rational ratio = tb.rhs[i] / tb.rows[i][c];
      if (!leave || ratio < best ||
          (ratio == best && tb.basis[i] < tb.basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) return PhaseResult::unbounded;
    tb.pivot(*leave, c);
  }
}

}  // namespace detail

/// Two-phase exact simplex with Bland's anti-cycling rule. The returned
/// solution is a basic feasible solution of the standard-form reformulation
/// (free variables split, slacks on inequality rows).
inline LpResult lp_solve(const LpProblem& lp) {
  const std::size_t nv = lp.var_count;
  if (lp.objective.size() != nv)
    throw DimensionError("lp: objective length != var_count");
  if (lp.eq_rows.size() != lp.eq_rhs.size() ||
      lp.ineq_rows.size() != lp.ineq_rhs.size())
    throw DimensionError("lp: rhs length mismatch");
  for (const auto& r : lp.eq_rows)
    if (r.size() != nv) throw DimensionError("lp: equality row width");
  for (const auto& r : lp.ineq_rows)
    if (r.size() != nv) throw DimensionError("lp: inequality row width");

  // Columns: v+ (nv), v- (nv), slacks (ineq), artificials (all rows).
  const std::size_t n_eq = lp.eq_rows.size();
  const std::size_t n_le = lp.ineq_rows.size();
  const std::size_t m = n_eq + n_le;
  const std::size_t slack0 = 2 * nv;
  const std::size_t art0 = slack0 + n_le;
  const std::size_t cols = art0 + m;

  detail::Tableau tb;
  tb.cols = cols;
  tb.rows = linalg::zeros(m, cols);
  tb.rhs.assign(m, Rational(0));
  tb.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i < n_eq;
    const Vector& row = is_eq ? lp.eq_rows[i] : lp.ineq_rows[i - n_eq];
    Rational rhs = is_eq ? lp.eq_rhs[i] : lp.ineq_rhs[i - n_eq];
    const Rational flip = rhs < 0 ? Rational(-1) : Rational(1);
    for (std::size_t k = 0; k < nv; ++k) {
      tb.rows[i][k] = flip * row[k];
      tb.rows[i][nv + k] = -flip * row[k];
    }
    if (!is_eq) tb.rows[i][slack0 + (i - n_eq)] = flip;
    tb.rows[i][art0 + i] = 1;
    tb.rhs[i] = flip * rhs;
    tb.basis[i] = art0 + i;
  }

  // Phase 1: minimize the sum of artificials.
  Vector phase1_cost(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1_cost[art0 + i] = 1;
  std::vector<bool> allowed(cols, true);
  detail::minimize(tb, phase1_cost, allowed);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] >= art0) infeas += tb.rhs[i];
  if (infeas > 0) return {LpStatus::infeasible, std::nullopt, std::nullopt};

  // Drive remaining (zero-level) artificials out; drop redundant rows.
  for (std::size_t i = 0; i < tb.rows.size();) {
    if (tb.basis[i] < art0) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < art0 && !col; ++j)
      if (tb.rows[i][j] != 0) col = j;
    if (col) {
      tb.pivot(i, *col);
      ++i;
    } else {
      tb.rows.erase(tb.rows.begin() + static_cast<std::ptrdiff_t>(i));
      tb.rhs.erase(tb.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase 2 over the original columns.
  Vector cost(cols, Rational(0));
  for (std::size_t k = 0; k < nv; ++k) {
    cost[k] = -lp.objective[k];
    cost[nv + k] = lp.objective[k];
  }
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  if (detail::minimize(tb, cost, allowed) == detail::PhaseResult::unbounded)
    return {LpStatus::unbounded, std::nullopt, std::nullopt};

  Vector z(cols, Rational(0));
  for (std::size_t i = 0; i < tb.rows.size(); ++i) z[tb.basis[i]] = tb.rhs[i];
  Vector v(nv);
  for (std::size_t k = 0; k < nv; ++k) v[k] = z[k] - z[nv + k];
  Rational value = linalg::dot(lp.objective, v);
  return {LpStatus::optimal, std::move(v), std::move(value)};
}

/// Phase-1 feasibility: optimal status carries a feasible point.
inline LpResult lp_feasible(const Matrix& eq_rows, const Vector& eq_rhs,
                            const Matrix& ineq_rows, const Vector& ineq_rhs,
                            std::size_t var_count) {
  LpProblem lp(var_count);
  lp.eq_rows = eq_rows;
  lp.eq_rhs = eq_rhs;
  lp.ineq_rows = ineq_rows;
  lp.ineq_rhs = ineq_rhs;
  return lp_solve(lp);
}

/// Exact check of every row of `lp` at `v`.
inline bool lp_satisfies(const LpProblem& lp, const Vector& v) {
  for (std::size_t i = 0; i < lp.eq_rows.size(); ++i)
    if (linalg::dot(lp.eq_rows[i], v) != lp.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < lp.ineq_rows.size(); ++i)
    if (linalg::dot(lp.ineq_rows[i], v) > lp.ineq_rhs[i]) return false;
  return true;
}

}  // namespace stratpoint
