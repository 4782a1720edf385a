#pragma once

// Independent reference implementations used to cross-check the solvers.
// They trade speed for structural simplicity: no simplex, no active-set
// bookkeeping, only subset enumeration and dense exact elimination.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stratpoint/linalg.hpp"
#include "stratpoint/qp_solver.hpp"

namespace stratpoint {

/// Minimizer of |x - c|^2 over the polyhedron by enumerating every subset S
/// of inequalities whose rows, together with a basis of the equality rows,
/// are independent. For each S the equality-constrained projection is solved
/// directly; the unique minimizer is the first candidate that is feasible
/// with nonnegative multipliers (a KKT point supported on independent rows
/// always exists for affine constraints).
inline QpSolution brute_force_qp(const Vector& c, const QpConstraints& con) {
  const std::size_t n = c.size();
  const std::size_t m_le = con.a.size(), m_eq = con.b.size();
  if (m_le > 16) throw std::invalid_argument("brute_force_qp: too many inequalities");
  const auto eq_rows = linalg::independent_rows(con.b, n);

  auto feasible = [&](const Vector& x) {
    for (std::size_t i = 0; i < m_le; ++i)
      if (linalg::dot(con.a[i], x) + con.alpha[i] > 0) return false;
    for (std::size_t j = 0; j < m_eq; ++j)
      if (linalg::dot(con.b[j], x) + con.beta[j] != 0) return false;
    return true;
  };

  for (std::size_t mask = 0; mask < (std::size_t{1} << m_le); ++mask) {
    Matrix rows;
    Vector rhs;
    std::vector<std::size_t> ineq;
    for (auto j : eq_rows) {
      rows.push_back(con.b[j]);
      rhs.push_back(-con.beta[j]);
    }
    for (std::size_t i = 0; i < m_le; ++i)
      if (mask >> i & 1) {
        rows.push_back(con.a[i]);
        rhs.push_back(-con.alpha[i]);
        ineq.push_back(i);
      }
    if (linalg::rank(rows) != rows.size()) continue;
    const std::size_t r = rows.size();
    // z = c - R^T nu with R z = rhs: (R R^T) nu = R c - rhs.
    Vector x = c, nu;
    if (r > 0) {
      Matrix gram = linalg::zeros(r, r);
      Vector g(r);
      for (std::size_t u = 0; u < r; ++u) {
        for (std::size_t v = 0; v < r; ++v) gram[u][v] = linalg::dot(rows[u], rows[v]);
        g[u] = linalg::dot(rows[u], c) - rhs[u];
      }
      nu = linalg::solve(gram, g, r)->solution;
      for (std::size_t u = 0; u < r; ++u)
        for (std::size_t k = 0; k < n; ++k) x[k] -= rows[u][k] * nu[u];
    }
    if (!feasible(x)) continue;
    bool dual_ok = true;
    for (std::size_t w = 0; w < ineq.size(); ++w)
      if (nu[eq_rows.size() + w] < 0) dual_ok = false;
    if (!dual_ok) continue;

    QpSolution sol;
    sol.status = QpStatus::optimal;
    sol.x_star = x;
    sol.multipliers.lambda.assign(m_eq, Rational(0));
    for (std::size_t u = 0; u < eq_rows.size(); ++u)
      sol.multipliers.lambda[eq_rows[u]] = 2 * nu[u];
    for (std::size_t i = 0; i < m_le; ++i) sol.multipliers.mu[static_cast<int>(i) + 1] = 0;
    for (std::size_t w = 0; w < ineq.size(); ++w)
      sol.multipliers.mu[static_cast<int>(ineq[w]) + 1] = 2 * nu[eq_rows.size() + w];
    for (std::size_t i = 0; i < m_le; ++i)
      if (linalg::dot(con.a[i], x) + con.alpha[i] == 0)
        sol.active.insert(static_cast<int>(i) + 1);
    return sol;
  }
  return {};
}

/// 2(x - c) + sum mu_i a_i + sum lambda_j b_j, exactly.
inline Vector kkt_residual(const Vector& c, const QpConstraints& con,
                           const QpSolution& sol) {
  Vector r(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) r[k] = 2 * (sol.x_star[k] - c[k]);
  for (const auto& [i, mu] : sol.multipliers.mu)
    for (std::size_t k = 0; k < c.size(); ++k)
      r[k] += mu * con.a[static_cast<std::size_t>(i - 1)][k];
  for (std::size_t j = 0; j < con.b.size(); ++j)
    for (std::size_t k = 0; k < c.size(); ++k)
      r[k] += sol.multipliers.lambda[j] * con.b[j][k];
  return r;
}

/// Exact KKT certificate: zero residual, primal feasibility, mu >= 0 and
/// complementary slackness.
inline bool kkt_certified(const Vector& c, const QpConstraints& con,
                          const QpSolution& sol) {
  if (sol.status != QpStatus::optimal) return false;
  if (!linalg::is_zero(kkt_residual(c, con, sol))) return false;
  for (std::size_t i = 0; i < con.a.size(); ++i) {
    const Rational g = linalg::dot(con.a[i], sol.x_star) + con.alpha[i];
    const auto it = sol.multipliers.mu.find(static_cast<int>(i) + 1);
    const Rational mu = it == sol.multipliers.mu.end() ? Rational(0) : it->second;
    if (g > 0 || mu < 0 || mu * g != 0) return false;
  }
  for (std::size_t j = 0; j < con.b.size(); ++j)
    if (linalg::dot(con.b[j], sol.x_star) + con.beta[j] != 0) return false;
  return true;
}

}  // namespace stratpoint
