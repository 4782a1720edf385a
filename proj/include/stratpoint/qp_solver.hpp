#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratpoint/code_engine.hpp"
#include "stratpoint/exact_lp.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/linalg.hpp"

namespace stratpoint {

enum class QpStatus { optimal, infeasible };

inline const char* to_string(QpStatus s) {
  return s == QpStatus::optimal ? "optimal" : "infeasible";
}

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Minimizer of |x - c|^2 over {a_i^T x + alpha_i <= 0, b_j^T x + beta_j = 0}.
/// Multipliers satisfy 2(x - c) + sum mu_i a_i + sum lambda_j b_j = 0; when
/// active gradients are dependent they are one valid certificate, not a
/// canonical choice.
struct QpSolution {
  QpStatus status = QpStatus::infeasible;
  Vector x_star;
  std::set<int> active;  // 1-based inequality labels
  Multipliers multipliers;
};

/// Polyhedron rows a_i^T x + alpha_i <= 0 and b_j^T x + beta_j = 0.
struct QpConstraints {
  Matrix a;
  Vector alpha;
  Matrix b;
  Vector beta;
};

inline QpConstraints constraints_of(const JetPoint& data) {
  return {data.a, data.alpha, data.b, data.beta};
}

/// Primal active-set method in exact arithmetic. Phase 1 runs through the
/// exact LP; blocking-constraint ties go to the lowest index.
inline QpSolution solve_qp(const Vector& c, const QpConstraints& con) {
  const std::size_t n = c.size();
  const std::size_t m_le = con.a.size(), m_eq = con.b.size();
  if (con.alpha.size() != m_le || con.beta.size() != m_eq)
    throw DimensionError("qp: constraint value count mismatch");
  for (const auto& r : con.a)
    if (r.size() != n) throw DimensionError("qp: inequality row width");
  for (const auto& r : con.b)
    if (r.size() != n) throw DimensionError("qp: equality row width");

  Vector neg_alpha(m_le), neg_beta(m_eq);
  for (std::size_t i = 0; i < m_le; ++i) neg_alpha[i] = -con.alpha[i];
  for (std::size_t j = 0; j < m_eq; ++j) neg_beta[j] = -con.beta[j];
  auto phase1 = lp_feasible(con.b, neg_beta, con.a, neg_alpha, n);
  QpSolution out;
  if (phase1.status != LpStatus::optimal) return out;
  Vector x = *phase1.solution;

  const auto eq_rows = linalg::independent_rows(con.b, n);
  std::vector<std::size_t> working;  // inequality indices, 0-based
  const std::size_t cap = (m_le + 1) * (std::size_t{1} << (m_le + 1)) + n + 1;

  for (std::size_t iter = 0;; ++iter) {
    if (iter > cap)
      throw std::runtime_error("qp: active-set iteration cap exceeded");
    Matrix rows;
    for (auto j : eq_rows) rows.push_back(con.b[j]);
    for (auto i : working) rows.push_back(con.a[i]);
    // Projection z of c onto {z : rows z = rows x}: z = c - rows^T nu with
    // (rows rows^T) nu = rows (c - x).
    const std::size_t r = rows.size();
    Vector nu(r, Rational(0));
    Vector z = c;
    if (r > 0) {
      Matrix gram = linalg::zeros(r, r);
      Vector rhs(r);
      Vector cx(n);
      for (std::size_t k = 0; k < n; ++k) cx[k] = c[k] - x[k];
      for (std::size_t u = 0; u < r; ++u) {
        for (std::size_t v = 0; v < r; ++v) gram[u][v] = linalg::dot(rows[u], rows[v]);
        rhs[u] = linalg::dot(rows[u], cx);
      }
      auto sol = linalg::solve(gram, rhs, r);
      if (!sol || !sol->unique)
        throw std::logic_error("qp: working set lost linear independence");
      nu = sol->solution;
      for (std::size_t u = 0; u < r; ++u)
        for (std::size_t k = 0; k < n; ++k) z[k] -= rows[u][k] * nu[u];
    }
    Vector step(n);
    for (std::size_t k = 0; k < n; ++k) step[k] = z[k] - x[k];

    if (linalg::is_zero(step)) {
      // Objective |x - c|^2 doubles the multipliers of the 1/2-scaled system.
      std::optional<std::size_t> drop;
      Rational worst = 0;
      for (std::size_t w = 0; w < working.size(); ++w) {
        const Rational mu = 2 * nu[eq_rows.size() + w];
        if (mu < worst || (drop && mu == worst && working[w] < working[*drop])) {
          worst = mu;
          drop = w;
        }
      }
      if (!drop) {
        out.status = QpStatus::optimal;
        out.x_star = x;
        out.multipliers.lambda.assign(m_eq, Rational(0));
        for (std::size_t u = 0; u < eq_rows.size(); ++u)
          out.multipliers.lambda[eq_rows[u]] = 2 * nu[u];
        for (std::size_t i = 0; i < m_le; ++i)
          out.multipliers.mu[static_cast<int>(i) + 1] = 0;
        for (std::size_t w = 0; w < working.size(); ++w)
          out.multipliers.mu[static_cast<int>(working[w]) + 1] =
              2 * nu[eq_rows.size() + w];
        for (std::size_t i = 0; i < m_le; ++i)
          if (linalg::dot(con.a[i], x) + con.alpha[i] == 0)
            out.active.insert(static_cast<int>(i) + 1);
        return out;
      }
      working.erase(working.begin() + static_cast<std::ptrdiff_t>(*drop));
      continue;
    }

    std::optional<std::size_t> block;
    Rational best = 1;
    std::vector<bool> in_working(m_le, false);
    for (auto i : working) in_working[i] = true;
    for (std::size_t i = 0; i < m_le; ++i) {
      if (in_working[i]) continue;
      const Rational slope = linalg::dot(con.a[i], step);
      if (slope <= 0) continue;
      const Rational ratio = -(con.alpha[i] + linalg::dot(con.a[i], x)) / slope;
      if (ratio < best) {
        best = ratio;
        block = i;
      }
    }
    for (std::size_t k = 0; k < n; ++k) x[k] += best * step[k];
    if (block) working.push_back(*block);
  }
}

inline QpSolution solve_qp(const Vector& c, const Matrix& a, const Vector& alpha,
                           const Matrix& b, const Vector& beta) {
  return solve_qp(c, QpConstraints{a, alpha, b, beta});
}

/// Jet of the SQP at (x, y), computed from the affine data directly.
inline JetPoint sqp_jet(const SqpInstance& sqp, const Vector& x,
                        const Vector& y) {
  JetPoint jet = sqp.constraints_at(y);
  if (x.size() != sqp.size.n) throw DimensionError("sqp_jet: x length");
  for (std::size_t i = 0; i < jet.a.size(); ++i)
    jet.alpha[i] += linalg::dot(jet.a[i], x);
  for (std::size_t j = 0; j < jet.b.size(); ++j)
    jet.beta[j] += linalg::dot(jet.b[j], x);
  Vector grad(sqp.size.n);
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = x[k] - sqp.c[k];
  jet.a_star = grad;
  return jet;
}

struct StationaryMapResult {
  QpStatus status = QpStatus::infeasible;
  Vector x;
  CombinatorialCode code;
  QpSolution solution;
};

/// y -> (argmin SQP(y), code at that point).
inline StationaryMapResult stationary_map(const SqpInstance& sqp,
                                          const Vector& y) {
  StationaryMapResult out;
  out.solution = solve_qp(sqp.c, constraints_of(sqp.constraints_at(y)));
  out.status = out.solution.status;
  if (out.status != QpStatus::optimal) {
    out.code.m_le = sqp.size.m_le;
    out.code.m_eq = sqp.size.m_eq;
    out.code.feasible = false;
    return out;
  }
  out.x = out.solution.x_star;
  out.code = compute_code(sqp_jet(sqp, out.x, y));
  return out;
}

inline void check_inequality_label(const SqpInstance& sqp, int m) {
  if (m < 1 || m > static_cast<int>(sqp.size.m_le))
    throw std::out_of_range("inequality label " + std::to_string(m) +
                            " out of range");
}

/// Minimizer of SQP(y) with inequality m (1-based) removed.
inline QpSolution solve_deleted(const SqpInstance& sqp, const Vector& y, int m) {
  check_inequality_label(sqp, m);
  auto con = constraints_of(sqp.constraints_at(y));
  const auto idx = static_cast<std::ptrdiff_t>(m - 1);
  con.a.erase(con.a.begin() + idx);
  con.alpha.erase(con.alpha.begin() + idx);
  auto sol = solve_qp(sqp.c, con);
  if (sol.status != QpStatus::optimal) return sol;
  // Relabel to the full problem's indices (m is absent).
  std::set<int> active;
  for (int i : sol.active) active.insert(i >= m ? i + 1 : i);
  sol.active = std::move(active);
  std::map<int, Rational> mu;
  for (const auto& [i, v] : sol.multipliers.mu) mu[i >= m ? i + 1 : i] = v;
  sol.multipliers.mu = std::move(mu);
  return sol;
}

/// alpha_m(y') = -x'(y')^T a_m where x' solves the deleted problem. The
/// alpha_m entry of the full parameter vector `y` is ignored.
inline Rational alpha_boundary(const SqpInstance& sqp, const Vector& y, int m) {
  auto sol = solve_deleted(sqp, y, m);
  if (sol.status != QpStatus::optimal)
    throw InfeasibleError("deleted subproblem is infeasible");
  const auto data = sqp.constraints_at(y);
  return -linalg::dot(sol.x_star, data.a[static_cast<std::size_t>(m - 1)]);
}

}  // namespace stratpoint
