#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratpoint/code_engine.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/qp_solver.hpp"

namespace stratpoint {

// ---------------------------------------------------------------------------
// Grids

struct GridAxis {
  Rational min = 0;
  Rational max = 0;
  std::size_t steps = 1;

  Rational value(std::size_t k) const {
    if (steps == 1) return min;
    return min + (max - min) * Rational(static_cast<long>(k)) /
                     Rational(static_cast<long>(steps - 1));
  }
};

/// One axis per parameter; a fixed parameter is an axis with steps = 1.
struct GridSpec {
  std::vector<GridAxis> axes;

  void check() const {
    for (std::size_t l = 0; l < axes.size(); ++l) {
      if (axes[l].steps < 1)
        throw std::invalid_argument("grid axis " + std::to_string(l + 1) + ": steps < 1");
      if (axes[l].min > axes[l].max)
        throw std::invalid_argument("grid axis " + std::to_string(l + 1) + ": min > max");
    }
  }

  std::size_t node_count() const {
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.steps;
    return total;
  }

  /// Lexicographic index tuple of node `flat` (last axis fastest).
  std::vector<std::size_t> index_of(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t l = axes.size(); l-- > 0;) {
      idx[l] = flat % axes[l].steps;
      flat /= axes[l].steps;
    }
    return idx;
  }

  std::size_t flat_of(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (std::size_t l = 0; l < axes.size(); ++l) flat = flat * axes[l].steps + idx[l];
    return flat;
  }

  Vector node(std::size_t flat) const {
    const auto idx = index_of(flat);
    Vector y(axes.size());
    for (std::size_t l = 0; l < axes.size(); ++l) y[l] = axes[l].value(idx[l]);
    return y;
  }

  std::vector<Vector> nodes() const {
    check();
    std::vector<Vector> out;
    out.reserve(node_count());
    for (std::size_t k = 0; k < node_count(); ++k) out.push_back(node(k));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Records

enum class Classification { sp_interior, mf_boundary, infeasible, non_stationary };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::sp_interior: return "sp_interior";
    case Classification::mf_boundary: return "mf_boundary";
    case Classification::infeasible: return "infeasible";
    case Classification::non_stationary: return "non_stationary";
  }
  return "?";
}

inline Classification classify(const CombinatorialCode& code, bool feasible) {
  if (!feasible || !code.feasible) return Classification::infeasible;
  if (code.mfcq_violated()) return Classification::mf_boundary;
  if (code.stationary()) return Classification::sp_interior;
  return Classification::non_stationary;
}

struct TraceRecord {
  Vector y;
  std::optional<Vector> x;
  CombinatorialCode code;
  bool feasible = false;
  Classification classification = Classification::infeasible;
};

/// Exact SQP tracing: one cold solve per node, lexicographic node order.
inline std::vector<TraceRecord> trace_grid(const SqpInstance& sqp,
                                           const GridSpec& grid) {
  if (grid.axes.size() != sqp.size.p)
    throw DimensionError("grid has " + std::to_string(grid.axes.size()) +
                         " axes, SQP has " + std::to_string(sqp.size.p) + " parameters");
  std::vector<TraceRecord> out;
  for (auto& y : grid.nodes()) {
    TraceRecord rec;
    auto sm = stationary_map(sqp, y);
    rec.y = std::move(y);
    rec.feasible = sm.status == QpStatus::optimal;
    if (rec.feasible) rec.x = sm.x;
    rec.code = sm.code;
    rec.classification = classify(rec.code, rec.feasible);
    out.push_back(std::move(rec));
  }
  return out;
}

/// Consistency of every record's classification with its code. Returns one
/// message per offending record.
inline std::vector<std::string> check_trace_consistency(
    const std::vector<TraceRecord>& records) {
  std::vector<std::string> issues;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    const auto expect = classify(r.code, r.feasible);
    std::string why;
    if (expect != r.classification)
      why = "classification does not match code";
    else if (r.classification == Classification::sp_interior &&
             (!r.code.stationary() || r.code.mfcq_violated()))
      why = "sp_interior record is not a regular stationary point";
    else if (r.classification == Classification::mf_boundary && !r.code.mfcq_violated())
      why = "mf_boundary record has empty MF part";
    if (!why.empty()) issues.push_back("record " + std::to_string(k) + ": " + why);
  }
  return issues;
}

/// Neighbourhood structure of classified records over the grid graph
/// (nodes adjacent when their index tuples differ by one in one axis).
struct GridTopology {
  std::size_t sp_nodes = 0;
  std::size_t mf_nodes = 0;
  std::size_t sp_components = 0;
  std::size_t mf_not_frontier = 0;  // mf nodes lacking an sp or an outside neighbour
  std::size_t sp_with_mfcq_violation = 0;
};

inline GridTopology analyze_grid_topology(const std::vector<TraceRecord>& records,
                                          const GridSpec& grid) {
  if (records.size() != grid.node_count())
    throw DimensionError("record count does not match the grid");
  auto neighbours = [&](std::size_t flat) {
    std::vector<std::size_t> out;
    auto idx = grid.index_of(flat);
    for (std::size_t l = 0; l < idx.size(); ++l) {
      if (idx[l] > 0) {
        --idx[l];
        out.push_back(grid.flat_of(idx));
        ++idx[l];
      }
      if (idx[l] + 1 < grid.axes[l].steps) {
        ++idx[l];
        out.push_back(grid.flat_of(idx));
        --idx[l];
      }
    }
    return out;
  };
  auto is = [&](std::size_t k, Classification c) {
    return records[k].classification == c;
  };
  GridTopology topo;
  std::vector<bool> seen(records.size(), false);
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (is(k, Classification::sp_interior)) {
      ++topo.sp_nodes;
      if (records[k].code.mfcq_violated()) ++topo.sp_with_mfcq_violation;
      if (seen[k]) continue;
      ++topo.sp_components;
      std::queue<std::size_t> todo;
      todo.push(k);
      seen[k] = true;
      while (!todo.empty()) {
        auto u = todo.front();
        todo.pop();
        for (auto v : neighbours(u))
          if (!seen[v] && is(v, Classification::sp_interior)) {
            seen[v] = true;
            todo.push(v);
          }
      }
    } else if (is(k, Classification::mf_boundary)) {
      ++topo.mf_nodes;
      bool touches_sp = false, touches_outside = false;
      for (auto v : neighbours(k)) {
        touches_sp = touches_sp || is(v, Classification::sp_interior);
        touches_outside = touches_outside || is(v, Classification::infeasible) ||
                          is(v, Classification::non_stationary);
      }
      if (!touches_sp || !touches_outside) ++topo.mf_not_frontier;
    }
  }
  return topo;
}

// ---------------------------------------------------------------------------
// Newton corrector on indexed KKT systems

enum class NewtonStatus { converged, singular, diverged };

inline const char* to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::singular: return "singular";
    case NewtonStatus::diverged: return "diverged";
  }
  return "?";
}

struct NewtonOptions {
  double residual_tol = 1e-10;
  double condition_limit = 1e12;
  int max_iterations = 50;
};

struct NewtonResult {
  NewtonStatus status = NewtonStatus::diverged;
  std::vector<double> x;
  std::vector<double> multipliers;  // mu over I (ascending), then lambda over J
  double residual = 0;
  double condition = 0;
  int iterations = 0;
};

namespace detail {

struct KktModel {
  std::size_t n = 0;
  std::vector<Poly> grad_f;
  std::vector<std::vector<Poly>> hess_f;
  struct Row {
    Poly value;
    std::vector<Poly> grad;
    std::vector<std::vector<Poly>> hess;
  };
  std::vector<Row> rows;  // I then J

  static std::vector<std::vector<Poly>> hessian(const std::vector<Poly>& grad,
                                                std::size_t n) {
    std::vector<std::vector<Poly>> h(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) h[r].push_back(grad[r].derivative(c));
    return h;
  }

  KktModel(const PolyProblem& prob, const IndexPair& pair) : n(prob.size.n) {
    require_valid(prob);
    if (!prob.f) throw std::invalid_argument("newton_correct needs an objective");
    for (int i : pair.I)
      if (i < 1 || i > static_cast<int>(prob.size.m_le))
        throw std::out_of_range("newton_correct: I holds inequality labels 1..m_le only");
    for (int j : pair.J)
      if (j < 1 || j > static_cast<int>(prob.size.m_eq))
        throw std::out_of_range("newton_correct: equality label out of range");
    grad_f = grad_x(*prob.f);
    hess_f = hessian(grad_f, n);
    auto add = [&](const Poly& p) {
      Row r{p, grad_x(p), {}};
      r.hess = hessian(r.grad, n);
      rows.push_back(std::move(r));
    };
    for (int i : pair.I) add(prob.g[static_cast<std::size_t>(i - 1)]);
    for (int j : pair.J) add(prob.h[static_cast<std::size_t>(j - 1)]);
  }

  std::size_t dim() const { return n + rows.size(); }

  void assemble(const Eigen::VectorXd& z, const std::vector<double>& y,
                Eigen::VectorXd& F, Eigen::MatrixXd& K) const {
    const std::size_t d = dim();
    std::vector<double> x(z.data(), z.data() + n);
    F.setZero(static_cast<Eigen::Index>(d));
    K.setZero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < n; ++r) {
      F(static_cast<Eigen::Index>(r)) = grad_f[r].eval(x, y);
      for (std::size_t c = 0; c < n; ++c)
        K(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = hess_f[r][c].eval(x, y);
    }
    for (std::size_t q = 0; q < rows.size(); ++q) {
      const auto col = static_cast<Eigen::Index>(n + q);
      const double mult = z(col);
      F(col) = rows[q].value.eval(x, y);
      for (std::size_t r = 0; r < n; ++r) {
        const double g = rows[q].grad[r].eval(x, y);
        const auto rr = static_cast<Eigen::Index>(r);
        F(rr) += mult * g;
        K(rr, col) = g;
        K(col, rr) = g;
        for (std::size_t c = 0; c < n; ++c)
          K(rr, static_cast<Eigen::Index>(c)) += mult * rows[q].hess[r][c].eval(x, y);
      }
    }
  }
};

}  // namespace detail

/// Float Newton on D_x L_{I,J} = 0, g_I = 0, h_J = 0 in (x, mu_I, lambda_J),
/// objective weight 1. A KKT Jacobian with condition number above the limit
/// counts as singular, also at an iterate that already meets the residual
/// tolerance: a solution there is not non-degenerate.
inline NewtonResult newton_correct(const PolyProblem& prob, const IndexPair& pair,
                                   const std::vector<double>& seed_x,
                                   const std::vector<double>& seed_multipliers,
                                   const Vector& y, const NewtonOptions& opt = {}) {
  const detail::KktModel model(prob, pair);
  require_point(prob.size, seed_x.size(), y.size());
  if (seed_multipliers.size() != model.rows.size())
    throw DimensionError("newton_correct: expected " + std::to_string(model.rows.size()) +
                         " seed multipliers");
  const auto yd = to_double(y);
  const auto d = static_cast<Eigen::Index>(model.dim());
  Eigen::VectorXd z(d);
  for (std::size_t k = 0; k < seed_x.size(); ++k) z(static_cast<Eigen::Index>(k)) = seed_x[k];
  for (std::size_t q = 0; q < seed_multipliers.size(); ++q)
    z(static_cast<Eigen::Index>(model.n + q)) = seed_multipliers[q];

  NewtonResult res;
  Eigen::VectorXd F;
  Eigen::MatrixXd K;
  for (int it = 0;; ++it) {
    res.iterations = it;
    model.assemble(z, yd, F, K);
    res.residual = d == 0 ? 0.0 : F.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(res.residual) || !z.allFinite()) {
      res.status = NewtonStatus::diverged;
      break;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = d == 0 ? 1.0 : sv(0);
    const double smin = d == 0 ? 1.0 : sv(d - 1);
    res.condition = smin > 0 ? smax / smin : INFINITY;
    if (!(res.condition <= opt.condition_limit)) {
      res.status = NewtonStatus::singular;
      break;
    }
    if (res.residual < opt.residual_tol) {
      res.status = NewtonStatus::converged;
      break;
    }
    if (it >= opt.max_iterations) {
      res.status = NewtonStatus::diverged;
      break;
    }
    z -= svd.solve(F);
  }
  res.x.assign(z.data(), z.data() + model.n);
  res.multipliers.assign(z.data() + model.n, z.data() + d);
  return res;
}

struct ContinuationStep {
  Vector y;
  NewtonResult result;
};

struct ContinuationResult {
  std::vector<ContinuationStep> steps;
  /// Index into the path of the first node where Newton failed.
  std::optional<std::size_t> breakdown;
  std::optional<Vector> breakdown_y;
};

inline ContinuationResult continuation_path(const PolyProblem& prob,
                                            const IndexPair& pair,
                                            std::vector<double> x,
                                            std::vector<double> multipliers,
                                            const std::vector<Vector>& path,
                                            const NewtonOptions& opt = {}) {
  ContinuationResult out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    auto r = newton_correct(prob, pair, x, multipliers, path[k], opt);
    const bool ok = r.status == NewtonStatus::converged;
    if (ok) {
      x = r.x;
      multipliers = r.multipliers;
    }
    out.steps.push_back({path[k], std::move(r)});
    if (!ok) {
      out.breakdown = k;
      out.breakdown_y = path[k];
      break;
    }
  }
  return out;
}

/// Tolerances of the float-to-exact handoff in general problem tracing.
struct SnapOptions {
  double rationalize_tol = 1e-9;
  std::int64_t max_denominator = 1000000;
  double activity_tol = 1e-8;
};

namespace detail {

inline void snap(Rational& v, const Rational& tol) {
  if (abs(v) < tol) v = 0;
}

inline JetPoint snapped_jet(JetPoint jet, double tol) {
  const Rational t = from_double(tol);
  for (auto& ai : jet.a)
    for (auto& e : ai) snap(e, t);
  for (auto& e : jet.alpha) snap(e, t);
  for (auto& bj : jet.b)
    for (auto& e : bj) snap(e, t);
  for (auto& e : jet.beta) snap(e, t);
  if (jet.a_star)
    for (auto& e : *jet.a_star) snap(e, t);
  return jet;
}

}  // namespace detail

/// Exact classification of a float point: rationalize x, evaluate the jet
/// exactly, snap near-zero entries, run the exact code engine.
inline TraceRecord classify_float_point(const PolyProblem& prob,
                                        const std::vector<double>& x,
                                        const Vector& y,
                                        const SnapOptions& snap = {}) {
  TraceRecord rec;
  rec.y = y;
  Vector xr;
  for (double v : x) xr.push_back(rationalize(v, snap.rationalize_tol, snap.max_denominator));
  const JetPoint jet = detail::snapped_jet(jet_sp(prob, xr, y), snap.activity_tol);
  rec.code = compute_code(jet);
  rec.feasible = rec.code.feasible && equalities_hold(jet);
  rec.classification = classify(rec.code, rec.feasible);
  rec.x = std::move(xr);
  return rec;
}

/// Float tracing of a general problem along the indexed KKT system (I, J).
/// Nodes are visited lexicographically; each node is seeded with the last
/// converged solution. Where Newton fails the record keeps x absent and
/// carries the exact code at the seed point.
inline std::vector<TraceRecord> trace_problem(const PolyProblem& prob,
                                              const IndexPair& pair,
                                              const GridSpec& grid,
                                              std::vector<double> seed_x,
                                              std::vector<double> seed_multipliers,
                                              const NewtonOptions& opt = {},
                                              const SnapOptions& snap = {}) {
  if (grid.axes.size() != prob.size.p)
    throw DimensionError("grid has " + std::to_string(grid.axes.size()) +
                         " axes, problem has " + std::to_string(prob.size.p) + " parameters");
  std::vector<TraceRecord> out;
  for (auto& y : grid.nodes()) {
    auto r = newton_correct(prob, pair, seed_x, seed_multipliers, y, opt);
    if (r.status == NewtonStatus::converged) {
      seed_x = r.x;
      seed_multipliers = r.multipliers;
      out.push_back(classify_float_point(prob, r.x, y, snap));
    } else {
      auto rec = classify_float_point(prob, seed_x, y, snap);
      rec.x.reset();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary probe

struct ProbeEntry {
  Vector y;
  Rational boundary;  // A = alpha_m(y')
  bool below_inactive = false;
  bool at_sp_star = false;
  bool above_active = false;
  std::string note;
  bool ok() const { return below_inactive && at_sp_star && above_active; }
};

struct ProbeReport {
  int m = 0;
  std::vector<ProbeEntry> entries;
  std::size_t violations() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const ProbeEntry& e) { return !e.ok(); }));
  }
};

/// Code of the SQP with data `con` at its minimizer, or nullopt if infeasible.
inline std::optional<CombinatorialCode> code_at_minimizer(const Vector& c,
                                                          const QpConstraints& con) {
  const auto sol = solve_qp(c, con);
  if (sol.status != QpStatus::optimal) return std::nullopt;
  JetPoint jet = JetPoint::zero(c.size(), con.a.size(), con.b.size(), true);
  jet.a = con.a;
  jet.b = con.b;
  for (std::size_t i = 0; i < con.a.size(); ++i)
    jet.alpha[i] = linalg::dot(con.a[i], sol.x_star) + con.alpha[i];
  for (std::size_t j = 0; j < con.b.size(); ++j)
    jet.beta[j] = linalg::dot(con.b[j], sol.x_star) + con.beta[j];
  for (std::size_t k = 0; k < c.size(); ++k) (*jet.a_star)[k] = sol.x_star[k] - c[k];
  return compute_code(jet);
}

/// Trichotomy at alpha_m in {A - 1, A, A + 1} for every node.
/// The alpha_m entry implied by each node is overwritten.
inline ProbeReport boundary_probe(const SqpInstance& sqp, int m,
                                  const std::vector<Vector>& nodes) {
  check_inequality_label(sqp, m);
  ProbeReport rep;
  rep.m = m;
  const auto idx = static_cast<std::size_t>(m - 1);
  for (const auto& y : nodes) {
    ProbeEntry e;
    e.y = y;
    e.boundary = alpha_boundary(sqp, y, m);
    auto con = constraints_of(sqp.constraints_at(y));
    auto at = [&](const Rational& value) {
      con.alpha[idx] = value;
      return code_at_minimizer(sqp.c, con);
    };
    const auto below = at(e.boundary - 1);
    const auto mid = at(e.boundary);
    const auto above = at(e.boundary + 1);
    e.below_inactive = below && !below->i0.count(m);
    if (mid && mid->i0.count(m))
      for (const auto& pr : mid->pairs)
        if (!pr.I.count(m)) e.at_sp_star = true;
    e.above_active = above && above->i0.count(m);
    if (!above) e.note = "full problem infeasible at A + 1";
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace stratpoint
