#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "stratpoint/code_engine.hpp"
#include "stratpoint/jet.hpp"
#include "stratpoint/linalg.hpp"
#include "stratpoint/problem.hpp"

namespace stratpoint {

/// Reduced jet extension: (D_x g_i, g_i, D_x h_j, h_j, D_x f) at (x, y).
inline JetPoint jet_sp(const PolyProblem& prob, const Vector& x,
                       const Vector& y) {
  require_valid(prob);
  require_point(prob.size, x.size(), y.size());
  const std::size_t n = prob.size.n;
  JetPoint jet = JetPoint::zero(n, prob.size.m_le, prob.size.m_eq,
                                prob.f.has_value());
  auto grad = [&](const Poly& poly, Vector& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = poly.derivative(k).eval(x, y);
  };
  for (std::size_t i = 0; i < prob.g.size(); ++i) {
    grad(prob.g[i], jet.a[i]);
    jet.alpha[i] = prob.g[i].eval(x, y);
  }
  for (std::size_t j = 0; j < prob.h.size(); ++j) {
    grad(prob.h[j], jet.b[j]);
    jet.beta[j] = prob.h[j].eval(x, y);
  }
  if (prob.f) grad(*prob.f, *jet.a_star);
  return jet;
}

/// jet_sp with the objective gradient deleted.
inline JetPoint jet_mf(const PolyProblem& prob, const Vector& x,
                       const Vector& y) {
  return jet_sp(prob, x, y).without_objective();
}

struct PointCode {
  CombinatorialCode code;
  /// All g_i <= 0 and all h_j = 0. The code itself only gates on g_i.
  bool feasible = false;
  JetPoint jet;
};

inline PointCode point_code(const PolyProblem& prob, const Vector& x,
                            const Vector& y) {
  PointCode out;
  out.jet = jet_sp(prob, x, y);
  out.code = compute_code(out.jet);
  out.feasible = out.code.feasible && equalities_hold(out.jet);
  return out;
}

/// Special quadratic problem: minimize 1/2 |x - c|^2 subject to
/// a_i(y)^T x + alpha_i(y) <= 0, b_j(y)^T x + beta_j(y) = 0.
///
/// Canonical instances use the constraint data itself as parameters, laid out
/// as (a_i, alpha_i)_i, (b_j, beta_j)_j. Affine-restricted instances map
/// y in R^p to canonical parameters base + directions * y.
struct SqpInstance {
  enum class Kind { canonical, affine_restricted };

  ProblemSize size;
  Vector c;
  Kind kind = Kind::canonical;
  Vector base;        // canonical parameter vector (affine-restricted only)
  Matrix directions;  // canonical_dim x p (affine-restricted only)

  std::size_t canonical_dim() const {
    return jet_dim(size.n, size.m_le, size.m_eq) - size.n;
  }

  static SqpInstance canonical(std::size_t n, std::size_t m_le,
                               std::size_t m_eq, Vector c) {
    SqpInstance s;
    s.size = {n, m_le, m_eq, jet_dim(n, m_le, m_eq) - n};
    if (c.size() != n) throw DimensionError("sqp: center length != n");
    s.c = std::move(c);
    return s;
  }

  Vector canonical_parameters(const Vector& y) const {
    if (y.size() != size.p)
      throw DimensionError("sqp: expected " + std::to_string(size.p) +
                           " parameters, got " + std::to_string(y.size()));
    if (kind == Kind::canonical) return y;
    Vector full = base;
    for (std::size_t q = 0; q < full.size(); ++q)
      for (std::size_t l = 0; l < y.size(); ++l) full[q] += directions[q][l] * y[l];
    return full;
  }

  /// Constraint data at parameter y, as a jet without objective at x = 0.
  JetPoint constraints_at(const Vector& y) const {
    return JetPoint::unflatten(canonical_parameters(y), size.n, size.m_le,
                               size.m_eq, false);
  }

  PolyProblem to_problem() const {
    const std::size_t n = size.n, p = size.p;
    // Each canonical parameter as an affine polynomial in y.
    std::vector<Poly> param;
    param.reserve(canonical_dim());
    for (std::size_t q = 0; q < canonical_dim(); ++q) {
      if (kind == Kind::canonical) {
        param.push_back(Poly::y(n, p, q));
      } else {
        Poly pq = Poly::constant(n, p, base[q]);
        for (std::size_t l = 0; l < p; ++l)
          pq += directions[q][l] * Poly::y(n, p, l);
        param.push_back(std::move(pq));
      }
    }
    PolyProblem prob;
    prob.size = size;
    Poly f(n, p);
    for (std::size_t k = 0; k < n; ++k) {
      Poly d = Poly::x(n, p, k) - Poly::constant(n, p, c[k]);
      f += d * d;
    }
    prob.f = f * Rational(1, 2);
    std::size_t q = 0;
    auto affine = [&] {
      Poly out(n, p);
      for (std::size_t k = 0; k < n; ++k) out += param[q++] * Poly::x(n, p, k);
      out += param[q++];
      return out;
    };
    for (std::size_t i = 0; i < size.m_le; ++i) prob.g.push_back(affine());
    for (std::size_t j = 0; j < size.m_eq; ++j) prob.h.push_back(affine());
    return prob;
  }
};

struct NormalFormResult {
  SqpInstance sqp;
  Vector y_bar;
  JetPoint jet_check;
};

/// Canonical SQP with c = -a_star and y_bar = (a_i, alpha_i, b_j, beta_j), so
/// that its jet at (0, y_bar) reproduces `jet` exactly. Note that
/// grad f(0) = -c = a_star.
inline NormalFormResult build_normal_form(const JetPoint& jet) {
  jet.check();
  if (!jet.has_objective())
    throw std::invalid_argument("normal form needs an objective gradient");
  Vector c = *jet.a_star;
  for (auto& e : c) e = -e;
  NormalFormResult out{SqpInstance::canonical(jet.n, jet.m_le(), jet.m_eq(), c),
                       jet.without_objective().flatten(), {}};
  out.jet_check =
      jet_sp(out.sqp.to_problem(), Vector(jet.n, Rational(0)), out.y_bar);
  if (out.jet_check != jet)
    throw std::logic_error("normal form jet round trip failed");
  return out;
}

struct JacobianReport {
  Matrix jacobian;  // rows: jet coordinates; columns: (y in jet order, x)
  Rational determinant;
  bool upper_triangular = false;
};

/// Jacobian of the normal form's jet extension at (0, y_bar), assembled by
/// exact differentiation of every jet component.
inline JacobianReport normal_form_jacobian(const JetPoint& jet) {
  const auto nf = build_normal_form(jet);
  const auto prob = nf.sqp.to_problem();
  const std::size_t n = jet.n, p1 = nf.sqp.size.p;
  std::vector<Poly> comps;
  auto push_jet = [&](const Poly& poly, bool with_value) {
    for (std::size_t k = 0; k < n; ++k) comps.push_back(poly.derivative(k));
    if (with_value) comps.push_back(poly);
  };
  for (const auto& gi : prob.g) push_jet(gi, true);
  for (const auto& hj : prob.h) push_jet(hj, true);
  push_jet(*prob.f, false);

  const Vector x0(n, Rational(0));
  JacobianReport rep;
  rep.jacobian = linalg::zeros(comps.size(), p1 + n);
  for (std::size_t r = 0; r < comps.size(); ++r)
    for (std::size_t col = 0; col < p1 + n; ++col) {
      const std::size_t var = col < p1 ? n + col : col - p1;
      rep.jacobian[r][col] = comps[r].derivative(var).eval(x0, nf.y_bar);
    }
  rep.determinant = linalg::determinant(rep.jacobian);
  rep.upper_triangular = true;
  for (std::size_t r = 0; r < rep.jacobian.size(); ++r)
    for (std::size_t col = 0; col < r; ++col)
      if (rep.jacobian[r][col] != 0) rep.upper_triangular = false;
  return rep;
}

/// Restricts a canonical SQP to the affine family base + directions * y.
inline SqpInstance restrict_parameters(const SqpInstance& sqp, Vector base,
                                       Matrix directions) {
  if (sqp.kind != SqpInstance::Kind::canonical)
    throw std::invalid_argument("restrict_parameters needs a canonical SQP");
  const std::size_t p1 = sqp.canonical_dim();
  if (base.size() != p1 || directions.size() != p1)
    throw DimensionError("restrict_parameters: expected " +
                         std::to_string(p1) + " canonical coordinates");
  const std::size_t p = directions.empty() ? 0 : directions[0].size();
  for (const auto& row : directions)
    if (row.size() != p) throw DimensionError("restrict_parameters: ragged");
  if (linalg::rank(directions) != p)
    throw std::invalid_argument("restrict_parameters: directions are rank deficient");
  SqpInstance out = sqp;
  out.kind = SqpInstance::Kind::affine_restricted;
  out.size.p = p;
  out.base = std::move(base);
  out.directions = std::move(directions);
  return out;
}

}  // namespace stratpoint
