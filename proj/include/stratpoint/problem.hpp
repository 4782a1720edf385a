#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stratpoint/poly.hpp"

namespace stratpoint {

/// Problem size (n, m_le, m_eq, p). Inequalities are labelled 1..m_le and the
/// objective carries the label m_star = m_le + 1.
struct ProblemSize {
  std::size_t n = 0;
  std::size_t m_le = 0;
  std::size_t m_eq = 0;
  std::size_t p = 0;

  int m_star() const { return static_cast<int>(m_le) + 1; }

  friend bool operator==(const ProblemSize&, const ProblemSize&) = default;
};

/// Dimension of the reduced jet space: n*m_le + m_le + n*m_eq + m_eq + n.
inline std::size_t jet_dim(std::size_t n, std::size_t m_le, std::size_t m_eq) {
  return n * m_le + m_le + n * m_eq + m_eq + n;
}

inline std::size_t jet_dim(const ProblemSize& s) {
  return jet_dim(s.n, s.m_le, s.m_eq);
}

/// minimize f(x,y) s.t. g_i(x,y) <= 0, h_j(x,y) = 0. A problem without an
/// objective describes a bare constraint set M(y) (used for MFCQ studies).
struct PolyProblem {
  ProblemSize size;
  std::optional<Poly> f;
  std::vector<Poly> g;
  std::vector<Poly> h;

  friend bool operator==(const PolyProblem&, const PolyProblem&) = default;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline ValidationReport validate_problem(const PolyProblem& prob) {
  ValidationReport report;
  const auto& s = prob.size;
  auto check = [&](const Poly& poly, const std::string& name) {
    if (poly.n() != s.n || poly.p() != s.p) {
      report.failures.push_back(
          name + ": variable space (" + std::to_string(poly.n()) + "," +
          std::to_string(poly.p()) + ") does not match (n,p)=(" +
          std::to_string(s.n) + "," + std::to_string(s.p) + ")");
    }
  };
  if (prob.g.size() != s.m_le)
    report.failures.push_back("g: expected " + std::to_string(s.m_le) +
                              " inequalities, got " +
                              std::to_string(prob.g.size()));
  if (prob.h.size() != s.m_eq)
    report.failures.push_back("h: expected " + std::to_string(s.m_eq) +
                              " equalities, got " +
                              std::to_string(prob.h.size()));
  if (prob.f) check(*prob.f, "f");
  for (std::size_t i = 0; i < prob.g.size(); ++i)
    check(prob.g[i], "g" + std::to_string(i + 1));
  for (std::size_t j = 0; j < prob.h.size(); ++j)
    check(prob.h[j], "h" + std::to_string(j + 1));
  return report;
}

inline void require_valid(const PolyProblem& prob) {
  auto report = validate_problem(prob);
  if (!report.ok()) throw DimensionError(report.failures.front());
}

inline void require_point(const ProblemSize& s, std::size_t nx,
                          std::size_t ny) {
  if (nx != s.n || ny != s.p)
    throw DimensionError("point has dimensions (" + std::to_string(nx) + "," +
                         std::to_string(ny) + "), problem expects (" +
                         std::to_string(s.n) + "," + std::to_string(s.p) + ")");
}

/// Feasibility of x for M(y): all g_i <= 0 and all h_j = 0, exactly.
inline bool is_feasible(const PolyProblem& prob, const Vector& x,
                        const Vector& y) {
  require_point(prob.size, x.size(), y.size());
  for (const auto& gi : prob.g)
    if (gi.eval(x, y) > 0) return false;
  for (const auto& hj : prob.h)
    if (hj.eval(x, y) != 0) return false;
  return true;
}

}  // namespace stratpoint
