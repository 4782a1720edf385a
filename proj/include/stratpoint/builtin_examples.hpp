#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/poly.hpp"
#include "stratpoint/problem.hpp"

namespace stratpoint {

struct BuiltinExample {
  std::string name;
  std::string summary;
  PolyProblem problem;
  std::vector<std::string> facts;
};

struct BuiltinSqp {
  std::string name;
  std::string summary;
  SqpInstance sqp;
};

/// min x1^2 + x2^2 s.t. x1 y1 + x2 y2 + y3 = 0, a cone over a torus whose
/// vertex (x, y) = 0 is both stationary and MFCQ-violating.
inline PolyProblem cone_example() {
  const std::size_t n = 2, p = 3;
  PolyProblem prob;
  prob.size = {n, 0, 1, p};
  prob.f = Poly::x(n, p, 0) * Poly::x(n, p, 0) + Poly::x(n, p, 1) * Poly::x(n, p, 1);
  prob.h.push_back(Poly::x(n, p, 0) * Poly::y(n, p, 0) +
                   Poly::x(n, p, 1) * Poly::y(n, p, 1) + Poly::y(n, p, 2));
  return prob;
}

/// min (x1 - 1)^2 + x2^2 s.t. x1 <= 0.
inline PolyProblem halfspace_qp() {
  const std::size_t n = 2, p = 0;
  PolyProblem prob;
  prob.size = {n, 1, 0, p};
  const Poly d = Poly::x(n, p, 0) - Poly::constant(n, p, 1);
  prob.f = d * d + Poly::x(n, p, 1) * Poly::x(n, p, 1);
  prob.g.push_back(Poly::x(n, p, 0));
  return prob;
}

/// g1 = x, g2 = -x: the constraint set {0}, where MFCQ fails.
inline PolyProblem double_wedge() {
  PolyProblem prob;
  prob.size = {1, 2, 0, 0};
  prob.g.push_back(Poly::x(1, 0, 0));
  prob.g.push_back(-Poly::x(1, 0, 0));
  return prob;
}

inline const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> registry = {
      {"example-5.1",
       "min x1^2+x2^2 s.t. x1*y1 + x2*y2 + y3 = 0 (n=2, m_eq=1, p=3)",
       cone_example(),
       {"at x=(0,0), y=(0,0,0) the point is stationary and MFCQ fails",
        "closure of the jet family: beta1 = 0 and det(b1|a_star) = 0",
        "stationary branch x(y) = -y3*(y1,y2)/(y1^2+y2^2) for (y1,y2) != 0"}},
      {"halfspace-qp",
       "min (x1-1)^2 + x2^2 s.t. x1 <= 0 (n=2, m_le=1, p=0)",
       halfspace_qp(),
       {"x=(0,0) is the minimizer with multiplier mu1 = 2",
        "code at x=(0,0): I0={1}, pairs={({1,m*},{})}"}},
      {"double-wedge",
       "constraints x <= 0 and -x <= 0 (n=1, m_le=2, no objective)",
       double_wedge(),
       {"MFCQ fails at x=0 with pair ({1,2},{})",
        "mf2sp gives min x2 s.t. x - x2 <= 0, -x - x2 <= 0"}},
  };
  return registry;
}

inline const std::vector<BuiltinSqp>& builtin_sqps() {
  static const std::vector<BuiltinSqp> registry = [] {
    std::vector<BuiltinSqp> out;
    // n = 1, c = 1, constraint x + alpha1 <= 0 with alpha1 the only parameter.
    {
      auto canon = SqpInstance::canonical(1, 1, 0, {Rational(1)});
      out.push_back({"halfspace-sqp",
                     "min 1/2 (x-1)^2 s.t. x + y1 <= 0; boundary at y1 = -1",
                     restrict_parameters(canon, {Rational(1), Rational(0)},
                                         {{Rational(0)}, {Rational(1)}})});
    }
    // n = 2, c = (1,0), x1 + y1 <= 0 and -x1 + y2 <= 0: feasible iff y1 + y2 <= 0,
    // MFCQ fails on y1 + y2 = 0.
    {
      auto canon = SqpInstance::canonical(2, 2, 0, {Rational(1), Rational(0)});
      Vector base = {1, 0, 0, -1, 0, 0};
      Matrix dirs = {{0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 1}};
      out.push_back({"halfspace-sqp-2",
                     "min 1/2 |x-(1,0)|^2 s.t. x1 + y1 <= 0, -x1 + y2 <= 0",
                     restrict_parameters(canon, std::move(base), std::move(dirs))});
    }
    return out;
  }();
  return registry;
}

inline std::optional<BuiltinExample> find_builtin(const std::string& name) {
  for (const auto& e : builtin_examples())
    if (e.name == name) return e;
  return std::nullopt;
}

inline std::optional<BuiltinSqp> find_builtin_sqp(const std::string& name) {
  for (const auto& e : builtin_sqps())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace stratpoint
