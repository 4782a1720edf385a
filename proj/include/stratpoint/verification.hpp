#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/code_engine.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/oracles.hpp"
#include "stratpoint/qp_solver.hpp"
#include "stratpoint/random.hpp"
#include "stratpoint/tracer.hpp"
#include "stratpoint/transforms.hpp"

namespace stratpoint {

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const { return passed == total && failures.empty(); }
  void record(bool good, const std::string& why) {
    ++total;
    if (good) {
      ++passed;
    } else if (failures.size() < 5) {
      failures.push_back(why);
    }
  }
};

namespace detail {

inline std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  // FNV-1a over the check name keeps each check's stream independent of
  // which other checks run.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

inline std::string jet_text(const JetPoint& jet) {
  std::string s = "[";
  const Vector z = jet.flatten();
  for (std::size_t k = 0; k < z.size(); ++k) s += (k ? " " : "") + format_rational(z[k]);
  return s + "]";
}

/// Jets for the oracle checks: n <= 3, m_le <= 4, m_eq <= 2.
inline JetPoint sample_code_jet(Rng& rng, bool dense) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto m_le = static_cast<std::size_t>(rng.uniform(0, 4));
  const auto m_eq = static_cast<std::size_t>(rng.uniform(0, 2));
  JetDraw d;
  if (dense) {
    d.lo = -1;
    d.hi = 1;
    d.zero_alpha_num = 3;
    d.zero_alpha_den = 4;
  }
  return random_jet(rng, n, m_le, m_eq, d);
}

/// A jet in chi_MF minus chi_SP, built around one of three relation shapes.
inline JetPoint sample_mf_not_sp_jet(Rng& rng) {
  for (;;) {
    const long shape = rng.uniform(0, 2);
    const auto n = static_cast<std::size_t>(rng.uniform(shape == 1 ? 1 : 2, 3));
    const auto extra = static_cast<std::size_t>(rng.uniform(0, 2));
    JetPoint jet;
    Vector a1 = random_vector(rng, n, -3, 3);
    if (linalg::is_zero(a1)) continue;
    if (shape == 0) {
      jet = JetPoint::zero(n, 2 + extra, 0);
      jet.a[0] = a1;
      const Rational k = rng.fraction(1, 3, 2);
      for (std::size_t c = 0; c < n; ++c) jet.a[1][c] = -k * a1[c];
    } else if (shape == 1) {
      jet = JetPoint::zero(n, extra, 1);
    } else {
      jet = JetPoint::zero(n, 1 + extra, 1);
      jet.a[0] = a1;
      Rational r = rng.fraction(1, 3, 2);
      if (rng.chance(1, 2)) r = -r;
      for (std::size_t c = 0; c < n; ++c) jet.b[0][c] = r * a1[c];
    }
    const std::size_t first_extra = jet.m_le() - extra;
    for (std::size_t i = first_extra; i < jet.m_le(); ++i) {
      jet.a[i] = random_vector(rng, n, -3, 3);
      jet.alpha[i] = rng.integer(-3, -1);
    }
    *jet.a_star = random_vector(rng, n, -3, 3);
    const auto code = compute_code(jet);
    if (code.mfcq_violated() && !code.stationary()) return jet;
  }
}

struct QpDraw {
  Vector c;
  QpConstraints con;
};

/// Random projection QP; four in five are feasible by construction around a
/// random point, the rest use unconstrained random data.
inline QpDraw sample_qp(Rng& rng, std::size_t max_n = 4, std::size_t max_le = 6,
                        std::size_t max_eq = 2) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_n)));
  const auto m_le = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_le)));
  const auto m_eq = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_eq)));
  QpDraw q;
  q.c = random_vector(rng, n, -3, 3);
  const bool planted = rng.uniform(0, 4) != 0;
  const Vector x0 = random_vector(rng, n, -2, 2);
  for (std::size_t i = 0; i < m_le; ++i) {
    q.con.a.push_back(random_vector(rng, n, -3, 3));
    q.con.alpha.push_back(planted ? -linalg::dot(q.con.a.back(), x0) - rng.integer(0, 2)
                                  : rng.integer(-3, 3));
  }
  for (std::size_t j = 0; j < m_eq; ++j) {
    q.con.b.push_back(random_vector(rng, n, -3, 3));
    q.con.beta.push_back(planted ? -linalg::dot(q.con.b.back(), x0) : rng.integer(-3, 3));
  }
  return q;
}

/// Random canonical SQP together with a parameter at which it is feasible.
inline std::pair<SqpInstance, Vector> sample_sqp(Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto m_le = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto m_eq = static_cast<std::size_t>(rng.uniform(0, 1));
  auto sqp = SqpInstance::canonical(n, m_le, m_eq, random_vector(rng, n, -3, 3));
  const Vector x0 = random_vector(rng, n, -2, 2);
  JetPoint data = JetPoint::zero(n, m_le, m_eq, false);
  for (std::size_t i = 0; i < m_le; ++i) {
    data.a[i] = random_vector(rng, n, -3, 3);
    data.alpha[i] = -linalg::dot(data.a[i], x0) - rng.integer(0, 1);
  }
  for (std::size_t j = 0; j < m_eq; ++j) {
    data.b[j] = random_vector(rng, n, -3, 3);
    data.beta[j] = -linalg::dot(data.b[j], x0);
  }
  return {sqp, data.flatten()};
}

/// Canonical SQP for the boundary trichotomy together with its 25 probe
/// nodes. Distinguished constraint m = 1; every other a_i is flipped so that
/// a_i^T a_1 >= 0 and has alpha_i <= 0, which keeps the full problem feasible
/// for every alpha_1 while leaving the deleted problem feasible.
inline std::pair<SqpInstance, std::vector<Vector>> sample_boundary_sqp(Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto m_le = static_cast<std::size_t>(rng.uniform(3, 4));
  auto sqp = SqpInstance::canonical(n, m_le, 0, random_vector(rng, n, -3, 3));
  JetPoint data = JetPoint::zero(n, m_le, 0, false);
  do {
    data.a[0] = random_vector(rng, n, -3, 3);
  } while (linalg::is_zero(data.a[0]));
  for (std::size_t i = 1; i < m_le; ++i) {
    data.a[i] = random_vector(rng, n, -3, 3);
    if (linalg::dot(data.a[i], data.a[0]) < 0)
      for (auto& e : data.a[i]) e = -e;
    data.alpha[i] = rng.integer(-2, 0);
  }
  std::vector<Vector> nodes;
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) {
      JetPoint at = data;
      at.alpha[1] = Rational(-4 + u, 2);
      at.alpha[2] = Rational(-4 + v, 2);
      nodes.push_back(at.flatten());
    }
  return {sqp, nodes};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// codes

inline CheckResult check_code_oracle(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"codes", "compute_code = brute_force_code", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "code-jets"));
  for (std::size_t t = 0; t < trials; ++t) {
    const JetPoint jet = detail::sample_code_jet(rng, false);
    const auto fast = compute_code(jet);
    const auto slow = brute_force_code(jet);
    r.record(fast == slow, "jet " + detail::jet_text(jet) + ": " + to_string(fast) +
                               " vs oracle " + to_string(slow));
  }
  return r;
}

inline CheckResult check_closure_identity(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"codes", "in_closure <=> stationary or MFCQ violated", 0, 0, {}};
  Rng sparse(detail::check_seed(seed, "code-jets"));
  Rng dense(detail::check_seed(seed, "dense-jets"));
  for (std::size_t t = 0; t < 2 * trials; ++t) {
    const JetPoint jet =
        t < trials ? detail::sample_code_jet(sparse, false) : detail::sample_code_jet(dense, true);
    const auto code = compute_code(jet);
    const bool lhs = in_closure(jet);
    r.record(lhs == (code.stationary() || code.mfcq_violated()),
             "jet " + detail::jet_text(jet) + ": in_closure=" + (lhs ? "true" : "false") +
                 " code " + to_string(code));
  }
  return r;
}

inline CheckResult check_perturbation(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"codes", "perturb_toward_sp lands in chi_SP (steps 1e-1..1e-6)", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "mf-jets"));
  for (std::size_t t = 0; t < trials; ++t) {
    const JetPoint jet = detail::sample_mf_not_sp_jet(rng);
    Rational step = 1;
    for (int k = 1; k <= 6; ++k) {
      step /= 10;
      const bool good = is_stationary(perturb_toward_sp(jet, step));
      r.record(good, "jet " + detail::jet_text(jet) + " step 1e-" + std::to_string(k));
    }
  }
  return r;
}

inline CheckResult check_minimality_and_scaling(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"codes", "pairs minimal; code invariant under positive scaling", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "dense-jets"));
  for (std::size_t t = 0; t < trials; ++t) {
    JetPoint jet = detail::sample_code_jet(rng, true);
    const auto code = compute_code(jet);
    bool minimal = true;
    for (const auto& pr : code.pairs) {
      for (int i : pr.I) {
        IndexPair smaller = pr;
        smaller.I.erase(i);
        if (smaller.size() > 0 && pair_qualifies(jet, smaller)) minimal = false;
      }
      for (int j : pr.J) {
        IndexPair smaller = pr;
        smaller.J.erase(j);
        if (smaller.size() > 0 && pair_qualifies(jet, smaller)) minimal = false;
      }
    }
    const Rational s = rng.fraction(1, 5, 3);
    JetPoint scaled = jet;
    for (auto& ai : scaled.a)
      for (auto& e : ai) e *= s;
    for (auto& bj : scaled.b)
      for (auto& e : bj) e *= s;
    for (auto& e : *scaled.a_star) e *= s;
    r.record(minimal && compute_code(scaled) == code,
             "jet " + detail::jet_text(jet) + (minimal ? ": scaling changed the code" : ": non-minimal pair"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// qp

inline CheckResult check_qp_oracle(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"qp", "solve_qp = active-subset enumeration; exact KKT; order independent", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "qp"));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto q = detail::sample_qp(rng);
    const auto fast = solve_qp(q.c, q.con);
    const auto slow = brute_force_qp(q.c, q.con);
    bool good = fast.status == slow.status;
    std::string why = "status differs";
    if (good && fast.status == QpStatus::optimal) {
      good = fast.x_star == slow.x_star && fast.active == slow.active;
      why = "minimizer differs from oracle";
      if (good && !kkt_certified(q.c, q.con, fast)) {
        good = false;
        why = "KKT certificate not exact";
      }
      if (good) {
        QpConstraints rev = q.con;
        std::reverse(rev.a.begin(), rev.a.end());
        std::reverse(rev.alpha.begin(), rev.alpha.end());
        std::reverse(rev.b.begin(), rev.b.end());
        std::reverse(rev.beta.begin(), rev.beta.end());
        const auto again = solve_qp(q.c, rev);
        good = again.status == QpStatus::optimal && again.x_star == fast.x_star;
        why = "reordered constraints changed the minimizer";
      }
    }
    r.record(good, "instance " + std::to_string(t) + ": " + why);
  }
  return r;
}

inline CheckResult check_normal_form(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"qp", "normal form round trip and Jacobian determinant +-1", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "normal-form"));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m_le = static_cast<std::size_t>(rng.uniform(0, 3));
    const auto m_eq = static_cast<std::size_t>(rng.uniform(0, 2));
    const JetPoint jet = random_jet(rng, n, m_le, m_eq);
    bool good = false;
    std::string why;
    try {
      const auto nf = build_normal_form(jet);
      const auto jac = normal_form_jacobian(jet);
      good = nf.jet_check == jet && abs(jac.determinant) == 1 && jac.upper_triangular;
      why = "det " + format_rational(jac.determinant);
    } catch (const std::exception& e) {
      why = e.what();
    }
    r.record(good, "jet " + detail::jet_text(jet) + ": " + why);
  }
  return r;
}

// ---------------------------------------------------------------------------
// transforms

inline CheckResult check_sp2mf_correspondence(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"transforms", "SP2MF maps stationary points to MF_{m*} with code (I0*, I)", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "sp2mf"));
  for (std::size_t t = 0; t < trials; ++t) {
    auto [sqp, y] = detail::sample_sqp(rng);
    const auto sol = solve_qp(sqp.c, constraints_of(sqp.constraints_at(y)));
    if (sol.status != QpStatus::optimal) {
      r.record(false, "sampled SQP unexpectedly infeasible");
      continue;
    }
    const PolyProblem prob = sqp.to_problem();
    const auto before = point_code(prob, sol.x_star, y);
    const auto tp = sp2mf(prob);
    const auto [x2, y2] = tp.map_point(sol.x_star, y);
    const auto after = point_code(tp.problem, x2, y2);
    const int star = static_cast<int>(prob.size.m_le) + 1;
    const bool good = before.feasible && before.code.stationary() && after.feasible &&
                      after.code.mfcq_violated() && after.code.i0.count(star) &&
                      after.code == code_action_apply(*tp.code_action, before.code);
    r.record(good, "SQP " + std::to_string(t) + ": before " + to_string(before.code) +
                       ", after " + to_string(after.code));
  }
  return r;
}

namespace detail {

inline std::vector<Vector> integer_box(std::size_t dim, long lo, long hi) {
  std::vector<Vector> out{Vector{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (long k = lo; k <= hi; ++k) {
        Vector w = v;
        w.push_back(Rational(k));
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Counts disagreements of (x,y) in MF(g) <=> (x,0,y) in SP_0 over a grid.
inline void mf2sp_grid(const PolyProblem& g, const std::vector<Vector>& xs,
                       const std::vector<Vector>& ys, CheckResult& r,
                       const std::string& label) {
  const auto tp = mf2sp(g);
  for (const auto& y : ys)
    for (const auto& x : xs) {
      const auto before = point_code(tp.source, x, y);
      const bool in_mf = before.feasible && before.code.mfcq_violated();
      const auto [x2, y2] = tp.map_point(x, y);
      const auto after = point_code(tp.problem, x2, y2);
      const bool in_sp0 = after.feasible && after.code.stationary() &&
                          tp.problem.f->eval(x2, y2) == 0;
      bool good = in_mf == in_sp0;
      if (good && before.feasible)
        good = after.code == code_action_apply(*tp.code_action, before.code);
      r.record(good, label + " at x=" + jet_text(JetPoint{x.size(), {}, {}, {}, {}, x}) +
                         ": MF=" + (in_mf ? "yes" : "no") + " SP0=" + (in_sp0 ? "yes" : "no"));
    }
}

inline PolyProblem sample_mf_problem(Rng& rng) {
  ProblemSize size{static_cast<std::size_t>(rng.uniform(1, 2)),
                   static_cast<std::size_t>(rng.uniform(1, 3)), 0,
                   static_cast<std::size_t>(rng.uniform(0, 1))};
  PolyProblem prob = random_problem(rng, size, false, 3, 2);
  if (size.m_le >= 2 && rng.chance(1, 2)) prob.g[1] = -prob.g[0];
  return prob;
}

}  // namespace detail

inline CheckResult check_mf2sp_equivalence(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"transforms", "MF2SP: (x,y) in MF <=> (x,0,y) in SP_0 with code (I0, I*)", 0, 0, {}};
  const PolyProblem wedge = double_wedge();
  std::vector<Vector> xs;
  for (int k = -4; k <= 4; ++k) xs.push_back({Rational(k, 2)});
  detail::mf2sp_grid(wedge, xs, {Vector{}}, r, "double-wedge");
  Rng rng(detail::check_seed(seed, "mf2sp"));
  for (std::size_t t = 0; t < trials; ++t) {
    const PolyProblem g = detail::sample_mf_problem(rng);
    detail::mf2sp_grid(g, detail::integer_box(g.size.n, -2, 2),
                       detail::integer_box(g.size.p, -1, 1), r,
                       "random problem " + std::to_string(t));
  }
  return r;
}

inline CheckResult check_commutation(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"transforms", "f' o T^var = T^tar o f for SLACK, SP2MF, MF2SP", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "commutation"));
  auto samples_for = [&](const ProblemSize& s) {
    std::vector<std::pair<Vector, Vector>> out;
    for (int k = 0; k < 10; ++k)
      out.push_back({random_vector(rng, s.n, -3, 3), random_vector(rng, s.p, -3, 3)});
    return out;
  };
  auto run = [&](const PolyProblem& prob, const std::string& label) {
    auto one = [&](const TransformedProblem& tp) {
      const auto rep = verify_commutation(tp, samples_for(prob.size));
      r.record(rep.ok(), label + " / " + to_string(tp.kind) +
                             (rep.ok() ? "" : ": " + rep.failures.front().reason));
    };
    one(slack_problem(prob));
    if (prob.f) one(sp2mf(prob));
    if (prob.size.m_eq == 0) one(mf2sp(prob));
  };
  for (const auto& ex : builtin_examples()) run(ex.problem, ex.name);
  for (std::size_t t = 0; t < trials; ++t) {
    ProblemSize size{static_cast<std::size_t>(rng.uniform(1, 3)),
                     static_cast<std::size_t>(rng.uniform(0, 3)),
                     static_cast<std::size_t>(rng.uniform(0, 1)),
                     static_cast<std::size_t>(rng.uniform(0, 2))};
    run(random_problem(rng, size, rng.chance(2, 3)), "random problem " + std::to_string(t));
  }
  return r;
}

inline CheckResult check_phi_consistency(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"transforms", "code(phi(jet,Q)) = code(T2(jet)); phi inverse exact", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "phi"));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
    JetDraw d;
    d.objective = false;
    const JetPoint jet = random_jet(rng, n, m, 0, d);
    const auto target = compute_code(t2_target(jet));
    const auto expected =
        code_action_apply({I0Action::identity, PairAction::star_each_pair}, compute_code(jet));
    bool good = target == expected;
    for (int k = 0; k < 20 && good; ++k) {
      PhiParameter q;
      for (std::size_t i = 0; i < m; ++i) q.a_last.push_back(-rng.fraction(1, 4, 3));
      q.star_last = rng.fraction(1, 4, 3);
      q.v = random_vector(rng, n, -2, 2);
      const JetPoint img = phi_deform(jet, q);
      const auto back = phi_inverse(img);
      good = compute_code(img) == target && back.first == jet &&
             back.second.flatten() == q.flatten();
    }
    good = good && phi_deform(jet, PhiParameter::base(n, m)) == t2_target(jet);
    r.record(good, "MF jet " + detail::jet_text(jet));
  }
  return r;
}

inline CheckResult check_action_composition(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"transforms", "provenance chains compose to the declared code action", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "composition"));
  const auto wedge = mf2sp(double_wedge());
  r.record(chain_action(wedge.provenance) == *wedge.code_action, "mf2sp chain action");
  const auto sp = sp2mf(halfspace_qp());
  r.record(chain_action(sp.provenance) == *sp.code_action, "sp2mf chain action");
  for (std::size_t t = 0; t < trials; ++t) {
    JetDraw d;
    d.lo = -1;
    d.hi = 1;
    d.zero_alpha_num = 3;
    d.zero_alpha_den = 4;
    d.objective = rng.chance(1, 2);
    const JetPoint jet = random_jet(rng, static_cast<std::size_t>(rng.uniform(1, 2)),
                                    static_cast<std::size_t>(rng.uniform(0, 3)), 0, d);
    const auto code = compute_code(jet);
    // Sequential application of a chain equals the composite action.
    std::vector<CodeAction> chain;
    if (jet.has_objective()) {
      chain = {{I0Action::add_m_star, PairAction::identity}, {}};
    } else {
      chain = {{}, {I0Action::identity, PairAction::star_each_pair}, {}};
    }
    CombinatorialCode seq = code;
    CodeAction composite;
    for (const auto& a : chain) {
      seq = code_action_apply(a, seq);
      composite = compose(composite, a);
    }
    r.record(seq == code_action_apply(composite, code), "jet " + detail::jet_text(jet));
  }
  return r;
}

// ---------------------------------------------------------------------------
// boundary

inline CheckResult check_boundary_trichotomy(std::uint64_t seed, std::size_t trials) {
  CheckResult r{"boundary", "alpha_m = A-1 / A / A+1 gives inactive / SP*_m code / active", 0, 0, {}};
  Rng rng(detail::check_seed(seed, "boundary"));
  for (std::size_t t = 0; t < trials; ++t) {
    auto [sqp, nodes] = detail::sample_boundary_sqp(rng);
    try {
      const auto rep = boundary_probe(sqp, 1, nodes);
      for (std::size_t k = 0; k < rep.entries.size(); ++k) {
        const auto& e = rep.entries[k];
        r.record(e.ok(), "SQP " + std::to_string(t) + " node " + std::to_string(k) +
                             ": A=" + format_rational(e.boundary) + " below=" +
                             (e.below_inactive ? "ok" : "bad") + " at=" +
                             (e.at_sp_star ? "ok" : "bad") + " above=" +
                             (e.above_active ? "ok" : "bad") + " " + e.note);
      }
    } catch (const std::exception& e) {
      r.record(false, "SQP " + std::to_string(t) + ": " + e.what());
    }
  }
  return r;
}

/// The two-constraint halfspace SQP over a 41 x 41 grid on [-1, 1]^2.
inline GridSpec frontier_grid() {
  return GridSpec{{{Rational(-1), Rational(1), 41}, {Rational(-1), Rational(1), 41}}};
}

inline CheckResult check_grid_frontier() {
  CheckResult r{"boundary", "halfspace-sqp-2 grid: SP connected, MF is its frontier", 0, 0, {}};
  const auto sqp = find_builtin_sqp("halfspace-sqp-2")->sqp;
  const auto grid = frontier_grid();
  const auto records = trace_grid(sqp, grid);
  const auto issues = check_trace_consistency(records);
  const auto topo = analyze_grid_topology(records, grid);
  r.record(issues.empty(), issues.empty() ? "" : issues.front());
  r.record(topo.sp_components == 1,
           "sp records form " + std::to_string(topo.sp_components) + " components");
  r.record(topo.mf_nodes > 0 && topo.mf_not_frontier == 0,
           std::to_string(topo.mf_not_frontier) + " of " + std::to_string(topo.mf_nodes) +
               " mf nodes are not frontier nodes");
  r.record(topo.sp_with_mfcq_violation == 0, "an sp record violates MFCQ");
  return r;
}

namespace detail {

/// Jet of the cone example family at a sampled (x, y), biased toward the
/// special loci beta1 = 0 and det(b1 | a_star) = 0.
inline JetPoint sample_example_jet(Rng& rng, const PolyProblem& ex) {
  Vector x = random_vector(rng, 2, -2, 2);
  Vector y = random_vector(rng, 3, -2, 2);
  if (rng.chance(1, 3)) {
    const Rational k = rng.integer(-2, 2);
    y[0] = k * x[0];
    y[1] = k * x[1];
  }
  if (rng.chance(1, 2)) y[2] = -(x[0] * y[0] + x[1] * y[1]);
  return jet_sp(ex, x, y);
}

}  // namespace detail

inline CheckResult check_cone_example(std::uint64_t seed, std::size_t samples) {
  CheckResult r{"boundary", "cone example: closure = {beta1 = 0, det(b1|a*) = 0}; vertex; breakdown", 0, 0, {}};
  const PolyProblem ex = cone_example();
  Rng rng(detail::check_seed(seed, "example-5.1"));
  for (std::size_t t = 0; t < samples; ++t) {
    const JetPoint jet = detail::sample_example_jet(rng, ex);
    const auto& b = jet.b[0];
    const auto& s = *jet.a_star;
    const bool expected = jet.beta[0] == 0 && b[0] * s[1] - b[1] * s[0] == 0;
    const bool got = in_closure(jet) && equalities_hold(jet);
    r.record(got == expected, "jet " + detail::jet_text(jet));
  }
  const auto vertex = point_code(ex, {0, 0}, {0, 0, 0});
  r.record(vertex.feasible && vertex.code.stationary() && vertex.code.mfcq_violated(),
           "vertex code " + to_string(vertex.code));
  std::vector<Vector> path;
  for (int k = 10; k >= 0; --k) path.push_back({Rational(k, 10), 0, Rational(-k, 10)});
  const auto cont = continuation_path(ex, IndexPair{{}, {1}}, {1.0, 0.0}, {-2.0}, path);
  r.record(cont.breakdown.has_value() && cont.breakdown_y &&
               abs((*cont.breakdown_y)[0]) <= Rational(1, 10),
           "continuation toward (y1, y2) = 0 did not report breakdown near it");
  return r;
}

// ---------------------------------------------------------------------------
// Suites

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 100;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"codes", "qp", "transforms", "boundary", "all"};
  return names;
}

inline std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), opt.suite) == suite_names().end())
    throw std::invalid_argument("unknown suite '" + opt.suite + "'");
  const bool all = opt.suite == "all";
  const auto seed = opt.seed;
  const auto n = opt.trials;
  std::vector<CheckResult> out;
  if (all || opt.suite == "codes") {
    out.push_back(check_code_oracle(seed, n));
    out.push_back(check_closure_identity(seed, n));
    out.push_back(check_perturbation(seed, n));
    out.push_back(check_minimality_and_scaling(seed, n));
  }
  if (all || opt.suite == "qp") {
    out.push_back(check_qp_oracle(seed, n));
    out.push_back(check_normal_form(seed, n));
  }
  if (all || opt.suite == "transforms") {
    out.push_back(check_sp2mf_correspondence(seed, n));
    out.push_back(check_mf2sp_equivalence(seed, std::min<std::size_t>(n, 20)));
    out.push_back(check_commutation(seed, n));
    out.push_back(check_phi_consistency(seed, n));
    out.push_back(check_action_composition(seed, n));
  }
  if (all || opt.suite == "boundary") {
    out.push_back(check_boundary_trichotomy(seed, n));
    if (n > 0) out.push_back(check_grid_frontier());
    out.push_back(check_cone_example(seed, n));
  }
  return out;
}

inline std::string format_report(const std::vector<CheckResult>& results,
                                 const VerifyOptions& opt) {
  std::ostringstream os;
  os << "verify suite=" << opt.suite << " seed=" << opt.seed << " trials=" << opt.trials << "\n";
  std::size_t failed = 0;
  for (const auto& r : results) {
    os << "[" << r.suite << "] " << r.name << ": " << r.passed << "/" << r.total << " "
       << (r.ok() ? "ok" : "FAILED") << "\n";
    for (const auto& f : r.failures) os << "    " << f << "\n";
    if (!r.ok()) ++failed;
  }
  os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return os.str();
}

}  // namespace stratpoint
