#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratpoint/code_engine.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/poly.hpp"
#include "stratpoint/problem.hpp"

namespace stratpoint {

// ---------------------------------------------------------------------------
// Code actions

enum class I0Action { identity, add_m_star };
enum class PairAction { identity, star_each_pair };

struct CodeAction {
  I0Action i0_action = I0Action::identity;
  PairAction pair_action = PairAction::identity;

  friend bool operator==(const CodeAction&, const CodeAction&) = default;
};

inline std::string to_string(const CodeAction& a) {
  std::string i0 = a.i0_action == I0Action::identity ? "id" : "add_m_star";
  std::string pr = a.pair_action == PairAction::identity ? "id" : "star_each_pair";
  return "(I0: " + i0 + ", pairs: " + pr + ")";
}

/// add_m_star turns the objective index into an ordinary active inequality
/// (m_le grows by one, the code loses its objective). star_each_pair adjoins
/// a fresh objective index m_le + 1 to every pair.
inline CombinatorialCode code_action_apply(const CodeAction& action,
                                           CombinatorialCode code) {
  if (action.i0_action == I0Action::add_m_star) {
    const int star = static_cast<int>(code.m_le) + 1;
    code.m_le += 1;
    code.has_objective = false;
    if (code.feasible) code.i0.insert(star);
  }
  if (action.pair_action == PairAction::star_each_pair) {
    const int star = static_cast<int>(code.m_le) + 1;
    code.has_objective = true;
    std::set<IndexPair> starred;
    for (auto pr : code.pairs) {
      pr.I.insert(star);
      starred.insert(std::move(pr));
    }
    code.pairs = std::move(starred);
  }
  return code;
}

/// The action "first, then second" as a single action. Within one action the
/// I0 rewrite runs before the pair rewrite, so a composite is representable
/// only when no step has to run twice and no pair rewrite precedes an I0
/// rewrite.
inline CodeAction compose(const CodeAction& first, const CodeAction& second) {
  const bool twice_i0 = first.i0_action != I0Action::identity &&
                        second.i0_action != I0Action::identity;
  const bool twice_pairs = first.pair_action != PairAction::identity &&
                           second.pair_action != PairAction::identity;
  const bool reordered = first.pair_action != PairAction::identity &&
                         second.i0_action != I0Action::identity;
  if (twice_i0 || twice_pairs || reordered)
    throw std::invalid_argument("code actions " + to_string(first) + " then " +
                                to_string(second) + " do not compose to a single action");
  CodeAction out;
  out.i0_action = first.i0_action != I0Action::identity ? first.i0_action
                                                         : second.i0_action;
  out.pair_action = first.pair_action != PairAction::identity
                        ? first.pair_action
                        : second.pair_action;
  return out;
}

// ---------------------------------------------------------------------------
// Elementary transformations

struct ElementaryTransform {
  enum class Kind { type1a, type1b, type2, type3 };

  Kind kind = Kind::type1a;
  std::string name;
  // type 1: inducing function and sign of the +-(g - y_new) component
  std::vector<Poly> inducing;
  int sign = +1;
  // type 2: constant block appended in the target space
  Vector q;
  // type 3: target-space diffeomorphism with explicit inverse
  std::function<Vector(const Vector&)> forward;
  std::function<Vector(const Vector&)> inverse;
  std::function<bool(const Vector&)> in_domain;
  CodeAction code_action;
};

inline const char* to_string(ElementaryTransform::Kind k) {
  switch (k) {
    case ElementaryTransform::Kind::type1a: return "type1a";
    case ElementaryTransform::Kind::type1b: return "type1b";
    case ElementaryTransform::Kind::type2: return "type2";
    case ElementaryTransform::Kind::type3: return "type3";
  }
  return "?";
}

enum class TransformKind { slack, sp2mf, mf2sp };

inline const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::slack: return "slack";
    case TransformKind::sp2mf: return "sp2mf";
    case TransformKind::mf2sp: return "mf2sp";
  }
  return "?";
}

struct TransformedProblem {
  TransformKind kind = TransformKind::sp2mf;
  PolyProblem source;
  PolyProblem problem;
  /// New coordinates (x', y') as polynomials in the source (x, y).
  std::vector<Poly> var_map;
  /// Absent for the problem-level slack rewrite, which relabels equality
  /// indices instead of acting through one of the two code rewrites.
  std::optional<CodeAction> code_action;
  /// Applied right to left, as in T1 o T3 o T2.
  std::vector<ElementaryTransform> provenance;

  std::pair<Vector, Vector> map_point(const Vector& x, const Vector& y) const {
    require_point(source.size, x.size(), y.size());
    const std::size_t n2 = problem.size.n;
    Vector x2, y2;
    for (std::size_t k = 0; k < var_map.size(); ++k)
      (k < n2 ? x2 : y2).push_back(var_map[k].eval(x, y));
    return {x2, y2};
  }
};

/// Folds the code actions of a provenance chain (applied right to left).
inline CodeAction chain_action(const std::vector<ElementaryTransform>& chain) {
  CodeAction acc;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    acc = compose(acc, it->code_action);
  return acc;
}

namespace detail {

inline std::vector<std::size_t> shifted_space(std::size_t n, std::size_t p,
                                              std::size_t x_gap) {
  std::vector<std::size_t> t(n + p);
  for (std::size_t k = 0; k < n; ++k) t[k] = k;
  for (std::size_t l = 0; l < p; ++l) t[n + l] = n + x_gap + l;
  return t;
}

inline std::vector<Poly> identity_map(std::size_t n, std::size_t p) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < n + p; ++k) out.push_back(Poly::variable(n, p, k));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SLACK on a single defining function, F = [0, inf)

struct SlackFragment {
  Poly f;                       // over (n, p)
  Poly first, second;           // f' components over (n + 1, p)
  std::vector<Poly> var_map;    // (x, y) -> (x, f(x, y), y)

  /// {f >= 0} membership through the transformed description.
  bool member_after(const Vector& x, const Vector& y) const {
    Vector x2 = x;
    x2.push_back(f.eval(x, y));
    return second.eval(x2, y) == 0 && first.eval(x2, y) >= 0;
  }
};

inline SlackFragment apply_slack(const Poly& f) {
  const std::size_t n = f.n(), p = f.p();
  SlackFragment out;
  out.f = f;
  const Poly s = Poly::x(n + 1, p, n);
  out.first = s;
  out.second = s - f.embed(n + 1, p, detail::shifted_space(n, p, 1));
  out.var_map = detail::identity_map(n, p);
  out.var_map.insert(out.var_map.begin() + static_cast<std::ptrdiff_t>(n), f);
  return out;
}

/// Problem-level SLACK: each g_i <= 0 becomes s_i >= 0 with s_i + g_i = 0.
/// New state (x, s), size (n + m_le, m_le, m_eq + m_le, p).
inline TransformedProblem slack_problem(const PolyProblem& prob) {
  require_valid(prob);
  const auto& s = prob.size;
  const std::size_t n2 = s.n + s.m_le;
  const auto target = detail::shifted_space(s.n, s.p, s.m_le);
  TransformedProblem t;
  t.kind = TransformKind::slack;
  t.source = prob;
  t.problem.size = {n2, s.m_le, s.m_eq + s.m_le, s.p};
  if (prob.f) t.problem.f = prob.f->embed(n2, s.p, target);
  for (std::size_t i = 0; i < s.m_le; ++i)
    t.problem.g.push_back(-Poly::x(n2, s.p, s.n + i));
  for (const auto& hj : prob.h) t.problem.h.push_back(hj.embed(n2, s.p, target));
  for (std::size_t i = 0; i < s.m_le; ++i)
    t.problem.h.push_back(Poly::x(n2, s.p, s.n + i) + prob.g[i].embed(n2, s.p, target));
  t.var_map = detail::identity_map(s.n, s.p);
  for (std::size_t i = 0; i < s.m_le; ++i)
    t.var_map.insert(t.var_map.begin() + static_cast<std::ptrdiff_t>(s.n + i), -prob.g[i]);
  for (std::size_t i = 0; i < s.m_le; ++i) {
    ElementaryTransform e;
    e.kind = ElementaryTransform::Kind::type1b;
    e.name = "SLACK(g" + std::to_string(i + 1) + ")";
    e.inducing = {-prob.g[i]};
    e.sign = -1;
    t.provenance.push_back(std::move(e));
  }
  return t;
}

// ---------------------------------------------------------------------------
// SP2MF

/// Target-space map (sigma_SP) -> (sigma_SP, 0) read as an MF jet with the
/// objective gradient as inequality m* of value 0.
inline JetPoint sp2mf_target(const JetPoint& jet) {
  if (!jet.has_objective())
    throw std::invalid_argument("sp2mf needs a jet with objective gradient");
  JetPoint out = jet.without_objective();
  out.a.push_back(*jet.a_star);
  out.alpha.push_back(Rational(0));
  return out;
}

inline TransformedProblem sp2mf(const PolyProblem& prob) {
  require_valid(prob);
  if (!prob.f) throw std::invalid_argument("sp2mf needs an objective");
  const auto& s = prob.size;
  const std::size_t p2 = s.p + 1;
  const auto target = detail::shifted_space(s.n, s.p, 0);
  TransformedProblem t;
  t.kind = TransformKind::sp2mf;
  t.source = prob;
  t.problem.size = {s.n, s.m_le + 1, s.m_eq, p2};
  for (const auto& gi : prob.g) t.problem.g.push_back(gi.embed(s.n, p2, target));
  t.problem.g.push_back(prob.f->embed(s.n, p2, target) -
                        Poly::y(s.n, p2, s.p));
  for (const auto& hj : prob.h) t.problem.h.push_back(hj.embed(s.n, p2, target));
  t.var_map = detail::identity_map(s.n, s.p);
  t.var_map.push_back(*prob.f);
  t.code_action = CodeAction{I0Action::add_m_star, PairAction::identity};

  ElementaryTransform e;
  e.kind = ElementaryTransform::Kind::type1a;
  e.name = "SP2MF";
  e.inducing = {*prob.f};
  e.sign = +1;
  e.code_action = *t.code_action;
  t.provenance.push_back(std::move(e));
  return t;
}

// ---------------------------------------------------------------------------
// MF2SP and its pieces

/// Type-2 target map: (a_i, alpha_i) -> ((a_i, -1), alpha_i), a* = (0, ..., 0, 1).
inline JetPoint t2_target(const JetPoint& jet_mf) {
  jet_mf.check();
  if (jet_mf.m_eq() != 0) throw std::invalid_argument("t2_target needs m_eq = 0");
  JetPoint out = jet_mf.without_objective();
  out.n = jet_mf.n + 1;
  for (auto& ai : out.a) ai.push_back(Rational(-1));
  Vector star(out.n, Rational(0));
  star.back() = 1;
  out.a_star = std::move(star);
  return out;
}

/// Deformation parameter ((a_{i,n+1})_i, a_{m*,n+1}, v).
struct PhiParameter {
  Vector a_last;
  Rational star_last;
  Vector v;

  static PhiParameter base(std::size_t n, std::size_t m) {
    return {Vector(m, Rational(-1)), Rational(1), Vector(n, Rational(0))};
  }
  bool in_domain() const {
    for (const auto& e : a_last)
      if (e >= 0) return false;
    return star_last > 0;
  }
  Vector flatten() const {
    Vector out = a_last;
    out.push_back(star_last);
    out.insert(out.end(), v.begin(), v.end());
    return out;
  }
  static PhiParameter unflatten(const Vector& q, std::size_t n, std::size_t m) {
    if (q.size() != m + 1 + n) throw DimensionError("phi: parameter length");
    PhiParameter out;
    out.a_last.assign(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(m));
    out.star_last = q[m];
    out.v.assign(q.begin() + static_cast<std::ptrdiff_t>(m + 1), q.end());
    return out;
  }
};

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// phi(sigma_MF, Q) = ((a_{i,n+1} (-a_i + v, 1), alpha_i)_i, a_{m*,n+1} (v, 1)).
inline JetPoint phi_deform(const JetPoint& jet_mf, const PhiParameter& q) {
  jet_mf.check();
  if (jet_mf.m_eq() != 0) throw std::invalid_argument("phi needs m_eq = 0");
  const std::size_t n = jet_mf.n, m = jet_mf.m_le();
  if (q.a_last.size() != m || q.v.size() != n)
    throw DimensionError("phi: parameter does not match jet size");
  if (!q.in_domain())
    throw DomainError("phi: parameter outside U (need a_{i,n+1} < 0, a_{m*,n+1} > 0)");
  JetPoint out = JetPoint::zero(n + 1, m, 0, true);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      out.a[i][k] = q.a_last[i] * (q.v[k] - jet_mf.a[i][k]);
    out.a[i][n] = q.a_last[i];
    out.alpha[i] = jet_mf.alpha[i];
  }
  for (std::size_t k = 0; k < n; ++k) (*out.a_star)[k] = q.star_last * q.v[k];
  (*out.a_star)[n] = q.star_last;
  return out;
}

/// Explicit inverse of phi on its image.
inline std::pair<JetPoint, PhiParameter> phi_inverse(const JetPoint& jet_sp) {
  jet_sp.check();
  if (!jet_sp.has_objective() || jet_sp.m_eq() != 0 || jet_sp.n == 0)
    throw std::invalid_argument("phi inverse needs an SP jet with m_eq = 0");
  const std::size_t n = jet_sp.n - 1, m = jet_sp.m_le();
  PhiParameter q;
  q.star_last = (*jet_sp.a_star)[n];
  for (std::size_t i = 0; i < m; ++i) q.a_last.push_back(jet_sp.a[i][n]);
  if (!q.in_domain()) throw DomainError("phi inverse: jet outside phi's image");
  for (std::size_t k = 0; k < n; ++k) q.v.push_back((*jet_sp.a_star)[k] / q.star_last);
  JetPoint mf = JetPoint::zero(n, m, 0, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      mf.a[i][k] = q.v[k] - jet_sp.a[i][k] / q.a_last[i];
    mf.alpha[i] = jet_sp.alpha[i];
  }
  return {mf, q};
}

inline TransformedProblem mf2sp(const PolyProblem& prob) {
  require_valid(prob);
  const auto& s = prob.size;
  if (s.m_eq != 0) throw std::invalid_argument("mf2sp requires m_eq = 0");
  const std::size_t n2 = s.n + 1;
  const auto target = detail::shifted_space(s.n, s.p, 1);
  TransformedProblem t;
  t.kind = TransformKind::mf2sp;
  t.source = prob;
  t.source.f.reset();
  t.problem.size = {n2, s.m_le, 0, s.p};
  const Poly last = Poly::x(n2, s.p, s.n);
  t.problem.f = last;
  for (const auto& gi : prob.g) t.problem.g.push_back(gi.embed(n2, s.p, target) - last);
  t.var_map = detail::identity_map(s.n, s.p);
  t.var_map.insert(t.var_map.begin() + static_cast<std::ptrdiff_t>(s.n),
                   Poly(s.n, s.p));
  t.code_action = CodeAction{I0Action::identity, PairAction::star_each_pair};

  const std::size_t n = s.n, m = s.m_le;
  ElementaryTransform t2;
  t2.kind = ElementaryTransform::Kind::type2;
  t2.name = "T2";
  t2.q = PhiParameter::base(n, m).flatten();
  t2.code_action = *t.code_action;

  // Type 3 acts on JMF x R^q, flattened as (sigma_MF, Q).
  const std::size_t mf_dim = jet_dim(n, m, 0) - n;
  ElementaryTransform t3;
  t3.kind = ElementaryTransform::Kind::type3;
  t3.name = "T3(phi)";
  t3.in_domain = [=](const Vector& z) {
    if (z.size() != mf_dim + m + 1 + n) return false;
    return PhiParameter::unflatten(Vector(z.begin() + static_cast<std::ptrdiff_t>(mf_dim), z.end()), n, m)
        .in_domain();
  };
  t3.forward = [=](const Vector& z) {
    const Vector sigma(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(mf_dim));
    const Vector qv(z.begin() + static_cast<std::ptrdiff_t>(mf_dim), z.end());
    return phi_deform(JetPoint::unflatten(sigma, n, m, 0, false),
                      PhiParameter::unflatten(qv, n, m))
        .flatten();
  };
  t3.inverse = [=](const Vector& w) {
    auto [mf, q] = phi_inverse(JetPoint::unflatten(w, n + 1, m, 0, true));
    Vector out = mf.flatten();
    const Vector qv = q.flatten();
    out.insert(out.end(), qv.begin(), qv.end());
    return out;
  };

  ElementaryTransform t1;
  t1.kind = ElementaryTransform::Kind::type1a;
  t1.name = "T1(+)";
  t1.inducing = {Poly(s.n, s.p)};
  t1.sign = +1;

  t.provenance = {t1, t3, t2};
  return t;
}

// ---------------------------------------------------------------------------
// Commutation checks

struct CommutationFailure {
  std::size_t sample = 0;
  std::string reason;
};

struct CommutationReport {
  std::size_t samples = 0;
  std::vector<CommutationFailure> failures;
  bool ok() const { return failures.empty(); }
};

inline CommutationReport verify_commutation(
    const TransformedProblem& t,
    const std::vector<std::pair<Vector, Vector>>& samples) {
  CommutationReport rep;
  rep.samples = samples.size();
  const std::size_t n = t.source.size.n;
  if (t.code_action && !t.provenance.empty() &&
      chain_action(t.provenance) != *t.code_action)
    rep.failures.push_back({0, "provenance chain action differs from the declared action"});
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [x, y] = samples[s];
    auto fail = [&](const std::string& why) { rep.failures.push_back({s, why}); };
    try {
      const auto [x2, y2] = t.map_point(x, y);
      switch (t.kind) {
        case TransformKind::sp2mf: {
          const JetPoint before = jet_sp(t.source, x, y);
          const JetPoint after = jet_sp(t.problem, x2, y2);
          if (after != sp2mf_target(before)) {
            fail("jet of transformed problem differs from T^tar(jet)");
            break;
          }
          if (compute_code(after) != code_action_apply(*t.code_action, compute_code(before)))
            fail("code(after) differs from action(code(before))");
          break;
        }
        case TransformKind::mf2sp: {
          const JetPoint before = jet_mf(t.source, x, y);
          const JetPoint after = jet_sp(t.problem, x2, y2);
          const JetPoint expected = t2_target(before);
          if (after != expected || t.problem.f->eval(x2, y2) != 0) {
            fail("jet of transformed problem differs from T^tar(jet)");
            break;
          }
          const std::size_t m = t.source.size.m_le;
          if (phi_deform(before, PhiParameter::base(n, m)) != expected)
            fail("phi at the base parameter differs from the type-2 target map");
          if (compute_code(after) != code_action_apply(*t.code_action, compute_code(before)))
            fail("code(after) differs from action(code(before))");
          break;
        }
        case TransformKind::slack: {
          const auto& src = t.source;
          const auto& dst = t.problem;
          bool same = !src.f || dst.f->eval(x2, y2) == src.f->eval(x, y);
          for (std::size_t i = 0; i < src.g.size(); ++i)
            same = same && dst.g[i].eval(x2, y2) == src.g[i].eval(x, y);
          for (std::size_t j = 0; j < src.h.size(); ++j)
            same = same && dst.h[j].eval(x2, y2) == src.h[j].eval(x, y);
          for (std::size_t i = 0; i < src.g.size(); ++i)
            same = same && dst.h[src.h.size() + i].eval(x2, y2) == 0;
          if (!same) fail("f'(T^var(x, y)) differs from T^tar(f(x, y))");
          break;
        }
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return rep;
}

inline CommutationReport verify_commutation(const SlackFragment& t,
                                            const std::vector<Vector>& samples) {
  CommutationReport rep;
  rep.samples = samples.size();
  const std::size_t n = t.f.n();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Vector& xy = samples[s];
    if (xy.size() != n + t.f.p()) {
      rep.failures.push_back({s, "sample length"});
      continue;
    }
    const Vector x(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(n));
    const Vector y(xy.begin() + static_cast<std::ptrdiff_t>(n), xy.end());
    Vector x2;
    for (std::size_t k = 0; k <= n; ++k) x2.push_back(t.var_map[k].eval(x, y));
    const Rational v = t.f.eval(x, y);
    if (t.first.eval(x2, y) != v || t.second.eval(x2, y) != 0)
      rep.failures.push_back({s, "f'(T^var(x)) differs from (f(x), 0)"});
    else if ((v >= 0) != t.member_after(x, y))
      rep.failures.push_back({s, "membership differs"});
  }
  return rep;
}

}  // namespace stratpoint
