#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratpoint/exact_lp.hpp"
#include "stratpoint/jet.hpp"
#include "stratpoint/linalg.hpp"

namespace stratpoint {

struct ActiveSet {
  std::set<int> i0;
  bool feasible = true;  // false iff some alpha_i > 0
};

inline ActiveSet active_set(const JetPoint& jet) {
  jet.check();
  ActiveSet out;
  for (std::size_t i = 0; i < jet.alpha.size(); ++i) {
    if (jet.alpha[i] > 0) out.feasible = false;
    if (jet.alpha[i] == 0) out.i0.insert(static_cast<int>(i) + 1);
  }
  if (!out.feasible) out.i0.clear();
  return out;
}

namespace detail {

inline const Vector& gradient_of(const JetPoint& jet, int label) {
  if (jet.has_objective() && label == jet.m_star()) return *jet.a_star;
  return jet.a[static_cast<std::size_t>(label - 1)];
}

inline void check_pair_labels(const JetPoint& jet, const IndexPair& pr) {
  const int top = static_cast<int>(jet.m_le()) + (jet.has_objective() ? 1 : 0);
  for (int i : pr.I)
    if (i < 1 || i > top)
      throw std::out_of_range("inequality label " + std::to_string(i) +
                              " out of range");
  for (int j : pr.J)
    if (j < 1 || j > static_cast<int>(jet.m_eq()))
      throw std::out_of_range("equality label " + std::to_string(j) +
                              " out of range");
}

// Solves max t s.t. sum mu_i a_i + sum lambda_j b_j = 0, mu_i >= t,
// s_j lambda_j >= t, sum mu + sum s_j lambda_j = 1 for one sign pattern.
// Returns the multipliers when the optimum is positive.
inline std::optional<Multipliers> strict_multipliers(
    const JetPoint& jet, const IndexPair& pr, const std::vector<int>& signs) {
  const std::vector<int> I(pr.I.begin(), pr.I.end());
  const std::vector<int> J(pr.J.begin(), pr.J.end());
  const std::size_t k = I.size() + J.size();
  const std::size_t t = k;
  LpProblem lp(k + 1);
  lp.objective[t] = 1;
  for (std::size_t c = 0; c < jet.n; ++c) {
    Vector row(k + 1, Rational(0));
    for (std::size_t u = 0; u < I.size(); ++u) row[u] = gradient_of(jet, I[u])[c];
    for (std::size_t u = 0; u < J.size(); ++u)
      row[I.size() + u] = jet.b[static_cast<std::size_t>(J[u] - 1)][c];
    lp.add_eq(std::move(row), 0);
  }
  Vector norm(k + 1, Rational(0));
  for (std::size_t u = 0; u < k; ++u) {
    const Rational s = u < I.size() ? Rational(1) : Rational(signs[u - I.size()]);
    norm[u] = s;
    Vector row(k + 1, Rational(0));
    row[u] = s;
    row[t] = -1;
    lp.add_ge(std::move(row), 0);
  }
  lp.add_eq(std::move(norm), 1);
  auto res = lp_solve(lp);
  if (res.status != LpStatus::optimal || *res.value <= 0) return std::nullopt;
  Multipliers m;
  for (std::size_t u = 0; u < I.size(); ++u) m.mu[I[u]] = (*res.solution)[u];
  m.lambda.assign(jet.m_eq(), Rational(0));
  for (std::size_t u = 0; u < J.size(); ++u)
    m.lambda[static_cast<std::size_t>(J[u] - 1)] = (*res.solution)[I.size() + u];
  return m;
}

inline std::vector<std::vector<int>> sign_patterns(std::size_t count,
                                                   bool fix_first) {
  std::vector<std::vector<int>> out;
  const std::uint32_t total = 1u << count;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (fix_first && count > 0 && (mask & 1u)) continue;
    std::vector<int> s(count);
    for (std::size_t j = 0; j < count; ++j) s[j] = (mask >> j) & 1u ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

// Labels available to the I-part of a pair: I0 plus m_star when present.
inline std::vector<int> i_universe(const JetPoint& jet, const ActiveSet& act) {
  std::vector<int> u(act.i0.begin(), act.i0.end());
  if (jet.has_objective()) u.push_back(jet.m_star());
  return u;
}

// Candidate pairs over universe (I-labels, then 1..m_eq) ordered by
// ascending cardinality, ties by mask value.
inline std::vector<IndexPair> candidate_pairs(const std::vector<int>& iu,
                                              std::size_t m_eq) {
  const std::size_t total = iu.size() + m_eq;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (1u << total); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<IndexPair> out;
  out.reserve(masks.size());
  for (auto mask : masks) {
    IndexPair pr;
    for (std::size_t u = 0; u < total; ++u) {
      if (!((mask >> u) & 1u)) continue;
      if (u < iu.size()) pr.I.insert(iu[u]);
      else pr.J.insert(static_cast<int>(u - iu.size()) + 1);
    }
    out.push_back(std::move(pr));
  }
  return out;
}

}  // namespace detail

/// Multipliers with mu_i > 0 (i in I), lambda_j != 0 (j in J), supported on
/// I and J, solving sum mu_i a_i + sum lambda_j b_j = 0; nullopt if none.
inline std::optional<Multipliers> pair_certificate(const JetPoint& jet,
                                                   const IndexPair& pr) {
  jet.check();
  detail::check_pair_labels(jet, pr);
  if (pr.I.empty() && pr.J.empty())
    throw std::invalid_argument("pair must be nonempty");
  const auto act = active_set(jet);
  for (int i : pr.I) {
    const bool is_star = jet.has_objective() && i == jet.m_star();
    if (!is_star && !act.i0.count(i))
      throw std::invalid_argument("inequality " + std::to_string(i) +
                                  " is not active");
  }
  // With I empty, lambda and -lambda are interchangeable.
  for (const auto& s : detail::sign_patterns(pr.J.size(), pr.I.empty()))
    if (auto m = detail::strict_multipliers(jet, pr, s)) return m;
  return std::nullopt;
}

inline bool pair_qualifies(const JetPoint& jet, const IndexPair& pr) {
  return pair_certificate(jet, pr).has_value();
}

/// Combinatorial code by ascending-cardinality enumeration with subset
/// pruning. Worst case 2^(|I0| + 1 + m_eq) candidates.
inline CombinatorialCode compute_code(const JetPoint& jet) {
  jet.check();
  CombinatorialCode code;
  code.m_le = jet.m_le();
  code.m_eq = jet.m_eq();
  code.has_objective = jet.has_objective();
  const auto act = active_set(jet);
  code.feasible = act.feasible;
  if (!act.feasible) return code;
  code.i0 = act.i0;
  std::vector<IndexPair> kept;
  for (const auto& cand :
       detail::candidate_pairs(detail::i_universe(jet, act), jet.m_eq())) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return k.subset_of(cand);
    });
    if (dominated) continue;
    if (pair_qualifies(jet, cand)) kept.push_back(cand);
  }
  code.pairs.insert(kept.begin(), kept.end());
  return code;
}

inline bool is_stationary(const JetPoint& jet) {
  return compute_code(jet).stationary();
}

inline bool mfcq_violated(const JetPoint& jet) {
  return compute_code(jet).mfcq_violated();
}

/// Membership in the closure of the stationary characteristic set: some
/// (mu, lambda) in the cone with sum mu + sum |lambda| = 1.
inline bool in_closure(const JetPoint& jet) {
  jet.check();
  const auto act = active_set(jet);
  if (!act.feasible) return false;
  const auto iu = detail::i_universe(jet, act);
  const std::size_t k = iu.size() + jet.m_eq();
  if (k == 0) return false;
  for (const auto& s : detail::sign_patterns(jet.m_eq(), false)) {
    LpProblem lp(k);
    for (std::size_t c = 0; c < jet.n; ++c) {
      Vector row(k, Rational(0));
      for (std::size_t u = 0; u < iu.size(); ++u)
        row[u] = detail::gradient_of(jet, iu[u])[c];
      for (std::size_t j = 0; j < jet.m_eq(); ++j) row[iu.size() + j] = jet.b[j][c];
      lp.add_eq(std::move(row), 0);
    }
    Vector norm(k, Rational(0));
    for (std::size_t u = 0; u < k; ++u) {
      const Rational sg = u < iu.size() ? Rational(1) : Rational(s[u - iu.size()]);
      norm[u] = sg;
      Vector row(k, Rational(0));
      row[u] = sg;
      lp.add_ge(std::move(row), 0);
    }
    lp.add_eq(std::move(norm), 1);
    if (lp_solve(lp).status == LpStatus::optimal) return true;
  }
  return false;
}

/// True iff every equality value beta_j vanishes. The jet-space cone only
/// gates on alpha <= 0; membership of an actual point also needs h_j = 0.
inline bool equalities_hold(const JetPoint& jet) {
  return std::all_of(jet.beta.begin(), jet.beta.end(),
                     [](const Rational& v) { return v == 0; });
}

/// Moves a jet from chi_MF \ chi_SP into chi_SP: a_i -= step * a_star for
/// i in I and b_j -= step * sign(lambda_j) * a_star for j in J, where
/// (I, J) is an MF pair and lambda its multiplier certificate. The sign
/// keeps sum mu_i + sum |lambda_j| > 0 as the new objective multiplier.
inline JetPoint perturb_toward_sp(const JetPoint& jet, const Rational& step,
                                  std::optional<IndexPair> pair = std::nullopt) {
  if (!jet.has_objective())
    throw std::invalid_argument("perturb_toward_sp needs an objective gradient");
  const auto code = compute_code(jet);
  if (!code.mfcq_violated() || code.stationary())
    throw std::invalid_argument("jet is not in chi_MF \\ chi_SP");
  const auto mf = code.mf_pairs();
  if (!pair) pair = *mf.begin();
  if (!mf.count(*pair))
    throw std::invalid_argument("pair is not an MF pair of the jet");
  const auto cert = pair_certificate(jet, *pair);
  if (!cert) throw std::logic_error("MF pair lost its certificate");
  JetPoint out = jet;
  const Vector& star = *jet.a_star;
  for (int i : pair->I) {
    auto& ai = out.a[static_cast<std::size_t>(i - 1)];
    for (std::size_t c = 0; c < jet.n; ++c) ai[c] -= step * star[c];
  }
  for (int j : pair->J) {
    const auto jj = static_cast<std::size_t>(j - 1);
    const Rational s = cert->lambda[jj] > 0 ? Rational(1) : Rational(-1);
    for (std::size_t c = 0; c < jet.n; ++c) out.b[jj][c] -= step * s * star[c];
  }
  return out;
}

namespace detail {

// Strict feasibility of {w >= 0, cols·w = 0, sum w = 1} by enumerating every
// basic solution: the polytope is the convex hull of its vertices, so a
// strictly positive point exists iff every coordinate is positive at some
// vertex.
inline bool strictly_feasible_by_vertices(const std::vector<Vector>& cols,
                                          std::size_t n) {
  const std::size_t k = cols.size();
  std::vector<bool> covered(k, false);
  bool any_vertex = false;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > n + 1) continue;
    std::vector<std::size_t> support;
    for (std::size_t u = 0; u < k; ++u)
      if ((mask >> u) & 1u) support.push_back(u);
    Matrix a = linalg::zeros(n + 1, support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      for (std::size_t r = 0; r < n; ++r) a[r][s] = cols[support[s]][r];
      a[n][s] = 1;
    }
    Vector rhs(n + 1, Rational(0));
    rhs[n] = 1;
    auto sol = linalg::solve(a, rhs, support.size());
    if (!sol || !sol->unique) continue;
    if (std::any_of(sol->solution.begin(), sol->solution.end(),
                    [](const Rational& v) { return v < 0; }))
      continue;
    any_vertex = true;
    for (std::size_t s = 0; s < support.size(); ++s)
      if (sol->solution[s] > 0) covered[support[s]] = true;
  }
  return any_vertex &&
         std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

}  // namespace detail

/// Independent oracle for compute_code: every pair and every sign pattern,
/// strict feasibility by vertex enumeration (no simplex), then minimality
/// filtering. Limited to m_le + m_eq <= 6 and n <= 4.
inline CombinatorialCode brute_force_code(const JetPoint& jet) {
  jet.check();
  if (jet.m_le() + jet.m_eq() > 6 || jet.n > 4)
    throw std::invalid_argument("brute_force_code: problem size too large");
  CombinatorialCode code;
  code.m_le = jet.m_le();
  code.m_eq = jet.m_eq();
  code.has_objective = jet.has_objective();
  const auto act = active_set(jet);
  code.feasible = act.feasible;
  if (!act.feasible) return code;
  code.i0 = act.i0;

  std::vector<int> iu(act.i0.begin(), act.i0.end());
  if (jet.has_objective()) iu.push_back(jet.m_star());
  const std::size_t total = iu.size() + jet.m_eq();
  std::vector<IndexPair> qualifying;
  for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
    IndexPair pr;
    for (std::size_t u = 0; u < total; ++u) {
      if (!((mask >> u) & 1u)) continue;
      if (u < iu.size()) pr.I.insert(iu[u]);
      else pr.J.insert(static_cast<int>(u - iu.size()) + 1);
    }
    const std::vector<int> J(pr.J.begin(), pr.J.end());
    bool ok = false;
    for (std::uint32_t s = 0; s < (1u << J.size()) && !ok; ++s) {
      std::vector<Vector> cols;
      for (int i : pr.I) cols.push_back(detail::gradient_of(jet, i));
      for (std::size_t u = 0; u < J.size(); ++u) {
        Vector col = jet.b[static_cast<std::size_t>(J[u] - 1)];
        if ((s >> u) & 1u)
          for (auto& e : col) e = -e;
        cols.push_back(std::move(col));
      }
      ok = detail::strictly_feasible_by_vertices(cols, jet.n);
    }
    if (ok) qualifying.push_back(std::move(pr));
  }
  for (const auto& pr : qualifying) {
    bool minimal = true;
    for (const auto& other : qualifying)
      if (other != pr && other.subset_of(pr)) minimal = false;
    if (minimal) code.pairs.insert(pr);
  }
  return code;
}

}  // namespace stratpoint
