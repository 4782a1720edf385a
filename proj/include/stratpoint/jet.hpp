#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stratpoint/problem.hpp"

namespace stratpoint {

/// A point of the reduced jet space: x-gradients and values of every
/// constraint plus the objective x-gradient. `a_star` is absent for jets of
/// bare constraint sets (the MF jet space).
struct JetPoint {
  std::size_t n = 0;
  std::vector<Vector> a;  // m_le gradients
  Vector alpha;           // m_le values
  std::vector<Vector> b;  // m_eq gradients
  Vector beta;            // m_eq values
  std::optional<Vector> a_star;

  std::size_t m_le() const { return a.size(); }
  std::size_t m_eq() const { return b.size(); }
  bool has_objective() const { return a_star.has_value(); }
  int m_star() const { return static_cast<int>(m_le()) + 1; }

  static JetPoint zero(std::size_t n, std::size_t m_le, std::size_t m_eq,
                       bool objective = true) {
    JetPoint j;
    j.n = n;
    j.a.assign(m_le, Vector(n, Rational(0)));
    j.alpha.assign(m_le, Rational(0));
    j.b.assign(m_eq, Vector(n, Rational(0)));
    j.beta.assign(m_eq, Rational(0));
    if (objective) j.a_star = Vector(n, Rational(0));
    return j;
  }

  void check() const {
    if (alpha.size() != a.size() || beta.size() != b.size())
      throw DimensionError("jet: value/gradient count mismatch");
    for (const auto& v : a)
      if (v.size() != n) throw DimensionError("jet: inequality gradient length");
    for (const auto& v : b)
      if (v.size() != n) throw DimensionError("jet: equality gradient length");
    if (a_star && a_star->size() != n)
      throw DimensionError("jet: objective gradient length");
  }

  /// Coordinates in the order (a_i, alpha_i)_i, (b_j, beta_j)_j, a_star.
  Vector flatten() const {
    Vector out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.insert(out.end(), a[i].begin(), a[i].end());
      out.push_back(alpha[i]);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      out.insert(out.end(), b[j].begin(), b[j].end());
      out.push_back(beta[j]);
    }
    if (a_star) out.insert(out.end(), a_star->begin(), a_star->end());
    return out;
  }

  static JetPoint unflatten(const Vector& z, std::size_t n, std::size_t m_le,
                            std::size_t m_eq, bool objective = true) {
    const std::size_t want =
        jet_dim(n, m_le, m_eq) - (objective ? 0 : n);
    if (z.size() != want)
      throw DimensionError("jet: expected " + std::to_string(want) +
                           " coordinates, got " + std::to_string(z.size()));
    JetPoint j = zero(n, m_le, m_eq, objective);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m_le; ++i) {
      for (std::size_t c = 0; c < n; ++c) j.a[i][c] = z[k++];
      j.alpha[i] = z[k++];
    }
    for (std::size_t i = 0; i < m_eq; ++i) {
      for (std::size_t c = 0; c < n; ++c) j.b[i][c] = z[k++];
      j.beta[i] = z[k++];
    }
    if (objective)
      for (std::size_t c = 0; c < n; ++c) (*j.a_star)[c] = z[k++];
    return j;
  }

  /// The MF projection: the same jet with the objective gradient deleted.
  JetPoint without_objective() const {
    JetPoint j = *this;
    j.a_star.reset();
    return j;
  }

  friend bool operator==(const JetPoint&, const JetPoint&) = default;
};

/// One element (I, J) of the second code part. I holds inequality labels and
/// possibly m_star; J holds equality labels. Labels are 1-based.
struct IndexPair {
  std::set<int> I;
  std::set<int> J;

  bool subset_of(const IndexPair& o) const {
    for (int i : I)
      if (!o.I.count(i)) return false;
    for (int j : J)
      if (!o.J.count(j)) return false;
    return true;
  }
  std::size_t size() const { return I.size() + J.size(); }

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// The combinatorial code (I0, pairs) of a jet or point. Infeasible jets
/// (some alpha_i > 0) carry an empty code with feasible = false.
struct CombinatorialCode {
  std::size_t m_le = 0;
  std::size_t m_eq = 0;
  bool has_objective = true;
  bool feasible = true;
  std::set<int> i0;
  std::set<IndexPair> pairs;

  int m_star() const { return static_cast<int>(m_le) + 1; }

  std::set<IndexPair> sp_pairs() const {
    std::set<IndexPair> out;
    for (const auto& pr : pairs)
      if (has_objective && pr.I.count(m_star())) out.insert(pr);
    return out;
  }
  std::set<IndexPair> mf_pairs() const {
    std::set<IndexPair> out;
    for (const auto& pr : pairs)
      if (!(has_objective && pr.I.count(m_star()))) out.insert(pr);
    return out;
  }
  bool stationary() const { return !sp_pairs().empty(); }
  bool mfcq_violated() const { return !mf_pairs().empty(); }

  friend bool operator==(const CombinatorialCode&,
                         const CombinatorialCode&) = default;
};

inline std::string label(int i, int m_star, bool objective) {
  if (objective && i == m_star) return "m*";
  return std::to_string(i);
}

inline std::string format_index_set(const std::set<int>& s, int m_star,
                                    bool objective) {
  std::string out = "{";
  bool first = true;
  for (int i : s) {
    if (!first) out += ",";
    out += label(i, m_star, objective);
    first = false;
  }
  return out + "}";
}

inline std::string format_pair(const IndexPair& pr, int m_star,
                               bool objective) {
  return "(" + format_index_set(pr.I, m_star, objective) + "," +
         format_index_set(pr.J, -1, false) + ")";
}

inline std::string format_pairs(const std::set<IndexPair>& pairs, int m_star,
                                bool objective) {
  std::string out = "{";
  bool first = true;
  for (const auto& pr : pairs) {
    if (!first) out += ", ";
    out += format_pair(pr, m_star, objective);
    first = false;
  }
  return out + "}";
}

inline std::string to_string(const CombinatorialCode& code) {
  std::ostringstream os;
  if (!code.feasible) {
    os << "infeasible";
    return os.str();
  }
  os << "I0=" << format_index_set(code.i0, code.m_star(), code.has_objective)
     << " pairs="
     << format_pairs(code.pairs, code.m_star(), code.has_objective);
  return os.str();
}

/// Multipliers indexed by inequality label (including m_star) and equality
/// index.
struct Multipliers {
  std::map<int, Rational> mu;
  Vector lambda;
};

}  // namespace stratpoint
