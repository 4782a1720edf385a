#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "stratpoint/jet.hpp"
#include "stratpoint/poly.hpp"
#include "stratpoint/problem.hpp"

namespace stratpoint {

/// Seeded generator whose draws are identical on every platform:
/// std::uniform_int_distribution is implementation-defined, so draws are
/// taken modulo the range from the raw 64-bit engine output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool chance(unsigned num, unsigned den) { return engine_() % den < num; }
  Rational integer(long lo, long hi) { return Rational(uniform(lo, hi)); }

  /// Small rational with numerator in [lo, hi] and denominator in [1, den].
  Rational fraction(long lo, long hi, long den) {
    return Rational(uniform(lo, hi), uniform(1, den));
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// STRATPOINT_SEED, if set to an integer, else `fallback`.
inline std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed) {
  if (const char* s = std::getenv("STRATPOINT_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

struct JetDraw {
  long lo = -3, hi = 3;
  unsigned zero_alpha_num = 1, zero_alpha_den = 2;  // chance an alpha_i is 0
  unsigned zero_beta_num = 1, zero_beta_den = 2;
  bool objective = true;
};

inline JetPoint random_jet(Rng& rng, std::size_t n, std::size_t m_le,
                           std::size_t m_eq, const JetDraw& d = {}) {
  JetPoint jet = JetPoint::zero(n, m_le, m_eq, d.objective);
  for (std::size_t i = 0; i < m_le; ++i) {
    for (auto& e : jet.a[i]) e = rng.integer(d.lo, d.hi);
    jet.alpha[i] = rng.chance(d.zero_alpha_num, d.zero_alpha_den)
                       ? Rational(0)
                       : rng.integer(d.lo, d.hi);
  }
  for (std::size_t j = 0; j < m_eq; ++j) {
    for (auto& e : jet.b[j]) e = rng.integer(d.lo, d.hi);
    jet.beta[j] = rng.chance(d.zero_beta_num, d.zero_beta_den)
                      ? Rational(0)
                      : rng.integer(d.lo, d.hi);
  }
  if (jet.a_star)
    for (auto& e : *jet.a_star) e = rng.integer(d.lo, d.hi);
  return jet;
}

/// Random polynomial in (x, y) with up to `terms` monomials of total degree
/// at most `degree`.
inline Poly random_poly(Rng& rng, std::size_t n, std::size_t p, std::size_t terms,
                        unsigned degree, long lo = -3, long hi = 3) {
  Poly out(n, p);
  for (std::size_t t = 0; t < terms; ++t) {
    Poly::Exponents e(n + p, 0);
    unsigned left = static_cast<unsigned>(rng.uniform(0, degree));
    while (left > 0 && n + p > 0) {
      e[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n + p) - 1))] += 1;
      --left;
    }
    out.add_term(e, rng.integer(lo, hi));
  }
  return out;
}

inline PolyProblem random_problem(Rng& rng, const ProblemSize& size,
                                  bool objective, std::size_t terms = 3,
                                  unsigned degree = 2) {
  PolyProblem prob;
  prob.size = size;
  if (objective) prob.f = random_poly(rng, size.n, size.p, terms, degree);
  for (std::size_t i = 0; i < size.m_le; ++i)
    prob.g.push_back(random_poly(rng, size.n, size.p, terms, degree));
  for (std::size_t j = 0; j < size.m_eq; ++j)
    prob.h.push_back(random_poly(rng, size.n, size.p, terms, degree));
  return prob;
}

inline Vector random_vector(Rng& rng, std::size_t len, long lo, long hi) {
  Vector v(len);
  for (auto& e : v) e = rng.integer(lo, hi);
  return v;
}

}  // namespace stratpoint
