#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stratpoint/rational.hpp"

namespace stratpoint {

/// Multivariate polynomial with rational coefficients in state variables
/// x (n of them) and parameters y (p of them). A monomial is keyed by its
/// exponent vector (x-exponents first, then y-exponents); zero coefficients
/// are never stored.
class Poly {
 public:
  using Exponents = std::vector<unsigned>;

  Poly() = default;
  Poly(std::size_t n, std::size_t p) : n_(n), p_(p) {}

  static Poly constant(std::size_t n, std::size_t p, const Rational& c) {
    Poly out(n, p);
    out.add_term(Exponents(n + p, 0), c);
    return out;
  }
  static Poly x(std::size_t n, std::size_t p, std::size_t k) {
    return variable(n, p, k);
  }
  static Poly y(std::size_t n, std::size_t p, std::size_t k) {
    return variable(n, p, n + k);
  }
  /// Variable with flat index `k` (x-block first).
  static Poly variable(std::size_t n, std::size_t p, std::size_t k) {
    if (k >= n + p) throw DimensionError("variable index out of range");
    Exponents e(n + p, 0);
    e[k] = 1;
    Poly out(n, p);
    out.add_term(e, Rational(1));
    return out;
  }

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * monomial(e); drops the term if the sum cancels.
  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != n_ + p_)
      throw DimensionError("monomial has " + std::to_string(e.size()) +
                           " exponents, expected " + std::to_string(n_ + p_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational eval(std::span<const Rational> x, std::span<const Rational> y) const {
    check_point(x.size(), y.size());
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t k = 0; k < n_; ++k)
        for (unsigned r = 0; r < e[k]; ++r) t *= x[k];
      for (std::size_t k = 0; k < p_; ++k)
        for (unsigned r = 0; r < e[n_ + k]; ++r) t *= y[k];
      total += t;
    }
    return total;
  }

  double eval(std::span<const double> x, std::span<const double> y) const {
    check_point(x.size(), y.size());
    double total = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = to_double(c);
      for (std::size_t k = 0; k < n_; ++k)
        for (unsigned r = 0; r < e[k]; ++r) t *= x[k];
      for (std::size_t k = 0; k < p_; ++k)
        for (unsigned r = 0; r < e[n_ + k]; ++r) t *= y[k];
      total += t;
    }
    return total;
  }

  /// Partial derivative in flat variable `k`.
  Poly derivative(std::size_t k) const {
    if (k >= n_ + p_) throw DimensionError("derivative index out of range");
    Poly out(n_, p_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponents d = e;
      d[k] -= 1;
      out.add_term(d, c * e[k]);
    }
    return out;
  }

  /// Re-expresses the polynomial over a new variable space of size
  /// (n2, p2); old flat variable k becomes new flat variable `target[k]`.
  Poly embed(std::size_t n2, std::size_t p2,
             const std::vector<std::size_t>& target) const {
    if (target.size() != n_ + p_) throw DimensionError("embed: map size");
    Poly out(n2, p2);
    for (const auto& [e, c] : terms_) {
      Exponents d(n2 + p2, 0);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (target[k] >= n2 + p2) throw DimensionError("embed: target index");
        d[target[k]] += e[k];
      }
      out.add_term(d, c);
    }
    return out;
  }

  bool uses_variable(std::size_t k) const {
    for (const auto& [e, c] : terms_)
      if (e[k] != 0) return true;
    return false;
  }

  Poly& operator+=(const Poly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_space(b);
    Poly out(a.n_, a.p_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "x1^2 + 3/2*x1*y2 - 1".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest total degree first for readability.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = c < 0 ? Rational(-c) : c;
      std::string mono;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += (k < n_ ? "x" + std::to_string(k + 1)
                        : "y" + std::to_string(k - n_ + 1));
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      std::string term;
      if (mono.empty()) term = format_rational(mag);
      else if (mag == 1) term = mono;
      else term = format_rational(mag) + "*" + mono;
      if (first) out += (c < 0 ? "-" : "") + term;
      else out += (c < 0 ? " - " : " + ") + term;
      first = false;
    }
    return out;
  }

 private:
  void check_point(std::size_t nx, std::size_t ny) const {
    if (nx != n_ || ny != p_)
      throw DimensionError("point (" + std::to_string(nx) + "," +
                           std::to_string(ny) + ") does not match polynomial (" +
                           std::to_string(n_) + "," + std::to_string(p_) + ")");
  }
  void check_space(const Poly& o) const {
    if (o.n_ != n_ || o.p_ != p_)
      throw DimensionError("polynomials live in different variable spaces");
  }

  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::map<Exponents, Rational> terms_;
};

inline Rational eval_poly(const Poly& poly, std::span<const Rational> x,
                          std::span<const Rational> y) {
  return poly.eval(x, y);
}

/// Formal x-gradient; y-variables are untouched.
inline std::vector<Poly> grad_x(const Poly& poly) {
  std::vector<Poly> g;
  g.reserve(poly.n());
  for (std::size_t k = 0; k < poly.n(); ++k) g.push_back(poly.derivative(k));
  return g;
}

}  // namespace stratpoint
