#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "symqva/errors.hpp"

namespace symqva {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent pair of a parameter monomial q^q t^t.
struct ParamExp {
  int q = 0;
  int t = 0;

  constexpr int degree() const { return q + t; }
  friend constexpr bool operator==(const ParamExp&, const ParamExp&) = default;
};

/// Graded-lexicographic order with q < t: total degree first, then t-degree.
struct GradedLex {
  constexpr bool operator()(const ParamExp& a, const ParamExp& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.t < b.t;
  }
};

/// Sparse polynomial in the parameters q and t with rational coefficients.
///
/// Terms are kept in ascending graded-lex order; zero coefficients are never
/// stored, so the empty map is the zero polynomial.
class ParamPoly {
 public:
  using Terms = std::map<ParamExp, Rational, GradedLex>;

  ParamPoly() = default;
  ParamPoly(long c) { if (c != 0) terms_.emplace(ParamExp{}, Rational(c)); }
  ParamPoly(const Rational& c) { if (sgn(c) != 0) terms_.emplace(ParamExp{}, c); }

  static ParamPoly monomial(const Rational& c, int dq, int dt) {
    ParamPoly p;
    if (dq < 0 || dt < 0) throw DomainError("negative exponent in parameter polynomial");
    if (sgn(c) != 0) p.terms_.emplace(ParamExp{dq, dt}, c);
    return p;
  }
  static ParamPoly q() { return monomial(1, 1, 0); }
  static ParamPoly t() { return monomial(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ParamExp{});
  }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !is_zero() && terms_.begin()->second == 1; }

  Rational constant_term() const {
    auto it = terms_.find(ParamExp{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  int degree_q() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.q);
    return d;
  }
  int degree_t() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.t);
    return d;
  }
  const std::pair<const ParamExp, Rational>& leading_term() const {
    if (terms_.empty()) throw ArithmeticError("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(const ParamExp& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  ParamPoly operator-() const {
    ParamPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  ParamPoly& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(ParamPoly a, const Rational& s) { return a *= s; }
  friend ParamPoly operator*(const Rational& s, ParamPoly a) { return a *= s; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term(ParamExp{ea.q + eb.q, ea.t + eb.t}, ca * cb);
    return r;
  }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  ParamPoly pow(unsigned k) const {
    ParamPoly r(1), base = *this;
    while (k) {
      if (k & 1U) r *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return r;
  }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  /// Substitutes q := 0.
  ParamPoly at_q_zero() const {
    ParamPoly r;
    for (const auto& [e, c] : terms_)
      if (e.q == 0) r.add_term(e, c);
    return r;
  }
  /// Substitutes t := 0.
  ParamPoly at_t_zero() const {
    ParamPoly r;
    for (const auto& [e, c] : terms_)
      if (e.t == 0) r.add_term(e, c);
    return r;
  }
  /// Substitutes q := t.
  ParamPoly at_q_equals_t() const {
    ParamPoly r;
    for (const auto& [e, c] : terms_) r.add_term(ParamExp{0, e.q + e.t}, c);
    return r;
  }

  /// Canonical text form: ascending graded-lex order, e.g. "1 - 3/2*q*t^2".
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.to_string(); }

 private:
  Terms terms_;
};

namespace detail {

inline std::string monomial_text(const ParamExp& e) {
  std::string s;
  auto var = [&](char v, int k) {
    if (k == 0) return;
    if (!s.empty()) s += '*';
    s += v;
    if (k != 1) s += '^' + std::to_string(k);
  };
  var('q', e.q);
  var('t', e.t);
  return s;
}

}  // namespace detail

inline std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const std::string mono = detail::monomial_text(e);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace symqva
