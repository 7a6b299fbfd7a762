#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "symqva/scalars/param_poly.hpp"
#include "symqva/scalars/poly_gcd.hpp"

namespace symqva {

/// Element of F = Q(q,t).
///
/// Always stored in canonical form: numerator and denominator coprime, and
/// the denominator's leading coefficient (graded-lex, q < t) equal to 1.
/// Structural equality is therefore mathematical equality.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(ParamPoly p) : num_(std::move(p)), den_(1) {}
  RatFunc(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc q() { return RatFunc(ParamPoly::q()); }
  static RatFunc t() { return RatFunc(ParamPoly::t()); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.den_.is_one()) return RatFunc::raw(a.num_ + b.num_, a.den_);
      return RatFunc(a.num_ + b.num_, a.den_);
    }
    if (a.den_.is_one()) return RatFunc::raw(a.num_ * b.den_ + b.num_, b.den_);
    if (b.den_.is_one()) return RatFunc::raw(a.num_ + b.num_ * a.den_, a.den_);
    const ParamPoly g = gcd(a.den_, b.den_);
    if (g.is_one()) {
      // Coprime denominators: the sum is already reduced.
      return RatFunc::raw_monic(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    const ParamPoly ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.is_one() && b.den_.is_one()) return RatFunc::raw(a.num_ * b.num_, a.den_);
    const ParamPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    ParamPoly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
    if (!g1.is_one()) {
      an = exact_div(an, g1);
      bd = exact_div(bd, g1);
    }
    if (!g2.is_one()) {
      bn = exact_div(bn, g2);
      ad = exact_div(ad, g2);
    }
    return RatFunc::raw_monic(an * bn, ad * bd);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero rational function");
    return RatFunc::raw_monic(den_, num_);
  }

  RatFunc pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return RatFunc::raw(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc at_q_zero() const { return substituted(&ParamPoly::at_q_zero, "q = 0"); }
  RatFunc at_t_zero() const { return substituted(&ParamPoly::at_t_zero, "t = 0"); }
  RatFunc at_q_equals_t() const { return substituted(&ParamPoly::at_q_equals_t, "q = t"); }

  /// "(num)/(den)", or just the numerator when the denominator is 1.
  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }
  static RatFunc parse(std::string_view text);
  friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

 private:
  // Trusts that num/den are coprime and den is already monic.
  static RatFunc raw(ParamPoly n, ParamPoly d) {
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (r.num_.is_zero()) r.den_ = ParamPoly(1);
    return r;
  }
  // Trusts coprimality; rescales the denominator to be monic.
  static RatFunc raw_monic(ParamPoly n, ParamPoly d) {
    if (d.is_zero()) throw ArithmeticError("division by zero rational function");
    const Rational lc = d.leading_term().second;
    if (lc != 1) {
      const Rational s = Rational(1) / lc;
      n *= s;
      d *= s;
    }
    return raw(std::move(n), std::move(d));
  }

  void normalize() {
    if (den_.is_zero()) throw ArithmeticError("division by zero rational function");
    if (num_.is_zero()) {
      den_ = ParamPoly(1);
      return;
    }
    const ParamPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    *this = raw_monic(std::move(num_), std::move(den_));
  }

  RatFunc substituted(ParamPoly (ParamPoly::*sub)() const, const char* what) const {
    ParamPoly d = (den_.*sub)();
    if (d.is_zero())
      throw ArithmeticError(std::string("rational function has a pole at ") + what + ": " + to_string());
    return RatFunc((num_.*sub)(), std::move(d));
  }

  ParamPoly num_;
  ParamPoly den_;
};

namespace detail {

// Recursive-descent reader for the canonical RatFunc text form.
class RatFuncReader {
 public:
  explicit RatFuncReader(std::string_view s) : s_(s) {}

  RatFunc read() {
    skip();
    RatFunc r;
    if (peek() == '(') {
      ++pos_;
      ParamPoly n = poly();
      expect(')');
      skip();
      if (peek() == '/') {
        ++pos_;
        skip();
        expect('(');
        ParamPoly d = poly();
        expect(')');
        r = RatFunc(std::move(n), std::move(d));
      } else {
        r = RatFunc(std::move(n));
      }
    } else {
      r = RatFunc(poly());
    }
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse rational function '" + std::string(s_) + "': " + why);
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Integer integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  void factor(ParamExp& e) {
    const char v = peek();
    if (v != 'q' && v != 't') fail("expected q or t");
    ++pos_;
    int k = 1;
    if (peek() == '^') {
      ++pos_;
      k = static_cast<int>(integer().get_si());
    }
    (v == 'q' ? e.q : e.t) += k;
  }
  ParamPoly term() {
    skip();
    Rational c = 1;
    ParamExp e;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer n = integer();
      Integer d = 1;
      if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        d = integer();
      }
      c = Rational(n, d);
      c.canonicalize();
      if (peek() != '*') return ParamPoly::monomial(c, 0, 0);
      ++pos_;
    }
    factor(e);
    while (peek() == '*') {
      ++pos_;
      factor(e);
    }
    return ParamPoly::monomial(c, e.q, e.t);
  }
  ParamPoly poly() {
    skip();
    ParamPoly p;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    for (;;) {
      ParamPoly t = term();
      p += neg ? -t : t;
      skip();
      if (peek() == '+') {
        neg = false;
      } else if (peek() == '-') {
        neg = true;
      } else {
        break;
      }
      ++pos_;
    }
    return p;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc RatFunc::parse(std::string_view text) { return detail::RatFuncReader(text).read(); }

}  // namespace symqva
