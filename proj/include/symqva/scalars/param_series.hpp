#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "symqva/scalars/ratfunc.hpp"

namespace symqva {

/// Power series in (q, t) truncated at total degree `order`.
///
/// Terms are a sparse vector sorted by graded-lex index; nothing above the
/// truncation order is ever stored. Binary operations truncate to the smaller
/// of the two operand orders.
class ParamSeries {
 public:
  struct Term {
    ParamExp exp;
    Rational coeff;
  };

  ParamSeries() = default;
  explicit ParamSeries(int order) : order_(order) {
    if (order < 0) throw DomainError("negative truncation order");
  }
  ParamSeries(int order, const Rational& c) : ParamSeries(order) {
    if (sgn(c) != 0) terms_.push_back({ParamExp{}, c});
  }

  static ParamSeries monomial(int order, const Rational& c, int dq, int dt) {
    ParamSeries s(order);
    if (dq + dt <= order && sgn(c) != 0) s.terms_.push_back({ParamExp{dq, dt}, c});
    return s;
  }

  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const {
    return (!terms_.empty() && terms_.front().exp == ParamExp{}) ? terms_.front().coeff : Rational(0);
  }
  Rational coeff(int dq, int dt) const {
    for (const auto& t : terms_)
      if (t.exp.q == dq && t.exp.t == dt) return t.coeff;
    return 0;
  }
  /// Lowest total degree present; order()+1 for the zero series.
  int valuation() const { return terms_.empty() ? order_ + 1 : terms_.front().exp.degree(); }

  ParamSeries truncated(int order) const {
    ParamSeries r(std::min(order, order_));
    for (const auto& t : terms_)
      if (t.exp.degree() <= r.order_) r.terms_.push_back(t);
    return r;
  }

  ParamSeries operator-() const {
    ParamSeries r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend ParamSeries operator+(const ParamSeries& a, const ParamSeries& b) { return combine(a, b, false); }
  friend ParamSeries operator-(const ParamSeries& a, const ParamSeries& b) { return combine(a, b, true); }

  friend ParamSeries operator*(const ParamSeries& a, const ParamSeries& b) {
    ParamSeries r(std::min(a.order_, b.order_));
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      if (x.exp.degree() > r.order_) break;
      for (const auto& y : b.terms_) {
        const ParamExp e{x.exp.q + y.exp.q, x.exp.t + y.exp.t};
        if (e.degree() > r.order_) break;
        raw.push_back({e, x.coeff * y.coeff});
      }
    }
    std::sort(raw.begin(), raw.end(), [](const Term& u, const Term& v) { return GradedLex{}(u.exp, v.exp); });
    for (auto& t : raw) {
      if (!r.terms_.empty() && r.terms_.back().exp == t.exp) {
        r.terms_.back().coeff += t.coeff;
      } else {
        if (!r.terms_.empty() && sgn(r.terms_.back().coeff) == 0) r.terms_.pop_back();
        r.terms_.push_back(std::move(t));
      }
    }
    if (!r.terms_.empty() && sgn(r.terms_.back().coeff) == 0) r.terms_.pop_back();
    return r;
  }

  friend ParamSeries operator*(const ParamSeries& a, const Rational& s) {
    ParamSeries r(a.order_);
    if (sgn(s) == 0) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
  }
  friend ParamSeries operator*(const Rational& s, const ParamSeries& a) { return a * s; }

  ParamSeries& operator+=(const ParamSeries& o) { return *this = *this + o; }
  ParamSeries& operator-=(const ParamSeries& o) { return *this = *this - o; }
  ParamSeries& operator*=(const ParamSeries& o) { return *this = *this * o; }
  ParamSeries& operator*=(const Rational& s) { return *this = *this * s; }

  /// Multiplicative inverse; requires a nonzero constant term.
  ParamSeries inverse() const {
    const Rational c0 = constant_term();
    if (sgn(c0) == 0) throw NotExpandableError("series with zero constant term is not invertible");
    // 1/(c0 (1 + g)) = (1/c0) sum_j (-g)^j with g of valuation >= 1.
    const Rational inv0 = Rational(1) / c0;
    ParamSeries minus_g = -(*this * inv0 - ParamSeries(order_, 1));
    ParamSeries acc(order_, 1), power(order_, 1);
    for (int j = 1; j <= order_; ++j) {
      power *= minus_g;
      if (power.is_zero()) break;
      acc += power;
    }
    return acc * inv0;
  }

  /// exp(g) for g with zero constant term.
  ParamSeries exp() const {
    if (sgn(constant_term()) != 0) throw NotExpandableError("exp of a series with nonzero constant term");
    ParamSeries acc(order_, 1), power(order_, 1);
    for (int j = 1; j <= order_; ++j) {
      power = power * *this * Rational(1, j);
      if (power.is_zero()) break;
      acc += power;
    }
    return acc;
  }

  friend bool operator==(const ParamSeries& a, const ParamSeries& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].exp == b.terms_[i].exp) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  /// Same text grammar as ParamPoly, with a trailing "+ O(order+1)" marker.
  std::string to_string() const {
    ParamPoly p;
    for (const auto& t : terms_) p.add_term(t.exp, t.coeff);
    return p.to_string() + " + O(" + std::to_string(order_ + 1) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const ParamSeries& s) { return os << s.to_string(); }

  ParamPoly to_poly() const {
    ParamPoly p;
    for (const auto& t : terms_) p.add_term(t.exp, t.coeff);
    return p;
  }

  static ParamSeries from_poly(const ParamPoly& p, int order) {
    ParamSeries s(order);
    for (const auto& [e, c] : p.terms())
      if (e.degree() <= order) s.terms_.push_back({e, c});
    return s;
  }

 private:
  static ParamSeries combine(const ParamSeries& a, const ParamSeries& b, bool subtract) {
    ParamSeries r(std::min(a.order_, b.order_));
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    const GradedLex less;
    auto push = [&](const ParamExp& e, Rational c) {
      if (e.degree() <= r.order_ && sgn(c) != 0) r.terms_.push_back({e, std::move(c)});
    };
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && less(ia->exp, ib->exp))) {
        push(ia->exp, ia->coeff);
        ++ia;
      } else if (ia == a.terms_.end() || less(ib->exp, ia->exp)) {
        push(ib->exp, subtract ? Rational(-ib->coeff) : ib->coeff);
        ++ib;
      } else {
        push(ia->exp, subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  int order_ = 0;
  std::vector<Term> terms_;
};

/// Power-series expansion of f around q = t = 0, truncated at `order`.
inline ParamSeries expand_to_series(const RatFunc& f, int order) {
  const ParamSeries den = ParamSeries::from_poly(f.den(), order);
  if (sgn(den.constant_term()) == 0)
    throw NotExpandableError("denominator vanishes at q = t = 0: " + f.to_string());
  return ParamSeries::from_poly(f.num(), order) * den.inverse();
}

}  // namespace symqva
