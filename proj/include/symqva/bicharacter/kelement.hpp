#pragma once

// Elements of K = Q[[q,t]][z^{+-1}, w^{+-1}, (z-w)^{-1}] in partial-fraction
// normal form: a Laurent polynomial sum c z^i w^j plus a pole part
// sum c (z-w)^e w^j with e < 0. The normal form is unique, so equality is
// structural.

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symqva/scalars.hpp"

namespace symqva {

/// Laurent polynomial in z with series coefficients; the image of K under w = 0.
class LaurentZ {
 public:
  using Terms = std::map<int, ParamSeries>;

  explicit LaurentZ(int order = 0) : order_(order) {}
  static LaurentZ one(int order) { return monomial(order, 0, ParamSeries(order, 1)); }
  static LaurentZ monomial(int order, int k, const ParamSeries& c) {
    LaurentZ r(order);
    r.add_term(k, c);
    return r;
  }

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ParamSeries coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ParamSeries(order_) : it->second;
  }

  void add_term(int k, const ParamSeries& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c.truncated(order_));
    if (!inserted) it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend LaurentZ operator+(LaurentZ a, const LaurentZ& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
  }
  friend LaurentZ operator-(LaurentZ a, const LaurentZ& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
    return a;
  }
  friend LaurentZ operator*(const LaurentZ& a, const LaurentZ& b) {
    LaurentZ r(std::min(a.order_, b.order_));
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) r.add_term(i + j, x * y);
    return r;
  }
  friend LaurentZ operator*(const Rational& s, const LaurentZ& a) {
    LaurentZ r(a.order_);
    for (const auto& [k, c] : a.terms_) r.add_term(k, c * s);
    return r;
  }
  friend bool operator==(const LaurentZ& a, const LaurentZ& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) s += (s.empty() ? "" : " + ") + ("[" + c.to_string() + "]z^" + std::to_string(k));
    return s;
  }

 private:
  int order_;
  Terms terms_;
};

class KElement {
 public:
  /// pole == false: z^a w^b.  pole == true: (z-w)^a w^b with a < 0.
  struct Key {
    bool pole = false;
    int a = 0;
    int b = 0;
    friend auto operator<=>(const Key&, const Key&) = default;
    friend bool operator==(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, ParamSeries>;

  explicit KElement(int order = 0) : order_(order) {}

  static KElement constant(int order, const ParamSeries& c) { return monomial(order, 0, 0, c); }
  static KElement constant(int order, const Rational& c) { return constant(order, ParamSeries(order, c)); }
  static KElement one(int order) { return constant(order, Rational(1)); }
  static KElement monomial(int order, int i, int j, const ParamSeries& c) {
    KElement r(order);
    r.add_plain(i, j, c);
    return r;
  }
  static KElement monomial(int order, int i, int j, const Rational& c = Rational(1)) {
    return monomial(order, i, j, ParamSeries(order, c));
  }
  /// c (z-w)^e w^j for any integer e.
  static KElement zw_power(int order, int e, int j = 0, const Rational& c = Rational(1)) {
    KElement r(order);
    r.add_zw(e, j, ParamSeries(order, c));
    return r;
  }

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_plain() const {
    for (const auto& [k, c] : terms_)
      if (k.pole) return false;
    return true;
  }
  ParamSeries plain_coeff(int i, int j) const { return lookup({false, i, j}); }
  ParamSeries pole_coeff(int e, int j) const { return lookup({true, e, j}); }

  void add_plain(int i, int j, const ParamSeries& c) { add_raw({false, i, j}, c); }
  /// Adds c times the basis element named by k (already in normal form).
  void add_key(const Key& k, const ParamSeries& c) {
    if (k.pole && k.a >= 0) throw DomainError("pole keys need a negative (z-w) exponent");
    add_raw(k, c);
  }

  /// Adds c (z-w)^e w^j; nonnegative e is expanded into monomials.
  void add_zw(int e, int j, const ParamSeries& c) {
    if (e < 0) {
      add_raw({true, e, j}, c);
      return;
    }
    for (int k = 0; k <= e; ++k) {
      const Rational b = binomial(e, k) * ((e - k) % 2 ? -1 : 1);
      add_plain(k, j + e - k, c * b);
    }
  }

  /// Adds c z^i (z-w)^e w^j in normal form.
  void add_z_zw(int i, int e, int j, const ParamSeries& c) {
    if (e >= 0) {
      for (int k = 0; k <= e; ++k) add_plain(i + k, j + e - k, c * (binomial(e, k) * ((e - k) % 2 ? -1 : 1)));
      return;
    }
    for (const auto& [key, r] : normalize(i, e)) add_raw({key.pole, key.a, key.b + j}, c * r);
  }

  KElement truncated(int order) const {
    KElement r(std::min(order, order_));
    for (const auto& [k, c] : terms_) r.add_raw(k, c);
    return r;
  }

  KElement operator-() const {
    KElement r(order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  KElement& operator+=(const KElement& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [k, c] : o.terms_) add_raw(k, c);
    return *this;
  }
  KElement& operator-=(const KElement& o) { return *this += -o; }
  friend KElement operator+(KElement a, const KElement& b) { return a += b; }
  friend KElement operator-(KElement a, const KElement& b) { return a -= b; }

  friend KElement operator*(const KElement& a, const KElement& b) {
    KElement r(std::min(a.order_, b.order_));
    for (const auto& [x, cx] : a.terms_)
      for (const auto& [y, cy] : b.terms_) {
        const ParamSeries c = cx * cy;
        if (c.is_zero()) continue;
        if (!x.pole && !y.pole) {
          r.add_plain(x.a + y.a, x.b + y.b, c);
        } else if (x.pole && y.pole) {
          r.add_raw({true, x.a + y.a, x.b + y.b}, c);
        } else {
          const Key& p = x.pole ? x : y;
          const Key& m = x.pole ? y : x;
          r.add_z_zw(m.a, p.a, m.b + p.b, c);
        }
      }
    return r;
  }
  friend KElement operator*(const ParamSeries& s, const KElement& a) {
    KElement r(std::min(a.order_, s.order()));
    for (const auto& [k, c] : a.terms_) r.add_raw(k, c * s);
    return r;
  }
  friend KElement operator*(const Rational& s, const KElement& a) {
    KElement r(a.order_);
    for (const auto& [k, c] : a.terms_) r.add_raw(k, c * s);
    return r;
  }
  KElement& operator*=(const KElement& o) { return *this = *this * o; }

  KElement pow(int n) const {
    if (n < 0) throw DomainError("KElement::pow needs n >= 0");
    KElement r = one(order_), base = *this;
    for (; n > 0; n >>= 1) {
      if (n & 1) r *= base;
      if (n > 1) base *= base;
    }
    return r;
  }

  KElement d_z() const {
    KElement r(order_);
    for (const auto& [k, c] : terms_) {
      if (k.a == 0) continue;
      if (k.pole) r.add_raw({true, k.a - 1, k.b}, c * Rational(k.a));
      else r.add_plain(k.a - 1, k.b, c * Rational(k.a));
    }
    return r;
  }

  KElement d_w() const {
    KElement r(order_);
    for (const auto& [k, c] : terms_) {
      if (k.pole) {
        r.add_raw({true, k.a - 1, k.b}, c * Rational(-k.a));
        if (k.b != 0) r.add_raw({true, k.a, k.b - 1}, c * Rational(k.b));
      } else if (k.b != 0) {
        r.add_plain(k.a, k.b - 1, c * Rational(k.b));
      }
    }
    return r;
  }

  /// f(z, w) -> f(w, z).
  KElement swap_zw() const {
    KElement r(order_);
    for (const auto& [k, c] : terms_) {
      if (!k.pole) r.add_plain(k.b, k.a, c);
      else r.add_z_zw(k.b, k.a, 0, k.a % 2 ? -c : c);
    }
    return r;
  }

  /// Value at w = 0. Each pole term is expanded as a series in w/z; negative
  /// powers of w must cancel, otherwise the element is singular at w = 0.
  LaurentZ at_w0() const {
    LaurentZ r(order_);
    std::map<std::pair<int, int>, ParamSeries> singular;
    auto note_singular = [&](int i, int j, const ParamSeries& c) {
      auto [it, inserted] = singular.emplace(std::make_pair(i, j), c);
      if (!inserted) it->second = it->second + c;
    };
    for (const auto& [k, c] : terms_) {
      if (!k.pole) {
        if (k.b == 0) r.add_term(k.a, c);
        else if (k.b < 0) note_singular(k.a, k.b, c);
        continue;
      }
      // (z-w)^{-n} w^j = sum_l C(n+l-1, l) w^{j+l} z^{-n-l}
      const int n = -k.a;
      for (int l = 0; k.b + l <= 0; ++l) {
        const ParamSeries term = c * binomial(n + l - 1, l);
        if (k.b + l == 0) r.add_term(-n - l, term);
        else note_singular(-n - l, k.b + l, term);
      }
    }
    for (const auto& [key, c] : singular)
      if (!c.is_zero())
        throw SingularSpecializationError("w = 0 specialization leaves z^" + std::to_string(key.first) + " w^" +
                                          std::to_string(key.second) + " with coefficient " + c.to_string());
    return r;
  }

  friend bool operator==(const KElement& a, const KElement& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + c.to_string() + "]";
      s += k.pole ? "(z-w)^" + std::to_string(k.a) : "z^" + std::to_string(k.a);
      s += " w^" + std::to_string(k.b);
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const KElement& k) { return os << k.to_string(); }

  static Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
  }

 private:
  using Normal = std::vector<std::pair<Key, Rational>>;

  ParamSeries lookup(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ParamSeries(order_) : it->second;
  }

  void add_raw(const Key& k, const ParamSeries& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c.truncated(order_));
    if (!inserted) it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// z^i (z-w)^e, e < 0, in normal form (w-exponents relative to w^0).
  static const Normal& normalize(int i, int e) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, Normal> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = cache.find({i, e}); it != cache.end()) return it->second;
    }
    std::map<Key, Rational> acc;
    auto add = [&](const Key& k, const Rational& c) {
      auto& slot = acc[k];
      slot += c;
      if (sgn(slot) == 0) acc.erase(k);
    };
    auto add_shifted = [&](const Normal& part, int dw, const Rational& s) {
      for (const auto& [k, c] : part) add({k.pole, k.a, k.b + dw}, c * s);
    };
    if (i == 0) {
      add({true, e, 0}, Rational(1));
    } else if (i > 0) {
      // z^i (z-w)^e = sum_k C(i,k) (z-w)^{e+k} w^{i-k}
      for (int k = 0; k <= i; ++k) {
        const Rational b = binomial(i, k);
        const int f = e + k;
        if (f < 0) {
          add({true, f, i - k}, b);
        } else {
          for (int l = 0; l <= f; ++l) add({false, l, i - k + f - l}, b * binomial(f, l) * ((f - l) % 2 ? -1 : 1));
        }
      }
    } else {
      // z^{-1} (z-w)^e = w^{-1} (z-w)^e - w^{-1} z^{-1} (z-w)^{e+1}
      add_shifted(normalize(i + 1, e), -1, Rational(1));
      if (e + 1 < 0) add_shifted(normalize(i, e + 1), -1, Rational(-1));
      else add({false, i, -1}, Rational(-1));
    }
    Normal out(acc.begin(), acc.end());
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(i, e), std::move(out)).first->second;
  }

  int order_;
  Terms terms_;
};

}  // namespace symqva
