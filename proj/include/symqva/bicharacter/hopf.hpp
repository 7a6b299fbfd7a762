#pragma once

// The Hopf algebra V = C[h^(1), h^(2), ...] (x) C[Z alpha] with h = h^(1) = D alpha
// and h^(n) = D^(n) alpha = D^n alpha / n!. Every h^(n) is primitive, e^{m alpha}
// is grouplike, and D acts as a derivation with D h^(n) = (n+1) h^(n+1),
// D e^{m alpha} = m h e^{m alpha}.

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "symqva/partitions.hpp"
#include "symqva/scalars.hpp"

namespace symqva {

/// Monomial h^(n_1) ... h^(n_k) e^{charge alpha}; the multiset {n_i} is kept
/// as a Partition.
struct VMono {
  Partition h;
  int charge = 0;

  static VMono one() { return {}; }
  static VMono e(int m) { return {Partition{}, m}; }
  static VMono hn(int n, int m = 0) { return {Partition{n}, m}; }

  bool is_one() const { return h.empty() && charge == 0; }
  /// Sum of the indices n_i, the grading by D-weight.
  int degree() const { return h.weight(); }
  VMono operator*(const VMono& o) const { return {h.joined(o.h), charge + o.charge}; }

  friend bool operator==(const VMono&, const VMono&) = default;
  friend auto operator<=>(const VMono& a, const VMono& b) {
    if (auto c = a.h <=> b.h; c != 0) return c;
    return a.charge <=> b.charge;
  }

  std::string to_string() const {
    if (is_one()) return "1";
    std::string s;
    for (int n : h.parts()) s += (s.empty() ? "" : "*") + std::string(n == 1 ? "h" : "h" + std::to_string(n));
    if (charge != 0 || s.empty()) s += (s.empty() ? "" : "*") + std::string("e^") + std::to_string(charge);
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const VMono& m) { return os << m.to_string(); }

  /// Inverse of to_string: factors "1", "h", "h<n>", "e", "e^<m>" joined by '*'.
  static VMono parse(const std::string& text) {
    VMono out;
    std::vector<int> parts;
    std::size_t pos = 0;
    auto bad = [&] { return DomainError("cannot parse V monomial '" + text + "'"); };
    auto read_int = [&](const std::string& s) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(s, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != s.size()) throw bad();
      return v;
    };
    if (text.empty()) throw bad();
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('*', pos), text.size());
      const std::string f = text.substr(pos, end - pos);
      if (f == "1") {
      } else if (f == "h") {
        parts.push_back(1);
      } else if (f.size() > 1 && f[0] == 'h') {
        const int n = read_int(f.substr(1));
        if (n < 1) throw bad();
        parts.push_back(n);
      } else if (f == "e") {
        out.charge += 1;
      } else if (f.rfind("e^", 0) == 0) {
        out.charge += read_int(f.substr(2));
      } else {
        throw bad();
      }
      pos = end + 1;
    }
    out.h = Partition::from_multiset(parts);
    return out;
  }
};

/// Finite linear combination of VMono with coefficients in C (Rational,
/// RatFunc or ParamSeries).
template <class C>
class VElementT {
 public:
  using Terms = std::map<VMono, C>;

  VElementT() = default;
  VElementT(const VMono& m, C c) { add_term(m, std::move(c)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const VMono& m, const C& c) {
    if (is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  VElementT& operator+=(const VElementT& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  VElementT& operator-=(const VElementT& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend VElementT operator+(VElementT a, const VElementT& b) { return a += b; }
  friend VElementT operator-(VElementT a, const VElementT& b) { return a -= b; }
  template <class S>
  friend VElementT operator*(const S& s, const VElementT& a) {
    VElementT r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
    return r;
  }
  friend VElementT operator*(const VElementT& a, const VElementT& b) {
    VElementT r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend bool operator==(const VElementT& a, const VElementT& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + coeff_text(c) + "]" + m.to_string();
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const VElementT& a) { return os << a.to_string(); }

 private:
  static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
  template <class T>
  static bool is_zero_coeff(const T& c) { return c.is_zero(); }
  static std::string coeff_text(const Rational& c) { return c.get_str(); }
  template <class T>
  static std::string coeff_text(const T& c) { return c.to_string(); }

  Terms terms_;
};

using VElement = VElementT<Rational>;
using VSeries = VElementT<ParamSeries>;

/// One Sweedler term c * left (x) right.
struct SweedlerTerm {
  Rational coeff;
  VMono left;
  VMono right;
};

/// Delta(m): primitive h-factors split into every sub-multiset, the lattice
/// part is copied to both sides. Coefficients are products of binomials over
/// repeated factors.
inline std::vector<SweedlerTerm> coproduct(const VMono& m) {
  std::map<int, int> mult;
  for (int n : m.h.parts()) ++mult[n];
  std::vector<std::pair<int, int>> items(mult.begin(), mult.end());
  std::vector<SweedlerTerm> out;
  std::vector<int> left_parts, right_parts;
  auto rec = [&](auto&& self, std::size_t i, Rational c) -> void {
    if (i == items.size()) {
      out.push_back({c, {Partition::from_multiset(left_parts), m.charge}, {Partition::from_multiset(right_parts), m.charge}});
      return;
    }
    const auto [n, k] = items[i];
    for (int s = 0; s <= k; ++s) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(s));
      left_parts.insert(left_parts.end(), s, n);
      right_parts.insert(right_parts.end(), k - s, n);
      self(self, i + 1, c * Rational(binom));
      left_parts.resize(left_parts.size() - s);
      right_parts.resize(right_parts.size() - (k - s));
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

/// Counit: 1 on e^{m alpha}, 0 on anything with an h-factor.
inline int counit(const VMono& m) { return m.h.empty() ? 1 : 0; }

/// Antipode. h^(n) is primitive so S(h^(n)) = -h^(n); S(e^{m alpha}) = e^{-m alpha}.
inline std::pair<int, VMono> antipode(const VMono& m) {
  return {m.h.length() % 2 ? -1 : 1, {m.h, -m.charge}};
}

template <class C>
VElementT<C> antipode(const VElementT<C>& a) {
  VElementT<C> r;
  for (const auto& [m, c] : a.terms()) {
    const auto [sign, img] = antipode(m);
    r.add_term(img, sign < 0 ? C(-c) : c);
  }
  return r;
}

/// D as a derivation on a single monomial.
inline VElement d_act(const VMono& m) {
  VElement r;
  const auto& parts = m.h.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0 && parts[i] == parts[i - 1]) continue;  // identical factors handled via multiplicity
    const int n = parts[i];
    const int mult = m.h.multiplicity(n);
    r.add_term({m.h.without_part(n).with_part(n + 1), m.charge}, Rational(static_cast<long>(mult) * (n + 1)));
  }
  if (m.charge != 0) r.add_term({m.h.with_part(1), m.charge}, Rational(m.charge));
  return r;
}

template <class C>
VElementT<C> d_act(const VElementT<C>& a) {
  VElementT<C> r;
  for (const auto& [m, c] : a.terms()) {
    const VElement dm = d_act(m);
    for (const auto& [img, k] : dm.terms()) r.add_term(img, c * k);
  }
  return r;
}

/// Divided powers D^(k) m = D^k m / k!, memoized per monomial.
class DividedPowers {
 public:
  const VElement& get(const VMono& m, int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& seq = cache_[m];
    if (seq.empty()) seq.emplace_back(m, Rational(1));
    while (static_cast<int>(seq.size()) <= k) {
      const int j = static_cast<int>(seq.size());
      seq.push_back(Rational(1, j) * d_act(seq.back()));
    }
    return seq[k];
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<VMono, std::deque<VElement>> cache_;  // deque keeps references stable
};

}  // namespace symqva
