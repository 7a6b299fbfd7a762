#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "symqva/symfunc.hpp"

namespace symqva {

/// Element of V = Lambda_F (x) C[Z alpha]: sum c * p_lambda (x) e^{charge alpha}.
class LatticeState {
 public:
  using Key = std::pair<Partition, int>;
  using Terms = std::map<Key, RatFunc>;

  LatticeState() = default;
  static LatticeState vacuum(int charge = 0) { return basis({}, charge); }
  static LatticeState basis(const Partition& lam, int charge, RatFunc c = RatFunc(1)) {
    LatticeState s;
    s.add_term(lam, charge, c);
    return s;
  }
  static LatticeState from_symfunc(const SymFunc& f, int charge = 0) {
    LatticeState s;
    for (const auto& [lam, c] : f.terms()) s.add_term(lam, charge, c);
    return s;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_weight() const {
    int w = -1;
    for (const auto& [key, c] : terms_) w = std::max(w, key.first.weight());
    return w;
  }
  RatFunc coeff(const Partition& lam, int charge) const {
    auto it = terms_.find({lam, charge});
    return it == terms_.end() ? RatFunc() : it->second;
  }

  void add_term(const Partition& lam, int charge, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{lam, charge}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// The Lambda_F part, forgetting the charge.
  SymFunc symfunc() const {
    SymFunc f;
    for (const auto& [key, c] : terms_) f.add_term(key.first, c);
    return f;
  }

  LatticeState& operator+=(const LatticeState& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
  }
  LatticeState& operator-=(const LatticeState& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
  }
  friend LatticeState operator+(LatticeState a, const LatticeState& b) { return a += b; }
  friend LatticeState operator-(LatticeState a, const LatticeState& b) { return a -= b; }
  friend LatticeState operator*(const RatFunc& s, const LatticeState& a) {
    LatticeState r;
    if (s.is_zero()) return r;
    for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, s * c);
    return r;
  }
  friend bool operator==(const LatticeState&, const LatticeState&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + c.to_string() + "]p" + key.first.to_string() + "e^" + std::to_string(key.second);
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const LatticeState& s) { return os << s.to_string(); }

 private:
  Terms terms_;
};

/// Truncation policy for fields: keep modes z^k with z_min <= k <= z_max;
/// degree_cap bounds the order of e^{zD} expansions.
struct ModeWindow {
  int z_min = -8;
  int z_max = 8;
  int degree_cap = 64;
  ModeWindow() = default;
  ModeWindow(int lo, int hi, int cap = 64) : z_min(lo), z_max(hi), degree_cap(cap) {
    if (lo > hi) throw DomainError("mode window needs z_min <= z_max");
    if (cap < 0) throw DomainError("mode window needs degree_cap >= 0");
  }
  bool contains(int k) const { return z_min <= k && k <= z_max; }
};

/// h_{-n} = v_n^{-1} p_n (multiplication) and h_n = n d/dp_n for n > 0, so
/// that [h_m, h_n] = m v_{|m|}^{-1} delta_{m+n,0}. `annihilation_scale`
/// rescales h_n for n > 0 and exists only for negative controls.
inline LatticeState h_act(int n, const LatticeState& s, const VFamily& v,
                          const RatFunc& annihilation_scale = RatFunc(1)) {
  if (n == 0) throw DomainError("h_0 is not defined");
  LatticeState r;
  if (n < 0) {
    const RatFunc c = v.v_inv(-n);
    for (const auto& [key, a] : s.terms()) r.add_term(key.first.with_part(-n), key.second, c * a);
    return r;
  }
  for (const auto& [key, a] : s.terms()) {
    const int mult = key.first.multiplicity(n);
    if (mult == 0) continue;
    r.add_term(key.first.without_part(n), key.second, RatFunc(static_cast<long>(n) * mult) * annihilation_scale * a);
  }
  return r;
}

/// Fourier modes of Phi(z) = E+(z) E-(z) with
///   E+(z) = exp(sum_n h_{-n} z^n / n) = sum_j B_j z^j,
///   E-(z) = exp(-sum_n h_n z^{-n} / n) = sum_k A_k z^{-k},
/// so Phi_m = sum_{j - k = m} B_j A_k. B_j is multiplication by
/// sum_{mu |- j} v_mu^{-1} p_mu / z_mu and A_k = sum_{mu |- k} (-1)^{l(mu)} h_mu / z_mu.
/// A_k kills states of weight < k, which bounds every sum.
class FockOperators {
 public:
  explicit FockOperators(VFamily v) : v_(std::move(v)) {}

  const VFamily& family() const { return v_; }

  LatticeState phi_mode(int m, const LatticeState& s) const {
    LatticeState out;
    const int d = s.max_weight();
    for (int k = 0; k <= d; ++k) {
      const int j = m + k;
      if (j < 0) continue;
      const LatticeState a = apply_A(k, s);
      if (a.is_zero()) continue;
      out += apply_B(j, a);
    }
    return out;
  }

  /// Psi(z) = Phi(z) e^alpha z^{d_alpha}: on charge k the z^m mode is
  /// Phi_{m-k} followed by charge k -> k+1.
  LatticeState psi_mode(int m, const LatticeState& s) const {
    std::map<int, LatticeState> by_charge;
    for (const auto& [key, c] : s.terms()) by_charge[key.second].add_term(key.first, key.second, c);
    LatticeState out;
    for (const auto& [k, part] : by_charge) {
      const LatticeState img = phi_mode(m - k, part);
      for (const auto& [key, c] : img.terms()) out.add_term(key.first, key.second + 1, c);
    }
    return out;
  }

  /// Phi_{lam_1} ... Phi_{lam_k} 1, charge dropped.
  SymFunc phi_product(const Partition& lam) const {
    LatticeState s = LatticeState::vacuum();
    for (auto it = lam.parts().rbegin(); it != lam.parts().rend(); ++it) s = phi_mode(*it, s);
    return s.symfunc();
  }

  /// B_j as an element of Lambda_F.
  const SymFunc& B(int j) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = b_cache_.find(j);
    if (it != b_cache_.end()) return it->second;
    SymFunc f;
    for (const auto& mu : partitions_of(j)) f.add_term(mu, v_.v_inv(mu) * RatFunc(Rational(mpz_class(1), z_of(mu))));
    return b_cache_.emplace(j, std::move(f)).first->second;
  }

  LatticeState apply_B(int j, const LatticeState& s) const {
    const SymFunc& b = B(j);
    LatticeState out;
    for (const auto& [key, c] : s.terms())
      for (const auto& [mu, bc] : b.terms()) out.add_term(key.first.joined(mu), key.second, bc * c);
    return out;
  }

  LatticeState apply_A(int k, const LatticeState& s) const {
    if (k == 0) return s;
    LatticeState out;
    for (const auto& mu : partitions_of(k)) {
      LatticeState cur = s;
      for (int part : mu.parts()) {
        cur = h_act(part, cur, v_);
        if (cur.is_zero()) break;
      }
      if (cur.is_zero()) continue;
      const Rational c((mu.length() % 2 ? -1 : 1), 1);
      out += RatFunc(c / Rational(z_of(mu))) * cur;
    }
    return out;
  }

 private:
  VFamily v_;
  mutable std::mutex mu_;
  mutable std::map<int, SymFunc> b_cache_;
};

inline LatticeState phi_mode(int m, const LatticeState& s, const VFamily& v) { return FockOperators(v).phi_mode(m, s); }
inline LatticeState psi_mode(int m, const LatticeState& s, const VFamily& v) { return FockOperators(v).psi_mode(m, s); }
inline SymFunc phi_product(const Partition& lam, const VFamily& v) { return FockOperators(v).phi_product(lam); }

}  // namespace symqva
