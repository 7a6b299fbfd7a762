#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "symqva/bicharacter/hopf.hpp"
#include "symqva/bicharacter/kelement.hpp"
#include "symqva/symfunc.hpp"

namespace symqva {

/// The bicharacter on V determined by sigma = r(e^alpha (x) e^alpha).
///
/// sigma = (z-w) exp(L), L = -sum_n (v_n^{-1} - 1) (w/z)^n / n. Since
/// v_n^{-1} - 1 has valuation >= n, only n <= order contribute. All other
/// values follow from the Hopf structure: with h^(n) = D^(n) alpha,
///   r(e^{m alpha} (x) e^{l alpha}) = sigma^{ml}
///   r(e^alpha (x) h^(k)) = d_w^{k-1} (d_w ln sigma) / k!
///   r(h^(n) (x) e^alpha) = d_z^{n-1} (d_z ln sigma) / n!
///   r(h^(n) (x) h^(k))   = d_z^n d_w^{k-1} (d_w ln sigma) / (n! k!)
/// and products are split with the coproduct.
class Bicharacter {
 public:
  Bicharacter(VFamily v, int order) : v_(std::move(v)), order_(order) {
    if (order < 0) throw DomainError("negative truncation order");
    L_ = KElement(order);
    for (int n = 1; n <= order; ++n) {
      const ParamSeries c = expand_to_series(v_.v_inv(n) - RatFunc(1), order);
      if (c.valuation() < n)
        throw NotExpandableError("sigma needs v_" + std::to_string(n) + "^{-1} - 1 of valuation >= " +
                                 std::to_string(n) + " for family " + v_.name());
      L_.add_plain(-n, n, c * Rational(-1, n));
    }
    // v_n^{-1} - 1 for n > order must also vanish to the truncation order.
    for (int n = order + 1; n <= 2 * order + 2; ++n)
      if (!expand_to_series(v_.v_inv(n) - RatFunc(1), order).is_zero())
        throw NotExpandableError("sigma receives infinitely many terms at order " + std::to_string(order) +
                                 " for family " + v_.name());
    const KElement zw = KElement::zw_power(order, 1);
    sigma_ = zw * exp_plain(L_);
    dlog_w_ = KElement::zw_power(order, -1, 0, Rational(-1)) + L_.d_w();
    dlog_z_ = KElement::zw_power(order, -1) + L_.d_z();
  }

  const VFamily& family() const { return v_; }
  int order() const { return order_; }
  const KElement& sigma() const { return sigma_; }

  /// sigma^k = (z-w)^k exp(k L) for any integer k.
  KElement sigma_pow(int k) const {
    return KElement::zw_power(order_, k) * exp_plain(Rational(k) * L_);
  }

  KElement eval(const VMono& a, const VMono& b) const { return eval_impl<KElement>(a, b, full_); }
  /// r(a (x) b)(z, 0).
  LaurentZ eval_w0(const VMono& a, const VMono& b) const { return eval_impl<LaurentZ>(a, b, at0_); }

  KElement eval(const VElement& a, const VElement& b) const {
    KElement r(order_);
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) r += (ca * cb) * eval(ma, mb);
    return r;
  }

  const KElement& rho(int k) const { return base(base_rho_, k, 0); }
  const KElement& lambda(int n) const { return base(base_lambda_, n, 0); }
  const KElement& kappa(int n, int k) const { return base(base_kappa_, n, k); }

 private:
  enum BaseKind { base_rho_, base_lambda_, base_kappa_ };

  template <class R>
  struct Memo {
    std::mutex mu;
    std::map<std::pair<VMono, VMono>, R> table;
  };

  static KElement exp_plain(const KElement& x) {
    KElement acc = KElement::one(x.order()), power = KElement::one(x.order());
    for (int j = 1; j <= x.order(); ++j) {
      power = Rational(1, j) * (power * x);
      if (power.is_zero()) break;
      acc += power;
    }
    return acc;
  }

  const KElement& base(BaseKind kind, int n, int k) const {
    std::lock_guard<std::mutex> lock(base_mu_);
    const auto key = std::make_tuple(static_cast<int>(kind), n, k);
    if (auto it = base_.find(key); it != base_.end()) return it->second;
    KElement r(order_);
    Rational fact(1);
    switch (kind) {
      case base_rho_:
        r = dlog_w_;
        for (int i = 1; i < n; ++i) r = r.d_w();
        for (int i = 2; i <= n; ++i) fact *= i;
        break;
      case base_lambda_:
        r = dlog_z_;
        for (int i = 1; i < n; ++i) r = r.d_z();
        for (int i = 2; i <= n; ++i) fact *= i;
        break;
      case base_kappa_:
        r = dlog_w_;
        for (int i = 1; i < k; ++i) r = r.d_w();
        for (int i = 0; i < n; ++i) r = r.d_z();
        for (int i = 2; i <= n; ++i) fact *= i;
        for (int i = 2; i <= k; ++i) fact *= i;
        break;
    }
    return base_.emplace(key, Rational(1) / fact * r).first->second;
  }

  template <class R>
  R specialize(const KElement& k) const {
    if constexpr (std::is_same_v<R, KElement>) return k;
    else return k.at_w0();
  }

  template <class R>
  R one() const {
    if constexpr (std::is_same_v<R, KElement>) return KElement::one(order_);
    else return LaurentZ::one(order_);
  }

  template <class R>
  R grouplike_power(int k) const {
    if constexpr (std::is_same_v<R, KElement>) return sigma_pow(k);
    else return LaurentZ::monomial(order_, k, ParamSeries(order_, 1));  // sigma(z, 0) = z
  }

  template <class R>
  R eval_impl(const VMono& a, const VMono& b, Memo<R>& memo) const {
    const auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lock(memo.mu);
      if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
    }
    R result(order_);
    const int m = a.charge, l = b.charge;
    if (a.h.empty()) {
      // e^{m alpha} is grouplike, so r(e^{m alpha} (x) -) is multiplicative.
      if (m == 0) {
        result = b.h.empty() ? one<R>() : R(order_);
      } else {
        result = grouplike_power<R>(m * l);
        for (int k : b.h.parts()) {
          result = result * (Rational(m) * specialize<R>(rho(k)));
          if (result.is_zero()) break;
        }
      }
    } else {
      // Peel one primitive factor h^(n) off a.
      const int n = a.h.parts().front();
      const VMono rest{a.h.without_part(n), m};
      if (l != 0) result = result + (Rational(l) * specialize<R>(lambda(n))) * eval_impl<R>(rest, b, memo);
      const auto& parts = b.h.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0 && parts[i] == parts[i - 1]) continue;
        const int k = parts[i];
        const VMono b_rest{b.h.without_part(k), l};
        const R sub = eval_impl<R>(rest, b_rest, memo);
        if (sub.is_zero()) continue;
        result = result + (Rational(b.h.multiplicity(k)) * specialize<R>(kappa(n, k))) * sub;
      }
    }
    std::lock_guard<std::mutex> lock(memo.mu);
    return memo.table.emplace(key, std::move(result)).first->second;
  }

  VFamily v_;
  int order_;
  KElement L_, sigma_, dlog_w_, dlog_z_;
  mutable std::mutex base_mu_;
  mutable std::map<std::tuple<int, int, int>, KElement> base_;
  mutable Memo<KElement> full_;
  mutable Memo<LaurentZ> at0_;
};

/// A K-valued pairing on monomials; bicharacters and their convolution
/// products are represented this way.
using BicharForm = std::function<KElement(const VMono&, const VMono&)>;

namespace forms {

inline BicharForm base(const Bicharacter& bc) {
  return [&bc](const VMono& a, const VMono& b) { return bc.eval(a, b); };
}

/// epsilon(a (x) b) = counit(a) counit(b).
inline BicharForm epsilon(int order) {
  return [order](const VMono& a, const VMono& b) {
    return KElement::constant(order, Rational(counit(a) * counit(b)));
  };
}

/// r^tau(a (x) b)(z, w) = r(b (x) a)(w, z).
inline BicharForm transpose(BicharForm f) {
  return [f = std::move(f)](const VMono& a, const VMono& b) { return f(b, a).swap_zw(); };
}

/// r^{-1}(a (x) b) = r(S(a) (x) b).
inline BicharForm inverse(BicharForm f) {
  return [f = std::move(f)](const VMono& a, const VMono& b) {
    const auto [sign, sa] = antipode(a);
    const KElement v = f(sa, b);
    return sign < 0 ? -v : v;
  };
}

/// (f * g)(a (x) b) = sum f(a' (x) b') g(a'' (x) b'').
inline BicharForm convolve(BicharForm f, BicharForm g) {
  return [f = std::move(f), g = std::move(g)](const VMono& a, const VMono& b) {
    KElement acc;
    bool first = true;
    for (const auto& ta : coproduct(a))
      for (const auto& tb : coproduct(b)) {
        const KElement x = f(ta.left, tb.left);
        if (x.is_zero()) {
          if (first) acc = x, first = false;
          continue;
        }
        const KElement term = (ta.coeff * tb.coeff) * (x * g(ta.right, tb.right));
        if (first) acc = term, first = false;
        else acc += term;
      }
    return acc;
  };
}

/// B = r^tau * r^{-1}, the scalar part of the braiding.
inline BicharForm braiding(const Bicharacter& bc) { return convolve(transpose(base(bc)), inverse(base(bc))); }

}  // namespace forms

}  // namespace symqva
