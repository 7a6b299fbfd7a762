#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "symqva/bicharacter/bicharacter.hpp"

namespace symqva {

/// Element of V (x) V (x) K: (left, right) -> K coefficient.
using RTensor = std::map<std::pair<VMono, VMono>, KElement>;

inline void add_to(RTensor& t, const VMono& a, const VMono& b, const KElement& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = t.emplace(std::make_pair(a, b), k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) t.erase(it);
  }
}

/// R(z,w)(a (x) b) = sum a' (x) b' B(a'' (x) b'') with B = r^tau * r^{-1}.
class Braiding {
 public:
  explicit Braiding(const Bicharacter& bc)
      : bc_(bc),
        forward_(forms::braiding(bc)),
        reversed_(forms::convolve(forms::inverse(forms::transpose(forms::base(bc))), forms::base(bc))) {}

  const Bicharacter& bicharacter() const { return bc_; }
  int order() const { return bc_.order(); }

  /// B(a (x) b)(z, w).
  const KElement& scalar(const VMono& a, const VMono& b) const { return cached(forward_, memo_, a, b); }
  /// (r^tau)^{-1} * r, the convolution inverse of B.
  const KElement& scalar_inverse(const VMono& a, const VMono& b) const { return cached(reversed_, memo_inv_, a, b); }

  RTensor apply(const VMono& a, const VMono& b) const {
    RTensor out;
    for (const auto& ta : coproduct(a))
      for (const auto& tb : coproduct(b)) {
        const KElement& k = scalar(ta.right, tb.right);
        if (!k.is_zero()) add_to(out, ta.left, tb.left, (ta.coeff * tb.coeff) * k);
      }
    return out;
  }

  RTensor apply(const RTensor& t) const {
    RTensor out;
    for (const auto& [key, k] : t)
      for (const auto& [key2, k2] : apply(key.first, key.second)) add_to(out, key2.first, key2.second, k * k2);
    return out;
  }

 private:
  using Table = std::map<std::pair<VMono, VMono>, KElement>;

  static const KElement& cached(const BicharForm& f, std::pair<std::mutex, Table>& memo, const VMono& a,
                                const VMono& b) {
    const auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lock(memo.first);
      if (auto it = memo.second.find(key); it != memo.second.end()) return it->second;
    }
    KElement v = f(a, b);
    std::lock_guard<std::mutex> lock(memo.first);
    return memo.second.emplace(key, std::move(v)).first->second;
  }

  const Bicharacter& bc_;
  BicharForm forward_, reversed_;
  mutable std::pair<std::mutex, Table> memo_, memo_inv_;
};

}  // namespace symqva
