#pragma once

// Y(a,z)b = sum (e^{zD} a') b' r(a'' (x) b'')(z, 0), returned as a map from
// the power of z to the coefficient in V.

#include <map>
#include <string>

#include "symqva/bicharacter/bicharacter.hpp"
#include "symqva/vertexop.hpp"

namespace symqva {

using FieldModes = std::map<int, VSeries>;

struct FieldOptions {
  bool drop_r_factor = false;  // negative control: replace every r-value by 1
};

inline const DividedPowers& divided_powers() {
  static const DividedPowers dp;
  return dp;
}

inline void add_modes(FieldModes& acc, const FieldModes& part, const ParamSeries& scale) {
  for (const auto& [k, v] : part) {
    auto& slot = acc[k];
    slot += scale * v;
    if (slot.is_zero()) acc.erase(k);
  }
}

inline FieldModes field_apply(const VMono& a, const VMono& b, const Bicharacter& bc, const ModeWindow& win,
                              const FieldOptions& opt = {}) {
  const int order = bc.order();
  FieldModes out;
  for (const auto& ta : coproduct(a))
    for (const auto& tb : coproduct(b)) {
      const LaurentZ r = opt.drop_r_factor ? LaurentZ::one(order) : bc.eval_w0(ta.right, tb.right);
      for (const auto& [s, c] : r.terms())
        for (int m = win.z_min; m <= win.z_max; ++m) {
          const int k = m - s;
          if (k < 0) continue;
          if (k > win.degree_cap)
            throw DomainError("field mode z^" + std::to_string(m) + " needs D^(" + std::to_string(k) +
                              ") beyond degree_cap " + std::to_string(win.degree_cap));
          const ParamSeries coeff = c * (ta.coeff * tb.coeff);
          for (const auto& [mono, d] : divided_powers().get(ta.left, k).terms()) {
            auto& slot = out[m];
            slot.add_term(mono * tb.left, coeff * d);
            if (slot.is_zero()) out.erase(m);
          }
        }
    }
  return out;
}

inline FieldModes field_apply(const VMono& a, const VSeries& b, const Bicharacter& bc, const ModeWindow& win,
                              const FieldOptions& opt = {}) {
  FieldModes out;
  for (const auto& [mono, c] : b.terms()) add_modes(out, field_apply(a, mono, bc, win, opt), c);
  return out;
}

inline FieldModes field_apply(const VSeries& a, const VSeries& b, const Bicharacter& bc, const ModeWindow& win,
                              const FieldOptions& opt = {}) {
  FieldModes out;
  for (const auto& [mono, c] : a.terms()) add_modes(out, field_apply(mono, b, bc, win, opt), c);
  return out;
}

/// The single coefficient of z^m in Y(a,z)b.
inline VSeries field_mode(const VMono& a, const VSeries& b, int m, const Bicharacter& bc, int degree_cap = 64) {
  const FieldModes modes = field_apply(a, b, bc, ModeWindow(m, m, degree_cap));
  auto it = modes.find(m);
  return it == modes.end() ? VSeries() : it->second;
}

/// h_n, the coefficient of z^{-n-1} in Y(h, z).
inline VSeries heisenberg_mode(int n, const VSeries& b, const Bicharacter& bc) {
  return field_mode(VMono::hn(1), b, -n - 1, bc);
}

inline VSeries to_series(const VElementT<RatFunc>& a, int order) {
  VSeries r;
  for (const auto& [m, c] : a.terms()) r.add_term(m, expand_to_series(c, order));
  return r;
}

inline VSeries to_series(const VElement& a, int order) {
  VSeries r;
  for (const auto& [m, c] : a.terms()) r.add_term(m, ParamSeries(order, c));
  return r;
}

/// Fock space to V: p_n <-> n v_n h^(n), e^{k alpha} <-> e^{k alpha}.
inline VElementT<RatFunc> fock_to_v(const LatticeState& s, const VFamily& v) {
  VElementT<RatFunc> r;
  for (const auto& [key, c] : s.terms()) {
    RatFunc f = c;
    for (int n : key.first.parts()) f = f * RatFunc(n) * v.v(n);
    r.add_term({key.first, key.second}, f);
  }
  return r;
}

/// V to Fock space: h^(n) <-> v_n^{-1} p_n / n.
inline LatticeState v_to_fock(const VElementT<RatFunc>& a, const VFamily& v) {
  LatticeState s;
  for (const auto& [m, c] : a.terms()) {
    RatFunc f = c;
    for (int n : m.h.parts()) f = f * v.v_inv(n) * RatFunc(Rational(1, n));
    s.add_term(m.h, m.charge, f);
  }
  return s;
}

}  // namespace symqva
