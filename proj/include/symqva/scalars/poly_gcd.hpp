#pragma once

// GCD and exact division in Q[q,t] through the recursive representation
// Z[q][t]: t is the outer variable, coefficients are dense integer
// polynomials in q. The gcd runs a primitive pseudo-remainder sequence,
// taking primitive parts (over Z[q]) after every step.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "symqva/scalars/param_poly.hpp"

namespace symqva::detail {

using ZPoly = std::vector<Integer>;  // coefficient i multiplies q^i
using BPoly = std::vector<ZPoly>;    // entry j multiplies t^j

inline void trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}
inline void trim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }
inline int deg(const BPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Integer int_content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline void zdiv_int(ZPoly& a, const Integer& d) {
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

/// Exact division in Z[q]; throws if b does not divide a.
inline ZPoly zexact_div(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw ArithmeticError("division by zero polynomial");
  if (a.empty()) return {};
  if (deg(a) < deg(b)) throw InvariantError("inexact polynomial division");
  ZPoly quot(a.size() - b.size() + 1, Integer(0));
  const Integer& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const int shift = deg(a) - deg(b);
    if (!mpz_divisible_p(a.back().get_mpz_t(), lb.get_mpz_t()))
      throw InvariantError("inexact polynomial division");
    Integer c;
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw InvariantError("inexact polynomial division");
  trim(quot);
  return quot;
}

inline ZPoly zprimitive(ZPoly a) {
  if (a.empty()) return a;
  Integer g = int_content(a);
  if (sgn(a.back()) < 0) g = -g;
  zdiv_int(a, g);
  return a;
}

// Pseudo-remainder of a by b in Z[q].
inline ZPoly zprem(ZPoly a, const ZPoly& b) {
  const Integer& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const int shift = deg(a) - deg(b);
    const Integer la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    trim(a);
    if (!a.empty()) a = zprimitive(std::move(a));
  }
  return a;
}

/// gcd in Z[q], positive leading coefficient.
inline ZPoly zgcd(const ZPoly& a0, const ZPoly& b0) {
  auto positive = [](ZPoly r) {
    if (!r.empty() && sgn(r.back()) < 0)
      for (auto& c : r) c = -c;
    return r;
  };
  if (a0.empty()) return positive(b0);
  if (b0.empty()) return positive(a0);
  Integer ca = int_content(a0), cb = int_content(b0), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (deg(a0) == 0 || deg(b0) == 0) return ZPoly{c};
  ZPoly a = zprimitive(a0), b = zprimitive(b0);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = zprem(a, b);
    a = std::move(b);
    b = r.empty() ? ZPoly{} : zprimitive(std::move(r));
  }
  a = zprimitive(std::move(a));
  for (auto& x : a) x *= c;
  return a;
}

inline BPoly bscale(const BPoly& a, const ZPoly& s) {
  BPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(zmul(c, s));
  trim(r);
  return r;
}

inline ZPoly bcontent(const BPoly& a) {
  ZPoly g;
  for (const auto& c : a) {
    if (c.empty()) continue;
    g = zgcd(g, c);
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

inline BPoly bprimitive(BPoly a) {
  if (a.empty()) return a;
  ZPoly c = bcontent(a);
  if (sgn(a.back().back()) < 0)
    for (auto& x : c) x = -x;
  if (c.size() == 1 && c[0] == 1) return a;
  for (auto& coef : a)
    if (!coef.empty()) coef = zexact_div(coef, c);
  return a;
}

inline BPoly bprem(BPoly a, const BPoly& b) {
  const ZPoly& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const int shift = deg(a) - deg(b);
    const ZPoly la = a.back();
    for (auto& c : a) c = zmul(c, lb);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = zsub(a[i + shift], zmul(la, b[i]));
    trim(a);
  }
  return a;
}

/// gcd in Z[q][t]; result has positive leading coefficient.
inline BPoly bgcd(const BPoly& a0, const BPoly& b0) {
  if (a0.empty()) return bprimitive(b0).empty() ? BPoly{} : b0;
  if (b0.empty()) return a0;
  ZPoly c = zgcd(bcontent(a0), bcontent(b0));
  BPoly a = bprimitive(a0), b = bprimitive(b0);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (deg(b) == 0) {
      a = BPoly{ZPoly{Integer(1)}};
      break;
    }
    BPoly r = bprem(a, b);
    a = std::move(b);
    b = r.empty() ? BPoly{} : bprimitive(std::move(r));
  }
  a = bprimitive(std::move(a));
  return bscale(a, c);
}

/// Exact division in Z[q][t]; throws if b does not divide a.
inline BPoly bexact_div(BPoly a, const BPoly& b) {
  if (b.empty()) throw ArithmeticError("division by zero polynomial");
  if (a.empty()) return {};
  if (deg(a) < deg(b)) throw InvariantError("inexact polynomial division");
  BPoly quot(a.size() - b.size() + 1);
  while (!a.empty()) {
    if (deg(a) < deg(b)) throw InvariantError("inexact polynomial division");
    const int shift = deg(a) - deg(b);
    ZPoly c = zexact_div(a.back(), b.back());
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = zsub(a[i + shift], zmul(c, b[i]));
    quot[shift] = std::move(c);
    trim(a);
  }
  trim(quot);
  return quot;
}

// Heuristic gcd (evaluate at a large integer xi, take the integer gcd,
// rebuild the polynomial from its symmetric xi-adic digits, and confirm by
// trial division). The inputs are primitive over Z. Returns an empty optional
// when no attempt verifies; callers then fall back to the PRS.

inline Integer max_norm(const ZPoly& a) {
  Integer m = 0;
  for (const auto& c : a)
    if (abs(c) > m) m = abs(c);
  return m;
}
inline Integer max_norm(const BPoly& a) {
  Integer m = 0;
  for (const auto& row : a) {
    Integer r = max_norm(row);
    if (r > m) m = r;
  }
  return m;
}

inline Integer zeval(const ZPoly& a, const Integer& x) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Symmetric xi-adic digits of g: g = sum d_i xi^i with |d_i| <= xi/2.
inline ZPoly xi_digits(Integer g, const Integer& xi) {
  ZPoly out;
  const Integer half = xi / 2;
  while (sgn(g) != 0) {
    Integer d;
    mpz_fdiv_r(d.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
    if (d > half) d -= xi;
    out.push_back(d);
    g -= d;
    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
  }
  return out;
}

inline bool zdivides(const ZPoly& b, const ZPoly& a) {
  try {
    zexact_div(a, b);
    return true;
  } catch (const InvariantError&) {
    return false;
  }
}

inline bool bdivides(const BPoly& b, const BPoly& a);

inline void remove_int_content(BPoly& a) {
  Integer c = 0;
  for (const auto& row : a) {
    Integer r = int_content(row);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), r.get_mpz_t());
  }
  if (c > 1)
    for (auto& row : a) zdiv_int(row, c);
}

inline Integer heu_start(const Integer& na, const Integer& nb) { return 2 * std::min(na, nb) + 29; }
inline Integer heu_next(const Integer& xi) { return xi * 73794 / 27011 + 1; }

inline std::optional<ZPoly> zgcd_heu(const ZPoly& a, const ZPoly& b) {
  Integer xi = heu_start(max_norm(a), max_norm(b));
  for (int attempt = 0; attempt < 6; ++attempt, xi = heu_next(xi)) {
    Integer g;
    const Integer ea = zeval(a, xi), eb = zeval(b, xi);
    mpz_gcd(g.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
    ZPoly h = xi_digits(g, xi);
    if (h.empty()) continue;
    h = zprimitive(std::move(h));
    if (zdivides(h, a) && zdivides(h, b)) return h;
  }
  return std::nullopt;
}

inline std::optional<BPoly> bgcd_heu(const BPoly& a, const BPoly& b) {
  Integer xi = heu_start(max_norm(a), max_norm(b));
  for (int attempt = 0; attempt < 6; ++attempt, xi = heu_next(xi)) {
    // Evaluate q = xi: univariate integer polynomials in t.
    ZPoly ua, ub;
    for (const auto& row : a) ua.push_back(zeval(row, xi));
    for (const auto& row : b) ub.push_back(zeval(row, xi));
    trim(ua);
    trim(ub);
    if (ua.size() != a.size() || ub.size() != b.size()) continue;  // leading coefficient vanished
    const Integer ca = int_content(ua), cb = int_content(ub);
    Integer cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    auto ug = zgcd_heu(zprimitive(ua), zprimitive(ub));
    if (!ug) continue;
    BPoly h;
    for (auto c : *ug) h.push_back(xi_digits(c * cg, xi));
    trim(h);
    if (h.empty()) continue;
    // Remove the integer content only; the q-content is part of the gcd.
    Integer content = 0;
    for (const auto& row : h) {
      Integer r = int_content(row);
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), r.get_mpz_t());
    }
    for (auto& row : h) zdiv_int(row, content);
    if (sgn(h.back().back()) < 0)
      for (auto& row : h)
        for (auto& c : row) c = -c;
    if (bdivides(h, a) && bdivides(h, b)) return h;
  }
  return std::nullopt;
}

inline bool bdivides(const BPoly& b, const BPoly& a) {
  try {
    bexact_div(a, b);
    return true;
  } catch (const InvariantError&) {
    return false;
  }
}

/// Converts p to an integer polynomial p * scale; returns (poly, scale).
inline std::pair<BPoly, Integer> to_bpoly(const ParamPoly& p) {
  Integer lcm_den = 1;
  for (const auto& [e, c] : p.terms())
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  BPoly r(p.degree_t() + 1);
  for (const auto& [e, c] : p.terms()) {
    ZPoly& row = r[e.t];
    if (static_cast<int>(row.size()) <= e.q) row.resize(e.q + 1, Integer(0));
    Integer v = c.get_num() * (lcm_den / c.get_den());
    row[e.q] = v;
  }
  trim(r);
  return {std::move(r), lcm_den};
}

inline ParamPoly from_bpoly(const BPoly& a, const Rational& scale = 1) {
  ParamPoly r;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < a[j].size(); ++i)
      if (sgn(a[j][i]) != 0)
        r.add_term(ParamExp{static_cast<int>(i), static_cast<int>(j)}, Rational(a[j][i]) * scale);
  return r;
}

// Smallest exponents over all terms; the monomial content of p.
inline ParamExp monomial_content(const ParamPoly& p) {
  ParamExp m{1 << 30, 1 << 30};
  for (const auto& [e, c] : p.terms()) {
    m.q = std::min(m.q, e.q);
    m.t = std::min(m.t, e.t);
  }
  return m;
}

}  // namespace symqva::detail

namespace symqva {

/// gcd of a and b in Q[q,t], normalized to have leading coefficient 1
/// under graded-lex order. gcd(0, 0) = 0.
inline ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
  auto monic = [](ParamPoly p) {
    if (!p.is_zero()) p *= Rational(1) / p.leading_term().second;
    return p;
  };
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return ParamPoly(1);
  if (a.is_monomial() || b.is_monomial()) {
    const ParamExp ma = detail::monomial_content(a), mb = detail::monomial_content(b);
    return ParamPoly::monomial(1, std::min(ma.q, mb.q), std::min(ma.t, mb.t));
  }
  auto [pa, sa] = detail::to_bpoly(a);
  auto [pb, sb] = detail::to_bpoly(b);
  detail::remove_int_content(pa);
  detail::remove_int_content(pb);
  if (auto h = detail::bgcd_heu(pa, pb)) return monic(detail::from_bpoly(*h));
  return monic(detail::from_bpoly(detail::bgcd(pa, pb)));
}

/// Exact quotient a / b in Q[q,t]; throws InvariantError when b does not divide a.
inline ParamPoly exact_div(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (a.is_zero()) return a;
  if (b.is_constant()) return a * (Rational(1) / b.constant_term());
  auto [pa, sa] = detail::to_bpoly(a);
  auto [pb, sb] = detail::to_bpoly(b);
  // a = pa / sa, b = pb / sb. pb may carry integer content; move it to the scale.
  Integer cb = 0;
  for (const auto& row : pb) {
    Integer g = detail::int_content(row);
    mpz_gcd(cb.get_mpz_t(), cb.get_mpz_t(), g.get_mpz_t());
  }
  for (auto& row : pb) detail::zdiv_int(row, cb);
  detail::BPoly quot = detail::bexact_div(pa, pb);
  return detail::from_bpoly(quot, Rational(sb) / (Rational(sa) * Rational(cb)));
}

}  // namespace symqva
