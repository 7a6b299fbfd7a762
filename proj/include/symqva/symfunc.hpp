#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "symqva/partitions.hpp"
#include "symqva/scalars.hpp"

namespace symqva {

/// A multiplicative family v_lambda = prod v_{lambda_i} in F^x, given by its
/// values v_n on single parts.
class VFamily {
 public:
  enum class Kind { schur, hall_littlewood, macdonald, custom };

  VFamily(Kind kind, std::string name, std::function<RatFunc(int)> v_of)
      : kind_(kind), name_(std::move(name)), v_of_(std::move(v_of)) {
    cache_.reserve(kCached + 1);
    inv_cache_.reserve(kCached + 1);
    cache_.emplace_back(1);
    inv_cache_.emplace_back(1);
    for (int n = 1; n <= kCached; ++n) {
      RatFunc vn = v_of_(n);
      if (vn.is_zero()) throw DomainError("multiplicative family has v_" + std::to_string(n) + " = 0");
      inv_cache_.push_back(vn.inverse());
      cache_.push_back(std::move(vn));
    }
  }

  /// v_n = 1: Schur functions.
  static VFamily schur() {
    return VFamily(Kind::schur, "schur", [](int) { return RatFunc(1); });
  }
  /// v_n = 1/(1 - t^n): Hall-Littlewood functions.
  static VFamily hall_littlewood() {
    return VFamily(Kind::hall_littlewood, "hall_littlewood", [](int n) {
      return RatFunc(ParamPoly(1), ParamPoly(1) - ParamPoly::monomial(1, 0, n));
    });
  }
  /// v_n = (1 - q^n)/(1 - t^n): Macdonald functions.
  static VFamily macdonald() {
    return VFamily(Kind::macdonald, "macdonald", [](int n) {
      return RatFunc(ParamPoly(1) - ParamPoly::monomial(1, n, 0), ParamPoly(1) - ParamPoly::monomial(1, 0, n));
    });
  }
  static VFamily custom(std::string name, std::function<RatFunc(int)> v_of) {
    return VFamily(Kind::custom, std::move(name), std::move(v_of));
  }
  /// Accepts the canonical names plus the short forms "hl" and "mac".
  static VFamily by_name(const std::string& name) {
    if (name == "schur") return schur();
    if (name == "hall_littlewood" || name == "hl") return hall_littlewood();
    if (name == "macdonald" || name == "mac") return macdonald();
    throw DomainError("unknown preset '" + name + "' (expected schur, hl, macdonald)");
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  RatFunc v(int n) const {
    if (n < 1) throw DomainError("v_n is defined for n >= 1");
    return n <= kCached ? cache_[n] : v_of_(n);
  }
  RatFunc v_inv(int n) const {
    if (n < 1) throw DomainError("v_n is defined for n >= 1");
    return n <= kCached ? inv_cache_[n] : v_of_(n).inverse();
  }
  RatFunc v(const Partition& lam) const {
    RatFunc r(1);
    for (int p : lam.parts()) r *= v(p);
    return r;
  }
  RatFunc v_inv(const Partition& lam) const {
    RatFunc r(1);
    for (int p : lam.parts()) r *= v_inv(p);
    return r;
  }

 private:
  static constexpr int kCached = 24;
  Kind kind_;
  std::string name_;
  std::function<RatFunc(int)> v_of_;
  std::vector<RatFunc> cache_;
  std::vector<RatFunc> inv_cache_;
};

/// Element of Lambda_F in the power-sum basis: sum_lambda c_lambda p_lambda.
class SymFunc {
 public:
  using Terms = std::map<Partition, RatFunc>;

  SymFunc() = default;
  explicit SymFunc(Terms terms) {
    for (auto& [lam, c] : terms) add_term(lam, c);
  }
  static SymFunc one() { return p(Partition{}); }
  static SymFunc p(const Partition& lam, RatFunc c = RatFunc(1)) {
    SymFunc f;
    f.add_term(lam, c);
    return f;
  }
  static SymFunc power_sum(int n) { return p(Partition{n}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(const Partition& lam) const {
    auto it = terms_.find(lam);
    return it == terms_.end() ? RatFunc() : it->second;
  }
  int max_weight() const { return terms_.empty() ? -1 : terms_.rbegin()->first.weight(); }

  void add_term(const Partition& lam, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(lam, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Weight-n component.
  SymFunc component(int n) const {
    SymFunc r;
    for (const auto& [lam, c] : terms_)
      if (lam.weight() == n) r.terms_.emplace(lam, c);
    return r;
  }

  SymFunc operator-() const {
    SymFunc r = *this;
    for (auto& [lam, c] : r.terms_) c = -c;
    return r;
  }
  SymFunc& operator+=(const SymFunc& o) {
    for (const auto& [lam, c] : o.terms_) add_term(lam, c);
    return *this;
  }
  SymFunc& operator-=(const SymFunc& o) {
    for (const auto& [lam, c] : o.terms_) add_term(lam, -c);
    return *this;
  }
  friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
  friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
  friend SymFunc operator*(const RatFunc& s, const SymFunc& f) {
    SymFunc r;
    if (s.is_zero()) return r;
    for (const auto& [lam, c] : f.terms_) r.terms_.emplace(lam, s * c);
    return r;
  }
  friend SymFunc operator*(const SymFunc& f, const RatFunc& s) { return s * f; }

  /// Ring product: p_lambda p_mu = p_{lambda u mu}.
  friend SymFunc operator*(const SymFunc& f, const SymFunc& g) {
    SymFunc r;
    for (const auto& [a, ca] : f.terms_)
      for (const auto& [b, cb] : g.terms_) r.add_term(a.joined(b), ca * cb);
    return r;
  }

  friend bool operator==(const SymFunc&, const SymFunc&) = default;
  friend std::ostream& operator<<(std::ostream& os, const SymFunc& f) { return os << f.to_string(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [lam, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + c.to_string() + "]p" + lam.to_string();
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Applies fn to every coefficient, dropping terms that become zero.
template <class Fn>
SymFunc map_coeffs(const SymFunc& f, Fn&& fn) {
  SymFunc r;
  for (const auto& [lam, c] : f.terms()) r.add_term(lam, fn(c));
  return r;
}

/// Coefficients in the monomial basis, m_lambda -> coefficient.
using MonomialCoeffs = std::map<Partition, RatFunc>;

/// <f, g>_v, the bilinear extension of <p_lambda, p_mu> = delta z_lambda v_lambda.
inline RatFunc scalar_product(const SymFunc& f, const SymFunc& g, const VFamily& v) {
  RatFunc acc;
  const SymFunc& small = f.terms().size() <= g.terms().size() ? f : g;
  const SymFunc& large = &small == &f ? g : f;
  for (const auto& [lam, c] : small.terms()) {
    auto it = large.terms().find(lam);
    if (it == large.terms().end()) continue;
    acc += c * it->second * RatFunc(Rational(z_of(lam))) * v.v(lam);
  }
  return acc;
}

/// Adjoint of multiplication by p_n: n v_n d/dp_n on the p-basis.
inline SymFunc p_perp(int n, const SymFunc& f, const VFamily& v) {
  if (n < 1) throw DomainError("p_perp requires n >= 1");
  SymFunc r;
  const RatFunc scale = RatFunc(n) * v.v(n);
  for (const auto& [lam, c] : f.terms()) {
    const int m = lam.multiplicity(n);
    if (m == 0) continue;
    r.add_term(lam.without_part(n), RatFunc(m) * scale * c);
  }
  return r;
}

namespace detail {

// Coefficients of m_mu in p_lambda for all lambda, mu of weight n, obtained by
// expanding p_lambda in n variables and reading off x^mu (mu padded with zeros).
struct TransitionData {
  std::vector<Partition> basis;                   // partitions_of(n)
  std::map<Partition, std::size_t> index;
  std::vector<std::vector<Rational>> p_to_m;      // [lambda][mu]
  std::vector<std::vector<Rational>> m_to_p;      // inverse matrix, [mu][lambda]
};

inline std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw InvariantError("singular power-sum to monomial transition matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational s = Rational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline std::vector<Rational> expand_power_sum_product(const Partition& lam, const std::vector<Partition>& targets,
                                                      int nvars) {
  // Polynomial in nvars variables: exponent vector -> integer coefficient.
  std::map<std::vector<int>, mpz_class> poly;
  poly[std::vector<int>(nvars, 0)] = 1;
  for (int part : lam.parts()) {
    std::map<std::vector<int>, mpz_class> next;
    for (const auto& [e, c] : poly)
      for (int j = 0; j < nvars; ++j) {
        std::vector<int> f = e;
        f[j] += part;
        next[f] += c;
      }
    poly.swap(next);
  }
  std::vector<Rational> row;
  row.reserve(targets.size());
  for (const auto& mu : targets) {
    std::vector<int> e(nvars, 0);
    for (int i = 0; i < mu.length(); ++i) e[i] = mu[i];
    auto it = poly.find(e);
    row.emplace_back(it == poly.end() ? mpz_class(0) : it->second);
  }
  return row;
}

inline const TransitionData& transition(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TransitionData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto data = std::make_unique<TransitionData>();
    data->basis = partitions_of(n);
    for (std::size_t i = 0; i < data->basis.size(); ++i) data->index[data->basis[i]] = i;
    const int nvars = std::max(n, 1);
    for (const auto& lam : data->basis) data->p_to_m.push_back(expand_power_sum_product(lam, data->basis, nvars));
    // Row vector convention: m-coeffs = p-coeffs * p_to_m, so p-coeffs = m-coeffs * inverse.
    data->m_to_p = invert(data->p_to_m);
    slot = std::move(data);
  }
  return *slot;
}

}  // namespace detail

/// Coefficients of f in the monomial basis.
inline MonomialCoeffs to_monomial_basis(const SymFunc& f) {
  MonomialCoeffs out;
  for (int n = 0; n <= f.max_weight(); ++n) {
    const SymFunc comp = f.component(n);
    if (comp.is_zero()) continue;
    const auto& tr = detail::transition(n);
    for (std::size_t j = 0; j < tr.basis.size(); ++j) {
      RatFunc acc;
      for (const auto& [lam, c] : comp.terms()) {
        const Rational& e = tr.p_to_m[tr.index.at(lam)][j];
        if (sgn(e) != 0) acc += c * RatFunc(e);
      }
      if (!acc.is_zero()) out.emplace(tr.basis[j], acc);
    }
  }
  return out;
}

/// Inverse of to_monomial_basis.
inline SymFunc from_monomial_basis(const MonomialCoeffs& coeffs) {
  SymFunc out;
  for (const auto& [mu, c] : coeffs) {
    if (c.is_zero()) continue;
    const auto& tr = detail::transition(mu.weight());
    const auto& row = tr.m_to_p[tr.index.at(mu)];
    for (std::size_t j = 0; j < tr.basis.size(); ++j)
      if (sgn(row[j]) != 0) out.add_term(tr.basis[j], c * RatFunc(row[j]));
  }
  return out;
}

/// m_lambda in the p-basis.
inline SymFunc monomial_symmetric(const Partition& lam) { return from_monomial_basis({{lam, RatFunc(1)}}); }

/// Complete homogeneous function h_n = sum_{lambda |- n} p_lambda / z_lambda.
inline SymFunc complete_homogeneous(int n) {
  SymFunc h;
  if (n < 0) return h;
  for (const auto& lam : partitions_of(n)) h.add_term(lam, RatFunc(Rational(mpz_class(1), z_of(lam))));
  return h;
}

/// Schur function via the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
inline SymFunc schur_oracle(const Partition& lam) {
  const int k = lam.length();
  if (k == 0) return SymFunc::one();
  std::map<int, SymFunc> h;
  auto entry = [&](int i, int j) -> const SymFunc& {
    const int idx = lam[i] - i + j;
    auto it = h.find(idx);
    if (it == h.end()) it = h.emplace(idx, idx == 0 ? SymFunc::one() : complete_homogeneous(idx)).first;
    return it->second;
  };
  // Laplace expansion row by row; dp[mask] is the minor on the first
  // popcount(mask) rows using the columns in mask.
  std::vector<SymFunc> dp(1U << k);
  dp[0] = SymFunc::one();
  for (unsigned mask = 0; mask < (1U << k); ++mask) {
    if (dp[mask].is_zero()) continue;
    const int row = __builtin_popcount(mask);
    if (row == k) continue;
    int sign_count = 0;
    for (int col = k - 1; col >= 0; --col) {
      if (mask & (1U << col)) {
        ++sign_count;
        continue;
      }
      const SymFunc& e = entry(row, col);
      if (e.is_zero()) continue;
      SymFunc term = dp[mask] * e;
      if (sign_count % 2) term = -term;
      dp[mask | (1U << col)] += term;
    }
  }
  return dp[(1U << k) - 1];
}

}  // namespace symqva
