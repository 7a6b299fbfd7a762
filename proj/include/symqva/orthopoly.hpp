#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symqva/symfunc.hpp"

namespace symqva {

/// The families P_lambda, Q_lambda of one weight for a multiplicative family v.
struct OrthoFamily {
  VFamily v;
  int weight = 0;
  std::vector<Partition> order;  // the linear extension used, largest first
  std::map<Partition, SymFunc> P;
  std::map<Partition, SymFunc> Q;
  std::map<Partition, RatFunc> norm;  // <P_lambda, P_lambda>_v
  std::map<std::pair<Partition, Partition>, RatFunc> u_coeffs;  // m-coefficients of P_lambda below the diagonal
};

namespace detail {

inline void require_linear_extension(const std::vector<Partition>& order, int n) {
  auto expected = partitions_of(n);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) throw DomainError("ordering must list every partition of " + std::to_string(n) + " once");
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (dominance_leq(order[i], order[j]))
        throw DomainError("ordering is not a linear extension of dominance: " + order[i].to_string() +
                          " precedes " + order[j].to_string());
}

}  // namespace detail

/// Gram-Schmidt over a linear extension of dominance (descending lex unless
/// `ordering` is given). Each P_lambda starts from m_lambda and is made
/// orthogonal to the already built P_mu with mu strictly below lambda; the
/// remaining (incomparable) pairs are audited, never forced.
inline OrthoFamily build_family(const VFamily& v, int n, std::optional<std::vector<Partition>> ordering = {}) {
  OrthoFamily fam{v, n, {}, {}, {}, {}, {}};
  fam.order = ordering ? std::move(*ordering) : linear_extension(partitions_of(n));
  if (ordering) detail::require_linear_extension(fam.order, n);

  std::vector<Partition> done;
  for (auto it = fam.order.rbegin(); it != fam.order.rend(); ++it) {
    const Partition& lam = *it;
    const SymFunc m = monomial_symmetric(lam);
    SymFunc P = m;
    for (const auto& mu : done) {
      if (!dominance_leq(mu, lam)) continue;
      const RatFunc c = scalar_product(m, fam.P.at(mu), v) / fam.norm.at(mu);
      if (!c.is_zero()) P -= c * fam.P.at(mu);
    }
    for (const auto& mu : done) {
      const RatFunc ip = scalar_product(P, fam.P.at(mu), v);
      if (!ip.is_zero())
        throw ExistenceError("family " + v.name() + " does not exist at weight " + std::to_string(n) + ": <P" +
                             lam.to_string() + ", P" + mu.to_string() + "> = " + ip.to_string());
    }
    RatFunc nrm = scalar_product(P, P, v);
    if (nrm.is_zero()) throw DegenerateNormError("<P" + lam.to_string() + ", P" + lam.to_string() + "> = 0");

    for (const auto& [mu, c] : to_monomial_basis(P)) {
      if (mu == lam) {
        if (!c.is_one()) throw InvariantError("P" + lam.to_string() + " is not monic in m" + lam.to_string());
        continue;
      }
      if (!dominance_leq(mu, lam))
        throw ExistenceError("P" + lam.to_string() + " has a nonzero m" + mu.to_string() +
                             " coefficient outside the dominance order");
      fam.u_coeffs.emplace(std::make_pair(lam, mu), c);
    }
    fam.Q.emplace(lam, nrm.inverse() * P);
    fam.norm.emplace(lam, std::move(nrm));
    fam.P.emplace(lam, std::move(P));
    done.push_back(lam);
  }
  return fam;
}

/// Memoized build_family for the named presets; custom families are rebuilt
/// every call because their names need not be unique.
inline std::shared_ptr<const OrthoFamily> cached_family(const VFamily& v, int n) {
  if (v.kind() == VFamily::Kind::custom) return std::make_shared<const OrthoFamily>(build_family(v, n));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const OrthoFamily>> cache;
  const auto key = std::make_pair(static_cast<int>(v.kind()), n);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto fam = std::make_shared<const OrthoFamily>(build_family(v, n));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(fam)).first->second;
}

enum class Specialization { schur_is_P_at_v1, hl_t0_is_schur, macdonald_q0_is_hl, macdonald_qt_is_schur };

inline std::string to_string(Specialization s) {
  switch (s) {
    case Specialization::schur_is_P_at_v1: return "schur_is_P_at_v1";
    case Specialization::hl_t0_is_schur: return "hl_t0_is_schur";
    case Specialization::macdonald_q0_is_hl: return "macdonald_q0_is_hl";
    case Specialization::macdonald_qt_is_schur: return "macdonald_qt_is_schur";
  }
  return "?";
}

struct SpecializationResult {
  bool pass = true;
  std::string witness;  // first mismatch, empty on pass
};

/// Compares a parameter specialization of one family against another family
/// (or the Jacobi-Trudi oracle) for every partition of weight 1..n.
inline SpecializationResult specialization_check(Specialization kind, int n) {
  SpecializationResult res;
  auto fail = [&](const std::string& what, const SymFunc& got, const SymFunc& want) {
    res.pass = false;
    res.witness = what + ": got " + got.to_string() + ", expected " + want.to_string();
  };
  for (int k = 1; k <= n && res.pass; ++k) {
    std::shared_ptr<const OrthoFamily> fam;
    std::shared_ptr<const OrthoFamily> target;
    RatFunc (RatFunc::*sub)() const = nullptr;
    switch (kind) {
      case Specialization::schur_is_P_at_v1: fam = cached_family(VFamily::schur(), k); break;
      case Specialization::hl_t0_is_schur:
        fam = cached_family(VFamily::hall_littlewood(), k);
        sub = &RatFunc::at_t_zero;
        break;
      case Specialization::macdonald_q0_is_hl:
        fam = cached_family(VFamily::macdonald(), k);
        target = cached_family(VFamily::hall_littlewood(), k);
        sub = &RatFunc::at_q_zero;
        break;
      case Specialization::macdonald_qt_is_schur:
        fam = cached_family(VFamily::macdonald(), k);
        sub = &RatFunc::at_q_equals_t;
        break;
    }
    for (const auto& lam : fam->order) {
      auto specialize = [&](const SymFunc& f) {
        return sub ? map_coeffs(f, [&](const RatFunc& c) { return (c.*sub)(); }) : f;
      };
      SymFunc P, Q;
      try {
        P = specialize(fam->P.at(lam));
        Q = specialize(fam->Q.at(lam));
      } catch (const ArithmeticError& e) {
        res.pass = false;
        res.witness = "P" + lam.to_string() + ": " + e.what();
        break;
      }
      const SymFunc wantP = target ? target->P.at(lam) : schur_oracle(lam);
      const SymFunc wantQ = target ? target->Q.at(lam) : wantP;
      if (P != wantP) {
        fail("P" + lam.to_string(), P, wantP);
        break;
      }
      if (Q != wantQ) {
        fail("Q" + lam.to_string(), Q, wantQ);
        break;
      }
    }
  }
  return res;
}

}  // namespace symqva
