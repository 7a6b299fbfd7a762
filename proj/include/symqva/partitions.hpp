#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "symqva/errors.hpp"

namespace symqva {

/// Integer partition: weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw DomainError("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    }
  }
  /// Sorts an arbitrary multiset of positive integers into a partition.
  static Partition from_multiset(std::vector<int> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  int multiplicity(int part) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
  }

  /// Multiset union with another partition (p_lambda * p_mu = p_{lambda u mu}).
  Partition joined(const Partition& o) const {
    std::vector<int> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return from_multiset(std::move(all));
  }
  Partition with_part(int part) const { return joined(Partition{part}); }
  /// Removes one copy of `part`; the caller ensures it is present.
  Partition without_part(int part) const {
    std::vector<int> p = parts_;
    auto it = std::find(p.begin(), p.end(), part);
    if (it == p.end()) throw DomainError("part not present in partition");
    p.erase(it);
    return Partition(std::move(p));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }
  friend bool operator==(const Partition&, const Partition&) = default;

  /// Canonical order: ascending weight, then descending lexicographic.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    return b.parts_ <=> a.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// All partitions of n in descending lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw DomainError("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      cur.push_back(k);
      self(self, remaining - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// All partitions of weight <= n, in canonical order.
inline std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k) {
    auto ps = partitions_of(k);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

namespace detail {
inline void require_same_weight(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight())
    throw DomainError("dominance order compares partitions of equal weight, got " + a.to_string() + " and " +
                      b.to_string());
}
}  // namespace detail

/// mu <= lam in dominance order: every prefix sum of mu is at most that of lam.
inline bool dominance_leq(const Partition& mu, const Partition& lam) {
  detail::require_same_weight(mu, lam);
  const std::size_t n = std::max(mu.parts().size(), lam.parts().size());
  int smu = 0, slam = 0;
  for (std::size_t i = 0; i < n; ++i) {
    smu += mu[i];
    slam += lam[i];
    if (smu > slam) return false;
  }
  return true;
}

inline bool dominance_comparable(const Partition& a, const Partition& b) {
  return dominance_leq(a, b) || dominance_leq(b, a);
}

/// z_lambda = prod_i i^{m_i} m_i!.
inline mpz_class z_of(const Partition& lam) {
  mpz_class z = 1;
  std::map<int, int> mult;
  for (int p : lam.parts()) ++mult[p];
  for (const auto& [part, m] : mult) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(m));
    z *= pw * f;
  }
  return z;
}

/// Descending lexicographic order, which refines dominance: if mu < lam in
/// dominance then lam comes first.
inline std::vector<Partition> linear_extension(std::vector<Partition> parts) {
  for (std::size_t i = 1; i < parts.size(); ++i) detail::require_same_weight(parts[0], parts[i]);
  std::sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) { return a.parts() > b.parts(); });
  return parts;
}

}  // namespace symqva
