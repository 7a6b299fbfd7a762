#include <gtest/gtest.h>

#include "symqva/orthopoly.hpp"

using namespace symqva;

namespace {

const std::vector<VFamily>& presets() {
  static const std::vector<VFamily> all{VFamily::schur(), VFamily::hall_littlewood(), VFamily::macdonald()};
  return all;
}

RatFunc one() { return RatFunc(1); }

// Sort by number of parts, then descending lex. Length is weakly decreasing
// along dominance, so this is another linear extension; it differs from
// descending lex from weight 6 on.
std::vector<Partition> length_first(int n) {
  auto ps = partitions_of(n);
  std::stable_sort(ps.begin(), ps.end(), [](const Partition& a, const Partition& b) { return a.length() < b.length(); });
  return ps;
}

}  // namespace

TEST(OrthoFamily, WeightOne) {
  for (const auto& v : presets()) {
    const auto fam = build_family(v, 1);
    EXPECT_EQ(fam.P.at({1}), SymFunc::p({1}));
  }
  const auto hl = build_family(VFamily::hall_littlewood(), 1);
  EXPECT_EQ(hl.Q.at({1}), (one() - RatFunc::t()) * SymFunc::p({1}));
  const auto mac = build_family(VFamily::macdonald(), 1);
  EXPECT_EQ(mac.Q.at({1}), ((one() - RatFunc::t()) / (one() - RatFunc::q())) * SymFunc::p({1}));
}

TEST(OrthoFamily, HallLittlewoodWeightTwo) {
  const auto fam = build_family(VFamily::hall_littlewood(), 2);
  const MonomialCoeffs want{{Partition{2}, one()}, {Partition{1, 1}, one() - RatFunc::t()}};
  EXPECT_EQ(to_monomial_basis(fam.P.at({2})), want);
  EXPECT_EQ(fam.u_coeffs.at({Partition{2}, Partition{1, 1}}), one() - RatFunc::t());
  EXPECT_EQ(fam.P.at({1, 1}), monomial_symmetric({1, 1}));
}

TEST(OrthoFamily, MacdonaldWeightTwo) {
  // P_(2) = m_(2) + (1+q)(1-t)/(1-qt) m_(1,1).
  const RatFunc q = RatFunc::q(), t = RatFunc::t();
  const auto fam = build_family(VFamily::macdonald(), 2);
  EXPECT_EQ(fam.u_coeffs.at({Partition{2}, Partition{1, 1}}), (one() + q) * (one() - t) / (one() - q * t));
}

TEST(OrthoFamily, SchurPresetGivesSchurFunctions) {
  for (int n = 1; n <= 6; ++n) {
    const auto fam = build_family(VFamily::schur(), n);
    for (const auto& [lam, P] : fam.P) EXPECT_EQ(P, schur_oracle(lam)) << lam;
  }
}

TEST(OrthoFamily, AuditUpToWeightSix) {
  for (const auto& v : presets())
    for (int n = 1; n <= 6; ++n) {
      const auto fam = cached_family(v, n);
      for (const auto& [key, c] : fam->u_coeffs) {
        EXPECT_TRUE(dominance_leq(key.second, key.first) && key.first != key.second);
        EXPECT_FALSE(c.is_zero());
      }
      for (const auto& [lam, P] : fam->P) {
        for (const auto& [mu, c] : to_monomial_basis(P))
          if (!dominance_comparable(mu, lam)) ADD_FAILURE() << "incomparable coefficient " << lam << " " << mu;
        for (const auto& [mu, Qmu] : fam->Q) {
          EXPECT_EQ(scalar_product(P, Qmu, v), RatFunc(lam == mu ? 1 : 0)) << v.name() << lam << mu;
          if (lam != mu) {
            EXPECT_TRUE(scalar_product(P, fam->P.at(mu), v).is_zero());
          }
        }
      }
    }
}

TEST(OrthoFamily, OrderIndependence) {
  for (const auto& v : presets())
    for (int n = 1; n <= 6; ++n) {
      const auto alt = build_family(v, n, length_first(n));
      EXPECT_EQ(alt.P, cached_family(v, n)->P) << v.name() << " weight " << n;
    }
  EXPECT_NE(length_first(6), linear_extension(partitions_of(6)));
}

TEST(OrthoFamily, RejectsNonExtensions) {
  auto bad = linear_extension(partitions_of(3));
  std::reverse(bad.begin(), bad.end());
  EXPECT_THROW(build_family(VFamily::schur(), 3, bad), DomainError);
  EXPECT_THROW(build_family(VFamily::schur(), 3, std::vector<Partition>{{3}}), DomainError);
}

TEST(OrthoFamily, ExistenceFailureIsReported) {
  // v_1 = 1, v_2 = 2, v_3 = 1/3: the weight-6 incomparable pairs fail to be
  // orthogonal for this arbitrary family.
  const VFamily odd = VFamily::custom("odd", [](int n) {
    return n == 2 ? RatFunc(2) : n == 3 ? RatFunc(Rational(1, 3)) : RatFunc(1);
  });
  bool threw = false;
  try {
    build_family(odd, 6);
  } catch (const ExistenceError& e) {
    threw = true;
    EXPECT_NE(std::string(e.what()).find("<P"), std::string::npos);
  }
  EXPECT_TRUE(threw);
}

TEST(OrthoFamily, DegenerateNorm) {
  // v_1 = 1, v_2 = -1: <m_(1,1), m_(1,1)> = (2 v_1^2 + 2 v_2)/4 = 0.
  const VFamily deg = VFamily::custom("deg", [](int n) { return n == 2 ? RatFunc(-1) : RatFunc(1); });
  EXPECT_THROW(build_family(deg, 2), DegenerateNormError);
}

TEST(Specialization, DegenerationChain) {
  EXPECT_TRUE(specialization_check(Specialization::schur_is_P_at_v1, 6).pass);
  EXPECT_TRUE(specialization_check(Specialization::hl_t0_is_schur, 5).pass);
  EXPECT_TRUE(specialization_check(Specialization::macdonald_q0_is_hl, 5).pass);
  EXPECT_TRUE(specialization_check(Specialization::macdonald_qt_is_schur, 5).pass);
}
