#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "symqva/bicharacter/hopf.hpp"

using namespace symqva;

namespace {

using Pair = std::map<std::pair<VMono, VMono>, Rational>;
using Triple = std::map<std::tuple<VMono, VMono, VMono>, Rational>;

void bump(Pair& p, const VMono& a, const VMono& b, const Rational& c) {
  auto& slot = p[{a, b}];
  slot += c;
  if (sgn(slot) == 0) p.erase({a, b});
}

void bump(Triple& p, const VMono& a, const VMono& b, const VMono& c, const Rational& x) {
  auto& slot = p[{a, b, c}];
  slot += x;
  if (sgn(slot) == 0) p.erase({a, b, c});
}

Pair as_pair(const std::vector<SweedlerTerm>& terms) {
  Pair p;
  for (const auto& t : terms) bump(p, t.left, t.right, t.coeff);
  return p;
}

// Every h-factor is primitive: sum over all 2^k ways to send labelled factors left or right.
Pair brute_coproduct(const VMono& m) {
  const auto& parts = m.h.parts();
  Pair p;
  for (unsigned mask = 0; mask < (1u << parts.size()); ++mask) {
    std::vector<int> l, r;
    for (std::size_t i = 0; i < parts.size(); ++i) ((mask >> i) & 1 ? l : r).push_back(parts[i]);
    bump(p, {Partition::from_multiset(l), m.charge}, {Partition::from_multiset(r), m.charge}, Rational(1));
  }
  return p;
}

VMono random_mono(std::mt19937& gen, int max_degree) {
  std::uniform_int_distribution<int> charge(-2, 2);
  std::uniform_int_distribution<int> deg(0, max_degree);
  int budget = deg(gen);
  std::vector<int> parts;
  while (budget > 0) {
    std::uniform_int_distribution<int> part(1, budget);
    const int p = part(gen);
    parts.push_back(p);
    budget -= p;
  }
  return {Partition::from_multiset(parts), charge(gen)};
}

std::vector<VMono> samples() {
  std::vector<VMono> out{VMono::one(), VMono::hn(1), VMono::hn(2), VMono::hn(3), VMono::e(1), VMono::e(-1), VMono::e(2)};
  std::mt19937 gen(7);
  for (int i = 0; i < 40; ++i) out.push_back(random_mono(gen, 4));
  return out;
}

}  // namespace

TEST(Hopf, CoproductExamples) {
  const VMono h = VMono::hn(1), one = VMono::one(), ea = VMono::e(1);
  EXPECT_EQ(as_pair(coproduct(h)), (Pair{{{h, one}, Rational(1)}, {{one, h}, Rational(1)}}));
  EXPECT_EQ(as_pair(coproduct(ea)), (Pair{{{ea, ea}, Rational(1)}}));
  const VMono hea = VMono::hn(1, 1);
  EXPECT_EQ(as_pair(coproduct(hea)), (Pair{{{hea, ea}, Rational(1)}, {{ea, hea}, Rational(1)}}));
}

TEST(Hopf, CoproductMatchesPositionwiseSplitting) {
  for (const auto& m : samples()) EXPECT_EQ(as_pair(coproduct(m)), brute_coproduct(m)) << m;
  const VMono hh{Partition{1, 1}, 0};
  const Pair split = as_pair(coproduct(hh));
  EXPECT_EQ(split.at(std::make_pair(VMono::hn(1), VMono::hn(1))), Rational(2));
}

TEST(Hopf, Coassociativity) {
  for (const auto& m : samples()) {
    Triple left, right;
    for (const auto& t : coproduct(m)) {
      for (const auto& u : coproduct(t.left)) bump(left, u.left, u.right, t.right, t.coeff * u.coeff);
      for (const auto& u : coproduct(t.right)) bump(right, t.left, u.left, u.right, t.coeff * u.coeff);
    }
    EXPECT_EQ(left, right) << m;
  }
}

TEST(Hopf, AntipodeAndCounitAxioms) {
  for (const auto& m : samples()) {
    VElement sl, sr, cl, cr;
    for (const auto& t : coproduct(m)) {
      const auto [s1, a1] = antipode(t.left);
      sl.add_term(a1 * t.right, t.coeff * s1);
      const auto [s2, a2] = antipode(t.right);
      sr.add_term(t.left * a2, t.coeff * s2);
      cl.add_term(t.right, t.coeff * counit(t.left));
      cr.add_term(t.left, t.coeff * counit(t.right));
    }
    const VElement unit = counit(m) ? VElement(VMono::one(), Rational(1)) : VElement();
    EXPECT_EQ(sl, unit) << m;
    EXPECT_EQ(sr, unit) << m;
    EXPECT_EQ(cl, VElement(m, Rational(1)));
    EXPECT_EQ(cr, VElement(m, Rational(1)));
  }
}

TEST(Hopf, AntipodeValues) {
  EXPECT_EQ(antipode(VMono::hn(1)), std::make_pair(-1, VMono::hn(1)));
  // Primitive elements are negated by any antipode, h^(2) included.
  EXPECT_EQ(antipode(VMono::hn(2)), std::make_pair(-1, VMono::hn(2)));
  EXPECT_EQ(antipode(VMono::e(2)), std::make_pair(1, VMono::e(-2)));
  EXPECT_EQ(antipode(VMono{Partition{2, 1}, 3}), std::make_pair(1, VMono{Partition{2, 1}, -3}));
}

TEST(Hopf, DerivationExamples) {
  EXPECT_EQ(d_act(VMono::e(1)), VElement(VMono::hn(1, 1), Rational(1)));
  EXPECT_EQ(d_act(VMono::hn(1)), VElement(VMono::hn(2), Rational(2)));
  EXPECT_TRUE(d_act(VMono::one()).is_zero());
  EXPECT_EQ(d_act(VMono{Partition{1, 1}, 0}), VElement(VMono{Partition{2, 1}, 0}, Rational(4)));
}

TEST(Hopf, DerivationProperties) {
  const auto ms = samples();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const VMono& x = ms[i];
    const VMono& y = ms[(i * 7 + 3) % ms.size()];
    const VElement X(x, Rational(1)), Y(y, Rational(1));
    EXPECT_EQ(d_act(X * Y), d_act(X) * Y + X * d_act(Y)) << x << " " << y;

    // Delta D = (D (x) 1 + 1 (x) D) Delta
    Pair lhs, rhs;
    const VElement dx = d_act(x);
    for (const auto& [m, c] : dx.terms())
      for (const auto& t : coproduct(m)) bump(lhs, t.left, t.right, c * t.coeff);
    for (const auto& t : coproduct(x)) {
      const VElement dl = d_act(t.left), dr = d_act(t.right);
      for (const auto& [m, c] : dl.terms()) bump(rhs, m, t.right, c * t.coeff);
      for (const auto& [m, c] : dr.terms()) bump(rhs, t.left, m, c * t.coeff);
    }
    EXPECT_EQ(lhs, rhs) << x;

    EXPECT_EQ(antipode(d_act(X)), d_act(antipode(X))) << x;
  }
}

TEST(Hopf, DividedPowersOfGenerators) {
  const DividedPowers dp;
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 5; ++k) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), n + k, k);
      EXPECT_EQ(dp.get(VMono::hn(n), k), VElement(VMono::hn(n + k), Rational(b)));
    }
  // D^(2) e^alpha = (h^2 / 2 + h^(2)) e^alpha
  VElement want;
  want.add_term({Partition{1, 1}, 1}, Rational(1, 2));
  want.add_term({Partition{2}, 1}, Rational(1));
  EXPECT_EQ(dp.get(VMono::e(1), 2), want);
}

TEST(Hopf, ParseInvertsToString) {
  for (const auto& m : samples()) EXPECT_EQ(VMono::parse(m.to_string()), m) << m;
  EXPECT_EQ(VMono::parse("h*e"), VMono::hn(1, 1));
  EXPECT_EQ(VMono::parse("e^-2"), VMono::e(-2));
  for (const char* bad : {"", "x", "h0", "e^", "h*", "e^1x"}) EXPECT_THROW(VMono::parse(bad), DomainError) << bad;
}
