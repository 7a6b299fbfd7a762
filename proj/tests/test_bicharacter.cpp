#include <gtest/gtest.h>

#include <random>

#include "symqva/bicharacter/braiding.hpp"
#include "symqva/bicharacter/fields.hpp"

using namespace symqva;

namespace {

ParamSeries tpow(int order, int n, const Rational& c = Rational(1)) { return ParamSeries::monomial(order, c, 0, n); }
ParamSeries qt(int order, int dq, int dt, const Rational& c = Rational(1)) {
  return ParamSeries::monomial(order, c, dq, dt);
}

ParamSeries drop_q(const ParamSeries& s) {
  ParamSeries r(s.order());
  for (const auto& t : s.terms())
    if (t.exp.q == 0) r += ParamSeries::monomial(s.order(), t.coeff, 0, t.exp.t);
  return r;
}

KElement drop_q(const KElement& k) {
  KElement r(k.order());
  for (const auto& [key, c] : k.terms()) {
    KElement term = key.pole ? KElement::zw_power(k.order(), key.a, key.b) : KElement::monomial(k.order(), key.a, key.b);
    r += drop_q(c) * term;
  }
  return r;
}

// x = w/z as a plain element.
KElement x_pow(int order, int n) { return KElement::monomial(order, -n, n); }

// sigma = z f(w/z), f(x) = prod_{i >= 0} (1 - q^i x) / (1 - t q^i x) for Macdonald.
KElement macdonald_sigma_oracle(int order) {
  KElement f = KElement::one(order);
  for (int i = 0; i <= order; ++i) {
    KElement num = KElement::one(order) - qt(order, i, 0) * x_pow(order, 1);
    KElement geo(order);
    for (int n = 0; n <= order; ++n) geo += qt(order, i * n, n) * x_pow(order, n);
    f = f * num * geo;
  }
  return KElement::monomial(order, 1, 0) * f;
}

std::vector<VMono> small_monos(int max_degree) {
  std::vector<VMono> out;
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& lam : partitions_of(d))
      for (int c = -1; c <= 1; ++c) out.push_back({lam, c});
  return out;
}

KElement split_first(const Bicharacter& bc, const VMono& a, const VMono& b, const VMono& c) {
  KElement acc(bc.order());
  for (const auto& t : coproduct(c)) acc += t.coeff * (bc.eval(a, t.left) * bc.eval(b, t.right));
  return acc;
}

KElement split_second(const Bicharacter& bc, const VMono& a, const VMono& b, const VMono& c) {
  KElement acc(bc.order());
  for (const auto& t : coproduct(a)) acc += t.coeff * (bc.eval(t.left, b) * bc.eval(t.right, c));
  return acc;
}

const std::vector<VFamily>& presets() {
  static const std::vector<VFamily> all{VFamily::schur(), VFamily::hall_littlewood(), VFamily::macdonald()};
  return all;
}

}  // namespace

TEST(Sigma, Presets) {
  EXPECT_EQ(Bicharacter(VFamily::schur(), 4).sigma(), KElement::zw_power(4, 1));

  // (z - w)(1 + t w/z) = z - w + t w - t w^2 / z
  KElement hl1 = KElement::zw_power(1, 1);
  hl1.add_plain(0, 1, tpow(1, 1));
  hl1.add_plain(-1, 2, tpow(1, 1, Rational(-1)));
  EXPECT_EQ(Bicharacter(VFamily::hall_littlewood(), 1).sigma(), hl1);

  for (int order = 0; order <= 4; ++order) {
    const Bicharacter mac(VFamily::macdonald(), order), hl(VFamily::hall_littlewood(), order);
    EXPECT_EQ(drop_q(mac.sigma()), hl.sigma());
    EXPECT_EQ(mac.sigma(), macdonald_sigma_oracle(order)) << order;
    for (const auto& v : presets()) {
      const KElement s = Bicharacter(v, order).sigma();
      EXPECT_EQ(s.truncated(0), KElement::zw_power(0, 1));
    }
  }
}

TEST(Sigma, HallLittlewoodGeometricOracle) {
  // sigma = (z - w) sum_n t^n (w/z)^n
  const int order = 6;
  KElement geo(order);
  for (int n = 0; n <= order; ++n) geo += tpow(order, n) * x_pow(order, n);
  EXPECT_EQ(Bicharacter(VFamily::hall_littlewood(), order).sigma(), KElement::zw_power(order, 1) * geo);
}

TEST(Sigma, RejectsFamiliesWithoutAnExpansion) {
  const VFamily bad = VFamily::custom("bad", [](int n) { return n == 1 ? RatFunc(2) : RatFunc(1); });
  EXPECT_THROW(Bicharacter(bad, 2), NotExpandableError);
}

TEST(RValues, Examples) {
  const int order = 4;
  const Bicharacter hl(VFamily::hall_littlewood(), order);
  for (const auto& m : small_monos(2))
    EXPECT_EQ(hl.eval(VMono::one(), m), KElement::constant(order, Rational(counit(m))));
  EXPECT_EQ(hl.eval(VMono::e(1), VMono::e(-1)) * hl.sigma(), KElement::one(order));
  EXPECT_EQ(hl.eval(VMono::e(2), VMono::e(1)), hl.sigma() * hl.sigma());

  KElement want = KElement::zw_power(order, -2);
  for (int n = 1; n <= order; ++n) want.add_plain(-n - 1, n - 1, tpow(order, n, Rational(-n)));
  EXPECT_EQ(hl.eval(VMono::hn(1), VMono::hn(1)), want);

  const Bicharacter schur(VFamily::schur(), 2);
  EXPECT_EQ(schur.eval(VMono::hn(1), VMono::e(1)), KElement::zw_power(2, -1));
  EXPECT_EQ(schur.eval(VMono::e(1), VMono::hn(1)), KElement::zw_power(2, -1, 0, Rational(-1)));
}

TEST(RValues, BicharacterLaws) {
  std::mt19937 gen(21);
  const auto monos = small_monos(3);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  for (const auto& v : presets()) {
    const Bicharacter bc(v, 3);
    for (int trial = 0; trial < 25; ++trial) {
      const VMono a = monos[pick(gen)], b = monos[pick(gen)], c = monos[pick(gen)];
      EXPECT_EQ(bc.eval(a * b, c), split_first(bc, a, b, c)) << v.name() << " " << a << " " << b << " " << c;
      EXPECT_EQ(bc.eval(a, b * c), split_second(bc, a, b, c)) << v.name() << " " << a << " " << b << " " << c;
    }
  }
}

TEST(RValues, DShift) {
  for (const auto& v : presets()) {
    const Bicharacter bc(v, 3);
    for (const auto& a : small_monos(2))
      for (const auto& b : small_monos(1)) {
        EXPECT_EQ(bc.eval(d_act(a), VElement(b, Rational(1))), bc.eval(a, b).d_z()) << a << " " << b;
        EXPECT_EQ(bc.eval(VElement(b, Rational(1)), d_act(a)), bc.eval(b, a).d_w()) << b << " " << a;
      }
  }
}

TEST(RValues, SpecializedEvaluationAgrees) {
  for (const auto& v : presets()) {
    const Bicharacter bc(v, 3);
    for (const auto& a : small_monos(2))
      for (const auto& b : small_monos(2)) EXPECT_EQ(bc.eval(a, b).at_w0(), bc.eval_w0(a, b)) << a << " " << b;
  }
}

TEST(Forms, GroupLaw) {
  for (const auto& v : presets()) {
    const Bicharacter bc(v, 3);
    const BicharForm r = forms::base(bc);
    const BicharForm prod = forms::convolve(r, forms::inverse(r));
    const BicharForm eps = forms::epsilon(3);
    EXPECT_EQ(prod(VMono::hn(1), VMono::hn(1)), KElement::constant(3, Rational(0)));
    EXPECT_EQ(prod(VMono::e(1), VMono::e(1)), KElement::one(3));
    EXPECT_EQ(prod(VMono::hn(1), VMono::e(1)), KElement(3));
    const BicharForm tt = forms::transpose(forms::transpose(r));
    const BicharForm inv_eps = forms::inverse(eps);
    for (const auto& a : small_monos(2))
      for (const auto& b : small_monos(1)) {
        EXPECT_EQ(prod(a, b), eps(a, b)) << a << " " << b;
        EXPECT_EQ(tt(a, b), r(a, b));
        EXPECT_EQ(inv_eps(a, b), eps(a, b));
      }
  }
}

TEST(Fields, AxiomExamples) {
  const Bicharacter bc(VFamily::hall_littlewood(), 3);
  const ModeWindow win(-6, 6);
  const VSeries b(VMono{Partition{2, 1}, -1}, ParamSeries(3, 1));
  EXPECT_EQ(field_apply(VMono::one(), b, bc, win), (FieldModes{{0, b}}));

  for (const VMono& a : {VMono::e(1), VMono::hn(2), VMono::hn(1, -1)}) {
    const FieldModes y = field_apply(a, VSeries(VMono::one(), ParamSeries(3, 1)), bc, win);
    EXPECT_EQ(y.begin()->first, 0);
    EXPECT_EQ(y.begin()->second, VSeries(a, ParamSeries(3, 1)));
  }

  const FieldModes ee = field_apply(VMono::e(1), VSeries(VMono::e(1), ParamSeries(3, 1)), bc, win);
  EXPECT_EQ(ee.begin()->first, 1);
  EXPECT_EQ(ee.begin()->second, VSeries(VMono::e(2), ParamSeries(3, 1)));
}

TEST(Fields, BridgeRoundTrip) {
  for (const auto& v : presets()) {
    const auto s = LatticeState::basis({3, 1, 1}, 2, RatFunc::t());
    EXPECT_EQ(v_to_fock(fock_to_v(s, v), v), s);
  }
}

TEST(Braiding, Examples) {
  const int order = 4;
  const Bicharacter hl(VFamily::hall_littlewood(), order);
  const Braiding br(hl);
  EXPECT_EQ(br.apply(VMono::one(), VMono::one()), (RTensor{{{VMono::one(), VMono::one()}, KElement::one(order)}}));

  // scalar on (e^alpha, e^alpha): w f(z/w) / (z f(w/z)) = -(sum_n t^n (z/w)^n)(1 - t w/z)
  KElement geo(order);
  for (int n = 0; n <= order; ++n) geo += tpow(order, n) * KElement::monomial(order, n, -n);
  KElement corr = KElement::one(order);
  corr.add_plain(-1, 1, tpow(order, 1, Rational(-1)));
  EXPECT_EQ(br.scalar(VMono::e(1), VMono::e(1)), -(geo * corr));
  EXPECT_EQ(br.scalar(VMono::e(1), VMono::e(1)).truncated(0), KElement::constant(0, Rational(-1)));

  // (h, h): t/(z-tw)^2 - t/(w-tz)^2, expanded; no (z-w) poles remain.
  KElement want(order);
  for (int n = 1; n <= order; ++n) {
    want.add_plain(-n - 1, n - 1, tpow(order, n, Rational(n)));
    want.add_plain(n - 1, -n - 1, tpow(order, n, Rational(-n)));
  }
  const RTensor rhh = br.apply(VMono::hn(1), VMono::hn(1));
  EXPECT_EQ(rhh, (RTensor{{{VMono::hn(1), VMono::hn(1)}, KElement::one(order)}, {{VMono::one(), VMono::one()}, want}}));
  EXPECT_EQ(br.scalar_inverse(VMono::hn(1), VMono::hn(1)), -want);

  const Bicharacter schur(VFamily::schur(), order);
  const Braiding classical(schur);
  EXPECT_EQ(classical.apply(VMono::hn(1), VMono::hn(1)), (RTensor{{{VMono::hn(1), VMono::hn(1)}, KElement::one(order)}}));
}
