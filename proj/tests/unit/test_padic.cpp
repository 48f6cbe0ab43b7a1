#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padictree/errors.hpp"
#include "padictree/padic.hpp"

using namespace padictree;

namespace {

Int random_int(std::mt19937_64& rng, long lo, long hi) { return Int(std::uniform_int_distribution<long>(lo, hi)(rng)); }

Int power_mod(const Int& b, long e, const Int& m) {
  Int r = 1;
  for (long i = 0; i < e; ++i) r = mod_floor(r * b, m);
  return r;
}

}  // namespace

TEST(Padic, ValuationMatchesTrialDivision) {
  std::mt19937_64 rng(7);
  for (long p : {2, 3, 5, 7})
    for (int i = 0; i < 200; ++i) {
      Int x = random_int(rng, -100000, 100000) * pow_int(Int(p), i % 6);
      if (x == 0) continue;
      EXPECT_EQ(int_valuation(x, Int(p)), oracle::valuation(x, Int(p)));
    }
}

TEST(Padic, PrimalityAndRequirePrime) {
  EXPECT_TRUE(is_prime(Int(2)));
  EXPECT_TRUE(is_prime(Int(97)));
  EXPECT_FALSE(is_prime(Int(1)));
  EXPECT_FALSE(is_prime(Int(91)));
  EXPECT_THROW(require_prime(Int(4)), Error);
}

TEST(Padic, ZeroHasPrecisionBoundedValuation) {
  PadicApprox z(Int(3), 5, Int(0));
  EXPECT_FALSE(z.val().is_finite());
  EXPECT_EQ(z.val().bound(), 5);
  EXPECT_THROW(z.val().value(), Error);
  PadicApprox x(Int(3), 5, Int(18));
  EXPECT_EQ(x.val(), Valuation::finite(2));
}

TEST(Padic, RingOperationsAgreeWithIntegers) {
  std::mt19937_64 rng(11);
  for (long p : {2, 3, 5}) {
    const long prec = 9;
    const Int m = pow_int(Int(p), prec);
    for (int i = 0; i < 100; ++i) {
      Int a = random_int(rng, -50000, 50000), b = random_int(rng, -50000, 50000);
      PadicApprox A(Int(p), prec, a), B(Int(p), prec, b);
      EXPECT_EQ((A + B).residue(), mod_floor(a + b, m));
      EXPECT_EQ((A - B).residue(), mod_floor(a - b, m));
      EXPECT_EQ((A * B).residue(), mod_floor(a * b, m));
      EXPECT_EQ((-A).residue(), mod_floor(-a, m));
      if (a % p != 0) EXPECT_EQ((A * A.inverse()).residue(), 1);
    }
  }
}

TEST(Padic, UnitPartLosesValuationDigits) {
  PadicApprox x(Int(5), 8, Int(3 * 125));
  PadicApprox u = x.unit_part();
  EXPECT_EQ(u.prec(), 5);
  EXPECT_EQ(u.residue(), 3);
  EXPECT_TRUE(u.is_unit());
}

TEST(Padic, FromRationalInvertsDenominator) {
  PadicApprox q = PadicApprox::from_rational(Int(3), 6, Rat(1, 2));
  EXPECT_EQ(mod_floor(q.residue() * 2, Int(729)), 1);
  EXPECT_THROW(PadicApprox::from_rational(Int(3), 6, Rat(1, 3)), Error);
}

TEST(Padic, ApproxEq) {
  PadicApprox x(Int(3), 10, Int(9)), y(Int(3), 10, Int(9 + 81));
  EXPECT_TRUE(approx_eq(x, y, 2));
  EXPECT_FALSE(approx_eq(x, y, 3));
}

TEST(Padic, EthRootRoundTrip) {
  std::mt19937_64 rng(3);
  for (long p : {2, 3, 5})
    for (long e = 1; e <= 6; ++e)
      for (int i = 0; i < 40; ++i) {
        const long P = 14;
        const Int pp(p);
        const long ve = int_valuation(Int(e), pp);
        const long delta = ve + 1;
        const Int z = 1 + pow_int(pp, delta) * random_int(rng, 0, 1000000);
        const PadicApprox y(pp, P, power_mod(z, e, pow_int(pp, P)));
        const PadicApprox w = eth_root_lift(y, e, delta);
        EXPECT_EQ(w.prec(), P - ve);
        EXPECT_EQ(w.residue(), mod_floor(z, pow_int(pp, P - ve))) << "p=" << p << " e=" << e;
      }
}

TEST(Padic, EthRootRejectsBadInput) {
  PadicApprox y(Int(3), 8, Int(2));
  EXPECT_THROW(eth_root_lift(y, 2, 1), Error);
  PadicApprox one(Int(3), 8, Int(1));
  EXPECT_THROW(eth_root_lift(one, 3, 1), Error);  // delta below v(e) + 1
}

TEST(Padic, PowerResidueIndexIsInvariantUnderEthPowers) {
  std::mt19937_64 rng(5);
  for (long p : {2, 3, 5})
    for (long e = 1; e <= 6; ++e)
      for (int i = 0; i < 20; ++i) {
        const Int pp(p);
        const long P = 16;
        Int x = random_int(rng, 1, 10000000);
        if (x % p == 0) ++x;
        x *= pow_int(pp, i % 4);
        Int w = random_int(rng, 1, 10000000);
        if (w % p == 0) ++w;
        const Int m = pow_int(pp, P);
        const PadicApprox X(pp, P, x), Xw(pp, P, mod_floor(x * power_mod(w, e, m), m));
        EXPECT_EQ(power_residue_index(X, e), power_residue_index(Xw, e));
      }
}

TEST(Padic, PowerResidueIndexSeparatesClasses) {
  // Squares mod 3: 1 is a square, 2 is not.
  const PadicApprox a(Int(3), 6, Int(1)), b(Int(3), 6, Int(2));
  EXPECT_NE(power_residue_index(a, 2), power_residue_index(b, 2));
  EXPECT_EQ(power_residue_index(a, 2), power_residue_index(PadicApprox(Int(3), 6, Int(4)), 2));
}

TEST(Padic, UnitRepresentatives) {
  auto r = unit_representatives(Int(3), 2);
  EXPECT_EQ(r.size(), 6u);
  EXPECT_EQ(r.front(), 1);
  EXPECT_EQ(r.back(), 8);
}

TEST(Padic, VectorValuationIsMinimum) {
  auto v = PadicVec::from_integers(Int(2), 10, {Int(8), Int(12)});
  EXPECT_EQ(v.val(), Valuation::finite(2));
  auto w = v - v;
  EXPECT_FALSE(w.val().is_finite());
}
