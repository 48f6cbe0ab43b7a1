#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padictree/errors.hpp"
#include "padictree/gamma.hpp"
#include "padictree/ratgf.hpp"

using namespace padictree;

namespace {

// Every coefficient of cell_gf(c) on the box is the indicator of the cell.
void expect_indicator(const GammaCell& c, int box) {
  const RationalGF f = cell_gf(c);
  std::vector<int> caps{0};
  for (int i = 0; i < c.dim(); ++i) caps.push_back(box);
  const auto coeffs = series_box(f, caps);
  std::vector<long> k(c.dim(), 0);
  for (;;) {
    Exps e{0};
    for (long x : k) e.push_back(static_cast<int>(x));
    auto it = coeffs.find(e);
    const Rat got = it == coeffs.end() ? Rat(0) : it->second;
    EXPECT_EQ(got, Rat(oracle::cell_member(c, k) ? 1 : 0)) << c.to_string() << " at " << monomial_string(e);
    int i = 0;
    while (i < c.dim() && k[i] == box) k[i++] = 0;
    if (i == c.dim()) break;
    ++k[i];
  }
}

}  // namespace

TEST(RatGF, GeometricSeries) {
  const RationalGF g = RationalGF::geometric(1, Rat(3), {1});
  const auto s = expand_series(g, 5);
  for (int i = 0; i <= 5; ++i) EXPECT_EQ(s[i], Rat(pow_int(Int(3), i)));
}

TEST(RatGF, ArithmeticMatchesSeries) {
  const RationalGF a = RationalGF::geometric(1, Rat(2), {1});
  const RationalGF b = RationalGF::geometric(1, Rat(1), {2});
  const auto sa = expand_series(a, 8), sb = expand_series(b, 8);
  const auto sum = expand_series(gf_add(a, b), 8), prod = expand_series(gf_mul(a, b), 8);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_EQ(sum[n], sa[n] + sb[n]);
    Rat c = 0;
    for (int i = 0; i <= n; ++i) c += sa[i] * sb[n - i];
    EXPECT_EQ(prod[n], c);
  }
  EXPECT_TRUE(gf_equal(gf_sub(gf_add(a, b), b), a));
}

TEST(RatGF, NormalizeCancelsFactors) {
  // (1 - Z^2) / ((1 - Z)(1 + Z)) = 1.
  MPoly num = MPoly::constant(1, Rat(1));
  num.add_term({2}, Rat(-1));
  RationalGF f(num, {{Rat(1), {1}}, {Rat(-1), {1}}});
  f.normalize();
  EXPECT_TRUE(f.denominator().empty());
  EXPECT_TRUE(gf_equal(f, RationalGF::constant(1, Rat(1))));
}

TEST(RatGF, SubstituteScalesVariables) {
  const RationalGF g = RationalGF::geometric(2, Rat(1), {0, 1});  // 1/(1 - Y)
  const RationalGF h = substitute(g, 1, Rat(5), {1, 0});           // 1/(1 - 5Z)
  const auto s = expand_series(h, 4);
  for (int i = 0; i <= 4; ++i) EXPECT_EQ(s[i], Rat(pow_int(Int(5), i)));
}

TEST(RatGF, ToStringIsReadable) {
  EXPECT_EQ(RationalGF::geometric(1, Rat(1), {1}).to_string(), "1 / (1 \u2212 Z)");
}

TEST(Gamma, LinearFnEvaluation) {
  LinearFn l = LinearFn::coordinate(2, 0).scaled(Rat(1, 2)) + LinearFn::constant(2, 1);
  EXPECT_EQ(eval_linear(l, {4, 7}), GammaValue::of(3));
  EXPECT_THROW(eval_linear(l, {3, 0}), Error);
  EXPECT_TRUE(eval_linear(LinearFn::infinity(2), {1, 1}).infinite);
  EXPECT_EQ(l.with_inserted(1, 1).arity(), 3);
}

TEST(Gamma, LinearFnCompose) {
  // l(k) = 2 k1 + k2, with k1 = mu, k2 = mu + 3.
  LinearFn l = LinearFn::coordinate(2, 0).scaled(Rat(2)) + LinearFn::coordinate(2, 1);
  LinearFn c = l.compose({LinearFn::coordinate(1, 0), LinearFn::coordinate(1, 0) + LinearFn::constant(1, 3)}, 1);
  EXPECT_EQ(eval_linear(c, {4}), GammaValue::of(15));
}

TEST(Gamma, CellMembershipAndValidation) {
  GammaCell c = GammaCell::orthant(2);
  c.coords[1].lo = LinearFn::coordinate(2, 0);
  c.coords[1].rho = 2;
  EXPECT_TRUE(c.contains({1, 2}));
  EXPECT_FALSE(c.contains({3, 2}));
  EXPECT_FALSE(c.contains({1, 3}));
  EXPECT_NO_THROW(c.validate());
  c.coords[0].hi = LinearFn::coordinate(2, 1);  // forward reference
  EXPECT_THROW(c.validate(), Error);
}

TEST(Gamma, MembersEnumeratesInOrder) {
  GammaCell c = GammaCell::orthant(1);
  c.coords[0].r = 1;
  c.coords[0].rho = 3;
  auto pts = members(c, {10});
  EXPECT_EQ(pts, (std::vector<GammaPoint>{{1}, {4}, {7}, {10}}));
}

TEST(CellGF, OrthantAndPoint) {
  const RationalGF o = cell_gf(GammaCell::orthant(1));
  EXPECT_TRUE(gf_equal(o, RationalGF::geometric(2, Rat(1), {0, 1})));
  const RationalGF pt = cell_gf(GammaCell::point({2, 3}));
  EXPECT_TRUE(gf_equal(pt, RationalGF::monomial(3, Rat(1), {0, 2, 3})));
}

TEST(CellGF, HandPickedCellsMatchBruteForce) {
  {
    GammaCell c = GammaCell::orthant(2);  // k2 <= 2 k1, k2 = 1 mod 3
    c.coords[1].hi = LinearFn::coordinate(2, 0).scaled(Rat(2));
    c.coords[1].r = 1;
    c.coords[1].rho = 3;
    expect_indicator(c, 12);
  }
  {
    GammaCell c = GammaCell::orthant(2);  // k1/2 <= k2 <= k1 + 1
    c.coords[1].lo = LinearFn::coordinate(2, 0).scaled(Rat(1, 2));
    c.coords[1].hi = LinearFn::coordinate(2, 0) + LinearFn::constant(2, 1);
    expect_indicator(c, 12);
  }
  {
    GammaCell c = GammaCell::orthant(2);  // k2 >= 5 - 2 k1
    c.coords[1].lo = LinearFn::constant(2, 5) - LinearFn::coordinate(2, 0).scaled(Rat(2));
    expect_indicator(c, 12);
  }
}

TEST(CellGF, RandomCellsMatchBruteForce) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const GammaCell c = oracle::random_cell(rng, 1 + i % 2);
    expect_indicator(c, 12);
  }
}

TEST(CellGF, UnionOfDisjointCellsAdds) {
  GammaCell even = GammaCell::orthant(1), odd = GammaCell::orthant(1);
  even.coords[0].rho = odd.coords[0].rho = 2;
  odd.coords[0].r = 1;
  GammaSet s{1, {even, odd}};
  EXPECT_TRUE(gf_equal(cell_gf(s), cell_gf(GammaCell::orthant(1))));
}

TEST(CellGF, UnboundedBelowIsRejected) {
  GammaCell c = GammaCell::orthant(1);
  c.coords[0].lo_unbounded = true;
  EXPECT_THROW(cell_gf(c), Error);
}

TEST(CellGF, ConstraintSetMembership) {
  ConstraintSet s(2);
  s.add_inequality({Int(1), Int(-1)}, Int(0));  // k1 >= k2
  s.add_congruence(0, Int(0), Int(2));
  EXPECT_TRUE(s.contains({2, 1}));
  EXPECT_FALSE(s.contains({1, 0}));
  const auto coeffs = series_box(constraint_gf(s), {0, 8, 8});
  for (long a = 0; a <= 8; ++a)
    for (long b = 0; b <= 8; ++b) {
      auto it = coeffs.find({0, static_cast<int>(a), static_cast<int>(b)});
      const Rat got = it == coeffs.end() ? Rat(0) : it->second;
      EXPECT_EQ(got, Rat(s.contains({a, b}) ? 1 : 0));
    }
}
