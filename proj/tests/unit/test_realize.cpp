#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "padictree/datum.hpp"
#include "padictree/errors.hpp"
#include "padictree/realize.hpp"

using namespace padictree;

namespace {

// Realization checked twice: by the library report and by the slow points oracle.
void expect_realizes(const TreeDatum& d, long p, int cap) {
  const WitnessCloud c = realize(d, Int(p), cap);
  const RealizationReport rep = verify_realization(c, d, Int(p), cap);
  EXPECT_TRUE(rep.ok) << d.name << " p=" << p << ": " << rep.detail;
  EXPECT_EQ(oracle::tree_string(oracle::points_tree(c.points, Int(p), cap)),
            oracle::tree_string(expand(d, {}, Int(p), cap)))
      << d.name << " p=" << p;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

}  // namespace

TEST(Realize, UnitRepresentatives) {
  const RealizationContext ctx(Int(5), 10);
  EXPECT_EQ(ctx.unit_rep(Int(26), 2), Int(1));
  EXPECT_EQ(ctx.unit_rep(Int(7), 1), Int(2));
  EXPECT_THROW(ctx.unit_rep(Int(10), 1), Error);
}

TEST(Realize, UFnSpecialSetsAndUnits) {
  const RealizationContext ctx(Int(3), 20);
  // l = 3k/2 at v(x) = 4: v(u) = 6.
  const LinearFn l = LinearFn::coordinate(1, 0).scaled(Rat(3, 2));
  const PadicApprox u = u_fn(l, {PadicApprox(Int(3), 20, Int(81 * 2))}, ctx);
  EXPECT_EQ(u.val(), Valuation::finite(6));
  // p = 2, l = k/2 + 1 at v(x) = 2: l = v(x), so u is x itself.
  const RealizationContext ctx2(Int(2), 20);
  const LinearFn s = LinearFn::coordinate(1, 0).scaled(Rat(1, 2)) + LinearFn::constant(1, 1);
  const PadicApprox x2(Int(2), 20, Int(12));
  EXPECT_EQ(u_fn(s, {x2}, ctx2).residue(), Int(12));
  // Domination is required.
  EXPECT_THROW(u_fn(LinearFn::constant(1, 0), {PadicApprox(Int(3), 20, Int(9))}, ctx), Error);
}

TEST(Realize, UFnPropertiesSampled) {
  for (long p : {2, 3, 5}) {
    const oracle::UfnStats st = oracle::check_u_fn(p, 100 + p, 5, 100, 24);
    EXPECT_EQ(st.functions, 5);
    EXPECT_EQ(st.violations, 0) << st.first_violation;
  }
}

TEST(Realize, SkeletonSeparationIdentity) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const TreeDatum d = trial < 3 ? builtin(trial == 0 ? "y(3)" : trial == 1 ? "y(0)" : "point", Int(3))
                                  : oracle::random_leafless_datum(rng, 0);
    for (long p : {3, 5}) {
      const RealizationContext ctx(Int(p), 30);
      const long lambda = trial % 3;
      const int N = ambient_dim(d, Int(p));
      const SkeletonFns fns = skeleton_fns(d, {}, LinearFn::constant(0, lambda), {}, N, ctx);
      const auto& sk = d.skeleton;
      std::vector<int> parent(sk.joints, -1);
      for (const auto& b : sk.bones) parent[b.to] = b.from;
      auto ancestors = [&](int j) {
        std::vector<int> a;
        for (; j >= 0; j = parent[j]) a.push_back(j);
        return a;
      };
      for (int i = 0; i < sk.joints; ++i)
        for (int j = i + 1; j < sk.joints; ++j) {
          const auto ai = ancestors(i), aj = ancestors(j);
          int c = -1;
          for (int x : ai)
            if (std::find(aj.begin(), aj.end(), x) != aj.end()) {
              c = x;
              break;
            }
          if (c == i || c == j) continue;
          long v = 30;
          for (int q = 0; q < N; ++q)
            v = std::min(v, oracle::valuation(fns.f[i][q].residue() - fns.f[j][q].residue(), Int(p)));
          EXPECT_EQ(v, joint_depth(d, c, {}).value + lambda) << "joints " << i << "," << j << " trial " << trial;
        }
    }
  }
}

TEST(Realize, AmbientDimensions) {
  EXPECT_EQ(ambient_dim(builtin("point", Int(3)), Int(3)), 1);
  EXPECT_EQ(ambient_dim(builtin("y(3)", Int(3)), Int(3)), 2);
  EXPECT_EQ(ambient_dim(builtin("cusp", Int(5)), Int(5)), 3);
}

TEST(Realize, PointIsTheOrigin) {
  const WitnessCloud c = realize(builtin("point", Int(3)), Int(3), 6);
  EXPECT_EQ(c.N, 1);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0], std::vector<Int>{Int(0)});
}

TEST(Realize, YPointsAtDistanceKappa) {
  for (int k : {0, 1, 3, 4}) {
    const WitnessCloud c = realize(builtin("y(" + std::to_string(k) + ")", Int(3)), Int(3), 8);
    ASSERT_EQ(c.points.size(), 2u);
    long v = 100;
    for (int q = 0; q < c.N; ++q) v = std::min(v, oracle::valuation(c.points[0][q] - c.points[1][q], Int(3)));
    EXPECT_EQ(v, k);
  }
}

TEST(Realize, BuiltinsRealize) {
  for (long p : {3, 5}) {
    expect_realizes(builtin("point", Int(p)), p, 6);
    expect_realizes(builtin("y(2)", Int(p)), p, 6);
    expect_realizes(builtin("zp", Int(p)), p, p == 3 ? 6 : 4);
    expect_realizes(builtin("cusp", Int(p)), p, p == 3 ? 7 : 5);
  }
  expect_realizes(builtin("zpn(2)", Int(3)), 3, 3);
}

TEST(Realize, RandomLeaflessData) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 8; ++i) expect_realizes(oracle::random_leafless_datum(rng, i % 2), i % 3 ? 3 : 5, 5);
}

TEST(Realize, IsDeterministic) {
  const TreeDatum d = builtin("cusp", Int(3));
  EXPECT_EQ(realize(d, Int(3), 5), realize(d, Int(3), 5));
}

TEST(Realize, Errors) {
  EXPECT_EQ(code_of([] { realize(builtin("zpn(3)", Int(2)), Int(2), 3); }), Errc::LevelCap);
  TreeDatum leafy;
  leafy.domain = GammaSet::orthant(0);
  leafy.skeleton.joints = 2;
  leafy.skeleton.bones = {{0, 1, LinearFn::constant(0, 2)}};
  EXPECT_EQ(code_of([&] { realize(leafy, Int(3), 4); }), Errc::NotLeafless);
  EXPECT_EQ(code_of([] { realize(builtin("y", Int(3)), Int(3), 4); }), Errc::DomainError);
  EXPECT_EQ(code_of([] { realize(builtin("point", Int(3)), 8, RealizationContext(Int(3), 5)); }),
            Errc::PrecisionExhausted);
}

TEST(Realize, VerificationDetectsWrongClouds) {
  const TreeDatum d = builtin("y(2)", Int(3));
  WitnessCloud c = realize(d, Int(3), 6);
  c.points[1][0] += 1;  // distance 0 instead of 2
  EXPECT_FALSE(verify_realization(c, d, Int(3), 6).ok);
}
