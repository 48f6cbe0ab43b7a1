#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padictree/enumerate.hpp"
#include "padictree/errors.hpp"
#include "padictree/newton.hpp"
#include "padictree/polysystem.hpp"

using namespace padictree;
using oracle::make_system;

namespace {

PolySystem parabola(long p) { return make_system(Int(p), 2, {{{1, {0, 1}}, {-1, {2, 0}}}}); }
PolySystem cusp(long p) { return make_system(Int(p), 2, {{{1, {3, 0}}, {-1, {0, 2}}}}); }

std::vector<std::vector<Int>> graph_points(long p, int depth, int power) {
  std::vector<std::vector<Int>> pts;
  const long n = pow_int(Int(p), depth).get_si();
  for (long t = 0; t < n; ++t) pts.push_back({Int(t), pow_int(Int(t), power)});
  return pts;
}

}  // namespace

TEST(PolySystem, EvalAndDerivative) {
  const PolySystem s = cusp(5);
  EXPECT_EQ(s.eval({Int(4), Int(8)}), std::vector<Int>{Int(0)});
  const Polynomial d = s.polys[0].derivative(0);
  EXPECT_EQ(d.eval({Int(2), Int(0)}), Int(12));
  EXPECT_EQ(s.polys[0].degree(), 3);
}

TEST(PolySystem, TaylorExpansionReproducesValues) {
  const PolySystem s = cusp(3);
  const auto tay = s.polys[0].taylor({Int(2), Int(5)}, Int(9));
  for (long t1 = -3; t1 <= 3; ++t1)
    for (long t2 = -3; t2 <= 3; ++t2) {
      Int sum = 0;
      for (const auto& [e, c] : tay) sum += c * pow_int(Int(t1), e[0]) * pow_int(Int(t2), e[1]);
      EXPECT_EQ(sum, s.polys[0].eval({Int(2 + 9 * t1), Int(5 + 9 * t2)}));
    }
}

TEST(PolySystem, ValidationRejectsBadInput) {
  PolySystem s = cusp(4);
  EXPECT_THROW(s.validate(), Error);
  PolySystem t = cusp(3);
  t.witnesses = {{Rat(1), Rat(2)}};
  EXPECT_THROW(t.validate(), Error);  // not a zero
}

TEST(PolySystem, DominatedBallsHoldNoZero) {
  std::mt19937_64 rng(4);
  const PolySystem s = make_system(Int(3), 2, {{{1, {2, 0}}, {1, {0, 2}}, {-2, {0, 0}}}});
  int hits = 0;
  for (long a = 0; a < 27; ++a)
    for (long b = 0; b < 27; ++b)
      for (long r = 1; r <= 3; ++r) {
        if (!ball_dominated(s, {Int(a), Int(b)}, r)) continue;
        ++hits;
        const long v0 = oracle::valuation(s.polys[0].eval({Int(a), Int(b)}), Int(3));
        for (int k = 0; k < 20; ++k) {
          const Int t1 = std::uniform_int_distribution<long>(0, 1000)(rng), t2 = std::uniform_int_distribution<long>(0, 1000)(rng);
          const Int x = a + pow_int(Int(3), r) * t1, y = b + pow_int(Int(3), r) * t2;
          EXPECT_EQ(oracle::valuation(s.polys[0].eval({x, y}), Int(3)), v0);
        }
      }
  EXPECT_GT(hits, 0);
}

TEST(Newton, DeterminantAndCertificates) {
  EXPECT_EQ(integer_determinant({{Int(2), Int(1)}, {Int(7), Int(4)}}), Int(1));
  EXPECT_EQ(integer_determinant({{Int(1), Int(2)}, {Int(2), Int(4)}}), Int(0));
  const PolySystem s = make_system(Int(7), 1, {{{1, {2}}, {-2, {0}}}});
  const NewtonCertificate c = newton_certify(s, std::vector<Int>{Int(3)});
  EXPECT_TRUE(c.certified());
  EXPECT_EQ(c.det_val, 0);
  EXPECT_GE(c.agreement, 1);
  EXPECT_FALSE(newton_certify(s, std::vector<Int>{Int(1)}).certified());
  const PolySystem z = cusp(5);
  EXPECT_TRUE(newton_certify(z, std::vector<Int>{Int(4), Int(8)}).exact_root);
}

TEST(Enumerate, NaiveTreeMatchesExhaustion) {
  const std::vector<PolySystem> systems{parabola(3), cusp(3), cusp(2), parabola(5),
                                        make_system(Int(3), 2, {{{1, {2, 0}}, {1, {0, 2}}, {-1, {0, 0}}}}),
                                        make_system(Int(2), 1, {{{1, {2}}, {-1, {0}}}})};
  for (const auto& s : systems) {
    const int depth = s.p == 5 ? 3 : 4;
    const TruncTree t = naive_tree(s, depth);
    EXPECT_EQ(oracle::tree_string(t), oracle::tree_string(oracle::brute_residue_tree(s, depth)));
  }
}

TEST(Enumerate, LiftedGraphIsTreeOfZp) {
  for (long p : {2, 3, 5}) {
    const int depth = 4;
    const LiftResult r = lifted_tree(parabola(p), depth, 3);
    EXPECT_FALSE(r.has_unknown());
    EXPECT_EQ(oracle::tree_string(r.tree), oracle::tree_string(oracle::points_tree(graph_points(p, depth, 2), Int(p), depth)));
  }
}

TEST(Enumerate, LiftedCuspMatchesParametrization) {
  for (long p : {2, 3}) {
    const int depth = 5;
    PolySystem s = cusp(p);
    s.witnesses = {{Rat(0), Rat(0)}};
    const LiftResult r = lifted_tree(s, depth, 6);
    EXPECT_FALSE(r.has_unknown());
    EXPECT_EQ(oracle::tree_string(r.tree),
              oracle::tree_string(oracle::points_tree(oracle::cusp_points(Int(p), depth), Int(p), depth)));
  }
}

TEST(Enumerate, NoPointsGivesEmptyTree) {
  const PolySystem s = make_system(Int(3), 1, {{{1, {2}}, {-2, {0}}}});  // 2 is not a square mod 3
  const LiftResult r = lifted_tree(s, 4, 2);
  EXPECT_TRUE(r.tree.empty());
  EXPECT_EQ(r.count(LiftKind::Yes), 0u);
  EXPECT_FALSE(r.has_unknown());
}

TEST(Enumerate, TwoRootsGiveTwoPaths) {
  const PolySystem s = make_system(Int(5), 1, {{{1, {2}}, {1, {0}}}});
  const LiftResult r = lifted_tree(s, 5, 2);
  EXPECT_TRUE(is_isomorphic(r.tree, y_tree(0, 5)));
}

TEST(Enumerate, InsufficientBudgetReportsUnknown) {
  const PolySystem s = make_system(Int(3), 1, {{{1, {2}}, {-1, {0}}}});
  PolySystem deep = s;
  deep.polys = {Polynomial(1, {{Int(1), {2}}, {-pow_int(Int(3), 21), {0}}})};
  const LiftResult r = lifted_tree(deep, 3, 2);
  EXPECT_TRUE(r.has_unknown());
  const LiftResult ok = lifted_tree(s, 3, 2);
  EXPECT_FALSE(ok.has_unknown());
}

TEST(Enumerate, EmptySystemIsFullSpace) {
  const PolySystem s = make_system(Int(2), 2, {});
  EXPECT_TRUE(is_isomorphic(lifted_tree(s, 4, 0).tree, full_tree(2, Int(2), 4)));
}

TEST(Enumerate, BudgetIsEnforced) {
  const PolySystem s = make_system(Int(5), 2, {});
  EXPECT_THROW(lifted_tree(s, 6, 0, EnumOptions{1000}), Error);
}

TEST(Enumerate, TreeOnBallIsSubtreeOfLiftedTree) {
  PolySystem s = cusp(3);
  s.witnesses = {{Rat(0), Rat(0)}};
  const LiftResult full = lifted_tree(s, 5, 6);
  const Ball ball{PadicVec::from_integers(Int(3), 5, {Int(1), Int(1)}), 1};
  const LiftResult local = tree_on_ball(s, ball, 4, 6);
  // The node of the full tree at depth 1 with residue (1, 1).
  std::optional<NodeRef> node;
  for (std::size_t i = 0; i < full.tree.layer_size(1); ++i)
    if (full.tree.label(1, i) == ball_label({Int(1), Int(1)}, 1)) node = NodeRef{1, static_cast<std::int32_t>(i)};
  ASSERT_TRUE(node.has_value());
  EXPECT_TRUE(is_isomorphic(local.tree, subtree(full.tree, *node)));
}

TEST(Enumerate, GarlandComponents) {
  PolySystem s = cusp(5);
  s.witnesses = {{Rat(0), Rat(0)}};
  Garland g{PadicVec::from_integers(Int(5), 12, {Int(0), Int(0)}), 2, 1, 2,
            PadicVec::from_integers(Int(5), 12, {Int(1), Int(0)}), 0};
  EXPECT_TRUE(g.has_component(4));
  EXPECT_FALSE(g.has_component(3));
  const auto trees = garland_trees(s, g, {2, 4}, 3, 6);
  ASSERT_EQ(trees.size(), 2u);
  for (const auto& [k, r] : trees) EXPECT_FALSE(r.has_unknown()) << k;
  EXPECT_THROW(g.component(3), Error);
}
