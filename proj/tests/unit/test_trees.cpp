#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "padictree/errors.hpp"
#include "padictree/trees.hpp"

using namespace padictree;

namespace {

TruncTree random_tree(std::mt19937_64& rng, int cap, int width) {
  std::vector<std::vector<std::int32_t>> parents(cap + 1);
  parents[0] = {-1};
  for (int d = 1; d <= cap; ++d) {
    const auto n = std::uniform_int_distribution<int>(1, width)(rng);
    for (int i = 0; i < n; ++i)
      parents[d].push_back(std::uniform_int_distribution<std::int32_t>(0, parents[d - 1].size() - 1)(rng));
    std::sort(parents[d].begin(), parents[d].end());
  }
  return TruncTree(cap, std::move(parents));
}

// Relabels nodes inside each layer by a random permutation.
TruncTree shuffled(const TruncTree& t, std::mt19937_64& rng) {
  std::vector<std::vector<std::int32_t>> parents(t.depth_cap() + 1);
  std::vector<std::int32_t> prev_pos;
  for (int d = 0; d <= t.depth_cap(); ++d) {
    std::vector<std::int32_t> perm(t.layer_size(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::int32_t> pos(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = static_cast<std::int32_t>(k);
    parents[d].resize(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) parents[d][k] = d == 0 ? -1 : prev_pos[t.parent(d, perm[k])];
    prev_pos = std::move(pos);
  }
  return TruncTree(t.depth_cap(), std::move(parents));
}

std::vector<Int> counts(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Trees, PathAndFullTreeCounts) {
  EXPECT_EQ(poincare_coeffs(path_tree(4)), counts({1, 1, 1, 1, 1}));
  EXPECT_EQ(poincare_coeffs(full_tree(2, Int(3), 3)), counts({1, 9, 81, 729}));
  EXPECT_THROW(full_tree(3, Int(5), 6, 1000), Error);
}

TEST(Trees, BuilderRespectsCap) {
  TreeBuilder b(1);
  auto r = b.add_root();
  auto c = b.add_child(r);
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(b.add_child(*c).has_value());
  EXPECT_EQ(std::move(b).build().node_count(), 2u);
}

TEST(Trees, FromPointsMatchesOracle) {
  std::mt19937_64 rng(1);
  for (long p : {2, 3, 5})
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 2, cap = 5;
      std::vector<std::vector<Int>> pts;
      std::vector<PadicVec> vecs;
      const int k = std::uniform_int_distribution<int>(1, 12)(rng);
      for (int i = 0; i < k; ++i) {
        std::vector<Int> x;
        for (int c = 0; c < n; ++c) x.emplace_back(std::uniform_int_distribution<long>(0, 4000)(rng));
        pts.push_back(x);
        vecs.push_back(PadicVec::from_integers(Int(p), cap, x));
      }
      const Ball zero{PadicVec::from_integers(Int(p), cap, std::vector<Int>(n, 0)), 0};
      const TruncTree t = from_points(vecs, zero, cap);
      EXPECT_EQ(oracle::tree_string(t), oracle::tree_string(oracle::points_tree(pts, Int(p), cap)));
      EXPECT_EQ(poincare_coeffs(t), oracle::point_layer_counts(pts, Int(p), cap));
    }
}

TEST(Trees, YTreeIsTwoPointsAtDistanceKappa) {
  for (int kappa = 0; kappa <= 5; ++kappa) {
    const int cap = 8;
    std::vector<std::vector<Int>> pts{{Int(0)}, {pow_int(Int(3), kappa)}};
    EXPECT_EQ(oracle::tree_string(y_tree(kappa, cap)), oracle::tree_string(oracle::points_tree(pts, Int(3), cap)));
  }
}

TEST(Trees, ProductMultipliesLayerCounts) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    auto a = random_tree(rng, 4, 4), b = random_tree(rng, 4, 4);
    auto ca = poincare_coeffs(a), cb = poincare_coeffs(b), cp = poincare_coeffs(product(a, b));
    for (int d = 0; d <= 4; ++d) EXPECT_EQ(cp[d], ca[d] * cb[d]);
  }
  EXPECT_TRUE(is_isomorphic(product(full_tree(1, Int(3), 4), full_tree(1, Int(3), 4)), full_tree(2, Int(3), 4)));
}

TEST(Trees, AttachAndSubtree) {
  const TruncTree base = path_tree(4);
  const TruncTree t = attach(base, NodeRef{1, 0}, path_tree(3));
  EXPECT_EQ(poincare_coeffs(t), counts({1, 1, 2, 2, 2}));
  EXPECT_TRUE(is_isomorphic(subtree(t, NodeRef{1, 0}), y_tree(0, 3)));
  EXPECT_THROW(attach(base, NodeRef{1, 0}, TruncTree(2)), Error);
  EXPECT_EQ(poincare_coeffs(truncate(t, 2)), counts({1, 1, 2}));
  EXPECT_THROW(truncate(t, 7), Error);
}

TEST(Trees, CanonicalCodeAgreesWithOracleOnRandomPairs) {
  std::mt19937_64 rng(9);
  int iso = 0, noniso = 0;
  for (int i = 0; i < 300; ++i) {
    const TruncTree a = random_tree(rng, 4, 3);
    const TruncTree b = i % 2 ? shuffled(a, rng) : random_tree(rng, 4, 3);
    const bool expected = oracle::tree_string(a) == oracle::tree_string(b);
    EXPECT_EQ(is_isomorphic(a, b), expected);
    EXPECT_EQ(canonical_code(a) == canonical_code(b), expected);
    EXPECT_EQ(!first_difference(a, b).has_value(), expected);
    (expected ? iso : noniso)++;
  }
  EXPECT_GT(iso, 100);
  EXPECT_GT(noniso, 10);
}

TEST(Trees, LabelAwareComparison) {
  TreeBuilder a(1, true), b(1, true);
  a.add_child(a.add_root("r"), "x");
  b.add_child(b.add_root("r"), "y");
  const TruncTree ta = std::move(a).build(), tb = std::move(b).build();
  EXPECT_TRUE(is_isomorphic(ta, tb));
  EXPECT_FALSE(is_isomorphic(ta, tb, IsoOptions{true}));
  EXPECT_THROW(is_isomorphic(path_tree(1), path_tree(1), IsoOptions{true}), Error);
}

TEST(Trees, DifferentCapsAreRejected) { EXPECT_THROW(is_isomorphic(path_tree(3), path_tree(4)), Error); }

TEST(Trees, BallLabelRoundTrip) {
  const auto lab = ball_label({Int(4), Int(7)}, 3);
  auto [r, c] = parse_ball_label(lab);
  EXPECT_EQ(r, 3);
  EXPECT_EQ(c, (std::vector<Int>{Int(4), Int(7)}));
  EXPECT_THROW(parse_ball_label("nonsense"), Error);
}

TEST(Trees, BallContainment) {
  const Ball big{PadicVec::from_integers(Int(3), 6, {Int(1)}), 1};
  const Ball small{PadicVec::from_integers(Int(3), 6, {Int(10)}), 3};
  EXPECT_TRUE(big.contains(small));
  EXPECT_FALSE(small.contains(big));
  EXPECT_TRUE(big.contains(std::vector<Int>{Int(4)}));
  EXPECT_FALSE(big.contains(std::vector<Int>{Int(5)}));
}

TEST(Trees, CheeseValidation) {
  const Ball outer{PadicVec::from_integers(Int(3), 6, {Int(0)}), 0};
  const Ball h1{PadicVec::from_integers(Int(3), 6, {Int(1)}), 1};
  const Ball h2{PadicVec::from_integers(Int(3), 6, {Int(4)}), 2};
  EXPECT_NO_THROW((Cheese{outer, {h1}}.validate()));
  EXPECT_THROW((Cheese{outer, {h1, h2}}.validate()), Error);  // h2 inside h1
  EXPECT_THROW((Cheese{outer, {outer}}.validate()), Error);   // not proper
}

TEST(Trees, CheeseRestrictRemovesHoleInteriors) {
  const int cap = 3;
  // Label every node of the full tree of Z_3 with its ball.
  TreeBuilder b(cap, true);
  std::vector<std::pair<NodeRef, Int>> layer{{b.add_root(ball_label({Int(0)}, 0)), Int(0)}};
  for (int d = 0; d < cap; ++d) {
    std::vector<std::pair<NodeRef, Int>> next;
    for (const auto& [node, res] : layer)
      for (long digit = 0; digit < 3; ++digit) {
        const Int r = res + pow_int(Int(3), d) * digit;
        next.emplace_back(*b.add_child(node, ball_label({r}, d + 1)), r);
      }
    layer = std::move(next);
  }
  const TruncTree full = std::move(b).build();
  const Ball outer{PadicVec::from_integers(Int(3), cap, {Int(0)}), 0};
  const Ball hole{PadicVec::from_integers(Int(3), cap, {Int(2)}), 1};
  const TruncTree r = cheese_restrict(full, Cheese{outer, {hole}});
  EXPECT_EQ(poincare_coeffs(r), counts({1, 3, 6, 18}));
}
