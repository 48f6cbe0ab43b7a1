#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padictree/datum.hpp"
#include "padictree/errors.hpp"

using namespace padictree;

namespace {

TreeDatum fixed_chain(std::vector<long> lens) {
  TreeDatum d;
  d.domain = GammaSet::orthant(0);
  d.skeleton.joints = static_cast<int>(lens.size()) + 2;
  for (int i = 0; i < static_cast<int>(lens.size()); ++i) d.skeleton.bones.push_back({i, i + 1, LinearFn::constant(0, lens[i])});
  d.skeleton.bones.push_back({static_cast<int>(lens.size()), static_cast<int>(lens.size()) + 1, LinearFn::infinity(0)});
  return d;
}

}  // namespace

TEST(Datum, BuiltinsValidate) {
  for (long p : {3, 5}) {
    for (const char* name : {"point", "zp", "zpn(2)", "cusp", "y", "y(0)", "y(4)", "y:2"}) {
      const ValidationReport r = validate(builtin(name, Int(p)));
      EXPECT_TRUE(r.ok()) << name << ": " << r.to_string();
    }
  }
  EXPECT_TRUE(validate(builtin("zpn(3)", Int(2))).ok());
  EXPECT_THROW(builtin("cusp", Int(2)), Error);
  EXPECT_THROW(builtin("nope", Int(3)), Error);
  EXPECT_THROW(builtin("point", Int(6)), Error);
}

TEST(Datum, ValidatorCatchesShapeErrors) {
  TreeDatum d = fixed_chain({2});
  d.skeleton.bones[0].len = LinearFn::infinity(0);  // infinite bone into a joint with children
  EXPECT_TRUE(validate(d).has("InfinityPlacement"));

  TreeDatum z = fixed_chain({0});
  EXPECT_TRUE(validate(z).has("LengthNotPositive"));

  TreeDatum h = fixed_chain({1});
  h.skeleton.bones[0].len = LinearFn::constant(0, Rat(1, 2));
  EXPECT_FALSE(validate(h).ok());
}

TEST(Datum, ValidatorCatchesLevelMismatch) {
  TreeDatum d = builtin("zp", Int(3));
  d.joint_branches[0].branch.leaves[0] = LeafSide::of(builtin("zp", Int(3)));
  EXPECT_TRUE(validate(d).has("LevelMismatch"));
}

TEST(Datum, ValidatorCatchesPieceGapsAndOverlaps) {
  TreeDatum gap = builtin("cusp", Int(3));
  gap.bone_branches.pop_back();  // odd depths uncovered
  EXPECT_TRUE(validate(gap).has("PieceGap"));
  TreeDatum overlap = builtin("cusp", Int(3));
  overlap.bone_branches.push_back(overlap.bone_branches.back());
  EXPECT_TRUE(validate(overlap).has("PieceOverlap"));
}

TEST(Datum, JointDepths) {
  const TreeDatum y = builtin("y", Int(3));
  EXPECT_EQ(joint_depth(y, 0, {3}), GammaValue::of(0));
  EXPECT_EQ(joint_depth(y, 1, {3}), GammaValue::of(3));
  EXPECT_TRUE(joint_depth(y, 2, {3}).infinite);
  EXPECT_EQ(joint_depth_fn(y, 1), LinearFn::coordinate(1, 0));
  const TreeDatum c = fixed_chain({2, 3});
  EXPECT_EQ(joint_depth(c, 2, {}), GammaValue::of(5));
}

TEST(Expand, PointIsAPath) {
  for (int cap : {0, 1, 6}) EXPECT_TRUE(is_isomorphic(expand(builtin("point", Int(3)), {}, Int(3), cap), path_tree(cap)));
}

TEST(Expand, ZpnIsTheFullTree) {
  EXPECT_TRUE(is_isomorphic(expand(builtin("zp", Int(5)), {}, Int(5), 4), full_tree(1, Int(5), 4)));
  EXPECT_TRUE(is_isomorphic(expand(builtin("zpn(2)", Int(3)), {}, Int(3), 4), full_tree(2, Int(3), 4)));
  EXPECT_TRUE(is_isomorphic(expand(builtin("zpn(3)", Int(2)), {}, Int(2), 3), full_tree(3, Int(2), 3)));
}

TEST(Expand, YDataAreTwoPointTrees) {
  for (int k = 0; k <= 5; ++k) {
    EXPECT_TRUE(is_isomorphic(expand(builtin("y(" + std::to_string(k) + ")", Int(3)), {}, Int(3), 8), y_tree(k, 8))) << k;
    if (k >= 1) EXPECT_TRUE(is_isomorphic(expand(builtin("y", Int(3)), {k}, Int(3), 8), y_tree(k, 8))) << k;
  }
  EXPECT_THROW(expand(builtin("y", Int(3)), {0}, Int(3), 4), Error);
}

TEST(Expand, CuspMatchesParametrizedCurve) {
  for (long p : {3, 5}) {
    const int cap = p == 3 ? 7 : 5;
    const TruncTree t = expand(builtin("cusp", Int(p)), {}, Int(p), cap);
    EXPECT_EQ(oracle::tree_string(t), oracle::tree_string(oracle::points_tree(oracle::cusp_points(Int(p), cap), Int(p), cap)));
  }
}

TEST(Expand, LayerCountsWithoutMaterializing) {
  for (long p : {2, 3, 5})
    for (const char* name : {"point", "zp", "zpn(2)", "cusp", "y(2)"}) {
      if (p == 2 && std::string(name) == "cusp") continue;
      const TreeDatum d = builtin(name, Int(p));
      const int cap = p == 5 ? 3 : 5;
      EXPECT_EQ(expand_layer_counts(d, {}, Int(p), cap), poincare_coeffs(expand(d, {}, Int(p), cap))) << name << " p=" << p;
    }
  EXPECT_EQ(expand_layer_counts(builtin("zpn(2)", Int(5)), {}, Int(5), 8).back(), pow_int(Int(25), 8));
}

TEST(Expand, NodeBudget) {
  EXPECT_THROW(expand(builtin("zpn(2)", Int(5)), {}, Int(5), 8, ExpandOptions{false, 1000}), Error);
}

TEST(Expand, LabelsMarkSkeletonFintreeAndProductNodes) {
  const TruncTree t = expand(builtin("cusp", Int(3)), {}, Int(3), 4, ExpandOptions{true});
  ASSERT_TRUE(t.has_labels());
  int s = 0, f = 0, pr = 0;
  for (int d = 0; d <= 4; ++d)
    for (std::size_t i = 0; i < t.layer_size(d); ++i) {
      const char c = t.label(d, i).at(0);
      s += c == 'S';
      f += c == 'F';
      pr += c == 'P';
    }
  EXPECT_EQ(s, 5);  // the spine
  EXPECT_GT(f, 0);
  EXPECT_GT(pr, 0);
}

TEST(Expand, RaisedLevelKeepsTheTree) {
  for (const char* name : {"point", "y(3)"}) {
    const TreeDatum d = builtin(name, Int(3));
    const TreeDatum r = raised_level(d);
    EXPECT_EQ(r.level, d.level + 1);
    EXPECT_TRUE(validate(r).ok()) << validate(r).to_string();
    EXPECT_TRUE(is_isomorphic(expand(r, {}, Int(3), 6), expand(d, {}, Int(3), 6)));
  }
}

TEST(Expand, InsertedParametersAreIgnored) {
  const TreeDatum d = builtin("y(2)", Int(3));
  const TreeDatum w = with_inserted_params(d, 0, 2);
  EXPECT_EQ(w.m, 2);
  EXPECT_TRUE(is_isomorphic(expand(w, {4, 1}, Int(3), 6), expand(d, {}, Int(3), 6)));
}

TEST(Expand, SubtreesOfTheFullSpaceAreFullSpaces) {
  const TruncTree t = expand(builtin("zpn(2)", Int(2)), {}, Int(2), 5);
  for (std::size_t i = 0; i < t.layer_size(2); ++i)
    EXPECT_TRUE(is_isomorphic(subtree(t, NodeRef{2, static_cast<std::int32_t>(i)}), full_tree(2, Int(2), 3)));
}

TEST(Expand, RandomLeaflessDataHaveNoLeaves) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const TreeDatum d = oracle::random_leafless_datum(rng, i % 2);
    ASSERT_TRUE(validate(d).ok()) << validate(d).to_string();
    const TruncTree t = expand(d, {}, Int(3), 6);
    const ChildIndex ci = t.child_index();
    for (int k = 0; k < 6; ++k)
      for (std::size_t j = 0; j < t.layer_size(k); ++j) EXPECT_GT(ci.count(k, static_cast<std::int32_t>(j)), 0u);
  }
}

TEST(Expand, SelectPiece) {
  const TreeDatum cusp = builtin("cusp", Int(3));
  const auto& pieces = cusp.bone_branches[0].branch.leaves[0].pieces;
  EXPECT_EQ(select_piece(pieces, {2}).skeleton.joints, 3);
  EXPECT_EQ(select_piece(pieces, {6}).skeleton.joints, 4);
  EXPECT_THROW(select_piece(pieces, {3}), Error);
}
