#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "padictree/gamma.hpp"
#include "padictree/trees.hpp"

namespace padictree {

struct Bone {
  int from = 0;
  int to = 0;
  LinearFn len;  // may be infinite (only into a leaf)
};

// Joints are 0..joints-1 with joint 0 the root; bones form a rooted tree.
struct Skeleton {
  int joints = 0;
  std::vector<Bone> bones;

  int incoming_bone(int joint) const;  // -1 for the root
  std::vector<int> outgoing_bones(int joint) const;
  bool is_leaf(int joint) const;
  bool is_virtual(int joint) const;  // a leaf after an infinite bone
  // Joints in breadth-first order from the root.
  std::vector<int> bfs_order() const;
};

// A finite rooted tree given by parent indices (parent[0] = -1, parent[i] < i).
struct Fintree {
  std::vector<int> parent{-1};

  int size() const { return static_cast<int>(parent.size()); }
  int depth(int node) const;
  bool is_leaf(int node) const;
  std::vector<int> leaves() const;
  static Fintree star(int leaves);
};

struct TreeDatum;

// The side tree at a fintree leaf: Terminal, or a piecewise datum whose
// piece domains partition the parameters the leaf receives.
struct LeafSide {
  bool terminal = true;
  std::vector<TreeDatum> pieces;

  static LeafSide make_terminal() { return LeafSide{}; }
  static LeafSide of(TreeDatum d);
  static LeafSide piecewise(std::vector<TreeDatum> ds);
};

struct SideBranch {
  Fintree fintree;
  std::vector<LeafSide> leaves;  // aligned with fintree.leaves()
};

struct JointBranch {
  int joint = 0;
  SideBranch branch;
};

// Side data on the bone nodes whose (kappa, lambda) lie in `piece`.
struct BonePiece {
  int bone = 0;
  GammaCell piece;  // over m + 1 coordinates, lambda last
  SideBranch branch;

  // The congruence class lambda = xi mod rho.
  static GammaCell residue_cell(int m, long xi, long rho);
};

struct TreeDatum {
  int level = 0;
  int m = 0;
  GammaSet domain;
  long rho = 1;
  Skeleton skeleton;
  std::vector<JointBranch> joint_branches;
  std::vector<BonePiece> bone_branches;

  std::string name;  // informational
};

struct Violation {
  std::string code;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool generalized = false;  // pieces are not plain congruence classes

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string to_string() const;
};

ValidationReport validate(const TreeDatum& d);

GammaValue joint_depth(const TreeDatum& d, int joint, const GammaPoint& kappa);
// Joint depth as a linear function of the parameters (infinite for virtual joints).
LinearFn joint_depth_fn(const TreeDatum& d, int joint);

struct ExpandOptions {
  bool labels = false;  // tag nodes S (skeleton), F (fintree), P (T(Z_p) x side tree)
  std::size_t node_budget = 10'000'000;
};

TruncTree expand(const TreeDatum& d, const GammaPoint& kappa, const Int& p, int depth_cap, ExpandOptions opts = {});
// Layer counts of expand(d, kappa, p, depth_cap) without materializing the tree.
std::vector<Int> expand_layer_counts(const TreeDatum& d, const GammaPoint& kappa, const Int& p, int depth_cap);

// Chooses the piece of a piecewise side whose domain holds kappa.
const TreeDatum& select_piece(const std::vector<TreeDatum>& pieces, const GammaPoint& kappa);

// Inserts `count` unused parameters at position `at` (recursively).
TreeDatum with_inserted_params(const TreeDatum& d, int at, int count);
// Re-declares a level-d datum as level d+1 (Terminal root-only branches).
TreeDatum raised_level(const TreeDatum& d);

// Library: point, zp, zpn(N), cusp, y (parametrized, k >= 1), y(K) (fixed K >= 0).
TreeDatum builtin(const std::string& name, const Int& p);
std::vector<std::string> builtin_names();

}  // namespace padictree
