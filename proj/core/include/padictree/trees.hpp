#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padictree/padic.hpp"

namespace padictree {

struct NodeRef {
  int depth = 0;
  std::int32_t index = 0;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

// Children of every node, grouped by parent (CSR per depth).
struct ChildIndex {
  std::vector<std::vector<std::int32_t>> offsets;  // offsets[d] has layer_size(d) + 1 entries
  std::vector<std::vector<std::int32_t>> kids;     // kids[d] indexes layer d + 1

  std::size_t count(int d, std::int32_t i) const { return offsets[d][i + 1] - offsets[d][i]; }
};

class TruncTree {
 public:
  TruncTree() : TruncTree(0) {}
  explicit TruncTree(int depth_cap);  // empty tree
  TruncTree(int depth_cap, std::vector<std::vector<std::int32_t>> parents,
            std::optional<std::vector<std::vector<std::string>>> labels = std::nullopt);

  int depth_cap() const { return depth_cap_; }
  bool empty() const { return parents_[0].empty(); }
  std::size_t layer_size(int d) const { return parents_[d].size(); }
  std::size_t node_count() const;
  std::int32_t parent(int d, std::size_t i) const { return parents_[d][i]; }
  const std::vector<std::vector<std::int32_t>>& parents() const { return parents_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::string& label(int d, std::size_t i) const;
  const std::optional<std::vector<std::vector<std::string>>>& labels() const { return labels_; }

  ChildIndex child_index() const;

  friend bool operator==(const TruncTree&, const TruncTree&) = default;

 private:
  int depth_cap_;
  std::vector<std::vector<std::int32_t>> parents_;
  std::optional<std::vector<std::vector<std::string>>> labels_;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(int depth_cap, bool labeled = false);
  NodeRef add_root(std::string label = {});
  // Returns nullopt when the child would lie below the depth cap.
  std::optional<NodeRef> add_child(NodeRef parent, std::string label = {});
  int depth_cap() const { return cap_; }
  bool labeled() const { return labeled_; }
  TruncTree build() &&;

 private:
  int cap_;
  bool labeled_;
  std::vector<std::vector<std::int32_t>> parents_;
  std::vector<std::vector<std::string>> labels_;
};

struct Ball {
  PadicVec center;
  long radius = 0;

  bool contains(const std::vector<Int>& point) const;
  bool contains(const Ball& other) const;  // other is a subset of this ball
};

struct Cheese {
  Ball outer;
  std::vector<Ball> holes;

  // Holes pairwise disjoint, each a proper subball of outer.
  void validate() const;
};

// Ball labels: "radius|c1,c2,..." with residues modulo p^radius.
std::string ball_label(const std::vector<Int>& residues, long radius);
std::pair<long, std::vector<Int>> parse_ball_label(const std::string& label);

TruncTree path_tree(int depth_cap);
TruncTree from_points(const std::vector<PadicVec>& points, const Ball& ball, int depth_cap);
TruncTree product(const TruncTree& a, const TruncTree& b);
TruncTree attach(const TruncTree& t, NodeRef node, const TruncTree& s);
TruncTree full_tree(int n, const Int& p, int depth_cap, std::size_t node_budget = 10'000'000);
TruncTree y_tree(int kappa, int depth_cap);
// The subtree below node, as a tree with cap depth_cap - depth(node).
TruncTree subtree(const TruncTree& t, NodeRef node);
// Shallower copy: layers 0..depth_cap.
TruncTree truncate(const TruncTree& t, int depth_cap);
std::vector<Int> poincare_coeffs(const TruncTree& t);
TruncTree cheese_restrict(const TruncTree& t, const Cheese& cheese);

struct CanonicalCode {
  std::uint64_t hash_hi = 0;
  std::uint64_t hash_lo = 0;
  std::string exact;  // empty when not requested

  friend bool operator==(const CanonicalCode& a, const CanonicalCode& b);
};

struct IsoOptions {
  bool compare_labels = false;
};

CanonicalCode canonical_code(const TruncTree& t, bool with_exact = true, IsoOptions opts = {});
bool is_isomorphic(const TruncTree& a, const TruncTree& b, IsoOptions opts = {});
// Human-readable first structural difference, or nullopt when isomorphic.
std::optional<std::string> first_difference(const TruncTree& a, const TruncTree& b, IsoOptions opts = {});

}  // namespace padictree
