#include <optional>

#include "padictree/datum.hpp"
#include "padictree/errors.hpp"

namespace padictree {

namespace {

void check_point(const TreeDatum& d, const GammaPoint& k) {
  if (static_cast<int>(k.size()) != d.m)
    raise(Errc::DomainError, "datum takes " + std::to_string(d.m) + " parameters, got " + std::to_string(k.size()));
  if (!d.domain.contains(k)) raise(Errc::ParameterOutsideDomain, "parameter point outside the datum domain");
}

long bone_length(const Bone& bone, const GammaPoint& k) {
  const GammaValue v = eval_linear(bone.len, k);
  if (!v.infinite && v.value <= 0) raise(Errc::InvalidDatum, "bone length must be positive");
  return v.infinite ? -1 : v.value;
}

const SideBranch* bone_branch(const TreeDatum& d, int bone, const GammaPoint& k, long lambda) {
  GammaPoint kl = k;
  kl.push_back(lambda);
  bool any = false;
  for (const auto& bp : d.bone_branches) {
    if (bp.bone != bone) continue;
    any = true;
    if (bp.piece.contains(kl)) return &bp.branch;
  }
  if (any) raise(Errc::PieceNotFound, "no piece of bone " + std::to_string(bone) + " contains depth " + std::to_string(lambda));
  return nullptr;  // no side data on this bone: root-only
}

const SideBranch* joint_branch(const TreeDatum& d, int joint) {
  for (const auto& jb : d.joint_branches)
    if (jb.joint == joint) return &jb.branch;
  return nullptr;
}

class Expander {
 public:
  Expander(const Int& p, bool labels) : p_(p), labels_(labels) {}

  TruncTree expand(const TreeDatum& d, const GammaPoint& k, int cap) {
    TreeBuilder b(cap, labels_);
    if (d.skeleton.joints == 0) return std::move(b).build();
    const NodeRef root = b.add_root(labels_ ? "S" : "");
    grow(b, root, d, k);
    return std::move(b).build();
  }

 private:
  std::string tag(const char* t) const { return labels_ ? t : ""; }

  void grow(TreeBuilder& b, NodeRef at, const TreeDatum& d, const GammaPoint& k) {
    check_point(d, k);
    const auto& sk = d.skeleton;
    struct BoneNode {
      int bone;
      long lambda;
      NodeRef node;
    };
    std::vector<std::optional<NodeRef>> jnode(sk.joints);
    std::vector<BoneNode> bone_nodes;
    jnode[0] = at;
    for (int j : sk.bfs_order()) {
      if (!jnode[j]) continue;
      for (int e : sk.outgoing_bones(j)) {
        const long len = bone_length(sk.bones[e], k);
        NodeRef cur = *jnode[j];
        const long steps = len < 0 ? b.depth_cap() - cur.depth : len;
        for (long s = 1; s <= steps; ++s) {
          auto c = b.add_child(cur, tag("S"));
          if (!c) break;
          cur = *c;
          if (s == len) jnode[sk.bones[e].to] = cur;
          else bone_nodes.push_back({e, cur.depth - at.depth, cur});
        }
      }
    }
    for (int j = 0; j < sk.joints; ++j)
      if (jnode[j])
        if (const SideBranch* br = joint_branch(d, j)) branch(b, *jnode[j], *br, k);
    for (const auto& bn : bone_nodes)
      if (const SideBranch* br = bone_branch(d, bn.bone, k, bn.lambda)) {
        GammaPoint kl = k;
        kl.push_back(bn.lambda);
        branch(b, bn.node, *br, kl);
      }
  }

  void branch(TreeBuilder& b, NodeRef at, const SideBranch& br, const GammaPoint& params) {
    const auto& f = br.fintree;
    std::vector<std::optional<NodeRef>> fnode(f.size());
    fnode[0] = at;
    for (int i = 1; i < f.size(); ++i)
      if (fnode[f.parent[i]]) fnode[i] = b.add_child(*fnode[f.parent[i]], tag("F"));
    const auto leaves = f.leaves();
    for (std::size_t q = 0; q < leaves.size(); ++q) {
      const auto& side = br.leaves.at(q);
      const auto& w = fnode[leaves[q]];
      if (!w || side.terminal) continue;
      const TreeDatum& t = select_piece(side.pieces, params);
      const int sub_cap = b.depth_cap() - w->depth;
      TruncTree tw = Expander(p_, false).expand(t, params, sub_cap);
      if (tw.empty()) continue;
      graft(b, *w, product(full_tree(1, p_, sub_cap), tw));
    }
  }

  void graft(TreeBuilder& b, NodeRef at, const TruncTree& s) {
    std::vector<NodeRef> prev{at}, cur;
    for (int d = 1; d <= s.depth_cap() && at.depth + d <= b.depth_cap(); ++d) {
      cur.clear();
      for (std::size_t i = 0; i < s.layer_size(d); ++i) cur.push_back(*b.add_child(prev[s.parent(d, i)], tag("P")));
      prev.swap(cur);
    }
  }

  Int p_;
  bool labels_;
};

void count_into(const TreeDatum& d, const GammaPoint& k, const Int& p, int cap, int offset, const Int& weight,
                std::vector<Int>& c);

void count_branch(const SideBranch& br, const GammaPoint& params, const Int& p, int cap, int at, const Int& weight,
                  std::vector<Int>& c) {
  const auto& f = br.fintree;
  for (int i = 1; i < f.size(); ++i)
    if (at + f.depth(i) <= cap) c[at + f.depth(i)] += weight;
  const auto leaves = f.leaves();
  for (std::size_t q = 0; q < leaves.size(); ++q) {
    const auto& side = br.leaves.at(q);
    const int w = at + f.depth(leaves[q]);
    if (w > cap || side.terminal) continue;
    const TreeDatum& t = select_piece(side.pieces, params);
    std::vector<Int> sub(cap - w + 1, Int(0));
    count_into(t, params, p, cap - w, 0, Int(1), sub);
    if (sub[0] == 0) continue;
    Int pj = 1;
    for (int j = 1; j <= cap - w; ++j) {
      pj *= p;
      c[w + j] += weight * pj * sub[j];
    }
  }
}

// Adds weight * layer counts of d's expansion, rooted at depth `offset`, into c.
void count_into(const TreeDatum& d, const GammaPoint& k, const Int& p, int cap, int offset, const Int& weight,
                std::vector<Int>& c) {
  if (d.skeleton.joints == 0) return;
  check_point(d, k);
  const auto& sk = d.skeleton;
  std::vector<long> jdepth(sk.joints, -1);
  jdepth[0] = offset;
  c[offset] += weight;
  for (int j : sk.bfs_order()) {
    if (jdepth[j] < 0) continue;
    for (int e : sk.outgoing_bones(j)) {
      const long len = bone_length(sk.bones[e], k);
      const long steps = len < 0 ? cap - jdepth[j] : len;
      for (long s = 1; s <= steps && jdepth[j] + s <= cap; ++s) {
        const long at = jdepth[j] + s;
        c[at] += weight;
        if (s == len) {
          jdepth[sk.bones[e].to] = at;
        } else if (const SideBranch* br = bone_branch(d, e, k, at - offset)) {
          GammaPoint kl = k;
          kl.push_back(at - offset);
          count_branch(*br, kl, p, cap, static_cast<int>(at), weight, c);
        }
      }
    }
  }
  for (int j = 0; j < sk.joints; ++j)
    if (jdepth[j] >= 0)
      if (const SideBranch* br = joint_branch(d, j)) count_branch(*br, k, p, cap, static_cast<int>(jdepth[j]), weight, c);
}

}  // namespace

std::vector<Int> expand_layer_counts(const TreeDatum& d, const GammaPoint& kappa, const Int& p, int depth_cap) {
  require_prime(p);
  if (depth_cap < 0) raise(Errc::DomainError, "negative depth");
  std::vector<Int> c(depth_cap + 1, Int(0));
  count_into(d, kappa, p, depth_cap, 0, Int(1), c);
  return c;
}

TruncTree expand(const TreeDatum& d, const GammaPoint& kappa, const Int& p, int depth_cap, ExpandOptions opts) {
  Int total = 0;
  for (const auto& n : expand_layer_counts(d, kappa, p, depth_cap)) total += n;
  if (total > Int(static_cast<unsigned long>(opts.node_budget)))
    raise(Errc::NodeBudgetExceeded, "expansion has " + total.get_str() + " nodes");
  return Expander(p, opts.labels).expand(d, kappa, depth_cap);
}

}  // namespace padictree
