#include "padictree/datum.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "padictree/errors.hpp"

namespace padictree {

int Skeleton::incoming_bone(int joint) const {
  for (std::size_t b = 0; b < bones.size(); ++b)
    if (bones[b].to == joint) return static_cast<int>(b);
  return -1;
}

std::vector<int> Skeleton::outgoing_bones(int joint) const {
  std::vector<int> out;
  for (std::size_t b = 0; b < bones.size(); ++b)
    if (bones[b].from == joint) out.push_back(static_cast<int>(b));
  return out;
}

bool Skeleton::is_leaf(int joint) const { return outgoing_bones(joint).empty(); }

bool Skeleton::is_virtual(int joint) const {
  const int b = incoming_bone(joint);
  return b >= 0 && bones[b].len.infinite && is_leaf(joint);
}

std::vector<int> Skeleton::bfs_order() const {
  std::vector<int> order;
  if (joints == 0) return order;
  std::vector<char> seen(joints, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    order.push_back(j);
    for (int b : outgoing_bones(j)) {
      const int k = bones[b].to;
      if (k >= 0 && k < joints && !seen[k]) {
        seen[k] = 1;
        q.push(k);
      }
    }
  }
  return order;
}

int Fintree::depth(int node) const {
  int d = 0;
  while (parent[node] >= 0) {
    node = parent[node];
    ++d;
  }
  return d;
}

bool Fintree::is_leaf(int node) const {
  return std::find(parent.begin(), parent.end(), node) == parent.end();
}

std::vector<int> Fintree::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_leaf(i)) out.push_back(i);
  return out;
}

Fintree Fintree::star(int leaves) {
  Fintree f;
  for (int i = 0; i < leaves; ++i) f.parent.push_back(0);
  return f;
}

LeafSide LeafSide::of(TreeDatum d) {
  LeafSide s;
  s.terminal = false;
  s.pieces.push_back(std::move(d));
  return s;
}

LeafSide LeafSide::piecewise(std::vector<TreeDatum> ds) {
  LeafSide s;
  s.terminal = false;
  s.pieces = std::move(ds);
  return s;
}

GammaCell BonePiece::residue_cell(int m, long xi, long rho) {
  GammaCell c = GammaCell::orthant(m + 1);
  c.coords[m].rho = rho;
  c.coords[m].r = ((xi % rho) + rho) % rho;
  return c;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
  if (violations.empty()) return std::string("valid") + (generalized ? " (generalized)" : "");
  std::ostringstream os;
  for (const auto& v : violations) os << v.code << " at " << v.location << ": " << v.message << "\n";
  return os.str();
}

LinearFn joint_depth_fn(const TreeDatum& d, int joint) {
  const auto& sk = d.skeleton;
  LinearFn acc = LinearFn::constant(d.m, 0);
  int j = joint;
  int guard = 0;
  while (j != 0) {
    const int b = sk.incoming_bone(j);
    if (b < 0 || ++guard > sk.joints) raise(Errc::InvalidDatum, "joint " + std::to_string(joint) + " is not reachable");
    if (sk.bones[b].len.infinite) return LinearFn::infinity(d.m);
    acc = acc + sk.bones[b].len;
    j = sk.bones[b].from;
  }
  return acc;
}

GammaValue joint_depth(const TreeDatum& d, int joint, const GammaPoint& kappa) {
  if (joint < 0 || joint >= d.skeleton.joints) raise(Errc::DomainError, "no such joint");
  return eval_linear(joint_depth_fn(d, joint), kappa);
}

const TreeDatum& select_piece(const std::vector<TreeDatum>& pieces, const GammaPoint& kappa) {
  for (const auto& t : pieces)
    if (t.domain.contains(kappa)) return t;
  std::string s;
  for (long k : kappa) s += (s.empty() ? "" : ",") + std::to_string(k);
  raise(Errc::PieceNotFound, "no side piece contains (" + s + ")");
}

namespace {

bool is_residue_cell(const GammaCell& c, int m) {
  if (c.dim() != m + 1) return false;
  for (int i = 0; i <= m; ++i) {
    const auto& cb = c.coords[i];
    if (cb.lo_unbounded || !cb.lo.is_constant() || cb.lo.b != 0 || !cb.hi.infinite) return false;
    if (i < m && cb.rho != 1) return false;
  }
  return true;
}

std::vector<GammaPoint> sample_points(const GammaSet& dom) {
  const long box = dom.m <= 2 ? 8 : 4;
  auto pts = members(dom, std::vector<long>(dom.m, box));
  if (pts.size() > 96) pts.resize(96);
  return pts;
}

struct Validator {
  ValidationReport rep;

  void add(const std::string& code, const std::string& loc, const std::string& msg) {
    rep.violations.push_back({code, loc, msg});
  }

  void fintree(const SideBranch& br, const std::string& loc) {
    const auto& f = br.fintree;
    if (f.parent.empty() || f.parent[0] != -1) {
      add("FintreeShape", loc, "fintree must be non-empty with parent[0] = -1");
      return;
    }
    for (int i = 1; i < f.size(); ++i)
      if (f.parent[i] < 0 || f.parent[i] >= i) add("FintreeShape", loc, "parent of node " + std::to_string(i) + " must precede it");
    if (br.leaves.size() != f.leaves().size())
      add("FintreeShape", loc, "expected " + std::to_string(f.leaves().size()) + " leaf entries, got " + std::to_string(br.leaves.size()));
  }

  // Side data of `br` receive parameters of arity `arity`; `params` are sample points for them.
  void branch(const TreeDatum& d, const SideBranch& br, int arity, const std::vector<GammaPoint>& params,
              const std::string& loc) {
    fintree(br, loc);
    for (std::size_t k = 0; k < br.leaves.size(); ++k) {
      const auto& side = br.leaves[k];
      const std::string l = loc + ".leaf[" + std::to_string(k) + "]";
      if (side.terminal) continue;
      if (side.pieces.empty()) {
        add("EmptySide", l, "non-terminal leaf without side data");
        continue;
      }
      for (std::size_t q = 0; q < side.pieces.size(); ++q) {
        const auto& t = side.pieces[q];
        const std::string lq = l + ".piece[" + std::to_string(q) + "]";
        if (t.m != arity) add("ArityMismatch", lq, "side datum takes " + std::to_string(t.m) + " parameters, expected " + std::to_string(arity));
        if (t.level != d.level - 1)
          add("LevelMismatch", lq, "side datum of level " + std::to_string(t.level) + " under level " + std::to_string(d.level));
        if (t.skeleton.joints == 0) add("EmptySide", lq, "side datum has an empty skeleton");
        datum(t, lq);
      }
      if (std::any_of(side.pieces.begin(), side.pieces.end(), [&](const TreeDatum& t) { return t.m != arity; })) continue;
      for (const auto& k : params) {
        int hits = 0;
        for (const auto& t : side.pieces) hits += t.domain.contains(k) ? 1 : 0;
        std::string s;
        for (long v : k) s += (s.empty() ? "" : ",") + std::to_string(v);
        if (hits == 0) {
          add("SideDomain", l, "no side piece contains (" + s + ")");
          break;
        }
        if (hits > 1) {
          add("SideDomain", l, "side pieces overlap at (" + s + ")");
          break;
        }
      }
    }
  }

  // Pieces of one bone must partition N_e over each domain cell.
  void coverage(const TreeDatum& d, int b, const std::vector<const BonePiece*>& pieces, const std::string& loc) {
    const int m = d.m;
    const LinearFn lo = joint_depth_fn(d, d.skeleton.bones[b].from);
    const LinearFn hi = joint_depth_fn(d, d.skeleton.bones[b].to);
    std::vector<int> emb(m);
    for (int i = 0; i < m; ++i) emb[i] = i;
    for (const auto& cell : d.domain.cells) {
      ConstraintSet n = ConstraintSet::from_cell(cell).embedded(m + 1, emb);
      n.add_at_least_zero(LinearFn::coordinate(m + 1, m) - lo.with_inserted(m, 1) - LinearFn::constant(m + 1, 1));
      if (!hi.infinite) n.add_at_least_zero(hi.with_inserted(m, 1) - LinearFn::coordinate(m + 1, m) - LinearFn::constant(m + 1, 1));
      RationalGF total = RationalGF::zero(m + 2);
      std::vector<ConstraintSet> parts;
      for (const auto* bp : pieces) {
        ConstraintSet s = n;
        s.intersect(ConstraintSet::from_cell(bp->piece));
        total = gf_add(total, constraint_gf(s));
        parts.push_back(std::move(s));
      }
      if (gf_equal(total, constraint_gf(n))) continue;
      bool overlap = false;
      for (std::size_t i = 0; i < parts.size() && !overlap; ++i)
        for (std::size_t j = 0; j < i && !overlap; ++j) {
          ConstraintSet s = parts[i];
          s.intersect(parts[j]);
          overlap = !constraint_gf(s).is_zero();
        }
      add(overlap ? "PieceOverlap" : "PieceGap", loc, overlap ? "bone pieces overlap on N_e" : "bone pieces do not cover N_e");
      return;
    }
  }

  void coverage_sampled(const TreeDatum& d, int b, const std::vector<const BonePiece*>& pieces,
                        const std::vector<GammaPoint>& pts, const std::string& loc) {
    for (const auto& k : pts) {
      const GammaValue lo = joint_depth(d, d.skeleton.bones[b].from, k);
      const GammaValue hi = joint_depth(d, d.skeleton.bones[b].to, k);
      const long top = hi.infinite ? lo.value + 12 : hi.value - 1;
      for (long lam = lo.value + 1; lam <= top; ++lam) {
        GammaPoint kl = k;
        kl.push_back(lam);
        int hits = 0;
        for (const auto* bp : pieces) hits += bp->piece.contains(kl) ? 1 : 0;
        if (hits != 1) {
          add(hits ? "PieceOverlap" : "PieceGap", loc, "at lambda = " + std::to_string(lam));
          return;
        }
      }
    }
  }

  void datum(const TreeDatum& d, const std::string& loc) {
    const auto& sk = d.skeleton;
    const int m = d.m;
    if (d.level < 0 || d.level > 3) add("Limits", loc, "level must lie in 0..3");
    if (m < 0 || m > 3) add("Limits", loc, "at most 3 parameters are supported");
    if (d.domain.m != m) {
      add("ArityMismatch", loc, "domain dimension differs from m");
      return;
    }
    for (const auto& c : d.domain.cells) {
      try {
        c.validate();
      } catch (const Error& e) {
        add("DomainInvalid", loc + ".domain", e.what());
        return;
      }
      for (const auto& cb : c.coords)
        if (cb.lo_unbounded) add("DomainNotNonnegative", loc + ".domain", "domain must lie in the nonnegative orthant");
    }
    if (d.rho < 1) add("Rho", loc, "rho must be positive");
    if (sk.joints < 0) {
      add("SkeletonShape", loc, "negative joint count");
      return;
    }
    if (sk.joints == 0) {
      if (!sk.bones.empty() || !d.joint_branches.empty() || !d.bone_branches.empty())
        add("SkeletonShape", loc, "empty skeleton with bones or branches");
      return;
    }
    const std::size_t before = rep.violations.size();
    if (static_cast<int>(sk.bones.size()) != sk.joints - 1) add("SkeletonShape", loc, "a skeleton on J joints needs J-1 bones");
    for (std::size_t b = 0; b < sk.bones.size(); ++b) {
      const auto& bone = sk.bones[b];
      const std::string l = loc + ".bone[" + std::to_string(b) + "]";
      if (bone.from < 0 || bone.from >= sk.joints || bone.to <= 0 || bone.to >= sk.joints)
        add("SkeletonShape", l, "endpoint out of range");
      if (bone.len.arity() != m) add("ArityMismatch", l, "length arity differs from m");
    }
    for (int j = 1; j < sk.joints; ++j) {
      int in = 0;
      for (const auto& bone : sk.bones) in += bone.to == j ? 1 : 0;
      if (in != 1) add("SkeletonShape", loc, "joint " + std::to_string(j) + " has " + std::to_string(in) + " incoming bones");
    }
    if (static_cast<int>(sk.bfs_order().size()) != sk.joints) add("SkeletonShape", loc, "skeleton is not connected to the root");
    if (rep.violations.size() != before) return;
    for (std::size_t b = 0; b < sk.bones.size(); ++b)
      if (sk.bones[b].len.infinite && !sk.is_leaf(sk.bones[b].to))
        add("InfinityPlacement", loc + ".bone[" + std::to_string(b) + "]", "infinite length into a non-leaf joint");

    const auto pts = sample_points(d.domain);
    for (std::size_t b = 0; b < sk.bones.size(); ++b) {
      const auto& len = sk.bones[b].len;
      if (len.infinite) continue;
      const std::string l = loc + ".bone[" + std::to_string(b) + "]";
      std::optional<long> residue;
      for (const auto& k : pts) {
        try {
          const long v = eval_linear(len, k).value;
          if (v <= 0) {
            add("LengthNotPositive", l, "length " + std::to_string(v) + " at a domain point");
            break;
          }
          const long r = d.rho > 0 ? ((v % d.rho) + d.rho) % d.rho : 0;
          if (!residue) residue = r;
          else if (*residue != r && d.level >= 1)
            len_varies_.push_back(static_cast<int>(b));
        } catch (const Error&) {
          add("LengthNotIntegral", l, "non-integral length at a domain point");
          break;
        }
      }
    }
    if (d.level == 0 && (!d.joint_branches.empty() || !d.bone_branches.empty()))
      add("LevelMismatch", loc, "level-0 data carry no side branches");

    std::vector<char> seen(sk.joints, 0);
    for (std::size_t q = 0; q < d.joint_branches.size(); ++q) {
      const auto& jb = d.joint_branches[q];
      const std::string l = loc + ".joint_branch[" + std::to_string(q) + "]";
      if (jb.joint < 0 || jb.joint >= sk.joints || sk.is_virtual(jb.joint)) {
        add("JointBranch", l, "branch on a missing or virtual joint");
        continue;
      }
      if (seen[jb.joint]++) add("JointBranch", l, "duplicate branch for joint " + std::to_string(jb.joint));
      branch(d, jb.branch, m, pts, l);
    }

    bool generalized = false;
    for (std::size_t b = 0; b < sk.bones.size(); ++b) {
      std::vector<const BonePiece*> pieces;
      for (const auto& bp : d.bone_branches)
        if (bp.bone == static_cast<int>(b)) pieces.push_back(&bp);
      if (pieces.empty()) continue;
      const std::string l = loc + ".bone[" + std::to_string(b) + "]";
      bool bad = false;
      for (const auto* bp : pieces) {
        try {
          if (bp->piece.dim() != m + 1) raise(Errc::InvalidDatum, "piece must have m + 1 coordinates");
          bp->piece.validate();
        } catch (const Error& e) {
          add("ArityMismatch", l, e.what());
          bad = true;
        }
        if (!is_residue_cell(bp->piece, m)) generalized = true;
      }
      if (bad) continue;
      bool exact = false;
      if (m <= 2) {
        try {
          coverage(d, static_cast<int>(b), pieces, l);
          exact = true;
        } catch (const Error&) {
        }
      }
      if (!exact) coverage_sampled(d, static_cast<int>(b), pieces, pts, l);
      for (std::size_t q = 0; q < pieces.size(); ++q) {
        std::vector<GammaPoint> kl;
        for (const auto& k : pts) {
          const GammaValue lo = joint_depth(d, sk.bones[b].from, k);
          const GammaValue hi = joint_depth(d, sk.bones[b].to, k);
          const long top = hi.infinite ? lo.value + 10 : hi.value - 1;
          for (long lam = lo.value + 1; lam <= top; ++lam) {
            GammaPoint x = k;
            x.push_back(lam);
            if (pieces[q]->piece.contains(x)) kl.push_back(std::move(x));
          }
          if (kl.size() > 96) break;
        }
        branch(d, pieces[q]->branch, m + 1, kl, l + ".piece[" + std::to_string(q) + "]");
      }
    }
    for (const auto& bp : d.bone_branches)
      if (bp.bone < 0 || bp.bone >= static_cast<int>(sk.bones.size()))
        add("BonePiece", loc, "piece refers to bone " + std::to_string(bp.bone));
    if (generalized) rep.generalized = true;
    else
      for (int b : len_varies_) {
        if (std::any_of(d.bone_branches.begin(), d.bone_branches.end(), [&](const BonePiece& bp) { return bp.bone == b; }) &&
            d.rho > 1) {
          add("NotNormal", loc + ".bone[" + std::to_string(b) + "]", "length mod rho varies over the domain");
        }
      }
    len_varies_.clear();
  }

 private:
  std::vector<int> len_varies_;
};

}  // namespace

ValidationReport validate(const TreeDatum& d) {
  Validator v;
  v.datum(d, "root");
  std::sort(v.rep.violations.begin(), v.rep.violations.end(),
            [](const Violation& a, const Violation& b) { return a.location < b.location; });
  auto last = std::unique(v.rep.violations.begin(), v.rep.violations.end(), [](const Violation& a, const Violation& b) {
    return a.code == b.code && a.location == b.location && a.message == b.message;
  });
  v.rep.violations.erase(last, v.rep.violations.end());
  return v.rep;
}

namespace {

GammaSet inserted(const GammaSet& s, int at, int count) {
  GammaSet out{s.m + count, {}};
  for (const auto& c : s.cells) {
    GammaCell n;
    for (int i = 0; i < s.m + count; ++i) {
      if (i >= at && i < at + count) {
        n.coords.push_back({LinearFn::constant(s.m + count, 0), LinearFn::infinity(s.m + count), 0, 1});
        continue;
      }
      const auto& cb = c.coords[i < at ? i : i - count];
      n.coords.push_back({cb.lo.with_inserted(at, count), cb.hi.with_inserted(at, count), cb.r, cb.rho, cb.lo_unbounded});
    }
    out.cells.push_back(std::move(n));
  }
  return out;
}

GammaCell inserted(const GammaCell& c, int at, int count) { return inserted(GammaSet::single(c), at, count).cells[0]; }

SideBranch inserted(const SideBranch& br, int at, int count) {
  SideBranch out = br;
  for (auto& side : out.leaves)
    for (auto& t : side.pieces) t = with_inserted_params(t, at, count);
  return out;
}

}  // namespace

TreeDatum with_inserted_params(const TreeDatum& d, int at, int count) {
  if (at < 0 || at > d.m || count < 0) raise(Errc::DomainError, "bad parameter insertion");
  TreeDatum out = d;
  out.m = d.m + count;
  out.domain = inserted(d.domain, at, count);
  for (auto& b : out.skeleton.bones) b.len = b.len.with_inserted(at, count);
  for (auto& jb : out.joint_branches) jb.branch = inserted(jb.branch, at, count);
  for (auto& bp : out.bone_branches) {
    bp.piece = inserted(bp.piece, at, count);
    bp.branch = inserted(bp.branch, at, count);
  }
  return out;
}

TreeDatum raised_level(const TreeDatum& d) {
  TreeDatum out = d;
  out.level = d.level + 1;
  auto raise_branch = [](SideBranch& br) {
    for (auto& side : br.leaves)
      for (auto& t : side.pieces) t = raised_level(t);
  };
  for (auto& jb : out.joint_branches) raise_branch(jb.branch);
  for (auto& bp : out.bone_branches) raise_branch(bp.branch);
  if (d.level == 0) {
    out.rho = 1;
    for (std::size_t b = 0; b < d.skeleton.bones.size(); ++b) {
      SideBranch only_root;
      only_root.leaves.push_back(LeafSide::make_terminal());
      out.bone_branches.push_back({static_cast<int>(b), BonePiece::residue_cell(d.m, 0, 1), only_root});
    }
  }
  return out;
}

}  // namespace padictree
