// Witness clouds for leafless level-d data.
//
// The construction mirrors the inductive realization of a level-d datum
// over parameters kappa with margins mu: for x in the rectangle G_kappa
// (x_i = p^kappa_i * (1 mod p^mu_i)) the fiber X_x lies in p^lambda Z_p^N,
// lambda = kappa_m + mu_m, and its tree below that ball is T(kappa).
//   * Skeleton: f_0 = 0 and f_j = f_i + u_{d_ij + lambda}(x) e_slot(i), with i
//     the latest joint (BFS order) whose branching point with j is deepest.
//     When i is an ancestor of j no separation is needed and f_j = f_i.
//   * Coordinate 0 is never used by the skeleton. A side branch at a node of
//     depth k around f_j lives in f_j + p^(lambda+k)((1 + pZ_p) x Z_p^(N-1)):
//     a fintree leaf w at depth d_w with embedding y_w contributes
//     f_j + (z, z y_w + q) with z = p^(lambda+k)(1 + p^d_w t) and q in the
//     fiber at (x, z) of the side tree realized one level down.
// A cloud keeps one witness per node at the verification depth: t runs over
// residues mod p^R and the inner fibers are sampled the same way. Fibers
// vary Lipschitz continuously in (x, z) (the u functions are 1-Lipschitz on
// each rectangle), so one witness per node reproduces the full set's tree
// down to that depth.
#include "padictree/realize.hpp"

#include <algorithm>
#include <optional>

#include "padictree/errors.hpp"
#include "padictree/trees.hpp"

namespace padictree {

RealizationContext::RealizationContext(Int p, long prec) : p_(std::move(p)), prec_(prec) {
  require_prime(p_);
  if (prec_ < 1) raise(Errc::DomainError, "working precision must be positive");
}

Int RealizationContext::unit_rep(const Int& u, long mu) const {
  auto it = reps_.find(mu);
  if (it == reps_.end()) it = reps_.emplace(mu, unit_representatives(p_, mu)).first;
  const Int r = mod_floor(u, pow_int(p_, mu));
  if (!std::binary_search(it->second.begin(), it->second.end(), r)) raise(Errc::DomainError, "not a unit");
  return r;
}

namespace {

PadicApprox power(PadicApprox b, Int k) {
  PadicApprox r(b.p(), b.prec(), 1);
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

GammaPoint valuations(const std::vector<PadicApprox>& x) {
  GammaPoint k;
  for (const auto& xi : x) {
    const Valuation v = xi.val();
    if (!v.is_finite()) raise(Errc::PrecisionExhausted, "parameter coordinate indistinguishable from 0");
    k.push_back(v.value());
  }
  return k;
}

}  // namespace

PadicApprox u_fn(const LinearFn& l, const std::vector<PadicApprox>& x, const RealizationContext& ctx) {
  const Int& p = ctx.p();
  if (l.infinite || l.arity() != static_cast<int>(x.size())) raise(Errc::DomainError, "u_fn needs a finite function of x");
  const GammaPoint k = valuations(x);
  const long L = eval_linear(l, k).value;
  for (long ki : k)
    if (L < ki) raise(Errc::DomainError, "l(v(x)) must dominate every v(x_i)");

  Int e = l.b.get_den();
  for (const auto& a : l.a) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), a.get_den_mpz_t());
  const long ve = int_valuation(e, p);
  const long guard = 2 * ve + 2;
  auto finish = [&](PadicApprox u) {
    if (u.prec() < L + guard) raise(Errc::PrecisionExhausted, "u_fn needs more digits");
    return u;
  };

  for (std::size_t i = 0; i < x.size(); ++i)
    for (long lam = 0; lam < ve; ++lam)
      if (L == k[i] + lam) return finish(PadicApprox(p, x[i].prec() + lam, pow_int(p, lam) * x[i].residue()));

  PadicApprox unit(p, ctx.prec(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rat ai = l.a[i] * Rat(e);
    if (ai == 0) continue;
    PadicApprox ui = x[i].unit_part();
    if (ai < 0) ui = ui.inverse();
    unit = unit * power(ui, abs(ai.get_num()));
  }
  const long mu = 1 + 2 * ve;
  const Int r = ctx.unit_rep(unit.residue(), mu);
  const PadicApprox y = unit * PadicApprox(p, unit.prec(), r).inverse();
  const PadicApprox root = e == 1 ? y : eth_root_lift(y, e.get_si(), 1 + ve);
  return finish(PadicApprox(p, std::min(ctx.prec(), L + root.prec()), pow_int(p, L) * root.residue()));
}

namespace {

struct JointPlan {
  std::vector<int> order;     // BFS order of joints
  std::vector<int> parent;    // parent joint, -1 for the root
  std::vector<int> tree_depth;
  std::vector<int> from;      // joint f_j is derived from (-1 for the root)
  std::vector<bool> ancestor; // from[j] is an ancestor of j
  std::vector<int> slot;      // slot assigned to joints used as a branching base
  int slots = 0;
};

bool is_ancestor(const JointPlan& jp, int a, int j) {
  while (j >= 0) {
    if (j == a) return true;
    j = jp.parent[j];
  }
  return false;
}

int lca(const JointPlan& jp, int a, int b) {
  while (jp.tree_depth[a] > jp.tree_depth[b]) a = jp.parent[a];
  while (jp.tree_depth[b] > jp.tree_depth[a]) b = jp.parent[b];
  while (a != b) {
    a = jp.parent[a];
    b = jp.parent[b];
  }
  return a;
}

JointPlan plan_joints(const TreeDatum& d) {
  const auto& sk = d.skeleton;
  JointPlan jp;
  jp.order = sk.bfs_order();
  jp.parent.assign(sk.joints, -1);
  jp.tree_depth.assign(sk.joints, 0);
  jp.from.assign(sk.joints, -1);
  jp.ancestor.assign(sk.joints, false);
  jp.slot.assign(sk.joints, 0);
  for (int j : jp.order) {
    const int b = sk.incoming_bone(j);
    if (b >= 0) {
      jp.parent[j] = sk.bones[b].from;
      jp.tree_depth[j] = jp.tree_depth[jp.parent[j]] + 1;
    }
  }
  for (std::size_t pos = 1; pos < jp.order.size(); ++pos) {
    const int j = jp.order[pos];
    int best = -1, best_depth = -1;
    for (std::size_t q = 0; q < pos; ++q) {
      const int i = jp.order[q];
      const int dd = jp.tree_depth[lca(jp, i, j)];
      if (dd >= best_depth) {
        best_depth = dd;
        best = i;
      }
    }
    jp.from[j] = best;
    jp.ancestor[j] = is_ancestor(jp, best, j);
    if (!jp.ancestor[j] && jp.slot[best] == 0) jp.slot[best] = ++jp.slots;
  }
  return jp;
}

std::vector<PadicApprox> zeros(const Int& p, long prec, int n) { return std::vector<PadicApprox>(n, PadicApprox(p, prec, 0)); }

int digits_for(const Int& p, long children) {
  int c = 0;
  Int cap = 1;
  while (cap < children) {
    cap *= p;
    ++c;
  }
  return c;
}

int fintree_width(const Fintree& f, const Int& p) {
  int w = 0;
  for (int u = 0; u < f.size(); ++u) w = std::max(w, digits_for(p, std::count(f.parent.begin(), f.parent.end(), u)));
  return w;
}

int ambient_dim_p(const TreeDatum& d, const Int& p) {
  if (d.skeleton.joints == 0) return 1;
  int n = 1 + plan_joints(d).slots;
  auto visit = [&](const SideBranch& br) {
    n = std::max(n, 1 + fintree_width(br.fintree, p));
    for (const auto& side : br.leaves)
      for (const auto& t : side.pieces) n = std::max(n, 1 + ambient_dim_p(t, p));
  };
  for (const auto& jb : d.joint_branches) visit(jb.branch);
  for (const auto& bp : d.bone_branches) visit(bp.branch);
  return n;
}

// Embedding of a fintree into T(Z_p^width): children take digit vectors in lexicographic order.
std::vector<std::vector<Int>> embed_fintree(const Fintree& f, const Int& p, int width) {
  std::vector<std::vector<Int>> y(f.size(), std::vector<Int>(width, Int(0)));
  std::vector<long> next(f.size(), 0);
  for (int u = 1; u < f.size(); ++u) {
    const int par = f.parent[u];
    const int s = f.depth(par);
    Int k = next[par]++;
    y[u] = y[par];
    const Int scale = pow_int(p, s);
    for (int c = width - 1; c >= 0; --c) {
      y[u][c] += scale * Int(k % p);
      k /= p;
    }
  }
  return y;
}

const SideBranch* find_bone_branch(const TreeDatum& d, int bone, const GammaPoint& k, long lambda) {
  GammaPoint kl = k;
  kl.push_back(lambda);
  bool any = false;
  for (const auto& bp : d.bone_branches) {
    if (bp.bone != bone) continue;
    any = true;
    if (bp.piece.contains(kl)) return &bp.branch;
  }
  if (any) raise(Errc::PieceNotFound, "no piece of bone " + std::to_string(bone) + " contains depth " + std::to_string(lambda));
  return nullptr;
}

struct Fiber {
  std::vector<std::vector<PadicApprox>> pts;
  std::vector<std::string> tags;
};

class Realizer {
 public:
  explicit Realizer(const RealizationContext& ctx) : ctx_(ctx), p_(ctx.p()) {}

  // Fiber of the realization of d at x, where parameters = shift(v(x)) and
  // the fiber lives in p^lambda(v(x)) Z_p^N; witnesses down to relative depth R.
  Fiber fiber(const TreeDatum& d, const GammaPoint& params, const std::vector<LinearFn>& shift, const LinearFn& lambda,
              const std::vector<PadicApprox>& x, long R, int N) {
    Fiber out;
    if (d.skeleton.joints == 0) return out;
    const auto& sk = d.skeleton;
    const long W = ctx_.prec();
    const GammaPoint kx = valuations(x);
    const long lam = eval_linear(lambda, kx).value;
    const int mx = static_cast<int>(x.size());
    const JointPlan jp = plan_joints(d);

    std::vector<GammaValue> depth(sk.joints);
    for (int j = 0; j < sk.joints; ++j) depth[j] = joint_depth(d, j, params);

    std::vector<std::vector<PadicApprox>> f(sk.joints);
    f[jp.order[0]] = zeros(p_, W, N);
    for (std::size_t pos = 1; pos < jp.order.size(); ++pos) {
      const int j = jp.order[pos], i = jp.from[j];
      f[j] = f[i];
      if (jp.ancestor[j]) continue;
      const int c = lca(jp, i, j);
      if (depth[c].value > R) continue;  // separation below the verification depth
      const LinearFn l = joint_depth_fn(d, c).compose(shift, mx) + lambda;
      f[j][jp.slot[i]] = f[j][jp.slot[i]] + u_fn(l, x, ctx_);
    }

    for (int j = 0; j < sk.joints; ++j) {
      if (sk.is_virtual(j)) {
        out.pts.push_back(f[j]);
        out.tags.push_back("f" + std::to_string(j));
      } else if (sk.is_leaf(j) && !has_joint_branch(d, j)) {
        raise(Errc::NotLeafless, "skeleton leaf at a finite depth");
      }
    }
    for (const auto& jb : d.joint_branches) {
      const long k = depth[jb.joint].value;
      if (k < R) side(out, f[jb.joint], k, jb.branch, params, false, shift, lambda, lam, x, R, N, "j" + std::to_string(jb.joint));
    }
    for (std::size_t b = 0; b < sk.bones.size(); ++b) {
      const int from = sk.bones[b].from, to = sk.bones[b].to;
      const long top = depth[to].infinite ? R - 1 : std::min(R - 1, depth[to].value - 1);
      for (long k = depth[from].value + 1; k <= top; ++k) {
        const SideBranch* br = find_bone_branch(d, static_cast<int>(b), params, k);
        if (!br) continue;
        GammaPoint pk = params;
        pk.push_back(k);
        side(out, f[to], k, *br, pk, true, shift, lambda, lam, x, R, N, "b" + std::to_string(b) + "@" + std::to_string(k));
      }
    }
    return out;
  }

 private:
  static bool has_joint_branch(const TreeDatum& d, int j) {
    return std::any_of(d.joint_branches.begin(), d.joint_branches.end(), [&](const JointBranch& jb) { return jb.joint == j; });
  }

  void side(Fiber& out, const std::vector<PadicApprox>& center, long k, const SideBranch& br, const GammaPoint& params,
            bool on_bone, const std::vector<LinearFn>& shift, const LinearFn& lambda, long lam,
            const std::vector<PadicApprox>& x, long R, int N, const std::string& tag) {
    const long W = ctx_.prec();
    const auto& fin = br.fintree;
    const auto y = embed_fintree(fin, p_, N - 1);
    const auto leaves = fin.leaves();
    const int mx = static_cast<int>(x.size());
    const Int z0 = pow_int(p_, lam + k);
    for (std::size_t q = 0; q < leaves.size(); ++q) {
      const int w = leaves[q];
      const auto& ls = br.leaves.at(q);
      if (w == 0) {
        if (ls.terminal) continue;
        raise(Errc::Unsupported, "side trees attached at the fintree root cannot be realized");
      }
      if (ls.terminal) raise(Errc::NotLeafless, "terminal fintree leaf below the root");
      const long dw = fin.depth(w);
      const std::string wt = tag + "/w" + std::to_string(w);
      auto emit = [&](const PadicApprox& z, const std::vector<PadicApprox>* inner, const std::string& t) {
        std::vector<PadicApprox> pt = center;
        pt[0] = pt[0] + z;
        for (int c = 1; c < N; ++c) {
          PadicApprox v = z * PadicApprox(p_, W, y[w][c - 1]);
          if (inner && c - 1 < static_cast<int>(inner->size())) v = v + (*inner)[c - 1];
          pt[c] = pt[c] + v;
        }
        out.pts.push_back(std::move(pt));
        out.tags.push_back(t);
      };
      if (k + dw >= R) {
        emit(PadicApprox(p_, W, z0), nullptr, wt);
        continue;
      }
      const long Rw = R - k - dw;
      const TreeDatum& piece = select_piece(ls.pieces, params);
      std::vector<LinearFn> shift2;
      for (const auto& s : shift) shift2.push_back(s.with_inserted(mx, 1));
      if (on_bone) shift2.push_back(LinearFn::coordinate(mx + 1, mx) - lambda.with_inserted(mx, 1));
      const LinearFn lambda2 = LinearFn::coordinate(mx + 1, mx) + LinearFn::constant(mx + 1, dw);
      const int Nw = ambient_dim_p(piece, p_);
      const Int count = pow_int(p_, Rw), step = pow_int(p_, dw);
      for (Int t = 0; t < count; ++t) {
        const PadicApprox z(p_, W, z0 * (1 + step * t));
        std::vector<PadicApprox> x2 = x;
        x2.push_back(z);
        const Fiber sub = fiber(piece, params, shift2, lambda2, x2, Rw, Nw);
        for (std::size_t s = 0; s < sub.pts.size(); ++s) emit(z, &sub.pts[s], wt + "/t" + t.get_str() + ":" + sub.tags[s]);
      }
    }
  }

  const RealizationContext& ctx_;
  Int p_;
};

void leafless_rec(const TreeDatum& d) {
  const auto& sk = d.skeleton;
  auto check_branch = [](const SideBranch& br) {
    const auto leaves = br.fintree.leaves();
    for (std::size_t q = 0; q < leaves.size() && q < br.leaves.size(); ++q) {
      if (leaves[q] != 0 && br.leaves[q].terminal) raise(Errc::NotLeafless, "terminal fintree leaf below the root");
      for (const auto& t : br.leaves[q].pieces) leafless_rec(t);
    }
  };
  for (int j = 0; j < sk.joints; ++j) {
    if (!sk.is_leaf(j) || sk.is_virtual(j)) continue;
    bool grows = false;
    for (const auto& jb : d.joint_branches)
      if (jb.joint == j && jb.branch.fintree.size() > 1) grows = true;
    if (!grows) raise(Errc::NotLeafless, "joint " + std::to_string(j) + " is a leaf");
  }
  for (const auto& jb : d.joint_branches) check_branch(jb.branch);
  for (const auto& bp : d.bone_branches) check_branch(bp.branch);
}

}  // namespace

int ambient_dim(const TreeDatum& d, const Int& p) { return ambient_dim_p(d, p); }

void require_leafless(const TreeDatum& d) { leafless_rec(d); }

SkeletonFns skeleton_fns(const TreeDatum& d, const std::vector<LinearFn>& shift, const LinearFn& lambda,
                         const std::vector<PadicApprox>& x, int N, const RealizationContext& ctx) {
  SkeletonFns out;
  const auto& sk = d.skeleton;
  if (sk.joints == 0) return out;
  const JointPlan jp = plan_joints(d);
  if (N < 1 + jp.slots) raise(Errc::DomainError, "ambient dimension too small for the skeleton");
  const int mx = static_cast<int>(x.size());
  out.f.assign(sk.joints, {});
  out.slot = jp.slot;
  out.width = 1 + jp.slots;
  out.f[jp.order[0]] = zeros(ctx.p(), ctx.prec(), N);
  for (std::size_t pos = 1; pos < jp.order.size(); ++pos) {
    const int j = jp.order[pos], i = jp.from[j];
    out.f[j] = out.f[i];
    if (jp.ancestor[j]) continue;
    const LinearFn l = joint_depth_fn(d, lca(jp, i, j)).compose(shift, mx) + lambda;
    out.f[j][jp.slot[i]] = out.f[j][jp.slot[i]] + u_fn(l, x, ctx);
  }
  return out;
}

std::vector<PadicVec> WitnessCloud::padic_points() const {
  std::vector<PadicVec> out;
  for (const auto& pt : points) out.push_back(PadicVec::from_integers(p, prec, pt));
  return out;
}

WitnessCloud realize(const TreeDatum& d, int depth_cap, const RealizationContext& ctx) {
  if (d.level > 2) raise(Errc::LevelCap, "realization is limited to level <= 2");
  if (d.m != 0) raise(Errc::DomainError, "only unparametrized data can be realized");
  if (depth_cap < 0) raise(Errc::DomainError, "negative depth");
  require_leafless(d);
  if (ctx.prec() < depth_cap + 2) raise(Errc::PrecisionExhausted, "working precision below the depth cap");
  WitnessCloud cloud;
  cloud.p = ctx.p();
  cloud.prec = ctx.prec();
  cloud.m = 0;
  cloud.N = ambient_dim_p(d, ctx.p());
  Realizer r(ctx);
  Fiber f = r.fiber(d, {}, {}, LinearFn::constant(0, 0), {}, depth_cap, cloud.N);
  for (std::size_t i = 0; i < f.pts.size(); ++i) {
    std::vector<Int> pt;
    for (const auto& c : f.pts[i]) {
      if (c.prec() < depth_cap) raise(Errc::PrecisionExhausted, "witness known to fewer digits than the depth cap");
      pt.push_back(c.with_prec(ctx.prec()).residue());
    }
    cloud.points.push_back(std::move(pt));
    cloud.provenance.push_back(f.tags[i]);
  }
  return cloud;
}

WitnessCloud realize(const TreeDatum& d, const Int& p, int depth_cap) {
  return realize(d, depth_cap, RealizationContext(p, depth_cap + 16));
}

RealizationReport verify_realization(const WitnessCloud& cloud, const TreeDatum& d, const Int& p, int depth_cap) {
  RealizationReport rep;
  if (cloud.p != p) {
    rep.detail = "cloud prime differs";
    return rep;
  }
  const TruncTree expected = expand(d, {}, p, depth_cap);
  std::vector<PadicVec> pts;
  for (const auto& pt : cloud.points) {
    if (static_cast<int>(pt.size()) != cloud.N) {
      rep.detail = "point with the wrong number of coordinates";
      return rep;
    }
    pts.push_back(PadicVec::from_integers(p, cloud.prec, pt));
  }
  TruncTree got(depth_cap);
  if (!pts.empty()) {
    Ball ball{PadicVec::from_integers(p, cloud.prec, std::vector<Int>(cloud.N, Int(0))), 0};
    got = from_points(pts, ball, depth_cap);
  }
  const auto diff = first_difference(got, expected);
  rep.ok = !diff.has_value();
  rep.detail = rep.ok ? "isomorphic through depth " + std::to_string(depth_cap) : *diff;
  return rep;
}

}  // namespace padictree
