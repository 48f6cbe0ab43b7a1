#include "padictree/poincare.hpp"

#include <sstream>

#include "padictree/errors.hpp"

namespace padictree {

namespace {

// Z^k in nvars variables.
RationalGF z_power(int nvars, int k) {
  Exps e(nvars, 0);
  e[0] = k;
  return RationalGF::monomial(nvars, 1, e);
}

std::vector<LinearFn> coordinate_fns(int dim, const std::vector<int>& embed) {
  std::vector<LinearFn> out;
  for (int c : embed) out.push_back(LinearFn::coordinate(dim, c));
  return out;
}

// Identifies the last variable with Z and drops it.
RationalGF fold_last_into_z(const RationalGF& f) {
  const int n = f.nvars();
  Exps z(n, 0);
  z[0] = 1;
  return resize_vars(substitute(f, n - 1, 1, z), n - 1);
}

class GfBuilder {
 public:
  explicit GfBuilder(const Int& p) : p_(p) {}

  RationalGF datum(const TreeDatum& d, const ConstraintSet& s, const std::vector<int>& embed) {
    const int K = s.dim();
    RationalGF total = RationalGF::zero(K + 1);
    if (d.skeleton.joints == 0 || s.trivially_empty()) return total;
    const auto inner = coordinate_fns(K, embed);
    for (const auto& cell : d.domain.cells) {
      ConstraintSet sc = s;
      sc.intersect(ConstraintSet::from_cell(cell).embedded(K, embed));
      if (sc.trivially_empty()) continue;
      total = gf_add(total, cell_part(d, sc, embed, inner));
    }
    total.normalize();
    return total;
  }

 private:
  RationalGF cell_part(const TreeDatum& d, const ConstraintSet& s, const std::vector<int>& embed,
                       const std::vector<LinearFn>& inner) {
    const int K = s.dim();
    std::vector<int> ext(K);
    for (int i = 0; i < K; ++i) ext[i] = i;
    const LinearFn lam = LinearFn::coordinate(K + 1, K);
    auto lift = [&](const LinearFn& l) { return l.compose(inner, K).with_inserted(K, 1); };
    RationalGF total = RationalGF::zero(K + 1);
    const auto& sk = d.skeleton;

    for (int j = 0; j < sk.joints; ++j) {
      const LinearFn dj = joint_depth_fn(d, j);
      if (dj.infinite) continue;
      ConstraintSet sj = s.embedded(K + 1, ext);
      sj.add_at_least_zero(lam - lift(dj));
      sj.add_at_least_zero(lift(dj) - lam);
      const SideBranch* br = nullptr;
      for (const auto& jb : d.joint_branches)
        if (jb.joint == j) br = &jb.branch;
      total = gf_add(total, fold_last_into_z(br ? branch(*br, sj, embed) : root_only(sj)));
    }

    std::vector<int> side_embed = embed;
    side_embed.push_back(K);
    for (std::size_t b = 0; b < sk.bones.size(); ++b) {
      const LinearFn lo = joint_depth_fn(d, sk.bones[b].from);
      const LinearFn hi = joint_depth_fn(d, sk.bones[b].to);
      ConstraintSet n = s.embedded(K + 1, ext);
      n.add_at_least_zero(lam - lift(lo) - LinearFn::constant(K + 1, 1));
      if (!hi.infinite) n.add_at_least_zero(lift(hi) - lam - LinearFn::constant(K + 1, 1));
      if (n.trivially_empty()) continue;
      bool any = false;
      for (const auto& bp : d.bone_branches) {
        if (bp.bone != static_cast<int>(b)) continue;
        any = true;
        ConstraintSet np = n;
        np.intersect(ConstraintSet::from_cell(bp.piece).embedded(K + 1, side_embed));
        if (np.trivially_empty()) continue;
        total = gf_add(total, fold_last_into_z(branch(bp.branch, np, side_embed)));
      }
      if (!any) total = gf_add(total, fold_last_into_z(root_only(n)));
    }
    return total;
  }

  RationalGF root_only(const ConstraintSet& s) { return constraint_gf(s); }

  // Sum over points of s of P_branch(Z) Y^point; side data take coordinates side_embed.
  RationalGF branch(const SideBranch& br, const ConstraintSet& s, const std::vector<int>& side_embed) {
    const int nv = s.dim() + 1;
    const RationalGF base = constraint_gf(s);
    RationalGF total = RationalGF::zero(nv);
    const auto& f = br.fintree;
    const auto leaves = f.leaves();
    std::vector<int> leaf_slot(f.size(), -1);
    for (std::size_t q = 0; q < leaves.size(); ++q) leaf_slot[leaves[q]] = static_cast<int>(q);
    Exps z(nv, 0);
    z[0] = 1;
    for (int i = 0; i < f.size(); ++i) {
      const RationalGF zi = z_power(nv, f.depth(i));
      const int q = leaf_slot[i];
      if (q < 0 || br.leaves.at(q).terminal) {
        total = gf_add(total, gf_mul(zi, base));
        continue;
      }
      for (const auto& t : br.leaves[q].pieces) {
        if (t.skeleton.joints == 0) {
          // w is still a node even when its side tree is empty
          ConstraintSet sw = s;
          for (const auto& cell : t.domain.cells) {
            ConstraintSet c = sw;
            c.intersect(ConstraintSet::from_cell(cell).embedded(s.dim(), side_embed));
            total = gf_add(total, gf_mul(zi, constraint_gf(c)));
          }
          continue;
        }
        const RationalGF side = substitute(datum(t, s, side_embed), 0, Rat(p_), z);
        total = gf_add(total, gf_mul(zi, side));
      }
    }
    return total;
  }

  Int p_;
};

}  // namespace

RationalGF datum_gf_over(const TreeDatum& d, const Int& p, const ConstraintSet& s, const std::vector<int>& embed) {
  if (static_cast<int>(embed.size()) != d.m) raise(Errc::DomainError, "embedding arity differs from the datum");
  return GfBuilder(p).datum(d, s, embed);
}

RationalGF datum_poincare(const TreeDatum& d, const Int& p) {
  require_prime(p);
  for (const auto& c : d.domain.cells)
    for (const auto& cb : c.coords)
      if (cb.lo_unbounded) raise(Errc::DomainNotNonnegative, "datum domain is not contained in the nonnegative orthant");
  const auto rep = validate(d);
  for (const char* code : {"PieceGap", "PieceOverlap", "NotNormal", "SideDomain"})
    if (rep.has(code)) raise(Errc::NotNormal, "datum pieces do not partition the bone depths:\n" + rep.to_string());
  if (!rep.ok()) raise(Errc::InvalidDatum, rep.to_string());
  std::vector<int> id(d.m);
  for (int i = 0; i < d.m; ++i) id[i] = i;
  RationalGF f = GfBuilder(p).datum(d, ConstraintSet(d.m), id);
  f.normalize();
  return f;
}

CompareReport compare(const RationalGF& f, const std::vector<Int>& counts) {
  CompareReport r;
  r.counts = counts;
  r.series = expand_series(f, static_cast<int>(counts.size()) - 1);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (r.series[i] != Rat(counts[i])) {
      r.equal = false;
      r.first_mismatch = static_cast<int>(i);
      break;
    }
  return r;
}

CompareReport compare(const RationalGF& f, const TruncTree& t) { return compare(f, poincare_coeffs(t)); }

std::string CompareReport::to_string() const {
  std::ostringstream os;
  if (equal) {
    os << "equal through depth " << (counts.empty() ? 0 : counts.size() - 1);
  } else {
    const int i = *first_mismatch;
    os << "first mismatch at depth " << i << ": series " << series[i].get_str() << ", tree " << counts[i].get_str();
  }
  return os.str();
}

}  // namespace padictree
