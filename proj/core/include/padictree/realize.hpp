#pragma once

#include <map>
#include <string>
#include <vector>

#include "padictree/datum.hpp"
#include "padictree/gamma.hpp"
#include "padictree/padic.hpp"

namespace padictree {

// Deterministic choices for the realization: unit representatives of
// Z_p^x / (1 + p^mu Z_p) are the least positive integers of each class, and
// e-th roots are the branches congruent to 1 (as in eth_root_lift).
class RealizationContext {
 public:
  RealizationContext(Int p, long prec);

  const Int& p() const { return p_; }
  long prec() const { return prec_; }
  // The representative r with r = u mod p^mu.
  Int unit_rep(const Int& u, long mu) const;

 private:
  Int p_;
  long prec_;
  mutable std::map<long, std::vector<Int>> reps_;
};

// u_l(x): v(u) = l(v(x)) and v(u(x) - u(x')) >= v(x - x') when v(x) = v(x').
// Requires l(v(x)) >= v(x_i) for every i.
PadicApprox u_fn(const LinearFn& l, const std::vector<PadicApprox>& x, const RealizationContext& ctx);

// Skeleton points f_j(x) in Z_p^N for joints in index order. `shift` maps
// the coordinates of x to the datum parameters, `lambda` is the base radius.
struct SkeletonFns {
  std::vector<std::vector<PadicApprox>> f;  // one per joint
  std::vector<int> slot;                    // coordinate used to branch off joint i (0 if unused)
  int width = 1;                            // coordinates 0..width-1 are touched
};
SkeletonFns skeleton_fns(const TreeDatum& d, const std::vector<LinearFn>& shift, const LinearFn& lambda,
                         const std::vector<PadicApprox>& x, int N, const RealizationContext& ctx);

// Ambient dimension used by realize for d.
int ambient_dim(const TreeDatum& d, const Int& p);

// Structural check that every expansion of d has no leaves.
void require_leafless(const TreeDatum& d);

struct WitnessCloud {
  Int p;
  long prec = 0;
  int m = 0;
  int N = 0;
  std::vector<std::vector<Int>> points;  // residues mod p^prec
  std::vector<std::string> provenance;

  std::vector<PadicVec> padic_points() const;
  friend bool operator==(const WitnessCloud&, const WitnessCloud&) = default;
};

// One witness per depth-depth_cap node of expand(d, {}, p, depth_cap).
// d must be unparametrized, of level <= 2 and leafless.
WitnessCloud realize(const TreeDatum& d, int depth_cap, const RealizationContext& ctx);
WitnessCloud realize(const TreeDatum& d, const Int& p, int depth_cap);

struct RealizationReport {
  bool ok = false;
  std::string detail;
};

RealizationReport verify_realization(const WitnessCloud& cloud, const TreeDatum& d, const Int& p, int depth_cap);

}  // namespace padictree
