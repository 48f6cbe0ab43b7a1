#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padictree/datum.hpp"
#include "padictree/gamma.hpp"
#include "padictree/ratgf.hpp"
#include "padictree/trees.hpp"

namespace padictree {

// P_T(Z, Y_1..Y_m) = sum over kappa in the domain and lambda >= 0 of
// (#nodes of T(kappa) at depth lambda) Z^lambda Y^kappa.
// Requires normal data (or data whose pieces are congruence-respecting cells)
// with a domain in the nonnegative orthant.
RationalGF datum_poincare(const TreeDatum& d, const Int& p);

// Sum over kappa in `s` of P_{T(kappa|embed)}(Z) Y^kappa, in variables
// (Z, Y_1..Y_dim(s)); parameter i of d is coordinate embed[i] of s.
RationalGF datum_gf_over(const TreeDatum& d, const Int& p, const ConstraintSet& s, const std::vector<int>& embed);

struct CompareReport {
  bool equal = true;
  std::optional<int> first_mismatch;
  std::vector<Rat> series;
  std::vector<Int> counts;

  std::string to_string() const;
};

// Coefficientwise comparison of a univariate GF with the layer counts of t.
CompareReport compare(const RationalGF& f, const TruncTree& t);
CompareReport compare(const RationalGF& f, const std::vector<Int>& counts);

}  // namespace padictree
