#pragma once

#include <climits>
#include <string>
#include <vector>

#include "padictree/padic.hpp"
#include "padictree/polysystem.hpp"

namespace padictree {

enum class NewtonOutcome { Certified, Inconclusive };

// Multivariate Hensel certificate at an integer representative a.
//
// Let k be the number of equations and J a k x k minor of the Jacobian at a,
// taken on columns C, with the remaining coordinates frozen at a. If
// v(f(a)) > 2 v(det J), Newton's iteration x <- x - J^{-1} f(x) on the
// C-coordinates converges in Z_p^k: each step multiplies the residual
// valuation gap v(f) - 2 v(det J) at least by two, det J keeps its valuation
// along the iterates, and the limit b is a root with
// v(b - a) >= v(f(a)) - v(det J). Evaluating f exactly at the integer a
// (not just mod p^m) only strengthens the hypothesis, so a certificate is a
// proof that the ball B(a, v(f(a)) - v(det J)) meets X.
struct NewtonCertificate {
  NewtonOutcome outcome = NewtonOutcome::Inconclusive;
  bool exact_root = false;     // f(a) = 0 over Z (or the system is empty)
  std::vector<int> columns;    // chosen minor
  long det_val = -1;           // v(det J), -1 when no nonzero minor
  long f_val = -1;             // v(f(a)), -1 when f(a) = 0
  long agreement = LONG_MAX;   // the root is = a mod p^agreement

  bool certified() const { return outcome == NewtonOutcome::Certified; }
  std::string describe() const;
};

NewtonCertificate newton_certify(const PolySystem& sys, const std::vector<Int>& a);
NewtonCertificate newton_certify(const PolySystem& sys, const PadicVec& a);

// Determinant over Z by fraction-free elimination.
Int integer_determinant(std::vector<std::vector<Int>> m);

}  // namespace padictree
