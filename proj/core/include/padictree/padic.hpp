#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace padictree {

using Int = mpz_class;
using Rat = mpq_class;

// p^k for k >= 0.
Int pow_int(const Int& base, long k);
// Exact p-adic valuation of a nonzero integer.
long int_valuation(const Int& x, const Int& p);
bool is_prime(const Int& p);
// Throws DomainError unless p is prime.
void require_prime(const Int& p);
// Least non-negative representative of x mod m.
Int mod_floor(const Int& x, const Int& m);

class Valuation {
 public:
  static Valuation finite(long v);
  static Valuation at_least_prec(long prec);

  bool is_finite() const { return finite_; }
  // DomainError when the valuation is AtLeastPrec.
  long value() const;
  // The finite value, or the precision bound for AtLeastPrec.
  long bound() const { return v_; }
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  bool finite_ = true;
  long v_ = 0;
};

// An element of Z_p known modulo p^prec.
class PadicApprox {
 public:
  PadicApprox(Int p, long prec, const Int& value);
  static PadicApprox from_rational(const Int& p, long prec, const Rat& q);

  const Int& p() const { return p_; }
  long prec() const { return prec_; }
  const Int& residue() const { return residue_; }
  Int modulus() const { return pow_int(p_, prec_); }

  Valuation val() const;
  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const;

  PadicApprox with_prec(long prec) const;
  // x / p^v(x), known to precision prec - v(x).
  PadicApprox unit_part() const;
  PadicApprox inverse() const;

  PadicApprox operator-() const;
  friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
  friend bool operator==(const PadicApprox& a, const PadicApprox& b);

  std::string to_string() const;

 private:
  Int p_;
  long prec_;
  Int residue_;
};

Valuation val(const PadicApprox& x);

// True iff v(x - y) >= v(x) + delta.
bool approx_eq(const PadicApprox& x, const PadicApprox& y, long delta);

// The unique z = 1 mod p^delta with z^e = y; precision drops by v_p(e).
PadicApprox eth_root_lift(const PadicApprox& y, long e, long delta);

struct PowerResidueIndex {
  long val_mod_e = 0;
  Int unit_rep;  // canonical unit class representative mod p^(2 v(e) + 1)

  friend bool operator==(const PowerResidueIndex& a, const PowerResidueIndex& b) {
    return a.val_mod_e == b.val_mod_e && a.unit_rep == b.unit_rep;
  }
};

PowerResidueIndex power_residue_index(const PadicApprox& x, long e);

// Least representatives of (Z/p^mu)^x, increasing.
std::vector<Int> unit_representatives(const Int& p, long mu);

class PadicVec {
 public:
  explicit PadicVec(std::vector<PadicApprox> coords);
  static PadicVec from_integers(const Int& p, long prec, const std::vector<Int>& xs);

  std::size_t size() const { return coords_.size(); }
  const PadicApprox& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<PadicApprox>& coords() const { return coords_; }
  const Int& p() const { return coords_.front().p(); }
  long prec() const { return coords_.front().prec(); }
  std::vector<Int> residues() const;

  Valuation val() const;
  friend PadicVec operator+(const PadicVec& a, const PadicVec& b);
  friend PadicVec operator-(const PadicVec& a, const PadicVec& b);
  friend bool operator==(const PadicVec& a, const PadicVec& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<PadicApprox> coords_;
};

}  // namespace padictree
