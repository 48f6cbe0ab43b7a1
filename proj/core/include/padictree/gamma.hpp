#pragma once

#include <string>
#include <vector>

#include "padictree/padic.hpp"
#include "padictree/ratgf.hpp"

namespace padictree {

using GammaPoint = std::vector<long>;

// An integer or +infinity.
struct GammaValue {
  bool infinite = false;
  long value = 0;

  static GammaValue inf() { return {true, 0}; }
  static GammaValue of(long v) { return {false, v}; }
  friend bool operator==(const GammaValue&, const GammaValue&) = default;
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

// a . kappa + b with rational a, b, or +infinity.
struct LinearFn {
  std::vector<Rat> a;
  Rat b = 0;
  bool infinite = false;

  static LinearFn constant(int m, const Rat& b);
  static LinearFn infinity(int m);
  static LinearFn coordinate(int m, int i);

  int arity() const { return static_cast<int>(a.size()); }
  bool is_constant() const;
  Rat eval_rational(const GammaPoint& k) const;
  std::string to_string() const;

  LinearFn operator+(const LinearFn& o) const;
  LinearFn operator-(const LinearFn& o) const;
  LinearFn scaled(const Rat& c) const;
  // Substitutes kappa_i = inner[i](mu); the result is a function of mu.
  LinearFn compose(const std::vector<LinearFn>& inner, int inner_arity) const;
  // Inserts `count` zero coefficients at position `at`.
  LinearFn with_inserted(int at, int count) const;

  friend bool operator==(const LinearFn&, const LinearFn&) = default;
};

// Exact evaluation; NonIntegral if the value is not an integer.
GammaValue eval_linear(const LinearFn& l, const GammaPoint& k);

// Per-coordinate bounds of a cell: lo <= kappa_i <= hi, kappa_i = r mod rho, kappa_i >= 0.
struct CoordBound {
  LinearFn lo;
  LinearFn hi;  // may be infinite
  long r = 0;
  long rho = 1;
  bool lo_unbounded = false;  // a lower bound of -infinity; rejected by cell_gf
};

struct GammaCell {
  std::vector<CoordBound> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  bool contains(const GammaPoint& k) const;
  void validate() const;
  std::string to_string() const;

  // All of Gamma_{>=0}^m.
  static GammaCell orthant(int m);
  // The single point k.
  static GammaCell point(const GammaPoint& k);
};

struct GammaSet {
  int m = 0;
  std::vector<GammaCell> cells;

  bool contains(const GammaPoint& k) const;
  void validate() const;

  static GammaSet orthant(int m);
  static GammaSet single(GammaCell c);
};

// All points of M within 0 <= k_i <= box[i], in lexicographic order.
std::vector<GammaPoint> members(const GammaSet& M, const std::vector<long>& box);
std::vector<GammaPoint> members(const GammaCell& c, const std::vector<long>& box);

// Integer inequality sum c_i k_i + c0 >= 0.
struct LinearConstraint {
  std::vector<Int> c;
  Int c0;
};

// A conjunction of integer inequalities and per-coordinate congruences over Gamma_{>=0}^dim.
class ConstraintSet {
 public:
  explicit ConstraintSet(int dim = 0);
  static ConstraintSet from_cell(const GammaCell& cell);

  int dim() const { return dim_; }
  bool trivially_empty() const { return empty_; }
  const std::vector<LinearConstraint>& inequalities() const { return ineqs_; }
  const std::vector<Int>& moduli() const { return mod_; }
  const std::vector<Int>& residues() const { return res_; }

  void add_inequality(std::vector<Int> c, Int c0);
  // l(k) >= 0 for a finite rational linear function.
  void add_at_least_zero(const LinearFn& l);
  void add_congruence(int i, const Int& r, const Int& rho);
  void intersect(const ConstraintSet& o);
  // Coordinate i of this set becomes coordinate map[i] of a dim-`new_dim` set.
  ConstraintSet embedded(int new_dim, const std::vector<int>& map) const;

  bool contains(const GammaPoint& k) const;

 private:
  int dim_;
  bool empty_ = false;
  std::vector<LinearConstraint> ineqs_;
  std::vector<Int> mod_, res_;
};

// Generating function sum over lattice points of the set, in variables
// (Z, Y_1..Y_dim) with Y_{i+1} carrying coordinate i; Z does not occur.
RationalGF constraint_gf(const ConstraintSet& s);
RationalGF cell_gf(const GammaCell& c);
RationalGF cell_gf(const GammaSet& M);

}  // namespace padictree
