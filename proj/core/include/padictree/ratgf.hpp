#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padictree/padic.hpp"

namespace padictree {

using Exps = std::vector<int>;

// Sparse Laurent polynomial with rational coefficients.
class MPoly {
 public:
  explicit MPoly(int nvars = 0) : nvars_(nvars) {}
  static MPoly constant(int nvars, const Rat& c);
  static MPoly monomial(int nvars, const Rat& c, Exps e);

  int nvars() const { return nvars_; }
  const std::map<Exps, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_negative_exponents() const;
  Rat coeff(const Exps& e) const;

  void add_term(const Exps& e, const Rat& c);
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Rat& c) const;
  MPoly shifted(const Exps& by) const;
  // var -> c * mono.
  MPoly substitute(int var, const Rat& c, const Exps& mono) const;
  // Quotient by (1 - c*mono) when it divides exactly.
  std::optional<MPoly> divide_by_factor(const Rat& c, const Exps& mono) const;

  friend bool operator==(const MPoly&, const MPoly&) = default;
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

 private:
  int nvars_;
  std::map<Exps, Rat> terms_;
};

// The factor (1 - c * mono).
struct DenFactor {
  Rat c;
  Exps mono;
  friend bool operator<(const DenFactor& a, const DenFactor& b) {
    if (a.mono != b.mono) return a.mono < b.mono;
    return a.c < b.c;
  }
  friend bool operator==(const DenFactor&, const DenFactor&) = default;
};

// numerator / prod (1 - c_i * mono_i). Variable 0 is Z, variable i >= 1 is Y_i.
class RationalGF {
 public:
  explicit RationalGF(int nvars = 1);
  RationalGF(MPoly num, std::vector<DenFactor> den);
  static RationalGF zero(int nvars) { return RationalGF(nvars); }
  static RationalGF constant(int nvars, const Rat& c);
  static RationalGF monomial(int nvars, const Rat& c, Exps e);
  // 1 / (1 - c * mono).
  static RationalGF geometric(int nvars, const Rat& c, Exps mono);

  int nvars() const { return num_.nvars(); }
  const MPoly& numerator() const { return num_; }
  const std::vector<DenFactor>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  MPoly expanded_denominator() const;

  // Cancels denominator factors that divide the numerator exactly.
  void normalize();

  std::string to_string() const;

 private:
  MPoly num_;
  std::vector<DenFactor> den_;  // sorted multiset
  friend RationalGF gf_mul(const RationalGF&, const RationalGF&);
};

RationalGF gf_add(const RationalGF& f, const RationalGF& g);
RationalGF gf_sub(const RationalGF& f, const RationalGF& g);
RationalGF gf_mul(const RationalGF& f, const RationalGF& g);
bool gf_equal(const RationalGF& f, const RationalGF& g);
RationalGF substitute(const RationalGF& f, int var, const Rat& c, const Exps& mono);
// Changes the number of variables; new variables are appended, dropped ones must not occur.
RationalGF resize_vars(const RationalGF& f, int nvars);
// Moves variable i to position perm[i].
RationalGF permute_vars(const RationalGF& f, const std::vector<int>& perm, int nvars);

// Power-series coefficients on the box 0 <= e_i <= caps[i].
std::map<Exps, Rat> series_box(const RationalGF& f, const std::vector<int>& caps);
// Univariate expansion c_0..c_k in Z; other variables must not occur.
std::vector<Rat> expand_series(const RationalGF& f, int k);

std::string monomial_string(const Exps& e);

}  // namespace padictree
