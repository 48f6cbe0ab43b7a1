#pragma once

#include <map>
#include <vector>

#include "padictree/padic.hpp"

namespace padictree {

struct Term {
  Int coeff;
  std::vector<int> exps;
};

// Sparse polynomial with integer coefficients in a fixed number of variables.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;

  Int eval(const std::vector<Int>& x) const;
  Polynomial derivative(int var) const;
  // Coefficients of t -> f(a + s t), keyed by exponent vector.
  std::map<std::vector<int>, Int> taylor(const std::vector<Int>& a, const Int& s) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;  // merged, nonzero, sorted by exponent
};

// X = { x in Z_p^n : f(x) = 0 for all f }; empty_system marks X = Z_p^n.
struct PolySystem {
  Int p;
  int n = 0;
  std::vector<Polynomial> polys;
  bool empty_system = false;
  std::vector<std::vector<Rat>> witnesses;

  void validate() const;
  std::vector<Int> eval(const std::vector<Int>& x) const;
};

// Sound emptiness test: true when some f has f(a + p^r t) with constant term
// strictly dominating every other Taylor coefficient, so the ball B(a, r) holds no zero.
bool ball_dominated(const PolySystem& sys, const std::vector<Int>& a, long r);

}  // namespace padictree
