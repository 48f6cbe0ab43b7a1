// Lattice-point generating functions of constraint sets.
//
// 1. Fourier-Motzkin with case splits turns the set into disjoint triangular
//    systems: per coordinate k (innermost = last) one lower bound L_k and at
//    most one upper bound U_k, affine in earlier coordinates. Ties between
//    candidate bounds are broken by strict inequalities, and U_k >= L_k is
//    pushed outwards so empty ranges never give negative counts.
// 2. Each coordinate is split into residue classes k_i = s_i + R_i q_i with
//    R_i chosen so every bound becomes an integer affine form in the q's.
// 3. Geometric sums are closed innermost first:
//    sum_{q=A}^{B} M^q = (M^A - M^{B+1}) / (1 - M).
#include <algorithm>
#include <functional>

#include "padictree/errors.hpp"
#include "padictree/gamma.hpp"

namespace padictree {
namespace {

struct Affine {  // sum c_i k_i + c0 over coordinates below some level
  std::vector<Rat> c;
  Rat c0;
  friend bool operator==(const Affine&, const Affine&) = default;
};

struct LevelBounds {
  Affine lo;
  bool has_hi = false;
  Affine hi;
};

using Tri = std::vector<LevelBounds>;

struct IntCon {
  std::vector<Int> c;
  Int c0;
  friend bool operator==(const IntCon&, const IntCon&) = default;
};

// Adds expr >= 0 (or > 0) over coordinates [0, n); false if it is a false constant.
bool push_constraint(std::vector<IntCon>& cons, const Affine& expr, bool strict) {
  Int d = expr.c0.get_den();
  for (const auto& x : expr.c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  IntCon ic;
  for (const auto& x : expr.c) ic.c.push_back(Int(x * d));
  ic.c0 = Int(expr.c0 * d);
  if (strict) ic.c0 -= 1;
  Int g = 0;
  for (const auto& x : ic.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return ic.c0 >= 0;
  if (g != 1) {
    for (auto& x : ic.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_fdiv_q(ic.c0.get_mpz_t(), ic.c0.get_mpz_t(), g.get_mpz_t());
  }
  if (std::find(cons.begin(), cons.end(), ic) == cons.end()) cons.push_back(std::move(ic));
  return true;
}

Affine diff(const Affine& a, const Affine& b) {
  Affine r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  r.c0 -= b.c0;
  return r;
}

void triangularize(int k, const std::vector<IntCon>& cons, Tri& acc, std::vector<Tri>& out) {
  if (k < 0) {
    out.push_back(acc);
    return;
  }
  std::vector<IntCon> rest;
  std::vector<Affine> lowers, uppers;
  for (const auto& ic : cons) {
    if (ic.c[k] == 0) {
      IntCon r{std::vector<Int>(ic.c.begin(), ic.c.begin() + k), ic.c0};
      rest.push_back(std::move(r));
      continue;
    }
    Affine b;
    const Rat ck(ic.c[k]);
    for (int i = 0; i < k; ++i) b.c.push_back(Rat(-ic.c[i]) / ck);
    b.c0 = Rat(-ic.c0) / ck;
    auto& bucket = ic.c[k] > 0 ? lowers : uppers;
    if (std::find(bucket.begin(), bucket.end(), b) == bucket.end()) bucket.push_back(std::move(b));
  }
  if (lowers.empty()) raise(Errc::UnboundedBelow, "coordinate " + std::to_string(k + 1) + " has no lower bound");
  const std::size_t nu = std::max<std::size_t>(uppers.size(), 1);
  for (std::size_t jl = 0; jl < lowers.size(); ++jl)
    for (std::size_t ju = 0; ju < nu; ++ju) {
      std::vector<IntCon> next = rest;
      bool ok = true;
      for (std::size_t j = 0; j < lowers.size() && ok; ++j)
        if (j != jl) ok = push_constraint(next, diff(lowers[jl], lowers[j]), j < jl);
      if (!uppers.empty()) {
        for (std::size_t j = 0; j < uppers.size() && ok; ++j)
          if (j != ju) ok = push_constraint(next, diff(uppers[j], uppers[ju]), j < ju);
        if (ok) ok = push_constraint(next, diff(uppers[ju], lowers[jl]), false);
      }
      if (!ok) continue;
      acc[k].lo = lowers[jl];
      acc[k].has_hi = !uppers.empty();
      if (acc[k].has_hi) acc[k].hi = uppers[ju];
      triangularize(k - 1, next, acc, out);
    }
}

Int ceil_q(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Int floor_q(const Rat& x) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// Smallest positive R with c * R_i / R_k integral.
Int needed_modulus(const Rat& c, const Int& rk) {
  if (c == 0) return 1;
  Int u = abs(c.get_num()), v = c.get_den();
  Int vr = v * rk;
  Int g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), vr.get_mpz_t());
  return vr / g;
}

struct Term {
  Rat coef;
  Exps base;
  std::vector<Exps> qexp;  // per remaining level
  std::vector<DenFactor> den;
};

bool nonneg(const Exps& e) {
  return std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
}

int to_int(const Int& x) {
  if (!x.fits_sint_p()) raise(Errc::Unsupported, "exponent out of range");
  return static_cast<int>(x.get_si());
}

void add_scaled(Exps& dst, const Exps& src, long k) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += static_cast<int>(k * src[i]);
}

void sum_branch(const Tri& tri, const ConstraintSet& s, std::map<std::vector<DenFactor>, MPoly>& groups) {
  const int K = s.dim();
  const int nv = K + 1;
  std::vector<Int> R(K);
  for (int i = K - 1; i >= 0; --i) {
    R[i] = s.moduli()[i];
    for (int k = i + 1; k < K; ++k) {
      Int need = needed_modulus(tri[k].lo.c[i], R[k]);
      mpz_lcm(R[i].get_mpz_t(), R[i].get_mpz_t(), need.get_mpz_t());
      if (tri[k].has_hi) {
        need = needed_modulus(tri[k].hi.c[i], R[k]);
        mpz_lcm(R[i].get_mpz_t(), R[i].get_mpz_t(), need.get_mpz_t());
      }
    }
    if (R[i] > 100000) raise(Errc::NonIntegralExponent, "residue refinement needs an excessive modulus");
  }
  std::vector<Int> svec(K);
  std::function<void(int)> rec = [&](int i) {
    if (i < K) {
      for (Int v = s.residues()[i]; v < R[i]; v += s.moduli()[i]) {
        svec[i] = v;
        rec(i + 1);
      }
      return;
    }
    Term t0;
    t0.coef = 1;
    t0.base = Exps(nv, 0);
    t0.qexp.assign(K, Exps(nv, 0));
    for (int j = 0; j < K; ++j) {
      t0.base[j + 1] = to_int(svec[j]);
      t0.qexp[j][j + 1] = to_int(R[j]);
    }
    std::vector<Term> terms{t0};
    for (int k = K - 1; k >= 0; --k) {
      // Integer affine q-bounds: q_k >= sum alpha_i q_i + a, q_k <= sum beta_i q_i + b.
      auto qbound = [&](const Affine& f, bool lower, std::vector<long>& coef, long& cst) {
        Rat c0 = f.c0 - Rat(svec[k]);
        coef.assign(k, 0);
        for (int i = 0; i < k; ++i) {
          c0 += f.c[i] * Rat(svec[i]);
          Rat q = f.c[i] * Rat(R[i]) / Rat(R[k]);
          if (q.get_den() != 1) raise(Errc::NonIntegralExponent, "residue refinement failed");
          coef[i] = q.get_num().get_si();
        }
        c0 /= Rat(R[k]);
        cst = (lower ? ceil_q(c0) : floor_q(c0)).get_si();
      };
      std::vector<long> alpha, beta;
      long a = 0, b = 0;
      qbound(tri[k].lo, true, alpha, a);
      const bool finite = tri[k].has_hi;
      if (finite) qbound(tri[k].hi, false, beta, b);
      const bool const_bounds = finite && std::all_of(alpha.begin(), alpha.end(), [](long x) { return x == 0; }) &&
                                std::all_of(beta.begin(), beta.end(), [](long x) { return x == 0; });
      std::vector<Term> next;
      for (auto& t : terms) {
        const Exps M = t.qexp[k];
        if (finite && b < a && const_bounds) continue;
        if (nonneg(M)) {
          Term t1 = t;
          add_scaled(t1.base, M, a);
          for (int i = 0; i < k; ++i) add_scaled(t1.qexp[i], M, alpha[i]);
          t1.qexp.pop_back();
          t1.den.push_back({1, M});
          std::sort(t1.den.begin(), t1.den.end());
          if (finite) {
            Term t2 = t;
            t2.coef = -t.coef;
            add_scaled(t2.base, M, b + 1);
            for (int i = 0; i < k; ++i) add_scaled(t2.qexp[i], M, beta[i]);
            t2.qexp.pop_back();
            t2.den = t1.den;
            next.push_back(std::move(t2));
          }
          next.push_back(std::move(t1));
        } else if (const_bounds) {
          for (long q = a; q <= b; ++q) {
            Term t1 = t;
            add_scaled(t1.base, M, q);
            t1.qexp.pop_back();
            next.push_back(std::move(t1));
          }
        } else {
          raise(Errc::Unsupported, "geometric ratio with mixed-sign exponents over a non-constant range");
        }
      }
      terms = std::move(next);
    }
    for (const auto& t : terms) {
      auto it = groups.try_emplace(t.den, MPoly(nv)).first;
      it->second.add_term(t.base, t.coef);
    }
  };
  rec(0);
}

}  // namespace

RationalGF constraint_gf(const ConstraintSet& s) {
  const int K = s.dim();
  if (s.trivially_empty()) return RationalGF::zero(K + 1);
  std::vector<IntCon> cons;
  for (const auto& e : s.inequalities()) cons.push_back({e.c, e.c0});
  for (int i = 0; i < K; ++i) {
    IntCon nn{std::vector<Int>(K, 0), 0};
    nn.c[i] = 1;
    if (std::find(cons.begin(), cons.end(), nn) == cons.end()) cons.push_back(std::move(nn));
  }
  if (K == 0) return RationalGF::constant(1, 1);
  Tri acc(K);
  std::vector<Tri> branches;
  triangularize(K - 1, cons, acc, branches);
  std::map<std::vector<DenFactor>, MPoly> groups;
  for (const auto& tri : branches) sum_branch(tri, s, groups);
  RationalGF total = RationalGF::zero(K + 1);
  for (auto& [den, num] : groups) total = gf_add(total, RationalGF(num, den));
  return total;
}

RationalGF cell_gf(const GammaCell& c) {
  c.validate();
  return constraint_gf(ConstraintSet::from_cell(c));
}

RationalGF cell_gf(const GammaSet& M) {
  RationalGF total = RationalGF::zero(M.m + 1);
  for (const auto& c : M.cells) total = gf_add(total, cell_gf(c));
  return total;
}

}  // namespace padictree
