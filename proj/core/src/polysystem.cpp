#include "padictree/polysystem.hpp"

#include <algorithm>

#include "padictree/errors.hpp"

namespace padictree {

Polynomial::Polynomial(int nvars, std::vector<Term> terms) : nvars_(nvars) {
  std::map<std::vector<int>, Int> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.exps.size()) != nvars) raise(Errc::ParseError, "term arity mismatch");
    for (int e : t.exps)
      if (e < 0) raise(Errc::ParseError, "negative exponent in polynomial");
    merged[t.exps] += t.coeff;
  }
  for (auto& [e, c] : merged)
    if (c != 0) terms_.push_back({c, e});
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

Int Polynomial::eval(const std::vector<Int>& x) const {
  Int total = 0;
  Int pw;
  for (const auto& t : terms_) {
    Int v = t.coeff;
    for (int j = 0; j < nvars_; ++j) {
      if (t.exps[j] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), x[j].get_mpz_t(), static_cast<unsigned long>(t.exps[j]));
      v *= pw;
    }
    total += v;
  }
  return total;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d{t.coeff * t.exps[var], t.exps};
    d.exps[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(nvars_, std::move(out));
}

std::map<std::vector<int>, Int> Polynomial::taylor(const std::vector<Int>& a, const Int& s) const {
  std::map<std::vector<int>, Int> out;
  for (const auto& t : terms_) {
    // Expand prod_j (a_j + s t_j)^{e_j} one variable at a time.
    std::map<std::vector<int>, Int> acc{{std::vector<int>(nvars_, 0), t.coeff}};
    for (int j = 0; j < nvars_; ++j) {
      const int e = t.exps[j];
      if (e == 0) continue;
      std::map<std::vector<int>, Int> next;
      for (const auto& [alpha, c] : acc) {
        for (int k = 0; k <= e; ++k) {
          Int b, ap, sp;
          mpz_bin_uiui(b.get_mpz_t(), e, k);
          mpz_pow_ui(ap.get_mpz_t(), a[j].get_mpz_t(), e - k);
          mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), k);
          auto beta = alpha;
          beta[j] += k;
          next[beta] += c * b * ap * sp;
        }
      }
      acc = std::move(next);
    }
    for (auto& [alpha, c] : acc) out[alpha] += c;
  }
  return out;
}

void PolySystem::validate() const {
  require_prime(p);
  if (n < 1) raise(Errc::ParseError, "system dimension must be at least 1");
  if (polys.empty() && !empty_system)
    raise(Errc::ParseError, "system has no polynomials; set the empty-system flag to mean Z_p^n");
  if (!polys.empty() && empty_system) raise(Errc::ParseError, "empty-system flag set on a non-empty system");
  for (const auto& f : polys)
    if (f.nvars() != n) raise(Errc::ParseError, "polynomial arity differs from n");
  for (const auto& w : witnesses) {
    if (static_cast<int>(w.size()) != n) raise(Errc::ParseError, "witness arity differs from n");
    std::vector<Rat> vals(polys.size(), 0);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Rat total = 0;
      for (const auto& t : polys[i].terms()) {
        Rat v = t.coeff;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < t.exps[j]; ++k) v *= w[j];
        total += v;
      }
      if (total != 0) raise(Errc::ParseError, "witness is not a point of X");
    }
    for (const auto& c : w)
      if (mpz_divisible_p(c.get_den().get_mpz_t(), p.get_mpz_t()))
        raise(Errc::ParseError, "witness is not p-integral");
  }
}

std::vector<Int> PolySystem::eval(const std::vector<Int>& x) const {
  std::vector<Int> out;
  out.reserve(polys.size());
  for (const auto& f : polys) out.push_back(f.eval(x));
  return out;
}

bool ball_dominated(const PolySystem& sys, const std::vector<Int>& a, long r) {
  const Int s = pow_int(sys.p, r);
  const std::vector<int> zero(sys.n, 0);
  for (const auto& f : sys.polys) {
    auto g = f.taylor(a, s);
    auto it = g.find(zero);
    if (it == g.end() || it->second == 0) continue;
    const long v0 = int_valuation(it->second, sys.p);
    bool dominated = true;
    for (const auto& [alpha, c] : g) {
      if (alpha == zero || c == 0) continue;
      if (int_valuation(c, sys.p) <= v0) {
        dominated = false;
        break;
      }
    }
    if (dominated) return true;
  }
  return false;
}

}  // namespace padictree
