#include "padictree/newton.hpp"

#include <algorithm>

#include "padictree/errors.hpp"

namespace padictree {

std::string NewtonCertificate::describe() const {
  if (exact_root) return "exact-root";
  if (!certified()) return "inconclusive";
  std::string cols;
  for (int c : columns) cols += (cols.empty() ? "" : ",") + std::to_string(c);
  return "newton:cols=" + cols + ";v(det)=" + std::to_string(det_val) + ";v(f)=" + std::to_string(f_val);
}

Int integer_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t k = m.size();
  if (k == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (m[i][i] == 0) {
      std::size_t r = i + 1;
      while (r < k && m[r][i] == 0) ++r;
      if (r == k) return 0;
      std::swap(m[i], m[r]);
      sign = -sign;
    }
    for (std::size_t r = i + 1; r < k; ++r) {
      for (std::size_t c = i + 1; c < k; ++c) {
        Int t = m[r][c] * m[i][i] - m[r][i] * m[i][c];
        mpz_divexact(m[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[r][i] = 0;
    }
    prev = m[i][i];
  }
  return sign * m[k - 1][k - 1];
}

NewtonCertificate newton_certify(const PolySystem& sys, const std::vector<Int>& a) {
  const int k = static_cast<int>(sys.polys.size());
  const int n = sys.n;
  if (k > n) raise(Errc::DomainError, "more equations than variables");
  if (static_cast<int>(a.size()) != n) raise(Errc::DomainError, "point arity differs from n");

  NewtonCertificate cert;
  long fv = LONG_MAX;
  for (const auto& f : sys.polys) {
    Int v = f.eval(a);
    if (v != 0) fv = std::min(fv, int_valuation(v, sys.p));
  }
  if (fv == LONG_MAX) {
    cert.outcome = NewtonOutcome::Certified;
    cert.exact_root = true;
    return cert;
  }
  cert.f_val = fv;

  std::vector<std::vector<Int>> jac(k, std::vector<Int>(n));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) jac[i][j] = sys.polys[i].derivative(j).eval(a);

  // Scan all k-subsets of columns, keeping the minor of least valuation.
  std::vector<int> cols(k);
  for (int i = 0; i < k; ++i) cols[i] = i;
  long best = LONG_MAX;
  std::vector<int> best_cols;
  while (true) {
    std::vector<std::vector<Int>> minor(k, std::vector<Int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) minor[i][j] = jac[i][cols[j]];
    Int d = integer_determinant(minor);
    if (d != 0) {
      long vd = int_valuation(d, sys.p);
      if (vd < best) {
        best = vd;
        best_cols = cols;
      }
    }
    int i = k - 1;
    while (i >= 0 && cols[i] == n - k + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  if (best != LONG_MAX && 2 * best < fv) {
    cert.outcome = NewtonOutcome::Certified;
    cert.columns = best_cols;
    cert.det_val = best;
    cert.agreement = fv - best;
  } else if (best != LONG_MAX) {
    cert.det_val = best;
    cert.columns = best_cols;
  }
  return cert;
}

NewtonCertificate newton_certify(const PolySystem& sys, const PadicVec& a) {
  return newton_certify(sys, a.residues());
}

}  // namespace padictree
