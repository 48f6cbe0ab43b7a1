#include "padictree/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "padictree/errors.hpp"

namespace padictree {

Int pow_int(const Int& base, long k) {
  if (k < 0) raise(Errc::DomainError, "negative exponent in pow_int");
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

long int_valuation(const Int& x, const Int& p) {
  if (x == 0) raise(Errc::DomainError, "valuation of zero");
  if (p == 2) return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  Int t = x;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

bool is_prime(const Int& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0; }

void require_prime(const Int& p) {
  if (!is_prime(p)) raise(Errc::DomainError, "p = " + p.get_str() + " is not prime");
}

Int mod_floor(const Int& x, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Valuation Valuation::finite(long v) {
  Valuation r;
  r.finite_ = true;
  r.v_ = v;
  return r;
}

Valuation Valuation::at_least_prec(long prec) {
  Valuation r;
  r.finite_ = false;
  r.v_ = prec;
  return r;
}

long Valuation::value() const {
  if (!finite_) raise(Errc::DomainError, "valuation is indistinguishable from infinity");
  return v_;
}

std::string Valuation::to_string() const {
  return finite_ ? std::to_string(v_) : ">=" + std::to_string(v_);
}

PadicApprox::PadicApprox(Int p, long prec, const Int& value) : p_(std::move(p)), prec_(prec) {
  if (prec < 0) raise(Errc::DomainError, "negative precision");
  residue_ = mod_floor(value, pow_int(p_, prec_));
}

PadicApprox PadicApprox::from_rational(const Int& p, long prec, const Rat& q) {
  Int m = pow_int(p, prec);
  Int den = q.get_den();
  if (prec > 0 && mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
    raise(Errc::DomainError, "rational " + q.get_str() + " is not p-integral");
  Int inv;
  if (prec > 0 && mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    raise(Errc::DomainError, "denominator not invertible");
  return PadicApprox(p, prec, prec > 0 ? Int(q.get_num() * inv) : Int(0));
}

Valuation PadicApprox::val() const {
  if (residue_ == 0) return Valuation::at_least_prec(prec_);
  return Valuation::finite(int_valuation(residue_, p_));
}

bool PadicApprox::is_unit() const { return prec_ > 0 && !mpz_divisible_p(residue_.get_mpz_t(), p_.get_mpz_t()); }

PadicApprox PadicApprox::with_prec(long prec) const {
  if (prec > prec_) raise(Errc::PrecisionExhausted, "cannot raise precision");
  return PadicApprox(p_, prec, residue_);
}

PadicApprox PadicApprox::unit_part() const {
  Valuation v = val();
  if (!v.is_finite()) raise(Errc::PrecisionExhausted, "unit part of a value indistinguishable from 0");
  Int u = residue_ / pow_int(p_, v.value());
  return PadicApprox(p_, prec_ - v.value(), u);
}

PadicApprox PadicApprox::inverse() const {
  if (!is_unit()) raise(Errc::DomainError, "inverse of a non-unit");
  Int m = modulus();
  Int r;
  mpz_invert(r.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  return PadicApprox(p_, prec_, r);
}

namespace {
void same_p(const PadicApprox& a, const PadicApprox& b) {
  if (a.p() != b.p()) raise(Errc::DomainError, "mixed primes");
}
}  // namespace

PadicApprox PadicApprox::operator-() const { return PadicApprox(p_, prec_, -residue_); }

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  same_p(a, b);
  return PadicApprox(a.p_, std::min(a.prec_, b.prec_), a.residue_ + b.residue_);
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) {
  same_p(a, b);
  return PadicApprox(a.p_, std::min(a.prec_, b.prec_), a.residue_ - b.residue_);
}

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  same_p(a, b);
  return PadicApprox(a.p_, std::min(a.prec_, b.prec_), a.residue_ * b.residue_);
}

bool operator==(const PadicApprox& a, const PadicApprox& b) {
  return a.p_ == b.p_ && a.prec_ == b.prec_ && a.residue_ == b.residue_;
}

std::string PadicApprox::to_string() const {
  return residue_.get_str() + " mod " + p_.get_str() + "^" + std::to_string(prec_);
}

Valuation val(const PadicApprox& x) { return x.val(); }

bool approx_eq(const PadicApprox& x, const PadicApprox& y, long delta) {
  if (delta <= 0) raise(Errc::DomainError, "delta must be positive");
  long prec = std::min(x.prec(), y.prec());
  Valuation vx = x.with_prec(prec).val();
  if (!vx.is_finite() || vx.value() + delta >= prec)
    raise(Errc::PrecisionExhausted, "v(x) + delta exceeds the working precision");
  Valuation vd = (x - y).val();
  return !vd.is_finite() || vd.value() >= vx.value() + delta;
}

PadicApprox eth_root_lift(const PadicApprox& y, long e, long delta) {
  if (e <= 0) raise(Errc::DomainError, "e must be positive");
  const Int& p = y.p();
  const long ve = int_valuation(Int(e), p);
  if (delta < ve + 1) raise(Errc::DomainError, "delta must be at least v(e) + 1");
  const long P = y.prec();
  if (P < delta + ve) raise(Errc::PrecisionExhausted, "input precision below delta + v(e)");
  if (P - ve <= 0) raise(Errc::PrecisionExhausted, "output precision would be non-positive");
  const Int mod_in = pow_int(p, P);
  if (mod_floor(y.residue() - 1, pow_int(p, delta + ve)) != 0)
    raise(Errc::DomainError, "y is not 1 mod p^(delta + v(e))");
  if (e == 1) return y;

  // Newton iteration for z^e - y; v(f(z)) > 2 v(f'(z)) holds from z = 1 on.
  const long out_prec = P - ve;
  const Int mod_out = pow_int(p, out_prec);
  const Int pve = pow_int(p, ve);
  const Int e_unit = Int(e) / pve;
  Int z = 1;
  for (int iter = 0; iter < 4096; ++iter) {
    Int ze;
    mpz_powm_ui(ze.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(e), mod_in.get_mpz_t());
    Int f = mod_floor(ze - y.residue(), mod_in);
    if (f == 0) return PadicApprox(p, out_prec, z);
    Int deriv;  // (e / p^ve) * z^(e-1), a unit
    mpz_powm_ui(deriv.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(e - 1), mod_out.get_mpz_t());
    deriv = mod_floor(deriv * e_unit, mod_out);
    Int inv;
    mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), mod_out.get_mpz_t());
    Int step = f / pve;
    z = mod_floor(z - step * inv, mod_out);
  }
  raise(Errc::PrecisionExhausted, "Newton iteration failed to stabilize");
}

namespace {

// Image of (Z/p^mu)^x under w -> w^e.
const std::vector<Int>& eth_power_subgroup(const Int& p, long mu, long e) {
  static std::mutex mtx;
  static std::map<std::tuple<std::string, long, long>, std::vector<Int>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(p.get_str(), mu, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const Int m = pow_int(p, mu);
  std::vector<Int> h;
  for (const Int& w : unit_representatives(p, mu)) {
    Int r;
    mpz_powm_ui(r.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
    h.push_back(r);
  }
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return cache.emplace(key, std::move(h)).first->second;
}

}  // namespace

std::vector<Int> unit_representatives(const Int& p, long mu) {
  const Int m = pow_int(p, mu);
  std::vector<Int> out;
  for (Int r = 1; r < m; ++r)
    if (!mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) out.push_back(r);
  return out;
}

PowerResidueIndex power_residue_index(const PadicApprox& x, long e) {
  if (e <= 0) raise(Errc::DomainError, "e must be positive");
  Valuation v = x.val();
  if (!v.is_finite()) raise(Errc::PrecisionExhausted, "x is indistinguishable from 0");
  const long ve = int_valuation(Int(e), x.p());
  const long mu = 2 * ve + 1;
  if (x.prec() <= v.value() + mu) raise(Errc::PrecisionExhausted, "precision too small for the residue index");
  const Int m = pow_int(x.p(), mu);
  const Int u = mod_floor(x.unit_part().residue(), m);
  PowerResidueIndex idx;
  idx.val_mod_e = v.value() % e;
  bool first = true;
  for (const Int& h : eth_power_subgroup(x.p(), mu, e)) {
    Int c = mod_floor(u * h, m);
    if (first || c < idx.unit_rep) idx.unit_rep = c;
    first = false;
  }
  return idx;
}

PadicVec::PadicVec(std::vector<PadicApprox> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) raise(Errc::DomainError, "PadicVec must be non-empty");
  for (const auto& c : coords_)
    if (c.p() != coords_.front().p() || c.prec() != coords_.front().prec())
      raise(Errc::DomainError, "PadicVec coordinates must share p and precision");
}

PadicVec PadicVec::from_integers(const Int& p, long prec, const std::vector<Int>& xs) {
  std::vector<PadicApprox> c;
  c.reserve(xs.size());
  for (const Int& x : xs) c.emplace_back(p, prec, x);
  return PadicVec(std::move(c));
}

std::vector<Int> PadicVec::residues() const {
  std::vector<Int> r;
  r.reserve(coords_.size());
  for (const auto& c : coords_) r.push_back(c.residue());
  return r;
}

Valuation PadicVec::val() const {
  Valuation best = Valuation::at_least_prec(prec());
  for (const auto& c : coords_) {
    Valuation v = c.val();
    if (v.is_finite() && (!best.is_finite() || v.value() < best.value())) best = v;
  }
  return best;
}

namespace {
void same_shape(const PadicVec& a, const PadicVec& b) {
  if (a.size() != b.size()) raise(Errc::DomainError, "PadicVec size mismatch");
}
}  // namespace

PadicVec operator+(const PadicVec& a, const PadicVec& b) {
  same_shape(a, b);
  std::vector<PadicApprox> c;
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(a[i] + b[i]);
  return PadicVec(std::move(c));
}

PadicVec operator-(const PadicVec& a, const PadicVec& b) {
  same_shape(a, b);
  std::vector<PadicApprox> c;
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(a[i] - b[i]);
  return PadicVec(std::move(c));
}

}  // namespace padictree
