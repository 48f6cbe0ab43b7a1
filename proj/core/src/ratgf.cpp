#include "padictree/ratgf.hpp"

#include <algorithm>
#include <numeric>

#include "padictree/errors.hpp"

namespace padictree {

MPoly MPoly::constant(int nvars, const Rat& c) { return monomial(nvars, c, Exps(nvars, 0)); }

MPoly MPoly::monomial(int nvars, const Rat& c, Exps e) {
  MPoly p(nvars);
  p.add_term(e, c);
  return p;
}

bool MPoly::has_negative_exponents() const {
  for (const auto& [e, c] : terms_)
    for (int x : e)
      if (x < 0) return true;
  return false;
}

Rat MPoly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Exps& e, const Rat& c) {
  if (static_cast<int>(e.size()) != nvars_) raise(Errc::DomainError, "exponent arity mismatch");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(nvars_);
  Exps e(nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = a[i] + b[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::scaled(const Rat& c) const {
  MPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

MPoly MPoly::shifted(const Exps& by) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exps f = e;
    for (int i = 0; i < nvars_; ++i) f[i] += by[i];
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

namespace {
Rat rat_pow(const Rat& c, long k) {
  Rat r = 1;
  Rat b = k >= 0 ? c : Rat(1) / c;
  for (long i = 0; i < std::labs(k); ++i) r *= b;
  return r;
}
}  // namespace

MPoly MPoly::substitute(int var, const Rat& c, const Exps& mono) const {
  MPoly r(nvars_);
  for (const auto& [e, x] : terms_) {
    const int k = e[var];
    Exps f = e;
    f[var] = 0;
    for (int i = 0; i < nvars_; ++i) f[i] += k * mono[i];
    r.add_term(f, x * rat_pow(c, k));
  }
  return r;
}

std::optional<MPoly> MPoly::divide_by_factor(const Rat& c, const Exps& mono) const {
  if (c == 0) return *this;
  for (int x : mono)
    if (x < 0) return std::nullopt;
  if (std::all_of(mono.begin(), mono.end(), [](int x) { return x == 0; })) {
    if (c == 1) return std::nullopt;
    return scaled(Rat(1) / (1 - c));
  }
  // Shift to non-negative exponents, then divide under the order (e . mono, lex).
  Exps shift(nvars_, 0);
  for (const auto& [e, x] : terms_)
    for (int i = 0; i < nvars_; ++i) shift[i] = std::max(shift[i], -e[i]);
  auto weight = [&](const Exps& e) {
    long w = 0;
    for (int i = 0; i < nvars_; ++i) w += static_cast<long>(e[i]) * mono[i];
    return w;
  };
  std::map<std::pair<long, Exps>, Rat> work;
  for (const auto& [e, x] : terms_) {
    Exps f = e;
    for (int i = 0; i < nvars_; ++i) f[i] += shift[i];
    work.emplace(std::make_pair(weight(f), f), x);
  }
  auto add = [&](const Exps& e, const Rat& x) {
    auto key = std::make_pair(weight(e), e);
    auto [it, fresh] = work.try_emplace(key, x);
    if (!fresh) {
      it->second += x;
      if (it->second == 0) work.erase(it);
    }
  };
  MPoly q(nvars_);
  while (!work.empty()) {
    auto it = std::prev(work.end());
    const Exps t = it->first.second;
    const Rat coef = it->second;
    bool divisible = true;
    for (int i = 0; i < nvars_; ++i) divisible = divisible && t[i] >= mono[i];
    if (!divisible) return std::nullopt;
    Exps qe = t;
    for (int i = 0; i < nvars_; ++i) qe[i] -= mono[i];
    const Rat qc = -coef / c;
    q.add_term(qe, qc);
    add(qe, -qc);          // subtract qc * x^qe
    add(t, qc * c);        // add c * mono * qc * x^qe, cancelling the leading term
  }
  for (auto& s : shift) s = -s;
  return q.shifted(shift);
}

RationalGF::RationalGF(int nvars) : num_(nvars) {}

RationalGF::RationalGF(MPoly num, std::vector<DenFactor> den) : num_(std::move(num)) {
  for (auto& f : den) {
    if (static_cast<int>(f.mono.size()) != num_.nvars()) raise(Errc::DomainError, "factor arity mismatch");
    if (f.c == 0) continue;
    if (std::all_of(f.mono.begin(), f.mono.end(), [](int x) { return x == 0; })) {
      if (f.c == 1) raise(Errc::DomainError, "zero denominator factor");
      num_ = num_.scaled(Rat(1) / (1 - f.c));
      continue;
    }
    den_.push_back(std::move(f));
  }
  std::sort(den_.begin(), den_.end());
  normalize();
}

RationalGF RationalGF::constant(int nvars, const Rat& c) { return RationalGF(MPoly::constant(nvars, c), {}); }

RationalGF RationalGF::monomial(int nvars, const Rat& c, Exps e) {
  return RationalGF(MPoly::monomial(nvars, c, std::move(e)), {});
}

RationalGF RationalGF::geometric(int nvars, const Rat& c, Exps mono) {
  return RationalGF(MPoly::constant(nvars, 1), {DenFactor{c, std::move(mono)}});
}

MPoly RationalGF::expanded_denominator() const {
  MPoly d = MPoly::constant(nvars(), 1);
  for (const auto& f : den_) {
    MPoly g = MPoly::constant(nvars(), 1);
    g.add_term(f.mono, -f.c);
    d = d * g;
  }
  return d;
}

void RationalGF::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::vector<DenFactor> kept;
  for (const auto& f : den_) {
    auto q = num_.divide_by_factor(f.c, f.mono);
    if (q) num_ = std::move(*q);
    else kept.push_back(f);
  }
  den_ = std::move(kept);
}

std::string monomial_string(const Exps& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "·";
    s += i == 0 ? "Z" : "Y" + std::to_string(i);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

namespace {
const char* kMinus = "−";

std::string term_string(const Rat& c, const Exps& e, bool leading) {
  std::string mono = monomial_string(e);
  Rat a = abs(c);
  std::string coeff = (a == 1 && !mono.empty()) ? "" : a.get_str();
  std::string sign;
  if (leading) sign = c < 0 ? kMinus : "";
  else sign = c < 0 ? std::string(" ") + kMinus + " " : " + ";
  return sign + coeff + mono;
}
}  // namespace

std::string RationalGF::to_string() const {
  if (num_.is_zero()) return "0";
  std::vector<std::pair<Exps, Rat>> terms(num_.terms().begin(), num_.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    long da = std::accumulate(a.first.begin(), a.first.end(), 0L);
    long db = std::accumulate(b.first.begin(), b.first.end(), 0L);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string num;
  for (std::size_t i = 0; i < terms.size(); ++i) num += term_string(terms[i].second, terms[i].first, i == 0);
  if (den_.empty()) return num;
  if (terms.size() > 1) num = "(" + num + ")";
  std::string den;
  for (const auto& f : den_) den += "(1" + term_string(-f.c, f.mono, false) + ")";
  return num + " / " + den;
}

RationalGF gf_mul(const RationalGF& f, const RationalGF& g) {
  if (f.nvars() != g.nvars()) raise(Errc::DomainError, "variable count mismatch");
  std::vector<DenFactor> den = f.denominator();
  den.insert(den.end(), g.denominator().begin(), g.denominator().end());
  return RationalGF(f.numerator() * g.numerator(), std::move(den));
}

namespace {
// Multiset difference a \ b for sorted vectors.
std::vector<DenFactor> multiset_minus(const std::vector<DenFactor>& a, const std::vector<DenFactor>& b) {
  std::vector<DenFactor> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

MPoly product_of(const std::vector<DenFactor>& fs, int nvars) {
  MPoly d = MPoly::constant(nvars, 1);
  for (const auto& f : fs) {
    MPoly g = MPoly::constant(nvars, 1);
    g.add_term(f.mono, -f.c);
    d = d * g;
  }
  return d;
}
}  // namespace

RationalGF gf_add(const RationalGF& f, const RationalGF& g) {
  if (f.nvars() != g.nvars()) raise(Errc::DomainError, "variable count mismatch");
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  std::vector<DenFactor> lcm;
  std::set_union(f.denominator().begin(), f.denominator().end(), g.denominator().begin(),
                 g.denominator().end(), std::back_inserter(lcm));
  const int n = f.nvars();
  MPoly num = f.numerator() * product_of(multiset_minus(lcm, f.denominator()), n) +
              g.numerator() * product_of(multiset_minus(lcm, g.denominator()), n);
  return RationalGF(std::move(num), std::move(lcm));
}

RationalGF gf_sub(const RationalGF& f, const RationalGF& g) {
  RationalGF neg(g.numerator().scaled(-1), g.denominator());
  return gf_add(f, neg);
}

bool gf_equal(const RationalGF& f, const RationalGF& g) {
  if (f.nvars() != g.nvars()) return false;
  return f.numerator() * g.expanded_denominator() == g.numerator() * f.expanded_denominator();
}

RationalGF substitute(const RationalGF& f, int var, const Rat& c, const Exps& mono) {
  if (var < 0 || var >= f.nvars()) raise(Errc::DomainError, "substitution variable out of range");
  if (static_cast<int>(mono.size()) != f.nvars()) raise(Errc::DomainError, "replacement arity mismatch");
  std::vector<DenFactor> den;
  for (const auto& d : f.denominator()) {
    const int k = d.mono[var];
    Exps m = d.mono;
    m[var] = 0;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += k * mono[i];
    Rat cc = d.c;
    for (int i = 0; i < k; ++i) cc *= c;
    if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; }))
      raise(Errc::DomainError, "substitution makes a denominator factor constant");
    den.push_back({cc, m});
  }
  return RationalGF(f.numerator().substitute(var, c, mono), std::move(den));
}

RationalGF resize_vars(const RationalGF& f, int nvars) {
  auto fix = [&](const Exps& e) {
    Exps r(nvars, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (static_cast<int>(i) < nvars) r[i] = e[i];
      else if (e[i] != 0) raise(Errc::DomainError, "dropping a variable that occurs");
    }
    return r;
  };
  MPoly num(nvars);
  for (const auto& [e, c] : f.numerator().terms()) num.add_term(fix(e), c);
  std::vector<DenFactor> den;
  for (const auto& d : f.denominator()) den.push_back({d.c, fix(d.mono)});
  return RationalGF(std::move(num), std::move(den));
}

RationalGF permute_vars(const RationalGF& f, const std::vector<int>& perm, int nvars) {
  auto fix = [&](const Exps& e) {
    Exps r(nvars, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (perm[i] < 0 || perm[i] >= nvars) raise(Errc::DomainError, "permutation drops an occurring variable");
      r[perm[i]] += e[i];
    }
    return r;
  };
  MPoly num(nvars);
  for (const auto& [e, c] : f.numerator().terms()) num.add_term(fix(e), c);
  std::vector<DenFactor> den;
  for (const auto& d : f.denominator()) den.push_back({d.c, fix(d.mono)});
  return RationalGF(std::move(num), std::move(den));
}

std::map<Exps, Rat> series_box(const RationalGF& f, const std::vector<int>& caps) {
  const int n = f.nvars();
  if (static_cast<int>(caps.size()) != n) raise(Errc::DomainError, "box arity mismatch");
  for (const auto& d : f.denominator())
    for (int x : d.mono)
      if (x < 0) raise(Errc::DomainError, "series expansion needs non-negative denominator monomials");
  Exps shift(n, 0);
  for (const auto& [e, c] : f.numerator().terms())
    for (int i = 0; i < n; ++i) shift[i] = std::max(shift[i], -e[i]);
  std::vector<int> big(n);
  std::vector<std::size_t> stride(n);
  std::size_t total = 1;
  for (int i = n - 1; i >= 0; --i) {
    big[i] = caps[i] + shift[i];
    stride[i] = total;
    total *= static_cast<std::size_t>(big[i] + 1);
  }
  auto decode = [&](std::size_t idx) {
    Exps e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = static_cast<int>(idx / stride[i]);
      idx %= stride[i];
    }
    return e;
  };
  // Series of 1 / denominator on the enlarged box.
  std::vector<Rat> inv(total, 0);
  inv[0] = 1;
  for (const auto& d : f.denominator()) {
    long off = 0;
    for (int i = 0; i < n; ++i) off += static_cast<long>(d.mono[i]) * static_cast<long>(stride[i]);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Exps e = decode(idx);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = e[i] >= d.mono[i];
      if (ok) inv[idx] += d.c * inv[idx - off];
    }
  }
  std::vector<Rat> out(total, 0);
  for (const auto& [e, c] : f.numerator().terms()) {
    Exps s(n);
    long off = 0;
    for (int i = 0; i < n; ++i) {
      s[i] = e[i] + shift[i];
      off += static_cast<long>(s[i]) * static_cast<long>(stride[i]);
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (inv[idx] == 0) continue;
      Exps g = decode(idx);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = g[i] + s[i] <= big[i];
      if (ok) out[idx + off] += c * inv[idx];
    }
  }
  std::map<Exps, Rat> res;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Exps e = decode(idx);
    bool in = true;
    for (int i = 0; i < n && in; ++i) in = e[i] >= shift[i];
    if (!in) {
      if (out[idx] != 0) raise(Errc::DomainError, "generating function is not a power series");
      continue;
    }
    for (int i = 0; i < n; ++i) e[i] -= shift[i];
    res.emplace(std::move(e), out[idx]);
  }
  return res;
}

std::vector<Rat> expand_series(const RationalGF& f, int k) {
  std::vector<int> caps(f.nvars(), 0);
  caps[0] = k;
  for (const auto& [e, c] : f.numerator().terms())
    for (int i = 1; i < f.nvars(); ++i)
      if (e[i] != 0) raise(Errc::DomainError, "expand_series needs a univariate function of Z");
  for (const auto& d : f.denominator())
    for (int i = 1; i < f.nvars(); ++i)
      if (d.mono[i] != 0) raise(Errc::DomainError, "expand_series needs a univariate function of Z");
  auto box = series_box(f, caps);
  std::vector<Rat> out(k + 1);
  for (const auto& [e, c] : box) out[e[0]] = c;
  return out;
}

}  // namespace padictree
