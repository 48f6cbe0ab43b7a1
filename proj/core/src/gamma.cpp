#include "padictree/gamma.hpp"

#include <algorithm>
#include <functional>

#include "padictree/errors.hpp"

namespace padictree {

LinearFn LinearFn::constant(int m, const Rat& b) { return LinearFn{std::vector<Rat>(m, 0), b, false}; }

LinearFn LinearFn::infinity(int m) { return LinearFn{std::vector<Rat>(m, 0), 0, true}; }

LinearFn LinearFn::coordinate(int m, int i) {
  LinearFn l = constant(m, 0);
  l.a[i] = 1;
  return l;
}

bool LinearFn::is_constant() const {
  return !infinite && std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

Rat LinearFn::eval_rational(const GammaPoint& k) const {
  if (infinite) raise(Errc::DomainError, "rational evaluation of an infinite function");
  if (k.size() != a.size()) raise(Errc::DomainError, "parameter arity mismatch");
  Rat v = b;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * k[i];
  return v;
}

std::string LinearFn::to_string() const {
  if (infinite) return "inf";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += a[i] < 0 ? " - " : " + ";
    else if (a[i] < 0) s += "-";
    Rat c = abs(a[i]);
    if (c != 1) s += c.get_str() + "*";
    s += "k" + std::to_string(i + 1);
  }
  if (s.empty()) return b.get_str();
  if (b > 0) s += " + " + b.get_str();
  if (b < 0) s += " - " + Rat(-b).get_str();
  return s;
}

LinearFn LinearFn::operator+(const LinearFn& o) const {
  if (arity() != o.arity()) raise(Errc::DomainError, "linear function arity mismatch");
  if (infinite || o.infinite) return infinity(arity());
  LinearFn r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  r.b += o.b;
  return r;
}

LinearFn LinearFn::operator-(const LinearFn& o) const {
  if (o.infinite) raise(Errc::DomainError, "subtracting an infinite function");
  return *this + o.scaled(-1);
}

LinearFn LinearFn::scaled(const Rat& c) const {
  if (infinite) {
    if (c <= 0) raise(Errc::DomainError, "scaling infinity by a non-positive factor");
    return *this;
  }
  LinearFn r = *this;
  for (auto& x : r.a) x *= c;
  r.b *= c;
  return r;
}

LinearFn LinearFn::compose(const std::vector<LinearFn>& inner, int inner_arity) const {
  if (inner.size() != a.size()) raise(Errc::DomainError, "composition arity mismatch");
  if (infinite) return infinity(inner_arity);
  LinearFn r = constant(inner_arity, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    r = r + inner[i].scaled(a[i]);
  }
  return r;
}

LinearFn LinearFn::with_inserted(int at, int count) const {
  LinearFn r = *this;
  r.a.insert(r.a.begin() + at, count, Rat(0));
  return r;
}

GammaValue eval_linear(const LinearFn& l, const GammaPoint& k) {
  if (l.infinite) return GammaValue::inf();
  Rat v = l.eval_rational(k);
  if (v.get_den() != 1)
    raise(Errc::NonIntegral, l.to_string() + " takes the non-integral value " + v.get_str());
  if (!v.get_num().fits_slong_p()) raise(Errc::DomainError, "value out of range");
  return GammaValue::of(v.get_num().get_si());
}

namespace {
long floor_div_long(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long mod_long(long a, long m) { return a - m * floor_div_long(a, m); }
Int ceil_rat(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}
Int floor_rat(const Rat& x) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}
}  // namespace

bool GammaCell::contains(const GammaPoint& k) const {
  if (static_cast<int>(k.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const auto& cb = coords[i];
    if (k[i] < 0) return false;
    if (!cb.lo_unbounded && (cb.lo.infinite || Rat(k[i]) < cb.lo.eval_rational(k))) return false;
    if (!cb.hi.infinite && Rat(k[i]) > cb.hi.eval_rational(k)) return false;
    if (mod_long(k[i] - cb.r, cb.rho) != 0) return false;
  }
  return true;
}

void GammaCell::validate() const {
  for (int i = 0; i < dim(); ++i) {
    const auto& cb = coords[i];
    if (cb.lo.arity() != dim() || cb.hi.arity() != dim())
      raise(Errc::InvalidDatum, "bound arity differs from the cell dimension");
    if (cb.rho < 1) raise(Errc::InvalidDatum, "congruence modulus must be positive");
    for (int j = i; j < dim(); ++j)
      if (cb.lo.a[j] != 0 || (!cb.hi.infinite && cb.hi.a[j] != 0))
        raise(Errc::InvalidDatum, "bounds of coordinate " + std::to_string(i + 1) +
                                      " may only reference earlier coordinates");
  }
}

std::string GammaCell::to_string() const {
  std::string s = "{";
  for (int i = 0; i < dim(); ++i) {
    const auto& cb = coords[i];
    if (i) s += ", ";
    s += (cb.lo_unbounded ? std::string("-inf") : cb.lo.to_string()) + " <= k" + std::to_string(i + 1) +
         " <= " + cb.hi.to_string();
    if (cb.rho > 1) s += " (= " + std::to_string(cb.r) + " mod " + std::to_string(cb.rho) + ")";
  }
  return s + "}";
}

GammaCell GammaCell::orthant(int m) {
  GammaCell c;
  for (int i = 0; i < m; ++i) c.coords.push_back({LinearFn::constant(m, 0), LinearFn::infinity(m), 0, 1});
  return c;
}

GammaCell GammaCell::point(const GammaPoint& k) {
  const int m = static_cast<int>(k.size());
  GammaCell c;
  for (int i = 0; i < m; ++i) c.coords.push_back({LinearFn::constant(m, k[i]), LinearFn::constant(m, k[i]), 0, 1});
  return c;
}

bool GammaSet::contains(const GammaPoint& k) const {
  return std::any_of(cells.begin(), cells.end(), [&](const GammaCell& c) { return c.contains(k); });
}

void GammaSet::validate() const {
  for (const auto& c : cells) {
    if (c.dim() != m) raise(Errc::InvalidDatum, "cell dimension differs from the set dimension");
    c.validate();
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (m <= 2) {
        ConstraintSet s = ConstraintSet::from_cell(cells[i]);
        s.intersect(ConstraintSet::from_cell(cells[j]));
        if (!constraint_gf(s).is_zero())
          raise(Errc::InvalidDatum, "cells " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      } else {
        for (const auto& k : members(cells[i], std::vector<long>(m, 8)))
          if (cells[j].contains(k))
            raise(Errc::InvalidDatum, "cells " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
}

GammaSet GammaSet::orthant(int m) { return GammaSet{m, {GammaCell::orthant(m)}}; }

GammaSet GammaSet::single(GammaCell c) {
  const int m = c.dim();
  return GammaSet{m, {std::move(c)}};
}

std::vector<GammaPoint> members(const GammaCell& c, const std::vector<long>& box) {
  const int m = c.dim();
  if (static_cast<int>(box.size()) != m) raise(Errc::DomainError, "box arity mismatch");
  std::vector<GammaPoint> out;
  GammaPoint k(m, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      out.push_back(k);
      return;
    }
    const auto& cb = c.coords[i];
    if (cb.lo.infinite && !cb.lo_unbounded) return;
    long lo = 0;
    if (!cb.lo_unbounded) {
      Int l = ceil_rat(cb.lo.eval_rational(k));
      if (l > 0) {
        if (l > box[i]) return;
        lo = l.get_si();
      }
    }
    long hi = box[i];
    if (!cb.hi.infinite) {
      Int h = floor_rat(cb.hi.eval_rational(k));
      if (h < 0) return;
      if (h < hi) hi = h.get_si();
    }
    long first = lo + mod_long(cb.r - lo, cb.rho);
    for (long v = first; v <= hi; v += cb.rho) {
      k[i] = v;
      rec(i + 1);
    }
    k[i] = 0;
  };
  rec(0);
  return out;
}

std::vector<GammaPoint> members(const GammaSet& M, const std::vector<long>& box) {
  std::vector<GammaPoint> out;
  for (const auto& c : M.cells) {
    auto part = members(c, box);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConstraintSet::ConstraintSet(int dim) : dim_(dim), mod_(dim, 1), res_(dim, 0) {}

ConstraintSet ConstraintSet::from_cell(const GammaCell& cell) {
  const int m = cell.dim();
  ConstraintSet s(m);
  for (int i = 0; i < m; ++i) {
    const auto& cb = cell.coords[i];
    if (cb.lo_unbounded) raise(Errc::UnboundedBelow, "coordinate " + std::to_string(i + 1) + " is unbounded below");
    if (cb.lo.infinite) {
      s.empty_ = true;
      return s;
    }
    s.add_at_least_zero(LinearFn::coordinate(m, i) - cb.lo);
    if (!cb.hi.infinite) s.add_at_least_zero(cb.hi - LinearFn::coordinate(m, i));
    s.add_congruence(i, cb.r, cb.rho);
  }
  return s;
}

void ConstraintSet::add_inequality(std::vector<Int> c, Int c0) {
  if (static_cast<int>(c.size()) != dim_) raise(Errc::DomainError, "constraint arity mismatch");
  Int g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) {
    if (c0 < 0) empty_ = true;
    return;
  }
  if (g != 1) {
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_fdiv_q(c0.get_mpz_t(), c0.get_mpz_t(), g.get_mpz_t());
  }
  for (const auto& e : ineqs_)
    if (e.c == c && e.c0 == c0) return;
  ineqs_.push_back({std::move(c), std::move(c0)});
}

void ConstraintSet::add_at_least_zero(const LinearFn& l) {
  if (l.infinite) return;
  if (l.arity() != dim_) raise(Errc::DomainError, "constraint arity mismatch");
  Int d = l.b.get_den();
  for (const auto& x : l.a) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> c;
  for (const auto& x : l.a) c.push_back(Int(x * d));
  add_inequality(std::move(c), Int(l.b * d));
}

void ConstraintSet::add_congruence(int i, const Int& r, const Int& rho) {
  if (rho < 1) raise(Errc::DomainError, "modulus must be positive");
  Int r1 = mod_floor(res_[i], mod_[i]), m1 = mod_[i];
  Int r2 = mod_floor(r, rho), m2 = rho;
  // Solve x = r1 mod m1, x = r2 mod m2.
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  Int diff = r2 - r1;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) {
    empty_ = true;
    return;
  }
  Int l = m1 / g * m2;
  Int x = r1 + m1 * mod_floor(diff / g * s, m2 / g);
  mod_[i] = l;
  res_[i] = mod_floor(x, l);
}

void ConstraintSet::intersect(const ConstraintSet& o) {
  if (o.dim_ != dim_) raise(Errc::DomainError, "constraint set dimension mismatch");
  if (o.empty_) empty_ = true;
  for (const auto& e : o.ineqs_) add_inequality(e.c, e.c0);
  for (int i = 0; i < dim_; ++i) add_congruence(i, o.res_[i], o.mod_[i]);
}

ConstraintSet ConstraintSet::embedded(int new_dim, const std::vector<int>& map) const {
  if (static_cast<int>(map.size()) != dim_) raise(Errc::DomainError, "embedding arity mismatch");
  ConstraintSet s(new_dim);
  s.empty_ = empty_;
  for (const auto& e : ineqs_) {
    std::vector<Int> c(new_dim, 0);
    for (int i = 0; i < dim_; ++i) c[map[i]] += e.c[i];
    s.add_inequality(std::move(c), e.c0);
  }
  for (int i = 0; i < dim_; ++i) s.add_congruence(map[i], res_[i], mod_[i]);
  return s;
}

bool ConstraintSet::contains(const GammaPoint& k) const {
  if (empty_ || static_cast<int>(k.size()) != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (k[i] < 0) return false;
    if (mod_floor(Int(k[i]) - res_[i], mod_[i]) != 0) return false;
  }
  for (const auto& e : ineqs_) {
    Int v = e.c0;
    for (int i = 0; i < dim_; ++i) v += e.c[i] * k[i];
    if (v < 0) return false;
  }
  return true;
}

}  // namespace padictree
