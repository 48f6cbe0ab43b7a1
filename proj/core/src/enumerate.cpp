#include "padictree/enumerate.hpp"

#include <algorithm>

#include "padictree/errors.hpp"
#include "padictree/newton.hpp"

namespace padictree {

std::string lift_kind_name(LiftKind k) {
  switch (k) {
    case LiftKind::Yes: return "yes";
    case LiftKind::No: return "no";
    case LiftKind::Unknown: return "unknown";
  }
  return "?";
}

bool LiftResult::has_unknown() const { return count(LiftKind::Unknown) > 0; }

std::size_t LiftResult::count(LiftKind k) const {
  return static_cast<std::size_t>(
      std::count_if(statuses.begin(), statuses.end(), [k](const NodeStatus& s) { return s.status.kind == k; }));
}

namespace {

class Search {
 public:
  Search(const PolySystem& sys, const EnumOptions& opts) : sys_(sys), budget_(opts.node_budget) {
    sys.validate();
    for (int j = 0; j < sys.n; ++j) digits_total_ = j == 0 ? sys.p : digits_total_ * sys.p;
  }

  void charge(std::size_t k) {
    used_ += k;
    if (used_ > budget_)
      raise(Errc::NodeBudgetExceeded, "search exceeded the node budget of " + std::to_string(budget_));
  }

  bool vanishes_mod(const std::vector<Int>& a, const Int& m) const {
    for (const auto& f : sys_.polys)
      if (!mpz_divisible_p(f.eval(a).get_mpz_t(), m.get_mpz_t())) return false;
    return true;
  }

  // Digit extensions a + p^r d with f = 0 mod p^(r+1).
  std::vector<std::vector<Int>> extensions(const std::vector<Int>& a, long r, bool prune) {
    const Int pr = pow_int(sys_.p, r);
    const Int next = pr * sys_.p;
    std::vector<std::vector<Int>> out;
    std::vector<long> d(sys_.n, 0);
    const long p = sys_.p.get_si();
    charge(digits_total_.get_ui());
    while (true) {
      std::vector<Int> b = a;
      for (int j = 0; j < sys_.n; ++j) b[j] += pr * d[j];
      if (vanishes_mod(b, next) && !(prune && ball_dominated(sys_, b, r + 1))) out.push_back(std::move(b));
      int j = sys_.n - 1;
      while (j >= 0 && ++d[j] == p) d[j--] = 0;
      if (j < 0) break;
    }
    return out;
  }

  const PolySystem& sys() const { return sys_; }

 private:
  const PolySystem& sys_;
  std::size_t budget_;
  std::size_t used_ = 0;
  Int digits_total_ = 1;
};

std::vector<Int> reduce(const std::vector<Int>& a, const Int& m) {
  std::vector<Int> r;
  for (const auto& x : a) r.push_back(mod_floor(x, m));
  return r;
}

struct Layered {
  std::vector<std::vector<std::vector<Int>>> res;     // per depth, residues
  std::vector<std::vector<std::int32_t>> parent;      // per depth
};

LiftStatus resolve(Search& s, const std::vector<Int>& a, long class_radius, long limit,
                   const std::vector<std::vector<Int>>& witness_res) {
  const PolySystem& sys = s.sys();
  const Int cm = pow_int(sys.p, class_radius);
  for (std::size_t i = 0; i < witness_res.size(); ++i)
    if (reduce(witness_res[i], cm) == a) return {LiftKind::Yes, "witness:" + std::to_string(i), class_radius};
  long deepest = class_radius;
  bool unknown = false;
  std::string cert;
  auto dfs = [&](auto&& self, const std::vector<Int>& b, long D) -> bool {
    deepest = std::max(deepest, D);
    NewtonCertificate nc = newton_certify(sys, b);
    if (nc.exact_root || (nc.certified() && nc.agreement >= class_radius)) {
      cert = nc.describe() + "@" + std::to_string(D);
      return true;
    }
    if (D > class_radius && ball_dominated(sys, b, D)) return false;
    if (D >= limit) {
      unknown = true;
      return false;
    }
    for (const auto& kid : s.extensions(b, D, true))
      if (self(self, kid, D + 1)) return true;
    return false;
  };
  if (dfs(dfs, a, class_radius)) return {LiftKind::Yes, cert, class_radius};
  if (unknown) return {LiftKind::Unknown, "", limit};
  return {LiftKind::No, "", deepest + 1};
}

LiftResult lift_core(const PolySystem& sys, const std::vector<Int>& center, long radius, int depth, int cert_budget,
                     const EnumOptions& opts) {
  if (depth < 0 || cert_budget < 0) raise(Errc::DomainError, "depth and certification budget must be non-negative");
  Search s(sys, opts);
  const Int& p = sys.p;
  const long wprec = radius + depth + 1;
  std::vector<std::vector<Int>> witness_res;
  for (const auto& w : sys.witnesses) {
    std::vector<Int> r;
    for (const auto& c : w) r.push_back(PadicApprox::from_rational(p, wprec, c).residue());
    witness_res.push_back(std::move(r));
  }

  Layered L;
  L.res.resize(depth + 1);
  L.parent.resize(depth + 1);
  const std::vector<Int> root = reduce(center, pow_int(p, radius));
  std::vector<LiftStatus> root_fail;
  bool root_ok = s.vanishes_mod(root, pow_int(p, radius));
  if (root_ok && !sys.empty_system && ball_dominated(sys, root, radius)) root_ok = false;
  L.res[0].push_back(root);
  L.parent[0].push_back(-1);
  for (int d = 0; root_ok && d < depth; ++d)
    for (std::size_t i = 0; i < L.res[d].size(); ++i)
      for (auto& kid : s.extensions(L.res[d][i], radius + d, !sys.empty_system)) {
        L.res[d + 1].push_back(std::move(kid));
        L.parent[d + 1].push_back(static_cast<std::int32_t>(i));
      }

  std::vector<std::vector<LiftStatus>> st(depth + 1);
  for (int d = 0; d <= depth; ++d) st[d].resize(L.res[d].size());
  if (!root_ok) {
    st[0][0] = {LiftKind::No, "", radius};
  } else {
    for (std::size_t i = 0; i < L.res[depth].size(); ++i) {
      if (sys.empty_system) st[depth][i] = {LiftKind::Yes, "empty-system", radius + depth};
      else st[depth][i] = resolve(s, L.res[depth][i], radius + depth, radius + depth + cert_budget, witness_res);
    }
    for (int d = depth - 1; d >= 0; --d) {
      std::vector<int> yes(L.res[d].size(), 0), unk(L.res[d].size(), 0), kids(L.res[d].size(), 0);
      std::vector<std::string> cert(L.res[d].size());
      for (std::size_t j = 0; j < L.res[d + 1].size(); ++j) {
        const auto q = L.parent[d + 1][j];
        ++kids[q];
        if (st[d + 1][j].kind == LiftKind::Yes) {
          if (!yes[q]) cert[q] = "child";
          yes[q] = 1;
        }
        if (st[d + 1][j].kind == LiftKind::Unknown) unk[q] = 1;
      }
      for (std::size_t i = 0; i < L.res[d].size(); ++i) {
        if (yes[i]) st[d][i] = {LiftKind::Yes, cert[i], radius + d};
        else if (unk[i]) st[d][i] = {LiftKind::Unknown, "", radius + depth + cert_budget};
        else st[d][i] = {LiftKind::No, "", radius + d + 1};
      }
    }
  }

  LiftResult out;
  TreeBuilder b(depth, true);
  std::vector<std::int32_t> prev_map;
  for (int d = 0; d <= depth; ++d) {
    std::vector<std::int32_t> map(L.res[d].size(), -1);
    for (std::size_t i = 0; i < L.res[d].size(); ++i) {
      out.statuses.push_back({d, L.res[d][i], st[d][i]});
      if (st[d][i].kind != LiftKind::Yes) continue;
      const std::string lab = ball_label(L.res[d][i], radius + d);
      if (d == 0) map[i] = b.add_root(lab).index;
      else map[i] = b.add_child(NodeRef{d - 1, prev_map[L.parent[d][i]]}, lab)->index;
    }
    prev_map = std::move(map);
  }
  out.tree = std::move(b).build();
  return out;
}

}  // namespace

TruncTree naive_tree(const PolySystem& sys, int depth, EnumOptions opts) {
  if (depth < 0) raise(Errc::DomainError, "depth must be non-negative");
  Search s(sys, opts);
  TreeBuilder b(depth, true);
  std::vector<std::vector<Int>> layer{std::vector<Int>(sys.n, 0)};
  b.add_root(ball_label(layer[0], 0));
  for (int d = 0; d < depth; ++d) {
    std::vector<std::vector<Int>> next;
    for (std::size_t i = 0; i < layer.size(); ++i)
      for (auto& kid : s.extensions(layer[i], d, false)) {
        b.add_child(NodeRef{d, static_cast<std::int32_t>(i)}, ball_label(kid, d + 1));
        next.push_back(std::move(kid));
      }
    layer = std::move(next);
  }
  return std::move(b).build();
}

LiftResult lifted_tree(const PolySystem& sys, int depth, int cert_budget, EnumOptions opts) {
  return lift_core(sys, std::vector<Int>(sys.n, 0), 0, depth, cert_budget, opts);
}

LiftResult tree_on_ball(const PolySystem& sys, const Ball& ball, int depth_rel, int cert_budget, EnumOptions opts) {
  if (static_cast<int>(ball.center.size()) != sys.n || ball.center.p() != sys.p)
    raise(Errc::DomainError, "ball does not live in the system's ambient space");
  return lift_core(sys, ball.center.residues(), ball.radius, depth_rel, cert_budget, opts);
}

LiftResult tree_on_cheese(const PolySystem& sys, const Cheese& cheese, int depth_rel, int cert_budget,
                          EnumOptions opts) {
  cheese.validate();
  LiftResult r = tree_on_ball(sys, cheese.outer, depth_rel, cert_budget, opts);
  r.tree = cheese_restrict(r.tree, cheese);
  return r;
}

void Garland::validate() const {
  if (mu <= 0 || rho <= 0) raise(Errc::DomainError, "garland needs mu > 0 and rho > 0");
  if (x0.size() != xg.size() || x0.p() != xg.p()) raise(Errc::DomainError, "garland vectors differ in shape");
  if (!xg.val().is_finite() || xg.val().value() != 0) raise(Errc::DomainError, "garland direction must have v = 0");
}

bool Garland::has_component(long k) const {
  return k >= lambda && ((k - xi) % rho + rho) % rho == 0;
}

Ball Garland::component(long k) const {
  if (!has_component(k)) raise(Errc::DomainError, "kappa " + std::to_string(k) + " is not a garland index");
  const Int& p = x0.p();
  const long prec = k + mu;
  std::vector<Int> c;
  const Int pk = pow_int(p, k);
  for (std::size_t i = 0; i < x0.size(); ++i) c.push_back(x0[i].residue() + pk * xg[i].residue());
  return Ball{PadicVec::from_integers(p, prec, c), prec};
}

std::vector<std::pair<long, LiftResult>> garland_trees(const PolySystem& sys, const Garland& g,
                                                       const std::vector<long>& kappas, int depth_rel,
                                                       int cert_budget, EnumOptions opts) {
  g.validate();
  std::vector<std::pair<long, LiftResult>> out;
  for (long k : kappas) out.emplace_back(k, tree_on_ball(sys, g.component(k), depth_rel, cert_budget, opts));
  return out;
}

}  // namespace padictree
