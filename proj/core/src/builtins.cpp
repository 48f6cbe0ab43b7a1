#include <regex>

#include "padictree/datum.hpp"
#include "padictree/errors.hpp"

namespace padictree {

namespace {

TreeDatum point_datum() {
  TreeDatum d;
  d.name = "point";
  d.domain = GammaSet::orthant(0);
  d.skeleton.joints = 2;
  d.skeleton.bones = {{0, 1, LinearFn::infinity(0)}};
  return d;
}

// Root, a bone of length `len` to a joint, then two infinite bones.
TreeDatum y_shape(int m, const LinearFn& len, GammaSet domain) {
  TreeDatum d;
  d.m = m;
  d.domain = std::move(domain);
  d.skeleton.joints = 4;
  d.skeleton.bones = {{0, 1, len}, {1, 2, LinearFn::infinity(m)}, {1, 3, LinearFn::infinity(m)}};
  return d;
}

TreeDatum y_fixed(long k) {
  if (k < 0) raise(Errc::DomainError, "Y(k) needs k >= 0");
  if (k == 0) {
    TreeDatum d;
    d.name = "y(0)";
    d.domain = GammaSet::orthant(0);
    d.skeleton.joints = 3;
    d.skeleton.bones = {{0, 1, LinearFn::infinity(0)}, {0, 2, LinearFn::infinity(0)}};
    return d;
  }
  TreeDatum d = y_shape(0, LinearFn::constant(0, k), GammaSet::orthant(0));
  d.name = "y(" + std::to_string(k) + ")";
  return d;
}

TreeDatum y_param() {
  GammaCell c = GammaCell::orthant(1);
  c.coords[0].lo = LinearFn::constant(1, 1);
  TreeDatum d = y_shape(1, LinearFn::coordinate(1, 0), GammaSet::single(c));
  d.name = "y";
  return d;
}

SideBranch star_branch(long leaves, const LeafSide& side) {
  SideBranch br;
  br.fintree = Fintree::star(static_cast<int>(leaves));
  br.leaves.assign(static_cast<std::size_t>(leaves), side);
  return br;
}

SideBranch root_only() {
  SideBranch br;
  br.leaves.push_back(LeafSide::make_terminal());
  return br;
}

TreeDatum zpn(int n, const Int& p) {
  if (n < 0) raise(Errc::DomainError, "zpn needs n >= 0");
  if (n == 0) return point_datum();
  const TreeDatum sub = zpn(n - 1, p);
  const Int width = pow_int(p, n) - 1;
  if (!width.fits_slong_p() || width > 100000) raise(Errc::DomainError, "p^n too large for an explicit fintree");
  TreeDatum d = point_datum();
  d.name = n == 1 ? "zp" : "zpn(" + std::to_string(n) + ")";
  d.level = n;
  d.joint_branches.push_back({0, star_branch(width.get_si(), LeafSide::of(sub))});
  d.bone_branches.push_back(
      {0, BonePiece::residue_cell(0, 0, 1), star_branch(width.get_si(), LeafSide::of(with_inserted_params(sub, 0, 1)))});
  return d;
}

TreeDatum cusp(const Int& p) {
  if (p == 2) raise(Errc::DomainError, "the cusp datum needs p odd");
  const long pm1 = Int(p - 1).get_si();
  TreeDatum d = point_datum();
  d.name = "cusp";
  d.level = 1;
  d.rho = 2;
  d.joint_branches.push_back({0, star_branch(pm1, LeafSide::of(point_datum()))});

  // Side trees on even bone depths lambda: Y(lambda/2 - 1).
  TreeDatum y0 = with_inserted_params(y_fixed(0), 0, 1);
  y0.domain = GammaSet::single(GammaCell::point({2}));
  GammaCell deep = GammaCell::orthant(1);
  deep.coords[0].lo = LinearFn::constant(1, 4);
  deep.coords[0].rho = 2;
  TreeDatum yk = y_shape(1, LinearFn::coordinate(1, 0).scaled(Rat(1, 2)) - LinearFn::constant(1, 1), GammaSet::single(deep));
  d.bone_branches.push_back({0, BonePiece::residue_cell(0, 0, 2), star_branch(pm1 / 2, LeafSide::piecewise({y0, yk}))});
  d.bone_branches.push_back({0, BonePiece::residue_cell(0, 1, 2), root_only()});
  return d;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"point", "zp", "zpn(N)", "cusp", "y", "y(K)"}; }

TreeDatum builtin(const std::string& name, const Int& p) {
  require_prime(p);
  static const std::regex with_arg(R"(^([a-z]+)(?:\((\d+)\)|:(\d+))$)");
  std::smatch mt;
  if (name == "point") return point_datum();
  if (name == "zp") return zpn(1, p);
  if (name == "cusp") return cusp(p);
  if (name == "y") return y_param();
  if (std::regex_match(name, mt, with_arg)) {
    const long arg = std::stol(mt[2].matched ? mt[2].str() : mt[3].str());
    if (mt[1] == "zpn") return zpn(static_cast<int>(arg), p);
    if (mt[1] == "y") return y_fixed(arg);
  }
  raise(Errc::InvalidDatum, "unknown builtin datum '" + name + "'");
}

}  // namespace padictree
