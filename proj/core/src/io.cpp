#include "padictree/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "padictree/errors.hpp"

namespace padictree {

using nlohmann::json;

namespace {

constexpr int kFormat = 1;

[[noreturn]] void bad(const std::string& msg) { raise(Errc::ParseError, msg); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

void check_format(const json& j) {
  if (j.contains("format") && j.at("format") != kFormat) bad("unsupported format version");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json rat_json(const Rat& q) {
  if (q.get_den() == 1) return int_json(q.get_num());
  return q.get_str();
}

Int int_of(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  bad("expected an integer, got " + j.dump());
}

Rat rat_of(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      Rat q(j.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::exception&) {
    }
  }
  bad("expected a rational, got " + j.dump());
}

// Linear functions: {"a": [..], "b": ..}, "inf" or a bare constant.
json linear_json(const LinearFn& l) {
  if (l.infinite) return "inf";
  json a = json::array();
  for (const auto& c : l.a) a.push_back(rat_json(c));
  return json{{"a", a}, {"b", rat_json(l.b)}};
}

LinearFn linear_of(const json& j, int m) {
  if (j.is_string() && j.get<std::string>() == "inf") return LinearFn::infinity(m);
  if (j.is_number_integer() || j.is_string()) return LinearFn::constant(m, rat_of(j));
  LinearFn l = LinearFn::constant(m, 0);
  if (j.contains("a")) {
    const auto& a = j.at("a");
    if (!a.is_array() || static_cast<int>(a.size()) != m) bad("linear function needs " + std::to_string(m) + " coefficients");
    for (int i = 0; i < m; ++i) l.a[i] = rat_of(a[i]);
  }
  if (j.contains("b")) l.b = rat_of(j.at("b"));
  return l;
}

json cell_j(const GammaCell& c) {
  json bounds = json::array(), cong = json::array();
  for (const auto& cb : c.coords) {
    bounds.push_back({{"lo", cb.lo_unbounded ? json("-inf") : linear_json(cb.lo)}, {"hi", linear_json(cb.hi)}});
    cong.push_back({{"r", cb.r}, {"rho", cb.rho}});
  }
  return json{{"bounds", bounds}, {"cong", cong}};
}

GammaCell cell_of(const json& j, int dim) {
  GammaCell c = GammaCell::orthant(dim);
  if (j.contains("bounds")) {
    const auto& b = j.at("bounds");
    if (!b.is_array() || static_cast<int>(b.size()) != dim) bad("cell needs " + std::to_string(dim) + " bounds");
    for (int i = 0; i < dim; ++i) {
      if (b[i].contains("lo")) {
        const auto& lo = b[i].at("lo");
        if (lo.is_string() && lo.get<std::string>() == "-inf") c.coords[i].lo_unbounded = true;
        else c.coords[i].lo = linear_of(lo, dim);
      }
      if (b[i].contains("hi")) c.coords[i].hi = linear_of(b[i].at("hi"), dim);
    }
  }
  if (j.contains("cong")) {
    const auto& g = j.at("cong");
    if (!g.is_array() || static_cast<int>(g.size()) != dim) bad("cell needs " + std::to_string(dim) + " congruences");
    for (int i = 0; i < dim; ++i) {
      c.coords[i].rho = get<long>(g[i], "rho");
      c.coords[i].r = get<long>(g[i], "r");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    bad(std::string("invalid cell: ") + e.what());
  }
  return c;
}

json set_j(const GammaSet& s) {
  json cells = json::array();
  for (const auto& c : s.cells) cells.push_back(cell_j(c));
  return json{{"m", s.m}, {"cells", cells}};
}

GammaSet set_of(const json& j, int m) {
  GammaSet s{m, {}};
  if (j.contains("m") && get<int>(j, "m") != m) bad("domain dimension differs from the datum");
  for (const auto& c : field(j, "cells")) s.cells.push_back(cell_of(c, m));
  return s;
}

json datum_j(const TreeDatum& d);
TreeDatum datum_of(const json& j);

json branch_j(const SideBranch& br) {
  json leaves = json::array();
  for (const auto& side : br.leaves) {
    if (side.terminal) {
      leaves.push_back({{"side", "terminal"}});
    } else if (side.pieces.size() == 1) {
      leaves.push_back({{"side", datum_j(side.pieces[0])}});
    } else {
      json ps = json::array();
      for (const auto& t : side.pieces) ps.push_back(datum_j(t));
      leaves.push_back({{"side", ps}});
    }
  }
  return json{{"fintree", br.fintree.parent}, {"leaves", leaves}};
}

SideBranch branch_of(const json& j) {
  SideBranch br;
  br.fintree.parent = get<std::vector<int>>(j, "fintree");
  for (const auto& l : field(j, "leaves")) {
    const auto& s = field(l, "side");
    if (s.is_string() && s.get<std::string>() == "terminal") {
      br.leaves.push_back(LeafSide::make_terminal());
    } else if (s.is_array()) {
      std::vector<TreeDatum> ps;
      for (const auto& t : s) ps.push_back(datum_of(t));
      br.leaves.push_back(LeafSide::piecewise(std::move(ps)));
    } else {
      br.leaves.push_back(LeafSide::of(datum_of(s)));
    }
  }
  return br;
}

json datum_j(const TreeDatum& d) {
  json bones = json::array();
  for (const auto& b : d.skeleton.bones) bones.push_back({{"from", b.from}, {"to", b.to}, {"len", linear_json(b.len)}});
  json jbs = json::array();
  for (const auto& jb : d.joint_branches) {
    json x = branch_j(jb.branch);
    x["joint"] = jb.joint;
    jbs.push_back(x);
  }
  json bbs = json::array();
  for (const auto& bp : d.bone_branches) {
    json x = branch_j(bp.branch);
    x["bone"] = bp.bone;
    x["piece"] = cell_j(bp.piece);
    bbs.push_back(x);
  }
  json out{{"format", kFormat},
           {"level", d.level},
           {"m", d.m},
           {"domain", set_j(d.domain)},
           {"rho", d.rho},
           {"skeleton", {{"joints", d.skeleton.joints}, {"bones", bones}}},
           {"joint_branches", jbs},
           {"bone_branches", bbs}};
  if (!d.name.empty()) out["name"] = d.name;
  return out;
}

TreeDatum datum_of(const json& j) {
  check_format(j);
  TreeDatum d;
  d.level = get<int>(j, "level");
  d.m = j.contains("m") ? get<int>(j, "m") : 0;
  if (d.m < 0 || d.m > 3) bad("m must lie in 0..3");
  d.domain = j.contains("domain") ? set_of(j.at("domain"), d.m) : GammaSet::orthant(d.m);
  d.rho = j.contains("rho") ? get<long>(j, "rho") : 1;
  if (j.contains("name")) d.name = get<std::string>(j, "name");
  const auto& sk = field(j, "skeleton");
  d.skeleton.joints = get<int>(sk, "joints");
  if (sk.contains("bones"))
    for (const auto& b : sk.at("bones"))
      d.skeleton.bones.push_back({get<int>(b, "from"), get<int>(b, "to"), linear_of(field(b, "len"), d.m)});
  if (j.contains("joint_branches"))
    for (const auto& x : j.at("joint_branches")) d.joint_branches.push_back({get<int>(x, "joint"), branch_of(x)});
  if (j.contains("bone_branches"))
    for (const auto& x : j.at("bone_branches")) {
      BonePiece bp;
      bp.bone = get<int>(x, "bone");
      const auto& piece = field(x, "piece");
      if (piece.contains("residue")) bp.piece = BonePiece::residue_cell(d.m, get<long>(piece, "residue"), d.rho);
      else bp.piece = cell_of(piece, d.m + 1);
      bp.branch = branch_of(x);
      d.bone_branches.push_back(std::move(bp));
    }
  return d;
}

json poly_terms_j(const MPoly& f) {
  json out = json::array();
  for (const auto& [e, c] : f.terms()) out.push_back({{"c", rat_json(c)}, {"e", e}});
  return out;
}

}  // namespace

std::string tree_to_json(const TruncTree& t) {
  json layers = json::array(), parents = json::array();
  for (int d = 0; d <= t.depth_cap(); ++d) {
    layers.push_back(t.layer_size(d));
    parents.push_back(t.parents()[d]);
  }
  json out{{"format", kFormat}, {"depth_cap", t.depth_cap()}, {"layers", layers}, {"parents", parents}};
  if (t.has_labels()) out["labels"] = *t.labels();
  return out.dump();
}

TruncTree tree_from_json(const std::string& text) {
  const json j = parse(text);
  check_format(j);
  const int cap = get<int>(j, "depth_cap");
  auto parents = get<std::vector<std::vector<std::int32_t>>>(j, "parents");
  if (j.contains("layers")) {
    const auto layers = get<std::vector<std::size_t>>(j, "layers");
    if (layers.size() != parents.size()) bad("layers and parents disagree");
    for (std::size_t d = 0; d < layers.size(); ++d)
      if (layers[d] != parents[d].size()) bad("layer " + std::to_string(d) + " size disagrees with its parents");
  }
  std::optional<std::vector<std::vector<std::string>>> labels;
  if (j.contains("labels")) labels = get<std::vector<std::vector<std::string>>>(j, "labels");
  try {
    return TruncTree(cap, std::move(parents), std::move(labels));
  } catch (const Error& e) {
    bad(std::string("invalid tree: ") + e.what());
  }
}

std::string tree_to_dot(const TruncTree& t, const std::optional<std::string>& thick_tag) {
  std::ostringstream os;
  os << "digraph T {\n  rankdir=TB;\n  node [shape=point, width=0.08];\n  edge [arrowhead=none];\n";
  for (int d = 0; d <= t.depth_cap(); ++d) {
    if (t.layer_size(d) == 0) continue;
    os << "  { rank=same;";
    for (std::size_t i = 0; i < t.layer_size(d); ++i) os << " n" << d << "_" << i << ";";
    os << " }\n";
  }
  for (int d = 1; d <= t.depth_cap(); ++d)
    for (std::size_t i = 0; i < t.layer_size(d); ++i) {
      os << "  n" << d - 1 << "_" << t.parent(d, i) << " -> n" << d << "_" << i;
      if (thick_tag && t.has_labels() && t.label(d, i).rfind(*thick_tag, 0) == 0) os << " [penwidth=3]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

std::string system_to_json(const PolySystem& s) {
  json polys = json::array();
  for (const auto& f : s.polys) {
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back({{"c", int_json(t.coeff)}, {"e", t.exps}});
    polys.push_back(terms);
  }
  json out{{"format", kFormat}, {"p", int_json(s.p)}, {"n", s.n}, {"polys", polys}};
  if (!s.witnesses.empty()) {
    json w = json::array();
    for (const auto& pt : s.witnesses) {
      json x = json::array();
      for (const auto& q : pt) x.push_back(rat_json(q));
      w.push_back(x);
    }
    out["witnesses"] = w;
  }
  if (s.empty_system) out["empty"] = true;
  return out.dump();
}

PolySystem system_from_json(const std::string& text, std::optional<Int> default_p) {
  const json j = parse(text);
  check_format(j);
  PolySystem s;
  if (j.contains("p")) s.p = int_of(j.at("p"));
  else if (default_p) s.p = *default_p;
  else bad("system has no prime p");
  s.n = get<int>(j, "n");
  if (j.contains("polys"))
    for (const auto& pj : j.at("polys")) {
      std::vector<Term> terms;
      for (const auto& t : pj) {
        Term term{int_of(field(t, "c")), get<std::vector<int>>(t, "e")};
        if (static_cast<int>(term.exps.size()) != s.n) bad("exponent vector length differs from n");
        terms.push_back(std::move(term));
      }
      s.polys.emplace_back(s.n, std::move(terms));
    }
  if (j.contains("witnesses"))
    for (const auto& w : j.at("witnesses")) {
      std::vector<Rat> pt;
      for (const auto& q : w) pt.push_back(rat_of(q));
      s.witnesses.push_back(std::move(pt));
    }
  s.empty_system = j.value("empty", false);
  try {
    s.validate();
  } catch (const Error& e) {
    if (e.code() == Errc::DomainError || e.code() == Errc::InvalidDatum) bad(std::string("invalid system: ") + e.what());
    throw;
  }
  return s;
}

std::string cell_to_json(const GammaCell& c) {
  json j = cell_j(c);
  j["format"] = kFormat;
  return j.dump();
}

GammaCell cell_from_json(const std::string& text, int dim) {
  const json j = parse(text);
  check_format(j);
  return cell_of(j, dim);
}

std::string gammaset_to_json(const GammaSet& s) {
  json j = set_j(s);
  j["format"] = kFormat;
  return j.dump();
}

GammaSet gammaset_from_json(const std::string& text) {
  const json j = parse(text);
  check_format(j);
  return set_of(j, get<int>(j, "m"));
}

std::string datum_to_json(const TreeDatum& d) { return datum_j(d).dump(); }

TreeDatum datum_from_json(const std::string& text) { return datum_of(parse(text)); }

std::string gf_to_json(const RationalGF& f) {
  json den = json::array();
  for (const auto& fac : f.denominator()) den.push_back({{"c", rat_json(fac.c)}, {"e", fac.mono}});
  return json{{"format", kFormat},
              {"nvars", f.nvars()},
              {"num", poly_terms_j(f.numerator())},
              {"den", den},
              {"text", f.to_string()}}
      .dump();
}

RationalGF gf_from_json(const std::string& text) {
  const json j = parse(text);
  check_format(j);
  const int nv = get<int>(j, "nvars");
  MPoly num(nv);
  for (const auto& t : field(j, "num")) {
    auto e = get<Exps>(t, "e");
    if (static_cast<int>(e.size()) != nv) bad("exponent vector length differs from nvars");
    num.add_term(e, rat_of(field(t, "c")));
  }
  std::vector<DenFactor> den;
  for (const auto& t : field(j, "den")) {
    auto e = get<Exps>(t, "e");
    if (static_cast<int>(e.size()) != nv) bad("exponent vector length differs from nvars");
    den.push_back({rat_of(field(t, "c")), e});
  }
  return RationalGF(std::move(num), std::move(den));
}

std::string cloud_to_json(const WitnessCloud& c) {
  json pts = json::array();
  for (const auto& pt : c.points) {
    json x = json::array();
    for (const auto& r : pt) x.push_back(r.get_str());
    pts.push_back(x);
  }
  return json{{"format", kFormat}, {"p", int_json(c.p)}, {"prec", c.prec}, {"m", c.m},
              {"N", c.N},          {"points", pts},      {"provenance", c.provenance}}
      .dump();
}

WitnessCloud cloud_from_json(const std::string& text) {
  const json j = parse(text);
  check_format(j);
  WitnessCloud c;
  c.p = int_of(field(j, "p"));
  c.prec = get<long>(j, "prec");
  c.m = get<int>(j, "m");
  c.N = get<int>(j, "N");
  for (const auto& pt : field(j, "points")) {
    std::vector<Int> x;
    for (const auto& r : pt) x.push_back(int_of(r));
    c.points.push_back(std::move(x));
  }
  if (j.contains("provenance")) c.provenance = get<std::vector<std::string>>(j, "provenance");
  return c;
}

std::string statuses_to_json(const LiftResult& r, const Int& p) {
  json st = json::array();
  for (const auto& s : r.statuses) {
    json res = json::array();
    for (const auto& x : s.residues) res.push_back(x.get_str());
    st.push_back({{"depth", s.depth},
                  {"residues", res},
                  {"status", lift_kind_name(s.status.kind)},
                  {"certificate", s.status.certificate},
                  {"searched_to", s.status.depth}});
  }
  return json{{"format", kFormat},
              {"p", int_json(p)},
              {"yes", r.count(LiftKind::Yes)},
              {"no", r.count(LiftKind::No)},
              {"unknown", r.count(LiftKind::Unknown)},
              {"statuses", st}}
      .dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace padictree
