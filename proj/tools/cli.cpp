#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "padictree/datum.hpp"
#include "padictree/enumerate.hpp"
#include "padictree/errors.hpp"
#include "padictree/io.hpp"
#include "padictree/poincare.hpp"
#include "padictree/realize.hpp"

namespace padictree::cli {

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::optional<long> p;
  int depth = 6;
  int cert_budget = 6;
  std::size_t node_budget = 10'000'000;
  std::string out;
  std::string format = "json";
  unsigned long seed = 1;

  // subcommand specifics
  std::string param;
  std::string datum, tree, status, thick;
  int coeffs = -1;
  bool check = false, labels = false;
};

void add_common(CLI::App* app, RunConfig& c, bool with_p = true) {
  if (with_p) app->add_option("--p", c.p, "prime (overrides the input file)");
  app->add_option("--depth", c.depth, "depth cap")->check(CLI::NonNegativeNumber);
  app->add_option("--node-budget", c.node_budget, "maximum number of nodes");
  app->add_option("--out", c.out, "output file (default: stdout)");
  app->add_option("--format", c.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  app->add_option("--seed", c.seed, "seed for randomized commands");
}

std::string layer_line(const TruncTree& t) {
  std::string s;
  for (const auto& n : poincare_coeffs(t)) s += (s.empty() ? "" : " ") + n.get_str();
  return s;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) out << text << (text.empty() || text.back() != '\n' ? "\n" : "");
  else write_text_file(c.out, text);
}

void emit_tree(const RunConfig& c, std::ostream& out, const TruncTree& t) {
  if (c.format == "dot") emit(c, out, tree_to_dot(t, c.thick.empty() ? std::nullopt : std::optional<std::string>(c.thick)));
  else if (c.format == "text") emit(c, out, layer_line(t));
  else emit(c, out, tree_to_json(t));
}

Int need_p(const RunConfig& c) {
  if (!c.p) raise(Errc::DomainError, "--p is required");
  return Int(*c.p);
}

PolySystem load_system(const RunConfig& c) {
  PolySystem s = system_from_json(read_text_file(c.inputs.at(0)), c.p ? std::optional<Int>(Int(*c.p)) : std::nullopt);
  if (c.p) s.p = *c.p;
  s.validate();
  return s;
}

TreeDatum load_datum(const std::string& spec, const RunConfig& c) {
  if (spec.rfind("builtin:", 0) == 0) return builtin(spec.substr(8), need_p(c));
  return datum_from_json(read_text_file(spec));
}

GammaPoint parse_param(const std::string& s) {
  GammaPoint k;
  if (s.empty()) return k;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      k.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      raise(Errc::ParseError, "bad parameter '" + item + "'");
    }
  }
  return k;
}

TruncTree shuffled(const TruncTree& t, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::int32_t>> parents(t.depth_cap() + 1);
  std::optional<std::vector<std::vector<std::string>>> labels;
  if (t.has_labels()) labels.emplace(t.depth_cap() + 1);
  std::vector<std::int32_t> where_prev;  // old index -> new index in the previous layer
  for (int d = 0; d <= t.depth_cap(); ++d) {
    std::vector<std::int32_t> perm(t.layer_size(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);  // perm[new] = old
    std::vector<std::int32_t> where(perm.size());
    for (std::size_t n = 0; n < perm.size(); ++n) {
      where[perm[n]] = static_cast<std::int32_t>(n);
      parents[d].push_back(d == 0 ? -1 : where_prev[t.parent(d, perm[n])]);
      if (labels) (*labels)[d].push_back(t.label(d, perm[n]));
    }
    where_prev = std::move(where);
  }
  for (auto& x : parents[0]) x = -1;
  return TruncTree(t.depth_cap(), std::move(parents), std::move(labels));
}

int cmd_enum(const RunConfig& c, std::ostream& out, bool naive) {
  const PolySystem s = load_system(c);
  EnumOptions opts;
  opts.node_budget = c.node_budget;
  if (naive) {
    emit_tree(c, out, naive_tree(s, c.depth, opts));
    return kOk;
  }
  const LiftResult r = lifted_tree(s, c.depth, c.cert_budget, opts);
  emit_tree(c, out, r.tree);
  std::string status_path = c.status;
  if (status_path.empty() && !c.out.empty()) status_path = c.out + ".status.json";
  if (!status_path.empty()) write_text_file(status_path, statuses_to_json(r, s.p));
  return r.has_unknown() ? kUnknown : kOk;
}

int cmd_expand(const RunConfig& c, std::ostream& out) {
  const TreeDatum d = load_datum(c.inputs.at(0), c);
  ExpandOptions opts;
  opts.labels = c.labels || !c.thick.empty();
  opts.node_budget = c.node_budget;
  const GammaPoint k = parse_param(c.param);
  if (c.format == "text") {
    std::string s;
    for (const auto& n : expand_layer_counts(d, k, need_p(c), c.depth)) s += (s.empty() ? "" : " ") + n.get_str();
    emit(c, out, s);
    return kOk;
  }
  emit_tree(c, out, expand(d, k, need_p(c), c.depth, opts));
  return kOk;
}

std::string series_line(const std::vector<Rat>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

int cmd_poincare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.datum.empty() && c.tree.empty()) raise(Errc::DomainError, "give --datum or --tree");
  std::optional<TruncTree> t;
  if (!c.tree.empty()) t = tree_from_json(read_text_file(c.tree));
  if (c.datum.empty()) {
    std::vector<Int> co = poincare_coeffs(*t);
    if (c.coeffs >= 0 && static_cast<std::size_t>(c.coeffs + 1) < co.size()) co.resize(c.coeffs + 1);
    std::string s;
    for (const auto& n : co) s += (s.empty() ? "" : " ") + n.get_str();
    emit(c, out, s);
    return kOk;
  }
  const TreeDatum d = load_datum(c.datum, c);
  const RationalGF f = datum_poincare(d, need_p(c));
  std::string text = c.format == "json" ? gf_to_json(f) : f.to_string();
  if (c.coeffs >= 0 && c.format != "json") text += "\n" + series_line(expand_series(f, c.coeffs));
  emit(c, out, text);
  if (t) {
    const CompareReport rep = compare(f, *t);
    err << rep.to_string() << "\n";
    return rep.equal ? kOk : kFalse;
  }
  return kOk;
}

int cmd_iso(const RunConfig& c, std::ostream& out) {
  const TruncTree a = tree_from_json(read_text_file(c.inputs.at(0)));
  const TruncTree b = tree_from_json(read_text_file(c.inputs.at(1)));
  IsoOptions opts;
  opts.compare_labels = c.labels;
  const auto diff = first_difference(a, b, opts);
  out << (diff ? "not isomorphic: " + *diff : "isomorphic") << "\n";
  return diff ? kFalse : kOk;
}

int cmd_realize(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TreeDatum d = load_datum(c.inputs.at(0), c);
  const Int p = need_p(c);
  const WitnessCloud cloud = realize(d, p, c.depth);
  emit(c, out, cloud_to_json(cloud));
  if (!c.check) return kOk;
  const RealizationReport rep = verify_realization(cloud, d, p, c.depth);
  err << rep.detail << "\n";
  return rep.ok ? kOk : kFalse;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const TreeDatum d = load_datum(c.inputs.at(0), c);
  const ValidationReport rep = validate(d);
  out << rep.to_string() << (rep.ok() ? "\n" : "");
  return rep.ok() ? kOk : kFalse;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Trees of p-adic sets, tree data, Poincare series and realizations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* en = app.add_subcommand("enum", "tree of the Z_p-points of a system (tree.json + status sidecar)");
  en->add_option("system", c.inputs, "system JSON")->required()->expected(1);
  en->add_option("--cert-budget", c.cert_budget, "extra depth for lift certification")->check(CLI::NonNegativeNumber);
  en->add_option("--status", c.status, "status sidecar path (default: <out>.status.json)");
  add_common(en, c);

  auto* na = app.add_subcommand("naive", "all residue solutions mod p^l");
  na->add_option("system", c.inputs, "system JSON")->required()->expected(1);
  add_common(na, c);

  auto* ex = app.add_subcommand("expand", "expand a tree datum (path or builtin:NAME)");
  ex->add_option("datum", c.inputs, "datum JSON or builtin:NAME")->required()->expected(1);
  ex->add_option("--param", c.param, "parameter point k1,k2,...");
  ex->add_flag("--labels", c.labels, "tag nodes S/F/P");
  ex->add_option("--thick", c.thick, "with --format dot: thicken edges into nodes with this tag");
  add_common(ex, c);

  auto* po = app.add_subcommand("poincare", "Poincare series of a datum or coefficients of a tree");
  po->add_option("--datum", c.datum, "datum JSON or builtin:NAME");
  po->add_option("--tree", c.tree, "tree JSON (with --datum: compare)");
  po->add_option("--coeffs", c.coeffs, "number of series terms to print");
  add_common(po, c);

  auto* is = app.add_subcommand("iso", "isomorphism test of two tree JSON files");
  is->add_option("trees", c.inputs, "two tree JSON files")->required()->expected(2);
  is->add_flag("--labels", c.labels, "also compare labels");
  add_common(is, c, false);

  auto* re = app.add_subcommand("realize", "witness cloud of a leafless unparametrized datum");
  re->add_option("datum", c.inputs, "datum JSON or builtin:NAME")->required()->expected(1);
  re->add_flag("--check", c.check, "verify the cloud against the expansion");
  add_common(re, c);

  auto* dt = app.add_subcommand("dot", "render a tree JSON as DOT");
  dt->add_option("tree", c.inputs, "tree JSON")->required()->expected(1);
  dt->add_option("--thick", c.thick, "thicken edges into nodes whose label starts with this tag");
  add_common(dt, c, false);

  auto* sh = app.add_subcommand("shuffle", "randomly reorder children (isomorphic copy)");
  sh->add_option("tree", c.inputs, "tree JSON")->required()->expected(1);
  add_common(sh, c, false);

  auto* va = app.add_subcommand("validate", "check a tree datum");
  va->add_option("datum", c.inputs, "datum JSON or builtin:NAME")->required()->expected(1);
  add_common(va, c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (po->parsed() && std::find(args.begin(), args.end(), "--format") == args.end()) c.format = "text";

  try {
    if (en->parsed()) return cmd_enum(c, out, false);
    if (na->parsed()) return cmd_enum(c, out, true);
    if (ex->parsed()) return cmd_expand(c, out);
    if (po->parsed()) return cmd_poincare(c, out, err);
    if (is->parsed()) return cmd_iso(c, out);
    if (re->parsed()) return cmd_realize(c, out, err);
    if (dt->parsed()) {
      emit(c, out, tree_to_dot(tree_from_json(read_text_file(c.inputs.at(0))),
                               c.thick.empty() ? std::nullopt : std::optional<std::string>(c.thick)));
      return kOk;
    }
    if (sh->parsed()) {
      emit(c, out, tree_to_json(shuffled(tree_from_json(read_text_file(c.inputs.at(0))), c.seed)));
      return kOk;
    }
    if (va->parsed()) return cmd_validate(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace padictree::cli
