#include "padictree/trees.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "padictree/errors.hpp"

namespace padictree {

TruncTree::TruncTree(int depth_cap) : depth_cap_(depth_cap), parents_(depth_cap + 1) {
  if (depth_cap < 0) raise(Errc::DomainError, "negative depth cap");
}

TruncTree::TruncTree(int depth_cap, std::vector<std::vector<std::int32_t>> parents,
                     std::optional<std::vector<std::vector<std::string>>> labels)
    : depth_cap_(depth_cap), parents_(std::move(parents)), labels_(std::move(labels)) {
  if (depth_cap < 0) raise(Errc::DomainError, "negative depth cap");
  if (static_cast<int>(parents_.size()) != depth_cap + 1)
    raise(Errc::DomainError, "parent table must have depth_cap + 1 layers");
  if (parents_[0].size() > 1) raise(Errc::DomainError, "a tree has at most one root");
  if (!parents_[0].empty() && parents_[0][0] != -1) raise(Errc::DomainError, "root parent must be -1");
  for (int d = 1; d <= depth_cap; ++d)
    for (auto q : parents_[d])
      if (q < 0 || static_cast<std::size_t>(q) >= parents_[d - 1].size())
        raise(Errc::DomainError, "parent index out of range at depth " + std::to_string(d));
  if (labels_) {
    if (labels_->size() != parents_.size()) raise(Errc::DomainError, "label table shape mismatch");
    for (int d = 0; d <= depth_cap; ++d)
      if ((*labels_)[d].size() != parents_[d].size()) raise(Errc::DomainError, "label table shape mismatch");
  }
}

std::size_t TruncTree::node_count() const {
  std::size_t n = 0;
  for (const auto& l : parents_) n += l.size();
  return n;
}

const std::string& TruncTree::label(int d, std::size_t i) const {
  if (!labels_) raise(Errc::LabelMissing, "tree carries no labels");
  return (*labels_)[d][i];
}

ChildIndex TruncTree::child_index() const {
  ChildIndex ci;
  ci.offsets.resize(depth_cap_);
  ci.kids.resize(depth_cap_);
  for (int d = 0; d < depth_cap_; ++d) {
    const auto& below = parents_[d + 1];
    auto& off = ci.offsets[d];
    off.assign(parents_[d].size() + 1, 0);
    for (auto q : below) ++off[q + 1];
    for (std::size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
    auto& kids = ci.kids[d];
    kids.resize(below.size());
    std::vector<std::int32_t> fill(off.begin(), off.end() - 1);
    for (std::size_t j = 0; j < below.size(); ++j) kids[fill[below[j]]++] = static_cast<std::int32_t>(j);
  }
  return ci;
}

TreeBuilder::TreeBuilder(int depth_cap, bool labeled)
    : cap_(depth_cap), labeled_(labeled), parents_(depth_cap + 1), labels_(labeled ? depth_cap + 1 : 0) {
  if (depth_cap < 0) raise(Errc::DomainError, "negative depth cap");
}

NodeRef TreeBuilder::add_root(std::string label) {
  if (!parents_[0].empty()) raise(Errc::DomainError, "root already present");
  parents_[0].push_back(-1);
  if (labeled_) labels_[0].push_back(std::move(label));
  return {0, 0};
}

std::optional<NodeRef> TreeBuilder::add_child(NodeRef parent, std::string label) {
  if (parent.depth >= cap_) return std::nullopt;
  auto& layer = parents_[parent.depth + 1];
  layer.push_back(parent.index);
  if (labeled_) labels_[parent.depth + 1].push_back(std::move(label));
  return NodeRef{parent.depth + 1, static_cast<std::int32_t>(layer.size() - 1)};
}

TruncTree TreeBuilder::build() && {
  if (labeled_) return TruncTree(cap_, std::move(parents_), std::move(labels_));
  return TruncTree(cap_, std::move(parents_));
}

bool Ball::contains(const std::vector<Int>& point) const {
  if (point.size() != center.size()) return false;
  const Int m = pow_int(center.p(), radius);
  for (std::size_t i = 0; i < point.size(); ++i)
    if (mod_floor(point[i] - center[i].residue(), m) != 0) return false;
  return true;
}

bool Ball::contains(const Ball& other) const { return other.radius >= radius && contains(other.center.residues()); }

void Cheese::validate() const {
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const Ball& h = holes[i];
    if (h.center.size() != outer.center.size() || h.center.p() != outer.center.p())
      raise(Errc::DomainError, "hole shape differs from outer ball");
    if (!outer.contains(h) || h.radius <= outer.radius)
      raise(Errc::DomainError, "hole " + std::to_string(i) + " is not a proper subball of the outer ball");
    for (std::size_t j = 0; j < i; ++j)
      if (holes[j].contains(h) || h.contains(holes[j]))
        raise(Errc::DomainError, "holes " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
  }
}

std::string ball_label(const std::vector<Int>& residues, long radius) {
  std::string s = std::to_string(radius) + "|";
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (i) s += ',';
    s += residues[i].get_str();
  }
  return s;
}

std::pair<long, std::vector<Int>> parse_ball_label(const std::string& label) {
  auto bar = label.find('|');
  if (bar == std::string::npos) raise(Errc::LabelMissing, "node label '" + label + "' is not a ball label");
  long radius = std::stol(label.substr(0, bar));
  std::vector<Int> res;
  std::stringstream ss(label.substr(bar + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) res.emplace_back(tok);
  return {radius, res};
}

TruncTree path_tree(int depth_cap) {
  std::vector<std::vector<std::int32_t>> parents(depth_cap + 1, std::vector<std::int32_t>{0});
  parents[0][0] = -1;
  return TruncTree(depth_cap, std::move(parents));
}

TruncTree from_points(const std::vector<PadicVec>& points, const Ball& ball, int depth_cap) {
  for (const auto& x : points) {
    if (x.size() != ball.center.size() || x.p() != ball.center.p())
      raise(Errc::DomainError, "point shape differs from the ball");
    if (x.prec() < ball.radius + depth_cap)
      raise(Errc::PrecisionExhausted, "depth cap exceeds the available digits");
    if (!ball.contains(x.residues())) raise(Errc::DomainError, "point outside the ball");
  }
  if (points.empty()) return TruncTree(depth_cap);
  const Int& p = ball.center.p();
  TreeBuilder b(depth_cap, true);
  std::map<std::vector<Int>, std::int32_t> prev, cur;
  const Int m0 = pow_int(p, ball.radius);
  std::vector<Int> key0;
  for (const auto& c : ball.center.coords()) key0.push_back(mod_floor(c.residue(), m0));
  b.add_root(ball_label(key0, ball.radius));
  prev[key0] = 0;
  std::vector<std::vector<Int>> res;
  for (const auto& x : points) res.push_back(x.residues());
  for (int d = 1; d <= depth_cap; ++d) {
    const long r = ball.radius + d;
    const Int m = pow_int(p, r), mp = pow_int(p, r - 1);
    std::map<std::vector<Int>, std::vector<Int>> keys;  // key -> parent key
    for (const auto& x : res) {
      std::vector<Int> k, pk;
      for (const auto& c : x) {
        k.push_back(mod_floor(c, m));
        pk.push_back(mod_floor(c, mp));
      }
      keys.emplace(std::move(k), std::move(pk));
    }
    cur.clear();
    for (const auto& [k, pk] : keys) {
      auto ref = b.add_child(NodeRef{d - 1, prev.at(pk)}, ball_label(k, r));
      cur[k] = ref->index;
    }
    std::swap(prev, cur);
  }
  return std::move(b).build();
}

TruncTree product(const TruncTree& a, const TruncTree& b) {
  if (a.depth_cap() != b.depth_cap()) raise(Errc::DepthMismatch, "product needs equal depth caps");
  const int cap = a.depth_cap();
  std::vector<std::vector<std::int32_t>> parents(cap + 1);
  const bool labeled = a.has_labels() && b.has_labels();
  std::vector<std::vector<std::string>> labels(labeled ? cap + 1 : 0);
  for (int d = 0; d <= cap; ++d) {
    const std::size_t na = a.layer_size(d), nb = b.layer_size(d);
    parents[d].reserve(na * nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        parents[d].push_back(d == 0 ? -1
                                    : static_cast<std::int32_t>(a.parent(d, i) * b.layer_size(d - 1) +
                                                                b.parent(d, j)));
        if (labeled) labels[d].push_back(a.label(d, i) + "*" + b.label(d, j));
      }
  }
  if (labeled) return TruncTree(cap, std::move(parents), std::move(labels));
  return TruncTree(cap, std::move(parents));
}

TruncTree attach(const TruncTree& t, NodeRef node, const TruncTree& s) {
  if (s.empty()) raise(Errc::EmptyAttach, "cannot attach an empty tree");
  if (node.depth < 0 || node.depth > t.depth_cap() || node.index < 0 ||
      static_cast<std::size_t>(node.index) >= t.layer_size(node.depth))
    raise(Errc::DomainError, "attach target out of range");
  auto parents = t.parents();
  std::optional<std::vector<std::vector<std::string>>> labels = t.labels();
  const bool labeled = labels.has_value();
  std::vector<std::int32_t> map_prev{node.index};
  for (int k = 1; k <= s.depth_cap() && node.depth + k <= t.depth_cap(); ++k) {
    const int d = node.depth + k;
    std::vector<std::int32_t> map_cur(s.layer_size(k));
    for (std::size_t j = 0; j < s.layer_size(k); ++j) {
      map_cur[j] = static_cast<std::int32_t>(parents[d].size());
      parents[d].push_back(map_prev[s.parent(k, j)]);
      if (labeled) (*labels)[d].push_back(s.has_labels() ? s.label(k, j) : std::string());
    }
    map_prev = std::move(map_cur);
  }
  return TruncTree(t.depth_cap(), std::move(parents), std::move(labels));
}

TruncTree full_tree(int n, const Int& p, int depth_cap, std::size_t node_budget) {
  Int total = 0;
  const Int q = pow_int(p, n);
  for (int d = 0; d <= depth_cap; ++d) total += pow_int(q, d);
  if (total > Int(static_cast<unsigned long>(node_budget)))
    raise(Errc::NodeBudgetExceeded, "full tree has " + total.get_str() + " nodes");
  const auto fan = static_cast<std::int32_t>(q.get_si());
  std::vector<std::vector<std::int32_t>> parents(depth_cap + 1);
  parents[0] = {-1};
  for (int d = 1; d <= depth_cap; ++d) {
    const auto prev = static_cast<std::int32_t>(parents[d - 1].size());
    parents[d].reserve(static_cast<std::size_t>(prev) * fan);
    for (std::int32_t i = 0; i < prev; ++i)
      for (std::int32_t c = 0; c < fan; ++c) parents[d].push_back(i);
  }
  return TruncTree(depth_cap, std::move(parents));
}

TruncTree y_tree(int kappa, int depth_cap) {
  if (kappa < 0) raise(Errc::DomainError, "negative bifurcation depth");
  std::vector<std::vector<std::int32_t>> parents(depth_cap + 1);
  parents[0] = {-1};
  for (int d = 1; d <= depth_cap; ++d) {
    if (d <= kappa) parents[d] = {0};
    else if (d == kappa + 1) parents[d] = {0, 0};
    else parents[d] = {0, 1};
  }
  return TruncTree(depth_cap, std::move(parents));
}

TruncTree subtree(const TruncTree& t, NodeRef node) {
  const int cap = t.depth_cap() - node.depth;
  TreeBuilder b(cap, t.has_labels());
  b.add_root(t.has_labels() ? t.label(node.depth, node.index) : std::string());
  const ChildIndex ci = t.child_index();
  std::vector<std::pair<std::int32_t, std::int32_t>> frontier{{node.index, 0}};  // (index in t, index in new)
  for (int k = 0; k < cap; ++k) {
    const int d = node.depth + k;
    std::vector<std::pair<std::int32_t, std::int32_t>> next;
    for (auto [ti, ni] : frontier)
      for (auto o = ci.offsets[d][ti]; o < ci.offsets[d][ti + 1]; ++o) {
        const auto c = ci.kids[d][o];
        auto ref = b.add_child(NodeRef{k, ni}, t.has_labels() ? t.label(d + 1, c) : std::string());
        next.emplace_back(c, ref->index);
      }
    frontier = std::move(next);
  }
  return std::move(b).build();
}

TruncTree truncate(const TruncTree& t, int depth_cap) {
  if (depth_cap > t.depth_cap()) raise(Errc::DepthMismatch, "cannot deepen a truncated tree");
  std::vector<std::vector<std::int32_t>> parents(t.parents().begin(), t.parents().begin() + depth_cap + 1);
  if (!t.has_labels()) return TruncTree(depth_cap, std::move(parents));
  std::vector<std::vector<std::string>> labels(t.labels()->begin(), t.labels()->begin() + depth_cap + 1);
  return TruncTree(depth_cap, std::move(parents), std::move(labels));
}

std::vector<Int> poincare_coeffs(const TruncTree& t) {
  std::vector<Int> c;
  for (int d = 0; d <= t.depth_cap(); ++d) c.emplace_back(static_cast<unsigned long>(t.layer_size(d)));
  return c;
}

TruncTree cheese_restrict(const TruncTree& t, const Cheese& cheese) {
  cheese.validate();
  if (t.empty()) return t;
  if (!t.has_labels()) raise(Errc::LabelMissing, "cheese restriction needs ball labels");
  const Int& p = cheese.outer.center.p();
  const int cap = t.depth_cap();
  std::vector<std::vector<std::int32_t>> parents(cap + 1);
  std::vector<std::vector<std::string>> labels(cap + 1);
  std::vector<std::int32_t> remap_prev;
  for (int d = 0; d <= cap; ++d) {
    std::vector<std::int32_t> remap(t.layer_size(d), -1);
    for (std::size_t i = 0; i < t.layer_size(d); ++i) {
      if (d > 0 && remap_prev[t.parent(d, i)] < 0) continue;
      auto [r, c] = parse_ball_label(t.label(d, i));
      bool inside_hole = false;
      for (const auto& h : cheese.holes) {
        if (r <= h.radius) continue;
        const Int m = pow_int(p, h.radius);
        bool in = c.size() == h.center.size();
        for (std::size_t k = 0; in && k < c.size(); ++k) in = mod_floor(c[k] - h.center[k].residue(), m) == 0;
        if (in) {
          inside_hole = true;
          break;
        }
      }
      if (inside_hole) continue;
      remap[i] = static_cast<std::int32_t>(parents[d].size());
      parents[d].push_back(d == 0 ? -1 : remap_prev[t.parent(d, i)]);
      labels[d].push_back(t.label(d, i));
    }
    remap_prev = std::move(remap);
  }
  return TruncTree(cap, std::move(parents), std::move(labels));
}

}  // namespace padictree
