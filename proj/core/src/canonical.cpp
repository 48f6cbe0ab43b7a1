// Level-by-level AHU canonical form. At each depth, a node's key is its label
// (optional) plus the sorted ranks of its children; ranks are positions of the
// keys among the distinct keys of that depth. Two trees with equal depth caps
// are isomorphic iff the per-depth multisets of keys agree at every depth.
#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "padictree/errors.hpp"
#include "padictree/trees.hpp"

namespace padictree {
namespace {

struct Key {
  std::string label;
  std::vector<std::uint32_t> kids;
  friend bool operator<(const Key& a, const Key& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.kids < b.kids;
  }
  friend bool operator==(const Key&, const Key&) = default;
};

using Level = std::vector<std::pair<Key, std::size_t>>;  // distinct keys, sorted, with multiplicity

std::vector<Level> canonical_levels(const TruncTree& t, const IsoOptions& opts) {
  const int cap = t.depth_cap();
  std::vector<Level> levels(cap + 1);
  if (t.empty()) return levels;
  if (opts.compare_labels && !t.has_labels()) raise(Errc::LabelMissing, "label-preserving comparison needs labels");
  const ChildIndex ci = t.child_index();
  std::vector<std::uint32_t> below;
  for (int d = cap; d >= 0; --d) {
    const std::size_t n = t.layer_size(d);
    std::vector<Key> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (opts.compare_labels) keys[i].label = t.label(d, i);
      if (d < cap) {
        for (auto o = ci.offsets[d][i]; o < ci.offsets[d][i + 1]; ++o) keys[i].kids.push_back(below[ci.kids[d][o]]);
        std::sort(keys[i].kids.begin(), keys[i].kids.end());
      }
    }
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return keys[x] < keys[y]; });
    std::vector<std::uint32_t> rank(n);
    Level& lvl = levels[d];
    for (std::size_t k = 0; k < n; ++k) {
      const Key& key = keys[order[k]];
      if (lvl.empty() || !(lvl.back().first == key)) lvl.emplace_back(key, 0);
      ++lvl.back().second;
      rank[order[k]] = static_cast<std::uint32_t>(lvl.size() - 1);
    }
    below = std::move(rank);
  }
  return levels;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::pair<std::uint64_t, std::uint64_t> merkle_root(const TruncTree& t, const IsoOptions& opts) {
  if (t.empty()) return {0, 0};
  const int cap = t.depth_cap();
  const ChildIndex ci = t.child_index();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> below;
  for (int d = cap; d >= 0; --d) {
    const std::size_t n = t.layer_size(d);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cur(n);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> kids;
    for (std::size_t i = 0; i < n; ++i) {
      kids.clear();
      if (d < cap)
        for (auto o = ci.offsets[d][i]; o < ci.offsets[d][i + 1]; ++o) kids.push_back(below[ci.kids[d][o]]);
      std::sort(kids.begin(), kids.end());
      std::uint64_t hi = 0x243f6a8885a308d3ULL, lo = 0x13198a2e03707344ULL;
      if (opts.compare_labels) {
        const auto lh = std::hash<std::string>{}(t.label(d, i));
        hi = mix(hi ^ lh);
        lo = mix(lo + lh * 3);
      }
      for (const auto& [a, b] : kids) {
        hi = mix(hi ^ a) + b;
        lo = mix(lo + b * 0x9e3779b97f4a7c15ULL) ^ a;
      }
      hi = mix(hi ^ kids.size());
      lo = mix(lo + kids.size());
      cur[i] = {hi, lo};
    }
    below = std::move(cur);
  }
  return below[0];
}

std::string serialize(const std::vector<Level>& levels) {
  std::string s = "cap=" + std::to_string(static_cast<int>(levels.size()) - 1);
  for (std::size_t d = 0; d < levels.size(); ++d) {
    s += ";" + std::to_string(d) + ":";
    for (const auto& [key, count] : levels[d]) {
      s += std::to_string(count) + "x[";
      if (!key.label.empty()) s += "'" + key.label + "'";
      for (std::size_t i = 0; i < key.kids.size(); ++i) s += (i ? "," : "") + std::to_string(key.kids[i]);
      s += "]";
    }
  }
  return s;
}

}  // namespace

bool operator==(const CanonicalCode& a, const CanonicalCode& b) {
  if (a.hash_hi != b.hash_hi || a.hash_lo != b.hash_lo) return false;
  if (!a.exact.empty() && !b.exact.empty()) return a.exact == b.exact;
  return true;
}

CanonicalCode canonical_code(const TruncTree& t, bool with_exact, IsoOptions opts) {
  CanonicalCode c;
  std::tie(c.hash_hi, c.hash_lo) = merkle_root(t, opts);
  c.hash_hi ^= static_cast<std::uint64_t>(t.depth_cap()) << 48;
  if (with_exact) c.exact = serialize(canonical_levels(t, opts));
  return c;
}

std::optional<std::string> first_difference(const TruncTree& a, const TruncTree& b, IsoOptions opts) {
  if (a.depth_cap() != b.depth_cap())
    raise(Errc::DepthMismatch, "depth caps " + std::to_string(a.depth_cap()) + " and " +
                                   std::to_string(b.depth_cap()) + " differ");
  for (int d = 0; d <= a.depth_cap(); ++d)
    if (a.layer_size(d) != b.layer_size(d))
      return "layer " + std::to_string(d) + " has " + std::to_string(a.layer_size(d)) + " vs " +
             std::to_string(b.layer_size(d)) + " nodes";
  const auto la = canonical_levels(a, opts), lb = canonical_levels(b, opts);
  for (int d = a.depth_cap(); d >= 0; --d)
    if (la[d] != lb[d])
      return "layer " + std::to_string(d) + " has " + std::to_string(la[d].size()) + " vs " +
             std::to_string(lb[d].size()) + " distinct subtree shapes (or differing multiplicities)";
  return std::nullopt;
}

bool is_isomorphic(const TruncTree& a, const TruncTree& b, IsoOptions opts) {
  return !first_difference(a, b, opts).has_value();
}

}  // namespace padictree
