#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "padictree/polysystem.hpp"
#include "padictree/trees.hpp"

namespace padictree {

enum class LiftKind { Yes, No, Unknown };

std::string lift_kind_name(LiftKind k);

struct LiftStatus {
  LiftKind kind = LiftKind::Unknown;
  std::string certificate;  // Yes: how it was certified
  long depth = 0;           // No: exhaustion depth; Unknown: depth searched to
};

struct NodeStatus {
  int depth = 0;                // relative depth in the tree
  std::vector<Int> residues;    // ball center modulo p^(radius + depth)
  LiftStatus status;
};

struct EnumOptions {
  std::size_t node_budget = 10'000'000;
};

struct LiftResult {
  TruncTree tree;                   // Yes nodes only
  std::vector<NodeStatus> statuses;  // every node met by the search above the certification layer
  bool has_unknown() const;
  std::size_t count(LiftKind k) const;
};

// All residue solutions: nodes at depth l are a mod p^l with f(a) = 0 mod p^l.
TruncTree naive_tree(const PolySystem& sys, int depth, EnumOptions opts = {});

// The tree of X: classes containing a Z_p-point, decided by Hensel
// certificates, witnesses and exhaustion down to depth + cert_budget.
LiftResult lifted_tree(const PolySystem& sys, int depth, int cert_budget, EnumOptions opts = {});
LiftResult tree_on_ball(const PolySystem& sys, const Ball& ball, int depth_rel, int cert_budget,
                        EnumOptions opts = {});
LiftResult tree_on_cheese(const PolySystem& sys, const Cheese& cheese, int depth_rel, int cert_budget,
                          EnumOptions opts = {});

// Components G_k = x0 + p^k B(x_G, mu) for k >= lambda, k = xi mod rho.
struct Garland {
  PadicVec x0;
  long lambda = 0;
  long mu = 1;
  long rho = 1;
  PadicVec xg;
  long xi = 0;

  void validate() const;
  bool has_component(long k) const;
  Ball component(long k) const;
};

std::vector<std::pair<long, LiftResult>> garland_trees(const PolySystem& sys, const Garland& g,
                                                       const std::vector<long>& kappas, int depth_rel,
                                                       int cert_budget, EnumOptions opts = {});

}  // namespace padictree
