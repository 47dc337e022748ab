#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "combdual/graph.hpp"

namespace combdual {

/// Rooted tree given by parent pointers. Tree-order queries jump parents
/// level by level; no preprocessing, so the tree can keep growing.
class RootedTree {
 public:
  explicit RootedTree(VertexId root);

  /// Validates acyclicity and that every parent chain reaches `root`.
  static RootedTree from_parents(VertexId root, const std::map<VertexId, VertexId>& parent);

  void add_child(VertexId parent, VertexId child);

  VertexId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(VertexId v) const { return nodes_.count(v) != 0; }

  std::optional<VertexId> parent(VertexId v) const;
  int level(VertexId v) const { return node(v).level; }
  const std::vector<VertexId>& children(VertexId v) const { return node(v).children; }
  int depth() const;

  /// Vertices in ascending id order.
  std::vector<VertexId> vertices() const;
  std::vector<VertexId> leaves() const;
  std::map<VertexId, VertexId> parent_map() const;

  /// a <= b in the tree-order (a is an ancestor of b or equal).
  bool is_ancestor(VertexId a, VertexId b) const;
  bool comparable(VertexId a, VertexId b) const {
    return is_ancestor(a, b) || is_ancestor(b, a);
  }
  VertexId meet(VertexId a, VertexId b) const;

  /// [v]: the chain from the root up to v, listed root first.
  std::vector<VertexId> down_closure(VertexId v) const;
  /// The descendants of v including v, ascending.
  std::vector<VertexId> up_closure(VertexId v) const;

  /// The subtree formed by the down-closure of `set` in this tree.
  RootedTree down_closure_subtree(const std::vector<VertexId>& set) const;

  bool operator==(const RootedTree& other) const;

 private:
  struct Node {
    VertexId parent = 0;
    bool has_parent = false;
    int level = 0;
    std::vector<VertexId> children;  // ascending
  };
  const Node& node(VertexId v) const;

  VertexId root_;
  std::unordered_map<VertexId, Node> nodes_;
};

/// A rooted tree embedded in a host truncation, with host-index lookups
/// and the components of host - tree precomputed.
///
/// Holds references; `host` and `tree` must outlive the embedding.
class Embedding {
 public:
  struct OutsideComponent {
    std::vector<int> vertices;      // host indices, ascending
    std::vector<int> neighbourhood; // tree vertices, by level then index
    bool chain = true;
    int top = -1;                   // maximal neighbour when chain
    bool touches_boundary = false;
  };

  /// Throws InvalidArgument when a tree vertex or tree edge is missing from
  /// the host.
  Embedding(const FiniteTruncation& host, const RootedTree& tree);

  const FiniteTruncation& host() const { return *host_; }
  const RootedTree& tree() const { return *tree_; }

  bool in_tree(int i) const { return level_[static_cast<std::size_t>(i)] >= 0; }
  int level(int i) const { return level_[static_cast<std::size_t>(i)]; }
  int parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& children(int i) const { return children_[static_cast<std::size_t>(i)]; }
  int root() const { return root_; }

  bool is_ancestor(int a, int b) const;
  bool comparable(int a, int b) const { return is_ancestor(a, b) || is_ancestor(b, a); }

  std::vector<int> down_closure(int x) const;  // root first
  std::vector<int> up_closure(int x) const;    // ascending
  /// ⟦x⟧: the up-closure plus every outside component whose neighbourhood
  /// meets it. Requires chain neighbourhoods for the fast path; falls back
  /// to a direct scan otherwise.
  std::vector<int> generalized_up_closure(int x) const;

  const std::vector<OutsideComponent>& outside() const { return outside_; }
  int component_of(int i) const { return component_[static_cast<std::size_t>(i)]; }
  /// Tree vertices in preorder (children ascending).
  const std::vector<int>& preorder() const { return preorder_; }

 private:
  const FiniteTruncation* host_;
  const RootedTree* tree_;
  int root_ = -1;
  std::vector<int> level_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<OutsideComponent> outside_;
  std::vector<int> component_;
  std::vector<int> preorder_;
  // Outside components grouped by the tree vertex they hang from.
  std::vector<std::vector<int>> attached_;
};

/// Three-valued verdict for predicates quantifying over "everything above".
enum class Verdict { Holds, HoldsUpToBoundary, Fails };
std::string to_string(Verdict v);

struct NormalityResult {
  bool normal = true;
  /// A T-path whose endpoints are incomparable, when not normal.
  std::vector<VertexId> witness;
};

NormalityResult is_normal(const FiniteTruncation& h, const RootedTree& t);

std::vector<VertexId> generalized_up_closure(const FiniteTruncation& h, const RootedTree& t,
                                             VertexId x);

struct SeparationCheck {
  bool holds = true;
  VertexId x = 0, y = 0;
  /// Path from x to y avoiding [x] ∩ [y], when the property fails.
  std::vector<VertexId> path;
};

/// Any two tree vertices are separated by the intersection of their
/// down-closures. Requires `t` to be normal in `h`.
SeparationCheck check_separation_property(const FiniteTruncation& h, const RootedTree& t);

enum class ComponentKind { AvoidsTree, Spanned, Violation };

struct ClassifiedComponent {
  std::vector<VertexId> vertices;
  ComponentKind kind = ComponentKind::AvoidsTree;
  std::optional<VertexId> minimal;
  std::string problem;
};

struct ComponentClassification {
  bool holds = true;
  std::vector<ClassifiedComponent> components;
};

/// Components of h - w for a down-closed w ⊆ t: each avoids t or is spanned
/// by ⟦x⟧ for the unique minimal x of t - w it contains.
ComponentClassification classify_components(const FiniteTruncation& h, const RootedTree& t,
                                            const std::vector<VertexId>& w);

struct CofinalityResult {
  Verdict verdict = Verdict::Holds;
  std::optional<VertexId> witness;  // a vertex with nothing from U above it
  std::vector<VertexId> exempt;     // vertices excused by boundary leaves
};

/// Every tree vertex has a U-vertex above it; vertices whose up-closure
/// holds a flagged boundary leaf are exempt and reported.
CofinalityResult contains_cofinally(const RootedTree& t, const std::vector<VertexId>& u,
                                    const std::set<VertexId>& boundary_leaves = {});

/// Tree leaves whose generalized up-closure reaches the truncation boundary.
std::set<VertexId> boundary_leaves(const Embedding& e);

}  // namespace combdual
