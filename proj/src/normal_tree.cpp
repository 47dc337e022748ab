#include "combdual/normal_tree.hpp"

#include <algorithm>
#include <deque>

namespace combdual {

// RootedTree ----------------------------------------------------------------

RootedTree::RootedTree(VertexId root) : root_(root) { nodes_.emplace(root, Node{}); }

RootedTree RootedTree::from_parents(VertexId root, const std::map<VertexId, VertexId>& parent) {
  if (parent.count(root)) throw InvalidArgument("root must not have a parent");
  RootedTree t(root);
  // Attach in rounds so parents always precede children.
  std::map<VertexId, VertexId> pending = parent;
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      if (t.contains(it->second)) {
        t.add_child(it->second, it->first);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress) throw InvalidArgument("parent pointers do not reach the root");
  }
  return t;
}

void RootedTree::add_child(VertexId parent, VertexId child) {
  if (contains(child)) throw InvalidArgument("vertex " + std::to_string(child) + " already in tree");
  auto& p = nodes_.at(parent);
  auto pos = std::lower_bound(p.children.begin(), p.children.end(), child);
  p.children.insert(pos, child);
  const int lvl = p.level + 1;
  Node n;
  n.parent = parent;
  n.has_parent = true;
  n.level = lvl;
  nodes_.emplace(child, std::move(n));
}

const RootedTree::Node& RootedTree::node(VertexId v) const {
  auto it = nodes_.find(v);
  if (it == nodes_.end()) throw InvalidArgument("vertex " + std::to_string(v) + " not in tree");
  return it->second;
}

std::optional<VertexId> RootedTree::parent(VertexId v) const {
  const Node& n = node(v);
  if (!n.has_parent) return std::nullopt;
  return n.parent;
}

int RootedTree::depth() const {
  int d = 0;
  for (const auto& [_, n] : nodes_) d = std::max(d, n.level);
  return d;
}

std::vector<VertexId> RootedTree::vertices() const {
  std::vector<VertexId> out;
  out.reserve(nodes_.size());
  for (const auto& [v, _] : nodes_) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> RootedTree::leaves() const {
  std::vector<VertexId> out;
  for (const auto& [v, n] : nodes_)
    if (n.children.empty()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<VertexId, VertexId> RootedTree::parent_map() const {
  std::map<VertexId, VertexId> out;
  for (const auto& [v, n] : nodes_)
    if (n.has_parent) out.emplace(v, n.parent);
  return out;
}

bool RootedTree::is_ancestor(VertexId a, VertexId b) const {
  const Node* na = &node(a);
  const Node* nb = &node(b);
  VertexId cur = b;
  while (nb->level > na->level) {
    cur = nb->parent;
    nb = &node(cur);
  }
  return cur == a;
}

VertexId RootedTree::meet(VertexId a, VertexId b) const {
  while (level(a) > level(b)) a = node(a).parent;
  while (level(b) > level(a)) b = node(b).parent;
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
  }
  return a;
}

std::vector<VertexId> RootedTree::down_closure(VertexId v) const {
  std::vector<VertexId> out;
  const Node* n = &node(v);
  out.push_back(v);
  while (n->has_parent) {
    out.push_back(n->parent);
    n = &node(n->parent);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<VertexId> RootedTree::up_closure(VertexId v) const {
  std::vector<VertexId> out;
  std::vector<VertexId> stack{v};
  node(v);
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (VertexId c : node(x).children) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootedTree RootedTree::down_closure_subtree(const std::vector<VertexId>& set) const {
  std::map<VertexId, VertexId> parents;
  for (VertexId v : set) {
    const Node* n = &node(v);
    VertexId cur = v;
    while (n->has_parent && !parents.count(cur)) {
      parents.emplace(cur, n->parent);
      cur = n->parent;
      n = &node(cur);
    }
  }
  return from_parents(root_, parents);
}

bool RootedTree::operator==(const RootedTree& other) const {
  return root_ == other.root_ && parent_map() == other.parent_map();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::HoldsUpToBoundary: return "holds-up-to-boundary";
    case Verdict::Fails: return "fails";
  }
  return "?";
}

// Embedding -----------------------------------------------------------------

Embedding::Embedding(const FiniteTruncation& host, const RootedTree& tree)
    : host_(&host), tree_(&tree) {
  const auto n = static_cast<std::size_t>(host.size());
  level_.assign(n, -1);
  parent_.assign(n, -1);
  children_.assign(n, {});
  component_.assign(n, -1);
  attached_.assign(n, {});

  auto idx = [&](VertexId v) {
    auto i = host.index_of(v);
    if (!i) throw InvalidArgument("tree vertex " + std::to_string(v) + " not in host");
    return *i;
  };
  root_ = idx(tree.root());
  // Preorder walk assigns levels and parents by index.
  std::vector<VertexId> stack{tree.root()};
  level_[root_] = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    const int vi = idx(v);
    preorder_.push_back(vi);
    const auto& ch = tree.children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      const int ci = idx(*it);
      if (!host.adjacent(vi, ci))
        throw InvalidArgument("tree edge " + std::to_string(v) + "-" + std::to_string(*it) +
                              " not in host");
      level_[ci] = level_[vi] + 1;
      parent_[ci] = vi;
      stack.push_back(*it);
    }
    for (VertexId c : ch) children_[vi].push_back(idx(c));
    std::sort(children_[vi].begin(), children_[vi].end());
  }

  std::vector<char> removed(n, 0);
  for (std::size_t i = 0; i < n; ++i) removed[i] = level_[i] >= 0;
  for (auto& verts : components_without(host, removed)) {
    OutsideComponent c;
    c.vertices = std::move(verts);
    std::vector<char> nb(n, 0);
    for (int v : c.vertices) {
      component_[v] = static_cast<int>(outside_.size());
      if (host.on_boundary(v)) c.touches_boundary = true;
      for (int w : host.neighbors(v))
        if (level_[w] >= 0 && !nb[w]) {
          nb[w] = 1;
          c.neighbourhood.push_back(w);
        }
    }
    std::sort(c.neighbourhood.begin(), c.neighbourhood.end(), [&](int a, int b) {
      return level_[a] != level_[b] ? level_[a] < level_[b] : a < b;
    });
    for (std::size_t k = 1; k < c.neighbourhood.size() && c.chain; ++k)
      c.chain = level_[c.neighbourhood[k - 1]] < level_[c.neighbourhood[k]] &&
                is_ancestor(c.neighbourhood[k - 1], c.neighbourhood[k]);
    if (c.chain && !c.neighbourhood.empty()) {
      c.top = c.neighbourhood.back();
      attached_[c.top].push_back(static_cast<int>(outside_.size()));
    }
    outside_.push_back(std::move(c));
  }
}

bool Embedding::is_ancestor(int a, int b) const {
  if (level_[a] < 0 || level_[b] < 0) return false;
  while (level_[b] > level_[a]) b = parent_[b];
  return a == b;
}

std::vector<int> Embedding::down_closure(int x) const {
  std::vector<int> out;
  for (int v = x; v >= 0; v = parent_[v]) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> Embedding::up_closure(int x) const {
  std::vector<int> out;
  std::vector<int> stack{x};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int c : children_[v]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Embedding::generalized_up_closure(int x) const {
  std::vector<int> up = up_closure(x);
  std::vector<int> out = up;
  bool all_chains = std::all_of(outside_.begin(), outside_.end(),
                                [](const OutsideComponent& c) { return c.chain; });
  if (all_chains) {
    // A chain neighbourhood meets ⌊x⌋ iff its maximum lies in ⌊x⌋.
    for (int v : up)
      for (int ci : attached_[v])
        out.insert(out.end(), outside_[ci].vertices.begin(), outside_[ci].vertices.end());
  } else {
    std::vector<char> mark(static_cast<std::size_t>(host_->size()), 0);
    for (int v : up) mark[v] = 1;
    for (const auto& c : outside_)
      if (std::any_of(c.neighbourhood.begin(), c.neighbourhood.end(),
                      [&](int w) { return mark[w] != 0; }))
        out.insert(out.end(), c.vertices.begin(), c.vertices.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<VertexId> boundary_leaves(const Embedding& e) {
  std::set<VertexId> out;
  const auto& h = e.host();
  for (int v : e.preorder()) {
    if (!e.children(v).empty()) continue;
    for (int w : e.generalized_up_closure(v))
      if (h.on_boundary(w)) {
        out.insert(h.id(v));
        break;
      }
  }
  return out;
}

// Predicates ----------------------------------------------------------------

namespace {

std::vector<VertexId> to_ids(const FiniteTruncation& h, const std::vector<int>& idx) {
  std::vector<VertexId> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(h.id(i));
  return out;
}

// Shortest path from `from` to `to` through vertices allowed by `ok`
// (endpoints need not be allowed).
std::vector<int> path_through(const FiniteTruncation& h, int from, int to,
                              const std::vector<char>& ok) {
  std::vector<int> prev(static_cast<std::size_t>(h.size()), -2);
  std::deque<int> queue{from};
  prev[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : h.neighbors(v)) {
      if (prev[w] != -2) continue;
      if (w != to && !ok[w]) continue;
      prev[w] = v;
      if (w == to) {
        std::vector<int> path;
        for (int x = to; x >= 0; x = prev[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

NormalityResult is_normal(const FiniteTruncation& h, const RootedTree& t) {
  Embedding e(h, t);
  NormalityResult r;
  // Single-edge T-paths.
  for (int a : e.preorder())
    for (int b : h.neighbors(a)) {
      if (b < a || !e.in_tree(b)) continue;
      if (!e.comparable(a, b)) {
        r.normal = false;
        r.witness = {h.id(a), h.id(b)};
        return r;
      }
    }
  // T-paths through an outside component: its neighbourhood must be a chain.
  for (const auto& c : e.outside()) {
    if (c.chain) continue;
    int p = -1, q = -1;
    for (std::size_t i = 0; i < c.neighbourhood.size() && p < 0; ++i)
      for (std::size_t j = i + 1; j < c.neighbourhood.size(); ++j)
        if (!e.comparable(c.neighbourhood[i], c.neighbourhood[j])) {
          p = c.neighbourhood[i];
          q = c.neighbourhood[j];
          break;
        }
    std::vector<char> ok(static_cast<std::size_t>(h.size()), 0);
    for (int v : c.vertices) ok[v] = 1;
    r.normal = false;
    r.witness = to_ids(h, path_through(h, p, q, ok));
    return r;
  }
  return r;
}

std::vector<VertexId> generalized_up_closure(const FiniteTruncation& h, const RootedTree& t,
                                             VertexId x) {
  Embedding e(h, t);
  if (!t.contains(x)) throw InvalidArgument("vertex not in tree");
  return to_ids(h, e.generalized_up_closure(h.require_index(x)));
}

SeparationCheck check_separation_property(const FiniteTruncation& h, const RootedTree& t) {
  if (!is_normal(h, t).normal) throw InvalidArgument("tree is not normal in host");
  Embedding e(h, t);
  const auto n = static_cast<std::size_t>(h.size());
  SeparationCheck r;
  // Incomparable x, y have [x] ∩ [y] = [s] for their meet s; they lie above
  // distinct children of s.
  for (int s : e.preorder()) {
    if (e.children(s).size() < 2) continue;
    std::vector<char> removed(n, 0);
    for (int v : e.down_closure(s)) removed[v] = 1;
    std::vector<int> comp(n, -1);
    auto comps = components_without(h, removed);
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      for (int v : comps[ci]) comp[v] = static_cast<int>(ci);
    std::vector<int> owner(comps.size(), -1);
    std::vector<int> owner_vertex(comps.size(), -1);
    for (int c : e.children(s))
      for (int x : e.up_closure(c)) {
        int ci = comp[x];
        if (owner[ci] < 0) {
          owner[ci] = c;
          owner_vertex[ci] = x;
        } else if (owner[ci] != c) {
          std::vector<char> ok(n, 0);
          for (std::size_t v = 0; v < n; ++v) ok[v] = !removed[v];
          r.holds = false;
          r.x = h.id(owner_vertex[ci]);
          r.y = h.id(x);
          r.path = to_ids(h, path_through(h, owner_vertex[ci], x, ok));
          return r;
        }
      }
  }
  return r;
}

ComponentClassification classify_components(const FiniteTruncation& h, const RootedTree& t,
                                            const std::vector<VertexId>& w) {
  Embedding e(h, t);
  const auto n = static_cast<std::size_t>(h.size());
  std::vector<char> in_w(n, 0);
  for (VertexId v : w) {
    if (!t.contains(v)) throw InvalidArgument("w is not a subset of the tree");
    in_w[h.require_index(v)] = 1;
  }
  for (VertexId v : w)
    if (auto p = t.parent(v); p && !in_w[h.require_index(*p)])
      throw InvalidArgument("w is not down-closed");

  ComponentClassification out;
  for (auto& comp : components_without(h, in_w)) {
    ClassifiedComponent cc;
    cc.vertices = to_ids(h, comp);
    std::vector<int> minimal;
    bool meets_tree = false;
    for (int v : comp) {
      if (!e.in_tree(v)) continue;
      meets_tree = true;
      if (e.parent(v) < 0 || in_w[e.parent(v)]) minimal.push_back(v);
    }
    if (!meets_tree) {
      cc.kind = ComponentKind::AvoidsTree;
    } else if (minimal.size() != 1) {
      cc.kind = ComponentKind::Violation;
      cc.problem = std::to_string(minimal.size()) + " minimal tree vertices";
    } else {
      cc.minimal = h.id(minimal[0]);
      if (e.generalized_up_closure(minimal[0]) == comp) {
        cc.kind = ComponentKind::Spanned;
      } else {
        cc.kind = ComponentKind::Violation;
        cc.problem = "component differs from the generalized up-closure";
      }
    }
    if (cc.kind == ComponentKind::Violation) out.holds = false;
    out.components.push_back(std::move(cc));
  }
  return out;
}

CofinalityResult contains_cofinally(const RootedTree& t, const std::vector<VertexId>& u,
                                    const std::set<VertexId>& boundary_leaves) {
  std::set<VertexId> uset(u.begin(), u.end());
  for (VertexId v : uset)
    if (!t.contains(v)) throw InvalidArgument("U is not contained in the tree");

  // Post-order: has_u / has_boundary per vertex.
  std::unordered_map<VertexId, std::pair<bool, bool>> info;
  std::vector<std::pair<VertexId, bool>> stack{{t.root(), false}};
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    if (!done) {
      stack.push_back({v, true});
      for (VertexId c : t.children(v)) stack.push_back({c, false});
      continue;
    }
    bool has_u = uset.count(v) != 0;
    bool has_b = boundary_leaves.count(v) != 0;
    for (VertexId c : t.children(v)) {
      has_u = has_u || info[c].first;
      has_b = has_b || info[c].second;
    }
    info[v] = {has_u, has_b};
  }

  CofinalityResult r;
  for (VertexId v : t.vertices()) {
    auto [has_u, has_b] = info[v];
    if (has_u) continue;
    if (has_b) {
      r.exempt.push_back(v);
      if (r.verdict == Verdict::Holds) r.verdict = Verdict::HoldsUpToBoundary;
    } else {
      r.verdict = Verdict::Fails;
      r.witness = v;
      return r;
    }
  }
  return r;
}

}  // namespace combdual
