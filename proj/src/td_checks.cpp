#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "combdual/tree_decomp.hpp"

namespace combdual {

namespace {

std::string join(const std::vector<VertexId>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

std::vector<VertexId> intersect(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool holds(const std::vector<VertexId>& sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool induced_connected(const FiniteTruncation& h, const std::vector<VertexId>& set) {
  if (set.size() <= 1) return true;
  std::unordered_set<int> inside;
  for (VertexId v : set) inside.insert(h.require_index(v));
  std::unordered_set<int> seen{h.require_index(set.front())};
  std::deque<int> queue{h.require_index(set.front())};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : h.neighbors(v))
      if (inside.count(w) && seen.insert(w).second) queue.push_back(w);
  }
  return seen.size() == inside.size();
}

// Comparable edges among those with include[t] set must have disjoint
// separators. Walks root paths keeping the owner of each vertex in scope.
TdCheck upwards_disjoint(const RootedTree& tree, const std::vector<std::vector<VertexId>>& sep,
                         const std::vector<char>& include) {
  TdCheck r;
  std::unordered_map<VertexId, NodeId> owner;
  struct Frame {
    NodeId node;
    bool leaving;
  };
  std::vector<Frame> stack{{tree.root(), false}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const bool counted = f.node != tree.root() && include[f.node];
    if (f.leaving) {
      if (counted)
        for (VertexId v : sep[f.node]) owner.erase(v);
      continue;
    }
    if (counted) {
      for (VertexId v : sep[f.node]) {
        auto it = owner.find(v);
        if (it != owner.end()) {
          r.ok = false;
          r.nodes = {it->second, f.node};
          r.vertices = {v};
          r.witness = "edges below nodes " + std::to_string(it->second) + " and " +
                      std::to_string(f.node) + " share vertex " + std::to_string(v);
          return r;
        }
      }
      for (VertexId v : sep[f.node]) owner.emplace(v, f.node);
    }
    stack.push_back({f.node, true});
    for (NodeId c : tree.children(f.node)) stack.push_back({c, false});
  }
  return r;
}

std::vector<std::vector<VertexId>> all_separators(const TreeDecomposition& td) {
  std::vector<std::vector<VertexId>> sep(td.size());
  for (NodeId t = 1; t < td.size(); ++t) sep[t] = separator_of(td, t);
  return sep;
}

}  // namespace

Separation SNTree::alpha(NodeId t) const {
  if (t == 0 || t >= size()) throw InvalidArgument("node " + std::to_string(t) + " has no incoming edge");
  Separation s;
  s.side_b = b_side[t];
  s.separator = separator[t];
  std::vector<VertexId> strict_b;
  std::set_difference(s.side_b.begin(), s.side_b.end(), s.separator.begin(), s.separator.end(),
                      std::back_inserter(strict_b));
  std::set_difference(host.begin(), host.end(), strict_b.begin(), strict_b.end(),
                      std::back_inserter(s.side_a));
  return s;
}

AxiomReport verify_td_axioms(const FiniteTruncation& h, const TreeDecomposition& td) {
  AxiomReport r;
  std::vector<std::vector<NodeId>> homes(static_cast<std::size_t>(h.size()));
  for (NodeId t = 0; t < td.size(); ++t)
    for (VertexId v : td.parts[t]) homes[static_cast<std::size_t>(h.require_index(v))].push_back(t);

  for (int v = 0; v < h.size() && r.covers_vertices.ok; ++v)
    if (homes[static_cast<std::size_t>(v)].empty()) {
      r.covers_vertices.ok = false;
      r.covers_vertices.vertices = {h.id(v)};
      r.covers_vertices.witness = "vertex " + std::to_string(h.id(v)) + " lies in no part";
    }

  for (const Edge& e : h.edges()) {
    const auto& ha = homes[static_cast<std::size_t>(h.require_index(e.first))];
    bool covered = std::any_of(ha.begin(), ha.end(),
                               [&](NodeId t) { return holds(td.parts[t], e.second); });
    if (!covered) {
      r.covers_edges.ok = false;
      r.covers_edges.vertices = {e.first, e.second};
      r.covers_edges.witness = "edge " + std::to_string(e.first) + "-" +
                               std::to_string(e.second) + " lies in no part";
      break;
    }
  }

  // The nodes holding v form a subtree iff exactly one of them has no
  // parent holding v.
  for (int v = 0; v < h.size(); ++v) {
    const auto& hv = homes[static_cast<std::size_t>(v)];
    std::vector<NodeId> tops;
    for (NodeId t : hv) {
      auto p = td.tree.parent(t);
      if (!p || !holds(td.parts[*p], h.id(v))) tops.push_back(t);
    }
    if (tops.size() > 1) {
      r.subtree.ok = false;
      r.subtree.vertices = {h.id(v)};
      r.subtree.nodes = tops;
      r.subtree.witness = "nodes holding vertex " + std::to_string(h.id(v)) +
                          " are disconnected (tops " + join(tops) + ")";
      break;
    }
  }
  return r;
}

std::vector<VertexId> separator_of(const TreeDecomposition& td, NodeId t) {
  auto p = td.tree.parent(t);
  if (!p) throw InvalidArgument("node " + std::to_string(t) + " is the root");
  return intersect(td.parts[*p], td.parts[t]);
}

TdCheck check_upwards_disjoint(const SNTree& snt) {
  return upwards_disjoint(snt.tree, snt.separator, std::vector<char>(snt.size(), 1));
}

TdCheck check_upwards_disjoint(const TreeDecomposition& td) {
  return upwards_disjoint(td.tree, all_separators(td), std::vector<char>(td.size(), 1));
}

TdCheck check_pairwise_disjoint(const TreeDecomposition& td) {
  TdCheck r;
  std::unordered_map<VertexId, NodeId> owner;
  for (NodeId t = 1; t < td.size(); ++t)
    for (VertexId v : separator_of(td, t)) {
      auto [it, fresh] = owner.emplace(v, t);
      if (!fresh) {
        r.ok = false;
        r.nodes = {it->second, t};
        r.vertices = {v};
        r.witness = "edges below nodes " + std::to_string(it->second) + " and " +
                    std::to_string(t) + " share vertex " + std::to_string(v);
        return r;
      }
    }
  return r;
}

TdCheck check_connected_separators(const FiniteTruncation& h, const TreeDecomposition& td) {
  TdCheck r;
  for (NodeId t = 1; t < td.size(); ++t) {
    auto s = separator_of(td, t);
    if (!induced_connected(h, s)) {
      r.ok = false;
      r.nodes = {t};
      r.vertices = s;
      r.witness = "separator " + join(s) + " below node " + std::to_string(t) + " is disconnected";
      return r;
    }
  }
  return r;
}

TdCheck check_upwards_connected(const FiniteTruncation& h, const SNTree& snt) {
  TdCheck r;
  for (NodeId t = 1; t < snt.size(); ++t)
    if (!induced_connected(h, snt.b_side[t])) {
      r.ok = false;
      r.nodes = {t};
      r.witness = "B side of the edge below node " + std::to_string(t) + " is disconnected";
      return r;
    }
  return r;
}

TdCheck check_ascending_paths(const SNTree& snt, const RootedTree& t) {
  TdCheck r;
  for (NodeId n = 1; n < snt.size(); ++n) {
    std::vector<VertexId> s = snt.separator[n];
    bool ok = !s.empty() && std::all_of(s.begin(), s.end(), [&](VertexId v) { return t.contains(v); });
    if (ok) {
      std::sort(s.begin(), s.end(), [&](VertexId a, VertexId b) { return t.level(a) < t.level(b); });
      for (std::size_t i = 1; i < s.size() && ok; ++i) ok = t.parent(s[i]) == s[i - 1];
    }
    if (!ok) {
      r.ok = false;
      r.nodes = {n};
      r.vertices = snt.separator[n];
      r.witness = "separator " + join(snt.separator[n]) + " below node " + std::to_string(n) +
                  " is not an ascending tree path";
      return r;
    }
  }
  return r;
}

TdCheck check_separations(const FiniteTruncation& h, const SNTree& snt) {
  TdCheck r;
  for (NodeId n = 1; n < snt.size() && r.ok; ++n) {
    const auto& b = snt.b_side[n];
    const auto& s = snt.separator[n];
    if (!std::includes(b.begin(), b.end(), s.begin(), s.end())) {
      r.ok = false;
      r.witness = "separator below node " + std::to_string(n) + " is not inside its B side";
    }
    for (VertexId v : b) {
      if (!r.ok || holds(s, v)) continue;
      for (int w : h.neighbors(h.require_index(v)))
        if (!holds(b, h.id(w))) {
          r.ok = false;
          r.nodes = {n};
          r.vertices = {v, h.id(w)};
          r.witness = "edge " + std::to_string(v) + "-" + std::to_string(h.id(w)) +
                      " crosses the separation below node " + std::to_string(n);
          break;
        }
    }
    auto p = snt.tree.parent(n);
    if (r.ok && p && *p != snt.tree.root()) {
      const auto& pb = snt.b_side[*p];
      if (!std::includes(pb.begin(), pb.end(), b.begin(), b.end())) {
        r.ok = false;
        r.nodes = {*p, n};
        r.witness = "B side below node " + std::to_string(n) + " is not inside its parent's";
      }
    }
  }
  return r;
}

TreeDecomposition td_from_sntree(const SNTree& snt) {
  TreeDecomposition td;
  td.tree = snt.tree;
  td.labels = snt.labels;
  td.frontier = snt.frontier;
  td.parts.resize(snt.size());
  for (NodeId t = 0; t < snt.size(); ++t) {
    std::vector<VertexId> part = t == 0 ? snt.host : snt.b_side[t];
    for (NodeId c : snt.tree.children(t)) {
      std::vector<VertexId> strict;
      std::set_difference(snt.b_side[c].begin(), snt.b_side[c].end(), snt.separator[c].begin(),
                          snt.separator[c].end(), std::back_inserter(strict));
      std::vector<VertexId> rest;
      std::set_difference(part.begin(), part.end(), strict.begin(), strict.end(),
                          std::back_inserter(rest));
      part = std::move(rest);
    }
    td.parts[t] = std::move(part);
  }
  return td;
}

TdCheck check_essential_disjointness(const TreeDecomposition& td, int min_gap) {
  TdCheck r;
  if (!td.f_witness) {
    r.ok = false;
    r.witness = "no F witness";
    return r;
  }
  std::vector<char> in_f(td.size(), 0);
  for (NodeId t : *td.f_witness) in_f.at(t) = 1;
  r = upwards_disjoint(td.tree, all_separators(td), in_f);
  if (!r.ok) return r;

  // run[t]: F-free edges on the root path ending at t, restarting after an
  // F edge or an unknown (frontier) edge.
  std::vector<int> run(td.size(), 0);
  std::size_t known = 0, edges = 0;
  bool long_path = false;
  std::vector<NodeId> order{td.tree.root()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId t = order[i];
    for (NodeId c : td.tree.children(t)) order.push_back(c);
    if (t == td.tree.root()) continue;
    ++edges;
    const NodeId p = *td.tree.parent(t);
    const bool unknown = td.frontier[t] || td.frontier[p];
    if (unknown || in_f[t]) {
      run[t] = 0;
      known += unknown ? 0 : 1;
      continue;
    }
    ++known;
    run[t] = run[p] + 1;
    if (td.tree.level(t) >= min_gap) long_path = true;
    if (run[t] >= min_gap) {
      r.ok = false;
      r.nodes = {t};
      r.witness = "root path ending at node " + std::to_string(t) + " has " +
                  std::to_string(run[t]) + " consecutive edges outside F";
      return r;
    }
  }
  r.coverage = edges ? static_cast<double>(known) / static_cast<double>(edges) : 1.0;
  r.vacuous = td.tree.depth() < min_gap && !long_path;
  return r;
}

TdCheck check_finite_parts(const TreeDecomposition& td, const RootedTree& t,
                           const std::vector<VertexId>& u) {
  TdCheck r;
  for (NodeId n = 0; n < td.size(); ++n) {
    const auto& part = td.parts[n];
    std::vector<VertexId> in_u = intersect(part, u);
    bool chain = std::all_of(in_u.begin(), in_u.end(), [&](VertexId a) {
      return t.contains(a) && std::all_of(in_u.begin(), in_u.end(), [&](VertexId b) {
               return t.contains(b) && t.comparable(a, b);
             });
    });
    if (!chain) {
      r.ok = false;
      r.nodes = {n};
      r.vertices = in_u;
      r.witness = "part at node " + std::to_string(n) + " meets U outside a chain";
      return r;
    }
    if (td.tree.children(n).empty()) continue;
    // A non-leaf part inside a chain of t is finite in the full graph.
    bool in_chain = std::all_of(part.begin(), part.end(), [&](VertexId a) {
      return t.contains(a) && std::all_of(part.begin(), part.end(),
                                          [&](VertexId b) { return t.contains(b) && t.comparable(a, b); });
    });
    if (!in_chain) {
      r.ok = false;
      r.nodes = {n};
      r.witness = "non-leaf part at node " + std::to_string(n) + " is not a chain of the tree";
      return r;
    }
  }
  return r;
}

}  // namespace combdual
