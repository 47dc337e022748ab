#include "combdual/star_comb.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "combdual/disjoint_paths.hpp"

namespace combdual {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Found: return "found";
    case OutcomeKind::Exhausted: return "exhausted";
    case OutcomeKind::ImpossibleByBound: return "impossible-by-bound";
  }
  return "?";
}

namespace {

std::vector<char> mark_of(const FiniteTruncation& h, const std::vector<VertexId>& u) {
  std::vector<char> mark(static_cast<std::size_t>(h.size()), 0);
  for (VertexId v : u) {
    auto i = h.index_of(v);
    if (!i) throw InvalidArgument("vertex " + std::to_string(v) + " of U is not in the truncation");
    mark[*i] = 1;
  }
  return mark;
}

Path ids_of(const FiniteTruncation& h, const std::vector<int>& p) {
  Path out;
  out.reserve(p.size());
  for (int i : p) out.push_back(h.id(i));
  return out;
}

int degree(const FiniteTruncation& h, int v) { return static_cast<int>(h.neighbors(v).size()); }

// BFS parent: the lowest-index neighbour one layer closer to the root.
std::vector<int> bfs_parents(const FiniteTruncation& h) {
  std::vector<int> parent(static_cast<std::size_t>(h.size()), -1);
  for (int v = 0; v < h.size(); ++v)
    for (int w : h.neighbors(v))
      if (h.distance(w) + 1 == h.distance(v)) {
        parent[v] = w;
        break;
      }
  return parent;
}

StarCert make_star(const FiniteTruncation& h, int center, const std::vector<std::vector<int>>& paths) {
  StarCert c;
  c.center = h.id(center);
  for (const auto& p : paths) {
    c.leaf_paths.push_back(ids_of(h, p));
    c.attachment.push_back(h.id(p.back()));
  }
  return c;
}

// Teeth for a fixed spine: trivial teeth on the spine, then disjoint paths
// from the remaining spine vertices to W off the spine.
CombCert teeth_for_spine(const FiniteTruncation& h, const std::vector<int>& spine,
                         const std::vector<char>& in_w, int k, Budget& budget) {
  CombCert c;
  c.spine_prefix = ids_of(h, spine);
  c.spine_reaches_boundary = !spine.empty() && h.on_boundary(spine.back());
  std::vector<char> on_spine(static_cast<std::size_t>(h.size()), 0);
  std::vector<char> blocked(static_cast<std::size_t>(h.size()), 0);
  std::vector<int> sources;
  for (int v : spine) {
    on_spine[v] = 1;
    if (in_w[v]) {
      blocked[v] = 1;
      c.teeth_paths.push_back({h.id(v)});
      c.teeth.push_back(h.id(v));
    } else {
      sources.push_back(v);
    }
  }
  const int need = k - static_cast<int>(c.teeth.size());
  if (need <= 0) return c;
  std::vector<int> sinks;
  for (int v = 0; v < h.size(); ++v)
    if (in_w[v] && !on_spine[v]) sinks.push_back(v);
  auto ps = linkage_paths(h, sources, sinks, need, blocked, budget);
  for (const auto& p : ps.paths) {
    c.teeth_paths.push_back(ids_of(h, p));
    c.teeth.push_back(h.id(p.back()));
  }
  return c;
}

// Greedy walk from `start`: at each step the lowest unvisited neighbour,
// or, with `prefer_w`, the lowest unvisited W-neighbour that is not a dead
// end.
std::vector<int> greedy_walk(const FiniteTruncation& h, std::vector<int> prefix,
                             const std::vector<char>& in_w, bool prefer_w) {
  std::vector<char> visited(static_cast<std::size_t>(h.size()), 0);
  for (int v : prefix) visited[v] = 1;
  int cur = prefix.back();
  for (;;) {
    int next = -1;
    if (prefer_w)
      for (int w : h.neighbors(cur)) {
        if (visited[w] || !in_w[w]) continue;
        bool open = false;
        for (int x : h.neighbors(w))
          if (!visited[x] && x != w) open = true;
        if (open) {
          next = w;
          break;
        }
      }
    if (next < 0)
      for (int w : h.neighbors(cur))
        if (!visited[w]) {
          next = w;
          break;
        }
    if (next < 0) break;
    visited[next] = 1;
    prefix.push_back(next);
    cur = next;
  }
  return prefix;
}

std::vector<int> geodesic_then_walk(const FiniteTruncation& h, int start,
                                    const std::vector<int>& parent, const std::vector<char>& in_w) {
  std::vector<int> path{start};
  for (int v = parent[start]; v >= 0; v = parent[v]) path.push_back(v);
  return greedy_walk(h, path, in_w, false);
}

std::vector<int> spread_sample(const std::vector<int>& items, std::size_t count) {
  std::vector<int> out;
  for (std::size_t i = 0; i < std::min(count, items.size()); ++i) out.push_back(items[i]);
  if (items.size() > count)
    for (std::size_t i = 1; i <= count; ++i) out.push_back(items[i * (items.size() - 1) / count]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// Stars ---------------------------------------------------------------------

StarOutcome find_star(const FiniteTruncation& h, const std::vector<VertexId>& u, int k,
                      Budget& budget) {
  if (u.empty()) throw InvalidArgument("U is empty");
  if (k < 2) throw InvalidArgument("star scale must be at least 2");
  const auto in_u = mark_of(h, u);
  StarOutcome out;
  if (auto d = h.hints().degree_bound; d && static_cast<int>(*d) < k) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "degree bound " + std::to_string(*d) + " < k";
    return out;
  }
  std::vector<int> sinks;
  for (int v = 0; v < h.size(); ++v)
    if (in_u[v]) sinks.push_back(v);
  const std::vector<char> none(static_cast<std::size_t>(h.size()), 0);
  for (int c = 0; c < h.size(); ++c) {
    if (degree(h, c) < k) continue;
    if (static_cast<int>(sinks.size()) - (in_u[c] ? 1 : 0) < k) continue;
    auto ps = fan_paths(h, c, sinks, k, none, budget);
    out.best = std::max(out.best, ps.value());
    if (ps.value() >= k) {
      out.kind = OutcomeKind::Found;
      out.cert = make_star(h, c, ps.paths);
      return out;
    }
    if (ps.budget_exceeded) {
      out.budget_exceeded = true;
      out.reason = "node budget exceeded";
      return out;
    }
  }
  out.reason = "no centre with k disjoint paths to U in the truncation";
  return out;
}

// Combs ---------------------------------------------------------------------

CombOutcome find_comb(const FiniteTruncation& h, const std::vector<VertexId>& u, int k,
                      Budget& budget) {
  if (u.empty()) throw InvalidArgument("U is empty");
  if (k < 1) throw InvalidArgument("comb scale must be at least 1");
  const auto in_w = mark_of(h, u);
  CombOutcome out;
  if (auto d = h.hints().max_depth) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "every vertex within distance " + std::to_string(*d) + " of the root: no ray";
    return out;
  }
  std::vector<int> boundary;
  for (int v = 0; v < h.size(); ++v)
    if (h.on_boundary(v) && h.radius() > 0) boundary.push_back(v);
  if (boundary.empty()) {
    out.reason = "truncation has no boundary for a spine to reach";
    return out;
  }

  const auto parent = bfs_parents(h);
  std::vector<std::vector<int>> spines;
  for (int b : spread_sample(boundary, 8)) {
    spines.push_back(geodesic_then_walk(h, b, parent, in_w));
    spines.push_back(greedy_walk(h, {b}, in_w, false));
    spines.push_back(greedy_walk(h, {b}, in_w, true));
  }
  for (auto& s : spines) {
    std::reverse(s.begin(), s.end());
    if (!budget.charge(s.size())) break;
    CombCert c = teeth_for_spine(h, s, in_w, k, budget);
    const int got = static_cast<int>(c.teeth.size());
    out.best = std::max(out.best, got);
    if (got >= k) {
      out.kind = OutcomeKind::Found;
      out.cert = std::move(c);
      return out;
    }
    if (budget.exceeded()) break;
  }
  out.budget_exceeded = budget.exceeded();
  out.reason = out.budget_exceeded ? "node budget exceeded"
                                   : "no boundary-reaching spine carries k teeth in the truncation";
  return out;
}

CombOutcome comb_on_spine(const FiniteTruncation& h, const Path& spine,
                          const std::vector<VertexId>& u, int k, Budget& budget) {
  if (k < 1) throw InvalidArgument("comb scale must be at least 1");
  const auto in_w = mark_of(h, u);
  std::vector<int> idx;
  for (std::size_t i = 0; i < spine.size(); ++i) {
    idx.push_back(h.require_index(spine[i]));
    if (i > 0 && !h.adjacent(idx[i - 1], idx[i])) throw InvalidArgument("spine is not a path");
  }
  CombOutcome out;
  CombCert c = teeth_for_spine(h, idx, in_w, k, budget);
  out.best = static_cast<int>(c.teeth.size());
  if (out.best >= k) {
    out.kind = OutcomeKind::Found;
    out.cert = std::move(c);
    return out;
  }
  out.budget_exceeded = budget.exceeded();
  out.reason = "the spine carries " + std::to_string(out.best) + " teeth in the truncation";
  return out;
}

// Fans ----------------------------------------------------------------------

FanOutcome find_fan(const FiniteTruncation& h, VertexId v, const Path& prefix, int k,
                    Budget& budget) {
  if (k < 1) throw InvalidArgument("fan scale must be at least 1");
  if (prefix.empty()) throw InvalidArgument("ray prefix is empty");
  std::vector<int> idx;
  std::vector<char> seen(static_cast<std::size_t>(h.size()), 0);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    auto p = h.index_of(prefix[i]);
    if (!p) throw InvalidArgument("ray prefix leaves the truncation");
    if (seen[*p]) throw InvalidArgument("ray prefix repeats a vertex");
    if (i > 0 && !h.adjacent(idx.back(), *p)) throw InvalidArgument("ray prefix is not a path");
    if (i > 0 && prefix[i] == v) throw InvalidArgument("apex is an interior vertex of the prefix");
    seen[*p] = 1;
    idx.push_back(*p);
  }
  const int apex = h.require_index(v);

  FanOutcome out;
  if (auto d = h.hints().degree_bound; d && static_cast<int>(*d) < k) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "degree bound " + std::to_string(*d) + " < k";
    return out;
  }
  if (auto d = h.exact_degree(apex); d && *d < k) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "apex has degree " + std::to_string(*d) + " < k";
    return out;
  }
  std::vector<int> sinks;
  for (int p : idx)
    if (p != apex) sinks.push_back(p);
  const std::vector<char> none(static_cast<std::size_t>(h.size()), 0);
  auto ps = fan_paths(h, apex, sinks, k, none, budget);
  out.best = ps.value();
  if (ps.value() >= k) {
    out.kind = OutcomeKind::Found;
    out.cert = FanCert{v, prefix, {}};
    for (const auto& p : ps.paths) out.cert->fan_paths.push_back(ids_of(h, p));
    return out;
  }
  out.budget_exceeded = ps.budget_exceeded;
  out.reason = ps.budget_exceeded ? "node budget exceeded"
                                  : "maximum fan in the truncation has " +
                                        std::to_string(ps.value()) + " paths";
  return out;
}

// Dominated combs -----------------------------------------------------------

DominatedCombOutcome find_dominated_comb(const FiniteTruncation& h,
                                         const std::vector<VertexId>& u, int k,
                                         Budget& budget) {
  if (u.empty()) throw InvalidArgument("U is empty");
  if (k < 2) throw InvalidArgument("dominated comb scale must be at least 2");
  const auto in_u = mark_of(h, u);
  DominatedCombOutcome out;
  const auto& hints = h.hints();
  if (hints.max_depth) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "rayless: no comb at all";
    return out;
  }
  if (hints.locally_finite) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "locally finite: no vertex can centre an infinite star";
    return out;
  }
  std::vector<int> sinks;
  for (int v = 0; v < h.size(); ++v)
    if (in_u[v]) sinks.push_back(v);
  const std::vector<char> none(static_cast<std::size_t>(h.size()), 0);
  for (int c = 0; c < h.size(); ++c) {
    if (degree(h, c) < k) continue;
    auto star = fan_paths(h, c, sinks, h.size(), none, budget);
    if (star.budget_exceeded) break;
    if (star.value() < k) continue;
    std::vector<VertexId> leaves;
    for (const auto& p : star.paths) leaves.push_back(h.id(p.back()));
    std::sort(leaves.begin(), leaves.end());
    auto comb = find_comb(h, leaves, k, budget);
    out.best = std::max(out.best, comb.best);
    if (!comb.found()) {
      if (comb.budget_exceeded) break;
      continue;
    }
    DominatedCombCert cert;
    cert.comb = std::move(*comb.cert);
    cert.star = make_star(h, c, star.paths);
    for (VertexId t : cert.comb.teeth)
      if (std::binary_search(leaves.begin(), leaves.end(), t)) cert.common.push_back(t);
    std::sort(cert.common.begin(), cert.common.end());
    out.kind = OutcomeKind::Found;
    out.cert = std::move(cert);
    return out;
  }
  out.budget_exceeded = budget.exceeded();
  out.reason = out.budget_exceeded ? "node budget exceeded"
                                   : "no star centre whose leaves carry a comb at scale k";
  return out;
}

// Rayless trees and the dichotomy -------------------------------------------

namespace {

// For each tree vertex, the nearest U-vertex in its up-closure (lowest
// level, then lowest id), if any.
std::unordered_map<VertexId, std::optional<VertexId>> nearest_u_above(
    const RootedTree& t, const std::function<bool(VertexId)>& in_u) {
  std::unordered_map<VertexId, std::optional<VertexId>> best;
  std::vector<VertexId> order;
  std::vector<VertexId> stack{t.root()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (VertexId c : t.children(v)) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    std::optional<VertexId> b;
    if (in_u(v)) b = v;
    for (VertexId c : t.children(v)) {
      auto bc = best[c];
      if (!bc) continue;
      if (!b || t.level(*bc) < t.level(*b) || (t.level(*bc) == t.level(*b) && *bc < *b)) b = bc;
    }
    best[v] = b;
  }
  return best;
}

// Tree path from `from` up to its descendant `to`.
Path tree_path_up(const RootedTree& t, VertexId from, VertexId to) {
  Path p;
  for (VertexId x = to;; x = *t.parent(x)) {
    p.push_back(x);
    if (x == from) break;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

StarOutcome rayless_tree_star(const RootedTree& t, const std::vector<VertexId>& u, int k) {
  if (u.empty()) throw InvalidArgument("U is empty");
  if (k < 2) throw InvalidArgument("star scale must be at least 2");
  std::set<VertexId> uset(u.begin(), u.end());
  for (VertexId v : uset)
    if (!t.contains(v)) throw InvalidArgument("U is not contained in the tree");
  auto nearest = nearest_u_above(t, [&](VertexId v) { return uset.count(v) != 0; });
  StarOutcome out;
  for (VertexId v : t.vertices()) {
    std::vector<VertexId> meeting;
    for (VertexId c : t.children(v))
      if (nearest[c]) meeting.push_back(c);
    out.best = std::max(out.best, static_cast<int>(meeting.size()));
    if (static_cast<int>(meeting.size()) < k) continue;
    StarCert cert;
    cert.center = v;
    for (int i = 0; i < k; ++i) {
      Path p = tree_path_up(t, v, *nearest[meeting[i]]);
      cert.attachment.push_back(p.back());
      cert.leaf_paths.push_back(std::move(p));
    }
    out.kind = OutcomeKind::Found;
    out.cert = std::move(cert);
    return out;
  }
  out.reason = "no tree vertex has k child subtrees meeting U";
  return out;
}

DichotomyOutcome star_comb_dichotomy(const FiniteTruncation& h, const std::vector<VertexId>& u,
                                     int k, Budget& budget) {
  if (u.empty()) throw InvalidArgument("U is empty");
  if (k < 2) throw InvalidArgument("dichotomy scale must be at least 2");
  const auto in_u = mark_of(h, u);
  DichotomyOutcome out;
  if (std::set<VertexId>(u.begin(), u.end()).size() < 2) {
    out.kind = OutcomeKind::ImpossibleByBound;
    out.reason = "a star needs two leaves and a comb needs two teeth";
    return out;
  }

  const auto parent = bfs_parents(h);
  RootedTree tree(h.root());
  {
    std::vector<int> order(static_cast<std::size_t>(h.size()));
    for (int i = 0; i < h.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return h.distance(a) < h.distance(b); });
    for (int v : order)
      if (parent[v] >= 0) tree.add_child(h.id(parent[v]), h.id(v));
  }
  auto in_u_id = [&](VertexId v) { return in_u[h.require_index(v)] != 0; };

  if (auto star = rayless_tree_star(tree, u, k); star.found()) {
    out.kind = OutcomeKind::Found;
    out.star = std::move(star.cert);
    return out;
  }

  // Heavy path: descend into the child subtree with the most U-vertices.
  std::unordered_map<VertexId, int> weight;
  {
    auto verts = tree.vertices();
    std::stable_sort(verts.begin(), verts.end(),
                     [&](VertexId a, VertexId b) { return tree.level(a) > tree.level(b); });
    for (VertexId v : verts) {
      int w = in_u_id(v) ? 1 : 0;
      for (VertexId c : tree.children(v)) w += weight[c];
      weight[v] = w;
    }
  }
  auto nearest = nearest_u_above(tree, in_u_id);
  Path spine{tree.root()};
  for (;;) {
    VertexId best = 0;
    int bw = 0;
    for (VertexId c : tree.children(spine.back()))
      if (weight[c] > bw) {
        bw = weight[c];
        best = c;
      }
    if (bw == 0) break;
    spine.push_back(best);
  }
  CombCert comb;
  comb.spine_prefix = spine;
  comb.spine_reaches_boundary = h.on_boundary(h.require_index(spine.back()));
  for (std::size_t i = 0; i < spine.size(); ++i) {
    VertexId v = spine[i];
    if (in_u_id(v)) {
      comb.teeth_paths.push_back({v});
      comb.teeth.push_back(v);
      continue;
    }
    for (VertexId c : tree.children(v)) {
      if (i + 1 < spine.size() && c == spine[i + 1]) continue;
      if (!nearest[c]) continue;
      Path p = tree_path_up(tree, v, *nearest[c]);
      comb.teeth.push_back(p.back());
      comb.teeth_paths.push_back(std::move(p));
      break;
    }
  }
  if (static_cast<int>(comb.teeth.size()) >= k) {
    out.kind = OutcomeKind::Found;
    out.comb = std::move(comb);
    return out;
  }

  if (auto s = find_star(h, u, k, budget); s.found()) {
    out.kind = OutcomeKind::Found;
    out.star = std::move(s.cert);
    return out;
  }
  if (auto c = find_comb(h, u, k, budget); c.found()) {
    out.kind = OutcomeKind::Found;
    out.comb = std::move(c.cert);
    return out;
  }
  out.reason = budget.exceeded() ? "node budget exceeded"
                                 : "neither a star nor a comb at scale k in the truncation";
  return out;
}

}  // namespace combdual
