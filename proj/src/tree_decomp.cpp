#include "combdual/tree_decomp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "combdual/jung.hpp"

namespace combdual {

namespace {

std::vector<VertexId> ids_of(const FiniteTruncation& h, const std::vector<int>& idx) {
  std::vector<VertexId> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(h.id(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> unite(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// The normal tree with one extra leaf per outside component, hung from the
// component's top. Parts are left empty.
struct Skeleton {
  TreeDecomposition td;
  std::vector<int> host_of;  // node -> host index (tree vertex) or -1
  std::vector<int> comp_of;  // node -> outside component or -1
  std::unordered_map<int, NodeId> node_of;  // tree vertex (host index) -> node
};

Skeleton skeleton(const Embedding& e) {
  const FiniteTruncation& h = e.host();
  Skeleton s;
  for (int v : e.preorder()) {
    const NodeId n = s.host_of.size();
    s.node_of[v] = n;
    s.host_of.push_back(v);
    s.comp_of.push_back(-1);
    s.td.labels.push_back("v:" + std::to_string(h.id(v)));
    if (n > 0) s.td.tree.add_child(s.node_of.at(e.parent(v)), n);
  }
  for (std::size_t c = 0; c < e.outside().size(); ++c) {
    const auto& comp = e.outside()[c];
    if (!comp.chain || comp.top < 0)
      throw InvalidArgument("component at " + std::to_string(h.id(comp.vertices.front())) +
                            " has no chain neighbourhood in the tree");
    const NodeId n = s.host_of.size();
    s.host_of.push_back(-1);
    s.comp_of.push_back(static_cast<int>(c));
    s.td.labels.push_back("C:" + std::to_string(h.id(comp.vertices.front())));
    s.td.tree.add_child(s.node_of.at(comp.top), n);
  }
  s.td.parts.resize(s.host_of.size());
  s.td.frontier.assign(s.host_of.size(), 0);
  return s;
}

// T-paths of a normal tree as (lower, upper) endpoint pairs: chords, and
// for every outside component the lowest and highest vertex of its chain
// neighbourhood (the other pairs through it are dominated by that one).
std::vector<std::pair<int, int>> tree_links(const Embedding& e) {
  const FiniteTruncation& h = e.host();
  std::vector<std::pair<int, int>> links;
  for (int a : e.preorder())
    for (int b : h.neighbors(a)) {
      if (!e.in_tree(b) || b < a || e.parent(a) == b || e.parent(b) == a) continue;
      if (!e.comparable(a, b))
        throw InvalidArgument("tree is not normal: chord " + std::to_string(h.id(a)) + "-" +
                              std::to_string(h.id(b)));
      links.emplace_back(e.level(a) < e.level(b) ? a : b, e.level(a) < e.level(b) ? b : a);
    }
  for (const auto& c : e.outside()) {
    if (!c.chain) throw InvalidArgument("component neighbourhood is not a chain");
    if (c.neighbourhood.size() >= 2) links.emplace_back(c.neighbourhood.front(), c.top);
  }
  return links;
}

}  // namespace

TreeDecomposition thm33_construct(const FiniteTruncation& h, const RootedTree& t) {
  Embedding e(h, t);
  Skeleton s = skeleton(e);
  for (NodeId n = 0; n < s.td.size(); ++n) {
    if (s.host_of[n] >= 0) {
      s.td.parts[n] = ids_of(h, e.down_closure(s.host_of[n]));
    } else {
      const auto& c = e.outside()[static_cast<std::size_t>(s.comp_of[n])];
      s.td.parts[n] = unite(ids_of(h, e.down_closure(c.top)), ids_of(h, c.vertices));
    }
  }
  return std::move(s.td);
}

// Recursive S-tree ----------------------------------------------------------

Thm38Result thm38_construct(const FiniteTruncation& h, const RootedTree& t, int n_levels) {
  Embedding e(h, t);
  const auto links = tree_links(e);
  const auto open_leaves = boundary_leaves(e);
  auto beyond_ball = [&](int v) { return h.on_boundary(v) || open_leaves.count(h.id(v)) != 0; };

  Thm38Result r;
  SNTree& snt = r.snt;
  snt.host = h.ids();
  std::sort(snt.host.begin(), snt.host.end());
  snt.labels = {"root"};
  snt.separator = {{}};
  snt.b_side = {snt.host};
  snt.created_at = {0};
  snt.frontier = {0};
  std::vector<int> top_of{-1};  // node -> the maximal vertex of its separator

  std::vector<int> stamp(static_cast<std::size_t>(h.size()), -1);
  std::vector<NodeId> level{0};
  for (int step = 1; (n_levels <= 0 || step <= n_levels) && !level.empty(); ++step) {
    std::vector<NodeId> next;
    for (NodeId l : level) {
      if (snt.frontier[l]) continue;
      std::vector<int> ys = l == 0 ? std::vector<int>{e.root()} : e.children(top_of[l]);
      std::sort(ys.begin(), ys.end(), [&](int a, int b) { return h.id(a) < h.id(b); });
      for (int y : ys) {
        // Block every z below an upper end of a T-path from [y] into ⌊y⌋.
        const int token = y;
        for (auto [low, high] : links) {
          if (!e.is_ancestor(low, y) || !e.is_ancestor(y, high)) continue;
          for (int v = high; stamp[v] != token; v = e.parent(v)) {
            stamp[v] = token;
            if (v == y) break;
          }
        }
        std::vector<int> zs;
        bool incomplete = false;
        std::vector<int> stack{y};
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          if (stamp[v] != token) {
            zs.push_back(v);
            continue;
          }
          if (e.children(v).empty() && beyond_ball(v)) incomplete = true;
          for (int c : e.children(v)) stack.push_back(c);
        }
        if (incomplete) {
          snt.frontier[l] = 1;
          snt.frontier_notes.push_back("node " + std::to_string(l) + ": Z_y for y = " +
                                       std::to_string(h.id(y)) + " continues past the ball");
          continue;
        }
        std::sort(zs.begin(), zs.end(), [&](int a, int b) { return h.id(a) < h.id(b); });
        for (int z : zs) {
          std::vector<int> path;
          for (int v = z;; v = e.parent(v)) {
            path.push_back(v);
            if (v == y) break;
          }
          const NodeId n = snt.labels.size();
          snt.tree.add_child(l, n);
          snt.labels.push_back("t(" + std::to_string(l) + "," + std::to_string(h.id(y)) + "," +
                               std::to_string(h.id(z)) + ")");
          snt.separator.push_back(ids_of(h, path));
          snt.b_side.push_back(unite(snt.separator.back(), ids_of(h, e.generalized_up_closure(z))));
          snt.created_at.push_back(step);
          snt.frontier.push_back(beyond_ball(z) ? 1 : 0);
          if (snt.frontier.back())
            snt.frontier_notes.push_back("node " + std::to_string(n) + ": z = " +
                                         std::to_string(h.id(z)) + " lies at the ball's edge");
          top_of.push_back(z);
          next.push_back(n);
        }
      }
    }
    if (!next.empty()) r.levels_built = step;
    level = std::move(next);
  }
  r.td = td_from_sntree(snt);
  return r;
}

// Quotient by meeting separators --------------------------------------------

TreeDecomposition thm35_quotient(const SNTree& snt) {
  const TreeDecomposition base = td_from_sntree(snt);
  std::vector<NodeId> rep(snt.size());
  std::iota(rep.begin(), rep.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  for (NodeId s = 0; s < snt.size(); ++s) {
    std::unordered_map<VertexId, NodeId> seen;
    for (NodeId c : snt.tree.children(s))
      for (VertexId v : snt.separator[c]) {
        auto [it, fresh] = seen.emplace(v, c);
        if (!fresh) {
          NodeId a = find(it->second), b = find(c);
          if (a != b) rep[std::max(a, b)] = std::min(a, b);
        }
      }
  }

  // Node ids grow with depth, so classes in order of their least member
  // come parent first.
  TreeDecomposition q;
  std::unordered_map<NodeId, NodeId> class_id;
  for (NodeId t = 0; t < snt.size(); ++t) {
    const NodeId k = find(t);
    auto it = class_id.find(k);
    if (it == class_id.end()) {
      const NodeId id = q.labels.size();
      class_id.emplace(k, id);
      q.labels.push_back(base.labels[t]);
      q.parts.push_back(base.parts[t]);
      q.frontier.push_back(base.frontier[t]);
      if (t != 0) q.tree.add_child(class_id.at(find(*snt.tree.parent(t))), id);
    } else {
      q.labels[it->second] += "+" + base.labels[t];
      q.parts[it->second] = unite(q.parts[it->second], base.parts[t]);
      q.frontier[it->second] = q.frontier[it->second] || base.frontier[t];
    }
  }
  return q;
}

// Normal tree plus S-tree combination ---------------------------------------

TreeDecomposition thm2_construct(const FiniteTruncation& h, const RootedTree& t,
                                 const Thm38Result& r38) {
  Embedding e(h, t);
  Skeleton s = skeleton(e);
  const TreeDecomposition& w = r38.td;

  // x(v): the least node of the S-tree decomposition whose part holds v.
  // Node ids of that decomposition grow with depth.
  std::unordered_map<VertexId, NodeId> least;
  for (NodeId n = 0; n < w.size(); ++n)
    for (VertexId v : w.parts[n]) least.emplace(v, n);

  for (NodeId n = 0; n < s.td.size(); ++n) {
    if (s.host_of[n] < 0) continue;
    const int v = s.host_of[n];
    auto chain = ids_of(h, e.down_closure(v));
    auto it = least.find(h.id(v));
    if (it == least.end()) {
      s.td.parts[n] = chain;
      s.td.frontier[n] = 1;
      continue;
    }
    s.td.frontier[n] = w.frontier[it->second];
    const auto& part = w.parts[it->second];
    std::set_intersection(chain.begin(), chain.end(), part.begin(), part.end(),
                          std::back_inserter(s.td.parts[n]));
  }
  for (NodeId n = 0; n < s.td.size(); ++n) {
    if (s.comp_of[n] < 0) continue;
    const auto& c = e.outside()[static_cast<std::size_t>(s.comp_of[n])];
    const NodeId top = s.node_of.at(c.top);
    s.td.parts[n] = unite(ids_of(h, c.vertices), s.td.parts[top]);
    s.td.frontier[n] = s.td.frontier[top];
  }

  // F: for each S-tree edge e with separator path ending at t_e, the tree
  // edges from t_e up to the start vertices of separators directly above e.
  std::vector<NodeId> f;
  const SNTree& snt = r38.snt;
  for (NodeId c = 1; c < snt.size(); ++c) {
    if (*snt.tree.parent(c) == 0) continue;
    const auto& sep = snt.separator[c];
    const VertexId y = *std::min_element(sep.begin(), sep.end(), [&](VertexId a, VertexId b) {
      return t.level(a) < t.level(b);
    });
    f.push_back(s.node_of.at(h.require_index(y)));
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  s.td.f_witness = std::move(f);
  return std::move(s.td);
}

// Re-checks -----------------------------------------------------------------

namespace {

std::vector<VertexId> tail_of(const Path& ray, std::size_t divisor) {
  if (ray.empty()) return {};
  const std::size_t from = std::min(ray.size() - 1, ray.size() - ray.size() / divisor);
  std::vector<VertexId> out(ray.begin() + static_cast<std::ptrdiff_t>(from), ray.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool inside(const std::vector<VertexId>& small, const std::vector<VertexId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool strictly_in_b(const SNTree& snt, NodeId n, VertexId v) {
  return std::binary_search(snt.b_side[n].begin(), snt.b_side[n].end(), v) &&
         !std::binary_search(snt.separator[n].begin(), snt.separator[n].end(), v);
}

}  // namespace

Thm38Conditions check_thm38_conditions(const FiniteTruncation& h, const RootedTree& t,
                                       const Thm38Result& r, int k, Budget& budget) {
  const SNTree& snt = r.snt;
  Thm38Conditions c;
  c.ascending = check_ascending_paths(snt, t);
  c.upwards_disjoint = check_upwards_disjoint(snt);
  for (NodeId n = 0; n < snt.size(); ++n)
    if (snt.created_at[n] != snt.tree.level(n)) {
      c.level_growth.ok = false;
      c.level_growth.nodes = {n};
      c.level_growth.witness = "node " + std::to_string(n) + " added at step " +
                               std::to_string(snt.created_at[n]) + " sits at depth " +
                               std::to_string(snt.tree.level(n));
      break;
    }

  if (!h.hints().has_catalogue || h.hints().end_catalogue.empty()) {
    c.undominated_traced.vacuous = c.low_ends_settle.vacuous = true;
    return c;
  }
  Embedding e(h, t);
  const auto tree_vertices = t.vertices();
  std::size_t levels_wanted = 0, levels_seen = 0;
  bool any_undominated = false, any_low = false;
  for (const auto& end : h.hints().end_catalogue) {
    const Path ray = canonical_prefix(h, end);
    if (static_cast<int>(ray.size()) < k) continue;  // closure undecidable at scale k
    const bool closure = end_in_closure(h, end, tree_vertices, k, budget);
    if (closure && !end.dominated) {
      // (iii): follow the level-n node whose strict B side holds the ray's
      // last tree vertex. The trace may stop early only where the truncation
      // cuts it: at a frontier node, or when that vertex enters a separator.
      auto last_in_tree = std::find_if(ray.rbegin(), ray.rend(),
                                       [&](VertexId v) { return t.contains(v); });
      if (last_in_tree == ray.rend()) continue;
      any_undominated = true;
      const VertexId last = *last_in_tree;
      NodeId cur = 0;
      for (int n = 1; n <= r.levels_built; ++n) {
        ++levels_wanted;
        std::optional<NodeId> step;
        bool cut = snt.frontier[cur] != 0 ||
                   std::binary_search(snt.separator[cur].begin(), snt.separator[cur].end(), last);
        for (NodeId ch : snt.tree.children(cur)) {
          if (strictly_in_b(snt, ch, last)) step = ch;
          if (std::binary_search(snt.separator[ch].begin(), snt.separator[ch].end(), last)) cut = true;
        }
        if (step) {
          ++levels_seen;
          cur = *step;
          continue;
        }
        if (!cut && !snt.tree.children(cur).empty() && c.undominated_traced.ok) {
          c.undominated_traced.ok = false;
          c.undominated_traced.nodes = {cur};
          c.undominated_traced.witness = "end " + end.name + " stays at node " +
                                         std::to_string(cur) + " of level " + std::to_string(n - 1);
        }
        break;
      }
    } else if (!closure) {
      // (iv): the end lives in an outside component C; it must live at a
      // node of depth at most the level of C's top.
      const int li = h.require_index(ray.back());
      if (e.in_tree(li)) continue;
      const auto& comp = e.outside()[static_cast<std::size_t>(e.component_of(li))];
      if (comp.top < 0) continue;
      any_low = true;
      const int height = e.level(comp.top);
      const auto tail = tail_of(ray, 4);
      bool found = false;
      for (NodeId n = 0; n < r.td.size() && !found; ++n)
        found = r.td.tree.level(n) <= height && inside(tail, r.td.parts[n]);
      if (!found && c.low_ends_settle.ok) {
        c.low_ends_settle.ok = false;
        c.low_ends_settle.witness = "end " + end.name + " of height " + std::to_string(height) +
                                    " lives in no part at depth <= " + std::to_string(height);
      }
    }
  }
  c.undominated_traced.vacuous = !any_undominated;
  c.undominated_traced.coverage =
      levels_wanted ? static_cast<double>(levels_seen) / static_cast<double>(levels_wanted) : 1.0;
  c.low_ends_settle.vacuous = !any_low;
  return c;
}

DisplayReport check_displays(const FiniteTruncation& h, const TreeDecomposition& td,
                             const std::vector<VertexId>& u, int k, Budget& budget) {
  DisplayReport rep;
  if (!h.hints().has_catalogue) {
    rep.skipped = true;
    return rep;
  }
  if (h.hints().end_catalogue.empty()) {
    rep.vacuous = true;
    return rep;
  }
  // home(v): the top of the subtree of nodes whose parts hold v.
  std::unordered_map<VertexId, NodeId> home;
  for (NodeId n = 0; n < td.size(); ++n)
    for (VertexId v : td.parts[n]) {
      auto [it, fresh] = home.emplace(v, n);
      if (!fresh && td.tree.level(n) < td.tree.level(it->second)) it->second = n;
    }
  std::vector<std::optional<NodeId>> deep_meet;
  for (const auto& end : h.hints().end_catalogue) {
    DisplayTrace tr;
    tr.end = end.name;
    tr.dominated = end.dominated;
    tr.in_closure_u = end_in_closure(h, end, u, k, budget);
    const Path ray = canonical_prefix(h, end);
    std::optional<NodeId> deep;
    std::optional<NodeId> first_home;
    tr.settles = !ray.empty();
    for (std::size_t j = ray.size() / 2; j < ray.size(); ++j) {
      auto it = home.find(ray[j]);
      if (it == home.end()) continue;
      const NodeId hn = it->second;
      if (!first_home) first_home = hn;
      tr.settles = tr.settles && hn == *first_home;
      tr.meet = tr.meet ? td.tree.meet(*tr.meet, hn) : hn;
      if (j >= ray.size() - ray.size() / 4 - 1) deep = deep ? td.tree.meet(*deep, hn) : hn;
    }
    if (tr.meet) tr.meet_depth = td.tree.level(*tr.meet);
    tr.undetermined = static_cast<int>(ray.size()) < k;
    if (tr.undetermined) {
      tr.problem = "ray prefix shorter than k";
      deep_meet.push_back(std::nullopt);
    } else if (tr.in_closure_u && !tr.dominated) {
      tr.ok = !tr.settles;
      if (!tr.ok) tr.problem = "tail settles in the part of node " + std::to_string(*first_home);
      deep_meet.push_back(deep);
    } else {
      tr.ok = tr.settles;
      if (!tr.ok) tr.problem = "tail does not settle in a single part";
      deep_meet.push_back(std::nullopt);
    }
    rep.ok = rep.ok && tr.ok;
    rep.ends.push_back(std::move(tr));
  }
  const auto decided = std::count_if(rep.ends.begin(), rep.ends.end(),
                                     [](const DisplayTrace& tr) { return !tr.undetermined; });
  rep.coverage = static_cast<double>(decided) / static_cast<double>(rep.ends.size());
  rep.vacuous = decided == 0;
  for (std::size_t a = 0; a < rep.ends.size(); ++a)
    for (std::size_t b = a + 1; b < rep.ends.size(); ++b) {
      if (!deep_meet[a] || !deep_meet[b]) continue;
      if (td.tree.comparable(*deep_meet[a], *deep_meet[b])) {
        rep.ok = false;
        rep.ends[b].ok = false;
        rep.ends[b].problem = "traces into the branch of end " + rep.ends[a].end;
      }
    }
  return rep;
}

}  // namespace combdual
