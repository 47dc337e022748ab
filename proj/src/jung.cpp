#include "combdual/jung.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace combdual {

std::string to_string(DispersedKind k) {
  switch (k) {
    case DispersedKind::NoCombFound: return "no-comb-found";
    case DispersedKind::CombFound: return "comb-found";
    case DispersedKind::ExactDispersed: return "exact-dispersed";
  }
  return "?";
}

// Dispersedness -------------------------------------------------------------

DispersednessReport is_dispersed(const FiniteTruncation& h, const std::string& label,
                                 const std::vector<VertexId>& members, bool known_finite, int k,
                                 Budget& budget) {
  DispersednessReport r;
  r.set_label = label;
  if (auto d = h.hints().max_depth) {
    r.outcome = DispersedKind::ExactDispersed;
    r.reason = "rayless host (depth " + std::to_string(*d) + ")";
    return r;
  }
  if (members.empty()) {
    r.outcome = DispersedKind::ExactDispersed;
    r.reason = "empty set";
    return r;
  }
  if (known_finite) {
    r.outcome = DispersedKind::ExactDispersed;
    r.reason = "finite set: no comb has infinitely many teeth in it";
    return r;
  }
  auto c = find_comb(h, members, k, budget);
  r.best = c.best;
  if (c.found()) {
    r.outcome = DispersedKind::CombFound;
    r.comb = std::move(c.cert);
  } else {
    r.outcome = DispersedKind::NoCombFound;
    r.budget_exceeded = c.budget_exceeded;
    r.reason = c.reason;
  }
  return r;
}

DispersednessReport is_dispersed(const FiniteTruncation& h, const VertexPredicate& w, int k,
                                 Budget& budget) {
  return is_dispersed(h, w.label, w.select(h), w.finite, k, budget);
}

std::vector<DispersednessReport> tree_levels_dispersed(const FiniteTruncation& h,
                                                       const RootedTree& t, int k,
                                                       Budget& budget) {
  std::vector<std::vector<VertexId>> levels(static_cast<std::size_t>(t.depth()) + 1);
  for (VertexId v : t.vertices()) levels[static_cast<std::size_t>(t.level(v))].push_back(v);
  std::vector<DispersednessReport> out;
  for (std::size_t n = 0; n < levels.size(); ++n)
    out.push_back(is_dispersed(h, "level(" + std::to_string(n) + ")", levels[n], false, k, budget));
  return out;
}

// Normal extension ----------------------------------------------------------

namespace {

class NormalExtender {
 public:
  NormalExtender(const FiniteTruncation& h, int root)
      : h_(h),
        tree_(h.id(root)),
        level_(static_cast<std::size_t>(h.size()), -1),
        parent_(static_cast<std::size_t>(h.size()), -1),
        comp_(static_cast<std::size_t>(h.size()), -1) {
    level_[root] = 0;
    std::vector<int> rest;
    for (int v = 0; v < h.size(); ++v)
      if (v != root) rest.push_back(v);
    split(rest);
  }

  void absorb(int x) {
    if (level_[x] >= 0) return;
    const Component& c = comps_[static_cast<std::size_t>(comp_[x])];
    const int cid = comp_[x];
    const int t = c.top;
    auto path = connect(cid, t, x);
    int up = t;
    for (int v : path) {
      tree_.add_child(h_.id(up), h_.id(v));
      level_[v] = level_[up] + 1;
      parent_[v] = up;
      up = v;
    }
    std::vector<int> rest;
    for (int v : comps_[static_cast<std::size_t>(cid)].vertices)
      if (level_[v] < 0) rest.push_back(v);
    split(rest);
  }

  RootedTree take() { return std::move(tree_); }

 private:
  struct Component {
    std::vector<int> vertices;
    int top = -1;
  };

  bool is_ancestor(int a, int b) const {
    while (level_[b] > level_[a]) b = parent_[b];
    return a == b;
  }

  // Splits the given non-tree vertices into components and records the top
  // of each neighbourhood, checking it is a chain.
  void split(const std::vector<int>& verts) {
    const int mark = -2 - static_cast<int>(comps_.size());
    for (int v : verts) comp_[v] = mark;
    for (int s : verts) {
      if (comp_[s] != mark) continue;
      Component c;
      const int id = static_cast<int>(comps_.size());
      std::vector<int> nb;
      std::deque<int> queue{s};
      comp_[s] = id;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        c.vertices.push_back(v);
        for (int w : h_.neighbors(v)) {
          if (level_[w] >= 0) {
            nb.push_back(w);
          } else if (comp_[w] == mark) {
            comp_[w] = id;
            queue.push_back(w);
          }
        }
      }
      std::sort(c.vertices.begin(), c.vertices.end());
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      for (int w : nb)
        if (c.top < 0 || level_[w] > level_[c.top]) c.top = w;
      for (int w : nb)
        if (!is_ancestor(w, c.top))
          throw std::logic_error("normal extension: neighbourhood of the component at " +
                                 std::to_string(h_.id(s)) + " is not a chain (" +
                                 std::to_string(h_.id(w)) + " vs " + std::to_string(h_.id(c.top)) +
                                 ")");
      comps_.push_back(std::move(c));
    }
  }

  // Shortest path inside component `cid` from a neighbour of t to x,
  // starting at the lowest-index neighbour among the nearest.
  std::vector<int> connect(int cid, int t, int x) {
    std::vector<int> prev(static_cast<std::size_t>(h_.size()), -2);
    std::deque<int> queue;
    for (int w : h_.neighbors(t))
      if (comp_[w] == cid) {
        prev[w] = -1;
        queue.push_back(w);
      }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v == x) break;
      for (int w : h_.neighbors(v))
        if (comp_[w] == cid && prev[w] == -2) {
          prev[w] = v;
          queue.push_back(w);
        }
    }
    if (prev[x] == -2) throw std::logic_error("normal extension: target unreachable in its component");
    std::vector<int> path;
    for (int v = x; v >= 0; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  const FiniteTruncation& h_;
  RootedTree tree_;
  std::vector<int> level_;
  std::vector<int> parent_;
  std::vector<int> comp_;
  std::vector<Component> comps_;
};

}  // namespace

NormalTreeCert build_normal_tree(const FiniteTruncation& h,
                                 const std::vector<std::vector<VertexId>>& sets) {
  std::vector<int> targets;
  std::vector<char> seen(static_cast<std::size_t>(h.size()), 0);
  for (const auto& set : sets) {
    std::vector<int> idx;
    for (VertexId v : set) idx.push_back(h.require_index(v));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return h.distance(a) != h.distance(b) ? h.distance(a) < h.distance(b) : a < b;
    });
    for (int i : idx)
      if (!seen[i]) {
        seen[i] = 1;
        targets.push_back(i);
      }
  }
  if (targets.empty()) throw InvalidArgument("no target vertices");

  NormalExtender ext(h, targets.front());
  for (int x : targets) ext.absorb(x);

  NormalTreeCert cert;
  cert.tree = ext.take();
  cert.host_radius = h.radius();
  for (int i : targets) cert.cofinal_for.push_back(h.id(i));
  std::sort(cert.cofinal_for.begin(), cert.cofinal_for.end());
  cert.boundary_flags = boundary_leaves(Embedding(h, cert.tree));
  return cert;
}

// Reports -------------------------------------------------------------------

ComponentReport component_neighbourhood_report(const FiniteTruncation& h, const RootedTree& t) {
  Embedding e(h, t);
  ComponentReport r;
  for (const auto& c : e.outside()) {
    ComponentEntry entry;
    entry.smallest = h.id(c.vertices.front());
    entry.size = c.vertices.size();
    for (int w : c.neighbourhood) entry.neighbourhood.push_back(h.id(w));
    entry.chain = c.chain;
    entry.touches_boundary = c.touches_boundary;
    r.all_chains = r.all_chains && c.chain;
    r.components.push_back(std::move(entry));
  }
  return r;
}

RayEvidence fan_evidence(const FiniteTruncation& h, const Path& prefix, int k, Budget& budget) {
  constexpr std::size_t kKeptFans = 3;
  RayEvidence ev;
  ev.prefix = prefix;
  std::vector<char> on_prefix(static_cast<std::size_t>(h.size()), 0);
  for (std::size_t i = 1; i < prefix.size(); ++i) on_prefix[h.require_index(prefix[i])] = 1;
  const auto bound = h.hints().degree_bound;
  for (int v = 0; v < h.size(); ++v) {
    if (on_prefix[v]) continue;
    ++ev.candidates;
    if ((bound && static_cast<int>(*bound) < k)) {
      ++ev.impossible_by_bound;
      continue;
    }
    if (auto d = h.exact_degree(v); d && *d < k) {
      ++ev.impossible_by_bound;
      continue;
    }
    const int targets = static_cast<int>(prefix.size()) - (h.id(v) == prefix.front() ? 1 : 0);
    if (static_cast<int>(h.neighbors(v).size()) < k || targets < k) {
      ++ev.exhausted;
      continue;
    }
    auto f = find_fan(h, h.id(v), prefix, k, budget);
    switch (f.kind) {
      case OutcomeKind::Found:
        ++ev.found;
        if (ev.fans.size() < kKeptFans) ev.fans.push_back(std::move(*f.cert));
        break;
      case OutcomeKind::ImpossibleByBound: ++ev.impossible_by_bound; break;
      case OutcomeKind::Exhausted: ++ev.exhausted; break;
    }
  }
  return ev;
}

std::vector<Path> ray_prefixes(const RootedTree& t, const std::set<VertexId>& leaves,
                               std::size_t max_rays) {
  std::vector<VertexId> all(leaves.begin(), leaves.end());
  std::vector<VertexId> pick;
  if (all.size() <= max_rays || max_rays < 2) {
    pick = all;
    if (pick.size() > max_rays) pick.resize(max_rays);
  } else {
    for (std::size_t i = 0; i < max_rays; ++i) pick.push_back(all[i * (all.size() - 1) / (max_rays - 1)]);
    pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
  }
  std::vector<Path> out;
  for (VertexId leaf : pick) out.push_back(t.down_closure(leaf));
  return out;
}

}  // namespace combdual
