#include <algorithm>

#include "combdual/jung.hpp"

namespace combdual {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::DominatedComb: return "dominated-comb";
    case Branch::NormalTree: return "normal-tree";
    case Branch::Inconclusive: return "inconclusive";
  }
  return "?";
}

// Catalogued ends -----------------------------------------------------------

Path canonical_prefix(const FiniteTruncation& h, const EndDescriptor& end) {
  const auto want = static_cast<std::size_t>(4 * h.radius() + 8);
  Path ray = end.canonical_ray(want);
  Path out;
  for (VertexId v : ray) {
    auto i = h.index_of(v);
    if (!i) break;
    if (!out.empty() && !h.adjacent(h.require_index(out.back()), *i)) break;
    out.push_back(v);
  }
  return out;
}

bool end_in_closure(const FiniteTruncation& h, const EndDescriptor& end,
                    const std::vector<VertexId>& u, int k, Budget& budget) {
  Path spine = canonical_prefix(h, end);
  if (spine.empty()) return false;
  std::vector<VertexId> inside;
  for (VertexId v : u)
    if (h.contains(v)) inside.push_back(v);
  return comb_on_spine(h, spine, inside, k, budget).found();
}

EndCorrespondence trace_catalogued_ends(const FiniteTruncation& h, const RootedTree& t,
                                        const std::vector<VertexId>& u, int k, Budget& budget) {
  EndCorrespondence r;
  if (!h.hints().has_catalogue) {
    r.skipped = true;
    return r;
  }
  Embedding e(h, t);
  const std::vector<VertexId> tree_vertices = t.vertices();
  for (const auto& end : h.hints().end_catalogue) {
    EndTrace tr;
    tr.end = end.name;
    tr.dominated = end.dominated;
    tr.in_closure_u = end_in_closure(h, end, u, k, budget);
    tr.in_closure_tree = end_in_closure(h, end, tree_vertices, k, budget);
    r.closure_equal = r.closure_equal && tr.in_closure_u == tr.in_closure_tree;

    // Anchor each tail vertex at itself, or at the top of the outside
    // component holding it; the tail's anchors share the chain [top].
    const Path ray = canonical_prefix(h, end);
    for (std::size_t j = ray.size() / 2; j < ray.size(); ++j) {
      const int i = h.require_index(ray[j]);
      int anchor = i;
      if (!e.in_tree(i)) {
        const auto& c = e.outside()[static_cast<std::size_t>(e.component_of(i))];
        if (c.top < 0) continue;
        anchor = c.top;
      }
      tr.top = tr.top ? t.meet(*tr.top, h.id(anchor)) : h.id(anchor);
    }
    if (tr.top) {
      tr.top_level = t.level(*tr.top);
      for (int w : e.generalized_up_closure(h.require_index(*tr.top)))
        if (h.on_boundary(w)) {
          tr.reaches_boundary = true;
          break;
        }
    }
    r.ends.push_back(std::move(tr));
  }
  for (std::size_t a = 0; a < r.ends.size(); ++a)
    for (std::size_t b = a + 1; b < r.ends.size(); ++b) {
      const auto& x = r.ends[a];
      const auto& y = r.ends[b];
      if (!x.in_closure_u || !y.in_closure_u) continue;
      if (!x.top || !y.top || t.comparable(*x.top, *y.top)) r.distinct = false;
    }
  return r;
}

// Dichotomy pipeline --------------------------------------------------------

namespace {

// Spanning tree of h[D_0 ∪ ... ∪ D_n] whose k-th level is D_k: each vertex
// hangs from its lowest neighbour in the previous class.
RootedTree layered_tree(const FiniteTruncation& h, int n) {
  RootedTree t(h.root());
  std::vector<int> order;
  for (int v = 0; v < h.size(); ++v)
    if (h.distance(v) <= n && v != h.root_index()) order.push_back(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h.distance(a) < h.distance(b); });
  for (int v : order)
    for (int w : h.neighbors(v))
      if (h.distance(w) + 1 == h.distance(v)) {
        t.add_child(h.id(w), h.id(v));
        break;
      }
  return t;
}

std::optional<DominatedCombCert> upgrade_comb(const FiniteTruncation& h, int n,
                                              const CombCert& comb, int k) {
  RootedTree t = layered_tree(h, n);
  auto star = rayless_tree_star(t, comb.teeth, k);
  if (!star.found()) return std::nullopt;
  DominatedCombCert cert;
  cert.comb = comb;
  cert.star = std::move(*star.cert);
  cert.common = cert.star.attachment;
  std::sort(cert.common.begin(), cert.common.end());
  return cert;
}

}  // namespace

Theorem1Output theorem1_pipeline(const FiniteTruncation& h, const VertexPredicate& u,
                                 const PipelineOptions& opt, Budget& budget) {
  const int k = opt.k;
  Theorem1Output out;
  const auto members = u.select(h);
  const auto classes = distance_classes(h);

  // (1) Each D_n ∩ U is either dispersed or carries a comb, which a star
  // in the layered tree upgrades to a dominated comb.
  for (std::size_t n = 0; n < classes.size(); ++n) {
    std::vector<VertexId> dn;
    std::set_intersection(classes[n].begin(), classes[n].end(), members.begin(), members.end(),
                          std::back_inserter(dn));
    const bool finite = h.hints().locally_finite || u.finite;
    auto rep = is_dispersed(h, "D_" + std::to_string(n) + " ∩ " + u.label, dn, finite, k, budget);
    const bool comb_found = rep.outcome == DispersedKind::CombFound;
    const bool overrun = rep.budget_exceeded;
    std::optional<CombCert> comb = rep.comb;
    out.classes.push_back(std::move(rep));
    if (overrun) {
      out.branch = Branch::Inconclusive;
      out.reason = "node budget exceeded while testing D_" + std::to_string(n);
      return out;
    }
    if (!comb_found) continue;
    if (auto cert = upgrade_comb(h, static_cast<int>(n), *comb, k)) {
      out.branch = Branch::DominatedComb;
      out.dominated_comb = std::move(cert);
      out.dominated_comb_source = "star in the layered tree of D_0..D_" + std::to_string(n);
      return out;
    }
    auto dc = find_dominated_comb(h, members, k, budget);
    if (dc.found()) {
      out.branch = Branch::DominatedComb;
      out.dominated_comb = std::move(dc.cert);
      out.dominated_comb_source = "dominated comb search";
      return out;
    }
    out.branch = Branch::Inconclusive;
    out.reason = "comb attached to D_" + std::to_string(n) +
                 " found, but no dominating star at scale k in the truncation";
    return out;
  }

  // (2) Normal tree over the classes, pruned to the down-closure of U.
  std::vector<std::vector<VertexId>> sets;
  for (const auto& c : classes) {
    std::vector<VertexId> dn;
    std::set_intersection(c.begin(), c.end(), members.begin(), members.end(),
                          std::back_inserter(dn));
    sets.push_back(std::move(dn));
  }
  // The root anchors the construction even when it is not in U.
  sets.insert(sets.begin(), std::vector<VertexId>{h.root()});
  NormalTreeCert full = build_normal_tree(h, sets);
  out.full_tree = full.tree;

  NormalTreeCert pruned;
  pruned.tree = members.empty() ? RootedTree(h.root()) : full.tree.down_closure_subtree(members);
  pruned.host_radius = h.radius();
  pruned.cofinal_for = members;
  pruned.boundary_flags = boundary_leaves(Embedding(h, pruned.tree));
  out.pruned_normal = is_normal(h, pruned.tree).normal;
  out.cofinality = contains_cofinally(pruned.tree, members, pruned.boundary_flags);
  out.components = component_neighbourhood_report(h, pruned.tree);
  out.ends = trace_catalogued_ends(h, pruned.tree, members, k, budget);

  std::set<VertexId> ray_leaves;
  for (VertexId leaf : pruned.tree.leaves())
    if (h.on_boundary(h.require_index(leaf)) || pruned.boundary_flags.count(leaf))
      ray_leaves.insert(leaf);
  for (const auto& prefix : ray_prefixes(pruned.tree, ray_leaves, opt.max_rays))
    if (prefix.size() >= 2) out.rays.push_back(fan_evidence(h, prefix, k, budget));
  out.normal_tree = std::move(pruned);

  // Exclusivity at scale: a dominated comb attached to U would contradict
  // undominated normal rays.
  bool rays_clean = std::all_of(out.rays.begin(), out.rays.end(),
                                [](const RayEvidence& r) { return r.undominated(); });
  if (!members.empty() && static_cast<int>(members.size()) >= 2) {
    auto dc = find_dominated_comb(h, members, k, budget);
    out.exclusive = !(dc.found() && rays_clean);
    out.exclusivity_detail = "dominated comb search: " + to_string(dc.kind) +
                             (dc.reason.empty() ? "" : " (" + dc.reason + ")");
  } else {
    out.exclusivity_detail = "fewer than two vertices of U";
  }

  if (budget.exceeded()) {
    out.branch = Branch::Inconclusive;
    out.reason = "node budget exceeded while gathering evidence";
    return out;
  }
  out.branch = Branch::NormalTree;
  return out;
}

}  // namespace combdual
