#include <doctest.h>

#include "combdual/jung.hpp"
#include "support/oracles.hpp"

using namespace combdual;

namespace {

struct Run {
  FiniteTruncation h;
  Theorem1Output out;
};

Run pipeline(const std::string& fam, const std::string& u, int radius,
             std::optional<std::uint32_t> cap = {}, int k = 10, ParamMap params = {}) {
  auto g = family(fam, params);
  Run r{truncate(g, radius, cap), {}};
  Budget budget;
  r.out = theorem1_pipeline(r.h, parse_predicate(u, g), PipelineOptions{k, 8}, budget);
  return r;
}

std::vector<std::vector<VertexId>> singletons(const FiniteTruncation& h) {
  std::vector<std::vector<VertexId>> out;
  for (const auto& cls : distance_classes(h))
    for (VertexId v : cls) out.push_back({v});
  return out;
}

}  // namespace

TEST_CASE("dispersedness examples") {
  Budget budget;
  auto aleph_g = family("taleph0_3levels");
  auto aleph = truncate(aleph_g, 3, 5u);
  CHECK(is_dispersed(aleph, parse_predicate("all", aleph_g), 3, budget).outcome ==
        DispersedKind::ExactDispersed);

  auto grid_g = family("grid");
  auto grid = truncate(grid_g, 24);
  auto diag = is_dispersed(grid, parse_predicate("diagonal", grid_g), 5, budget);
  REQUIRE(diag.outcome == DispersedKind::CombFound);
  CHECK(check_comb(grid, *diag.comb, parse_predicate("diagonal", grid_g).select(grid), 5).ok);

  auto finite = is_dispersed(grid, explicit_set("three", {0, 1, 2}), 5, budget);
  CHECK(finite.outcome == DispersedKind::ExactDispersed);
}

TEST_CASE("build_normal_tree on the ray is the ray") {
  auto h = truncate(family("ray"), 12);
  auto cert = build_normal_tree(h, singletons(h));
  CHECK(cert.tree.size() == 13);
  CHECK(cert.tree.depth() == 12);
  CHECK(cert.tree.root() == 0);
}

TEST_CASE("build_normal_tree on the grid spans the ball normally") {
  auto h = truncate(family("grid"), 8);
  auto cert = build_normal_tree(h, distance_classes(h));
  CHECK(cert.tree.size() == static_cast<std::size_t>(h.size()));
  CHECK(is_normal(h, cert.tree).normal);
}

TEST_CASE("build_normal_tree with a universal apex first") {
  auto h = truncate(family("dominated_tree"), 4, 40u);
  std::vector<VertexId> rest;
  for (VertexId v : h.ids())
    if (v != 0) rest.push_back(v);
  auto cert = build_normal_tree(h, {{0}, rest});
  CHECK(cert.tree.root() == 0);
  CHECK(cert.tree.size() == static_cast<std::size_t>(h.size()));
  CHECK(is_normal(h, cert.tree).normal);
}

TEST_CASE("build_normal_tree is normal on random small hosts") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 80; ++i) {
    const int n = 4 + i % 5;
    auto g = oracle::random_connected(n, 0.35, rng);
    auto h = oracle::to_truncation(g);
    std::vector<std::vector<VertexId>> sets(2);
    for (int v = 0; v < n; ++v) sets[rng() % 2].push_back(v);
    if (sets[0].empty()) std::swap(sets[0], sets[1]);
    auto cert = build_normal_tree(h, sets);
    CHECK(oracle::is_normal(g, [&] {
      oracle::SmallTree st;
      st.root = static_cast<int>(cert.tree.root());
      st.parent.assign(n, -1);
      st.in_tree.assign(n, 0);
      for (VertexId v : cert.tree.vertices()) {
        st.in_tree[v] = 1;
        if (auto p = cert.tree.parent(v)) st.parent[v] = static_cast<int>(*p);
      }
      return st;
    }()));
    for (const auto& s : sets)
      for (VertexId v : s) CHECK(cert.tree.contains(v));
  }
}

TEST_CASE("pipeline: the gadget takes the dominated comb branch") {
  auto r = pipeline("dominated_comb_gadget", "teeth", 30, 20u);
  REQUIRE(r.out.branch == Branch::DominatedComb);
  REQUIRE(r.out.dominated_comb);
  auto teeth = parse_predicate("teeth", family("dominated_comb_gadget")).select(r.h);
  CHECK(check_dominated_comb(r.h, *r.out.dominated_comb, teeth, 10).ok);
  CHECK(r.out.exclusive);
}

TEST_CASE("pipeline: the grid takes the normal tree branch with undominated rays") {
  auto r = pipeline("grid", "all", 12);
  REQUIRE(r.out.branch == Branch::NormalTree);
  CHECK(r.out.pruned_normal);
  CHECK(r.out.components.all_chains);
  CHECK_FALSE(r.out.rays.empty());
  for (const auto& ray : r.out.rays) {
    CHECK(ray.undominated());
    // Degree at most four rules out every fan at scale 10 without search.
    CHECK(ray.impossible_by_bound == ray.candidates);
  }
  CHECK(r.out.exclusive);
}

TEST_CASE("pipeline: the comb's tree holds the teeth cofinally with chain neighbourhoods") {
  auto r = pipeline("comb", "teeth", 30);
  REQUIRE(r.out.branch == Branch::NormalTree);
  CHECK(r.out.cofinality.verdict != Verdict::Fails);
  CHECK(r.out.components.all_chains);
  CHECK(is_normal(r.h, r.out.normal_tree->tree).normal);
  auto report = component_neighbourhood_report(r.h, r.out.normal_tree->tree);
  for (const auto& c : report.components) {
    CHECK(c.chain);
    CHECK(c.neighbourhood.size() <= 2);
  }
  CHECK(r.out.ends.closure_equal);
  CHECK(r.out.ends.distinct);
}

TEST_CASE("pipeline: the rayless taleph0_3levels gives a rayless normal tree") {
  auto r = pipeline("taleph0_3levels", "all", 3, 10u);
  REQUIRE(r.out.branch == Branch::NormalTree);
  CHECK(r.out.normal_tree->tree.depth() <= 3);
  CHECK(r.out.cofinality.verdict != Verdict::Fails);
}

TEST_CASE("pipeline: the dominated tree takes the dominated comb branch") {
  auto r = pipeline("dominated_tree", "all", 6, 12u, 4);
  CHECK(r.out.branch == Branch::DominatedComb);
}

TEST_CASE("component report") {
  auto spanning = truncate(family("grid"), 4);
  auto t = build_normal_tree(spanning, distance_classes(spanning)).tree;
  CHECK(component_neighbourhood_report(spanning, t).components.empty());

  // A vertex hanging off two incomparable tree vertices.
  auto h = FiniteTruncation::from_edges(0, {0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  auto star = RootedTree::from_parents(0, {{1, 0}, {2, 0}});
  auto report = component_neighbourhood_report(h, star);
  REQUIRE(report.components.size() == 1);
  CHECK_FALSE(report.all_chains);
  CHECK(report.components[0].neighbourhood.size() == 2);
  CHECK(report.components[0].size == 2);
}

TEST_CASE("levels of a normal tree are offered as a dispersed decomposition") {
  auto h = truncate(family("grid"), 6);
  auto t = build_normal_tree(h, distance_classes(h)).tree;
  Budget budget;
  auto levels = tree_levels_dispersed(h, t, 4, budget);
  CHECK(levels.size() == static_cast<std::size_t>(t.depth() + 1));
  for (const auto& l : levels) CHECK(l.outcome != DispersedKind::CombFound);
}

TEST_CASE("pipeline output is deterministic") {
  auto a = pipeline("ladder", "all", 14);
  auto b = pipeline("ladder", "all", 14);
  REQUIRE(a.out.normal_tree);
  REQUIRE(b.out.normal_tree);
  CHECK(a.out.normal_tree->tree == b.out.normal_tree->tree);
}
