#include <doctest.h>

#include <algorithm>
#include <set>

#include "combdual/graph.hpp"
#include "support/oracles.hpp"

using namespace combdual;

namespace {

struct FamilyCase {
  const char* name;
  std::optional<std::uint32_t> cap;
  int max_radius;
};

// Every registered family with a cap where degrees are infinite and a
// radius small enough for exponential growth.
const FamilyCase kFamilies[] = {
    {"ray", {}, 6},        {"double_ray", {}, 6},   {"comb", {}, 6},
    {"star_inf", 5, 6},    {"grid", {}, 6},         {"ladder", {}, 6},
    {"regular_tree", {}, 6}, {"taleph0_3levels", 3, 4}, {"dominated_comb_gadget", 6, 6},
    {"dominated_tree", 6, 5},
};

std::set<VertexId> as_set(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("ray truncation is a path with the far end on the boundary") {
  auto h = truncate(family("ray"), 5);
  CHECK(h.size() == 6);
  CHECK(h.edge_count() == 5);
  CHECK(h.boundary() == std::vector<VertexId>{5});
}

TEST_CASE("grid ball of radius 2 is the six lattice points with x + y <= 2") {
  auto h = truncate(family("grid"), 2);
  std::set<VertexId> expected;
  for (std::uint64_t x = 0; x <= 2; ++x)
    for (std::uint64_t y = 0; x + y <= 2; ++y) expected.insert(encoding::cantor_pair(x, y));
  CHECK(as_set(h.ids()) == expected);
  // Two lattice edges leave each of (0,0), (1,0) and (0,1) outward.
  CHECK(h.edge_count() == 6);
}

TEST_CASE("taleph0_3levels with cap 3 and radius 3 is the complete ternary tree of depth 3") {
  auto h = truncate(family("taleph0_3levels"), 3, 3u);
  CHECK(h.size() == 1 + 3 + 9 + 27);
  CHECK(h.edge_count() == static_cast<std::size_t>(h.size() - 1));
  CHECK(h.boundary().size() == 27);
}

TEST_CASE("distance classes of the examples") {
  auto ray = distance_classes(family("ray"), 3);
  REQUIRE(ray.size() == 4);
  for (std::size_t i = 0; i < ray.size(); ++i) CHECK(ray[i] == std::vector<VertexId>{i});

  auto grid = distance_classes(family("grid"), 2);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0].size() == 1);
  CHECK(grid[1].size() == 2);
  CHECK(grid[2].size() == 3);

  auto comb = distance_classes(family("comb"), 2);
  CHECK(comb[1] == std::vector<VertexId>{encoding::comb_tooth(0), encoding::comb_spine(1)});
}

TEST_CASE("family hints") {
  auto grid = family("grid");
  CHECK(grid.hints().locally_finite);
  CHECK(grid.hints().degree_bound == 4u);
  REQUIRE(grid.hints().end_catalogue.size() == 1);
  CHECK_FALSE(grid.hints().end_catalogue[0].dominated);

  auto gadget = family("dominated_comb_gadget");
  REQUIRE(gadget.hints().end_catalogue.size() == 1);
  CHECK(gadget.hints().end_catalogue[0].dominated);
  CHECK(gadget.hints().end_catalogue[0].dominating_vertices ==
        std::vector<VertexId>{encoding::kGadgetApex});

  auto aleph = family("taleph0_3levels");
  CHECK_FALSE(aleph.hints().locally_finite);
  CHECK(aleph.hints().max_depth == 3u);
  CHECK(aleph.hints().end_catalogue.empty());
}

TEST_CASE("family registry rejects unknown names and parameters") {
  CHECK_THROWS_AS(family("no_such_family"), InvalidArgument);
  CHECK_THROWS_AS(family("grid", {{"d", "3"}}), InvalidArgument);
  CHECK_THROWS_AS(family("regular_tree", {{"d", "1"}}), InvalidArgument);
  CHECK_THROWS_AS(family("regular_tree", {{"d", "x"}}), InvalidArgument);
  CHECK(family_names().size() == 10);
}

TEST_CASE("infinite degrees need a branching cap") {
  CHECK_THROWS_AS(truncate(family("star_inf"), 1), InvalidArgument);
  CHECK(truncate(family("star_inf"), 1, 4u).size() == 5);
}

TEST_CASE("the vertex cap raises budget-exceeded") {
  CHECK_THROWS_AS(truncate(family("regular_tree"), 12, {}, 1000), BudgetExceeded);
}

TEST_CASE("truncations are symmetric, monotone, degree-bounded and match brute-force BFS") {
  for (const auto& fc : kFamilies) {
    CAPTURE(fc.name);
    auto g = family(fc.name);
    FiniteTruncation prev;
    for (int r = 0; r <= fc.max_radius; ++r) {
      CAPTURE(r);
      auto h = truncate(g, r, fc.cap);
      for (int i = 0; i < h.size(); ++i)
        for (int j : h.neighbors(i)) CHECK(h.adjacent(j, i));

      if (auto d = g.hints().degree_bound)
        for (int i = 0; i < h.size(); ++i) CHECK(h.neighbors(i).size() <= *d);

      // BFS on the materialized edge list, independent of the stored distances.
      std::map<VertexId, std::vector<VertexId>> adj;
      for (auto [a, b] : h.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::map<VertexId, int> dist{{h.root(), 0}};
      std::vector<VertexId> queue{h.root()};
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (VertexId w : adj[queue[q]])
          if (!dist.count(w)) {
            dist[w] = dist[queue[q]] + 1;
            queue.push_back(w);
          }
      auto classes = distance_classes(h);
      REQUIRE(classes.size() == static_cast<std::size_t>(r + 1));
      std::size_t total = 0;
      for (int k = 0; k <= r; ++k) {
        for (VertexId v : classes[k]) CHECK(dist.at(v) == k);
        total += classes[k].size();
      }
      CHECK(total == static_cast<std::size_t>(h.size()));
      CHECK(dist.size() == total);

      if (r > 0) {
        // The smaller ball is the induced subgraph of the larger one.
        for (VertexId v : prev.ids()) CHECK(h.contains(v));
        for (int i = 0; i < h.size(); ++i) {
          if (h.distance(i) > r - 1) continue;
          for (int j : h.neighbors(i)) {
            if (h.distance(j) > r - 1) continue;
            CHECK(prev.adjacent(prev.require_index(h.id(i)), prev.require_index(h.id(j))));
          }
        }
        CHECK(prev.edge_count() <= h.edge_count());
      }
      prev = std::move(h);
    }
  }
}

TEST_CASE("neighbour oracles are deterministic") {
  for (const auto& fc : kFamilies) {
    auto a = truncate(family(fc.name), std::min(fc.max_radius, 4), fc.cap);
    auto b = truncate(family(fc.name), std::min(fc.max_radius, 4), fc.cap);
    CHECK(a.ids() == b.ids());
    CHECK(a.edges() == b.edges());
  }
}

TEST_CASE("canonical rays of catalogued ends are nested paths") {
  for (const auto& fc : kFamilies) {
    auto g = family(fc.name);
    auto h = truncate(g, std::min(fc.max_radius, 5), fc.cap);
    for (const auto& end : g.hints().end_catalogue) {
      CAPTURE(end.name);
      auto long_prefix = end.canonical_ray(8);
      auto short_prefix = end.canonical_ray(4);
      REQUIRE(long_prefix.size() == 8);
      CHECK(std::equal(short_prefix.begin(), short_prefix.end(), long_prefix.begin()));
      for (std::size_t i = 1; i < long_prefix.size(); ++i) {
        if (!h.contains(long_prefix[i]) || !h.contains(long_prefix[i - 1])) break;
        CHECK(h.adjacent(h.require_index(long_prefix[i - 1]), h.require_index(long_prefix[i])));
      }
    }
  }
}

TEST_CASE("encodings round-trip") {
  for (std::uint64_t x = 0; x < 30; ++x)
    for (std::uint64_t y = 0; y < 30; ++y)
      CHECK(encoding::cantor_unpair(encoding::cantor_pair(x, y)) == std::make_pair(x, y));
  for (std::int64_t z = -50; z <= 50; ++z) CHECK(encoding::unzigzag(encoding::zigzag(z)) == z);
}

TEST_CASE("from_edges rejects disconnected hosts") {
  CHECK_THROWS_AS(FiniteTruncation::from_edges(0, {0, 1, 2}, {{0, 1}}), InvalidArgument);
  auto h = FiniteTruncation::from_edges(0, {0, 1, 2}, {{0, 1}, {1, 2}});
  CHECK(h.radius() == 2);
}
