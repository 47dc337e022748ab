#include <doctest.h>

#include "combdual/jung.hpp"
#include "combdual/run.hpp"
#include "combdual/serialize.hpp"

using namespace combdual;

namespace {

RunConfig config(const std::string& fam, const std::string& u, int radius,
                 std::optional<std::uint32_t> cap = {}) {
  RunConfig c;
  c.family = fam;
  c.u = u;
  c.radius = radius;
  c.cap = cap;
  return c;
}

std::string status_of(const Json& report, const std::string& name) {
  for (const auto& p : report.at("predicates"))
    if (p.at("name") == name) return p.at("status");
  return "missing";
}

Json without_timings(Json r) {
  r.erase("timings");
  return r;
}

}  // namespace

TEST_CASE("tree and decomposition JSON round-trips") {
  auto h = truncate(family("comb"), 10);
  auto t = build_normal_tree(h, distance_classes(h)).tree;
  CHECK(tree_from_json(tree_to_json(t)) == t);

  auto r38 = thm38_construct(h, t, 0);
  auto td = thm2_construct(h, t, r38);
  auto back = td_from_json(td_to_json(td));
  CHECK(back.tree == td.tree);
  CHECK(back.parts == td.parts);
  CHECK(back.labels == td.labels);
  CHECK(back.f_witness == td.f_witness);

  auto snt = snt_from_json(snt_to_json(r38.snt));
  CHECK(snt.separator == r38.snt.separator);
  CHECK(snt.b_side == r38.snt.b_side);
  CHECK(snt.created_at == r38.snt.created_at);

  CHECK(td_to_dot(td).find("digraph") != std::string::npos);
  CHECK(tree_to_dot(t).find("->") != std::string::npos);
}

TEST_CASE("truncation JSON has the documented shape") {
  auto j = truncation_to_json(truncate(family("ray"), 3));
  CHECK(j["vertices"] == Json::array({0, 1, 2, 3}));
  CHECK(j["edges"].size() == 3);
  CHECK(j["boundary"] == Json::array({3}));
  CHECK(truncation_to_dot(truncate(family("ray"), 2)).find("--") != std::string::npos);
}

TEST_CASE("certificate JSON round-trips") {
  StarCert s{0, {{0, 1}, {0, 2, 3}}, {1, 3}};
  auto s2 = star_from_json(to_json(s));
  CHECK(s2.center == s.center);
  CHECK(s2.leaf_paths == s.leaf_paths);
  CHECK(s2.attachment == s.attachment);

  CombCert c{{0, 2, 4}, {{0, 1}, {2}}, {1, 2}, true};
  auto c2 = comb_from_json(to_json(c));
  CHECK(c2.spine_prefix == c.spine_prefix);
  CHECK(c2.teeth_paths == c.teeth_paths);
  CHECK(c2.spine_reaches_boundary);

  FanCert f{5, {1, 2}, {{5, 1}, {5, 7, 2}}};
  auto f2 = fan_from_json(to_json(f));
  CHECK(f2.fan_paths == f.fan_paths);
}

TEST_CASE("malformed documents raise InvalidArgument") {
  CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"root": "x"})")), InvalidArgument);
  CHECK_THROWS_AS(td_from_json(Json::parse(R"({"nodes": 3})")), InvalidArgument);
  CHECK_THROWS_AS(star_from_json(Json::array()), InvalidArgument);
  // Nodes out of order.
  CHECK_THROWS_AS(td_from_json(Json::parse(
                      R"({"nodes": [{"id": 1, "label": "a", "parent": null, "part": []}]})")),
                  InvalidArgument);
}

TEST_CASE("config validation") {
  auto c = config_from_json(Json::parse(R"({"family": "grid", "radius": 7, "cap": null})"));
  CHECK(c.radius == 7);
  CHECK(c.k == 10);
  CHECK(config_from_json(config_to_json(c)).radius == 7);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"family": "grid", "k": 1})")), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"family": "grid", "radius": -1})")), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"family": "grid", "min_gap": 0})")), InvalidArgument);
  CHECK_THROWS_AS(analyze_report(config("grid", "no_such_set", 4)), InvalidArgument);
  CHECK_THROWS_AS(decompose_report(config("grid", "all", 4), "4.1"), InvalidArgument);
}

TEST_CASE("analyze branches and exit codes") {
  auto grid = analyze_report(config("grid", "all", 10));
  CHECK(grid["branch"] == to_string(Branch::NormalTree));
  CHECK(exit_code(grid) == 0);

  auto gadget = analyze_report(config("dominated_comb_gadget", "teeth", 30, 20u));
  CHECK(gadget["branch"] == to_string(Branch::DominatedComb));
  CHECK(gadget["certificates"].contains("dominated_comb"));
  CHECK(exit_code(gadget) == 0);

  auto aleph = analyze_report(config("taleph0_3levels", "all", 3, 10u));
  CHECK(aleph["branch"] == to_string(Branch::NormalTree));

  auto huge = analyze_report(config("regular_tree", "all", 40));
  CHECK(huge["branch"] == to_string(Branch::Inconclusive));
  CHECK(exit_code(huge) == 2);
}

TEST_CASE("decompositions are refused when a dominated comb is certified") {
  for (const char* th : {"3.3", "3.8", "3.5", "2"}) {
    auto r = decompose_report(config("dominated_comb_gadget", "teeth", 30, 20u), th);
    CHECK(r["refused"] == true);
    CHECK(r["refusal"].get<std::string>().find("dominated comb") != std::string::npos);
    CHECK_FALSE(r.contains("artifacts"));
    CHECK(exit_code(r) == 1);
  }
}

TEST_CASE("comb, combined decomposition: every predicate passes") {
  auto c = config("comb", "teeth", 30);
  auto r = decompose_report(c, "2");
  CHECK(exit_code(r) == 0);
  for (const char* name : {"td_axiom_a_vertices", "td_axiom_b_edges", "td_axiom_c_subtrees", "finite_parts",
                           "connected_separators", "essential_disjointness", "displays_closure_of_u"}) {
    CAPTURE(name);
    CHECK(status_of(r, name) == "pass");
  }
}

TEST_CASE("taleph0_3levels, down-closure decomposition: passes with shared separator vertices noted") {
  auto r = decompose_report(config("taleph0_3levels", "all", 3, 10u), "3.3");
  CHECK(exit_code(r) == 0);
  CHECK(r["observations"]["pairwise_disjoint_separators"] == false);
  CHECK(r["observations"].contains("shared_separator_vertex"));
}

TEST_CASE("verify reproduces the stored table and catches tampering") {
  auto report = decompose_report(config("ladder", "all", 14), "3.8");
  auto table = verify_report(report);
  for (const auto& p : table["predicates"]) {
    CAPTURE(p["name"].get<std::string>());
    CHECK(status_of(report, p["name"]) == p["status"]);
  }
  CHECK(exit_code(table) == 0);

  auto tampered = report;
  // Drop the last vertex of the largest part; an edge at it loses its cover.
  auto& parts = tampered["artifacts"]["decomposition"]["parts"];
  std::string largest;
  for (auto& [node, part] : parts.items())
    if (largest.empty() || part.size() > parts[largest].size()) largest = node;
  parts[largest].erase(parts[largest].size() - 1);
  auto bad = verify_report(tampered);
  CHECK(exit_code(bad) == 1);
}

TEST_CASE("stored certificates survive a radius bump") {
  auto report = analyze_report(config("dominated_comb_gadget", "teeth", 30, 20u));
  auto table = recheck_certificates(report, 60);
  CHECK(table["radius"] == 60);
  CHECK(exit_code(table) == 0);
  CHECK_FALSE(table["predicates"].empty());
}

TEST_CASE("reports are deterministic apart from timings") {
  for (const char* fam : {"comb", "grid", "ladder"}) {
    auto c = config(fam, fam == std::string("comb") ? "teeth" : "all", 12);
    CHECK(without_timings(analyze_report(c)).dump() == without_timings(analyze_report(c)).dump());
    CHECK(without_timings(decompose_report(c, "2")).dump() ==
          without_timings(decompose_report(c, "2")).dump());
  }
}
