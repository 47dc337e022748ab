// Acceptance suite: one PASS/FAIL line per criterion, INFO lines for
// supporting evidence. Exits non-zero when any criterion fails.
//
// Each criterion returns a digest of everything it computed (timings
// excluded); the determinism criterion reruns all of them and compares.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "combdual/jung.hpp"
#include "combdual/run.hpp"
#include "combdual/serialize.hpp"
#include "combdual/tree_decomp.hpp"
#include "support/oracles.hpp"

using namespace combdual;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  Json digest = Json::object();
  std::vector<std::string> info;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

RunConfig config(const std::string& fam, const std::string& u, int radius, std::optional<std::uint32_t> cap = {}) {
  RunConfig c;
  c.family = fam;
  c.u = u;
  c.radius = radius;
  c.cap = cap;
  c.k = 10;
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

std::string default_u(const std::string& fam) {
  return fam == "comb" || fam == "dominated_comb_gadget" ? "teeth" : "all";
}

std::optional<std::uint32_t> cap_if_needed(const std::string& fam) {
  if (family(fam).hints().locally_finite) return std::nullopt;
  return 20u;
}

/// Normal spanning tree chosen by the dichotomy pipeline on the full ball.
RootedTree pipeline_tree(const FiniteTruncation& h, const std::string& fam) {
  Budget budget;
  auto r = theorem1_pipeline(h, parse_predicate("all", family(fam)), PipelineOptions{10, 4}, budget);
  if (r.branch != Branch::NormalTree || !r.full_tree)
    throw std::runtime_error(fam + ": pipeline did not return a normal tree");
  return *r.full_tree;
}

RootedTree heap_tree(const FiniteTruncation& h) {
  std::map<VertexId, VertexId> parent;
  for (VertexId v : h.ids())
    if (v > 0) parent[v] = (v - 1) / 2;
  return RootedTree::from_parents(0, parent);
}

std::vector<int> as_sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share their (host, tree) pairs.

struct Pair {
  oracle::SmallGraph g;
  oracle::SmallTree t;
};

std::vector<Pair> normality_pairs(int& exhaustive_count) {
  std::vector<Pair> out;
  for (const auto& g : oracle::all_connected_graphs(5))
    for (const auto& t : oracle::all_rooted_spanning_trees(g)) out.push_back({g, t});
  exhaustive_count = static_cast<int>(out.size());

  std::mt19937_64 rng(5150);
  for (int i = 0; i < 500; ++i) {
    const int n = 6 + i % 2;
    auto g = oracle::random_connected(n, 0.35, rng);
    const int root = static_cast<int>(rng() % n);
    auto dfs = oracle::random_dfs_tree(g, root, rng);
    out.push_back({g, dfs});
    // Negatives at the same sizes: arbitrary spanning trees are rarely normal.
    out.push_back({g, oracle::random_spanning_tree(g, root, rng)});
  }
  return out;
}

Outcome criterion1(const std::vector<Pair>& pairs, int exhaustive) {
  Outcome o;
  int mismatches = 0, normal = 0;
  for (const auto& [g, t] : pairs) {
    const bool want = oracle::is_normal(g, t);
    const bool got = is_normal(oracle::to_truncation(g), oracle::to_rooted_tree(t)).normal;
    normal += want;
    mismatches += want != got;
  }
  std::ostringstream os;
  os << pairs.size() << " pairs (" << exhaustive << " exhaustive at 5 vertices), " << normal << " normal, "
     << mismatches << " mismatches";
  o.detail = os.str();
  o.pass = mismatches == 0;
  o.digest = {{"pairs", pairs.size()}, {"normal", normal}, {"mismatches", mismatches}};
  return o;
}

Outcome criterion2(const std::vector<Pair>& pairs) {
  Outcome o;
  int checked = 0, separation_failures = 0, classification_failures = 0, oracle_disagreements = 0;
  for (const auto& [g, t] : pairs) {
    if (!oracle::is_normal(g, t)) continue;
    auto h = oracle::to_truncation(g);
    auto rt = oracle::to_rooted_tree(t);
    ++checked;
    if (!check_separation_property(h, rt).holds) ++separation_failures;
    for (const auto& mask : oracle::down_closed_sets(t)) {
      std::vector<VertexId> w;
      for (int v = 0; v < g.n; ++v)
        if (mask[v]) w.push_back(static_cast<VertexId>(v));
      auto cls = classify_components(h, rt, w);
      if (!cls.holds) ++classification_failures;
      // A spanning tree spans every component by the up-closure of its minimum.
      for (const auto& c : cls.components) {
        if (!c.minimal) {
          ++oracle_disagreements;
          continue;
        }
        std::vector<int> got(c.vertices.begin(), c.vertices.end());
        if (as_sorted(got) != as_sorted(oracle::generalized_up_closure(g, t, static_cast<int>(*c.minimal))))
          ++oracle_disagreements;
      }
    }
  }
  std::ostringstream os;
  os << checked << " normal pairs; separation failures " << separation_failures << ", classification failures "
     << classification_failures << ", disagreements with the brute-force closure " << oracle_disagreements;
  o.detail = os.str();
  o.pass = checked > 0 && separation_failures + classification_failures + oracle_disagreements == 0;
  o.digest = {{"checked", checked},
              {"separation", separation_failures},
              {"classification", classification_failures},
              {"oracle", oracle_disagreements}};
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(31337);
  int instances = 0, mismatches = 0, bad_certs = 0;
  std::map<int, int> histogram;
  Json values = Json::array();
  while (instances < 200) {
    const int n = 4 + static_cast<int>(rng() % 6);  // 4..9 vertices
    auto g = oracle::random_connected(n, 0.2 + 0.1 * static_cast<double>(rng() % 4), rng);
    auto prefix = oracle::random_path(g, 2 + static_cast<int>(rng() % 4), rng);
    if (!prefix) continue;
    int v = static_cast<int>(rng() % n);
    if (std::find(prefix->begin(), prefix->end(), v) != prefix->end()) v = prefix->front();
    std::vector<int> targets(prefix->begin(), prefix->end());
    targets.erase(std::remove(targets.begin(), targets.end(), v), targets.end());
    const int expected = oracle::max_fan(g, v, targets);

    auto h = oracle::to_truncation(g);
    Path p(prefix->begin(), prefix->end());
    Budget budget;
    int best = 0;
    for (int k = 1; k <= expected + 1; ++k) {
      auto r = find_fan(h, static_cast<VertexId>(v), p, k, budget);
      if (!r.found()) break;
      if (!check_fan(h, *r.cert, k).ok) ++bad_certs;
      best = k;
    }
    mismatches += best != expected;
    ++histogram[expected];
    values.push_back({expected, best});
    ++instances;
  }
  std::ostringstream os;
  os << instances << " instances, max fan sizes";
  for (const auto& [size, count] : histogram) os << " " << size << ":" << count;
  os << "; " << mismatches << " mismatches, " << bad_certs << " invalid certificates";
  o.detail = os.str();
  o.pass = mismatches == 0 && bad_certs == 0;
  o.digest = {{"values", values}};
  return o;
}

// ---------------------------------------------------------------------------

/// Checks one analyze report against the expected branch; returns the
/// problem or an empty string.
std::string check_branch(const Json& r, Branch want) {
  const std::string branch = r.at("branch");
  if (branch != to_string(want)) {
    std::string why = "branch " + branch;
    if (r.contains("reason") && !r["reason"].get<std::string>().empty())
      why += " (" + r["reason"].get<std::string>() + ")";
    return why;
  }
  const bool has_comb = r.contains("certificates") && r["certificates"].contains("dominated_comb");
  const bool has_tree = r.contains("normal_tree") && !r["normal_tree"].is_null();
  if (has_comb == has_tree) return "both or neither branch certificate present";
  if (want == Branch::NormalTree) {
    for (const char* row : {"normal", "contains_cofinally", "component_neighbourhoods_finite_chains"})
      if (status_of(r, row) != "pass") return std::string(row) + " " + status_of(r, row);
  }
  return "";
}

Outcome criterion4() {
  Outcome o;
  const int radius = 40;
  std::vector<std::string> problems;
  for (const auto& fam : family_names()) {
    const Branch want =
        fam == "dominated_comb_gadget" || fam == "dominated_tree" ? Branch::DominatedComb : Branch::NormalTree;
    auto r = without_timings(analyze_report(config(fam, default_u(fam), radius, cap_if_needed(fam))));
    o.digest[fam] = r;
    const auto why = check_branch(r, want);
    if (!why.empty()) problems.push_back(fam + ": " + why);
  }
  // The same expectations at the largest radius each oversized family
  // fits under the vertex cap within the time budget.
  for (const auto& [fam, rad] : {std::pair<std::string, int>{"regular_tree", 16}, {"dominated_tree", 14}}) {
    const Branch want = fam == "dominated_tree" ? Branch::DominatedComb : Branch::NormalTree;
    auto r = without_timings(analyze_report(config(fam, "all", rad, cap_if_needed(fam))));
    o.digest[fam + "@" + std::to_string(rad)] = r;
    const auto why = check_branch(r, want);
    o.info.push_back(fam + " at radius " + std::to_string(rad) + ": " + r["branch"].get<std::string>() +
                     (why.empty() ? ", expected branch and checks hold" : ", " + why));
  }
  o.pass = problems.empty();
  if (o.pass) {
    o.detail = std::to_string(family_names().size()) + " families at radius 40, k = 10, expected branches";
  } else {
    o.detail = "radius 40, k = 10; ";
    for (std::size_t i = 0; i < problems.size(); ++i) o.detail += (i ? "; " : "") + problems[i];
  }
  return o;
}

// ---------------------------------------------------------------------------

Json snt_digest(const SNTree& s) { return snt_to_json(s); }

Outcome criterion5() {
  Outcome o;
  struct Case {
    std::string name;
    FiniteTruncation h;
    RootedTree t;
  };
  std::vector<Case> cases;
  {
    auto h = truncate(family("regular_tree"), 8);
    cases.push_back({"binary tree", h, heap_tree(h)});
  }
  {
    auto h = truncate(family("ray"), 40);
    cases.push_back({"ray", h, pipeline_tree(h, "ray")});
  }
  {
    auto h = truncate(family("ladder"), 24);
    cases.push_back({"ladder", h, pipeline_tree(h, "ladder")});
  }
  std::ostringstream os;
  for (const auto& c : cases) {
    auto r = thm38_construct(c.h, c.t, 0);
    Budget budget;
    auto cond = check_thm38_conditions(c.h, c.t, r, 10, budget);
    const std::vector<std::pair<std::string, TdCheck>> checks{
        {"ascending_paths", check_ascending_paths(r.snt, c.t)},
        {"upwards_disjoint", check_upwards_disjoint(r.snt)},
        {"level_growth", cond.level_growth},
        {"connected_separators", check_connected_separators(c.h, r.td)},
        {"upwards_connected", check_upwards_connected(c.h, r.snt)},
        {"separations", check_separations(c.h, r.snt)}};
    for (const auto& [name, chk] : checks)
      if (!chk.ok) fail(o, c.name + ": " + name + " -- " + chk.witness);
    if (!verify_td_axioms(c.h, r.td).ok()) fail(o, c.name + ": decomposition axioms");
    os << c.name << " " << r.snt.size() << " nodes; ";
    o.digest[c.name] = snt_digest(r.snt);
  }

  // Golden comparison, node by node.
  std::ifstream f(std::string(COMBDUAL_TEST_DIR) + "/golden/thm38_binary_level3.json");
  if (!f) {
    fail(o, "golden file missing");
    return o;
  }
  auto golden = Json::parse(f);
  ParamMap params;
  for (auto& [k, v] : golden["params"].items()) params[k] = v.get<std::string>();
  auto h = truncate(family(golden["family"], params), golden["radius"].get<int>());
  auto t = heap_tree(h);
  auto r = thm38_construct(h, t, golden["levels"].get<int>());
  const auto& nodes = golden["nodes"];
  bool match = r.snt.size() == nodes.size();
  for (std::size_t i = 0; match && i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const auto parent = r.snt.tree.parent(i);
    match = r.snt.labels[i] == n["label"].get<std::string>() &&
            (n["parent"].is_null() ? !parent : parent && *parent == n["parent"].get<NodeId>()) &&
            r.snt.created_at[i] == n["created_at"].get<int>() &&
            r.snt.separator[i] == n["separator"].get<std::vector<VertexId>>() &&
            r.snt.b_side[i].size() == n["b_size"].get<std::size_t>();
  }
  if (!match) fail(o, "binary tree level-3 output differs from the golden file");
  o.digest["golden"] = snt_digest(r.snt);
  if (o.pass) o.detail = os.str() + "golden level-3 match";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  const std::vector<std::string> bullets{"td_axiom_a_vertices", "td_axiom_b_edges", "td_axiom_c_subtrees",
                                         "finite_parts", "essential_disjointness", "displays_closure_of_u"};
  std::vector<std::string> notes;
  for (const auto& [fam, u, radius] :
       {std::tuple<std::string, std::string, int>{"comb", "teeth", 30}, {"grid", "all", 20}}) {
    auto r = without_timings(decompose_report(config(fam, u, radius), "2"));
    o.digest[fam] = r;
    std::string bad;
    for (const auto& b : bullets) {
      const auto s = status_of(r, b);
      if (s != "pass") bad += (bad.empty() ? "" : ", ") + b + " " + s;
    }
    if (!bad.empty()) fail(o, fam + ": " + bad);
    notes.push_back(fam + (bad.empty() ? " passes" : " fails"));
  }

  bool shared = false;
  for (const char* th : {"3.3", "2"}) {
    auto r = without_timings(decompose_report(config("taleph0_3levels", "all", 3, 10u), th));
    o.digest[std::string("taleph0_") + th] = r;
    if (exit_code(r) != 0) fail(o, std::string("taleph0_3levels --theorem ") + th + ": predicates fail");
    const auto& obs = r.value("observations", Json::object());
    if (obs.value("pairwise_disjoint_separators", true) == false && obs.contains("shared_separator_vertex")) {
      shared = true;
      if (std::string(th) == "3.3")
        o.info.push_back("taleph0_3levels shared separator vertex: " + obs["shared_separator_vertex"].dump());
    }
  }
  if (!shared) fail(o, "taleph0_3levels shows no node with separators sharing a vertex");
  notes.push_back(shared ? "taleph0_3levels passes with a shared separator vertex" : "taleph0_3levels incomplete");
  if (o.pass) {
    o.detail.clear();
    for (std::size_t i = 0; i < notes.size(); ++i) o.detail += (i ? "; " : "") + notes[i];
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
  Outcome o;
  int inputs = 0, identity_fixtures = 0;
  const std::vector<std::pair<std::string, int>> suite{{"ray", 30},   {"double_ray", 20}, {"comb", 24},
                                                       {"ladder", 20}, {"grid", 12},       {"regular_tree", 6}};
  for (const auto& [fam, radius] : suite) {
    auto h = truncate(family(fam), radius);
    for (const auto& [tree_name, t] : {std::pair<std::string, RootedTree>{"pipeline", pipeline_tree(h, fam)},
                                       {"distance-classes", build_normal_tree(h, distance_classes(h)).tree}}) {
      const std::string name = fam + "/" + tree_name;
      auto r = thm38_construct(h, t, 0);
      auto q = thm35_quotient(r.snt);
      ++inputs;
      if (!check_pairwise_disjoint(q).ok) fail(o, name + ": quotient separators not pairwise disjoint");
      if (!verify_td_axioms(h, q).ok()) fail(o, name + ": quotient violates the axioms");
      if (check_pairwise_disjoint(r.td).ok) {
        ++identity_fixtures;
        if (!(q.tree == r.td.tree && q.parts == r.td.parts && q.labels == r.td.labels))
          fail(o, name + ": quotient is not the identity on disjoint separators");
      }
      o.digest[name] = td_to_json(q);
    }
  }
  if (identity_fixtures == 0) fail(o, "no already-disjoint fixture in the suite");
  if (o.pass)
    o.detail = std::to_string(inputs) + " locally finite inputs, " + std::to_string(identity_fixtures) +
               " already disjoint (identity holds)";
  return o;
}

// ---------------------------------------------------------------------------

struct Timed {
  Outcome outcome;
  double seconds = 0;
};

Timed timed(const std::function<Outcome()>& f) {
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  try {
    t.outcome = f();
  } catch (const std::exception& e) {
    t.outcome.pass = false;
    t.outcome.detail = std::string("exception: ") + e.what();
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

}  // namespace

int main() {
  int exhaustive = 0;
  const auto pairs = normality_pairs(exhaustive);

  struct Criterion {
    int id;
    std::string title;
    double limit_seconds;  // 0: none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "normality matches the definition", 60, [&] { return criterion1(pairs, exhaustive); }},
      {2, "separation and component classification", 0, [&] { return criterion2(pairs); }},
      {3, "fans match exhaustive path packing", 60, criterion3},
      {4, "dichotomy branches at radius 40", 300, criterion4},
      {5, "recursive S-tree construction", 0, criterion5},
      {6, "end-to-end decompositions", 0, criterion6},
      {7, "quotient separators", 0, criterion7},
  };

  int failures = 0;
  std::vector<Json> digests;
  for (const auto& c : criteria) {
    auto t = timed(c.run);
    if (c.limit_seconds > 0 && t.seconds > c.limit_seconds) {
      t.outcome.pass = false;
      t.outcome.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    failures += !t.outcome.pass;
    std::printf("criterion %d %s: %s  %s  [%.1f s]\n", c.id, c.title.c_str(), t.outcome.pass ? "PASS" : "FAIL",
                t.outcome.detail.c_str(), t.seconds);
    for (const auto& line : t.outcome.info) std::printf("  info: %s\n", line.c_str());
    std::fflush(stdout);
    digests.push_back(t.outcome.digest);
  }

  // Determinism: a second run of every criterion reproduces its digest.
  auto t8 = timed([&] {
    Outcome o;
    const auto again = normality_pairs(exhaustive);
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      Outcome second = i == 0   ? criterion1(again, exhaustive)
                       : i == 1 ? criterion2(again)
                                : criteria[i].run();
      if (second.digest.dump() != digests[i].dump())
        fail(o, "criterion " + std::to_string(criteria[i].id) + " differs between runs");
    }
    if (o.pass) o.detail = "criteria 1-7 reproduce byte-identical digests";
    return o;
  });
  failures += !t8.outcome.pass;
  std::printf("criterion 8 determinism: %s  %s  [%.1f s]\n", t8.outcome.pass ? "PASS" : "FAIL",
              t8.outcome.detail.c_str(), t8.seconds);

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures ? 1 : 0;
}
