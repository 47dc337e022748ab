#include "combdual/run.hpp"

#include <chrono>

#include "combdual/jung.hpp"
#include "combdual/predicates.hpp"
#include "combdual/tree_decomp.hpp"

namespace combdual {

namespace {

// Predicate rows ------------------------------------------------------------

Json row(const std::string& name, const std::string& status, const std::string& witness = "",
         double coverage = 1.0) {
  Json r;
  r["name"] = name;
  r["status"] = status;
  r["witness"] = witness;
  r["coverage"] = coverage;
  return r;
}

Json row(const std::string& name, const TdCheck& c) {
  return row(name, !c.ok ? "fail" : c.vacuous ? "vacuous" : "pass", c.witness, c.coverage);
}

Json row(const std::string& name, const DisplayReport& d) {
  std::string witness;
  for (const auto& e : d.ends)
    if (!e.ok) witness += (witness.empty() ? "" : "; ") + e.end + ": " + e.problem;
  const std::string status = d.skipped ? "skipped" : !d.ok ? "fail" : d.vacuous ? "vacuous" : "pass";
  return row(name, status, witness, d.coverage);
}

Json display_trace(const DisplayReport& d) {
  Json out = Json::array();
  for (const auto& e : d.ends)
    out.push_back({{"end", e.end},
                   {"in_closure_u", e.in_closure_u},
                   {"dominated", e.dominated},
                   {"meet_depth", e.meet_depth},
                   {"settles", e.settles},
                   {"undetermined", e.undetermined},
                   {"ok", e.ok},
                   {"problem", e.problem}});
  return out;
}

// A run's graph, truncation and vertex set.
struct Setup {
  LazyGraph g;
  FiniteTruncation h;
  VertexPredicate u;
  std::vector<VertexId> members;

  explicit Setup(const RunConfig& c)
      : g(family(c.family, c.params)),
        h(truncate(g, c.radius, c.cap)),
        u(parse_predicate(c.u, g)),
        members(u.select(h)) {}
};

Json truncation_summary(const FiniteTruncation& h) {
  return Json{{"vertices", h.size()}, {"edges", h.edge_count()}, {"boundary", h.boundary().size()}};
}

Json normal_tree_rows(const FiniteTruncation& h, const RootedTree& t,
                      const std::vector<VertexId>& members, int k, Budget& budget) {
  Json rows = Json::array();
  auto n = is_normal(h, t);
  std::string w;
  for (VertexId v : n.witness) w += (w.empty() ? "" : "-") + std::to_string(v);
  rows.push_back(row("normal", n.normal ? "pass" : "fail", w));

  const auto flags = boundary_leaves(Embedding(h, t));
  auto cof = contains_cofinally(t, members, flags);
  const double cov =
      t.size() ? 1.0 - static_cast<double>(cof.exempt.size()) / static_cast<double>(t.size()) : 1.0;
  rows.push_back(row("contains_cofinally", cof.verdict == Verdict::Fails ? "fail" : "pass",
                     cof.witness ? "nothing of U above " + std::to_string(*cof.witness) : "", cov));

  auto comps = component_neighbourhood_report(h, t);
  std::string bad;
  for (const auto& c : comps.components)
    if (!c.chain) bad = "component at " + std::to_string(c.smallest);
  rows.push_back(row("component_neighbourhoods_finite_chains", comps.all_chains ? "pass" : "fail", bad));

  auto ends = trace_catalogued_ends(h, t, members, k, budget);
  if (ends.skipped) {
    rows.push_back(row("closure_equal", "skipped"));
    rows.push_back(row("ends_distinct", "skipped"));
  } else if (ends.ends.empty()) {
    rows.push_back(row("closure_equal", "vacuous"));
    rows.push_back(row("ends_distinct", "vacuous"));
  } else {
    rows.push_back(row("closure_equal", ends.closure_equal ? "pass" : "fail"));
    rows.push_back(row("ends_distinct", ends.distinct ? "pass" : "fail"));
  }
  return rows;
}

Json certificate_rows(const FiniteTruncation& h, const Json& certs,
                      const std::vector<VertexId>& members, int k) {
  Json rows = Json::array();
  if (certs.contains("dominated_comb")) {
    auto c = check_dominated_comb(h, dominated_comb_from_json(certs.at("dominated_comb")), members, k);
    rows.push_back(row("dominated_comb_certificate", c.ok ? "pass" : "fail", c.problem));
  }
  return rows;
}

Json base_report(const std::string& verb, const RunConfig& c) {
  Json r;
  r["verb"] = verb;
  r["config"] = config_to_json(c);
  return r;
}

void finish(Json& r, const std::chrono::steady_clock::time_point& start, const Budget& b) {
  double coverage = 1.0;
  for (const auto& p : r["predicates"]) coverage = std::min(coverage, p.at("coverage").get<double>());
  r["coverage"] = coverage;
  r["budget_used"] = b.used();
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  r["timings"] = Json{{"total_ms", ms.count()}};
}

// Runs the pipeline into `r`; returns the pruned tree on the normal-tree
// branch.
std::optional<RootedTree> run_pipeline(Json& r, const RunConfig& c, const Setup& s,
                                       Budget& budget) {
  PipelineOptions opt;
  opt.k = c.k;
  opt.max_rays = c.max_rays;
  auto out = theorem1_pipeline(s.h, s.u, opt, budget);
  r["branch"] = to_string(out.branch);
  r["reason"] = out.reason;
  Json classes = Json::array();
  for (const auto& d : out.classes)
    classes.push_back({{"set", d.set_label}, {"outcome", to_string(d.outcome)}, {"reason", d.reason}});
  r["classes"] = std::move(classes);
  r["certificates"] = Json::object();
  if (out.dominated_comb) {
    r["certificates"]["dominated_comb"] = to_json(*out.dominated_comb);
    r["certificates"]["dominated_comb_source"] = out.dominated_comb_source;
  }
  r["predicates"] = Json::array();
  if (out.branch == Branch::DominatedComb) {
    r["predicates"] = certificate_rows(s.h, r["certificates"], s.members, c.k);
    return std::nullopt;
  }
  if (out.branch != Branch::NormalTree) {
    r["predicates"].push_back(row("theorem1_branch", "inconclusive", out.reason));
    return std::nullopt;
  }
  const RootedTree& t = out.normal_tree->tree;
  r["normal_tree"] = tree_to_json(t);
  r["predicates"] = normal_tree_rows(s.h, t, s.members, c.k, budget);

  Json rays = Json::array();
  bool clean = true;
  for (const auto& ev : out.rays) {
    clean = clean && ev.undominated();
    rays.push_back({{"prefix_length", ev.prefix.size()},
                    {"candidates", ev.candidates},
                    {"impossible_by_bound", ev.impossible_by_bound},
                    {"exhausted", ev.exhausted},
                    {"found", ev.found}});
  }
  r["evidence"] = Json{{"rays", rays},
                       {"rays_undominated", clean},
                       {"exclusive", out.exclusive},
                       {"exclusivity", out.exclusivity_detail}};
  return t;
}

// Decomposition predicate tables --------------------------------------------

void add_axioms(Json& rows, const FiniteTruncation& h, const TreeDecomposition& td) {
  auto ax = verify_td_axioms(h, td);
  rows.push_back(row("td_axiom_a_vertices", ax.covers_vertices));
  rows.push_back(row("td_axiom_b_edges", ax.covers_edges));
  rows.push_back(row("td_axiom_c_subtrees", ax.subtree));
}

Json decomposition_rows(const FiniteTruncation& h, const RunConfig& c, const std::string& theorem,
                        const RootedTree& t, const std::vector<VertexId>& members,
                        const TreeDecomposition& td, const SNTree* snt, Budget& budget,
                        Json& observations) {
  Json rows = Json::array();
  add_axioms(rows, h, td);
  auto pairwise = check_pairwise_disjoint(td);
  observations["pairwise_disjoint_separators"] = pairwise.ok;
  if (!pairwise.ok) observations["shared_separator_vertex"] = pairwise.witness;

  if (theorem == "3.3" || theorem == "2") {
    rows.push_back(row("finite_parts", check_finite_parts(td, t, members)));
    rows.push_back(row("connected_separators", check_connected_separators(h, td)));
    if (theorem == "2")
      rows.push_back(row("essential_disjointness", check_essential_disjointness(td, c.min_gap)));
  } else if (theorem == "3.5") {
    rows.push_back(row("pairwise_disjoint_separators", pairwise));
    rows.push_back(row("upwards_disjoint", check_upwards_disjoint(td)));
  } else if (theorem == "3.8") {
    if (!snt) throw InvalidArgument("a 3.8 artifact needs its S-tree");
    Thm38Result r;
    r.snt = *snt;
    r.td = td;
    for (NodeId n = 0; n < snt->size(); ++n) r.levels_built = std::max(r.levels_built, snt->created_at[n]);
    auto cond = check_thm38_conditions(h, t, r, c.k, budget);
    rows.push_back(row("separations", check_separations(h, *snt)));
    rows.push_back(row("ascending_paths", cond.ascending));
    rows.push_back(row("upwards_disjoint", cond.upwards_disjoint));
    rows.push_back(row("level_growth", cond.level_growth));
    rows.push_back(row("undominated_ends_traced", cond.undominated_traced));
    rows.push_back(row("low_ends_settle", cond.low_ends_settle));
    rows.push_back(row("connected_separators", check_connected_separators(h, td)));
    rows.push_back(row("upwards_connected", check_upwards_connected(h, *snt)));
    TdCheck same;
    if (snt->size() != td.size()) {
      same.ok = false;
      same.witness = "S-tree and decomposition differ in size";
    }
    for (NodeId n = 1; n < td.size() && same.ok; ++n)
      if (separator_of(td, n) != snt->separator[n]) {
        same.ok = false;
        same.witness = "separator below node " + std::to_string(n) + " differs from alpha's";
      }
    rows.push_back(row("separator_consistency", same));
  }
  auto d = check_displays(h, td, members, c.k, budget);
  rows.push_back(row("displays_closure_of_u", d));
  observations["display_trace"] = display_trace(d);
  return rows;
}

}  // namespace

Json config_to_json(const RunConfig& c) {
  Json j;
  j["family"] = c.family;
  j["params"] = c.params;
  j["u"] = c.u;
  j["radius"] = c.radius;
  j["cap"] = c.cap ? Json(*c.cap) : Json(nullptr);
  j["k"] = c.k;
  j["min_gap"] = c.min_gap;
  j["budget"] = c.budget;
  j["max_rays"] = c.max_rays;
  j["levels"] = c.levels;
  return j;
}

RunConfig config_from_json(const Json& j) {
  try {
    RunConfig c;
    c.family = j.at("family").get<std::string>();
    if (j.contains("params")) c.params = j.at("params").get<ParamMap>();
    c.u = j.value("u", c.u);
    c.radius = j.value("radius", c.radius);
    if (j.contains("cap") && !j.at("cap").is_null()) c.cap = j.at("cap").get<std::uint32_t>();
    c.k = j.value("k", c.k);
    c.min_gap = j.value("min_gap", c.min_gap);
    c.budget = j.value("budget", c.budget);
    c.max_rays = j.value("max_rays", c.max_rays);
    c.levels = j.value("levels", c.levels);
    if (c.radius < 0) throw InvalidArgument("radius must be non-negative");
    if (c.k < 2) throw InvalidArgument("k must be at least 2");
    if (c.min_gap < 1) throw InvalidArgument("min_gap must be positive");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

Json analyze_report(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Budget budget(c.budget);
  Json r = base_report("analyze", c);
  try {
    Setup s(c);
    r["truncation"] = truncation_summary(s.h);
    run_pipeline(r, c, s, budget);
  } catch (const BudgetExceeded& e) {
    r["branch"] = to_string(Branch::Inconclusive);
    r["reason"] = e.what();
    r["predicates"] = Json::array({row("truncation", "inconclusive", e.what())});
  }
  finish(r, start, budget);
  return r;
}

Json decompose_report(const RunConfig& c, const std::string& theorem) {
  if (theorem != "3.3" && theorem != "3.8" && theorem != "3.5" && theorem != "2")
    throw InvalidArgument("unknown theorem '" + theorem + "' (expected 3.3, 3.8, 3.5 or 2)");
  const auto start = std::chrono::steady_clock::now();
  Budget budget(c.budget);
  Json r = base_report("decompose", c);
  r["theorem"] = theorem;
  try {
    Setup s(c);
    r["truncation"] = truncation_summary(s.h);
    auto t = run_pipeline(r, c, s, budget);
    if (!t) {
      r["refused"] = true;
      r["refusal"] = r["branch"] == to_string(Branch::DominatedComb)
                         ? "a dominated comb attached to U is certified, so no decomposition of "
                           "this kind exists; see certificates.dominated_comb"
                         : "the normal-tree branch was not reached: " + r["reason"].get<std::string>();
      finish(r, start, budget);
      return r;
    }
    r["refused"] = false;
    Json artifacts;
    Json observations;
    TreeDecomposition td;
    std::optional<SNTree> snt;
    if (theorem == "3.3") {
      td = thm33_construct(s.h, *t);
    } else {
      auto r38 = thm38_construct(s.h, *t, c.levels);
      observations["levels_built"] = r38.levels_built;
      observations["frontier_notes"] = r38.snt.frontier_notes.size();
      if (theorem == "3.8") {
        td = r38.td;
        snt = r38.snt;
      } else if (theorem == "3.5") {
        td = thm35_quotient(r38.snt);
      } else {
        td = thm2_construct(s.h, *t, r38);
      }
    }
    artifacts["decomposition"] = td_to_json(td);
    if (snt) artifacts["snt"] = snt_to_json(*snt);
    Json rows = decomposition_rows(s.h, c, theorem, *t, s.members, td, snt ? &*snt : nullptr,
                                   budget, observations);
    for (auto& p : rows) r["predicates"].push_back(std::move(p));
    r["artifacts"] = std::move(artifacts);
    r["observations"] = std::move(observations);
  } catch (const BudgetExceeded& e) {
    r["branch"] = to_string(Branch::Inconclusive);
    r["reason"] = e.what();
    r["refused"] = true;
    r["predicates"] = Json::array({row("truncation", "inconclusive", e.what())});
  }
  finish(r, start, budget);
  return r;
}

Json verify_report(const Json& report) {
  try {
    const RunConfig c = config_from_json(report.at("config"));
    Budget budget(c.budget);
    Setup s(c);
    Json out;
    out["verb"] = "verify";
    out["of"] = report.at("verb");
    Json rows = Json::array();
    if (report.contains("certificates"))
      for (auto& p : certificate_rows(s.h, report.at("certificates"), s.members, c.k))
        rows.push_back(std::move(p));
    if (report.contains("normal_tree")) {
      const RootedTree t = tree_from_json(report.at("normal_tree"));
      for (auto& p : normal_tree_rows(s.h, t, s.members, c.k, budget)) rows.push_back(std::move(p));
      if (report.contains("artifacts")) {
        const auto& a = report.at("artifacts");
        const TreeDecomposition td = td_from_json(a.at("decomposition"));
        std::optional<SNTree> snt;
        if (a.contains("snt")) snt = snt_from_json(a.at("snt"));
        Json observations;
        for (auto& p : decomposition_rows(s.h, c, report.at("theorem").get<std::string>(), t,
                                          s.members, td, snt ? &*snt : nullptr, budget, observations))
          rows.push_back(std::move(p));
      }
    }
    out["predicates"] = std::move(rows);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

Json recheck_certificates(const Json& doc, std::optional<int> radius) {
  try {
    RunConfig c = config_from_json(doc.at("config"));
    if (radius) c.radius = *radius;
    Setup s(c);
    Json out;
    out["verb"] = "certify-recheck";
    out["radius"] = c.radius;
    Json certs = doc.contains("certificates") ? doc.at("certificates") : Json::object();
    if (doc.contains("kind") && doc.contains("certificate")) certs[doc.at("kind").get<std::string>()] = doc.at("certificate");
    Json rows = certificate_rows(s.h, certs, s.members, c.k);
    auto check = [&](const std::string& name, const CertCheck& cc) {
      rows.push_back(row(name, cc.ok ? "pass" : "fail", cc.problem));
    };
    if (certs.contains("star")) check("star_certificate", check_star(s.h, star_from_json(certs.at("star")), s.members, c.k));
    if (certs.contains("comb")) check("comb_certificate", check_comb(s.h, comb_from_json(certs.at("comb")), s.members, c.k));
    if (certs.contains("fan")) check("fan_certificate", check_fan(s.h, fan_from_json(certs.at("fan")), c.k));
    if (rows.empty()) rows.push_back(row("certificates", "vacuous", "no certificate in document"));
    out["predicates"] = std::move(rows);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate document: ") + e.what());
  }
}

int exit_code(const Json& report) {
  bool inconclusive = false;
  for (const auto& p : report.value("predicates", Json::array())) {
    const auto s = p.at("status").get<std::string>();
    if (s == "fail") return 1;
    if (s == "inconclusive") inconclusive = true;
  }
  if (report.value("branch", "") == to_string(Branch::Inconclusive)) inconclusive = true;
  if (inconclusive) return 2;
  if (report.value("refused", false)) return 1;
  return 0;
}

}  // namespace combdual
