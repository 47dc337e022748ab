#include "combdual/serialize.hpp"

#include <sstream>

namespace combdual {

namespace {

// Wraps the JSON library's type and key errors.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + ": " + e.what());
  }
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::vector<VertexId> sorted_ids(const Json& j) {
  auto v = j.get<std::vector<VertexId>>();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Json truncation_to_json(const FiniteTruncation& h) {
  Json j;
  j["family"] = h.family();
  j["radius"] = h.radius();
  j["branching_cap"] = h.branching_cap() ? Json(*h.branching_cap()) : Json(nullptr);
  j["root"] = h.root();
  std::vector<VertexId> ids = h.ids();
  std::sort(ids.begin(), ids.end());
  j["vertices"] = ids;
  Json edges = Json::array();
  for (const Edge& e : h.edges()) edges.push_back({e.first, e.second});
  j["edges"] = std::move(edges);
  j["boundary"] = h.boundary();
  return j;
}

std::string truncation_to_dot(const FiniteTruncation& h) {
  std::ostringstream os;
  os << "graph " << quoted(h.family()) << " {\n";
  for (int i = 0; i < h.size(); ++i)
    os << "  " << h.id(i) << (h.on_boundary(i) ? " [style=dashed]" : "") << ";\n";
  for (const Edge& e : h.edges()) os << "  " << e.first << " -- " << e.second << ";\n";
  os << "}\n";
  return os.str();
}

Json tree_to_json(const RootedTree& t) {
  Json j;
  j["root"] = t.root();
  Json parents = Json::array();
  for (const auto& [child, parent] : t.parent_map()) parents.push_back({child, parent});
  j["parent"] = std::move(parents);
  return j;
}

RootedTree tree_from_json(const Json& j) {
  return guarded("tree", [&] {
    std::map<VertexId, VertexId> parent;
    for (const auto& p : j.at("parent")) parent[p.at(0).get<VertexId>()] = p.at(1).get<VertexId>();
    return RootedTree::from_parents(j.at("root").get<VertexId>(), parent);
  });
}

std::string tree_to_dot(const RootedTree& t, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n  " << t.root() << " [shape=doublecircle];\n";
  for (const auto& [child, parent] : t.parent_map()) os << "  " << parent << " -> " << child << ";\n";
  os << "}\n";
  return os.str();
}

Json td_to_json(const TreeDecomposition& td) {
  Json j;
  j["tree"] = tree_to_json(td.tree);
  j["labels"] = td.labels;
  Json parts = Json::object();
  for (NodeId n = 0; n < td.size(); ++n) parts[std::to_string(n)] = td.parts[n];
  j["parts"] = std::move(parts);
  std::vector<NodeId> frontier;
  for (NodeId n = 0; n < td.size(); ++n)
    if (td.frontier[n]) frontier.push_back(n);
  j["frontier"] = frontier;
  // F as [parent, child] pairs; absent when the construction has none.
  if (td.f_witness) {
    Json f = Json::array();
    for (NodeId t : *td.f_witness) f.push_back({*td.tree.parent(t), t});
    j["F"] = std::move(f);
  } else {
    j["F"] = nullptr;
  }
  return j;
}

TreeDecomposition td_from_json(const Json& j) {
  return guarded("tree-decomposition", [&] {
    TreeDecomposition td;
    td.tree = tree_from_json(j.at("tree"));
    const std::size_t n = td.tree.size();
    if (td.tree.root() != 0) throw InvalidArgument("the decomposition tree must be rooted at node 0");
    for (NodeId t : td.tree.vertices())
      if (t >= n) throw InvalidArgument("decomposition nodes must be numbered 0..n-1");
    const auto& parts = j.at("parts");
    if (!parts.is_object() || parts.size() != n)
      throw InvalidArgument("parts must map every node to a vertex list");
    for (NodeId t = 0; t < n; ++t) td.parts.push_back(sorted_ids(parts.at(std::to_string(t))));
    if (j.contains("labels")) {
      td.labels = j.at("labels").get<std::vector<std::string>>();
      if (td.labels.size() != n) throw InvalidArgument("one label per node expected");
    } else {
      for (NodeId t = 0; t < n; ++t) td.labels.push_back(std::to_string(t));
    }
    td.frontier.assign(n, 0);
    for (const auto& f : j.value("frontier", Json::array())) {
      const auto t = f.get<NodeId>();
      if (t >= n) throw InvalidArgument("frontier node out of range");
      td.frontier[t] = 1;
    }
    if (j.contains("F") && !j.at("F").is_null()) {
      std::vector<NodeId> f;
      for (const auto& e : j.at("F")) {
        const auto parent = e.at(0).get<NodeId>(), child = e.at(1).get<NodeId>();
        if (child == 0 || child >= n || td.tree.parent(child) != parent)
          throw InvalidArgument("F edge " + std::to_string(parent) + "-" + std::to_string(child) +
                                " is not a tree edge");
        f.push_back(child);
      }
      td.f_witness = std::move(f);
    }
    return td;
  });
}

std::string td_to_dot(const TreeDecomposition& td) {
  std::vector<char> in_f(td.size(), 0);
  if (td.f_witness)
    for (NodeId t : *td.f_witness) in_f[t] = 1;
  std::ostringstream os;
  os << "digraph decomposition {\n  node [shape=box];\n";
  for (NodeId n = 0; n < td.size(); ++n) {
    std::string part;
    for (std::size_t i = 0; i < td.parts[n].size(); ++i) {
      if (i == 12) {
        part += " ... (" + std::to_string(td.parts[n].size()) + ")";
        break;
      }
      part += (i ? " " : "") + std::to_string(td.parts[n][i]);
    }
    os << "  n" << n << " [label=" << quoted(td.labels[n] + "\\n" + part)
       << (td.frontier[n] ? ", style=dashed" : "") << "];\n";
  }
  for (NodeId n = 1; n < td.size(); ++n)
    os << "  n" << *td.tree.parent(n) << " -> n" << n << (in_f[n] ? " [penwidth=2]" : "") << ";\n";
  os << "}\n";
  return os.str();
}

Json snt_to_json(const SNTree& snt) {
  Json j;
  j["host"] = snt.host;
  Json nodes = Json::array();
  for (NodeId n = 0; n < snt.size(); ++n) {
    Json node;
    node["id"] = n;
    node["label"] = snt.labels[n];
    node["parent"] = n == 0 ? Json(nullptr) : Json(*snt.tree.parent(n));
    node["separator"] = snt.separator[n];
    node["b_side"] = n == 0 ? Json(nullptr) : Json(snt.b_side[n]);
    node["created_at"] = snt.created_at[n];
    node["frontier"] = snt.frontier[n] != 0;
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  j["frontier_notes"] = snt.frontier_notes;
  return j;
}

SNTree snt_from_json(const Json& j) {
  return guarded("S-tree", [&] {
    SNTree snt;
    snt.host = sorted_ids(j.at("host"));
    const auto& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& node = nodes[i];
      if (node.at("id").get<NodeId>() != i) throw InvalidArgument("node ids must be 0..n-1 in order");
      snt.labels.push_back(node.at("label").get<std::string>());
      snt.separator.push_back(sorted_ids(node.at("separator")));
      snt.b_side.push_back(i == 0 ? snt.host : sorted_ids(node.at("b_side")));
      snt.created_at.push_back(node.at("created_at").get<int>());
      snt.frontier.push_back(node.value("frontier", false) ? 1 : 0);
      if (i > 0) {
        const auto p = node.at("parent").get<NodeId>();
        if (p >= i) throw InvalidArgument("a node's parent must precede it");
        snt.tree.add_child(p, i);
      }
    }
    if (snt.labels.empty()) throw InvalidArgument("S-tree has no nodes");
    snt.frontier_notes = j.value("frontier_notes", std::vector<std::string>{});
    return snt;
  });
}

Json to_json(const StarCert& c) {
  return Json{{"center", c.center}, {"leaf_paths", c.leaf_paths}, {"attachment", c.attachment}};
}

Json to_json(const CombCert& c) {
  return Json{{"spine_prefix", c.spine_prefix},
              {"teeth_paths", c.teeth_paths},
              {"teeth", c.teeth},
              {"spine_reaches_boundary", c.spine_reaches_boundary}};
}

Json to_json(const FanCert& c) {
  return Json{{"apex", c.apex}, {"target_ray_prefix", c.target_ray_prefix}, {"fan_paths", c.fan_paths}};
}

Json to_json(const DominatedCombCert& c) {
  return Json{{"comb", to_json(c.comb)}, {"star", to_json(c.star)}, {"common", c.common}};
}

StarCert star_from_json(const Json& j) {
  return guarded("star certificate", [&] {
    StarCert c;
    c.center = j.at("center").get<VertexId>();
    c.leaf_paths = j.at("leaf_paths").get<std::vector<Path>>();
    c.attachment = j.at("attachment").get<std::vector<VertexId>>();
    return c;
  });
}

CombCert comb_from_json(const Json& j) {
  return guarded("comb certificate", [&] {
    CombCert c;
    c.spine_prefix = j.at("spine_prefix").get<Path>();
    c.teeth_paths = j.at("teeth_paths").get<std::vector<Path>>();
    c.teeth = j.at("teeth").get<std::vector<VertexId>>();
    c.spine_reaches_boundary = j.value("spine_reaches_boundary", false);
    return c;
  });
}

FanCert fan_from_json(const Json& j) {
  return guarded("fan certificate", [&] {
    FanCert c;
    c.apex = j.at("apex").get<VertexId>();
    c.target_ray_prefix = j.at("target_ray_prefix").get<Path>();
    c.fan_paths = j.at("fan_paths").get<std::vector<Path>>();
    return c;
  });
}

DominatedCombCert dominated_comb_from_json(const Json& j) {
  return guarded("dominated comb certificate", [&] {
    DominatedCombCert c;
    c.comb = comb_from_json(j.at("comb"));
    c.star = star_from_json(j.at("star"));
    c.common = j.at("common").get<std::vector<VertexId>>();
    return c;
  });
}

}  // namespace combdual
