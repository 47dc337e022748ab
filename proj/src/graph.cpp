#include "combdual/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <unordered_set>

namespace combdual {

// FiniteTruncation ----------------------------------------------------------

std::optional<int> FiniteTruncation::index_of(VertexId v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FiniteTruncation::require_index(VertexId v) const {
  auto it = index_.find(v);
  if (it == index_.end())
    throw InvalidArgument("vertex " + std::to_string(v) + " not in truncation");
  return it->second;
}

bool FiniteTruncation::adjacent(int a, int b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t FiniteTruncation::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

std::vector<VertexId> FiniteTruncation::boundary() const {
  std::vector<VertexId> out;
  for (int i = 0; i < size(); ++i)
    if (on_boundary(i)) out.push_back(id(i));
  return out;
}

std::vector<Edge> FiniteTruncation::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < size(); ++i)
    for (int j : neighbors(i))
      if (i < j) out.emplace_back(id(i), id(j));
  return out;
}

std::optional<int> FiniteTruncation::exact_degree(int index) const {
  if (!hints_.locally_finite) return std::nullopt;
  if (distance(index) >= radius_) return std::nullopt;
  return static_cast<int>(neighbors(index).size());
}

void FiniteTruncation::finalize(const std::vector<std::pair<int, int>>& index_edges) {
  // ids_ is not yet sorted; remap to ascending order.
  const std::size_t n = ids_.size();
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids_[a] < ids_[b]; });
  std::vector<int> remap(n);
  for (std::size_t pos = 0; pos < n; ++pos) remap[order[pos]] = static_cast<int>(pos);

  std::vector<VertexId> sorted_ids(n);
  for (std::size_t i = 0; i < n; ++i) sorted_ids[remap[i]] = ids_[i];
  ids_ = std::move(sorted_ids);
  root_index_ = remap[root_index_];

  index_.clear();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(ids_[i], static_cast<int>(i));

  adj_.assign(n, {});
  for (auto [a, b] : index_edges) {
    int ra = remap[a], rb = remap[b];
    if (ra == rb) continue;
    adj_[ra].push_back(rb);
    adj_[rb].push_back(ra);
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  dist_.assign(n, -1);
  std::deque<int> queue{root_index_};
  dist_[root_index_] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v])
      if (dist_[w] < 0) {
        dist_[w] = dist_[v] + 1;
        queue.push_back(w);
      }
  }
}

FiniteTruncation FiniteTruncation::from_edges(VertexId root,
                                              const std::vector<VertexId>& vertices,
                                              const std::vector<Edge>& edges,
                                              StructureHints hints) {
  FiniteTruncation h;
  h.hints_ = std::move(hints);
  h.family_ = "explicit";
  std::unordered_map<VertexId, int> tmp;
  for (VertexId v : vertices) {
    if (tmp.count(v)) continue;
    tmp.emplace(v, static_cast<int>(h.ids_.size()));
    h.ids_.push_back(v);
  }
  if (!tmp.count(root)) throw InvalidArgument("root not among vertices");
  h.root_index_ = tmp.at(root);
  std::vector<std::pair<int, int>> ie;
  for (auto [u, v] : edges) {
    if (!tmp.count(u) || !tmp.count(v)) throw InvalidArgument("edge endpoint not a vertex");
    ie.emplace_back(tmp.at(u), tmp.at(v));
  }
  h.finalize(ie);
  int ecc = 0;
  for (int d : h.dist_) {
    if (d < 0) throw InvalidArgument("host graph is disconnected");
    ecc = std::max(ecc, d);
  }
  h.radius_ = ecc;
  return h;
}

FiniteTruncation truncate(const LazyGraph& g, int radius,
                          std::optional<std::uint32_t> branching_cap,
                          std::size_t vertex_cap) {
  if (radius < 0) throw InvalidArgument("radius must be non-negative");
  if (!g.hints().locally_finite && !branching_cap)
    throw InvalidArgument("family '" + g.name() +
                          "' is not locally finite; a branching cap is required");
  const std::size_t limit =
      branching_cap ? *branching_cap : std::numeric_limits<std::size_t>::max();

  FiniteTruncation h;
  h.radius_ = radius;
  h.cap_ = branching_cap;
  h.hints_ = g.hints();
  h.family_ = g.name();

  std::unordered_map<VertexId, std::vector<VertexId>> streams;
  auto stream = [&](VertexId v) -> const std::vector<VertexId>& {
    auto it = streams.find(v);
    if (it != streams.end()) return it->second;
    return streams.emplace(v, g.neighbors(v, limit)).first->second;
  };
  auto mutual = [&](VertexId v, VertexId w) {
    if (!branching_cap) return true;
    const auto& sw = stream(w);
    return std::find(sw.begin(), sw.end(), v) != sw.end();
  };

  std::unordered_map<VertexId, int> local;
  std::vector<int> depth;
  std::deque<VertexId> queue;
  auto discover = [&](VertexId v, int d) {
    local.emplace(v, static_cast<int>(h.ids_.size()));
    h.ids_.push_back(v);
    depth.push_back(d);
    queue.push_back(v);
    if (h.ids_.size() > vertex_cap)
      throw BudgetExceeded("truncation of '" + g.name() + "' at radius " +
                           std::to_string(radius) + " exceeds " +
                           std::to_string(vertex_cap) + " vertices");
  };
  discover(g.root(), 0);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    int d = depth[local.at(v)];
    if (d >= radius) continue;
    for (VertexId w : stream(v)) {
      if (local.count(w) || !mutual(v, w)) continue;
      discover(w, d + 1);
    }
  }

  std::vector<std::pair<int, int>> ie;
  for (std::size_t i = 0; i < h.ids_.size(); ++i) {
    VertexId v = h.ids_[i];
    for (VertexId w : stream(v)) {
      auto it = local.find(w);
      if (it == local.end() || it->second <= static_cast<int>(i)) continue;
      if (!mutual(v, w)) continue;
      ie.emplace_back(static_cast<int>(i), it->second);
    }
  }
  h.root_index_ = 0;
  h.finalize(ie);
  return h;
}

std::vector<std::vector<VertexId>> distance_classes(const FiniteTruncation& h) {
  std::vector<std::vector<VertexId>> classes(static_cast<std::size_t>(h.radius()) + 1);
  for (int i = 0; i < h.size(); ++i)
    classes[static_cast<std::size_t>(h.distance(i))].push_back(h.id(i));
  return classes;
}

std::vector<std::vector<VertexId>> distance_classes(const LazyGraph& g, int radius,
                                                    std::optional<std::uint32_t> cap) {
  return distance_classes(truncate(g, radius, cap));
}

std::vector<std::vector<int>> components_without(const FiniteTruncation& h,
                                                 const std::vector<char>& removed) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(removed);
  std::vector<int> stack;
  for (int s = 0; s < h.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : h.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Encodings -----------------------------------------------------------------

namespace encoding {

VertexId cantor_pair(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(VertexId z) {
  // Largest s with s(s+1)/2 <= z.
  auto s = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1) - 1) / 2);
  while (s * (s + 1) / 2 > z) --s;
  while ((s + 1) * (s + 2) / 2 <= z) ++s;
  const std::uint64_t y = z - s * (s + 1) / 2;
  return {s - y, y};
}

VertexId zigzag(std::int64_t z) {
  return z >= 0 ? static_cast<VertexId>(z) * 2 : static_cast<VertexId>(-z) * 2 - 1;
}

std::int64_t unzigzag(VertexId v) {
  return (v % 2 == 0) ? static_cast<std::int64_t>(v / 2)
                      : -static_cast<std::int64_t>((v + 1) / 2);
}

VertexId aleph_child(VertexId parent, std::uint64_t j) { return cantor_pair(parent, j) + 1; }

}  // namespace encoding

// Families --------------------------------------------------------------------

namespace {

using encoding::cantor_pair;
using encoding::cantor_unpair;

std::uint64_t param_uint(const ParamMap& p, const std::string& key, std::uint64_t fallback,
                         std::uint64_t min_value) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(it->second, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("parameter '" + key + "' must be an unsigned integer");
  }
  if (used != it->second.size())
    throw InvalidArgument("parameter '" + key + "' must be an unsigned integer");
  if (v < min_value)
    throw InvalidArgument("parameter '" + key + "' must be >= " + std::to_string(min_value));
  return v;
}

void reject_unknown(const ParamMap& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, _] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InvalidArgument("unknown parameter '" + k + "'");
  }
}

EndDescriptor make_end(std::string name,
                       std::function<VertexId(std::size_t)> nth, bool dominated = false,
                       std::vector<VertexId> dominators = {}) {
  EndDescriptor e;
  e.name = std::move(name);
  e.canonical_ray = [nth = std::move(nth)](std::size_t n) {
    std::vector<VertexId> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(nth(i));
    return out;
  };
  e.dominated = dominated;
  e.dominating_vertices = std::move(dominators);
  return e;
}

StructureHints locally_finite(std::uint32_t degree) {
  StructureHints h;
  h.locally_finite = true;
  h.degree_bound = degree;
  h.has_catalogue = true;
  return h;
}

LazyGraph make_ray(const ParamMap& p) {
  reject_unknown(p, {});
  auto hints = locally_finite(2);
  hints.end_catalogue.push_back(make_end("ray", [](std::size_t i) { return VertexId{i}; }));
  return LazyGraph("ray", p, 0,
                   [](VertexId v, std::size_t) {
                     std::vector<VertexId> out;
                     if (v > 0) out.push_back(v - 1);
                     out.push_back(v + 1);
                     return out;
                   },
                   hints);
}

LazyGraph make_double_ray(const ParamMap& p) {
  reject_unknown(p, {});
  using encoding::unzigzag;
  using encoding::zigzag;
  auto hints = locally_finite(2);
  hints.end_catalogue.push_back(make_end(
      "plus", [](std::size_t i) { return zigzag(static_cast<std::int64_t>(i)); }));
  hints.end_catalogue.push_back(make_end(
      "minus", [](std::size_t i) { return zigzag(-static_cast<std::int64_t>(i)); }));
  return LazyGraph("double_ray", p, 0,
                   [](VertexId v, std::size_t) {
                     const std::int64_t z = unzigzag(v);
                     return std::vector<VertexId>{zigzag(z + 1), zigzag(z - 1)};
                   },
                   hints);
}

LazyGraph make_comb(const ParamMap& p) {
  reject_unknown(p, {});
  using encoding::comb_spine;
  using encoding::comb_tooth;
  auto hints = locally_finite(3);
  hints.end_catalogue.push_back(
      make_end("spine", [](std::size_t i) { return comb_spine(i); }));
  return LazyGraph("comb", p, comb_spine(0),
                   [](VertexId v, std::size_t) {
                     std::vector<VertexId> out;
                     const std::uint64_t i = v / 2;
                     if (v % 2 == 1) {
                       out.push_back(comb_spine(i));
                     } else {
                       out.push_back(comb_spine(i + 1));
                       out.push_back(comb_tooth(i));
                       if (i > 0) out.push_back(comb_spine(i - 1));
                     }
                     return out;
                   },
                   hints);
}

LazyGraph make_star_inf(const ParamMap& p) {
  reject_unknown(p, {});
  StructureHints hints;
  hints.locally_finite = false;
  hints.max_depth = 1;
  hints.has_catalogue = true;
  return LazyGraph("star_inf", p, 0,
                   [](VertexId v, std::size_t limit) {
                     std::vector<VertexId> out;
                     if (v != 0) return std::vector<VertexId>{0};
                     for (std::size_t j = 1; j <= limit; ++j) out.push_back(j);
                     return out;
                   },
                   hints);
}

LazyGraph make_grid(const ParamMap& p) {
  reject_unknown(p, {});
  auto hints = locally_finite(4);
  hints.end_catalogue.push_back(make_end("grid", [](std::size_t i) {
    // Staircase along the diagonal: (0,0),(1,0),(1,1),(2,1),(2,2),...
    const std::uint64_t x = (i + 1) / 2, y = i / 2;
    return cantor_pair(x, y);
  }));
  return LazyGraph("grid", p, 0,
                   [](VertexId v, std::size_t) {
                     auto [x, y] = cantor_unpair(v);
                     std::vector<VertexId> out;
                     out.push_back(cantor_pair(x + 1, y));          // right
                     out.push_back(cantor_pair(x, y + 1));          // up
                     if (x > 0) out.push_back(cantor_pair(x - 1, y));  // left
                     if (y > 0) out.push_back(cantor_pair(x, y - 1));  // down
                     return out;
                   },
                   hints);
}

LazyGraph make_ladder(const ParamMap& p) {
  reject_unknown(p, {});
  using encoding::ladder;
  auto hints = locally_finite(3);
  hints.end_catalogue.push_back(make_end("ladder", [](std::size_t i) { return ladder(i, 0); }));
  return LazyGraph("ladder", p, 0,
                   [](VertexId v, std::size_t) {
                     const std::uint64_t i = v / 2;
                     const int s = static_cast<int>(v % 2);
                     std::vector<VertexId> out{ladder(i, 1 - s), ladder(i + 1, s)};
                     if (i > 0) out.push_back(ladder(i - 1, s));
                     return out;
                   },
                   hints);
}

// d-ary tree in heap numbering, shifted by `offset`.
std::vector<VertexId> heap_neighbors(VertexId h, std::uint64_t d) {
  std::vector<VertexId> out;
  if (h > 0) out.push_back((h - 1) / d);
  for (std::uint64_t c = 1; c <= d; ++c) out.push_back(d * h + c);
  return out;
}

EndDescriptor heap_end(std::string name, std::uint64_t d, std::uint64_t child,
                       VertexId offset, bool dominated, std::vector<VertexId> dom) {
  return make_end(
      std::move(name),
      [d, child, offset](std::size_t i) {
        VertexId h = 0;
        for (std::size_t k = 0; k < i; ++k) h = d * h + child;
        return h + offset;
      },
      dominated, std::move(dom));
}

LazyGraph make_regular_tree(const ParamMap& p) {
  reject_unknown(p, {"d"});
  const std::uint64_t d = param_uint(p, "d", 2, 2);
  if (d > 64) throw InvalidArgument("parameter 'd' must be <= 64");
  auto hints = locally_finite(static_cast<std::uint32_t>(d + 1));
  hints.end_catalogue.push_back(heap_end("leftmost", d, 1, 0, false, {}));
  hints.end_catalogue.push_back(heap_end("rightmost", d, d, 0, false, {}));
  return LazyGraph("regular_tree", p, 0,
                   [d](VertexId v, std::size_t) {
                     return heap_neighbors(v, d);
                   },
                   hints);
}

std::uint32_t aleph_depth(VertexId v) {
  std::uint32_t depth = 0;
  while (v != 0) {
    v = cantor_unpair(v - 1).first;
    ++depth;
  }
  return depth;
}

LazyGraph make_taleph0_3levels(const ParamMap& p) {
  reject_unknown(p, {});
  StructureHints hints;
  hints.locally_finite = false;
  hints.max_depth = 3;
  hints.has_catalogue = true;
  return LazyGraph("taleph0_3levels", p, 0,
                   [](VertexId v, std::size_t limit) {
                     std::vector<VertexId> out;
                     if (v != 0) out.push_back(cantor_unpair(v - 1).first);
                     if (aleph_depth(v) < 3)
                       for (std::uint64_t j = 0; j < limit; ++j)
                         out.push_back(encoding::aleph_child(v, j));
                     return out;
                   },
                   hints);
}

LazyGraph make_dominated_comb_gadget(const ParamMap& p) {
  reject_unknown(p, {});
  using encoding::gadget_spine;
  using encoding::gadget_tooth;
  using encoding::kGadgetApex;
  StructureHints hints;
  hints.locally_finite = false;
  hints.has_catalogue = true;
  hints.end_catalogue.push_back(make_end(
      "spine", [](std::size_t i) { return gadget_spine(i); }, true, {kGadgetApex}));
  return LazyGraph("dominated_comb_gadget", p, gadget_spine(0),
                   [](VertexId v, std::size_t limit) {
                     std::vector<VertexId> out;
                     if (v == kGadgetApex) {
                       for (std::uint64_t i = 0; out.size() < limit; ++i)
                         out.push_back(gadget_tooth(i));
                       return out;
                     }
                     const std::uint64_t i = (v - 1) / 2;
                     if (v % 2 == 0) {
                       out = {kGadgetApex, gadget_spine(i)};
                     } else {
                       if (i > 0) out.push_back(gadget_spine(i - 1));
                       out.push_back(gadget_tooth(i));
                       out.push_back(gadget_spine(i + 1));
                     }
                     return out;
                   },
                   hints);
}

LazyGraph make_dominated_tree(const ParamMap& p) {
  reject_unknown(p, {"d"});
  const std::uint64_t d = param_uint(p, "d", 2, 2);
  if (d > 64) throw InvalidArgument("parameter 'd' must be <= 64");
  static constexpr VertexId apex = 0;
  StructureHints hints;
  hints.locally_finite = false;
  hints.has_catalogue = true;
  hints.end_catalogue.push_back(heap_end("leftmost", d, 1, 1, true, {apex}));
  hints.end_catalogue.push_back(heap_end("rightmost", d, d, 1, true, {apex}));
  return LazyGraph("dominated_tree", p, 1,
                   [d](VertexId v, std::size_t limit) {
                     std::vector<VertexId> out;
                     if (v == apex) {
                       for (VertexId w = 1; out.size() < limit; ++w) out.push_back(w);
                       return out;
                     }
                     out.push_back(apex);
                     for (VertexId w : heap_neighbors(v - 1, d)) out.push_back(w + 1);
                     return out;
                   },
                   hints);
}

struct Entry {
  const char* name;
  LazyGraph (*make)(const ParamMap&);
};

constexpr Entry kRegistry[] = {
    {"ray", make_ray},
    {"double_ray", make_double_ray},
    {"comb", make_comb},
    {"star_inf", make_star_inf},
    {"grid", make_grid},
    {"ladder", make_ladder},
    {"regular_tree", make_regular_tree},
    {"taleph0_3levels", make_taleph0_3levels},
    {"dominated_comb_gadget", make_dominated_comb_gadget},
    {"dominated_tree", make_dominated_tree},
};

}  // namespace

LazyGraph family(const std::string& name, const ParamMap& params) {
  for (const auto& e : kRegistry)
    if (name == e.name) return e.make(params);
  throw InvalidArgument("unknown family '" + name + "'");
}

std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (const auto& e : kRegistry) out.emplace_back(e.name);
  return out;
}

}  // namespace combdual
