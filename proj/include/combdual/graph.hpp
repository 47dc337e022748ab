#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace combdual {

using VertexId = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>;

/// Raised for invalid inputs: unknown family, bad parameters, broken
/// preconditions of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a materialization exceeds the configured vertex budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node-expansion budget shared by all searches of one analysis run.
class Budget {
 public:
  static constexpr std::uint64_t kDefault = 200'000'000;

  explicit Budget(std::uint64_t limit = kDefault) : limit_(limit) {}

  /// Returns false once the limit is crossed; the overrun is sticky.
  bool charge(std::uint64_t units = 1) {
    used_ += units;
    if (used_ > limit_) exceeded_ = true;
    return !exceeded_;
  }
  bool exceeded() const { return exceeded_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool exceeded_ = false;
};

/// A catalogued end of a built-in family.
struct EndDescriptor {
  std::string name;
  /// canonical_ray(n) returns the first n vertices of a ray in this end.
  /// Prefixes are nested.
  std::function<std::vector<VertexId>(std::size_t)> canonical_ray;
  bool dominated = false;
  std::vector<VertexId> dominating_vertices;
};

struct StructureHints {
  bool locally_finite = true;
  std::optional<std::uint32_t> degree_bound;
  std::optional<std::uint32_t> branching_cap;
  /// Every vertex lies within this distance of the root, so the graph is
  /// rayless.
  std::optional<std::uint32_t> max_depth;
  std::vector<EndDescriptor> end_catalogue;
  bool has_catalogue = false;
};

/// A countable connected graph given by a root and a deterministic
/// neighbour oracle. A neighbour stream is a finite head followed by a
/// possibly infinite tail; the oracle returns the head in full and at most
/// `limit` entries of the tail. Finite streams are all head.
class LazyGraph {
 public:
  using NeighborOracle =
      std::function<std::vector<VertexId>(VertexId v, std::size_t limit)>;

  LazyGraph(std::string name, std::map<std::string, std::string> params,
            VertexId root, NeighborOracle oracle, StructureHints hints)
      : name_(std::move(name)),
        params_(std::move(params)),
        root_(root),
        oracle_(std::move(oracle)),
        hints_(std::move(hints)) {}

  const std::string& name() const { return name_; }
  const std::map<std::string, std::string>& params() const { return params_; }
  VertexId root() const { return root_; }
  const StructureHints& hints() const { return hints_; }

  std::vector<VertexId> neighbors(VertexId v, std::size_t limit) const {
    return oracle_(v, limit);
  }

 private:
  std::string name_;
  std::map<std::string, std::string> params_;
  VertexId root_;
  NeighborOracle oracle_;
  StructureHints hints_;
};

/// Closed ball around the root, materialized with dense indices.
///
/// Vertex indices follow ascending VertexId, so "lowest index first" and
/// "lowest VertexId first" are the same tie-break. Adjacency lists are
/// sorted.
class FiniteTruncation {
 public:
  FiniteTruncation() = default;

  /// Arbitrary finite connected host, used for hand fixtures and
  /// brute-force oracles. The radius is the eccentricity of `root`.
  static FiniteTruncation from_edges(VertexId root,
                                     const std::vector<VertexId>& vertices,
                                     const std::vector<Edge>& edges,
                                     StructureHints hints = {});

  int radius() const { return radius_; }
  VertexId root() const { return ids_[root_index_]; }
  int root_index() const { return root_index_; }
  std::optional<std::uint32_t> branching_cap() const { return cap_; }
  const StructureHints& hints() const { return hints_; }
  const std::string& family() const { return family_; }

  int size() const { return static_cast<int>(ids_.size()); }
  std::size_t edge_count() const;
  VertexId id(int index) const { return ids_[static_cast<std::size_t>(index)]; }
  const std::vector<VertexId>& ids() const { return ids_; }
  std::optional<int> index_of(VertexId v) const;
  int require_index(VertexId v) const;
  bool contains(VertexId v) const { return index_.count(v) != 0; }

  std::span<const int> neighbors(int index) const {
    return adj_[static_cast<std::size_t>(index)];
  }
  bool adjacent(int a, int b) const;
  int distance(int index) const { return dist_[static_cast<std::size_t>(index)]; }
  bool on_boundary(int index) const { return distance(index) == radius_; }

  std::vector<VertexId> boundary() const;
  std::vector<Edge> edges() const;

  /// Degree of v in the host graph is known exactly when the graph is
  /// locally finite and v is interior to the ball.
  std::optional<int> exact_degree(int index) const;

 private:
  friend FiniteTruncation truncate(const LazyGraph&, int,
                                   std::optional<std::uint32_t>,
                                   std::size_t);
  void finalize(const std::vector<std::pair<int, int>>& index_edges);

  int radius_ = 0;
  int root_index_ = 0;
  std::optional<std::uint32_t> cap_;
  StructureHints hints_;
  std::string family_;
  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
};

inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

/// Closed ball of `radius` around the root. Infinite neighbour streams are
/// cut after `branching_cap` tail entries; an edge uv is kept when each
/// endpoint lists the other within the cap, so the result is symmetric and
/// monotone in the radius.
FiniteTruncation truncate(const LazyGraph& g, int radius,
                          std::optional<std::uint32_t> branching_cap = {},
                          std::size_t vertex_cap = kDefaultVertexCap);

/// D_0..D_radius as VertexId lists, ascending.
std::vector<std::vector<VertexId>> distance_classes(const FiniteTruncation& h);
std::vector<std::vector<VertexId>> distance_classes(
    const LazyGraph& g, int radius,
    std::optional<std::uint32_t> branching_cap = {});

/// Connected components of h - removed (indices), each sorted ascending,
/// listed by their smallest vertex.
std::vector<std::vector<int>> components_without(const FiniteTruncation& h,
                                                 const std::vector<char>& removed);

// Family registry ----------------------------------------------------------

using ParamMap = std::map<std::string, std::string>;

/// Builds a registered family. Throws InvalidArgument on unknown names or
/// bad parameters.
LazyGraph family(const std::string& name, const ParamMap& params = {});

std::vector<std::string> family_names();

// Encoding helpers exposed for tests and predicates.
namespace encoding {
VertexId cantor_pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(VertexId z);
/// comb: spine vertex i -> 2i, tooth i -> 2i+1.
inline VertexId comb_spine(std::uint64_t i) { return 2 * i; }
inline VertexId comb_tooth(std::uint64_t i) { return 2 * i + 1; }
/// dominated_comb_gadget: apex 0, spine i -> 2i+1, tooth i -> 2i+2.
inline constexpr VertexId kGadgetApex = 0;
inline VertexId gadget_spine(std::uint64_t i) { return 2 * i + 1; }
inline VertexId gadget_tooth(std::uint64_t i) { return 2 * i + 2; }
/// double_ray: zigzag encoding of the integers.
VertexId zigzag(std::int64_t z);
std::int64_t unzigzag(VertexId v);
/// ladder: rung i, side s -> 2i+s.
inline VertexId ladder(std::uint64_t i, int side) { return 2 * i + static_cast<VertexId>(side); }
/// taleph0_3levels: child j of v -> cantor_pair(v, j) + 1, root 0.
VertexId aleph_child(VertexId parent, std::uint64_t j);
}  // namespace encoding

}  // namespace combdual
