#pragma once

#include <vector>

#include "combdual/graph.hpp"

namespace combdual {

struct PathSystem {
  /// Each path runs from a source to a sink, as host indices.
  std::vector<std::vector<int>> paths;
  bool budget_exceeded = false;
  int value() const { return static_cast<int>(paths.size()); }
};

/// Up to `k` paths from `source` to distinct vertices of `sinks`, pairwise
/// disjoint except at the source. Sinks are terminal (never passed through);
/// vertices flagged in `blocked` are never used. Exact by augmenting paths
/// on the vertex-split network, so fewer than `k` paths means no more exist.
PathSystem fan_paths(const FiniteTruncation& h, int source, const std::vector<int>& sinks,
                     int k, const std::vector<char>& blocked, Budget& budget);

/// Up to `k` pairwise vertex-disjoint paths, each from a distinct vertex of
/// `sources` to a distinct vertex of `sinks`. A vertex that is both a source
/// and a sink yields a trivial path. Sources are never passed through.
PathSystem linkage_paths(const FiniteTruncation& h, const std::vector<int>& sources,
                         const std::vector<int>& sinks, int k,
                         const std::vector<char>& blocked, Budget& budget);

}  // namespace combdual
