#pragma once

#include <optional>
#include <string>
#include <vector>

#include "combdual/graph.hpp"
#include "combdual/normal_tree.hpp"

namespace combdual {

using Path = std::vector<VertexId>;

/// k paths from a common centre, disjoint apart from it, ending in U.
struct StarCert {
  VertexId center = 0;
  std::vector<Path> leaf_paths;
  std::vector<VertexId> attachment;
};

/// A spine prefix with k disjoint teeth paths, each meeting the spine in
/// exactly its first vertex and ending in U.
struct CombCert {
  Path spine_prefix;
  std::vector<Path> teeth_paths;
  std::vector<VertexId> teeth;
  /// The last spine vertex lies on the truncation boundary, so the spine
  /// can be continued outward. Recorded, not required by the checker.
  bool spine_reaches_boundary = false;
};

/// k paths from an apex to distinct vertices of a ray prefix, disjoint
/// apart from the apex and internally avoiding the prefix.
struct FanCert {
  VertexId apex = 0;
  Path target_ray_prefix;
  std::vector<Path> fan_paths;
};

struct DominatedCombCert {
  CombCert comb;
  StarCert star;
  std::vector<VertexId> common;
};

enum class OutcomeKind { Found, Exhausted, ImpossibleByBound };
std::string to_string(OutcomeKind k);

template <class Cert>
struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::Exhausted;
  std::optional<Cert> cert;
  std::string reason;
  /// Exhausted because the node budget ran out, rather than because the
  /// truncation was searched completely.
  bool budget_exceeded = false;
  /// Largest scale reached by any candidate.
  int best = 0;

  bool found() const { return kind == OutcomeKind::Found; }
};

using StarOutcome = SearchOutcome<StarCert>;
using CombOutcome = SearchOutcome<CombCert>;
using FanOutcome = SearchOutcome<FanCert>;
using DominatedCombOutcome = SearchOutcome<DominatedCombCert>;

struct DichotomyOutcome {
  OutcomeKind kind = OutcomeKind::Exhausted;
  std::optional<StarCert> star;
  std::optional<CombCert> comb;
  std::string reason;
};

// Independent checkers ------------------------------------------------------

struct CertCheck {
  bool ok = true;
  std::string problem;
};

CertCheck check_star(const FiniteTruncation& h, const StarCert& c,
                     const std::vector<VertexId>& u, int k);
CertCheck check_comb(const FiniteTruncation& h, const CombCert& c,
                     const std::vector<VertexId>& u, int k);
CertCheck check_fan(const FiniteTruncation& h, const FanCert& c, int k);
CertCheck check_dominated_comb(const FiniteTruncation& h, const DominatedCombCert& c,
                               const std::vector<VertexId>& u, int k);

// Searches ------------------------------------------------------------------

/// Pigeonhole on a BFS spanning tree of h, falling back to the general
/// searches. Throws InvalidArgument when u is empty or k < 2.
DichotomyOutcome star_comb_dichotomy(const FiniteTruncation& h, const std::vector<VertexId>& u,
                                     int k, Budget& budget);

StarOutcome find_star(const FiniteTruncation& h, const std::vector<VertexId>& u, int k,
                      Budget& budget);

/// The spine must end on the truncation boundary; teeth are routed from
/// the spine by a disjoint-path computation.
CombOutcome find_comb(const FiniteTruncation& h, const std::vector<VertexId>& u, int k,
                      Budget& budget);

/// Teeth for a prescribed spine (a path in h): spine vertices in U are
/// trivial teeth, the rest are routed to U off the spine.
CombOutcome comb_on_spine(const FiniteTruncation& h, const Path& spine,
                          const std::vector<VertexId>& u, int k, Budget& budget);

/// `prefix` must be a path in h; v may only be its first vertex.
FanOutcome find_fan(const FiniteTruncation& h, VertexId v, const Path& prefix, int k,
                    Budget& budget);

DominatedCombOutcome find_dominated_comb(const FiniteTruncation& h,
                                         const std::vector<VertexId>& u, int k,
                                         Budget& budget);

/// Star with tree paths in a finite-depth rooted tree: the lowest vertex
/// with k child subtrees meeting u.
StarOutcome rayless_tree_star(const RootedTree& t, const std::vector<VertexId>& u, int k);

}  // namespace combdual
