#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combdual/normal_tree.hpp"
#include "combdual/predicates.hpp"
#include "combdual/star_comb.hpp"

namespace combdual {

// Dispersedness -------------------------------------------------------------

enum class DispersedKind { NoCombFound, CombFound, ExactDispersed };
std::string to_string(DispersedKind k);

struct DispersednessReport {
  std::string set_label;
  DispersedKind outcome = DispersedKind::NoCombFound;
  std::optional<CombCert> comb;
  std::string reason;
  /// NoCombFound only because the node budget ran out.
  bool budget_exceeded = false;
  int best = 0;
};

/// Comb search against w ∩ ball at scale k. Rayless hosts and sets known
/// to be finite in the full graph are exactly dispersed.
DispersednessReport is_dispersed(const FiniteTruncation& h, const std::string& label,
                                 const std::vector<VertexId>& members, bool known_finite, int k,
                                 Budget& budget);
DispersednessReport is_dispersed(const FiniteTruncation& h, const VertexPredicate& w, int k,
                                 Budget& budget);

/// Candidate dispersed decomposition read off a normal tree: its levels,
/// each re-tested by is_dispersed.
std::vector<DispersednessReport> tree_levels_dispersed(const FiniteTruncation& h,
                                                       const RootedTree& t, int k,
                                                       Budget& budget);

// Normal trees from dispersed sets ------------------------------------------

struct NormalTreeCert {
  RootedTree tree{0};
  int host_radius = 0;
  std::vector<VertexId> cofinal_for;
  /// Leaves whose generalized up-closure reaches the truncation boundary.
  std::set<VertexId> boundary_flags;
};

/// Iterated normal extension: targets are absorbed set by set, in BFS
/// order within a set; each missing target is joined by a shortest path
/// hung above the top of its component's (chain) neighbourhood. The root
/// is the first target. Throws std::logic_error if a neighbourhood is not
/// a chain, which cannot happen for a correct implementation.
NormalTreeCert build_normal_tree(const FiniteTruncation& h,
                                 const std::vector<std::vector<VertexId>>& sets);

// Reports -------------------------------------------------------------------

struct ComponentEntry {
  VertexId smallest = 0;
  std::size_t size = 0;
  std::vector<VertexId> neighbourhood;  // by tree level
  bool chain = true;
  bool touches_boundary = false;
};

struct ComponentReport {
  std::vector<ComponentEntry> components;
  bool all_chains = true;
};

ComponentReport component_neighbourhood_report(const FiniteTruncation& h, const RootedTree& t);

/// Fan searches from every ball vertex into one normal-ray prefix.
struct RayEvidence {
  Path prefix;
  int candidates = 0;
  int impossible_by_bound = 0;
  int exhausted = 0;
  int found = 0;
  std::vector<FanCert> fans;  // the first few found
  bool undominated() const { return found == 0; }
};

RayEvidence fan_evidence(const FiniteTruncation& h, const Path& prefix, int k, Budget& budget);

/// Root-to-leaf paths of t ending at the given leaves, a spread sample of
/// at most `max_rays`, in ascending leaf order.
std::vector<Path> ray_prefixes(const RootedTree& t, const std::set<VertexId>& leaves,
                               std::size_t max_rays);

// Catalogued ends -----------------------------------------------------------

/// The longest prefix of the end's canonical ray that is a path in h.
Path canonical_prefix(const FiniteTruncation& h, const EndDescriptor& end);

/// A comb attached to `u` along the canonical ray prefix at scale k.
bool end_in_closure(const FiniteTruncation& h, const EndDescriptor& end,
                    const std::vector<VertexId>& u, int k, Budget& budget);

struct EndTrace {
  std::string end;
  bool dominated = false;
  bool in_closure_u = false;
  bool in_closure_tree = false;
  /// Top of the chain shared by the anchors of the ray's tail.
  std::optional<VertexId> top;
  int top_level = -1;
  bool reaches_boundary = false;
};

struct EndCorrespondence {
  std::vector<EndTrace> ends;
  /// Each end is reached by a comb attached to U iff by one attached to V(t).
  bool closure_equal = true;
  /// Ends in the closure of U lead to pairwise incomparable tops.
  bool distinct = true;
  bool skipped = false;  // no catalogue
};

EndCorrespondence trace_catalogued_ends(const FiniteTruncation& h, const RootedTree& t,
                                        const std::vector<VertexId>& u, int k, Budget& budget);

// Dichotomy pipeline --------------------------------------------------------

enum class Branch { DominatedComb, NormalTree, Inconclusive };
std::string to_string(Branch b);

struct Theorem1Output {
  Branch branch = Branch::Inconclusive;
  std::vector<DispersednessReport> classes;
  std::optional<DominatedCombCert> dominated_comb;
  /// Which step produced the dominated comb.
  std::string dominated_comb_source;
  std::optional<NormalTreeCert> normal_tree;  // pruned to the down-closure of U
  std::optional<RootedTree> full_tree;
  bool pruned_normal = false;
  CofinalityResult cofinality;
  ComponentReport components;
  std::vector<RayEvidence> rays;
  EndCorrespondence ends;
  bool exclusive = true;
  std::string exclusivity_detail;
  std::string reason;
};

struct PipelineOptions {
  int k = 10;
  std::size_t max_rays = 8;
};

Theorem1Output theorem1_pipeline(const FiniteTruncation& h, const VertexPredicate& u,
                                 const PipelineOptions& opt, Budget& budget);

}  // namespace combdual
