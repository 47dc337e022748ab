#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "combdual/graph.hpp"
#include "combdual/serialize.hpp"

namespace combdual {

/// Everything a run depends on; runs are deterministic functions of it.
struct RunConfig {
  std::string family;
  ParamMap params;
  std::string u = "all";
  int radius = 10;
  std::optional<std::uint32_t> cap;
  int k = 10;
  int min_gap = 4;
  std::uint64_t budget = Budget::kDefault;
  std::size_t max_rays = 8;
  /// Recursion depth for the S-tree construction; 0 runs until the frontier.
  int levels = 0;
};

Json config_to_json(const RunConfig& c);
/// Missing keys keep their defaults. Throws InvalidArgument.
RunConfig config_from_json(const Json& j);

/// Report of the normal-tree pipeline: branch, certificates, the pruned
/// normal tree, search evidence and a predicate table.
Json analyze_report(const RunConfig& c);

/// theorem is one of "3.3", "3.8", "3.5", "2". Refuses (with the
/// certificate) unless the pipeline takes the normal-tree branch.
Json decompose_report(const RunConfig& c, const std::string& theorem);

/// Re-runs every checker of a stored report against its artifacts and
/// returns the fresh predicate table.
Json verify_report(const Json& report);

/// Re-checks the certificates in a report (or a single certificate
/// document) on a fresh truncation, optionally at another radius.
Json recheck_certificates(const Json& doc, std::optional<int> radius);

/// 0 all predicates pass, 1 some predicate fails or a decomposition was
/// refused, 2 inconclusive.
int exit_code(const Json& report);

}  // namespace combdual
