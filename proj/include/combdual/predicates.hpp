#pragma once

#include <functional>
#include <string>
#include <vector>

#include "combdual/graph.hpp"

namespace combdual {

/// A named vertex set, decided on the vertices of a truncation.
struct VertexPredicate {
  std::string label;
  std::function<bool(const FiniteTruncation&, int)> test;
  /// The set is known to be finite in the full graph.
  bool finite = false;

  /// Members inside the truncation, ascending.
  std::vector<VertexId> select(const FiniteTruncation& h) const;
};

/// Parses `all`, `even_ids`, `teeth`, `leaves`, `diagonal`, or
/// `distance_class(n)` for the given family. Throws InvalidArgument for
/// unknown names and for sets the family does not define.
VertexPredicate parse_predicate(const std::string& spec, const LazyGraph& g);

/// An explicit finite set.
VertexPredicate explicit_set(std::string label, std::vector<VertexId> members);

}  // namespace combdual
