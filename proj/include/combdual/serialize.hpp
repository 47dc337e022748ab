#pragma once

#include <string>

#include <json.hpp>

#include "combdual/graph.hpp"
#include "combdual/normal_tree.hpp"
#include "combdual/star_comb.hpp"
#include "combdual/tree_decomp.hpp"

namespace combdual {

using Json = nlohmann::ordered_json;

// Every *_from_json throws InvalidArgument on malformed input.

Json truncation_to_json(const FiniteTruncation& h);
std::string truncation_to_dot(const FiniteTruncation& h);

/// {"root": r, "parent": [[child, parent], ...]} with children ascending.
Json tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j);
std::string tree_to_dot(const RootedTree& t, const std::string& name = "T");

Json td_to_json(const TreeDecomposition& td);
TreeDecomposition td_from_json(const Json& j);
std::string td_to_dot(const TreeDecomposition& td);

Json snt_to_json(const SNTree& snt);
SNTree snt_from_json(const Json& j);

Json to_json(const StarCert& c);
Json to_json(const CombCert& c);
Json to_json(const FanCert& c);
Json to_json(const DominatedCombCert& c);
StarCert star_from_json(const Json& j);
CombCert comb_from_json(const Json& j);
FanCert fan_from_json(const Json& j);
DominatedCombCert dominated_comb_from_json(const Json& j);

}  // namespace combdual
