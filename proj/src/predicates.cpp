#include "combdual/predicates.hpp"

#include <algorithm>
#include <charconv>
#include <memory>
#include <regex>

namespace combdual {

std::vector<VertexId> VertexPredicate::select(const FiniteTruncation& h) const {
  std::vector<VertexId> out;
  for (int i = 0; i < h.size(); ++i)
    if (test(h, i)) out.push_back(h.id(i));
  return out;
}

VertexPredicate explicit_set(std::string label, std::vector<VertexId> members) {
  std::sort(members.begin(), members.end());
  auto shared = std::make_shared<std::vector<VertexId>>(std::move(members));
  VertexPredicate p;
  p.label = std::move(label);
  p.finite = true;
  p.test = [shared](const FiniteTruncation& h, int i) {
    return std::binary_search(shared->begin(), shared->end(), h.id(i));
  };
  return p;
}

VertexPredicate parse_predicate(const std::string& spec, const LazyGraph& g) {
  VertexPredicate p;
  p.label = spec;
  const std::string& fam = g.name();
  if (spec == "all") {
    p.test = [](const FiniteTruncation&, int) { return true; };
    p.finite = g.hints().max_depth.has_value() && g.hints().locally_finite;
    return p;
  }
  if (spec == "even_ids") {
    p.test = [](const FiniteTruncation& h, int i) { return h.id(i) % 2 == 0; };
    return p;
  }
  if (spec == "teeth") {
    if (fam == "comb") {
      p.test = [](const FiniteTruncation& h, int i) { return h.id(i) % 2 == 1; };
    } else if (fam == "dominated_comb_gadget") {
      p.test = [](const FiniteTruncation& h, int i) {
        return h.id(i) != encoding::kGadgetApex && h.id(i) % 2 == 0;
      };
    } else {
      throw InvalidArgument("family '" + fam + "' has no teeth");
    }
    return p;
  }
  if (spec == "leaves") {
    // Vertices of degree 1 in the full graph, where the truncation knows it.
    p.test = [](const FiniteTruncation& h, int i) {
      if (auto d = h.exact_degree(i)) return *d == 1;
      auto depth = h.hints().max_depth;
      return depth && h.distance(i) == static_cast<int>(*depth);
    };
    return p;
  }
  if (spec == "diagonal") {
    if (fam != "grid") throw InvalidArgument("the diagonal is defined for the grid only");
    p.test = [](const FiniteTruncation& h, int i) {
      auto [x, y] = encoding::cantor_unpair(h.id(i));
      return x == y;
    };
    return p;
  }
  static const std::regex dc(R"(distance_class\((\d+)\))");
  std::smatch m;
  if (std::regex_match(spec, m, dc)) {
    int n = 0;
    const std::string digits = m[1];
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw InvalidArgument("bad distance class index");
    p.test = [n](const FiniteTruncation& h, int i) { return h.distance(i) == n; };
    p.finite = g.hints().locally_finite;
    return p;
  }
  throw InvalidArgument("unknown vertex predicate '" + spec + "'");
}

}  // namespace combdual
