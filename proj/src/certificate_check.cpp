// Certificate checkers. Deliberately self-contained: they use only the
// truncation's adjacency and share no helpers with the searches.

#include <set>

#include "combdual/star_comb.hpp"

namespace combdual {
namespace {

CertCheck fail(std::string msg) { return {false, std::move(msg)}; }

std::string vid(VertexId v) { return std::to_string(v); }

// Nonempty, inside h, consecutive vertices adjacent, no repeats.
CertCheck valid_path(const FiniteTruncation& h, const Path& p, const std::string& what) {
  if (p.empty()) return fail(what + " is empty");
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto idx = h.index_of(p[i]);
    if (!idx) return fail(what + " leaves the truncation at " + vid(p[i]));
    if (!seen.insert(p[i]).second) return fail(what + " repeats " + vid(p[i]));
    if (i > 0 && !h.adjacent(*h.index_of(p[i - 1]), *idx))
      return fail(what + " uses non-edge " + vid(p[i - 1]) + "-" + vid(p[i]));
  }
  return {};
}

}  // namespace

CertCheck check_star(const FiniteTruncation& h, const StarCert& c,
                     const std::vector<VertexId>& u, int k) {
  if (k < 2) return fail("scale below 2");
  if (static_cast<int>(c.leaf_paths.size()) < k) return fail("fewer than k leaf paths");
  if (c.attachment.size() != c.leaf_paths.size()) return fail("attachment size mismatch");
  const std::set<VertexId> uset(u.begin(), u.end());
  std::set<VertexId> used;
  for (std::size_t i = 0; i < c.leaf_paths.size(); ++i) {
    const Path& p = c.leaf_paths[i];
    const std::string what = "leaf path " + std::to_string(i);
    if (auto r = valid_path(h, p, what); !r.ok) return r;
    if (p.size() < 2) return fail(what + " is trivial");
    if (p.front() != c.center) return fail(what + " does not start at the centre");
    if (p.back() != c.attachment[i]) return fail(what + " does not end at its attachment");
    if (!uset.count(p.back())) return fail(what + " ends outside U");
    for (std::size_t j = 1; j < p.size(); ++j)
      if (!used.insert(p[j]).second) return fail("leaf paths meet at " + vid(p[j]));
  }
  return {};
}

CertCheck check_comb(const FiniteTruncation& h, const CombCert& c,
                     const std::vector<VertexId>& u, int k) {
  if (k < 1) return fail("scale below 1");
  if (auto r = valid_path(h, c.spine_prefix, "spine"); !r.ok) return r;
  if (static_cast<int>(c.teeth_paths.size()) < k) return fail("fewer than k teeth");
  if (c.teeth.size() != c.teeth_paths.size()) return fail("teeth size mismatch");
  const std::set<VertexId> spine(c.spine_prefix.begin(), c.spine_prefix.end());
  const std::set<VertexId> uset(u.begin(), u.end());
  std::set<VertexId> used;
  for (std::size_t i = 0; i < c.teeth_paths.size(); ++i) {
    const Path& p = c.teeth_paths[i];
    const std::string what = "tooth path " + std::to_string(i);
    if (auto r = valid_path(h, p, what); !r.ok) return r;
    if (!spine.count(p.front())) return fail(what + " does not start on the spine");
    for (std::size_t j = 1; j < p.size(); ++j)
      if (spine.count(p[j])) return fail(what + " returns to the spine at " + vid(p[j]));
    if (p.back() != c.teeth[i]) return fail(what + " does not end at its tooth");
    if (!uset.count(p.back())) return fail(what + " ends outside U");
    for (VertexId v : p)
      if (!used.insert(v).second) return fail("tooth paths meet at " + vid(v));
  }
  return {};
}

CertCheck check_fan(const FiniteTruncation& h, const FanCert& c, int k) {
  if (k < 1) return fail("scale below 1");
  if (auto r = valid_path(h, c.target_ray_prefix, "ray prefix"); !r.ok) return r;
  const Path& ray = c.target_ray_prefix;
  for (std::size_t i = 1; i < ray.size(); ++i)
    if (ray[i] == c.apex) return fail("apex lies on the ray beyond its first vertex");
  const std::set<VertexId> target(ray.begin(), ray.end());
  if (static_cast<int>(c.fan_paths.size()) < k) return fail("fewer than k fan paths");
  std::set<VertexId> used;
  for (std::size_t i = 0; i < c.fan_paths.size(); ++i) {
    const Path& p = c.fan_paths[i];
    const std::string what = "fan path " + std::to_string(i);
    if (auto r = valid_path(h, p, what); !r.ok) return r;
    if (p.size() < 2) return fail(what + " is trivial");
    if (p.front() != c.apex) return fail(what + " does not start at the apex");
    if (!target.count(p.back())) return fail(what + " does not end on the ray");
    for (std::size_t j = 1; j + 1 < p.size(); ++j)
      if (target.count(p[j])) return fail(what + " meets the ray internally at " + vid(p[j]));
    for (std::size_t j = 1; j < p.size(); ++j)
      if (!used.insert(p[j]).second) return fail("fan paths meet at " + vid(p[j]));
  }
  return {};
}

CertCheck check_dominated_comb(const FiniteTruncation& h, const DominatedCombCert& c,
                               const std::vector<VertexId>& u, int k) {
  if (auto r = check_comb(h, c.comb, u, 1); !r.ok) return fail("comb: " + r.problem);
  if (auto r = check_star(h, c.star, u, 2); !r.ok) return fail("star: " + r.problem);
  const std::set<VertexId> teeth(c.comb.teeth.begin(), c.comb.teeth.end());
  const std::set<VertexId> leaves(c.star.attachment.begin(), c.star.attachment.end());
  std::set<VertexId> common;
  for (VertexId v : c.common) {
    if (!teeth.count(v) || !leaves.count(v)) return fail("common vertex " + vid(v) + " is not shared");
    common.insert(v);
  }
  if (static_cast<int>(common.size()) < k) return fail("fewer than k common vertices");
  return {};
}

}  // namespace combdual
