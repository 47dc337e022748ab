#include "combdual/disjoint_paths.hpp"

#include <algorithm>
#include <deque>

namespace combdual {
namespace {

// Vertex-split unit network: host vertex v becomes in(v) = 2v and
// out(v) = 2v + 1 joined by a capacity-1 arc.
class SplitNetwork {
 public:
  struct Arc {
    int to;
    int cap;
    int rev;
    bool forward;
  };

  explicit SplitNetwork(int host_size)
      : n_(2 * host_size + 2), s_(2 * host_size), t_(2 * host_size + 1), arcs_(n_) {}

  int s() const { return s_; }
  int t() const { return t_; }
  static int in(int v) { return 2 * v; }
  static int out(int v) { return 2 * v + 1; }

  void add(int from, int to, int cap) {
    arcs_[from].push_back({to, cap, static_cast<int>(arcs_[to].size()), true});
    arcs_[to].push_back({from, 0, static_cast<int>(arcs_[from].size()) - 1, false});
  }

  /// One BFS augmentation from `start`. Returns false when no augmenting
  /// path exists or the budget runs out.
  bool augment(int start, Budget& budget) {
    std::vector<std::pair<int, int>> prev(n_, {-1, -1});
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      if (!budget.charge()) return false;
      for (int i = 0; i < static_cast<int>(arcs_[x].size()); ++i) {
        const Arc& a = arcs_[x][i];
        if (a.cap <= 0 || seen[a.to]) continue;
        seen[a.to] = 1;
        prev[a.to] = {x, i};
        if (a.to == t_) {
          for (int y = t_; y != start;) {
            auto [px, pi] = prev[y];
            Arc& fwd = arcs_[px][pi];
            fwd.cap -= 1;
            arcs_[y][fwd.rev].cap += 1;
            y = px;
          }
          return true;
        }
        queue.push_back(a.to);
      }
    }
    return false;
  }

  /// Follows saturated forward arcs from `x` until reaching the sink.
  std::vector<int> trace(int x) const {
    std::vector<int> path;
    while (x != t_) {
      if (x % 2 == 0) path.push_back(x / 2);
      int next = -1;
      for (const Arc& a : arcs_[x])
        if (a.forward && a.cap == 0 && a.to != s_) {
          next = a.to;
          break;
        }
      x = next;
    }
    return path;
  }

  const std::vector<Arc>& arcs(int x) const { return arcs_[x]; }

 private:
  int n_, s_, t_;
  std::vector<std::vector<Arc>> arcs_;
};

}  // namespace

PathSystem fan_paths(const FiniteTruncation& h, int source, const std::vector<int>& sinks,
                     int k, const std::vector<char>& blocked, Budget& budget) {
  const int n = h.size();
  std::vector<char> is_sink(n, 0);
  for (int v : sinks)
    if (v != source && !blocked[v]) is_sink[v] = 1;

  SplitNetwork net(n);
  for (int v = 0; v < n; ++v) {
    if (blocked[v] || v == source) continue;
    net.add(SplitNetwork::in(v), SplitNetwork::out(v), 1);
    if (is_sink[v]) net.add(SplitNetwork::out(v), net.t(), 1);
  }
  for (int v = 0; v < n; ++v) {
    if (blocked[v] || is_sink[v]) continue;
    for (int w : h.neighbors(v))
      if (!blocked[w] && w != source) net.add(SplitNetwork::out(v), SplitNetwork::in(w), 1);
  }

  PathSystem result;
  int value = 0;
  while (value < k) {
    if (!net.augment(SplitNetwork::out(source), budget)) break;
    ++value;
  }
  result.budget_exceeded = budget.exceeded();
  for (const auto& a : net.arcs(SplitNetwork::out(source)))
    if (a.forward && a.cap == 0) {
      std::vector<int> p{source};
      auto rest = net.trace(a.to);
      p.insert(p.end(), rest.begin(), rest.end());
      result.paths.push_back(std::move(p));
    }
  return result;
}

PathSystem linkage_paths(const FiniteTruncation& h, const std::vector<int>& sources,
                         const std::vector<int>& sinks, int k,
                         const std::vector<char>& blocked, Budget& budget) {
  const int n = h.size();
  std::vector<char> is_source(n, 0), is_sink(n, 0);
  for (int v : sources)
    if (!blocked[v]) is_source[v] = 1;
  for (int v : sinks)
    if (!blocked[v]) is_sink[v] = 1;

  SplitNetwork net(n);
  for (int v = 0; v < n; ++v) {
    if (blocked[v]) continue;
    net.add(SplitNetwork::in(v), SplitNetwork::out(v), 1);
    if (is_source[v]) net.add(net.s(), SplitNetwork::in(v), 1);
    if (is_sink[v]) net.add(SplitNetwork::out(v), net.t(), 1);
  }
  for (int v = 0; v < n; ++v) {
    if (blocked[v] || is_sink[v]) continue;
    for (int w : h.neighbors(v))
      if (!blocked[w] && !is_source[w]) net.add(SplitNetwork::out(v), SplitNetwork::in(w), 1);
  }

  PathSystem result;
  int value = 0;
  while (value < k) {
    if (!net.augment(net.s(), budget)) break;
    ++value;
  }
  result.budget_exceeded = budget.exceeded();
  for (const auto& a : net.arcs(net.s()))
    if (a.forward && a.cap == 0) result.paths.push_back(net.trace(a.to));
  std::sort(result.paths.begin(), result.paths.end());
  return result;
}

}  // namespace combdual
