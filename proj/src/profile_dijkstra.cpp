#include "tdsweep/profile_dijkstra.hpp"

namespace tdsweep {

LabelState one_to_all_profile(const TdGraph& g, NodeId source, SearchStats* stats) {
  return profile_search(
      g.node_count(), g.period(), source,
      [&](NodeId u, auto&& relax) {
        for (EdgeId e : g.out_edges(u)) relax(g.edge(e).head, g.edge(e).ttf);
      },
      stats);
}

LabelState one_to_all_profile_upward(const TdGraph& g, NodeId source,
                                     std::span<const std::uint32_t> rank, SearchStats* stats) {
  return profile_search(
      g.node_count(), g.period(), source,
      [&](NodeId u, auto&& relax) {
        for (EdgeId e : g.out_edges(u)) {
          const auto& edge = g.edge(e);
          if (rank[u] < rank[edge.head]) relax(edge.head, edge.ttf);
        }
      },
      stats);
}

void ScalarDijkstra::reset() {
  for (NodeId v : touched_) {
    dist_[v] = kInf;
    settled_[v] = false;
  }
  for (NodeId t : targets_) is_target_[t] = false;
  touched_.clear();
  targets_.clear();
  settled_count_ = 0;
}

std::vector<Seconds> scalar_dijkstra(const TdGraph& g, NodeId source, ScalarWeight weight,
                                     std::size_t budget, std::span<const NodeId> targets) {
  ScalarDijkstra search(g.node_count());
  search.run(
      source,
      [&](NodeId u, auto&& relax) {
        for (EdgeId e : g.out_edges(u)) {
          const auto& edge = g.edge(e);
          relax(edge.head, weight == ScalarWeight::ttf_min ? edge.ttf.min() : edge.ttf.max());
        }
      },
      budget, targets);
  std::vector<Seconds> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = search.distance(v);
  return out;
}

}  // namespace tdsweep
