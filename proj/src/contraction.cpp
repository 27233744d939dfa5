#include "tdsweep/contraction.hpp"

#include <algorithm>

namespace tdsweep {

ContractionGraph::ContractionGraph(const TdGraph& g)
    : out_(g.node_count()),
      in_(g.node_count()),
      contracted_(g.node_count(), false),
      period_(g.period()),
      scalar_(g.node_count()) {
  edges_.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({e.tail, e.head, e.ttf, kNoNode});
    alive_.push_back(true);
    out_[e.tail].push_back({e.head, id});
    in_[e.head].push_back({e.tail, id});
  }
}

const ContractionGraph::Edge* ContractionGraph::find_edge(NodeId u, NodeId w) const {
  for (const Arc& a : out_[u]) {
    if (a.other == w) return &edges_[a.edge];
  }
  return nullptr;
}

std::vector<NodeId> ContractionGraph::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  out.reserve(out_[v].size() + in_[v].size());
  for (const Arc& a : out_[v]) out.push_back(a.other);
  for (const Arc& a : in_[v]) out.push_back(a.other);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ContractionGraph::points_removed_with(NodeId v) const {
  std::size_t points = 0;
  for (const Arc& a : out_[v]) points += edges_[a.edge].ttf.size();
  for (const Arc& a : in_[v]) points += edges_[a.edge].ttf.size();
  return points;
}

template <class Relax>
void ContractionGraph::for_each_live_out(NodeId u, NodeId excluded, Relax&& relax) const {
  for (const Arc& a : out_[u]) {
    if (a.other != excluded) relax(a.other, edges_[a.edge].ttf);
  }
}

bool ContractionGraph::witness_for(NodeId u, NodeId w, NodeId excluded, const Ttf& shortcut,
                                   Seconds scalar_max_distance, const OrderParams& p) const {
  if (scalar_max_distance <= shortcut.min()) return true;
  if (const Edge* direct = find_edge(u, w)) {
    if (dominates(shortcut, direct->ttf, Dominance::non_strict)) return true;
  }
  if (!p.exact_witness) return false;
  const LabelState found = profile_search(
      node_count(), period_, u,
      [&](NodeId x, auto&& relax) { for_each_live_out(x, excluded, relax); }, nullptr,
      p.witness_budget);
  const auto& label = found.labels[w];
  return label && dominates(shortcut, *label, Dominance::non_strict);
}

bool ContractionGraph::witness_exists(NodeId u, NodeId w, NodeId excluded, const Ttf& shortcut,
                                      const OrderParams& p) const {
  const NodeId targets[] = {w};
  scalar_.run(
      u,
      [&](NodeId x, auto&& relax) {
        for_each_live_out(x, excluded, [&](NodeId y, const Ttf& f) { relax(y, f.max()); });
      },
      p.witness_budget, targets);
  return witness_for(u, w, excluded, shortcut, scalar_.distance(w), p);
}

std::vector<ContractionGraph::Shortcut> ContractionGraph::needed_shortcuts(
    NodeId v, const OrderParams& p) const {
  std::vector<Shortcut> shortcuts;
  std::vector<NodeId> targets;
  for (const Arc& in_arc : in_[v]) {
    const NodeId u = in_arc.other;
    targets.clear();
    for (const Arc& out_arc : out_[v]) {
      if (out_arc.other != u) targets.push_back(out_arc.other);
    }
    if (targets.empty()) continue;
    scalar_.run(
        u,
        [&](NodeId x, auto&& relax) {
          for_each_live_out(x, v, [&](NodeId y, const Ttf& f) { relax(y, f.max()); });
        },
        p.witness_budget, targets);

    const Ttf& first = edges_[in_arc.edge].ttf;
    for (const Arc& out_arc : out_[v]) {
      const NodeId w = out_arc.other;
      if (w == u) continue;
      const Ttf& second = edges_[out_arc.edge].ttf;
      const Seconds max_distance = scalar_.distance(w);
      // min(first) + min(second) never exceeds the linked minimum.
      if (max_distance <= first.min() + second.min()) continue;
      Ttf linked = link(first, second);
      if (witness_for(u, w, v, linked, max_distance, p)) continue;
      shortcuts.push_back({u, w, std::move(linked)});
    }
  }
  return shortcuts;
}

void ContractionGraph::contract(NodeId v, std::vector<Shortcut> shortcuts) {
  auto drop_arc = [](std::vector<Arc>& arcs, std::uint32_t edge) {
    arcs.erase(std::find_if(arcs.begin(), arcs.end(),
                            [&](const Arc& a) { return a.edge == edge; }));
  };
  for (const Arc& a : out_[v]) {
    finished_.push_back(edges_[a.edge]);
    alive_[a.edge] = false;
    drop_arc(in_[a.other], a.edge);
  }
  for (const Arc& a : in_[v]) {
    finished_.push_back(edges_[a.edge]);
    alive_[a.edge] = false;
    drop_arc(out_[a.other], a.edge);
  }
  out_[v].clear();
  in_[v].clear();
  contracted_[v] = true;

  for (auto& sc : shortcuts) {
    bool merged = false;
    for (const Arc& a : out_[sc.tail]) {
      if (a.other != sc.head) continue;
      Edge& existing = edges_[a.edge];
      Ttf combined = merge_min(existing.ttf, sc.ttf);
      if (!(combined == existing.ttf)) {
        existing.ttf = std::move(combined);
        existing.middle = v;
      }
      merged = true;
      break;
    }
    if (merged) continue;
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({sc.tail, sc.head, std::move(sc.ttf), v});
    alive_.push_back(true);
    out_[sc.tail].push_back({sc.head, id});
    in_[sc.head].push_back({sc.tail, id});
  }
}

}  // namespace tdsweep
