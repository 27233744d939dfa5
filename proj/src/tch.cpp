#include "tdsweep/tch.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace tdsweep {

Tch::Tch(NodeId n, Seconds period, std::vector<NodeId> original_of, std::vector<TchEdge> edges)
    : n_(n), period_(period), original_of_(std::move(original_of)) {
  if (original_of_.size() != n_) throw std::invalid_argument("node mapping has wrong size");
  id_of_.assign(n_, kNoNode);
  for (NodeId id = 0; id < n_; ++id) {
    const NodeId orig = original_of_[id];
    if (orig >= n_ || id_of_[orig] != kNoNode) {
      throw std::invalid_argument("node mapping is not a permutation");
    }
    id_of_[orig] = id;
  }

  up_first_.assign(n_ + 1, 0);
  down_first_.assign(n_ + 1, 0);
  for (const auto& e : edges) {
    if (e.tail >= n_ || e.head >= n_) throw std::out_of_range("hierarchy edge out of range");
    if (e.tail == e.head) throw std::invalid_argument("hierarchy edge with equal tail and head rank");
    if (e.middle != kNoNode && e.middle >= n_) throw std::out_of_range("middle node out of range");
    if (e.ttf.period() != period_) throw std::invalid_argument("hierarchy edge period mismatch");
    if (e.head < e.tail) {
      ++up_first_[e.tail + 1];
    } else {
      ++down_first_[e.head + 1];
    }
  }
  for (NodeId u = 0; u < n_; ++u) {
    up_first_[u + 1] += up_first_[u];
    down_first_[u + 1] += down_first_[u];
  }
  auto up_fill = up_first_;
  auto down_fill = down_first_;
  up_.resize(up_first_[n_], TchArc{kNoNode, Ttf::constant(0, period_), kNoNode});
  down_.resize(down_first_[n_], TchArc{kNoNode, Ttf::constant(0, period_), kNoNode});
  for (auto& e : edges) {
    if (e.head < e.tail) {
      up_[up_fill[e.tail]++] = {e.head, std::move(e.ttf), e.middle};
    } else {
      down_[down_fill[e.head]++] = {e.tail, std::move(e.ttf), e.middle};
    }
  }
  // Canonical arc order, independent of the order edges were given in.
  auto by_other = [](const TchArc& a, const TchArc& b) { return a.other < b.other; };
  for (NodeId u = 0; u < n_; ++u) {
    std::sort(up_.begin() + up_first_[u], up_.begin() + up_first_[u + 1], by_other);
    std::sort(down_.begin() + down_first_[u], down_.begin() + down_first_[u + 1], by_other);
  }
  for (NodeId u = 0; u < n_; ++u) {
    for (auto arcs : {up_edges(u), down_edges(u)}) {
      for (std::size_t i = 1; i < arcs.size(); ++i) {
        if (arcs[i - 1].other == arcs[i].other) {
          throw std::invalid_argument("parallel hierarchy edges");
        }
      }
    }
  }

  level_ = compute_levels(*this);
  level_count_ = 0;
  for (auto l : level_) level_count_ = std::max(level_count_, l + 1);
}

std::size_t Tch::shortcut_count() const noexcept {
  std::size_t count = 0;
  for (const auto& a : up_) count += a.middle != kNoNode;
  for (const auto& a : down_) count += a.middle != kNoNode;
  return count;
}

std::size_t Tch::total_breakpoints() const noexcept {
  std::size_t count = 0;
  for (const auto& a : up_) count += a.ttf.size();
  for (const auto& a : down_) count += a.ttf.size();
  return count;
}

Tch Tch::with_arc_ttf(bool upward, std::size_t index, Ttf ttf) const {
  Tch copy = *this;
  auto& arcs = upward ? copy.up_ : copy.down_;
  if (index >= arcs.size()) throw std::out_of_range("arc index out of range");
  if (ttf.period() != period_) throw std::invalid_argument("arc TTF period mismatch");
  arcs[index].ttf = std::move(ttf);
  return copy;
}

bool operator==(const Tch& a, const Tch& b) {
  return a.n_ == b.n_ && a.period_ == b.period_ && a.original_of_ == b.original_of_ &&
         a.up_first_ == b.up_first_ && a.up_ == b.up_ && a.down_first_ == b.down_first_ &&
         a.down_ == b.down_ && a.level_ == b.level_;
}

std::vector<std::uint32_t> compute_levels(const Tch& t) {
  std::vector<std::uint32_t> level(t.node_count(), 0);
  for (NodeId u = 0; u < t.node_count(); ++u) {
    for (const auto& arc : t.down_edges(u)) level[u] = std::max(level[u], level[arc.other] + 1);
  }
  return level;
}

namespace {

struct Contracted {
  std::vector<Rank> rank;
  std::vector<ContractionGraph::Edge> edges;
};

Contracted contract_by_priority(const TdGraph& g, const OrderParams& p) {
  const NodeId n = g.node_count();
  ContractionGraph graph(g);
  std::vector<std::uint32_t> deleted(n, 0);

  auto evaluate = [&](NodeId v, std::vector<ContractionGraph::Shortcut>& shortcuts) {
    shortcuts = graph.needed_shortcuts(v, p);
    std::size_t points = 0;
    for (const auto& sc : shortcuts) points += sc.ttf.size();
    const double edge_difference = static_cast<double>(shortcuts.size()) -
                                   static_cast<double>(graph.edges_removed_with(v));
    const double point_ratio =
        static_cast<double>(points) /
        static_cast<double>(std::max<std::size_t>(1, graph.points_removed_with(v)));
    return p.edge_difference_weight * edge_difference +
           p.deleted_neighbors_weight * static_cast<double>(deleted[v]) +
           p.point_ratio_weight * point_ratio;
  };

  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<ContractionGraph::Shortcut> shortcuts;
  for (NodeId v = 0; v < n; ++v) queue.push({evaluate(v, shortcuts), v});

  Contracted result{std::vector<Rank>(n, 0), {}};
  Rank next_rank = 1;
  while (!queue.empty()) {
    const NodeId v = queue.top().second;
    queue.pop();
    const Entry fresh{evaluate(v, shortcuts), v};
    if (!queue.empty() && queue.top() < fresh) {
      queue.push(fresh);
      continue;
    }
    const auto neighbors = graph.neighbors(v);
    graph.contract(v, std::move(shortcuts));
    for (NodeId x : neighbors) ++deleted[x];
    result.rank[v] = next_rank++;
  }
  result.edges = graph.take_finished_edges();
  return result;
}

Contracted contract_in_order(const TdGraph& g, std::span<const Rank> rank, const OrderParams& p) {
  const NodeId n = g.node_count();
  if (rank.size() != n) throw std::invalid_argument("rank vector has wrong size");
  std::vector<NodeId> order(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    if (rank[v] < 1 || rank[v] > n || order[rank[v] - 1] != kNoNode) {
      throw std::invalid_argument("ranks must be a permutation of 1..n");
    }
    order[rank[v] - 1] = v;
  }
  ContractionGraph graph(g);
  for (NodeId v : order) graph.contract(v, graph.needed_shortcuts(v, p));
  return {std::vector<Rank>(rank.begin(), rank.end()), graph.take_finished_edges()};
}

Tch renumber(const TdGraph& g, Contracted c) {
  const NodeId n = g.node_count();
  auto id = [&](NodeId v) { return n - c.rank[v]; };
  std::vector<NodeId> original_of(n);
  for (NodeId v = 0; v < n; ++v) original_of[id(v)] = v;
  std::vector<TchEdge> edges;
  edges.reserve(c.edges.size());
  for (auto& e : c.edges) {
    edges.push_back({id(e.tail), id(e.head), std::move(e.ttf),
                     e.middle == kNoNode ? kNoNode : id(e.middle)});
  }
  return Tch(n, g.period(), std::move(original_of), std::move(edges));
}

}  // namespace

std::vector<Rank> compute_order(const TdGraph& g, const OrderParams& p) {
  return contract_by_priority(g, p).rank;
}

Tch build_tch(const TdGraph& g, const OrderParams& p) {
  return renumber(g, contract_by_priority(g, p));
}

Tch build_tch_with_order(const TdGraph& g, std::span<const Rank> rank, const OrderParams& p) {
  return renumber(g, contract_in_order(g, rank, p));
}

}  // namespace tdsweep
