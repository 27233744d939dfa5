#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdsweep/graph.hpp"
#include "tdsweep/profile_dijkstra.hpp"
#include "tdsweep/ttf.hpp"

namespace tdsweep {

struct OrderParams {
  // Settled-node limit of each witness search.
  std::uint32_t witness_budget = 64;
  double edge_difference_weight = 2.0;
  double deleted_neighbors_weight = 1.0;
  double point_ratio_weight = 1.0;
  // Additionally run a budgeted profile search when the scalar tests fail.
  bool exact_witness = false;
};

/// Mutable graph used while contracting nodes.
///
/// Holds the edges among uncontracted nodes. Contracting a node moves its
/// incident edges into the finished-edge list with their final TTFs and
/// inserts the shortcuts the witness search could not rule out.
class ContractionGraph {
 public:
  struct Edge {
    NodeId tail;
    NodeId head;
    Ttf ttf;
    NodeId middle;  // kNoNode for original edges
  };

  struct Shortcut {
    NodeId tail;
    NodeId head;
    Ttf ttf;
  };

  explicit ContractionGraph(const TdGraph& g);

  NodeId node_count() const noexcept { return static_cast<NodeId>(out_.size()); }
  bool contracted(NodeId v) const { return contracted_[v]; }
  std::size_t out_degree(NodeId v) const { return out_[v].size(); }
  std::size_t in_degree(NodeId v) const { return in_[v].size(); }

  // Distinct uncontracted neighbours over in- and out-edges, ascending.
  std::vector<NodeId> neighbors(NodeId v) const;

  // Live edge u->w, if any.
  const Edge* find_edge(NodeId u, NodeId w) const;

  /// Shortcuts that contracting v would insert, without changing the graph.
  std::vector<Shortcut> needed_shortcuts(NodeId v, const OrderParams& p) const;

  /// Removes v, inserting `shortcuts` (normally the result of
  /// needed_shortcuts(v)); a shortcut parallel to a live edge is merged into
  /// it with merge_min.
  void contract(NodeId v, std::vector<Shortcut> shortcuts);

  /// Sound but incomplete: true only if a path u -> w avoiding `excluded`
  /// is proven to be no slower than `shortcut` at every departure time.
  bool witness_exists(NodeId u, NodeId w, NodeId excluded, const Ttf& shortcut,
                      const OrderParams& p) const;

  // Edges whose lower endpoint (in contraction order) has been contracted.
  const std::vector<Edge>& finished_edges() const noexcept { return finished_; }
  std::vector<Edge> take_finished_edges() { return std::move(finished_); }

  std::size_t edges_removed_with(NodeId v) const { return out_[v].size() + in_[v].size(); }
  std::size_t points_removed_with(NodeId v) const;

 private:
  struct Arc {
    NodeId other;
    std::uint32_t edge;
  };

  template <class Relax>
  void for_each_live_out(NodeId u, NodeId excluded, Relax&& relax) const;

  bool witness_for(NodeId u, NodeId w, NodeId excluded, const Ttf& shortcut,
                   Seconds scalar_max_distance, const OrderParams& p) const;

  std::vector<Edge> edges_;
  std::vector<bool> alive_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::vector<bool> contracted_;
  std::vector<Edge> finished_;
  Seconds period_;
  mutable ScalarDijkstra scalar_;
};

}  // namespace tdsweep
