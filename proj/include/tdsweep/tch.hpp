#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tdsweep/contraction.hpp"
#include "tdsweep/graph.hpp"
#include "tdsweep/ttf.hpp"

namespace tdsweep {

// Rank in 1..n, higher = more important (contracted later).
using Rank = std::uint32_t;

/// Edge of the hierarchy as seen from one endpoint: the head of an upward
/// edge or the tail of a downward edge.
struct TchArc {
  NodeId other;
  Ttf ttf;
  NodeId middle;  // kNoNode for original edges

  friend bool operator==(const TchArc&, const TchArc&) = default;
};

/// Edge list entry in hierarchy ids.
struct TchEdge {
  NodeId tail;
  NodeId head;
  Ttf ttf;
  NodeId middle;
};

/// Time-dependent contraction hierarchy.
///
/// Nodes are renumbered so that id = n - rank (0-based): id 0 is the most
/// important node and a descending-rank sweep is a forward scan over ids.
/// Every edge is stored once, either as an upward edge of its tail (head
/// has a smaller id) or as a downward edge of its head (tail has a smaller
/// id).
class Tch {
 public:
  Tch() = default;

  /// `original_of[id]` maps hierarchy ids to input-graph ids. Levels are
  /// derived from the edges.
  Tch(NodeId n, Seconds period, std::vector<NodeId> original_of, std::vector<TchEdge> edges);

  NodeId node_count() const noexcept { return n_; }
  Seconds period() const noexcept { return period_; }
  std::size_t edge_count() const noexcept { return up_.size() + down_.size(); }
  std::size_t shortcut_count() const noexcept;
  std::size_t total_breakpoints() const noexcept;

  Rank rank(NodeId id) const noexcept { return n_ - id; }
  NodeId original_id(NodeId id) const { return original_of_[id]; }
  NodeId id_of_original(NodeId original) const { return id_of_[original]; }

  std::span<const TchArc> up_edges(NodeId u) const {
    return {up_.data() + up_first_[u], up_.data() + up_first_[u + 1]};
  }
  // Incoming downward edges of u; `other` is the tail.
  std::span<const TchArc> down_edges(NodeId u) const {
    return {down_.data() + down_first_[u], down_.data() + down_first_[u + 1]};
  }

  std::uint32_t level(NodeId id) const { return level_[id]; }
  std::uint32_t level_count() const noexcept { return level_count_; }
  std::span<const std::uint32_t> levels() const noexcept { return level_; }

  // Replaces the TTF of the i-th upward/downward arc (fault injection in
  // tests and tools).
  Tch with_arc_ttf(bool upward, std::size_t index, Ttf ttf) const;

  friend bool operator==(const Tch& a, const Tch& b);

 private:
  NodeId n_ = 0;
  Seconds period_ = kDefaultPeriod;
  std::vector<NodeId> original_of_;
  std::vector<NodeId> id_of_;
  std::vector<std::uint32_t> up_first_{0};
  std::vector<TchArc> up_;
  std::vector<std::uint32_t> down_first_{0};
  std::vector<TchArc> down_;
  std::vector<std::uint32_t> level_;
  std::uint32_t level_count_ = 0;
};

/// Level of every node: 0 without incoming downward edges, otherwise one
/// more than the highest level among the tails of its downward edges.
/// Computed in one pass over ids (descending rank).
std::vector<std::uint32_t> compute_levels(const Tch& t);

/// Contraction order by lazy-updated priority
/// w_ed * edge_difference + w_dn * deleted_neighbors + w_pr * shortcut_point_ratio,
/// ties broken by node id. Returns rank per input node.
std::vector<Rank> compute_order(const TdGraph& g, const OrderParams& p);

Tch build_tch(const TdGraph& g, const OrderParams& p);

// Contracts nodes in the given order (rank per input node, a permutation of 1..n).
Tch build_tch_with_order(const TdGraph& g, std::span<const Rank> rank, const OrderParams& p);

// `tch` text format:
//   p tch <n> <m> <period>
//   o <id> <original_id>           (n lines)
//   l <id> <level>                 (n lines)
//   a <u> <v> <middle|-1> <k> <t1> <w1> ... <tk> <wk>
// Ids are 1-based hierarchy ids; rank(id) = n - id + 1.
void write_tch(std::ostream& out, const Tch& t);
Tch parse_tch(std::istream& in);

std::string to_tch_string(const Tch& t);
Tch parse_tch_string(const std::string& text);

}  // namespace tdsweep
