#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdsweep/ttf.hpp"

namespace tdsweep {

// 0-based in memory; files use 1-based ids.
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TdEdge {
  NodeId tail;
  NodeId head;
  Ttf ttf;

  friend bool operator==(const TdEdge&, const TdEdge&) = default;
};

/// Directed graph with one FIFO travel-time function per edge.
///
/// Parallel edges are merged with merge_min on construction (first
/// occurrence keeps its position), so there is at most one edge per ordered
/// node pair.
class TdGraph {
 public:
  TdGraph() = default;
  TdGraph(NodeId node_count, Seconds period, std::vector<TdEdge> edges);

  NodeId node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Seconds period() const noexcept { return period_; }

  std::span<const TdEdge> edges() const noexcept { return edges_; }
  const TdEdge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const EdgeId> out_edges(NodeId u) const {
    return {out_list_.data() + out_first_[u], out_list_.data() + out_first_[u + 1]};
  }
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {in_list_.data() + in_first_[v], in_list_.data() + in_first_[v + 1]};
  }

  friend bool operator==(const TdGraph& a, const TdGraph& b) {
    return a.n_ == b.n_ && a.period_ == b.period_ && a.edges_ == b.edges_;
  }

 private:
  NodeId n_ = 0;
  Seconds period_ = kDefaultPeriod;
  std::vector<TdEdge> edges_;
  std::vector<std::uint32_t> out_first_{0};
  std::vector<EdgeId> out_list_;
  std::vector<std::uint32_t> in_first_{0};
  std::vector<EdgeId> in_list_;
};

/// Syntax or invariant violation in an input file; line and column are
/// 1-based (column 0 when the error concerns the whole file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// `tdgr` text format:
//   c <comment>
//   p tdgr <n> <m> <period>
//   a <u> <v> <k> <t1> <w1> ... <tk> <wk>
TdGraph parse_tdgr(std::istream& in);
void write_tdgr(std::ostream& out, const TdGraph& g);

TdGraph parse_tdgr_string(const std::string& text);
std::string to_tdgr_string(const TdGraph& g);

// Number of edges whose TTF is not constant.
std::size_t count_time_dependent_edges(const TdGraph& g);

}  // namespace tdsweep
