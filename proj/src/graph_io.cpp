#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "tdsweep/graph.hpp"
#include "text_util.hpp"

namespace tdsweep {

TdGraph::TdGraph(NodeId node_count, Seconds period, std::vector<TdEdge> edges)
    : n_(node_count), period_(period) {
  if (!(period > 0)) throw std::invalid_argument("graph period must be positive");
  std::map<std::pair<NodeId, NodeId>, std::size_t> slot;
  edges_.reserve(edges.size());
  for (auto& e : edges) {
    if (e.tail >= n_ || e.head >= n_) throw std::out_of_range("edge endpoint out of range");
    if (e.tail == e.head) throw std::invalid_argument("self-loop edges are not allowed");
    if (e.ttf.period() != period_) throw std::invalid_argument("edge TTF period mismatch");
    if (!validate_fifo(e.ttf)) throw std::invalid_argument("edge TTF violates FIFO");
    auto [it, fresh] = slot.try_emplace({e.tail, e.head}, edges_.size());
    if (fresh) {
      edges_.push_back(std::move(e));
    } else {
      auto& kept = edges_[it->second];
      kept.ttf = merge_min(kept.ttf, e.ttf);
    }
  }

  out_first_.assign(n_ + 1, 0);
  in_first_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++out_first_[e.tail + 1];
    ++in_first_[e.head + 1];
  }
  for (NodeId u = 0; u < n_; ++u) {
    out_first_[u + 1] += out_first_[u];
    in_first_[u + 1] += in_first_[u];
  }
  out_list_.resize(edges_.size());
  in_list_.resize(edges_.size());
  auto out_fill = out_first_;
  auto in_fill = in_first_;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    out_list_[out_fill[edges_[id].tail]++] = id;
    in_list_[in_fill[edges_[id].head]++] = id;
  }
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

TdGraph parse_tdgr(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  double period = kDefaultPeriod;
  std::size_t header_line = 0;
  std::vector<TdEdge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = text::tokenize(line);
    if (tokens.empty()) continue;
    const auto kind = tokens[0].text;
    if (kind == "c") continue;
    if (kind == "p") {
      if (have_header) throw ParseError(line_no, 1, "duplicate problem line");
      if (tokens.size() != 5) {
        throw ParseError(line_no, 1, "problem line must read 'p tdgr <n> <m> <period>'");
      }
      if (tokens[1].text != "tdgr") {
        throw ParseError(line_no, tokens[1].column, "expected format 'tdgr'");
      }
      n = text::parse_unsigned(tokens[2], line_no, "node count");
      m = text::parse_unsigned(tokens[3], line_no, "edge count");
      period = text::parse_double(tokens[4], line_no, "period");
      if (!(period > 0)) throw ParseError(line_no, tokens[4].column, "period must be positive");
      if (n >= kNoNode) throw ParseError(line_no, tokens[2].column, "too many nodes");
      have_header = true;
      header_line = line_no;
      edges.reserve(m);
      continue;
    }
    if (kind == "a") {
      if (!have_header) throw ParseError(line_no, 1, "edge line before problem line");
      if (tokens.size() < 4) throw ParseError(line_no, 1, "edge line is too short");
      const auto u = text::parse_unsigned(tokens[1], line_no, "tail");
      const auto v = text::parse_unsigned(tokens[2], line_no, "head");
      if (u < 1 || u > n) throw ParseError(line_no, tokens[1].column, "dangling node id");
      if (v < 1 || v > n) throw ParseError(line_no, tokens[2].column, "dangling node id");
      if (u == v) throw ParseError(line_no, tokens[2].column, "self-loop edge");
      Ttf f = text::parse_ttf(tokens, 3, line_no, period);
      edges.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), std::move(f)});
      continue;
    }
    throw ParseError(line_no, tokens[0].column,
                     "unknown record type '" + std::string(kind) + "'");
  }
  if (!have_header) throw ParseError(line_no, 0, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(header_line, 0,
                     "header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return TdGraph(static_cast<NodeId>(n), period, std::move(edges));
}

void write_tdgr(std::ostream& out, const TdGraph& g) {
  std::string buf = "p tdgr ";
  text::append_number(buf, static_cast<std::uint64_t>(g.node_count()));
  buf.push_back(' ');
  text::append_number(buf, static_cast<std::uint64_t>(g.edge_count()));
  buf.push_back(' ');
  text::append_number(buf, g.period());
  buf.push_back('\n');
  for (const auto& e : g.edges()) {
    buf += "a ";
    text::append_number(buf, static_cast<std::uint64_t>(e.tail + 1));
    buf.push_back(' ');
    text::append_number(buf, static_cast<std::uint64_t>(e.head + 1));
    buf.push_back(' ');
    text::append_ttf(buf, e.ttf);
    buf.push_back('\n');
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

TdGraph parse_tdgr_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tdgr(in);
}

std::string to_tdgr_string(const TdGraph& g) {
  std::ostringstream out;
  write_tdgr(out, g);
  return out.str();
}

std::size_t count_time_dependent_edges(const TdGraph& g) {
  std::size_t count = 0;
  for (const auto& e : g.edges()) count += e.ttf.is_constant() ? 0 : 1;
  return count;
}

}  // namespace tdsweep
