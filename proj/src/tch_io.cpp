#include <istream>
#include <ostream>
#include <sstream>

#include "tdsweep/tch.hpp"
#include "text_util.hpp"

namespace tdsweep {

namespace {

void append_edge(std::string& buf, NodeId tail, NodeId head, const TchArc& arc) {
  buf += "a ";
  text::append_number(buf, static_cast<std::uint64_t>(tail + 1));
  buf.push_back(' ');
  text::append_number(buf, static_cast<std::uint64_t>(head + 1));
  buf.push_back(' ');
  if (arc.middle == kNoNode) {
    buf += "-1";
  } else {
    text::append_number(buf, static_cast<std::uint64_t>(arc.middle + 1));
  }
  buf.push_back(' ');
  text::append_ttf(buf, arc.ttf);
  buf.push_back('\n');
}

}  // namespace

void write_tch(std::ostream& out, const Tch& t) {
  const NodeId n = t.node_count();
  std::string buf = "p tch ";
  text::append_number(buf, static_cast<std::uint64_t>(n));
  buf.push_back(' ');
  text::append_number(buf, static_cast<std::uint64_t>(t.edge_count()));
  buf.push_back(' ');
  text::append_number(buf, t.period());
  buf.push_back('\n');
  for (NodeId id = 0; id < n; ++id) {
    buf += "o ";
    text::append_number(buf, static_cast<std::uint64_t>(id + 1));
    buf.push_back(' ');
    text::append_number(buf, static_cast<std::uint64_t>(t.original_id(id) + 1));
    buf.push_back('\n');
  }
  for (NodeId id = 0; id < n; ++id) {
    buf += "l ";
    text::append_number(buf, static_cast<std::uint64_t>(id + 1));
    buf.push_back(' ');
    text::append_number(buf, static_cast<std::uint64_t>(t.level(id)));
    buf.push_back('\n');
  }
  auto flush = [&] {
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  };
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& arc : t.up_edges(u)) {
      append_edge(buf, u, arc.other, arc);
      flush();
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& arc : t.down_edges(u)) {
      append_edge(buf, arc.other, u, arc);
      flush();
    }
  }
  out << buf;
}

Tch parse_tch(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  double period = kDefaultPeriod;
  std::size_t header_line = 0;
  std::vector<NodeId> original_of;
  std::vector<std::int64_t> level;
  std::vector<std::size_t> level_line;
  std::vector<TchEdge> edges;

  auto node_id = [&](const text::Token& tok, const char* what) {
    const auto v = text::parse_unsigned(tok, line_no, what);
    if (v < 1 || v > n) throw ParseError(line_no, tok.column, std::string(what) + " out of range");
    return static_cast<NodeId>(v - 1);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = text::tokenize(line);
    if (tokens.empty()) continue;
    const auto kind = tokens[0].text;
    if (kind == "c") continue;
    if (kind == "p") {
      if (have_header) throw ParseError(line_no, 1, "duplicate problem line");
      if (tokens.size() != 5) {
        throw ParseError(line_no, 1, "problem line must read 'p tch <n> <m> <period>'");
      }
      if (tokens[1].text != "tch") throw ParseError(line_no, tokens[1].column, "expected format 'tch'");
      n = text::parse_unsigned(tokens[2], line_no, "node count");
      m = text::parse_unsigned(tokens[3], line_no, "edge count");
      period = text::parse_double(tokens[4], line_no, "period");
      if (!(period > 0)) throw ParseError(line_no, tokens[4].column, "period must be positive");
      if (n >= kNoNode) throw ParseError(line_no, tokens[2].column, "too many nodes");
      have_header = true;
      header_line = line_no;
      original_of.assign(n, kNoNode);
      level.assign(n, -1);
      level_line.assign(n, 0);
      continue;
    }
    if (!have_header) throw ParseError(line_no, 1, "record before problem line");
    if (kind == "o") {
      if (tokens.size() != 3) throw ParseError(line_no, 1, "mapping line must read 'o <id> <original>'");
      const NodeId id = node_id(tokens[1], "node id");
      const NodeId orig = node_id(tokens[2], "original id");
      if (original_of[id] != kNoNode) throw ParseError(line_no, tokens[1].column, "duplicate mapping line");
      original_of[id] = orig;
      continue;
    }
    if (kind == "l") {
      if (tokens.size() != 3) throw ParseError(line_no, 1, "level line must read 'l <id> <level>'");
      const NodeId id = node_id(tokens[1], "node id");
      const auto l = text::parse_unsigned(tokens[2], line_no, "level");
      if (level[id] >= 0) throw ParseError(line_no, tokens[1].column, "duplicate level line");
      level[id] = static_cast<std::int64_t>(l);
      level_line[id] = line_no;
      continue;
    }
    if (kind == "a") {
      if (tokens.size() < 5) throw ParseError(line_no, 1, "edge line is too short");
      const NodeId u = node_id(tokens[1], "tail");
      const NodeId v = node_id(tokens[2], "head");
      if (u == v) throw ParseError(line_no, tokens[2].column, "edge endpoints have equal rank");
      const auto middle = text::parse_signed(tokens[3], line_no, "middle node");
      NodeId mid = kNoNode;
      if (middle != -1) {
        if (middle < 1 || static_cast<std::uint64_t>(middle) > n) {
          throw ParseError(line_no, tokens[3].column, "middle node out of range");
        }
        mid = static_cast<NodeId>(middle - 1);
      }
      Ttf f = text::parse_ttf(tokens, 4, line_no, period);
      edges.push_back({u, v, std::move(f), mid});
      continue;
    }
    throw ParseError(line_no, tokens[0].column, "unknown record type '" + std::string(kind) + "'");
  }
  if (!have_header) throw ParseError(line_no, 0, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(header_line, 0,
                     "header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  for (NodeId id = 0; id < n; ++id) {
    if (original_of[id] == kNoNode) {
      throw ParseError(0, 0, "missing mapping line for node " + std::to_string(id + 1));
    }
    if (level[id] < 0) throw ParseError(0, 0, "missing level line for node " + std::to_string(id + 1));
  }

  Tch t = [&] {
    try {
      return Tch(static_cast<NodeId>(n), period, std::move(original_of), std::move(edges));
    } catch (const std::exception& e) {
      throw ParseError(0, 0, e.what());
    }
  }();
  for (NodeId id = 0; id < n; ++id) {
    if (static_cast<std::int64_t>(t.level(id)) != level[id]) {
      throw ParseError(level_line[id], 0,
                       "level of node " + std::to_string(id + 1) + " should be " +
                           std::to_string(t.level(id)));
    }
  }
  return t;
}

std::string to_tch_string(const Tch& t) {
  std::ostringstream out;
  write_tch(out, t);
  return out.str();
}

Tch parse_tch_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tch(in);
}

}  // namespace tdsweep
