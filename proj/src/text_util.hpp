#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tdsweep/graph.hpp"

namespace tdsweep::text {

// Shortest representation that parses back to the same double.
inline void append_number(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline void append_number(std::string& out, std::uint64_t v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

inline double parse_double(const Token& tok, std::size_t line_no, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(v)) {
    throw ParseError(line_no, tok.column,
                     std::string("expected a number for ") + what + ", got '" +
                         std::string(tok.text) + "'");
  }
  return v;
}

inline std::uint64_t parse_unsigned(const Token& tok, std::size_t line_no, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError(line_no, tok.column,
                     std::string("expected a non-negative integer for ") + what + ", got '" +
                         std::string(tok.text) + "'");
  }
  return v;
}

inline std::int64_t parse_signed(const Token& tok, std::size_t line_no, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError(line_no, tok.column,
                     std::string("expected an integer for ") + what + ", got '" +
                         std::string(tok.text) + "'");
  }
  return v;
}

// Appends "<k> <t1> <w1> ... <tk> <wk>".
inline void append_ttf(std::string& out, const Ttf& f) {
  append_number(out, static_cast<std::uint64_t>(f.size()));
  for (const auto& q : f.points()) {
    out.push_back(' ');
    append_number(out, q.time);
    out.push_back(' ');
    append_number(out, q.value);
  }
}

}  // namespace tdsweep::text

namespace tdsweep::text {

// Parses "<k> <t1> <w1> ... <tk> <wk>" starting at tokens[first]; the
// breakpoint list must end the line. Reports structure and FIFO violations
// at the offending token.
inline Ttf parse_ttf(const std::vector<Token>& tokens, std::size_t first, std::size_t line_no,
                     double period) {
  if (first >= tokens.size()) {
    throw ParseError(line_no, tokens.empty() ? 0 : tokens.back().column,
                     "missing breakpoint count");
  }
  const std::uint64_t k = parse_unsigned(tokens[first], line_no, "breakpoint count");
  if (k == 0) throw ParseError(line_no, tokens[first].column, "a TTF needs at least one breakpoint");
  if (tokens.size() - first - 1 != 2 * k) {
    throw ParseError(line_no, tokens[first].column,
                     "breakpoint count " + std::to_string(k) + " does not match " +
                         std::to_string(tokens.size() - first - 1) + " trailing numbers");
  }
  std::vector<TtfPoint> pts;
  pts.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    const Token& tt = tokens[first + 1 + 2 * i];
    const Token& wt = tokens[first + 2 + 2 * i];
    const double t = parse_double(tt, line_no, "breakpoint time");
    const double w = parse_double(wt, line_no, "travel time");
    if (t < 0 || t >= period) {
      throw ParseError(line_no, tt.column, "breakpoint time outside [0, period)");
    }
    if (!pts.empty() && !(t > pts.back().time)) {
      throw ParseError(line_no, tt.column, "breakpoint times must be strictly increasing");
    }
    if (w < 0) throw ParseError(line_no, wt.column, "negative travel time");
    pts.push_back({t, w});
  }
  if (!validate_fifo(pts, period)) {
    throw ParseError(line_no, tokens[first].column, "FIFO violation (slope below -1)");
  }
  return Ttf(std::move(pts), period);
}

}  // namespace tdsweep::text
