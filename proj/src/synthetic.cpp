#include "tdsweep/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace tdsweep {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::uint32_t uniform_int(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

double round_to(double v, double unit) { return std::round(v / unit) * unit; }

// Free-flow constant plus one or two smooth rush-hour bumps.
Ttf rush_hour_ttf(Rng& rng, double base, const SynthParams& p) {
  const double hour = p.period / 24.0;
  const std::uint32_t k = uniform_int(rng, p.min_breakpoints, p.max_breakpoints);
  const double peak = uniform(rng, p.min_peak_factor, p.max_peak_factor);
  const bool two_bumps = k >= 6 && uniform_int(rng, 0, 1) == 1;

  struct Bump {
    double center, width, height;
    std::uint32_t points;
  };
  std::vector<Bump> bumps;
  auto morning = [&](std::uint32_t pts, double scale) {
    bumps.push_back({uniform(rng, 6.5, 9.0) * hour, uniform(rng, 2.0, 4.0) * hour,
                     (peak - 1.0) * base * scale, pts});
  };
  auto evening = [&](std::uint32_t pts, double scale) {
    bumps.push_back({uniform(rng, 16.0, 19.0) * hour, uniform(rng, 2.0, 4.0) * hour,
                     (peak - 1.0) * base * scale, pts});
  };
  if (two_bumps) {
    morning(k - k / 2, 1.0);
    evening(k / 2, uniform(rng, 0.6, 1.0));
  } else if (uniform_int(rng, 0, 1) == 0) {
    morning(k, 1.0);
  } else {
    evening(k, 1.0);
  }

  for (double shrink = 1.0;; shrink *= 0.5) {
    std::vector<TtfPoint> pts;
    for (const auto& b : bumps) {
      const double start = b.center - 0.5 * b.width;
      for (std::uint32_t i = 0; i < b.points; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(b.points - 1);
        const double t = std::round(start + x * b.width);
        const double v = base + shrink * b.height * std::sin(std::numbers::pi * x);
        pts.push_back({t, round_to(v, 1e-3)});
      }
    }
    bool gentle = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double slope = (pts[i + 1].value - pts[i].value) / (pts[i + 1].time - pts[i].time);
      gentle = gentle && slope >= -0.9;
    }
    if (gentle) return Ttf(std::move(pts), p.period);
  }
}

struct Arc {
  NodeId a, b;
  double free_flow;
};

std::vector<Arc> grid_arcs(const SynthParams& p, Rng& rng) {
  std::vector<Arc> arcs;
  auto id = [&](std::uint32_t r, std::uint32_t c) { return r * p.cols + c; };
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    for (std::uint32_t c = 0; c < p.cols; ++c) {
      if (c + 1 < p.cols) arcs.push_back({id(r, c), id(r, c + 1), 0});
      if (r + 1 < p.rows) arcs.push_back({id(r, c), id(r + 1, c), 0});
    }
  }
  for (auto& a : arcs) a.free_flow = static_cast<double>(uniform_int(rng, 30, 120));
  return arcs;
}

struct DisjointSets {
  std::vector<NodeId> parent;
  explicit DisjointSets(NodeId n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::vector<Arc> geometric_arcs(const SynthParams& p, Rng& rng) {
  const NodeId n = p.nodes;
  std::vector<std::pair<double, double>> xy(n);
  for (auto& q : xy) q = {uniform(rng, 0, 1), uniform(rng, 0, 1)};
  auto dist = [&](NodeId a, NodeId b) {
    return std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
  };

  const auto degree = static_cast<std::uint32_t>(std::max<double>(
      1.0, std::round(static_cast<double>(p.edges) / (2.0 * static_cast<double>(n)))));
  std::set<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> order(n);
  for (NodeId u = 0; u < n; ++u) {
    std::iota(order.begin(), order.end(), 0);
    const auto take = std::min<std::size_t>(degree + 1, n);
    std::partial_sort(order.begin(), order.begin() + take, order.end(),
                      [&](NodeId a, NodeId b) {
                        const double da = dist(u, a), db = dist(u, b);
                        return da < db || (da == db && a < b);
                      });
    for (std::size_t i = 0; i < take; ++i) {
      if (order[i] != u) pairs.insert({std::min(u, order[i]), std::max(u, order[i])});
    }
  }

  DisjointSets sets(n);
  for (const auto& [a, b] : pairs) sets.unite(a, b);
  for (;;) {
    // Join the component of the lowest unconnected node to the rest through
    // the closest crossing pair.
    NodeId stray = kNoNode;
    for (NodeId u = 0; u < n && stray == kNoNode; ++u) {
      if (sets.find(u) != sets.find(0)) stray = u;
    }
    if (stray == kNoNode) break;
    const NodeId comp = sets.find(stray);
    double best = std::numeric_limits<double>::infinity();
    std::pair<NodeId, NodeId> link{0, 0};
    for (NodeId a = 0; a < n; ++a) {
      if (sets.find(a) != comp) continue;
      for (NodeId b = 0; b < n; ++b) {
        if (sets.find(b) == comp) continue;
        if (dist(a, b) < best) {
          best = dist(a, b);
          link = {std::min(a, b), std::max(a, b)};
        }
      }
    }
    pairs.insert(link);
    sets.unite(link.first, link.second);
  }

  const double scale = 90.0 * std::sqrt(static_cast<double>(n));
  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) arcs.push_back({a, b, std::round(30.0 + scale * dist(a, b))});
  return arcs;
}

void check(const SynthParams& p) {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(p.td_share >= 0 && p.td_share <= 1)) fail("td_share must lie in [0, 1]");
  if (p.min_breakpoints < 3) fail("time-dependent edges need at least 3 breakpoints");
  if (p.min_breakpoints > p.max_breakpoints) fail("min_breakpoints exceeds max_breakpoints");
  if (!(p.min_peak_factor > 1.0) || p.min_peak_factor > p.max_peak_factor) {
    fail("peak factors must satisfy 1 < min <= max");
  }
  if (!(p.period > 0)) fail("period must be positive");
  if (p.topology == Topology::grid) {
    if (p.rows == 0 || p.cols == 0) fail("grid needs at least one row and one column");
    if (static_cast<std::uint64_t>(p.rows) * p.cols >= kNoNode) fail("grid too large");
  } else {
    if (p.nodes == 0) fail("random geometric graph needs at least one node");
    if (p.nodes > 1 && p.edges < 2ull * (p.nodes - 1)) {
      fail("edge target below what a strongly connected graph needs (2(n-1))");
    }
  }
}

}  // namespace

TdGraph generate_synthetic(const SynthParams& p) {
  check(p);
  Rng rng(p.seed);
  const bool grid = p.topology == Topology::grid;
  const NodeId n = grid ? p.rows * p.cols : p.nodes;
  const std::vector<Arc> arcs = grid ? grid_arcs(p, rng) : geometric_arcs(p, rng);

  const std::size_t m = 2 * arcs.size();
  std::vector<std::size_t> slots(m);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  const auto td_count =
      static_cast<std::size_t>(std::llround(p.td_share * static_cast<double>(m)));
  std::vector<bool> time_dependent(m, false);
  for (std::size_t i = 0; i < td_count; ++i) time_dependent[slots[i]] = true;

  std::vector<TdEdge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (int dir = 0; dir < 2; ++dir) {
      const std::size_t slot = 2 * i + dir;
      const NodeId tail = dir == 0 ? arcs[i].a : arcs[i].b;
      const NodeId head = dir == 0 ? arcs[i].b : arcs[i].a;
      Ttf f = time_dependent[slot] ? rush_hour_ttf(rng, arcs[i].free_flow, p)
                                   : Ttf::constant(arcs[i].free_flow, p.period);
      edges.push_back({tail, head, std::move(f)});
    }
  }
  return TdGraph(n, p.period, std::move(edges));
}

}  // namespace tdsweep
