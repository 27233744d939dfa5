#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "tdsweep/graph.hpp"
#include "tdsweep/ttf.hpp"

namespace tdsweep {

// A relaxation only counts as an improvement if it lowers the label by more
// than this somewhere.
inline constexpr Seconds kImprovementTolerance = 1e-9;

struct SearchStats {
  std::uint64_t pops = 0;
  std::uint64_t reinserts = 0;
  std::uint64_t links = 0;
  std::uint64_t merges = 0;
  std::uint64_t breakpoints = 0;
};

/// Tentative or final travel-time profiles from `source`; an empty optional
/// means unreached (+inf everywhere).
struct LabelState {
  NodeId source = kNoNode;
  std::vector<std::optional<Ttf>> labels;
};

/// Label-correcting profile search.
///
/// `for_each_out(u, relax)` must call `relax(v, ttf)` for every edge u->v the
/// search may use. Queue keys are the global minima of the labels; a node
/// whose label improves is pushed again and stale entries are skipped.
template <class ForEachOut>
LabelState profile_search(NodeId n, Seconds period, NodeId source, ForEachOut&& for_each_out,
                          SearchStats* stats = nullptr,
                          std::size_t pop_budget = std::numeric_limits<std::size_t>::max()) {
  LabelState state{source, std::vector<std::optional<Ttf>>(n)};
  auto& labels = state.labels;
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  struct Entry {
    Seconds key;
    NodeId node;
    std::uint32_t version;
    bool operator>(const Entry& o) const {
      return key > o.key || (key == o.key && node > o.node);
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<std::uint32_t> version(n, 0);
  std::vector<bool> queued(n, false);

  labels[source] = Ttf::constant(0.0, period);
  queue.push({0.0, source, 0});
  queued[source] = true;
  std::size_t pops = 0;
  while (!queue.empty() && pops < pop_budget) {
    const Entry top = queue.top();
    queue.pop();
    if (top.version != version[top.node]) continue;
    queued[top.node] = false;
    ++pops;
    ++st.pops;
    const NodeId u = top.node;
    const Ttf& label_u = *labels[u];
    for_each_out(u, [&](NodeId v, const Ttf& f) {
      Ttf candidate = link(label_u, f);
      ++st.links;
      st.breakpoints += label_u.size() + f.size();
      auto& label_v = labels[v];
      if (!label_v) {
        label_v = std::move(candidate);
      } else {
        if (!improves(candidate, *label_v, kImprovementTolerance)) return;
        ++st.merges;
        st.breakpoints += label_v->size() + candidate.size();
        label_v = merge_min(*label_v, candidate);
      }
      if (!queued[v]) {
        if (version[v] != 0 || v == source) ++st.reinserts;
        queued[v] = true;
      }
      queue.push({label_v->min(), v, ++version[v]});
    });
  }
  return state;
}

/// Label-correcting profile search over all edges of `g` (the ground-truth
/// oracle).
LabelState one_to_all_profile(const TdGraph& g, NodeId source, SearchStats* stats = nullptr);

/// Same search restricted to edges u->v with rank[u] < rank[v].
LabelState one_to_all_profile_upward(const TdGraph& g, NodeId source,
                                     std::span<const std::uint32_t> rank,
                                     SearchStats* stats = nullptr);

enum class ScalarWeight { ttf_min, ttf_max };

/// Reusable Dijkstra over non-negative scalar edge weights.
///
/// Stops after settling `budget` nodes or once every target is settled.
/// Only settled nodes report a finite distance.
class ScalarDijkstra {
 public:
  explicit ScalarDijkstra(NodeId n)
      : dist_(n, kInf), settled_(n, false), is_target_(n, false) {}

  template <class ForEachOut>
  void run(NodeId source, ForEachOut&& for_each_out, std::size_t budget,
           std::span<const NodeId> targets = {});

  Seconds distance(NodeId v) const noexcept { return settled_[v] ? dist_[v] : kInf; }
  std::size_t settled_count() const noexcept { return settled_count_; }

  static constexpr Seconds kInf = std::numeric_limits<Seconds>::infinity();

 private:
  void reset();

  std::vector<Seconds> dist_;
  std::vector<bool> settled_;
  std::vector<bool> is_target_;
  std::vector<NodeId> touched_;
  std::vector<NodeId> targets_;
  std::size_t settled_count_ = 0;
};

template <class ForEachOut>
void ScalarDijkstra::run(NodeId source, ForEachOut&& for_each_out, std::size_t budget,
                         std::span<const NodeId> targets) {
  reset();
  std::size_t targets_left = 0;
  for (NodeId t : targets) {
    if (!is_target_[t]) {
      is_target_[t] = true;
      targets_.push_back(t);
      ++targets_left;
    }
  }
  using Entry = std::pair<Seconds, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist_[source] = 0;
  touched_.push_back(source);
  queue.push({0, source});
  while (!queue.empty() && settled_count_ < budget) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled_[u] || d > dist_[u]) continue;
    settled_[u] = true;
    ++settled_count_;
    if (is_target_[u] && --targets_left == 0 && !targets.empty()) break;
    for_each_out(u, [&](NodeId v, Seconds w) {
      const Seconds nd = d + w;
      if (nd < dist_[v]) {
        if (dist_[v] == kInf) touched_.push_back(v);
        dist_[v] = nd;
        queue.push({nd, v});
      }
    });
  }
}

/// Budgeted Dijkstra on the scalarized graph (each edge weighted by the
/// global min or max of its TTF). Unsettled nodes report +inf.
std::vector<Seconds> scalar_dijkstra(const TdGraph& g, NodeId source, ScalarWeight weight,
                                     std::size_t budget = std::numeric_limits<std::size_t>::max(),
                                     std::span<const NodeId> targets = {});

}  // namespace tdsweep
