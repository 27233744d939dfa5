#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tdsweep/tch.hpp"
#include "tdsweep/ttf.hpp"

namespace tdsweep {

struct SweepOptions {
  Epsilon prune_epsilon{0.001};
  bool pruning = true;
  // Sweep only the core_k most important nodes.
  std::optional<NodeId> core_k;
  unsigned workers = 1;
};

struct SweepStats {
  std::uint64_t links_exact = 0;
  std::uint64_t links_bound = 0;
  std::uint64_t merges = 0;
  std::uint64_t pruned_p2 = 0;
  std::uint64_t pruned_p3 = 0;
  std::uint64_t breakpoints_processed = 0;
  double wall_time_ms = 0;

  SweepStats& operator+=(const SweepStats& o);
};

// key=value lines, in the field order above.
void write_stats(std::ostream& out, const SweepStats& s);

/// Finalized label: the exact profile with its lower/upper bounds.
struct ApproxBundle {
  Ttf exact;
  Ttf lower;
  Ttf upper;
  Seconds min;
  Seconds max;
};

ApproxBundle finalize_label(Ttf exact, Epsilon eps);

struct SweepResult {
  NodeId source = kNoNode;  // hierarchy id
  // Labels are exact for ids < computed; empty optional = unreached.
  NodeId computed = 0;
  std::vector<std::optional<Ttf>> labels;
  SweepStats stats;

  bool is_computed(NodeId id) const noexcept { return id < computed; }
};

/// One-to-all profile query on a hierarchy: upward profile search from the
/// source, then every node in descending rank takes the minimum over its
/// incoming downward edges. With pruning on, each node first bounds its
/// result from above using the ε-bounds of its predecessors and skips edges
/// that cannot contribute. Results do not depend on pruning or worker count.
class OneToAllSweep {
 public:
  OneToAllSweep(const Tch& t, SweepOptions options);

  SweepResult run(NodeId source) const;

  const SweepOptions& options() const noexcept { return options_; }

 private:
  struct Scratch;

  void build_minimum(NodeId u, NodeId source, std::vector<std::optional<Ttf>>& labels,
                     std::vector<std::optional<Ttf>>& lower, std::vector<std::optional<Ttf>>& upper,
                     Scratch& scratch, SweepStats& stats) const;

  const Tch& tch_;
  SweepOptions options_;
  NodeId limit_;
  // Per downward arc (same indexing as Tch's down arcs, flattened).
  std::vector<Ttf> down_lower_;
  std::vector<Ttf> down_upper_;
  std::vector<std::size_t> down_offset_;
  // Ids < limit_ grouped by level, ascending id within a level.
  std::vector<std::vector<NodeId>> by_level_;
};

}  // namespace tdsweep
