#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdsweep/graph.hpp"
#include "tdsweep/sweep.hpp"
#include "tdsweep/tch.hpp"

namespace tdsweep {

inline constexpr Seconds kVerifyTolerance = 1e-6;
inline constexpr std::size_t kVerifySamples = 200;

// Values are +inf for unreached nodes. Node ids are original (0-based).
struct ProfileMismatch {
  NodeId source;
  NodeId node;
  Seconds departure;
  Seconds expected;
  Seconds actual;
};

std::string describe(const ProfileMismatch& m);

/// Compares two profiles at the breakpoints of both and at `samples`
/// uniformly random departure times; returns the first departure time at
/// which they differ by more than `tolerance`. Unreached is +inf.
std::optional<Seconds> compare_profiles(const std::optional<Ttf>& expected,
                                        const std::optional<Ttf>& actual, Seconds period,
                                        std::uint64_t seed,
                                        std::size_t samples = kVerifySamples,
                                        Seconds tolerance = kVerifyTolerance);

struct VerifyReport {
  std::size_t sources = 0;
  std::size_t profiles_compared = 0;
  std::optional<ProfileMismatch> first_mismatch;

  bool passed() const noexcept { return !first_mismatch; }
};

/// Runs the sweep on `t` from every source (original ids) and compares all
/// computed profiles against the profile Dijkstra on `g`. Stops at the first
/// mismatch.
VerifyReport verify_sweep(const TdGraph& g, const Tch& t, std::span<const NodeId> sources,
                          const SweepOptions& options, std::uint64_t seed);

/// `count` distinct nodes out of `pool`, in sampling order; all of them in
/// their given order when count >= pool size.
std::vector<NodeId> sample_nodes(std::span<const NodeId> pool, std::size_t count,
                                 std::uint64_t seed);

}  // namespace tdsweep
