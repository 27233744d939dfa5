#pragma once

#include <cstdint>

#include "tdsweep/graph.hpp"

namespace tdsweep {

enum class Topology { grid, random_geometric };

/// Parameters of the synthetic road-network generator.
///
/// Grid graphs use rows x cols with bidirected 4-neighbour edges. Random
/// geometric graphs place `nodes` points in the unit square, connect nearest
/// neighbours until roughly `edges` directed edges exist and then join the
/// remaining components, so both topologies are strongly connected.
struct SynthParams {
  Topology topology = Topology::grid;
  std::uint32_t rows = 10;
  std::uint32_t cols = 10;
  std::uint32_t nodes = 100;
  std::uint32_t edges = 400;
  double td_share = 0.08;
  std::uint32_t min_breakpoints = 4;
  std::uint32_t max_breakpoints = 12;
  double min_peak_factor = 1.5;
  double max_peak_factor = 2.0;
  Seconds period = kDefaultPeriod;
  std::uint64_t seed = 1;
};

// Deterministic for fixed parameters. Throws std::invalid_argument on
// infeasible parameter combinations.
TdGraph generate_synthetic(const SynthParams& p);

}  // namespace tdsweep
