#include "tdsweep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tdsweep/profile_dijkstra.hpp"

namespace tdsweep {

namespace {

constexpr Seconds kInf = std::numeric_limits<Seconds>::infinity();

Seconds value_at(const std::optional<Ttf>& f, Seconds t) { return f ? f->evaluate(t) : kInf; }

bool differ(Seconds a, Seconds b, Seconds tolerance) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) != std::isinf(b);
  return std::abs(a - b) > tolerance;
}

}  // namespace

std::string describe(const ProfileMismatch& m) {
  std::ostringstream out;
  out.precision(17);
  out << "source " << m.source + 1 << ", node " << m.node + 1 << ", departure " << m.departure
      << ": expected " << m.expected << ", got " << m.actual;
  return out.str();
}

std::optional<Seconds> compare_profiles(const std::optional<Ttf>& expected,
                                        const std::optional<Ttf>& actual, Seconds period,
                                        std::uint64_t seed, std::size_t samples,
                                        Seconds tolerance) {
  if (!expected && !actual) return std::nullopt;
  if (!expected || !actual) return 0.0;
  for (const auto* f : {&*expected, &*actual}) {
    for (const auto& q : f->points()) {
      if (differ(expected->evaluate(q.time), actual->evaluate(q.time), tolerance)) return q.time;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Seconds> departure(0.0, period);
  for (std::size_t i = 0; i < samples; ++i) {
    const Seconds t = departure(rng);
    if (differ(expected->evaluate(t), actual->evaluate(t), tolerance)) return t;
  }
  return std::nullopt;
}

VerifyReport verify_sweep(const TdGraph& g, const Tch& t, std::span<const NodeId> sources,
                          const SweepOptions& options, std::uint64_t seed) {
  VerifyReport report;
  const OneToAllSweep sweep(t, options);
  std::mt19937_64 seeds(seed);
  for (NodeId s : sources) {
    ++report.sources;
    const LabelState oracle = one_to_all_profile(g, s);
    const SweepResult result = sweep.run(t.id_of_original(s));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const NodeId id = t.id_of_original(v);
      if (!result.is_computed(id)) continue;
      ++report.profiles_compared;
      const auto& expected = oracle.labels[v];
      const auto& actual = result.labels[id];
      if (auto at = compare_profiles(expected, actual, g.period(), seeds())) {
        report.first_mismatch =
            ProfileMismatch{s, v, *at, value_at(expected, *at), value_at(actual, *at)};
        return report;
      }
    }
  }
  return report;
}

std::vector<NodeId> sample_nodes(std::span<const NodeId> pool, std::size_t count,
                                 std::uint64_t seed) {
  std::vector<NodeId> out(pool.begin(), pool.end());
  if (count >= out.size()) return out;
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, out.size() - 1);
    std::swap(out[i], out[pick(rng)]);
  }
  out.resize(count);
  return out;
}

}  // namespace tdsweep
