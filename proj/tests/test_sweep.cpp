#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tdsweep/profile_dijkstra.hpp"
#include "tdsweep/sweep.hpp"
#include "tdsweep/tch.hpp"
#include "tdsweep/verify.hpp"

using namespace tdsweep;

namespace {

// Ids: v=0, w=1, u=2, s=3. The source reaches v and w directly; u is
// reached through v (100 + 200) or w (50 + 500).
Tch two_route_hierarchy() {
  std::vector<TchEdge> edges{
      {3, 0, Ttf::constant(200), kNoNode},
      {3, 1, Ttf::constant(500), kNoNode},
      {0, 2, Ttf::constant(100), kNoNode},
      {1, 2, Ttf::constant(50), kNoNode},
  };
  return Tch(4, kDefaultPeriod, {0, 1, 2, 3}, std::move(edges));
}

SweepResult sweep(const Tch& t, NodeId source, SweepOptions o = {}) {
  return OneToAllSweep(t, o).run(source);
}

}  // namespace

TEST_CASE("hand trace: the dominated route is pruned") {
  const Tch t = two_route_hierarchy();
  const SweepResult r = sweep(t, 3);
  REQUIRE(r.labels[2]);
  CHECK(*r.labels[2] == Ttf::constant(300));
  CHECK(*r.labels[0] == Ttf::constant(200));
  CHECK(*r.labels[1] == Ttf::constant(500));
  CHECK(*r.labels[3] == Ttf::constant(0));
  // One exact link each for v and w, one for u.
  CHECK(r.stats.links_exact == 3);
  CHECK(r.stats.pruned_p2 == 1);
  CHECK(r.stats.pruned_p3 == 1);

  const SweepResult plain = sweep(t, 3, {.pruning = false});
  CHECK(plain.stats.links_exact == 4);
  CHECK(plain.stats.pruned_p3 == 0);
  CHECK(plain.labels == r.labels);
}

TEST_CASE("two nodes") {
  const TdGraph g(2, kDefaultPeriod, {{0, 1, Ttf({{0, 100}, {43200, 200}})}});
  const Tch t = build_tch(g, OrderParams{});
  CHECK(t.shortcut_count() == 0);
  const SweepResult from0 = sweep(t, t.id_of_original(0));
  CHECK(*from0.labels[t.id_of_original(0)] == Ttf::constant(0));
  CHECK(*from0.labels[t.id_of_original(1)] == g.edge(0).ttf);
  const SweepResult from1 = sweep(t, t.id_of_original(1));
  CHECK_FALSE(from1.labels[t.id_of_original(0)].has_value());
}

TEST_CASE("source label is the zero function") {
  const TdGraph g = oracle::random_graph(4, 200);
  const Tch t = build_tch(g, OrderParams{});
  for (NodeId s : {NodeId{0}, NodeId{17}, t.node_count() - 1}) {
    CHECK(*sweep(t, s).labels[s] == Ttf::constant(0));
  }
  CHECK_THROWS_AS(sweep(t, t.node_count()), std::out_of_range);
}

TEST_CASE("sweep equals the profile search on shuffled orders") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 150);
    std::vector<Rank> rank(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) rank[v] = v + 1;
    std::mt19937_64 rng(seed);
    std::shuffle(rank.begin(), rank.end(), rng);
    const Tch t = build_tch_with_order(g, rank, OrderParams{});
    const std::vector<NodeId> sources{0, g.node_count() / 2};
    const VerifyReport rep = verify_sweep(g, t, sources, SweepOptions{}, seed);
    if (rep.first_mismatch) FAIL_CHECK(describe(*rep.first_mismatch));
    CHECK(rep.profiles_compared == 2 * g.node_count());
  }
}

TEST_CASE("pruning does not change any label") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 300);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId s = static_cast<NodeId>(seed * 31 % t.node_count());
    const SweepResult plain = sweep(t, s, {.pruning = false});
    for (double e : {0.1, 0.01, 0.001}) {
      const SweepResult pruned = sweep(t, s, {.prune_epsilon = Epsilon(e)});
      CHECK(pruned.labels == plain.labels);
      CHECK(pruned.stats.links_exact <= plain.stats.links_exact);
    }
  }
}

TEST_CASE("core sweep agrees with the full sweep on the core") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 250);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId n = t.node_count();
    for (NodeId s : {NodeId{0}, n - 1}) {
      const SweepResult full = sweep(t, s);
      for (NodeId k : {NodeId{1}, NodeId{10}, n / 3, n}) {
        const SweepResult core = sweep(t, s, {.core_k = k});
        CHECK(core.computed == k);
        for (NodeId v = 0; v < n; ++v) {
          if (v < k) {
            CHECK(core.labels[v] == full.labels[v]);
          } else {
            CHECK_FALSE(core.labels[v].has_value());
          }
        }
      }
    }
  }
  const Tch t = build_tch(oracle::random_graph(2, 100), OrderParams{});
  CHECK_THROWS_AS(OneToAllSweep(t, {.core_k = t.node_count() + 1}), std::invalid_argument);
}

TEST_CASE("worker count does not change results") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 300);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId s = static_cast<NodeId>(seed * 7 % t.node_count());
    const SweepResult one = sweep(t, s);
    for (unsigned w : {2u, 4u, 8u}) {
      const SweepResult many = sweep(t, s, {.workers = w});
      CHECK(many.labels == one.labels);
      CHECK(many.stats.links_exact == one.stats.links_exact);
      CHECK(many.stats.pruned_p3 == one.stats.pruned_p3);
      CHECK(many.stats.breakpoints_processed == one.stats.breakpoints_processed);
    }
    const SweepResult core = sweep(t, s, {.core_k = t.node_count() / 2, .workers = 4});
    CHECK(core.labels == sweep(t, s, {.core_k = t.node_count() / 2}).labels);
  }
  const Tch t = two_route_hierarchy();
  CHECK_THROWS_AS(OneToAllSweep(t, {.workers = 0}), std::invalid_argument);
}

TEST_CASE("finalize_label bounds") {
  const ApproxBundle c = finalize_label(Ttf::constant(300), Epsilon(0.01));
  CHECK(c.exact == Ttf::constant(300));
  CHECK(c.min == 300);
  CHECK(c.max == 300);
  CHECK(c.lower.max() <= 300);
  CHECK(c.lower.min() >= 297 - 1e-9);
  CHECK(c.upper.min() >= 300);
  CHECK(c.upper.max() <= 303 + 1e-9);

  std::mt19937_64 rng(19);
  const Ttf f = oracle::random_fifo(rng, 50);
  const double e = 0.01;
  const ApproxBundle b = finalize_label(f, Epsilon(e));
  CHECK(b.min == f.min());
  CHECK(b.max == f.max());
  CHECK(validate_fifo(b.lower));
  CHECK(validate_fifo(b.upper));
  std::uniform_real_distribution<Seconds> tau(0, kDefaultPeriod);
  for (int i = 0; i < 1000; ++i) {
    const Seconds t = tau(rng);
    const Seconds v = oracle::eval(f, t);
    CHECK(b.lower.evaluate(t) <= v + 1e-9);
    CHECK(b.lower.evaluate(t) >= (1 - e) * v - 1e-9);
    CHECK(b.upper.evaluate(t) >= v - 1e-9);
    CHECK(b.upper.evaluate(t) <= (1 + e) * v + 1e-9);
  }
}

TEST_CASE("bound links enclose the exact link") {
  // The pruning tests compare link(lower, lower) and link(upper, upper)
  // against exact candidates; both must enclose link(exact, exact).
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<Seconds> tau(0, kDefaultPeriod);
  for (int iter = 0; iter < 200; ++iter) {
    const Ttf d = oracle::random_fifo(rng);
    const Ttf f = oracle::random_fifo(rng);
    const Epsilon e(iter % 2 ? 0.01 : 0.1);
    const Ttf exact = link(d, f);
    const Ttf below = link(approximate(d, e, ApproxMode::lower), approximate(f, e, ApproxMode::lower));
    const Ttf above = link(approximate(d, e, ApproxMode::upper), approximate(f, e, ApproxMode::upper));
    for (int i = 0; i < 100; ++i) {
      const Seconds t = tau(rng);
      const Seconds v = exact.evaluate(t);
      CHECK(below.evaluate(t) <= v + 1e-6);
      CHECK(above.evaluate(t) >= v - 1e-6);
    }
  }
}

TEST_CASE("write_stats lists every counter") {
  SweepStats s;
  s.links_exact = 4;
  s.pruned_p3 = 2;
  std::ostringstream out;
  write_stats(out, s);
  CHECK(out.str() ==
        "links_exact=4\nlinks_bound=0\nmerges=0\npruned_p2=0\npruned_p3=2\n"
        "breakpoints_processed=0\nwall_time_ms=0\n");
  SweepStats sum;
  sum += s;
  sum += s;
  CHECK(sum.links_exact == 8);
  CHECK(sum.pruned_p3 == 4);
}
