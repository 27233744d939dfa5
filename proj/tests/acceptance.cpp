// Acceptance suite: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "tdsweep/commands.hpp"
#include "tdsweep/graph.hpp"
#include "tdsweep/profile_dijkstra.hpp"
#include "tdsweep/sweep.hpp"
#include "tdsweep/tch.hpp"
#include "tdsweep/verify.hpp"

using namespace tdsweep;

namespace {

// Pinned tolerances.
constexpr Seconds kProfileTolerance = 1e-6;       // absolute, seconds
constexpr double kAssociativityTolerance = 1e-6;  // relative
constexpr Seconds kPointwiseTolerance = 1e-6;     // relative to 1 + value
constexpr Seconds kBandSlack = 1e-9;              // relative to 1 + value

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int number, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %d %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", number, name, s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
  failures += !o.ok;
}

std::vector<NodeId> all_nodes(NodeId n) {
  std::vector<NodeId> v(n);
  for (NodeId i = 0; i < n; ++i) v[i] = i;
  return v;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t profiles = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 400);
    const Tch t = build_tch(g, OrderParams{});
    const auto sources = sample_nodes(all_nodes(g.node_count()), 5, seed);
    SweepOptions options;
    options.prune_epsilon = Epsilon(0.001);
    for (NodeId s : sources) {
      const LabelState expected = one_to_all_profile(g, s);
      const SweepResult r = OneToAllSweep(t, options).run(t.id_of_original(s));
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto bad = compare_profiles(expected.labels[v], r.labels[t.id_of_original(v)],
                                          g.period(), seed * 1000 + v, 200, kProfileTolerance);
        ++profiles;
        if (bad) {
          o.fail("graph seed " + std::to_string(seed) + ", source " + std::to_string(s + 1) +
                 ", node " + std::to_string(v + 1) + " at " + std::to_string(*bad));
          return o;
        }
      }
    }
  }
  o.detail = std::to_string(profiles) + " profiles";
  return o;
}

Outcome pruning_neutrality() {
  Outcome o;
  for (std::uint64_t seed = 101; seed <= 120; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 400);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId s = static_cast<NodeId>(seed % t.node_count());
    SweepOptions plain;
    plain.pruning = false;
    const SweepResult ref = OneToAllSweep(t, plain).run(s);
    for (double e : {0.1, 0.01, 0.001, 0.0001}) {
      SweepOptions options;
      options.prune_epsilon = Epsilon(e);
      const SweepResult r = OneToAllSweep(t, options).run(s);
      for (NodeId v = 0; v < t.node_count(); ++v) {
        if (r.labels[v] != ref.labels[v]) {
          o.fail("seed " + std::to_string(seed) + ", epsilon " + std::to_string(e) +
                 ", hierarchy node " + std::to_string(v));
          return o;
        }
      }
    }
  }
  return o;
}

Outcome pruning_trend() {
  Outcome o;
  const TdGraph g = generate_synthetic(oracle::grid_params(100, 100, 1));
  const Tch t = build_tch(g, OrderParams{});
  const auto sources = sample_nodes(all_nodes(t.node_count()), 3, 1);
  auto total = [&](SweepOptions options) {
    SweepStats sum;
    const OneToAllSweep sweep(t, options);
    for (NodeId s : sources) sum += sweep.run(s).stats;
    return sum;
  };
  SweepOptions off;
  off.pruning = false;
  SweepOptions coarse;
  coarse.prune_epsilon = Epsilon(0.1);
  SweepOptions fine;
  fine.prune_epsilon = Epsilon(0.001);
  const SweepStats a = total(off), b = total(coarse), c = total(fine);
  o.detail = "links off/10%/0.1% = " + std::to_string(a.links_exact) + "/" +
             std::to_string(b.links_exact) + "/" + std::to_string(c.links_exact) +
             ", breakpoints = " + std::to_string(a.breakpoints_processed) + "/" +
             std::to_string(b.breakpoints_processed) + "/" +
             std::to_string(c.breakpoints_processed);
  if (!(c.links_exact < b.links_exact && c.links_exact < a.links_exact)) o.fail(o.detail);
  if (!(c.breakpoints_processed < b.breakpoints_processed &&
        c.breakpoints_processed < a.breakpoints_processed)) {
    o.fail(o.detail);
  }
  return o;
}

Outcome kernel_properties() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<Seconds> tau(0, kDefaultPeriod);
  auto close = [](Seconds a, Seconds b, double rel) {
    return std::abs(a - b) <= rel * (1 + std::abs(b));
  };
  for (int iter = 0; iter < 1000 && o.ok; ++iter) {
    const Ttf f = oracle::random_fifo(rng);
    const Ttf g = oracle::random_fifo(rng);
    const Ttf h = oracle::random_fifo(rng);
    const Ttf fg = link(f, g);
    const Ttf m = merge_min(f, g);
    const Ttf left = link(fg, h);
    const Ttf right = link(f, link(g, h));
    const std::string at = "ttf " + std::to_string(iter);
    if (!validate_fifo(fg) || !validate_fifo(m)) o.fail(at + ": FIFO not closed");
    const std::size_t bound = 2 * (f.size() + g.size()) + 2;
    if (fg.size() > bound || m.size() > bound) o.fail(at + ": size bound");
    const double e = std::array{0.1, 0.01, 0.001}[iter % 3];
    const Ttf lower = approximate(fg, Epsilon(e), ApproxMode::lower);
    const Ttf upper = approximate(fg, Epsilon(e), ApproxMode::upper);
    for (int i = 0; i < 1000; ++i) {
      const Seconds t = tau(rng);
      const Seconds want_link = oracle::linked(f, g, t);
      const Seconds want_min = std::min(oracle::eval(f, t), oracle::eval(g, t));
      if (!close(fg.evaluate(t), want_link, kPointwiseTolerance)) o.fail(at + ": link value");
      if (!close(m.evaluate(t), want_min, kPointwiseTolerance)) o.fail(at + ": min value");
      if (!close(left.evaluate(t), right.evaluate(t), kAssociativityTolerance)) {
        o.fail(at + ": associativity");
      }
      const Seconds v = fg.evaluate(t);
      const Seconds slack = kBandSlack * (1 + v);
      const Seconds lo = lower.evaluate(t), hi = upper.evaluate(t);
      if (lo < (1 - e) * v - slack || lo > v + slack || hi < v - slack ||
          hi > (1 + e) * v + slack) {
        o.fail(at + ": approximation band");
      }
    }
  }
  if (o.ok) o.detail = "1000 triples";
  return o;
}

Outcome core_consistency() {
  Outcome o;
  for (std::uint64_t seed = 201; seed <= 220 && o.ok; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 400);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId n = t.node_count();
    // Id 0 is the top of the hierarchy; n - 1 lies outside every small core.
    for (NodeId s : {NodeId{0}, NodeId{25}, n - 1}) {
      const SweepResult full = OneToAllSweep(t, SweepOptions{}).run(s);
      for (NodeId k : {NodeId{10}, NodeId{50}, n}) {
        SweepOptions options;
        options.core_k = k;
        const SweepResult core = OneToAllSweep(t, options).run(s);
        for (NodeId v = 0; v < n; ++v) {
          const bool good = v < k ? core.labels[v] == full.labels[v] : !core.labels[v];
          if (!good) {
            o.fail("seed " + std::to_string(seed) + ", k " + std::to_string(k) +
                   ", hierarchy node " + std::to_string(v));
            break;
          }
        }
      }
    }
  }
  return o;
}

Outcome parallel_determinism() {
  Outcome o;
  for (std::uint64_t seed = 301; seed <= 310 && o.ok; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 400);
    const Tch t = build_tch(g, OrderParams{});
    const NodeId s = static_cast<NodeId>(seed % t.node_count());
    const std::string ref = profile_dump(t, OneToAllSweep(t, SweepOptions{}).run(s));
    for (unsigned w : {2u, 4u, 8u}) {
      SweepOptions options;
      options.workers = w;
      if (profile_dump(t, OneToAllSweep(t, options).run(s)) != ref) {
        o.fail("seed " + std::to_string(seed) + ", workers " + std::to_string(w));
        break;
      }
    }
  }
  return o;
}

Outcome format_round_trips() {
  Outcome o;
  const std::string tdgr_golden = "p tdgr 2 1 86400\na 1 2 1 0 100\n";
  if (to_tdgr_string(parse_tdgr_string(tdgr_golden)) != tdgr_golden) o.fail("tdgr golden");
  const std::string tch_golden = "p tch 1 0 86400\no 1 1\nl 1 0\n";
  if (to_tch_string(parse_tch_string(tch_golden)) != tch_golden) o.fail("tch golden");
  const TdGraph two = parse_tdgr_string(tdgr_golden);
  const std::string two_tch = to_tch_string(build_tch(two, OrderParams{}));
  if (two_tch != to_tch_string(build_tch(two, OrderParams{}))) o.fail("tch not byte-stable");

  for (std::uint64_t seed = 1; seed <= 100 && o.ok; ++seed) {
    const TdGraph g = oracle::random_graph(seed, 120);
    const std::string text = to_tdgr_string(g);
    const TdGraph back = parse_tdgr_string(text);
    if (!(back == g) || to_tdgr_string(back) != text) o.fail("tdgr seed " + std::to_string(seed));
    const Tch t = build_tch(g, OrderParams{});
    const std::string tt = to_tch_string(t);
    const Tch tback = parse_tch_string(tt);
    if (!(tback == t) || to_tch_string(tback) != tt) o.fail("tch seed " + std::to_string(seed));
  }
  return o;
}

// Flat index of the hierarchy arc between original nodes a and b.
std::optional<std::pair<bool, std::size_t>> arc_index(const Tch& t, NodeId a, NodeId b) {
  const NodeId x = t.id_of_original(a), y = t.id_of_original(b);
  std::size_t index = 0;
  const bool upward = y < x;
  for (NodeId u = 0; u < t.node_count(); ++u) {
    for (const auto& arc : upward ? t.up_edges(u) : t.down_edges(u)) {
      if (upward ? (u == x && arc.other == y) : (u == y && arc.other == x)) {
        return std::pair{upward, index};
      }
      ++index;
    }
  }
  return std::nullopt;
}

Outcome fault_detection() {
  Outcome o;
  // Grid plus a pendant node p hanging off node q: every path to p ends with q -> p.
  const TdGraph base = generate_synthetic(oracle::grid_params(8, 8, 9));
  const NodeId q = 27, p = base.node_count();
  std::vector<TdEdge> edges(base.edges().begin(), base.edges().end());
  edges.push_back({q, p, Ttf({{0, 120}, {30000, 200}, {50000, 150}})});
  edges.push_back({p, q, Ttf::constant(120)});
  const TdGraph g(p + 1, base.period(), std::move(edges));
  const Tch t = build_tch(g, OrderParams{});
  const auto where = arc_index(t, q, p);
  if (!where) {
    o.fail("no hierarchy arc q -> p");
    return o;
  }
  const auto& arcs = where->first ? t.up_edges(t.id_of_original(q))
                                  : t.down_edges(t.id_of_original(p));
  const TchArc* arc = nullptr;
  for (const auto& a : arcs) {
    if (a.other == (where->first ? t.id_of_original(p) : t.id_of_original(q))) arc = &a;
  }
  const Tch bad = t.with_arc_ttf(where->first, where->second, shifted(arc->ttf, 10));

  const auto dir = std::filesystem::temp_directory_path() /
                   ("tdsweep_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream((dir / name).string(), std::ios::binary) << text;
    return (dir / name).string();
  };
  VerifyArgs args;
  args.graph = put("g.tdgr", to_tdgr_string(g));
  args.sources = 5;
  std::ostringstream good_out, bad_out;
  args.tch = put("good.tch", to_tch_string(t));
  const int good = cmd_verify(args, good_out);
  args.tch = put("bad.tch", to_tch_string(bad));
  const int status = cmd_verify(args, bad_out);
  std::filesystem::remove_all(dir);

  if (good != kExitOk) o.fail("unperturbed hierarchy rejected: " + good_out.str());
  const std::string report = bad_out.str();
  if (status == kExitOk) o.fail("perturbation not detected");
  if (report.find("node " + std::to_string(p + 1) + ",") == std::string::npos) {
    o.fail("mismatch does not name node " + std::to_string(p + 1) + ": " + report);
  }
  if (o.ok) o.detail = "exit " + std::to_string(status);
  return o;
}

}  // namespace

int main() {
  criterion(1, "oracle equivalence, 50 graphs x 5 sources", oracle_equivalence);
  criterion(2, "pruning neutrality, 20 graphs x 4 epsilons", pruning_neutrality);
  criterion(3, "pruning effectiveness trend on a 100x100 grid", pruning_trend);
  criterion(4, "TTF kernel properties, 1000 random functions", kernel_properties);
  criterion(5, "core consistency, 20 graphs, k in {10, 50, n}", core_consistency);
  criterion(6, "parallel determinism, workers {1, 2, 4, 8}", parallel_determinism);
  criterion(7, "format round-trips and golden files", format_round_trips);
  criterion(8, "fault detection on a perturbed arc", fault_detection);
  return failures == 0 ? 0 : 1;
}
