#include "tdsweep/sweep.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "tdsweep/profile_dijkstra.hpp"

namespace tdsweep {

namespace {
constexpr Seconds kPruneMargin = 1e-6;
}  // namespace

SweepStats& SweepStats::operator+=(const SweepStats& o) {
  links_exact += o.links_exact;
  links_bound += o.links_bound;
  merges += o.merges;
  pruned_p2 += o.pruned_p2;
  pruned_p3 += o.pruned_p3;
  breakpoints_processed += o.breakpoints_processed;
  wall_time_ms += o.wall_time_ms;
  return *this;
}

void write_stats(std::ostream& out, const SweepStats& s) {
  out << "links_exact=" << s.links_exact << '\n'
      << "links_bound=" << s.links_bound << '\n'
      << "merges=" << s.merges << '\n'
      << "pruned_p2=" << s.pruned_p2 << '\n'
      << "pruned_p3=" << s.pruned_p3 << '\n'
      << "breakpoints_processed=" << s.breakpoints_processed << '\n'
      << "wall_time_ms=" << s.wall_time_ms << '\n';
}

ApproxBundle finalize_label(Ttf exact, Epsilon eps) {
  Ttf lower = approximate(exact, eps, ApproxMode::lower);
  Ttf upper = approximate(exact, eps, ApproxMode::upper);
  const Seconds lo = exact.min();
  const Seconds hi = exact.max();
  return {std::move(exact), std::move(lower), std::move(upper), lo, hi};
}

struct OneToAllSweep::Scratch {
  std::vector<std::size_t> participating;
  std::vector<Ttf> candidates;
  std::vector<const Ttf*> inputs;
};

OneToAllSweep::OneToAllSweep(const Tch& t, SweepOptions options)
    : tch_(t), options_(options), limit_(t.node_count()) {
  if (options_.workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (options_.core_k) {
    if (*options_.core_k > t.node_count()) throw std::invalid_argument("core size exceeds node count");
    limit_ = *options_.core_k;
  }
  const NodeId n = t.node_count();
  down_offset_.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) down_offset_[u + 1] = down_offset_[u] + t.down_edges(u).size();
  if (options_.pruning) {
    down_lower_.reserve(down_offset_[n]);
    down_upper_.reserve(down_offset_[n]);
    for (NodeId u = 0; u < n; ++u) {
      for (const auto& arc : t.down_edges(u)) {
        down_lower_.push_back(approximate(arc.ttf, options_.prune_epsilon, ApproxMode::lower));
        down_upper_.push_back(approximate(arc.ttf, options_.prune_epsilon, ApproxMode::upper));
      }
    }
  }
  by_level_.resize(t.level_count());
  for (NodeId u = 0; u < limit_; ++u) by_level_[t.level(u)].push_back(u);
}

void OneToAllSweep::build_minimum(NodeId u, NodeId source, std::vector<std::optional<Ttf>>& labels,
                                  std::vector<std::optional<Ttf>>& lower,
                                  std::vector<std::optional<Ttf>>& upper, Scratch& scratch,
                                  SweepStats& stats) const {
  const auto arcs = tch_.down_edges(u);
  auto& label = labels[u];
  auto& parts = scratch.participating;
  parts.clear();
  if (u != source) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (labels[arcs[i].other]) parts.push_back(i);
    }
  }

  if (!parts.empty()) {
    // Edge with the smallest lower bound on its path cost; first wins ties.
    std::size_t best = parts.front();
    Seconds best_min = std::numeric_limits<Seconds>::infinity();
    for (std::size_t i : parts) {
      const Seconds m = arcs[i].ttf.min() + labels[arcs[i].other]->min();
      if (m < best_min) {
        best_min = m;
        best = i;
      }
    }

    auto& cands = scratch.candidates;
    cands.clear();
    auto exact_link = [&](std::size_t i) {
      const Ttf& d = *labels[arcs[i].other];
      ++stats.links_exact;
      stats.breakpoints_processed += d.size() + arcs[i].ttf.size();
      cands.push_back(link(d, arcs[i].ttf));
    };

    if (!options_.pruning) {
      exact_link(best);
      for (std::size_t i : parts) {
        if (i != best) exact_link(i);
      }
    } else {
      const std::size_t base = down_offset_[u];
      auto bound_link = [&](const Ttf& d, const Ttf& f) {
        ++stats.links_bound;
        stats.breakpoints_processed += d.size() + f.size();
        return link(d, f);
      };

      // P1: scalar bound from the maxima.
      Seconds bound = label ? label->max() : std::numeric_limits<Seconds>::infinity();
      for (std::size_t i : parts) {
        bound = std::min(bound, arcs[i].ttf.max() + labels[arcs[i].other]->max());
      }

      // P2: upper-bound profile through the most promising edge, refined by
      // every edge whose lower bound does not exceed the scalar bound.
      Ttf bound_ttf = bound_link(*upper[arcs[best].other], down_upper_[base + best]);
      bound = std::min(bound, bound_ttf.max());
      for (std::size_t i : parts) {
        if (i == best) continue;
        const NodeId v = arcs[i].other;
        if (arcs[i].ttf.min() + lower[v]->min() > bound) {
          ++stats.pruned_p2;
          continue;
        }
        Ttf through = bound_link(*upper[v], down_upper_[base + i]);
        ++stats.merges;
        stats.breakpoints_processed += bound_ttf.size() + through.size();
        bound_ttf = merge_min(bound_ttf, through);
        bound = std::min(bound, bound_ttf.max());
      }

      // P3: exact links for the edges the lower bounds cannot rule out.
      exact_link(best);
      for (std::size_t i : parts) {
        if (i == best) continue;
        const NodeId v = arcs[i].other;
        if (arcs[i].ttf.min() + lower[v]->min() > bound) {
          ++stats.pruned_p3;
          continue;
        }
        const Ttf below = bound_link(*lower[v], down_lower_[base + i]);
        // The bound may contain this edge's own upper link, which coincides
        // with its lower link wherever both are exact.
        if (dominates(below, bound_ttf, Dominance::strict, kPruneMargin)) {
          ++stats.pruned_p3;
          continue;
        }
        exact_link(i);
      }
    }

    auto& inputs = scratch.inputs;
    inputs.clear();
    if (label) inputs.push_back(&*label);
    for (const auto& c : cands) inputs.push_back(&c);
    if (inputs.size() == 1) {
      label = std::move(cands.front());
    } else {
      stats.merges += inputs.size() - 1;
      for (const Ttf* f : inputs) stats.breakpoints_processed += f->size();
      label = lower_envelope(inputs);
    }
  }

  if (options_.pruning && label) {
    lower[u] = approximate(*label, options_.prune_epsilon, ApproxMode::lower);
    upper[u] = approximate(*label, options_.prune_epsilon, ApproxMode::upper);
  }
}

SweepResult OneToAllSweep::run(NodeId source) const {
  const NodeId n = tch_.node_count();
  if (source >= n) throw std::out_of_range("source id out of range");
  const auto start = std::chrono::steady_clock::now();

  SweepResult result;
  result.source = source;
  result.computed = limit_;

  SearchStats up_stats;
  LabelState up = profile_search(
      n, tch_.period(), source,
      [&](NodeId u, auto&& relax) {
        for (const auto& arc : tch_.up_edges(u)) relax(arc.other, arc.ttf);
      },
      &up_stats);
  result.labels = std::move(up.labels);
  result.stats.links_exact = up_stats.links;
  result.stats.merges = up_stats.merges;
  result.stats.breakpoints_processed = up_stats.breakpoints;

  std::vector<std::optional<Ttf>> lower, upper;
  if (options_.pruning) {
    lower.resize(n);
    upper.resize(n);
  }

  const unsigned workers = options_.workers;
  if (workers == 1) {
    Scratch scratch;
    for (NodeId u = 0; u < limit_; ++u) {
      build_minimum(u, source, result.labels, lower, upper, scratch, result.stats);
    }
  } else {
    std::vector<SweepStats> per_worker(workers);
    std::barrier sync(static_cast<std::ptrdiff_t>(workers));
    auto work = [&](unsigned w) {
      Scratch scratch;
      for (const auto& nodes : by_level_) {
        for (std::size_t i = w; i < nodes.size(); i += workers) {
          build_minimum(nodes[i], source, result.labels, lower, upper, scratch, per_worker[w]);
        }
        sync.arrive_and_wait();
      }
    };
    {
      std::vector<std::jthread> threads;
      threads.reserve(workers - 1);
      for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work, w);
      work(0);
    }
    for (const auto& s : per_worker) result.stats += s;
  }

  for (NodeId u = limit_; u < n; ++u) result.labels[u].reset();
  result.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace tdsweep
