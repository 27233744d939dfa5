#include "tdsweep/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tdsweep/profile_dijkstra.hpp"
#include "tdsweep/tch.hpp"
#include "tdsweep/verify.hpp"
#include "text_util.hpp"

namespace tdsweep {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string format_number(double v) {
  std::string s;
  text::append_number(s, v);
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

TdGraph load_graph(const std::string& path) {
  auto in = open_in(path);
  return parse_tdgr(in);
}

Tch load_tch(const std::string& path) {
  auto in = open_in(path);
  return parse_tch(in);
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  if (args.output.empty()) throw UsageError("an output path is required");
  TdGraph g = [&] {
    try {
      return generate_synthetic(args.params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  write_file(args.output, to_tdgr_string(g));
  const std::size_t td = count_time_dependent_edges(g);
  out << "nodes=" << g.node_count() << '\n'
      << "edges=" << g.edge_count() << '\n'
      << "td_edges=" << td << '\n'
      << "td_share="
      << format_number(g.edge_count() ? static_cast<double>(td) / g.edge_count() : 0.0) << '\n';
  return kExitOk;
}

int cmd_prep(const PrepArgs& args, std::ostream& out) {
  if (args.output.empty()) throw UsageError("an output path is required");
  const TdGraph g = load_graph(args.input);
  const Tch t = build_tch(g, args.order);
  write_file(args.output, to_tch_string(t));
  out << "nodes=" << t.node_count() << '\n'
      << "edges=" << t.edge_count() << '\n'
      << "shortcuts=" << t.shortcut_count() << '\n'
      << "max_level=" << (t.level_count() ? t.level_count() - 1 : 0) << '\n'
      << "total_breakpoints=" << t.total_breakpoints() << '\n';
  return kExitOk;
}

void write_profile_dump(std::ostream& out, const Tch& t, const SweepResult& r) {
  std::string buf;
  for (NodeId v = 0; v < t.node_count(); ++v) {
    const NodeId id = t.id_of_original(v);
    text::append_number(buf, static_cast<std::uint64_t>(v + 1));
    if (!r.is_computed(id)) {
      buf += " nc";
    } else if (!r.labels[id]) {
      buf += " inf";
    } else {
      buf.push_back(' ');
      text::append_ttf(buf, *r.labels[id]);
    }
    buf.push_back('\n');
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

std::string profile_dump(const Tch& t, const SweepResult& r) {
  std::ostringstream out;
  write_profile_dump(out, t, r);
  return out.str();
}

int cmd_query(const QueryArgs& args, std::ostream& out) {
  const Tch t = load_tch(args.tch);
  if (args.source < 1 || args.source > t.node_count()) {
    throw UsageError("unknown source id " + std::to_string(args.source));
  }
  if (args.options.core_k && *args.options.core_k > t.node_count()) {
    throw UsageError("core size exceeds node count");
  }
  const OneToAllSweep sweep(t, args.options);
  const SweepResult r = sweep.run(t.id_of_original(static_cast<NodeId>(args.source - 1)));
  if (args.dump) {
    if (*args.dump == "-") {
      write_profile_dump(out, t, r);
    } else {
      write_file(*args.dump, profile_dump(t, r));
    }
  }
  write_stats(out, r.stats);
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const TdGraph g = load_graph(args.graph);
  const Tch t = load_tch(args.tch);
  if (t.node_count() != g.node_count()) {
    throw UsageError("graph and hierarchy have different node counts");
  }
  if (args.sources == 0) {
    out << "warning: no sources requested, nothing to verify\nPASS\n";
    return kExitOk;
  }
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), NodeId{0});
  const auto sources = sample_nodes(all, args.sources, args.seed);
  const VerifyReport report = verify_sweep(g, t, sources, args.options, args.seed);
  out << "sources=" << report.sources << '\n' << "profiles=" << report.profiles_compared << '\n';
  if (report.passed()) {
    out << "PASS\n";
    return kExitOk;
  }
  out << "FAIL " << describe(*report.first_mismatch) << '\n';
  return kExitMismatch;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.sources == 0) throw UsageError("at least one source is required");
  if (args.epsilons.empty()) throw UsageError("the epsilon list is empty");
  if (args.workers.empty()) throw UsageError("the worker list is empty");
  for (unsigned w : args.workers) {
    if (w == 0) throw UsageError("worker counts must be positive");
  }
  std::vector<Epsilon> epsilons;
  for (double e : args.epsilons) {
    try {
      epsilons.emplace_back(e);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }

  const TdGraph g = load_graph(args.graph);
  const Tch t = build_tch(g, args.order);
  const NodeId core = std::min<NodeId>(args.core_k, t.node_count());
  if (core == 0) throw UsageError("the graph has no nodes");
  std::vector<NodeId> pool(core);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  const auto sources = sample_nodes(pool, args.sources, args.seed);
  const double count = static_cast<double>(sources.size());

  std::ostringstream csv;
  csv << kBenchHeader << '\n';
  auto row = [&](const std::string& algorithm, unsigned workers, const std::string& eps,
                 double time_ms, std::uint64_t links, std::uint64_t breakpoints) {
    csv << algorithm << ',' << workers << ',' << eps << ',' << format_number(time_ms / count)
        << ',' << links << ',' << breakpoints << '\n';
  };

  {
    SearchStats st;
    const auto start = std::chrono::steady_clock::now();
    for (NodeId s : sources) one_to_all_profile(g, t.original_id(s), &st);
    row("dijkstra", 1, "", elapsed_ms(start), st.links, st.breakpoints);
  }

  auto run_sweeps = [&](const SweepOptions& options) {
    const OneToAllSweep sweep(t, options);
    SweepStats total;
    for (NodeId s : sources) total += sweep.run(s).stats;
    return total;
  };

  {
    SweepOptions options;
    options.pruning = false;
    const SweepStats st = run_sweeps(options);
    row("sweep_noprune", 1, "", st.wall_time_ms, st.links_exact, st.breakpoints_processed);
  }

  std::size_t best = 0;
  std::uint64_t best_links = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    SweepOptions options;
    options.prune_epsilon = epsilons[i];
    const SweepStats st = run_sweeps(options);
    row("sweep", 1, format_number(epsilons[i].value()), st.wall_time_ms, st.links_exact,
        st.breakpoints_processed);
    if (i == 0 || st.links_exact < best_links) {
      best = i;
      best_links = st.links_exact;
    }
  }

  for (unsigned w : args.workers) {
    if (w == 1) continue;
    SweepOptions options;
    options.prune_epsilon = epsilons[best];
    options.workers = w;
    const SweepStats st = run_sweeps(options);
    row("sweep", w, format_number(epsilons[best].value()), st.wall_time_ms, st.links_exact,
        st.breakpoints_processed);
  }

  if (args.output) {
    write_file(*args.output, csv.str());
  } else {
    out << csv.str();
  }
  return kExitOk;
}

}  // namespace tdsweep
