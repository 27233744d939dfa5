// Command-line front end: gen, prep, query, verify, bench.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tdsweep/commands.hpp"
#include "tdsweep/graph.hpp"

using namespace tdsweep;

namespace {

std::pair<std::uint32_t, std::uint32_t> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos) throw UsageError("--grid expects RxC, got '" + spec + "'");
  try {
    std::size_t used_r = 0, used_c = 0;
    const auto rows = std::stoul(spec.substr(0, x), &used_r);
    const auto cols = std::stoul(spec.substr(x + 1), &used_c);
    if (used_r != x || used_c != spec.size() - x - 1) throw std::invalid_argument(spec);
    return {static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols)};
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects RxC, got '" + spec + "'");
  }
}

Epsilon to_epsilon(double e) {
  try {
    return Epsilon(e);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent one-to-all travel-time profiles on contraction hierarchies"};
  app.require_subcommand(1);

  // gen
  GenArgs gen;
  std::string grid;
  std::uint32_t geo_nodes = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic tdgr graph");
  auto* grid_opt = gen_cmd->add_option("--grid", grid, "grid graph of RxC nodes");
  auto* geo_opt =
      gen_cmd->add_option("--geometric", geo_nodes, "random geometric graph with N nodes");
  grid_opt->excludes(geo_opt);
  gen_cmd->add_option("--edges", gen.params.edges, "directed edges of a geometric graph");
  gen_cmd->add_option("--td-share", gen.params.td_share, "share of time-dependent edges");
  gen_cmd->add_option("--min-breakpoints", gen.params.min_breakpoints);
  gen_cmd->add_option("--max-breakpoints", gen.params.max_breakpoints);
  gen_cmd->add_option("--seed", gen.params.seed);
  gen_cmd->add_option("-o,--output", gen.output, "output tdgr file")->required();

  // prep
  PrepArgs prep;
  auto* prep_cmd = app.add_subcommand("prep", "contract a tdgr graph into a tch file");
  prep_cmd->add_option("input", prep.input, "input tdgr file")->required();
  prep_cmd->add_option("-o,--output", prep.output, "output tch file")->required();
  prep_cmd->add_option("--witness-budget", prep.order.witness_budget,
                       "settled-node limit of witness searches");
  prep_cmd->add_flag("--exact-witness", prep.order.exact_witness,
                     "fall back to a budgeted profile search for witnesses");

  // query
  QueryArgs query;
  double query_eps = 0.001;
  NodeId query_core = 0;
  bool query_no_prune = false;
  std::string query_dump;
  auto* query_cmd = app.add_subcommand("query", "one-to-all profiles from a source");
  query_cmd->add_option("tch", query.tch, "tch file")->required();
  query_cmd->add_option("-s,--source", query.source, "source node (1-based input id)")
      ->required();
  query_cmd->add_option("--epsilon", query_eps, "prune epsilon as a fraction");
  query_cmd->add_option("--workers", query.options.workers)->check(CLI::PositiveNumber);
  auto* core_opt = query_cmd->add_option("--core", query_core, "sweep only the top-k nodes");
  query_cmd->add_flag("--no-prune", query_no_prune);
  auto* dump_opt = query_cmd->add_option("--dump", query_dump, "profile dump file, '-' for stdout");

  // verify
  VerifyArgs verify;
  double verify_eps = 0.001;
  auto* verify_cmd = app.add_subcommand("verify", "compare sweep profiles with profile Dijkstra");
  verify_cmd->add_option("graph", verify.graph, "tdgr file")->required();
  verify_cmd->add_option("tch", verify.tch, "tch file")->required();
  verify_cmd->add_option("--sources", verify.sources, "number of random sources");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--epsilon", verify_eps, "prune epsilon as a fraction");
  verify_cmd->add_option("--workers", verify.options.workers)->check(CLI::PositiveNumber);

  // bench
  BenchArgs bench;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark table as CSV");
  bench_cmd->add_option("graph", bench.graph, "tdgr file")->required();
  bench_cmd->add_option("--sources", bench.sources, "sources drawn from the core");
  bench_cmd->add_option("--epsilons", bench.epsilons, "prune epsilons as fractions")
      ->delimiter(',');
  bench_cmd->add_option("--workers", bench.workers, "worker counts")->delimiter(',');
  bench_cmd->add_option("--core", bench.core_k, "core size for source selection");
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--witness-budget", bench.order.witness_budget);
  auto* bench_out_opt = bench_cmd->add_option("-o,--output", bench_out, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      if (*grid_opt) {
        gen.params.topology = Topology::grid;
        std::tie(gen.params.rows, gen.params.cols) = parse_grid(grid);
      } else if (*geo_opt) {
        gen.params.topology = Topology::random_geometric;
        gen.params.nodes = geo_nodes;
      } else {
        throw UsageError("one of --grid or --geometric is required");
      }
      return cmd_gen(gen, std::cout);
    }
    if (*prep_cmd) return cmd_prep(prep, std::cout);
    if (*query_cmd) {
      query.options.prune_epsilon = to_epsilon(query_eps);
      query.options.pruning = !query_no_prune;
      if (*core_opt) query.options.core_k = query_core;
      if (*dump_opt) query.dump = query_dump;
      return cmd_query(query, std::cout);
    }
    if (*verify_cmd) {
      verify.options.prune_epsilon = to_epsilon(verify_eps);
      return cmd_verify(verify, std::cout);
    }
    if (*bench_cmd) {
      if (*bench_out_opt) bench.output = bench_out;
      return cmd_bench(bench, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
