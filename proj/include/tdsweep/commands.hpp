#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdsweep/contraction.hpp"
#include "tdsweep/sweep.hpp"
#include "tdsweep/synthetic.hpp"

namespace tdsweep {

// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitIo = 3 };

// Invalid flag combination or value detected after argument parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenArgs {
  SynthParams params;
  std::string output;
};

struct PrepArgs {
  std::string input;
  std::string output;
  OrderParams order;
};

struct QueryArgs {
  std::string tch;
  std::uint64_t source = 1;  // original id, 1-based
  SweepOptions options;
  std::optional<std::string> dump;  // "-" = stdout
};

struct VerifyArgs {
  std::string graph;
  std::string tch;
  std::size_t sources = 10;
  std::uint64_t seed = 1;
  SweepOptions options;
};

struct BenchArgs {
  std::string graph;
  std::size_t sources = 100;
  std::vector<double> epsilons{0.1, 0.01, 0.001, 0.0001};
  std::vector<unsigned> workers{1, 2, 4, 8};
  NodeId core_k = 10000;
  std::uint64_t seed = 1;
  OrderParams order;
  std::optional<std::string> output;  // CSV goes to `out` when absent
};

// Each command writes its summary to `out` and returns an exit code.
// UsageError, IoError and ParseError propagate to the caller.
int cmd_gen(const GenArgs& args, std::ostream& out);
int cmd_prep(const PrepArgs& args, std::ostream& out);
int cmd_query(const QueryArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_bench(const BenchArgs& args, std::ostream& out);

// One line per node in original-id order: "<id> inf", "<id> nc" (outside
// the core) or "<id> <k> <t1> <w1> ...".
void write_profile_dump(std::ostream& out, const Tch& t, const SweepResult& r);
std::string profile_dump(const Tch& t, const SweepResult& r);

inline constexpr const char* kBenchHeader = "algorithm,workers,epsilon,time_ms,links,breakpoints";

TdGraph load_graph(const std::string& path);
Tch load_tch(const std::string& path);

}  // namespace tdsweep
