#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace mql::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kLearnerFailure = 1, kUsage = 2, kResource = 3 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One benchmark cell result, in matrix order.
struct BenchRow {
  int alg = 0;
  std::size_t n = 0, s = 0, r = 0;
  std::uint64_t seed = 0;
  std::uint64_t queries = 0, queries_dedup = 0;
  bool success = false;
  double bound_info = 0, bound_lower = 0, bound_alg_ref = 0;
};

/// Expands and runs a suite document (see README) on `threads` workers.
std::vector<BenchRow> run_suite(const nlohmann::json& suite, unsigned threads);

std::string bench_csv(const std::vector<BenchRow>& rows);

inline constexpr const char* kBenchHeader =
    "alg,n,s,r,seed,queries,queries_dedup,success,bound_info,bound_lower,bound_alg_ref";

}  // namespace mql::cli
