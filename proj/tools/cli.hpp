#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mwp::cli {

enum class Command { Filter, Map, Labels, Eval, Stats, Qt, GradCheck };

std::string_view to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitRecordFailure = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  Command command = Command::Filter;
  std::string input;
  std::string output_dir = ".";
  std::optional<std::string> schema_path;
  std::uint64_t seed = 0;
  int k = 15;
  std::size_t max_text_tokens = 100;
  std::size_t max_eq_tokens = 20;
  std::vector<std::string> constants{"1", "pi"};
  std::optional<std::string> dedup_ref;
  bool strict = false;
  double tolerance = 1e-4;
  unsigned threads = 1;
  bool quiet = false;  // suppress the stderr summary table

  // gradcheck
  std::size_t dim = 8;
  std::size_t hidden = 8;
  std::size_t configs = 50;
  std::size_t instances = 50;
};

/// Runs one command. Output files are written under `output_dir`; skipped
/// records and summaries go to `log`.
int run(const RunConfig& config, std::ostream& log);

/// Histogram bins used by `stats`: "0".."5" and ">5".
std::string operator_bin(std::size_t operator_count);

}  // namespace mwp::cli
