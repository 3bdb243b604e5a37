#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace dmf {

/// One batch job. `params` holds the command-specific inputs (k, l, m, k_range, n, s, ...).
struct JobConfig {
  std::uint32_t q = 3, p = 3, e = 1;
  std::string command;  // "rep info", "dim", "cochain", "hecke charpoly", "hecke check", "maeda predict", "maeda verify"
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::filesystem::path cache_dir;
  bool use_cache = true;
  std::string format = "json";  // json | csv
  bool extended = false;
  /// Receives cache warnings; stderr when empty.
  std::function<void(const std::string&)> warn;
};

struct ResultRecord {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json outputs;
  double wall_time = 0;
  std::string code_version;
  bool cache_hit = false;
  /// false when a verification inside the job failed (exit code 1)
  bool passed = true;

  nlohmann::json to_json() const;
};

/// Thrown for invalid parameter combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validates the config, dispatches, and consults the result cache when enabled.
ResultRecord run(const JobConfig& config);

/// CSV for `dim` results: header `q,k,closed,invariants,k0,agree`, empty cells for methods not run.
std::string dim_csv(const ResultRecord& r);

/// Command-line entry point. Exit codes: 0 success, 1 verification mismatch or failure, 2 usage error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dmf
