#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cesdp/engine.hpp"

namespace cesdp {

/// Levels of each independent variable plus the constants shared by every run.
struct SweepSpec {
  std::vector<ObjectiveKind> objectives;
  std::vector<std::size_t> n;
  std::vector<double> p_t;
  std::vector<double> epsilon;
  std::vector<double> p_e;

  std::size_t h = 2;
  std::size_t d = 100;
  double tau = 0.1;
  double rho = 2.62;
  std::size_t omega = 1;
  std::size_t n_inner = 50;
  EstimationMethod estimation_method = EstimationMethod::kFuture;

  std::size_t replications = 1;
  std::uint64_t master_seed = 0;
  /// Share of combinations kept; below 1 selects a deterministic pseudo-random subset.
  double fraction = 1.0;

  /// Throws ConfigError.
  void validate() const;

  /// The full grid: 4 objectives x 4 sizes x 11 x 7 x 11 levels, 100 replications.
  static SweepSpec table1();
  /// Reduced grid: 3 sizes, 3 levels each of p_t, epsilon and p_e, 20 replications.
  static SweepSpec desk();
};

/// Cartesian product in lexicographic order of (objective, n, p_t, epsilon, p_e),
/// each axis in the order its levels are listed. Seeds are left at zero.
std::vector<SystemConfig> enumerate_combinations(const SweepSpec& spec);

/// Number of combinations without materializing them.
std::size_t combination_count(const SweepSpec& spec);

/// Whether a combination survives fractional subsampling.
bool combination_selected(const SweepSpec& spec, std::size_t combo_index);

/// Per-execution seed; a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t combo_index,
                          std::size_t replication_index);

struct RunRecord {
  std::size_t combo_index = 0;
  std::size_t replication_index = 0;
  SystemConfig config;
  std::size_t cycles = 0;
  double f_final = 0.0;
  bool converged = false;
  double wall_time_ms = 0.0;

  /// Everything except wall_time_ms, which is measurement and not payload.
  [[nodiscard]] bool same_payload(const RunRecord& other) const;
};

inline constexpr std::string_view kRecordCsvHeader =
    "combo_index,replication_index,objective,n,p_t,epsilon,p_e,h,d,tau,rho,omega,n_inner,"
    "estimation_method,seed,N,F_final,converged,wall_time_ms";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string format_record(const RunRecord& r);

/// Throws std::invalid_argument on malformed rows.
RunRecord parse_record(std::string_view line);

/// Reads every complete data row; throws IoError on a header mismatch.
std::vector<RunRecord> read_records(const std::filesystem::path& path);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSummary {
  std::size_t planned = 0;           // selected combinations x replications
  std::size_t already_present = 0;   // skipped on resume
  std::size_t records_written = 0;
  std::size_t failures = 0;
};

struct SweepOptions {
  std::size_t parallelism = 1;
  /// Per-record failures and progress notes; nullptr silences them.
  std::ostream* log = nullptr;
  /// Stop after this many newly written records (used to simulate interruption).
  std::optional<std::size_t> max_new_records;
};

/**
 * @brief Runs every (combination, replication) pair and appends one CSV row each.
 *
 * An existing file is resumed: rows already present are skipped and a torn
 * final line left by an interrupted writer is truncated first. Rows are
 * written as executions finish, so file order depends on scheduling while
 * every row's payload does not. A failing execution is logged with its
 * indices and counted; the sweep continues.
 *
 * Throws IoError if the file cannot be opened or a write fails.
 */
SweepSummary run_sweep(const SweepSpec& spec, const std::filesystem::path& output_path,
                       const SweepOptions& options = {});

/// Runs one selected pair; used by run_sweep and by tests.
RunRecord run_record(const SweepSpec& spec, std::size_t combo_index, std::size_t replication_index);

}  // namespace cesdp
