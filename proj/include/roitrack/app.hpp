#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "roitrack/keyvalue.hpp"
#include "roitrack/metrics.hpp"
#include "roitrack/trials.hpp"

namespace roitrack::app {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kOutDirEnv = "ROITRACK_OUT_DIR";
inline constexpr const char* kDefaultOutDir = "roitrack-out";
inline constexpr double kDefaultFovDeg = 90.0;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kTrackingLost = 2,
  kIo = 3,
};

/// Thrown for invalid settings; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a simulate run depends on. Unset optionals fall back to the
/// arena's calibrated baseline.
struct RunSettings {
  int arena_id = 1;
  int trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> arena_file;
  std::optional<double> duration_s;
  std::optional<double> usv_speed_mps;
  std::optional<double> dt_s;
  std::optional<double> roi_frac_x;
  std::optional<double> roi_frac_y;
  std::optional<double> rate_rad_s;
  std::optional<double> fov_deg;
  std::optional<double> jitter_m;
  std::optional<double> lookahead_m;
  std::optional<double> uav_altitude_m;
  std::optional<double> keepalive_s;

  /// Reads a flat key-value config (or a previous run manifest). Unknown keys
  /// are rejected.
  void apply_config(const KeyValueDoc& doc);

  /// Arena fixture text and its parse.
  ArenaSpec arena() const;
  TrialConfig trial_config() const;
  std::vector<std::uint64_t> seeds() const { return consecutive_seeds(seed, trials); }
};

/// Manifest text: resolved settings plus provenance. Feeding it back through
/// --config reproduces the run.
std::string manifest_text(const RunSettings& settings, const std::vector<std::string>& artifacts);

/// Structured `key = value` summary.
std::string report_text(const SensitivityReport& report);

std::filesystem::path default_out_dir();

struct SimulateResult {
  ExitCode code = kOk;
  SensitivityReport report;
  std::vector<std::filesystem::path> csv_files;
};

/// Runs the batch and writes trial CSVs, summary.txt and manifest.txt.
SimulateResult simulate(const RunSettings& settings, const std::filesystem::path& out_dir);

struct ReplayResult {
  std::size_t rows = 0;
  std::size_t frames = 0;
  std::size_t wire_bytes = 0;
  std::filesystem::path commands_csv;
  std::filesystem::path frames_csv;
};

/// Coordinate log (t, x=col, y=row in raw pixels) through the controller and
/// the serial link. Throws FormatError for malformed rows or non-increasing time.
ReplayResult replay(const std::filesystem::path& log, const RunSettings& settings,
                    const std::filesystem::path& out_dir);

/// Prints one summary per group, plus the cross-arena normalized value when
/// more than one group is given.
void report(const std::vector<std::vector<std::filesystem::path>>& groups, std::ostream& out);

}  // namespace roitrack::app
