#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "roitrack/app.hpp"
#include "roitrack/keyvalue.hpp"
#include "roitrack/protocol.hpp"
#include "roitrack/telemetry.hpp"

namespace fs = std::filesystem;
using namespace roitrack;

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> out_dir;
  std::optional<std::string> arena_file;
  std::optional<int> arena;
  std::optional<int> trials;
  std::optional<long long> seed;
  app::RunSettings overrides;
};

void add_tuning_flags(CLI::App* cmd, CommonFlags& f) {
  auto& o = f.overrides;
  cmd->add_option("--config", f.config, "Key-value config file (or a previous manifest.txt)");
  cmd->add_option("--out-dir", f.out_dir, "Output directory (default $ROITRACK_OUT_DIR or ./roitrack-out)");
  cmd->add_option("--roi-frac-x", o.roi_frac_x, "ROI horizontal semi-axis as a fraction of frame width");
  cmd->add_option("--roi-frac-y", o.roi_frac_y, "ROI vertical semi-axis as a fraction of frame height");
  cmd->add_option("--rate-rad-s", o.rate_rad_s, "Bang-bang rate magnitude, at most 0.3");
  cmd->add_option("--fov-deg", o.fov_deg, "Horizontal field of view in degrees");
  cmd->add_option("--dt-s", o.dt_s, "Control period in seconds");
}

// Flags given on the command line win over the config file.
app::RunSettings resolve(const CommonFlags& f) {
  app::RunSettings s;
  if (f.config) {
    const std::string text = read_file(*f.config);
    try {
      s.apply_config(KeyValueDoc::parse(text, *f.config));
    } catch (const FormatError& e) {
      throw app::UsageError(e.what());
    }
  }
  const auto& o = f.overrides;
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  if (f.arena) s.arena_id = *f.arena;
  if (f.trials) s.trials = *f.trials;
  if (f.seed) {
    if (*f.seed < 0) throw app::UsageError("--seed must be non-negative");
    s.seed = static_cast<std::uint64_t>(*f.seed);
  }
  if (f.arena_file) s.arena_file = fs::path(*f.arena_file);
  take(s.duration_s, o.duration_s);
  take(s.usv_speed_mps, o.usv_speed_mps);
  take(s.dt_s, o.dt_s);
  take(s.roi_frac_x, o.roi_frac_x);
  take(s.roi_frac_y, o.roi_frac_y);
  take(s.rate_rad_s, o.rate_rad_s);
  take(s.fov_deg, o.fov_deg);
  take(s.jitter_m, o.jitter_m);
  take(s.keepalive_s, o.keepalive_s);
  return s;
}

fs::path out_dir_of(const CommonFlags& f) {
  return f.out_dir ? fs::path(*f.out_dir) : app::default_out_dir();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Elliptical-ROI pan/tilt tracking: simulation, replay and metrics"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", app::kToolVersion);

  CommonFlags sim_flags;
  auto* sim = cli.add_subcommand("simulate", "Run a seeded batch of simulated trials");
  sim->add_option("--arena", sim_flags.arena, "Arena id (1 or 2)");
  sim->add_option("--arena-file", sim_flags.arena_file, "Arena fixture file instead of the built-in one");
  sim->add_option("--trials", sim_flags.trials, "Number of trials");
  sim->add_option("--seed", sim_flags.seed, "First seed; trial i uses seed + i");
  sim->add_option("--duration-s", sim_flags.overrides.duration_s, "Trial duration in seconds");
  sim->add_option("--usv-speed-mps", sim_flags.overrides.usv_speed_mps, "USV cruise speed");
  sim->add_option("--jitter-m", sim_flags.overrides.jitter_m, "Waypoint jitter amplitude");
  add_tuning_flags(sim, sim_flags);

  CommonFlags replay_flags;
  std::string log_path;
  auto* rep = cli.add_subcommand("replay", "Run a recorded coordinate log through the controller");
  rep->add_option("log", log_path, "CSV with columns t,x,y (raw pixels, origin top-left)")->required();
  rep->add_option("--keepalive-s", replay_flags.overrides.keepalive_s,
                  "Re-send an unchanged command after this many seconds (0 = never)");
  add_tuning_flags(rep, replay_flags);

  std::vector<std::string> files;
  std::vector<std::vector<std::string>> groups;
  auto* report = cli.add_subcommand("report", "Summarize telemetry CSVs");
  report->add_option("csv", files, "Telemetry CSVs forming one group");
  report->add_option("--group", groups, "A group of CSVs (one arena); repeat for cross-arena output")
      ->allow_extra_args();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kOk : app::kUsage;
  }

  try {
    if (*sim) {
      const auto settings = resolve(sim_flags);
      const auto out = out_dir_of(sim_flags);
      const auto result = app::simulate(settings, out);
      std::cout << app::report_text(result.report);
      std::cerr << "wrote " << result.csv_files.size() << " trial CSVs to " << out.string() << "\n";
      return result.code;
    }
    if (*rep) {
      const auto settings = resolve(replay_flags);
      const auto result = app::replay(log_path, settings, out_dir_of(replay_flags));
      std::cout << "rows = " << result.rows << "\nframes = " << result.frames
                << "\nwire_bytes = " << result.wire_bytes << "\ncommands_csv = "
                << result.commands_csv.string() << "\nframes_csv = " << result.frames_csv.string()
                << "\n";
      return app::kOk;
    }
    if (*report) {
      std::vector<std::vector<fs::path>> paths;
      if (!files.empty()) paths.emplace_back(files.begin(), files.end());
      for (const auto& g : groups) paths.emplace_back(g.begin(), g.end());
      app::report(paths, std::cout);
      return app::kOk;
    }
  } catch (const app::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return app::kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kIo;
  }
  return app::kUsage;
}
