#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "roitrack/arena.hpp"
#include "roitrack/controller.hpp"
#include "roitrack/world.hpp"

namespace roitrack {

inline constexpr double kDefaultMaxRudder = 1.0;  // rad/s

/// Stateless pure pursuit: steer toward the point `lookahead` meters further
/// along the path than the closest point. Returns 0 once an open path's end
/// has been reached.
double pursue(const UsvState& s, const Path& path, double lookahead,
              double max_rudder = kDefaultMaxRudder);

/// Pure pursuit with remembered progress, so a closed path is driven for
/// exactly one lap and self-approaching paths do not skip ahead.
class PathTracker {
 public:
  PathTracker(Path path, double lookahead, double max_rudder = kDefaultMaxRudder);

  /// Rudder rate for the current state; updates progress.
  double update(const UsvState& s);

  bool finished() const { return finished_; }
  double progress() const { return progress_; }
  const Path& path() const { return path_; }

 private:
  Path path_;
  double lookahead_;
  double max_rudder_;
  double progress_ = 0.0;  // arc length, unwrapped across laps
  bool finished_ = false;
};

/// Each waypoint shifted along its local path normal by a seeded uniform
/// offset in [-amplitude, amplitude].
Path jitter_path(const Path& path, double amplitude, std::uint64_t seed);

struct TrialConfig {
  int arena_id = 1;
  Path path;  // canonical arena path (jitter is applied per trial)
  double usv_speed = 0.25;
  double duration = 60.0;
  std::uint64_t seed = 0;
  double jitter_amplitude = 0.0;
  double lookahead = 0.4;
  double max_rudder = kDefaultMaxRudder;
  ControllerConfig controller{};
  CameraModel camera{};
  UavPose uav{};
  double dt = 1.0 / 30.0;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
  std::size_t step_count() const;
};

/// Calibrated defaults stored with an arena fixture.
TrialConfig config_for_arena(const ArenaSpec& arena);

/// config_for_arena(builtin_arena(arena_id)).
TrialConfig baseline_config(int arena_id);

struct TrialSample {
  std::uint64_t tick = 0;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;
  Sector sector = Sector::Right;
  double yaw_cmd = 0.0;
  double pitch_cmd = 0.0;
  bool visible = true;
};

struct TrialRecord {
  TrialConfig config;
  std::vector<TrialSample> samples;

  double dt() const { return config.dt; }
};

TrialRecord run_trial(const TrialConfig& cfg);

/// One trial per seed, returned in seed-list order. Trials run on worker
/// threads, each owning its own state.
std::vector<TrialRecord> run_batch(const TrialConfig& cfg, int count,
                                   std::span<const std::uint64_t> seeds);

/// seed, seed+1, ... seed+count-1
std::vector<std::uint64_t> consecutive_seeds(std::uint64_t seed, int count);

}  // namespace roitrack
