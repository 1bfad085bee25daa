#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace roitrack {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Polyline in world meters. A closed path returns from the last waypoint to the first.
struct Path {
  std::vector<Waypoint> waypoints;
  bool closed = false;

  /// Throws std::invalid_argument unless there are >= 2 waypoints and no
  /// consecutive duplicates (including last-to-first when closed).
  void validate() const;
  std::size_t segment_count() const;
  double length() const;
};

/// An arena fixture: the path plus the calibrated baseline run settings.
struct ArenaSpec {
  int id = 0;
  std::string name;
  Path path;
  double uav_x_m = 0.0;
  double uav_y_m = 0.0;
  double usv_speed_mps = 0.0;
  double duration_s = 0.0;
  double lookahead_m = 0.0;
  double jitter_m = 0.0;
  std::string text;  // exact fixture bytes, hashed into run manifests
};

/// Parses the arena key-value format (see data/arenas/).
ArenaSpec parse_arena(std::string_view text, std::string source = "<arena>");

/// The versioned fixture compiled into the library. Throws
/// std::invalid_argument for ids other than 1 and 2.
const ArenaSpec& builtin_arena(int arena_id);

Path build_arena(int arena_id);

/// FNV-1a 64-bit digest, hex encoded.
std::string content_hash(std::string_view bytes);

}  // namespace roitrack
