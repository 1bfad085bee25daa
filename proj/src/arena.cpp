#include "roitrack/arena.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "arena_fixtures.hpp"
#include "roitrack/keyvalue.hpp"

namespace roitrack {

void Path::validate() const {
  if (waypoints.size() < 2) throw std::invalid_argument("a path needs at least two waypoints");
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (waypoints[i] == waypoints[i + 1]) {
      throw std::invalid_argument("consecutive waypoints " + std::to_string(i) + " and " +
                                  std::to_string(i + 1) + " coincide");
    }
  }
  if (closed && waypoints.front() == waypoints.back()) {
    throw std::invalid_argument("closed path repeats its first waypoint at the end");
  }
}

std::size_t Path::segment_count() const {
  if (waypoints.size() < 2) return 0;
  return closed ? waypoints.size() : waypoints.size() - 1;
}

double Path::length() const {
  double total = 0.0;
  const std::size_t n = waypoints.size();
  for (std::size_t i = 0; i < segment_count(); ++i) {
    const auto& a = waypoints[i];
    const auto& b = waypoints[(i + 1) % n];
    total += std::hypot(b.x - a.x, b.y - a.y);
  }
  return total;
}

namespace {

Waypoint parse_waypoint(const KeyValueDoc::Entry& e, const std::string& source) {
  const auto comma = e.value.find(',');
  if (comma == std::string::npos) throw FormatError(source, e.line, "waypoint needs 'x, y'");
  const auto x = parse_double(std::string_view(e.value).substr(0, comma));
  const auto y = parse_double(std::string_view(e.value).substr(comma + 1));
  if (!x || !y) throw FormatError(source, e.line, "waypoint coordinates must be numbers");
  return {*x, *y};
}

}  // namespace

ArenaSpec parse_arena(std::string_view text, std::string source) {
  const auto doc = KeyValueDoc::parse(text, source);
  ArenaSpec arena;
  arena.text = std::string(text);

  if (const auto version = doc.get_int("format_version"); version != 1) {
    throw FormatError(source, 0, "unsupported or missing format_version (expected 1)");
  }
  if (const auto units = doc.get_string("units"); units && *units != "m") {
    throw FormatError(source, doc.find("units")->line, "only meters are supported");
  }
  arena.id = static_cast<int>(doc.get_int("arena_id").value_or(0));
  arena.name = doc.get_string("name").value_or("");
  arena.path.closed = doc.get_bool("closed").value_or(false);
  for (const auto* e : doc.find_all("waypoint")) {
    arena.path.waypoints.push_back(parse_waypoint(*e, source));
  }
  try {
    arena.path.validate();
  } catch (const std::invalid_argument& err) {
    throw FormatError(source, 0, err.what());
  }
  arena.uav_x_m = doc.get_double("uav_x_m").value_or(0.0);
  arena.uav_y_m = doc.get_double("uav_y_m").value_or(0.0);
  arena.usv_speed_mps = doc.require_double("baseline_usv_speed_mps");
  arena.duration_s = doc.require_double("baseline_duration_s");
  arena.lookahead_m = doc.require_double("lookahead_m");
  arena.jitter_m = doc.get_double("jitter_m").value_or(0.0);
  return arena;
}

const ArenaSpec& builtin_arena(int arena_id) {
  static const ArenaSpec arena1 = parse_arena(fixtures::kArena1, "arena1.arena");
  static const ArenaSpec arena2 = parse_arena(fixtures::kArena2, "arena2.arena");
  switch (arena_id) {
    case 1: return arena1;
    case 2: return arena2;
    default: throw std::invalid_argument("unknown arena id " + std::to_string(arena_id));
  }
}

Path build_arena(int arena_id) { return builtin_arena(arena_id).path; }

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace roitrack
