#include "roitrack/trials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace roitrack {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

// Arc-length parametrization of a path. Progress on a closed path is
// unwrapped: s and s + length() name the same point.
class PathGeometry {
 public:
  explicit PathGeometry(const Path& path) : path_(path) {
    cum_.push_back(0.0);
    for (std::size_t k = 0; k < path.segment_count(); ++k) {
      const auto [a, b] = segment(k);
      cum_.push_back(cum_.back() + std::hypot(b.x - a.x, b.y - a.y));
    }
  }

  double total() const { return cum_.back(); }

  std::pair<Waypoint, Waypoint> segment(std::size_t k) const {
    const auto& w = path_.waypoints;
    return {w[k], w[(k + 1) % w.size()]};
  }

  Waypoint point_at(double s) const {
    const double total_len = total();
    if (path_.closed) {
      s = std::fmod(s, total_len);
      if (s < 0.0) s += total_len;
    } else {
      s = std::clamp(s, 0.0, total_len);
    }
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t k = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    k = std::min(k, path_.segment_count() - 1);
    const auto [a, b] = segment(k);
    const double len = cum_[k + 1] - cum_[k];
    const double t = len > 0.0 ? (s - cum_[k]) / len : 0.0;
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }

  /// Arc length of the closest path point to (x, y) with progress in [lo, hi].
  double closest(double x, double y, double lo, double hi) const {
    const double total_len = total();
    if (!path_.closed) {
      lo = std::max(lo, 0.0);
      hi = std::min(hi, total_len);
    }
    double best_s = lo;
    double best_d2 = std::numeric_limits<double>::infinity();
    const long first_lap = path_.closed ? static_cast<long>(std::floor(lo / total_len)) : 0;
    const long last_lap = path_.closed ? static_cast<long>(std::floor(hi / total_len)) : 0;
    for (long lap = first_lap; lap <= last_lap; ++lap) {
      const double base = static_cast<double>(lap) * total_len;
      for (std::size_t k = 0; k < path_.segment_count(); ++k) {
        const double s0 = std::max(base + cum_[k], lo);
        const double s1 = std::min(base + cum_[k + 1], hi);
        if (s0 > s1) continue;
        const auto [a, b] = segment(k);
        const double ex = b.x - a.x, ey = b.y - a.y;
        const double len2 = ex * ex + ey * ey;
        const double t = std::clamp(((x - a.x) * ex + (y - a.y) * ey) / len2, 0.0, 1.0);
        const double s = std::clamp(base + cum_[k] + t * std::sqrt(len2), s0, s1);
        const Waypoint p = point_at(s);
        const double d2 = (p.x - x) * (p.x - x) + (p.y - y) * (p.y - y);
        if (d2 < best_d2) {
          best_d2 = d2;
          best_s = s;
        }
      }
    }
    return best_s;
  }

 private:
  const Path& path_;
  std::vector<double> cum_;
};

double steer_toward(const UsvState& s, const Waypoint& target, double max_rudder) {
  const double dx = target.x - s.x, dy = target.y - s.y;
  const double dist = std::hypot(dx, dy);
  if (dist < 1e-9) return 0.0;
  const double alpha = wrap_angle(std::atan2(dy, dx) - s.heading);
  if (std::abs(alpha) >= kPi / 2.0) return std::copysign(max_rudder, alpha);
  // Pure-pursuit curvature 2 sin(alpha) / distance, times speed.
  return std::clamp(2.0 * s.speed * std::sin(alpha) / dist, -max_rudder, max_rudder);
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double pursue(const UsvState& s, const Path& path, double lookahead, double max_rudder) {
  if (!(lookahead > 0.0)) throw std::invalid_argument("lookahead must be positive");
  path.validate();
  const PathGeometry geo(path);
  const double inf = std::numeric_limits<double>::infinity();
  const double s_near = path.closed ? geo.closest(s.x, s.y, 0.0, geo.total())
                                    : geo.closest(s.x, s.y, -inf, inf);
  if (!path.closed && s_near >= geo.total()) return 0.0;
  return steer_toward(s, geo.point_at(s_near + lookahead), max_rudder);
}

PathTracker::PathTracker(Path path, double lookahead, double max_rudder)
    : path_(std::move(path)), lookahead_(lookahead), max_rudder_(max_rudder) {
  if (!(lookahead > 0.0)) throw std::invalid_argument("lookahead must be positive");
  path_.validate();
}

double PathTracker::update(const UsvState& s) {
  if (finished_) return 0.0;
  const PathGeometry geo(path_);
  const double total = geo.total();
  const double found = geo.closest(s.x, s.y, progress_ - 0.25 * lookahead_,
                                   progress_ + 2.0 * lookahead_);
  progress_ = std::max(progress_, found);

  if (path_.closed) {
    finished_ = progress_ >= total;
  } else {
    const Waypoint& end = path_.waypoints.back();
    finished_ = progress_ >= total || std::hypot(end.x - s.x, end.y - s.y) < 0.5 * lookahead_;
  }
  if (finished_) return 0.0;
  return steer_toward(s, geo.point_at(progress_ + lookahead_), max_rudder_);
}

Path jitter_path(const Path& path, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0) throw std::invalid_argument("jitter amplitude must be non-negative");
  Path out = path;
  if (amplitude == 0.0) return out;
  std::mt19937_64 rng(seed);
  const auto& w = path.waypoints;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Waypoint& prev = (i == 0) ? (path.closed ? w[n - 1] : w[0]) : w[i - 1];
    const Waypoint& next = (i + 1 == n) ? (path.closed ? w[0] : w[n - 1]) : w[i + 1];
    double tx = next.x - prev.x, ty = next.y - prev.y;
    const double len = std::hypot(tx, ty);
    tx /= len;
    ty /= len;
    const double offset = amplitude * (2.0 * unit_uniform(rng) - 1.0);
    out.waypoints[i].x += -ty * offset;
    out.waypoints[i].y += tx * offset;
  }
  out.validate();
  return out;
}

void TrialConfig::validate() const {
  if (arena_id != 1 && arena_id != 2) {
    throw std::invalid_argument("arena id must be 1 or 2, got " + std::to_string(arena_id));
  }
  path.validate();
  if (!(usv_speed >= 0.0)) throw std::invalid_argument("USV speed must be non-negative");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(jitter_amplitude >= 0.0)) throw std::invalid_argument("jitter must be non-negative");
  if (!(lookahead > 0.0)) throw std::invalid_argument("lookahead must be positive");
  if (!(max_rudder > 0.0)) throw std::invalid_argument("max rudder rate must be positive");
  if (!(uav.altitude > 0.0)) throw std::invalid_argument("UAV altitude must be positive");
  controller.validate();
  camera.validate();
  if (camera.frame.width != controller.frame.width ||
      camera.frame.height != controller.frame.height) {
    throw std::invalid_argument("camera and controller frames differ");
  }
}

std::size_t TrialConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

TrialConfig config_for_arena(const ArenaSpec& arena) {
  TrialConfig cfg;
  cfg.arena_id = arena.id;
  cfg.path = arena.path;
  cfg.usv_speed = arena.usv_speed_mps;
  cfg.duration = arena.duration_s;
  cfg.lookahead = arena.lookahead_m;
  cfg.jitter_amplitude = arena.jitter_m;
  cfg.uav = UavPose{arena.uav_x_m, arena.uav_y_m, 1.83};
  cfg.controller = ControllerConfig::with_fractions(cfg.camera.frame, kDefaultRoiFraction,
                                                    kDefaultRoiFraction);
  return cfg;
}

TrialConfig baseline_config(int arena_id) { return config_for_arena(builtin_arena(arena_id)); }

TrialRecord run_trial(const TrialConfig& cfg) {
  cfg.validate();
  TrialRecord record{cfg, {}};

  PathTracker tracker(jitter_path(cfg.path, cfg.jitter_amplitude, cfg.seed), cfg.lookahead,
                      cfg.max_rudder);
  const Waypoint start = tracker.path().waypoints[0];
  const Waypoint next = tracker.path().waypoints[1];

  WorldState world;
  world.dt = cfg.dt;
  world.uav = cfg.uav;
  world.usv = {start.x, start.y, std::atan2(next.y - start.y, next.x - start.x), cfg.usv_speed};
  world.gimbal = aim_at({start.x, start.y, 0.0}, cfg.uav, GimbalState{});

  const std::size_t steps = cfg.step_count();
  record.samples.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    double rudder = tracker.update(world.usv);
    if (tracker.finished()) {
      world.usv.speed = 0.0;
      rudder = 0.0;
    }
    const LoopStep ls = closed_loop_step(world, rudder, cfg.controller, cfg.camera);
    world = ls.world;

    TrialSample s;
    s.tick = world.tick;
    s.t = world.time();
    s.x = ls.seen.point.x;
    s.y = ls.seen.point.y;
    s.p = relative_position(ls.seen.point, cfg.controller.roi);
    s.sector = classify_sector(to_polar(ls.seen.point).theta);
    s.yaw_cmd = ls.command.yaw_rate;
    s.pitch_cmd = ls.command.pitch_rate;
    s.visible = ls.seen.visible;
    record.samples.push_back(s);
  }
  return record;
}

std::vector<std::uint64_t> consecutive_seeds(std::uint64_t seed, int count) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
  return seeds;
}

std::vector<TrialRecord> run_batch(const TrialConfig& cfg, int count,
                                   std::span<const std::uint64_t> seeds) {
  if (count < 1) throw std::invalid_argument("trial count must be at least 1");
  if (seeds.size() != static_cast<std::size_t>(count)) {
    throw std::invalid_argument("seed list length must equal the trial count");
  }
  cfg.validate();

  std::vector<TrialRecord> records(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      TrialConfig trial_cfg = cfg;
      trial_cfg.seed = seeds[i];
      try {
        records[i] = run_trial(trial_cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, seeds.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

}  // namespace roitrack
