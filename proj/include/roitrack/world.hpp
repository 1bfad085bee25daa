#pragma once

#include <cstdint>
#include <numbers>

#include "roitrack/controller.hpp"
#include "roitrack/geometry.hpp"

namespace roitrack {

// World frame: x east, y north, z up, meters. USV headings are counterclockwise
// from +x. Gimbal pan is a compass angle (clockwise from +y), so a positive yaw
// command swings the view to the right. Tilt is the elevation of the optical
// axis: 0 at the horizon, -pi/2 straight down.

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct UsvState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double speed = 0.0;
};

/// Hovering camera platform; fixed for a trial.
struct UavPose {
  double x = 0.0;
  double y = 0.0;
  double altitude = 1.83;  // 6 ft

  Vec3 position() const { return {x, y, altitude}; }
};

inline constexpr double kTiltMax = 0.0;
inline constexpr double kTiltMin = -std::numbers::pi / 2.0 + 1e-3;

struct GimbalState {
  double pan = 0.0;   // unbounded; see pan_normalized()
  double tilt = -0.35;
  double max_rate = kMaxGimbalRate;

  /// Pan folded into (-pi, pi].
  double pan_normalized() const;
};

struct CameraModel {
  FrameSpec frame{};
  double horizontal_fov = std::numbers::pi / 2.0;

  void validate() const;
  double focal_px() const;
  double vertical_fov() const;
};

/// Simulation state. Time is kept as an integer tick count so that every
/// step advances by exactly one dt.
struct WorldState {
  UsvState usv{};
  UavPose uav{};
  GimbalState gimbal{};
  std::uint64_t tick = 0;
  double dt = 1.0 / 30.0;

  double time() const { return static_cast<double>(tick) * dt; }
};

/// Semi-implicit Euler: heading first, then position along the new heading.
UsvState usv_step(const UsvState& s, double rudder_rate, double dt);

struct GimbalStepResult {
  GimbalState state;
  bool rate_clamped = false;    // a commanded rate exceeded max_rate
  bool tilt_saturated = false;  // the tilt hit a mechanical limit
};

GimbalStepResult gimbal_step(const GimbalState& g, const GimbalCommand& cmd, double dt);

struct Projection {
  ImagePoint point{};
  bool visible = false;
  double depth = 0.0;  // along the optical axis, meters
};

/// Pinhole projection of a world point into the centered image frame.
/// Points at (near) zero depth report visible=false and an off-frame sentinel.
Projection project(const Vec3& world_point, const UavPose& uav, const GimbalState& g,
                   const CameraModel& cam);

/// Gimbal angles that put `target` on the optical axis, tilt clamped to limits.
GimbalState aim_at(const Vec3& target, const UavPose& uav, GimbalState g);

struct LoopStep {
  WorldState world;
  GimbalCommand command;
  Projection seen;
};

/// One frame: move the USV, project it, run the controller on the projection,
/// then move the gimbal. An invisible target yields a zero command.
LoopStep closed_loop_step(const WorldState& w, double rudder_rate, const ControllerConfig& cfg,
                          const CameraModel& cam);

}  // namespace roitrack
