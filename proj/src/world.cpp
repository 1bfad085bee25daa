#include "roitrack/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roitrack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinDepth = 1e-9;

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

struct CameraAxes {
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

CameraAxes camera_axes(const GimbalState& g) {
  const double sp = std::sin(g.pan), cp = std::cos(g.pan);
  const double st = std::sin(g.tilt), ct = std::cos(g.tilt);
  const Vec3 heading{sp, cp, 0.0};
  return CameraAxes{
      .right = {cp, -sp, 0.0},
      .up = {-st * heading.x, -st * heading.y, ct},
      .forward = {ct * heading.x, ct * heading.y, st},
  };
}

}  // namespace

double GimbalState::pan_normalized() const {
  double p = std::remainder(pan, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

void CameraModel::validate() const {
  if (!frame.valid()) throw std::invalid_argument("frame dimensions must be positive");
  if (!(horizontal_fov > 0.0 && horizontal_fov < kPi)) {
    throw std::invalid_argument("horizontal field of view must lie in (0, pi)");
  }
}

double CameraModel::focal_px() const { return frame.half_width() / std::tan(horizontal_fov / 2.0); }

double CameraModel::vertical_fov() const { return 2.0 * std::atan(frame.half_height() / focal_px()); }

UsvState usv_step(const UsvState& s, double rudder_rate, double dt) {
  UsvState next = s;
  next.heading = s.heading + rudder_rate * dt;
  next.x = s.x + s.speed * std::cos(next.heading) * dt;
  next.y = s.y + s.speed * std::sin(next.heading) * dt;
  return next;
}

GimbalStepResult gimbal_step(const GimbalState& g, const GimbalCommand& cmd, double dt) {
  GimbalStepResult out{g};
  auto limit = [&](double rate) {
    if (std::abs(rate) > g.max_rate) {
      out.rate_clamped = true;
      return std::copysign(g.max_rate, rate);
    }
    return rate;
  };
  const double yaw = limit(cmd.yaw_rate);
  const double pitch = limit(cmd.pitch_rate);
  out.state.pan = g.pan + yaw * dt;
  const double tilt = g.tilt + pitch * dt;
  out.state.tilt = std::clamp(tilt, kTiltMin, kTiltMax);
  out.tilt_saturated = out.state.tilt != tilt;
  return out;
}

Projection project(const Vec3& world_point, const UavPose& uav, const GimbalState& g,
                   const CameraModel& cam) {
  const Vec3 c = uav.position();
  const Vec3 d{world_point.x - c.x, world_point.y - c.y, world_point.z - c.z};
  const CameraAxes axes = camera_axes(g);
  const double xc = dot(d, axes.right);
  const double yc = dot(d, axes.up);
  const double zc = dot(d, axes.forward);

  Projection out;
  out.depth = zc;
  if (std::abs(zc) < kMinDepth) {
    out.point = {static_cast<double>(cam.frame.width), static_cast<double>(cam.frame.height)};
    return out;
  }
  const double f = cam.focal_px();
  out.point = {f * xc / zc, f * yc / zc};
  out.visible = zc > 0.0 && std::abs(out.point.x) <= cam.frame.half_width() &&
                std::abs(out.point.y) <= cam.frame.half_height();
  return out;
}

GimbalState aim_at(const Vec3& target, const UavPose& uav, GimbalState g) {
  const double dx = target.x - uav.x;
  const double dy = target.y - uav.y;
  const double dz = target.z - uav.altitude;
  g.pan = std::atan2(dx, dy);
  g.tilt = std::clamp(std::atan2(dz, std::hypot(dx, dy)), kTiltMin, kTiltMax);
  return g;
}

LoopStep closed_loop_step(const WorldState& w, double rudder_rate, const ControllerConfig& cfg,
                          const CameraModel& cam) {
  LoopStep out{w, {}, {}};
  out.world.usv = usv_step(w.usv, rudder_rate, w.dt);
  out.seen = project({out.world.usv.x, out.world.usv.y, 0.0}, w.uav, w.gimbal, cam);
  if (out.seen.visible) out.command = step(out.seen.point, cfg);
  out.world.gimbal = gimbal_step(w.gimbal, out.command, w.dt).state;
  out.world.tick = w.tick + 1;
  return out;
}

}  // namespace roitrack
