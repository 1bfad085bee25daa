#pragma once

#include <span>
#include <vector>

#include "roitrack/geometry.hpp"

namespace roitrack {

/// Gimbal actuator ceiling in rad/s.
inline constexpr double kMaxGimbalRate = 0.3;

struct ControllerConfig {
  double rate_magnitude = kMaxGimbalRate;
  FrameSpec frame{};
  EllipseRoi roi{};

  /// Throws std::invalid_argument when the rate is outside (0, 0.3] or the ROI
  /// does not fit the frame.
  void validate() const;

  static ControllerConfig with_fractions(const FrameSpec& frame, double frac_x, double frac_y,
                                         double rate = kMaxGimbalRate);
};

/// Angular-rate command for the camera. Positive yaw pans toward image-right,
/// positive pitch tilts toward image-up.
struct GimbalCommand {
  double yaw_rate = 0.0;
  double pitch_rate = 0.0;

  bool idle() const { return yaw_rate == 0.0 && pitch_rate == 0.0; }
  bool single_axis() const { return yaw_rate == 0.0 || pitch_rate == 0.0; }

  friend bool operator==(const GimbalCommand&, const GimbalCommand&) = default;
};

/// Motor schema: zero while the object sits in the ROI, otherwise a full-rate
/// command on the axis selected by the object's sector.
GimbalCommand step(const ImagePoint& p, const ControllerConfig& cfg);

std::vector<GimbalCommand> step_series(std::span<const ImagePoint> points,
                                       const ControllerConfig& cfg);

}  // namespace roitrack
