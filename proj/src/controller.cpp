#include "roitrack/controller.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace roitrack {

void ControllerConfig::validate() const {
  if (!(rate_magnitude > 0.0 && rate_magnitude <= kMaxGimbalRate)) {
    throw std::invalid_argument("rate magnitude must lie in (0, 0.3] rad/s, got " +
                                std::to_string(rate_magnitude));
  }
  if (!frame.valid()) throw std::invalid_argument("frame dimensions must be positive");
  if (!roi.fits(frame)) {
    throw std::invalid_argument("ROI semi-axes must be positive and fit inside the frame");
  }
}

ControllerConfig ControllerConfig::with_fractions(const FrameSpec& frame, double frac_x,
                                                  double frac_y, double rate) {
  ControllerConfig cfg{rate, frame, EllipseRoi::from_fractions(frame, frac_x, frac_y)};
  cfg.validate();
  return cfg;
}

GimbalCommand step(const ImagePoint& p, const ControllerConfig& cfg) {
  if (is_inside(p, cfg.roi)) return {};
  const double m = cfg.rate_magnitude;
  switch (classify_sector(to_polar(p).theta)) {
    case Sector::Right: return {m, 0.0};
    case Sector::Left: return {-m, 0.0};
    case Sector::Top: return {0.0, m};
    case Sector::Bottom: return {0.0, -m};
  }
  return {};
}

std::vector<GimbalCommand> step_series(std::span<const ImagePoint> points,
                                       const ControllerConfig& cfg) {
  std::vector<GimbalCommand> out(points.size());
  std::transform(points.begin(), points.end(), out.begin(),
                 [&cfg](const ImagePoint& p) { return step(p, cfg); });
  return out;
}

}  // namespace roitrack
