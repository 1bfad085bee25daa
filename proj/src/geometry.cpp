#include "roitrack/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace roitrack {

namespace {
constexpr double kPi = std::numbers::pi;
}

EllipseRoi EllipseRoi::from_fractions(const FrameSpec& frame, double frac_x, double frac_y) {
  if (!frame.valid()) throw std::invalid_argument("frame dimensions must be positive");
  auto check = [](double f, const char* name) {
    if (!(f >= kMinRoiFraction && f <= kMaxRoiFraction)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0.05, 0.49], got " +
                                  std::to_string(f));
    }
  };
  check(frac_x, "roi fraction x");
  check(frac_y, "roi fraction y");
  return EllipseRoi{frac_x * frame.width, frac_y * frame.height};
}

std::string_view to_string(Sector s) {
  switch (s) {
    case Sector::Right: return "right";
    case Sector::Top: return "top";
    case Sector::Left: return "left";
    case Sector::Bottom: return "bottom";
  }
  return "right";
}

Sector sector_from_string(std::string_view name) {
  if (name == "right") return Sector::Right;
  if (name == "top") return Sector::Top;
  if (name == "left") return Sector::Left;
  if (name == "bottom") return Sector::Bottom;
  throw std::invalid_argument("unknown sector '" + std::string(name) + "'");
}

ImagePoint to_centered(double row, double col, const FrameSpec& frame) {
  return ImagePoint{col - frame.half_width(), frame.half_height() - row};
}

PolarPoint to_polar(const ImagePoint& p) {
  if (p.x == 0.0 && p.y == 0.0) return PolarPoint{0.0, 0.0};
  double theta = std::atan2(p.y, p.x);
  // atan2 returns -pi for (x<0, y=-0.0); fold it onto the closed end.
  if (theta == -kPi) theta = kPi;
  return PolarPoint{std::hypot(p.x, p.y), theta};
}

double relative_position(const ImagePoint& p, const EllipseRoi& roi) {
  const double u = p.x / roi.a;
  const double v = p.y / roi.b;
  return u * u + v * v;
}

Sector classify_sector(double theta) {
  constexpr double q = kPi / 4.0;
  if (theta >= -q && theta < q) return Sector::Right;
  if (theta >= q && theta < 3.0 * q) return Sector::Top;
  if (theta >= -3.0 * q && theta < -q) return Sector::Bottom;
  return Sector::Left;
}

bool is_inside(const ImagePoint& p, const EllipseRoi& roi) {
  return relative_position(p, roi) <= 1.0;
}

}  // namespace roitrack
