#pragma once

#include <numbers>
#include <string_view>

namespace roitrack {

/// Pixel dimensions of the camera frame.
struct FrameSpec {
  int width = 1920;
  int height = 720;

  double half_width() const { return width / 2.0; }
  double half_height() const { return height / 2.0; }
  bool valid() const { return width > 0 && height > 0; }
};

/// Object position in pixels relative to the frame center, y pointing up.
struct ImagePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned elliptical region of interest centered on the frame.
/// `a` is the horizontal semi-axis, `b` the vertical one.
struct EllipseRoi {
  double a = 576.0;
  double b = 216.0;

  bool valid() const { return a > 0.0 && b > 0.0; }
  bool fits(const FrameSpec& frame) const {
    return valid() && a <= frame.half_width() && b <= frame.half_height();
  }

  /// ROI whose semi-axes are fractions of the full frame width and height.
  static EllipseRoi from_fractions(const FrameSpec& frame, double frac_x, double frac_y);
};

inline constexpr double kMinRoiFraction = 0.05;
inline constexpr double kMaxRoiFraction = 0.49;
inline constexpr double kDefaultRoiFraction = 0.30;

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;  // (-pi, pi]
};

enum class Sector { Right, Top, Left, Bottom };

std::string_view to_string(Sector s);
Sector sector_from_string(std::string_view name);

/// Raw tracker coordinates (origin top-left, row down) to centered y-up coordinates.
ImagePoint to_centered(double row, double col, const FrameSpec& frame);

PolarPoint to_polar(const ImagePoint& p);

/// x^2/a^2 + y^2/b^2: below 1 inside the ellipse, 1 on it, above 1 outside.
double relative_position(const ImagePoint& p, const EllipseRoi& roi);

/// Quarter-plane sectors split by the diagonals. Each boundary angle belongs
/// to the sector counterclockwise of it, so pi/4 is Top and -pi/4 is Right.
Sector classify_sector(double theta);

/// The boundary (P == 1) counts as inside.
bool is_inside(const ImagePoint& p, const EllipseRoi& roi);

}  // namespace roitrack
