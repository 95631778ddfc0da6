#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hygrofrac {

class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rectangular analysis domain, dimensions in mm.
struct Domain2D {
  double width = 0.0;
  double height = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  double x1() const { return x0 + width; }
  double y1() const { return y0 + height; }
};

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double diameter = 0.0;

  double radius() const { return 0.5 * diameter; }
  bool contains(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    return dx * dx + dy * dy <= radius() * radius();
  }
};

/// Horizontal fibre band spanning the full domain width (ply/laminate idealisation).
struct Strip {
  double y_min = 0.0;
  double y_max = 0.0;
  double theta_deg = 0.0;  // material orientation of this band

  bool contains(double y) const { return y >= y_min && y <= y_max; }
};

enum class LayoutKind { None, SquareArray, Random, Strips };

/// Fibre placement inside a Domain2D. Circles and strips are both supported;
/// region index i refers to circles[i] for i < circles.size(), strips after.
struct FibreLayout {
  LayoutKind kind = LayoutKind::None;
  std::vector<Circle> circles;
  std::vector<Strip> strips;
  double circle_theta_deg = 0.0;  // orientation shared by all circular fibres
  std::uint64_t seed = 0;
  double min_gap = 0.0;

  std::size_t region_count() const { return circles.size() + strips.size(); }
  double region_theta(std::size_t i) const {
    return i < circles.size() ? circle_theta_deg : strips[i - circles.size()].theta_deg;
  }
};

FibreLayout place_fibres_square_array(int rows, int cols, double diameter, const Domain2D& domain);

/// Seeded dart throwing; identical seed and parameters give identical layouts.
/// Pairwise centre distance of accepted circles is at least diameter + min_gap.
FibreLayout place_fibres_random(int n, double diameter, const Domain2D& domain,
                                std::uint64_t seed, double min_gap);

FibreLayout make_strip_layout(const std::vector<Strip>& strips);

}  // namespace hygrofrac
