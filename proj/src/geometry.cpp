#include "hygrofrac/geometry.hpp"

#include <cmath>
#include <random>

namespace hygrofrac {

FibreLayout place_fibres_square_array(int rows, int cols, double diameter, const Domain2D& domain) {
  if (rows < 0 || cols < 0) throw GeometryError("square array: rows/cols must be non-negative");
  FibreLayout layout;
  layout.kind = LayoutKind::SquareArray;
  if (rows == 0 || cols == 0) return layout;

  const double pitch_x = domain.width / cols;
  const double pitch_y = domain.height / rows;
  if (pitch_x < diameter || pitch_y < diameter) {
    throw GeometryError("square array: pitch " + std::to_string(std::min(pitch_x, pitch_y)) +
                        " mm is smaller than fibre diameter " + std::to_string(diameter) + " mm");
  }
  layout.circles.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Circle circ;
      circ.cx = domain.x0 + (c + 0.5) * pitch_x;
      circ.cy = domain.y0 + (r + 0.5) * pitch_y;
      circ.diameter = diameter;
      layout.circles.push_back(circ);
    }
  }
  return layout;
}

FibreLayout place_fibres_random(int n, double diameter, const Domain2D& domain,
                                std::uint64_t seed, double min_gap) {
  if (n < 0) throw GeometryError("random layout: n must be non-negative");
  FibreLayout layout;
  layout.kind = LayoutKind::Random;
  layout.seed = seed;
  layout.min_gap = min_gap;
  if (n == 0) return layout;

  const double r = 0.5 * diameter;
  const double lo_x = domain.x0 + r, hi_x = domain.x1() - r;
  const double lo_y = domain.y0 + r, hi_y = domain.y1() - r;
  if (lo_x >= hi_x || lo_y >= hi_y) {
    throw GeometryError("random layout: fibre diameter does not fit inside the domain");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo_x, hi_x);
  std::uniform_real_distribution<double> uy(lo_y, hi_y);
  const double d_min = diameter + min_gap;
  const double d_min2 = d_min * d_min;

  const long max_attempts = 20000L * n;
  layout.circles.reserve(n);
  long attempts = 0;
  while (static_cast<int>(layout.circles.size()) < n) {
    if (++attempts > max_attempts) {
      throw GeometryError("random layout: packing failed after bounded retries, placed " +
                          std::to_string(layout.circles.size()) + " of " + std::to_string(n) +
                          " fibres");
    }
    const double x = ux(rng);
    const double y = uy(rng);
    bool ok = true;
    for (const Circle& c : layout.circles) {
      const double dx = x - c.cx, dy = y - c.cy;
      if (dx * dx + dy * dy < d_min2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    layout.circles.push_back(Circle{x, y, diameter});
  }
  return layout;
}

FibreLayout make_strip_layout(const std::vector<Strip>& strips) {
  FibreLayout layout;
  layout.kind = LayoutKind::Strips;
  layout.strips = strips;
  return layout;
}

}  // namespace hygrofrac
