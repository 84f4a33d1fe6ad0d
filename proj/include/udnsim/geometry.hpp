// Poisson point process sampling on a square window and nearest-neighbor
// queries under the toroidal (wrap-around) metric. The torus removes window
// edge bias so the finite area behaves like a stationary process.
#pragma once

#include <cstddef>
#include <vector>

#include "udnsim/rng.hpp"

namespace udnsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Window {
  double side_km = 1.0;

  double area() const { return side_km * side_km; }
  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x < side_km && p.y >= 0.0 && p.y < side_km;
  }
};

enum class PointKind { SmallCell, HtcUser, MtcDevice };

struct PointSet {
  PointKind kind = PointKind::SmallCell;
  double density = 0.0;  // points per km^2 used to sample
  Window window;
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// Squared wrap-around distance on the torus [0, side)^2.
inline double toroidal_dist2(Vec2 a, Vec2 b, double side) {
  double dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  double dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  if (dx > side - dx) dx = side - dx;
  if (dy > side - dy) dy = side - dy;
  return dx * dx + dy * dy;
}

double toroidal_distance(Vec2 a, Vec2 b, double side);

// Draws a homogeneous PPP: Poisson(density * area) points, i.i.d. uniform.
PointSet sample_hppp(double density, PointKind kind, const Window& window,
                     RngStream& rng);

// Independent thinning: keeps each point with the given probability.
PointSet thin(const PointSet& points, double keep_probability, RngStream& rng);

struct Neighbor {
  std::size_t index = 0;
  double distance_km = 0.0;
};

// Exhaustive scan; distances non-decreasing, ties broken by lower index.
// Throws if k exceeds the target count.
std::vector<Neighbor> k_nearest(Vec2 query, const PointSet& targets,
                                std::size_t k);

// Uniform-bin index over a point set for bulk nearest-neighbor queries on the
// torus. Returns exactly what the exhaustive scan returns.
class SpatialGrid {
 public:
  SpatialGrid(const std::vector<Vec2>& points, double side);
  explicit SpatialGrid(const PointSet& points)
      : SpatialGrid(points.points, points.window.side_km) {}

  std::vector<Neighbor> k_nearest(Vec2 query, std::size_t k) const;
  Neighbor nearest(Vec2 query) const;

  std::size_t size() const { return points_.size(); }

 private:
  void collect_bin(int bx, int by, Vec2 query,
                   std::vector<std::pair<double, std::size_t>>& heap,
                   std::size_t k) const;

  std::vector<Vec2> points_;
  double side_;
  int bins_;
  double bin_width_;
  std::vector<std::uint32_t> bin_start_;  // bins*bins+1 prefix offsets
  std::vector<std::uint32_t> order_;      // point ids bucketed by bin
};

}  // namespace udnsim
