#include "udnsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udnsim {

double toroidal_distance(Vec2 a, Vec2 b, double side) {
  return std::sqrt(toroidal_dist2(a, b, side));
}

PointSet sample_hppp(double density, PointKind kind, const Window& window,
                     RngStream& rng) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw std::invalid_argument("sample_hppp: density must be >= 0");
  }
  if (!(window.side_km > 0.0)) {
    throw std::invalid_argument("sample_hppp: window side must be > 0");
  }
  PointSet out;
  out.kind = kind;
  out.density = density;
  out.window = window;
  const std::int64_t count = rng.poisson(density * window.area());
  out.points.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const double x = rng.uniform() * window.side_km;
    const double y = rng.uniform() * window.side_km;
    out.points.push_back({x, y});
  }
  return out;
}

PointSet thin(const PointSet& points, double keep_probability,
              RngStream& rng) {
  if (!(keep_probability >= 0.0 && keep_probability <= 1.0)) {
    throw std::invalid_argument("thin: keep_probability must be in [0,1]");
  }
  PointSet out;
  out.kind = points.kind;
  out.density = points.density * keep_probability;
  out.window = points.window;
  out.points.reserve(points.points.size());
  for (const Vec2& p : points.points) {
    if (rng.uniform() < keep_probability) out.points.push_back(p);
  }
  return out;
}

std::vector<Neighbor> k_nearest(Vec2 query, const PointSet& targets,
                                std::size_t k) {
  if (k > targets.size()) {
    throw std::invalid_argument("k_nearest: insufficient points");
  }
  if (k == 0) return {};
  const double side = targets.window.side_km;
  std::vector<std::pair<double, std::size_t>> all;
  all.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    all.emplace_back(toroidal_dist2(query, targets.points[i], side), i);
  }
  std::nth_element(all.begin(), all.begin() + (k - 1), all.end());
  std::sort(all.begin(), all.begin() + k);
  std::vector<Neighbor> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = {all[i].second, std::sqrt(all[i].first)};
  }
  return out;
}

SpatialGrid::SpatialGrid(const std::vector<Vec2>& points, double side)
    : points_(points), side_(side) {
  const std::size_t n = points_.size();
  bins_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n) / 2.0)));
  bin_width_ = side_ / bins_;
  const std::size_t nbins = static_cast<std::size_t>(bins_) * bins_;
  std::vector<std::uint32_t> counts(nbins, 0);
  auto bin_of = [&](Vec2 p) {
    int bx = static_cast<int>(p.x / side_ * bins_);
    int by = static_cast<int>(p.y / side_ * bins_);
    bx = std::clamp(bx, 0, bins_ - 1);
    by = std::clamp(by, 0, bins_ - 1);
    return static_cast<std::size_t>(by) * bins_ + bx;
  };
  for (const Vec2& p : points_) ++counts[bin_of(p)];
  bin_start_.assign(nbins + 1, 0);
  for (std::size_t b = 0; b < nbins; ++b) {
    bin_start_[b + 1] = bin_start_[b] + counts[b];
  }
  order_.resize(n);
  std::vector<std::uint32_t> cursor(bin_start_.begin(), bin_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    order_[cursor[bin_of(points_[i])]++] = static_cast<std::uint32_t>(i);
  }
}

void SpatialGrid::collect_bin(int bx, int by, Vec2 query,
                              std::vector<std::pair<double, std::size_t>>& heap,
                              std::size_t k) const {
  const std::size_t b = static_cast<std::size_t>(by) * bins_ + bx;
  for (std::uint32_t o = bin_start_[b]; o < bin_start_[b + 1]; ++o) {
    const std::size_t i = order_[o];
    const std::pair<double, std::size_t> cand{
        toroidal_dist2(query, points_[i], side_), i};
    if (heap.size() < k) {
      heap.push_back(cand);
      std::push_heap(heap.begin(), heap.end());
    } else if (cand < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = cand;
      std::push_heap(heap.begin(), heap.end());
    }
  }
}

std::vector<Neighbor> SpatialGrid::k_nearest(Vec2 query, std::size_t k) const {
  if (k > points_.size()) {
    throw std::invalid_argument("k_nearest: insufficient points");
  }
  if (k == 0) return {};
  std::vector<std::pair<double, std::size_t>> heap;
  heap.reserve(k + 1);

  const int qx = std::clamp(static_cast<int>(query.x / side_ * bins_), 0, bins_ - 1);
  const int qy = std::clamp(static_cast<int>(query.y / side_ * bins_), 0, bins_ - 1);

  for (int rad = 0;; ++rad) {
    if (2 * rad + 1 >= bins_) {
      // Ring would wrap onto itself; fall back to scanning everything.
      heap.clear();
      for (int by = 0; by < bins_; ++by) {
        for (int bx = 0; bx < bins_; ++bx) collect_bin(bx, by, query, heap, k);
      }
      break;
    }
    auto wrap = [&](int v) { return ((v % bins_) + bins_) % bins_; };
    if (rad == 0) {
      collect_bin(qx, qy, query, heap, k);
    } else {
      for (int d = -rad; d <= rad; ++d) {
        collect_bin(wrap(qx + d), wrap(qy - rad), query, heap, k);
        collect_bin(wrap(qx + d), wrap(qy + rad), query, heap, k);
      }
      for (int d = -rad + 1; d <= rad - 1; ++d) {
        collect_bin(wrap(qx - rad), wrap(qy + d), query, heap, k);
        collect_bin(wrap(qx + rad), wrap(qy + d), query, heap, k);
      }
    }
    // Points in rings > rad are at least rad*bin_width away.
    const double safe = static_cast<double>(rad) * bin_width_;
    if (heap.size() == k && heap.front().first <= safe * safe) break;
  }

  std::sort(heap.begin(), heap.end());
  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) {
    out[i] = {heap[i].second, std::sqrt(heap[i].first)};
  }
  return out;
}

Neighbor SpatialGrid::nearest(Vec2 query) const {
  auto r = k_nearest(query, 1);
  return r[0];
}

}  // namespace udnsim
