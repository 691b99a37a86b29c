#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "csplace/detail/text.hpp"
#include "csplace/error.hpp"
#include "csplace/graph.hpp"
#include "csplace/matrix.hpp"
#include "csplace/trace.hpp"

namespace csplace {

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

/// Occupancy counts of trace points on a regular grid. counts(iy, ix) covers
/// [origin.x + ix*cell, origin.x + (ix+1)*cell) and likewise in y.
struct HeatmapGrid {
  Point origin;
  double cell_size = 1.0;
  Bounds bounds;
  Matrix<std::uint64_t> counts;
  std::uint64_t out_of_bounds = 0;

  std::size_t width() const noexcept { return counts.cols(); }
  std::size_t height() const noexcept { return counts.rows(); }

  std::uint64_t in_bounds() const noexcept {
    std::uint64_t sum = 0;
    for (const auto c : counts.data()) sum += c;
    return sum;
  }
  std::uint64_t max_count() const noexcept {
    std::uint64_t m = 0;
    for (const auto c : counts.data()) m = std::max(m, c);
    return m;
  }
};

/// Roadmap bounding box padded by one cell on every side.
inline Bounds roadmap_bounds(const RoadmapGraph& roadmap, double cell) {
  if (roadmap.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty roadmap has no bounds");
  Bounds b{roadmap.position(0).x, roadmap.position(0).y, roadmap.position(0).x, roadmap.position(0).y};
  for (const auto& v : roadmap.vertices()) {
    b.min_x = std::min(b.min_x, v.position.x);
    b.min_y = std::min(b.min_y, v.position.y);
    b.max_x = std::max(b.max_x, v.position.x);
    b.max_y = std::max(b.max_y, v.position.y);
  }
  return {b.min_x - cell, b.min_y - cell, b.max_x + cell, b.max_y + cell};
}

/// Points on the max edge of the bounds clamp into the last cell; points
/// outside the bounds only increment `out_of_bounds`.
inline HeatmapGrid build_heatmap(std::span<const TraceFrame> frames, double cell, const Bounds& bounds) {
  if (!(cell > 0.0) || !std::isfinite(cell)) throw Error(ErrorCode::ConfigError, "heatmap cell must be positive");
  if (!(bounds.max_x > bounds.min_x) || !(bounds.max_y > bounds.min_y)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate heatmap bounds");
  }
  const auto cells = [cell](double extent) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(extent / cell)));
  };
  const std::size_t nx = cells(bounds.max_x - bounds.min_x);
  const std::size_t ny = cells(bounds.max_y - bounds.min_y);

  HeatmapGrid grid;
  grid.origin = {bounds.min_x, bounds.min_y};
  grid.cell_size = cell;
  grid.bounds = bounds;
  grid.counts = Matrix<std::uint64_t>(ny, nx, 0);

  const auto index = [cell](double v, double lo, std::size_t n) {
    const auto i = static_cast<std::size_t>(std::floor((v - lo) / cell));
    return std::min(i, n - 1);
  };
  for (const auto& frame : frames) {
    for (const auto& truck : frame.positions) {
      const Point& p = truck.position;
      if (p.x < bounds.min_x || p.x > bounds.max_x || p.y < bounds.min_y || p.y > bounds.max_y) {
        ++grid.out_of_bounds;
        continue;
      }
      ++grid.counts(index(p.y, bounds.min_y, ny), index(p.x, bounds.min_x, nx));
    }
  }
  return grid;
}

inline void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  out << "ix,iy,x_min,y_min,count\n";
  for (std::size_t iy = 0; iy < grid.height(); ++iy) {
    for (std::size_t ix = 0; ix < grid.width(); ++ix) {
      out << ix << ',' << iy << ','
          << detail::format_double(grid.origin.x + static_cast<double>(ix) * grid.cell_size) << ','
          << detail::format_double(grid.origin.y + static_cast<double>(iy) * grid.cell_size) << ','
          << grid.counts(iy, ix) << '\n';
    }
  }
  out << "# out_of_bounds=" << grid.out_of_bounds << '\n';
}

/// Binary 8-bit PGM, counts scaled so the busiest cell is 255. North is up.
inline void write_heatmap_pgm(std::ostream& out, const HeatmapGrid& grid) {
  out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  const std::uint64_t peak = grid.max_count();
  for (std::size_t r = 0; r < grid.height(); ++r) {
    const std::size_t iy = grid.height() - 1 - r;
    for (std::size_t ix = 0; ix < grid.width(); ++ix) {
      const std::uint64_t c = grid.counts(iy, ix);
      const auto level = peak == 0 ? 0 : static_cast<unsigned>((c * 255 + peak / 2) / peak);
      out.put(static_cast<char>(level));
    }
  }
}

}  // namespace csplace
