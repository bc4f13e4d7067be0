#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "fgt/chain.hpp"

namespace fgt {

struct DimensionFit {
  struct Row {
    double scale = 0.0;  // cell size
    double count = 0.0;  // occupied cells, averaged over grid offsets
  };
  double estimate = 0.0;      // least-squares slope of log N vs log(1/scale)
  double intercept = 0.0;
  double rms_residual = 0.0;  // fit quality in log space
  std::vector<Row> table;
};

inline std::vector<double> default_box_scales(double base_scale = 1.0) {
  if (!(base_scale > 0.0)) throw std::invalid_argument("base scale");
  std::vector<double> s;
  for (int k = 3; k <= 10; ++k) s.push_back(std::ldexp(base_scale, -k));
  return s;
}

namespace detail {

inline std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
         static_cast<std::uint32_t>(iy);
}

/// Marks every grid cell a segment passes through (incremental cell walk).
inline void mark_segment_cells(Point2 a, Point2 b, double eps, double ox,
                               double oy, std::unordered_set<std::uint64_t>* out) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  std::int64_t ix = static_cast<std::int64_t>(std::floor((a.x - ox) / eps));
  std::int64_t iy = static_cast<std::int64_t>(std::floor((a.y - oy) / eps));
  const int stepx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int stepy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  const double inf = std::numeric_limits<double>::infinity();
  auto boundary_t = [&](std::int64_t i, double origin, double start,
                        double d, int step) {
    if (step == 0) return inf;
    const double edge = origin + (i + (step > 0 ? 1 : 0)) * eps;
    return (edge - start) / d;
  };
  double tx = boundary_t(ix, ox, a.x, dx, stepx);
  double ty = boundary_t(iy, oy, a.y, dy, stepy);
  const double tdx = stepx ? eps / std::abs(dx) : inf;
  const double tdy = stepy ? eps / std::abs(dy) : inf;
  const long maxit =
      static_cast<long>((std::abs(dx) + std::abs(dy)) / eps) + 8;
  for (long it = 0; it <= maxit; ++it) {
    out->insert(cell_key(ix, iy));
    if (tx > 1.0 && ty > 1.0) break;
    if (tx <= ty) {
      ix += stepx;
      tx += tdx;
    } else {
      iy += stepy;
      ty += tdy;
    }
  }
}

/// Marks the cells covered by a triangle, row band by row band.
inline void mark_triangle_cells(const Simplex& s, double eps, double ox,
                                double oy, std::unordered_set<std::uint64_t>* out) {
  std::vector<Point2> poly = {s[0], s[1], s[2]};
  if (orient2d(poly[0], poly[1], poly[2]) < 0.0) std::swap(poly[1], poly[2]);
  double ymin = poly[0].y, ymax = poly[0].y;
  for (const auto& p : poly) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const std::int64_t ry0 = static_cast<std::int64_t>(std::floor((ymin - oy) / eps));
  const std::int64_t ry1 = static_cast<std::int64_t>(std::floor((ymax - oy) / eps));
  for (std::int64_t ry = ry0; ry <= ry1; ++ry) {
    const double ylo = oy + ry * eps, yhi = ylo + eps;
    // keep-left clips against the two horizontal band edges
    auto band = clip_halfplane(poly, {0.0, ylo}, {1.0, ylo});
    band = clip_halfplane(band, {1.0, yhi}, {0.0, yhi});
    if (band.empty()) continue;
    double xmin = band[0].x, xmax = band[0].x;
    for (const auto& p : band) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
    }
    const std::int64_t cx0 = static_cast<std::int64_t>(std::floor((xmin - ox) / eps));
    const std::int64_t cx1 = static_cast<std::int64_t>(std::floor((xmax - ox) / eps));
    for (std::int64_t cx = cx0; cx <= cx1; ++cx) out->insert(cell_key(cx, ry));
  }
}

}  // namespace detail

/// Box-counting dimension of the support of a chain: occupied-cell counts at
/// the given scales (averaged over a few fixed grid offsets to damp phase
/// artifacts), then the least-squares slope of log N against log(1/scale).
inline DimensionFit box_dimension(const Chain& c,
                                  const std::vector<double>& scales) {
  if (c.dim() == 0)
    throw std::invalid_argument("box dimension needs a 1- or 2-chain");
  if (c.is_empty()) throw std::invalid_argument("box dimension of empty chain");
  if (scales.size() < 4)
    throw std::invalid_argument("need at least 4 scales");
  for (double s : scales)
    if (!(s > 0.0)) throw std::invalid_argument("scales must be positive");
  double smin = scales[0], smax = scales[0];
  for (double s : scales) {
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  if (std::log10(smax / smin) < 1.5)
    throw std::invalid_argument("scales must span at least 1.5 decades");

  static const double offsets[4][2] = {
      {0.0, 0.0}, {0.25, 0.37}, {0.53, 0.11}, {0.71, 0.59}};

  DimensionFit fit;
  for (double eps : scales) {
    double acc = 0.0;
    for (const auto& off : offsets) {
      std::unordered_set<std::uint64_t> cells;
      for (size_t i = 0; i < c.size(); ++i) {
        const Simplex& s = c.simplex(i);
        if (c.dim() == 1)
          detail::mark_segment_cells(s[0], s[1], eps, off[0] * eps,
                                     off[1] * eps, &cells);
        else
          detail::mark_triangle_cells(s, eps, off[0] * eps, off[1] * eps,
                                      &cells);
      }
      acc += static_cast<double>(cells.size());
    }
    fit.table.push_back({eps, acc / 4.0});
  }

  // least squares in log space
  const size_t n = fit.table.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : fit.table) {
    const double x = std::log(1.0 / row.scale), y = std::log(row.count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (!(det > 0.0)) throw std::invalid_argument("degenerate scale set");
  fit.estimate = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double sq = 0.0;
  for (const auto& row : fit.table) {
    const double x = std::log(1.0 / row.scale), y = std::log(row.count);
    const double r = y - (fit.estimate * x + fit.intercept);
    sq += r * r;
  }
  fit.rms_residual = std::sqrt(sq / n);
  return fit;
}

}  // namespace fgt
