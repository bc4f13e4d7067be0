#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fgt/geometry.hpp"

namespace fgt {

using cplx = std::complex<double>;

// --- polygon utilities ---------------------------------------------------------

inline double polygon_signed_area(const std::vector<Point2>& poly) {
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

inline Point2 polygon_centroid(const std::vector<Point2>& poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a) < 1e-300) throw std::invalid_argument("degenerate polygon");
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

inline double polygon_diameter(const std::vector<Point2>& poly) {
  const BBox bb = BBox::of_points(poly);
  return std::hypot(bb.width(), bb.height());
}

/// Distance-tolerant point-in-polygon: true when the point is strictly
/// inside by ray crossing, or within tol of the boundary.
inline bool point_in_polygon(const std::vector<Point2>& poly, const Point2& p,
                             double tol = 0.0) {
  bool inside = false;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    if (tol > 0.0 && point_segment_distance(p, a, b) <= tol) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

inline bool polygon_is_simple(const std::vector<Point2>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Point2& a0 = poly[i];
    const Point2& a1 = poly[(i + 1) % n];
    if (dist(a0, a1) <= kGeomTol) return false;
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Point2& b0 = poly[j];
      const Point2& b1 = poly[(j + 1) % n];
      if (segment_crossing(a0, a1, b0, b1)) return false;
      // touching configurations: an endpoint in the other segment's interior
      if (point_segment_distance(b0, a0, a1) <= kGeomTol ||
          point_segment_distance(b1, a0, a1) <= kGeomTol ||
          point_segment_distance(a0, b0, b1) <= kGeomTol ||
          point_segment_distance(a1, b0, b1) <= kGeomTol)
        return false;
    }
  }
  return true;
}

/// Uniform arclength resampling of a closed polyline to m points.
inline std::vector<Point2> resample_closed(const std::vector<Point2>& poly,
                                           int m) {
  if (poly.size() < 3 || m < 3) throw std::invalid_argument("resample input");
  std::vector<double> cum = {0.0};
  for (size_t i = 0; i < poly.size(); ++i)
    cum.push_back(cum.back() + dist(poly[i], poly[(i + 1) % poly.size()]));
  const double total = cum.back();
  if (!(total > 0.0)) throw std::invalid_argument("zero-length polygon");
  std::vector<Point2> out;
  out.reserve(m);
  size_t seg = 0;
  for (int k = 0; k < m; ++k) {
    const double target = total * k / m;
    while (seg + 1 < poly.size() && cum[seg + 1] <= target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double f = len > 0.0 ? (target - cum[seg]) / len : 0.0;
    out.push_back(lerp(poly[seg], poly[(seg + 1) % poly.size()], f));
  }
  return out;
}

/// Symmetric Hausdorff distance between closed polylines, vertices of one
/// against the segments of the other.
inline double hausdorff_distance(const std::vector<Point2>& a,
                                 const std::vector<Point2>& b) {
  auto one_sided = [](const std::vector<Point2>& from,
                      const std::vector<Point2>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < to.size(); ++j) {
        best = std::min(
            best, point_segment_distance(p, to[j], to[(j + 1) % to.size()]));
        if (best == 0.0) break;
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

// --- conformal map by geodesic welding -------------------------------------------

/// Square root with the branch cut along the positive real axis, continuous
/// from above: arg in [0, 2pi), result in the closed upper half plane. The
/// signbit test keeps exact real-axis inputs welded to the correct side.
inline cplx csqrt_pos(cplx z) {
  double a = std::arg(z);
  if (std::signbit(a)) a += 2.0 * M_PI;
  return std::polar(std::sqrt(std::abs(z)), 0.5 * a);
}

struct GeodesicStep {
  double r = 0.0;  // Moebius parameter of the step
  double s = 0.0;  // slit height after the Moebius map
};

/// Conformal map of the unit disk onto the interior of a Jordan curve,
/// fitted by the geodesic variant of boundary welding: the curve is unzipped
/// point by point, each step closing the hyperbolic geodesic from the
/// current tip to the next sample. The disk map is the exact inverse of the
/// fitted composition, normalized to send 0 to an interior anchor with
/// positive derivative.
class RiemannMap {
 public:
  cplx z0, z1;                      // first two boundary samples
  std::vector<GeodesicStep> steps;  // one per remaining sample
  double sigma = 1.0;               // final fold: sigma * z^2
  cplx cayley_a;                    // half-plane image of the anchor
  cplx rot = 1.0;                   // disk pre-rotation for positive derivative
  Point2 anchor;                    // interior normalization point

  /// Region to disk.
  cplx forward(cplx z) const {
    cplx v = cplx(0.0, 1.0) * std::sqrt((z - z1) / (z - z0));
    for (const auto& st : steps) {
      const cplx zeta = v / (1.0 - st.r * v);
      v = csqrt_pos(zeta * zeta + st.s * st.s);
    }
    v = sigma * v * v;
    const cplx u = (v - cayley_a) / (v - std::conj(cayley_a));
    return std::conj(rot) * u;
  }

  /// Disk to region: the Riemann map phi with phi(0)=anchor, phi'(0)>0.
  cplx inverse(cplx u) const {
    u = rot * u;
    cplx v = (cayley_a - u * std::conj(cayley_a)) / (1.0 - u);
    v = csqrt_pos(sigma * v);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      const cplx w = csqrt_pos(v * v - it->s * it->s);
      v = w / (1.0 + it->r * w);
    }
    const cplx m = -v * v;
    return (z1 - m * z0) / (1.0 - m);
  }

  Point2 map_point(cplx u) const {
    const cplx z = inverse(u);
    return {z.real(), z.imag()};
  }
};

namespace detail {

inline cplx to_cplx(const Point2& p) { return {p.x, p.y}; }

inline Point2 find_interior_point(const std::vector<Point2>& poly) {
  Point2 c = polygon_centroid(poly);
  if (point_in_polygon(poly, c)) return c;
  const BBox bb = BBox::of_points(poly);
  for (int gy = 1; gy < 64; ++gy) {
    for (int gx = 1; gx < 64; ++gx) {
      const Point2 p = {bb.xmin + bb.width() * gx / 64.0,
                        bb.ymin + bb.height() * gy / 64.0};
      if (point_in_polygon(poly, p)) return p;
    }
  }
  throw std::invalid_argument("no interior point found for the boundary");
}

}  // namespace detail

/// Fits the welding map to an ordered simple closed boundary sample.
inline RiemannMap fit_riemann_map(const std::vector<Point2>& boundary,
                                  bool validate = true) {
  const size_t n = boundary.size();
  if (n < 8) throw std::invalid_argument("need at least 8 boundary points");
  const double diam = polygon_diameter(boundary);
  if (!(diam > 0.0)) throw std::invalid_argument("degenerate boundary");
  for (size_t i = 0; i < n; ++i)
    if (dist(boundary[i], boundary[(i + 1) % n]) < 1e-12 * diam)
      throw std::invalid_argument("coincident consecutive boundary points");
  if (validate && !polygon_is_simple(boundary))
    throw std::invalid_argument("boundary polygon must be simple");

  RiemannMap M;
  M.z0 = detail::to_cplx(boundary[0]);
  M.z1 = detail::to_cplx(boundary[1]);
  std::vector<cplx> cur;
  cur.reserve(n - 2);
  for (size_t j = 2; j < n; ++j)
    cur.push_back(cplx(0.0, 1.0) *
                  std::sqrt((detail::to_cplx(boundary[j]) - M.z1) /
                            (detail::to_cplx(boundary[j]) - M.z0)));

  M.steps.reserve(cur.size());
  for (size_t k = 0; k < cur.size(); ++k) {
    cplx w = cur[k];
    const double min_im = 1e-13 * (1.0 + std::abs(w));
    if (!(w.imag() > min_im)) w = {w.real(), min_im};
    const double r = w.real() / std::norm(w);
    const double s = std::norm(w) / w.imag();
    M.steps.push_back({r, s});
    for (size_t j = k + 1; j < cur.size(); ++j) {
      const cplx zeta = cur[j] / (1.0 - r * cur[j]);
      cur[j] = csqrt_pos(zeta * zeta + s * s);
    }
  }

  M.anchor = detail::find_interior_point(boundary);
  {
    const cplx za = detail::to_cplx(M.anchor);
    cplx v = cplx(0.0, 1.0) * std::sqrt((za - M.z1) / (za - M.z0));
    for (const auto& st : M.steps) {
      const cplx zeta = v / (1.0 - st.r * v);
      v = csqrt_pos(zeta * zeta + st.s * st.s);
    }
    M.sigma = v.real() < 0.0 ? -1.0 : 1.0;
    M.cayley_a = M.sigma * v * v;
    if (!(M.cayley_a.imag() > 0.0))
      throw std::runtime_error("anchor failed to land in the upper half plane");
  }

  M.rot = 1.0;
  const double h = 1e-6;
  const cplx d = (M.inverse(cplx(h, 0.0)) - M.inverse(cplx(-h, 0.0))) /
                 cplx(2.0 * h, 0.0);
  if (!(std::abs(d) > 0.0))
    throw std::runtime_error("vanishing derivative at the disk center");
  M.rot = std::conj(d) / std::abs(d);
  return M;
}

// --- residuals and evolution ------------------------------------------------------

struct CrResidual {
  double rms = 0.0;
  double max_abs = 0.0;
  int samples = 0;
};

/// Wirtinger dbar residual of the disk map on a polar grid, radii in
/// [r_lo, r_hi], central differences of width h. Analytic maps give values
/// at the differencing noise floor; defects in branch handling show up loud.
/// The default width keeps the floor low even for maps composed of many
/// thousands of welding steps (evaluation noise enters as eps_eval / h,
/// and a branch-cut jump J still reads as roughly J / (2h)).
inline CrResidual cr_residual(const RiemannMap& M, double r_lo = 0.1,
                              double r_hi = 0.9, int nr = 8, int ntheta = 40,
                              double h = 1e-3) {
  CrResidual res;
  double sq = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = r_lo + (r_hi - r_lo) * (i + 0.5) / nr;
    for (int j = 0; j < ntheta; ++j) {
      const double th = 2.0 * M_PI * (j + 0.37) / ntheta;
      const cplx u = std::polar(r, th);
      const cplx fx = (M.inverse(u + cplx(h, 0)) - M.inverse(u - cplx(h, 0))) /
                      cplx(2 * h, 0);
      const cplx fy = (M.inverse(u + cplx(0, h)) - M.inverse(u - cplx(0, h))) /
                      cplx(2 * h, 0);
      const double v = 0.5 * std::abs(fx + cplx(0, 1) * fy);
      res.max_abs = std::max(res.max_abs, v);
      sq += v * v;
      ++res.samples;
    }
  }
  res.rms = res.samples ? std::sqrt(sq / res.samples) : 0.0;
  return res;
}

/// Boundary of the evolved region: image of the circle of radius t/2,
/// adaptively refined until chords are short relative to the region size.
inline std::vector<Point2> evolve_region(const RiemannMap& M, double t,
                                         int base_samples = 512,
                                         double chord_frac = 0.004,
                                         int max_points = 16384) {
  if (!(t > 0.0 && t < 2.0))
    throw std::invalid_argument("evolution time must lie in (0,2)");
  const double radius = 0.5 * t;
  std::vector<double> thetas(base_samples);
  for (int i = 0; i < base_samples; ++i)
    thetas[i] = 2.0 * M_PI * (i + 0.2347) / base_samples;
  std::vector<Point2> pts(thetas.size());
  auto eval = [&](double th) { return M.map_point(std::polar(radius, th)); };
  for (size_t i = 0; i < thetas.size(); ++i) pts[i] = eval(thetas[i]);
  double scale = polygon_diameter(pts);
  for (int round = 0; round < 24; ++round) {
    const double tol = chord_frac * scale;
    std::vector<double> nt;
    std::vector<Point2> np;
    bool split = false;
    for (size_t i = 0; i < thetas.size(); ++i) {
      nt.push_back(thetas[i]);
      np.push_back(pts[i]);
      const size_t j = (i + 1) % thetas.size();
      const double tj = thetas[j] + (j == 0 ? 2.0 * M_PI : 0.0);
      if (dist(pts[i], pts[j]) > tol &&
          nt.size() + (thetas.size() - i) < static_cast<size_t>(max_points)) {
        const double tm = 0.5 * (thetas[i] + tj);
        nt.push_back(tm);
        np.push_back(eval(tm));
        split = true;
      }
    }
    thetas = std::move(nt);
    pts = std::move(np);
    if (!split) break;
    scale = polygon_diameter(pts);
  }
  return pts;
}

struct NestingReport {
  int total = 0;
  int inside = 0;
  double fraction = 1.0;
};

/// Checks that the evolved boundary at the earlier time lies inside the
/// region at the later time.
inline NestingReport nesting_check(const RiemannMap& M, double t_inner,
                                   double t_outer, int samples = 2048) {
  if (!(t_inner < t_outer)) throw std::invalid_argument("need t_inner < t_outer");
  const std::vector<Point2> outer = evolve_region(M, t_outer);
  const double tol = 1e-9 * polygon_diameter(outer);
  NestingReport rep;
  rep.total = samples;
  const double radius = 0.5 * t_inner;
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * M_PI * (i + 0.61) / samples;
    const Point2 p = M.map_point(std::polar(radius, th));
    if (point_in_polygon(outer, p, tol)) ++rep.inside;
  }
  rep.fraction = samples ? static_cast<double>(rep.inside) / samples : 1.0;
  return rep;
}

struct LimitReport {
  std::vector<double> times;
  std::vector<double> hausdorff;
  bool monotone_decreasing = true;
};

/// Hausdorff distance from the evolved boundaries to the target boundary,
/// for a list of times approaching 2.
inline LimitReport boundary_limit(const RiemannMap& M,
                                  const std::vector<Point2>& target,
                                  const std::vector<double>& ts) {
  LimitReport rep;
  rep.times = ts;
  for (double t : ts)
    rep.hausdorff.push_back(hausdorff_distance(evolve_region(M, t), target));
  for (size_t i = 0; i + 1 < rep.hausdorff.size(); ++i)
    if (rep.times[i] < rep.times[i + 1] &&
        rep.hausdorff[i + 1] > rep.hausdorff[i])
      rep.monotone_decreasing = false;
  return rep;
}

/// The evolution self-map of the region: conjugate radial shrink by t/2,
/// built from the exact forward and inverse pipelines.
inline cplx self_map(const RiemannMap& M, double t, cplx z) {
  if (!(t > 0.0 && t <= 2.0)) throw std::invalid_argument("self map time");
  return M.inverse(0.5 * t * M.forward(z));
}

/// Circle sample helper for identity targets and tests.
inline std::vector<Point2> circle_points(int n, Point2 center = {0.0, 0.0},
                                         double radius = 1.0) {
  if (n < 3) throw std::invalid_argument("circle sample count");
  std::vector<Point2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    pts[i] = {center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
  }
  return pts;
}

}  // namespace fgt
