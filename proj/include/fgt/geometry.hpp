#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fgt {

/// Vertex coincidence / collinearity tolerance on coordinates.
inline constexpr double kGeomTol = 1e-9;
/// Coefficients with |a| below this are treated as zero and dropped.
inline constexpr double kCoeffTol = 1e-12;
/// Optimality / feasibility tolerance of the LP solver.
inline constexpr double kLpTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double px, double py) : x(px), y(py) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

using Point2 = Vec2;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Point2& a, const Point2& b) { return norm(b - a); }
inline Point2 lerp(const Point2& a, const Point2& b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}
inline Point2 midpoint(const Point2& a, const Point2& b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

/// Twice the signed area of triangle (a,b,c); > 0 for counterclockwise order.
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return cross(b - a, c - a);
}

inline bool nearly_equal(const Point2& a, const Point2& b, double tol = kGeomTol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

/// Lexicographic order on coordinates (x first), used for canonical forms.
inline bool lex_less(const Point2& a, const Point2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

/// Distance from p to the closed segment [a,b].
inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

/// p lies on segment [a,b] within tol (including endpoints).
inline bool on_segment(const Point2& p, const Point2& a, const Point2& b,
                       double tol = kGeomTol) {
  return point_segment_distance(p, a, b) <= tol;
}

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  static BBox of_points(const std::vector<Point2>& pts) {
    BBox b{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
    for (const auto& p : pts) b.expand(p);
    return b;
  }
  void expand(const Point2& p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  void pad(double m) { xmin -= m; ymin -= m; xmax += m; ymax += m; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool overlaps(const BBox& o, double tol = 0.0) const {
    return xmin <= o.xmax + tol && o.xmin <= xmax + tol &&
           ymin <= o.ymax + tol && o.ymin <= ymax + tol;
  }
  bool contains(const Point2& p, double tol = 0.0) const {
    return p.x >= xmin - tol && p.x <= xmax + tol &&
           p.y >= ymin - tol && p.y <= ymax + tol;
  }
};

/// Proper-crossing test for open segments (a,b) and (c,d); returns the
/// intersection point when the segments cross transversally away from
/// shared endpoints.
inline std::optional<Point2> segment_crossing(const Point2& a, const Point2& b,
                                              const Point2& c, const Point2& d,
                                              double tol = kGeomTol) {
  const double d1 = orient2d(c, d, a);
  const double d2 = orient2d(c, d, b);
  const double d3 = orient2d(a, b, c);
  const double d4 = orient2d(a, b, d);
  const double s1 = norm(d - c), s2 = norm(b - a);
  const double t1 = tol * s1, t2 = tol * s2;
  if (((d1 > t1 && d2 < -t1) || (d1 < -t1 && d2 > t1)) &&
      ((d3 > t2 && d4 < -t2) || (d3 < -t2 && d4 > t2))) {
    const double t = d1 / (d1 - d2);
    return lerp(a, b, t);
  }
  return std::nullopt;
}

/// Merges points that coincide within tol; remap[i] is the index of the
/// representative of input point i inside the returned vector.
class PointDedup {
 public:
  explicit PointDedup(double tol = kGeomTol) : tol_(tol), inv_cell_(1.0 / tol) {}

  int add(const Point2& p) {
    const int64_t cx = static_cast<int64_t>(std::floor(p.x * inv_cell_));
    const int64_t cy = static_cast<int64_t>(std::floor(p.y * inv_cell_));
    for (int64_t dx = -1; dx <= 1; ++dx) {
      for (int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(cx + dx, cy + dy));
        if (it == grid_.end()) continue;
        for (int idx : it->second) {
          if (nearly_equal(pts_[idx], p, tol_)) return idx;
        }
      }
    }
    const int idx = static_cast<int>(pts_.size());
    pts_.push_back(p);
    grid_[key(cx, cy)].push_back(idx);
    return idx;
  }

  const std::vector<Point2>& points() const { return pts_; }

 private:
  static uint64_t key(int64_t cx, int64_t cy) {
    return static_cast<uint64_t>(cx) * 0x9E3779B97F4A7C15ull ^
           static_cast<uint64_t>(cy);
  }
  double tol_;
  double inv_cell_;
  std::vector<Point2> pts_;
  std::unordered_map<uint64_t, std::vector<int>> grid_;
};

}  // namespace fgt
