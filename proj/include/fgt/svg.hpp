#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fgt/geometry.hpp"

namespace fgt {

/// Minimal deterministic SVG writer. Geometry is collected in world
/// coordinates (y up) and flipped once at serialization time.
class SvgWriter {
 public:
  void add_polyline(const std::vector<Point2>& pts, bool closed,
                    const std::string& stroke = "#1f4e79",
                    double width = 0.0025, const std::string& fill = "none") {
    if (pts.size() < 2) return;
    std::ostringstream d;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) d << ' ';
      d << fmt(pts[i].x) << ',' << fmt(-pts[i].y);
    }
    // a closed loop repeats its first vertex so the stroke closes too
    if (closed) d << ' ' << fmt(pts[0].x) << ',' << fmt(-pts[0].y);
    paths_.push_back("<polyline points=\"" + d.str() + "\" fill=\"" + fill +
                     "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                     fmt(width) + "\"/>");
    for (const auto& p : pts) expand(p);
  }

  void add_segment(const Point2& a, const Point2& b,
                   const std::string& stroke = "#1f4e79",
                   double width = 0.0025) {
    add_polyline({a, b}, false, stroke, width);
  }

  void add_polygon(const std::vector<Point2>& pts,
                   const std::string& fill = "#d9e6f2",
                   const std::string& stroke = "#1f4e79",
                   double width = 0.0025) {
    add_polyline(pts, true, stroke, width, fill);
  }

  std::string str(double margin_frac = 0.05) const {
    const double w = bb_.width(), h = bb_.height();
    const double m = margin_frac * std::max({w, h, 1e-9});
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << fmt(bb_.xmin - m) << ' ' << fmt(-bb_.ymax - m) << ' '
        << fmt(w + 2 * m) << ' ' << fmt(h + 2 * m) << "\">\n";
    for (const auto& p : paths_) out << p << '\n';
    out << "</svg>\n";
    return out.str();
  }

 private:
  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
  }
  void expand(const Point2& p) {
    if (!has_bb_) {
      bb_ = BBox{p.x, p.y, p.x, p.y};
      has_bb_ = true;
    } else {
      bb_.expand(p);
    }
  }
  std::vector<std::string> paths_;
  BBox bb_;
  bool has_bb_ = false;
};

}  // namespace fgt
