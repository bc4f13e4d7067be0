#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fgt/chain.hpp"
#include "fgt/geometry.hpp"

namespace fgt {

/// Shape parameters for the snowflake construction. vertex_height_ratio
/// scales the added triangles' heights: 1 gives equilateral bumps, smaller
/// values give flatter isosceles bumps. single_edge starts from one unit
/// segment instead of a closed triangle.
struct KochParams {
  double base_scale = 1.0;
  double vertex_height_ratio = 1.0;
  bool single_edge = false;
};

// --- growth schedule -----------------------------------------------------
// Time runs in (0,1), split into intervals (t_{i-1}, t_i] with t_i = 1-2^-i.
// During interval i the level-i triangles grow linearly from height 0 to
// full height.

inline double stage_time(int i) {
  if (i < 0) throw std::invalid_argument("stage index must be >= 0");
  return 1.0 - std::ldexp(1.0, -i);
}

/// The interval index I(t): the unique i with t in (t_{i-1}, t_i]. Computed
/// from the binary exponent of 1-t so interval endpoints land exactly.
inline int growth_index(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("growth time must lie in (0,1)");
  int e = 0;
  std::frexp(1.0 - t, &e);  // 1-t = m * 2^e, m in [0.5, 1)
  return 1 - e;
}

/// Time elapsed inside the current interval: tau = t - t_{I-1} in (0, 2^-I].
inline double local_time(double t) {
  const int i = growth_index(t);
  return t - 1.0 + std::ldexp(1.0, 1 - i);
}

inline double full_bump_height(const KochParams& p, int i) {
  return 0.5 * std::sqrt(3.0) * std::pow(3.0, -i) * p.base_scale *
         p.vertex_height_ratio;
}

/// Height of the level-i triangles at time t: zero before their interval,
/// growing linearly as (full height) * 2^i * tau inside it, full afterwards.
inline double triangle_height(const KochParams& p, int i, double t) {
  if (i < 1) throw std::invalid_argument("triangle level must be >= 1");
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("growth time must lie in (0,1)");
  const int it = growth_index(t);
  if (it < i) return 0.0;
  if (it > i) return full_bump_height(p, i);
  const double ht = std::ldexp(local_time(t), i);  // in (0, 1]
  return full_bump_height(p, i) * ht;
}

// --- curve construction --------------------------------------------------

struct KochCurve {
  std::vector<Point2> pts;
  bool closed = true;
  size_t edge_count() const {
    return closed ? pts.size() : (pts.empty() ? 0 : pts.size() - 1);
  }
  std::pair<Point2, Point2> edge(size_t i) const {
    return {pts[i], pts[(i + 1) % pts.size()]};
  }
};

struct StageRecord {
  int level = 0;
  long long triangles = 0;
  double side_length = 0.0;      // length of each new side
  double new_sides_total = 0.0;  // 2 sides per triangle
};

struct KochBuild {
  KochCurve curve;
  std::vector<std::array<Point2, 3>> bumps;  // CCW, all levels
  std::vector<StageRecord> records;
};

namespace detail {

/// One construction level: every edge a->b is replaced by a->c->e->d->b where
/// c,d cut the edge in thirds and the apex e sits on the growth side (outward
/// for the closed curve, upward for the single edge). The height scales with
/// the edge itself, frac * rho * sqrt(3)/6 * |b-a|, so the replacement is
/// self-similar for every rho; frac in (0,1] is the growth fraction.
inline void koch_expand(KochCurve& curve, double frac, double rho,
                        bool outward_right,
                        std::vector<std::array<Point2, 3>>* bumps) {
  std::vector<Point2> next;
  next.reserve(curve.pts.size() * 4 + 1);
  const size_t ne = curve.edge_count();
  for (size_t i = 0; i < ne; ++i) {
    const auto [a, b] = curve.edge(i);
    const Point2 c = lerp(a, b, 1.0 / 3.0);
    const Point2 d = lerp(a, b, 2.0 / 3.0);
    const Point2 m = midpoint(c, d);
    const double len = dist(a, b);
    const Vec2 u = (b - a) / len;
    const Vec2 n = outward_right ? Vec2{u.y, -u.x} : Vec2{-u.y, u.x};
    const Point2 e = m + n * (frac * rho * std::sqrt(3.0) / 6.0 * len);
    next.push_back(a);
    next.push_back(c);
    next.push_back(e);
    next.push_back(d);
    if (bumps) bumps->push_back({d, c, e});
  }
  if (!curve.closed) next.push_back(curve.pts.back());
  curve.pts = std::move(next);
}

inline KochCurve koch_seed(const KochParams& p) {
  KochCurve c;
  const double s = p.base_scale;
  if (p.single_edge) {
    c.closed = false;
    c.pts = {{0.0, 0.0}, {s, 0.0}};
  } else {
    c.closed = true;
    c.pts = {{0.0, 0.0}, {s, 0.0}, {0.5 * s, 0.5 * std::sqrt(3.0) * s}};
  }
  return c;
}

}  // namespace detail

/// Levels 1..finished at full height plus one active level at the given
/// absolute height (skipped when too small to form a valid triangle).
inline KochBuild koch_build(const KochParams& p, int finished,
                            double active_height) {
  if (finished < 0) throw std::invalid_argument("levels must be >= 0");
  KochBuild out;
  out.curve = detail::koch_seed(p);
  const bool outward = !p.single_edge;
  for (int j = 1; j <= finished; ++j) {
    const size_t before = out.curve.edge_count();
    detail::koch_expand(out.curve, 1.0, p.vertex_height_ratio, outward,
                        &out.bumps);
    StageRecord rec;
    rec.level = j;
    rec.triangles = static_cast<long long>(before);
    out.records.push_back(rec);
  }
  const double min_height = 1e-7 * std::pow(3.0, -(finished + 1)) * p.base_scale;
  if (active_height > min_height) {
    const size_t before = out.curve.edge_count();
    const double frac = active_height / full_bump_height(p, finished + 1);
    detail::koch_expand(out.curve, frac, p.vertex_height_ratio, outward,
                        &out.bumps);
    StageRecord rec;
    rec.level = finished + 1;
    rec.triangles = static_cast<long long>(before);
    out.records.push_back(rec);
  }
  // record side lengths from the constructed geometry
  size_t bump_at = 0;
  for (auto& rec : out.records) {
    const auto& tri = out.bumps[bump_at];
    rec.side_length = dist(tri[1], tri[2]);  // c -> e, a new side
    rec.new_sides_total = 2.0 * rec.side_length * rec.triangles;
    bump_at += rec.triangles;
  }
  return out;
}

inline Chain chain_from_curve(const KochCurve& c, double coeff = 1.0) {
  std::vector<std::pair<double, Simplex>> terms;
  terms.reserve(c.edge_count());
  for (size_t i = 0; i < c.edge_count(); ++i) {
    const auto [a, b] = c.edge(i);
    terms.push_back({coeff, Simplex::segment(a, b)});
  }
  return Chain::from_terms(1, std::move(terms));
}

/// Stage k of the snowflake boundary as a canonical 1-chain.
inline Chain koch_stage(const KochParams& p, int k) {
  return chain_from_curve(koch_build(p, k, -1.0).curve);
}

inline std::vector<StageRecord> koch_records(const KochParams& p, int k) {
  return koch_build(p, k, -1.0).records;
}

/// The region bounded by stage k (start triangle plus all bumps) as a
/// canonical 2-chain; its boundary is the stage-k curve.
inline Chain koch_filled(const KochParams& p, int k) {
  if (p.single_edge)
    throw std::invalid_argument("open curve bounds no region");
  const KochBuild b = koch_build(p, k, -1.0);
  std::vector<std::pair<double, Simplex>> terms;
  const double s = p.base_scale;
  terms.push_back({1.0, Simplex::triangle({0.0, 0.0}, {s, 0.0},
                                          {0.5 * s, 0.5 * std::sqrt(3.0) * s})});
  for (const auto& t : b.bumps)
    terms.push_back({1.0, Simplex::triangle(t[0], t[1], t[2])});
  return Chain::from_terms(2, std::move(terms));
}

// --- continuous growth ---------------------------------------------------

struct GrowingChainState {
  double t = 0.0;
  int finished_levels = 0;
  double active_height = 0.0;
  long long active_triangles = 0;
  Chain chain;
};

inline KochBuild koch_build_at_time(const KochParams& p, double t) {
  const int i = growth_index(t);
  return koch_build(p, i - 1, triangle_height(p, i, t));
}

/// B(t): all levels below I(t) fully grown plus the level-I(t) triangles at
/// their current height.
inline GrowingChainState chain_at_time(const KochParams& p, double t) {
  const int i = growth_index(t);
  const KochBuild b = koch_build_at_time(p, t);
  GrowingChainState st;
  st.t = t;
  st.finished_levels = i - 1;
  st.active_height = triangle_height(p, i, t);
  st.active_triangles =
      (!b.records.empty() && b.records.back().level == i)
          ? b.records.back().triangles
          : 0;
  st.chain = chain_from_curve(b.curve);
  return st;
}

/// Region swept by the growing boundary at time t, as a canonical 2-chain.
inline Chain filled_at_time(const KochParams& p, double t) {
  if (p.single_edge)
    throw std::invalid_argument("open curve bounds no region");
  const KochBuild b = koch_build_at_time(p, t);
  std::vector<std::pair<double, Simplex>> terms;
  const double s = p.base_scale;
  terms.push_back({1.0, Simplex::triangle({0.0, 0.0}, {s, 0.0},
                                          {0.5 * s, 0.5 * std::sqrt(3.0) * s})});
  for (const auto& tri : b.bumps)
    terms.push_back({1.0, Simplex::triangle(tri[0], tri[1], tri[2])});
  return Chain::from_terms(2, std::move(terms));
}

inline std::pair<double, double> perimeter_area_stage(const KochParams& p,
                                                      int k) {
  return {koch_stage(p, k).mass(), koch_filled(p, k).mass()};
}

inline std::pair<double, double> perimeter_area_time(const KochParams& p,
                                                     double t) {
  return {chain_at_time(p, t).chain.mass(), filled_at_time(p, t).mass()};
}

// --- Cantor-set growth ----------------------------------------------------

struct CantorSpec {
  double alpha = 1.0 / 3.0;  // removed middle fraction
  int level = 0;
};

struct CantorGrowth {
  Chain base;       // the unit segment, a 1-chain
  Chain swept;      // Cantor approximation segments swept up to height t
  double swept_mass = 0.0;
  double total_length = 0.0;  // of the level-L approximation
};

/// The set [0,1] u (C_L x [0,t]) where C_L is the level-L middle-alpha Cantor
/// approximation: the base as a 1-chain and the swept part as a 2-chain of
/// rectangles (two triangles each).
inline CantorGrowth cantor_growth(double t, const CantorSpec& spec) {
  if (t < 0.0) throw std::invalid_argument("sweep height must be >= 0");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw std::invalid_argument("cantor fraction must lie in (0,1)");
  if (spec.level < 0) throw std::invalid_argument("cantor level must be >= 0");
  std::vector<std::pair<double, double>> segs = {{0.0, 1.0}};
  for (int l = 0; l < spec.level; ++l) {
    std::vector<std::pair<double, double>> next;
    next.reserve(segs.size() * 2);
    const double keep = 0.5 * (1.0 - spec.alpha);
    for (const auto& [a, b] : segs) {
      const double w = b - a;
      next.push_back({a, a + keep * w});
      next.push_back({b - keep * w, b});
    }
    segs = std::move(next);
  }
  CantorGrowth out;
  out.base = Chain::single(1.0, Simplex::segment({0.0, 0.0}, {1.0, 0.0}));
  for (const auto& [a, b] : segs) out.total_length += b - a;
  std::vector<std::pair<double, Simplex>> terms;
  if (t > kGeomTol) {
    for (const auto& [a, b] : segs) {
      const Point2 p00 = {a, 0.0}, p10 = {b, 0.0};
      const Point2 p11 = {b, t}, p01 = {a, t};
      terms.push_back({1.0, Simplex::triangle(p00, p10, p11)});
      terms.push_back({1.0, Simplex::triangle(p00, p11, p01)});
    }
  }
  out.swept = Chain::from_terms(2, std::move(terms));
  out.swept_mass = out.swept.mass();
  return out;
}

}  // namespace fgt
