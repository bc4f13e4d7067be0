#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "fgt/geometry.hpp"

namespace fgt {

/// d strictly inside the circumcircle of CCW triangle (a,b,c) => positive.
/// If mag is given it receives the sum of absolute determinant terms, usable
/// as a scale for a relative zero test.
inline double incircle(const Point2& a, const Point2& b, const Point2& c,
                       const Point2& d, double* mag = nullptr) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad2 = adx * adx + ady * ady;
  const double bd2 = bdx * bdx + bdy * bdy;
  const double cd2 = cdx * cdx + cdy * cdy;
  const double t1 = ad2 * (bdx * cdy - bdy * cdx);
  const double t2 = bd2 * (adx * cdy - ady * cdx);
  const double t3 = cd2 * (adx * bdy - ady * bdx);
  if (mag) *mag = std::abs(t1) + std::abs(t2) + std::abs(t3);
  return t1 - t2 + t3;
}

struct TriMesh {
  std::vector<Point2> pts;
  std::vector<std::array<int, 3>> tris;  // CCW vertex triples
};

/// Incremental Delaunay triangulation with forced (constrained) edges.
/// All points are inserted before any edge is enforced. A forced edge that
/// passes through other vertices is split at them and enforced piecewise.
class Triangulator {
 public:
  explicit Triangulator(const BBox& box) : dedup_(kGeomTol) {
    const double w = std::max({box.width(), box.height(), 1.0});
    const double cx = 0.5 * (box.xmin + box.xmax);
    const double cy = 0.5 * (box.ymin + box.ymax);
    const double s = 64.0 * w;
    add_scaffold_vertex({cx - 20.0 * s, cy - 10.0 * s});
    add_scaffold_vertex({cx + 20.0 * s, cy - 10.0 * s});
    add_scaffold_vertex({cx, cy + 20.0 * s});
    Tri t;
    t.v = {0, 1, 2};
    t.n = {-1, -1, -1};
    t.alive = true;
    tris_.push_back(t);
    v2t_ = {0, 0, 0};
    last_ = 0;
  }

  /// Inserts p (deduplicated within kGeomTol) and returns its vertex id.
  int add_point(const Point2& p) {
    const int id = dedup_.add(p);
    if (id < static_cast<int>(pts_.size())) return id;
    pts_.push_back(p);
    v2t_.push_back(-1);
    insert_vertex(id);
    return id;
  }

  /// Forces segment (a,b) to be an edge of the triangulation. A vertex on
  /// the open segment splits the constraint: no conforming mesh can carry an
  /// edge across it, so both halves are enforced instead.
  void enforce_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("enforce_edge: identical endpoints");
    const Point2 A = pts_[a], B = pts_[b];
    int split = -1;
    double best = 0.0;
    for (int v = 0; v < static_cast<int>(pts_.size()); ++v) {
      if (v == a || v == b) continue;
      if (!on_segment(pts_[v], A, B)) continue;
      const double d = dist(A, pts_[v]);
      if (d <= kGeomTol || dist(B, pts_[v]) <= kGeomTol) continue;
      if (split < 0 || d < best) {
        split = v;
        best = d;
      }
    }
    if (split >= 0) {
      enforce_edge(a, split);
      enforce_edge(split, b);
      return;
    }
    int outer = 0;
    while (!edge_exists(a, b)) {
      if (++outer > 10000)
        throw std::runtime_error("enforce_edge: no convergence");
      auto pipe = collect_crossings(a, b);
      bool progress = false;
      size_t stuck = 0;
      while (!pipe.empty()) {
        auto [x, y] = pipe.front();
        pipe.pop_front();
        auto loc = find_tri_edge(x, y);
        if (!loc) continue;  // flipped away earlier in this pass
        if (!segment_crossing(pts_[a], pts_[b], pts_[x], pts_[y])) continue;
        if (try_flip_crossing(loc->first, loc->second)) {
          progress = true;
          stuck = 0;
        } else {
          pipe.push_back({x, y});
          if (++stuck > pipe.size() + 1) break;  // cycled; recollect pipe
        }
      }
      if (!progress)
        throw std::runtime_error("enforce_edge: stuck crossing pipe");
    }
    constrained_.insert(ekey(a, b));
  }

  bool edge_exists(int a, int b) const {
    bool found = false;
    for_star(a, [&](int t, int k) {
      const Tri& tr = tris_[t];
      if (tr.v[(k + 1) % 3] == b || tr.v[(k + 2) % 3] == b) found = true;
    });
    return found;
  }

  /// Triangles not touching the enclosing scaffold, with compact vertex ids
  /// (scaffold vertices occupy ids 0..2; output id = input id - 3).
  TriMesh finish() const {
    TriMesh m;
    m.pts.assign(pts_.begin() + 3, pts_.end());
    for (const Tri& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;
      m.tris.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3});
    }
    return m;
  }

  const std::vector<Point2>& vertices() const { return pts_; }

 private:
  struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> n{};
    bool alive = false;
  };

  static uint64_t ekey(int a, int b) {
    const uint64_t lo = static_cast<uint64_t>(std::min(a, b));
    const uint64_t hi = static_cast<uint64_t>(std::max(a, b));
    return (hi << 32) | lo;
  }

  bool is_constrained(int a, int b) const {
    return constrained_.count(ekey(a, b)) > 0;
  }

  void add_scaffold_vertex(const Point2& p) {
    const int id = dedup_.add(p);
    if (id != static_cast<int>(pts_.size()))
      throw std::logic_error("duplicate scaffold vertex");
    pts_.push_back(p);
  }

  // --- adjacency helpers ----------------------------------------------------

  int nbr_index(int u, int t) const {
    for (int j = 0; j < 3; ++j)
      if (tris_[u].n[j] == t) return j;
    throw std::logic_error("adjacency broken");
  }

  void relink(int ext, int old_t, int new_t) {
    if (ext < 0) return;
    tris_[ext].n[nbr_index(ext, old_t)] = new_t;
  }

  void register_tri(int t) {
    for (int k = 0; k < 3; ++k) v2t_[tris_[t].v[k]] = t;
  }

  bool tri_has_vertex(int t, int v) const {
    return tris_[t].v[0] == v || tris_[t].v[1] == v || tris_[t].v[2] == v;
  }

  /// Visits (triangle, index-of-v-in-triangle) for every alive triangle
  /// around interior vertex v.
  template <typename F>
  void for_star(int v, F&& f) const {
    int t0 = v2t_[v];
    if (t0 < 0 || !tris_[t0].alive || !tri_has_vertex(t0, v)) {
      t0 = -1;  // cache went stale through slot reuse; rescan
      for (int t = 0; t < static_cast<int>(tris_.size()) && t0 < 0; ++t)
        if (tris_[t].alive && tri_has_vertex(t, v)) t0 = t;
      if (t0 < 0) throw std::logic_error("vertex has no triangle");
      const_cast<Triangulator*>(this)->v2t_[v] = t0;
    }
    int t = t0;
    int guard = 0;
    do {
      if (++guard > 1000000) throw std::runtime_error("star walk stuck");
      int k = -1;
      for (int j = 0; j < 3; ++j)
        if (tris_[t].v[j] == v) k = j;
      if (k < 0) throw std::logic_error("star walk lost vertex");
      f(t, k);
      t = tris_[t].n[k];  // neighbor across edge (v, next) also contains v
      if (t < 0) break;   // only possible at scaffold corners
    } while (t != t0);
  }

  // --- point location ---------------------------------------------------------

  struct Location {
    int tri;
    bool on_edge;
    int edge;
  };

  Location locate(const Point2& p) const {
    int t = last_;
    if (t < 0 || !tris_[t].alive) t = first_alive();
    const int cap = 4 * static_cast<int>(tris_.size()) + 16;
    for (int steps = 0; steps < cap; ++steps) {
      const Tri& tr = tris_[t];
      int worst = -1;
      double worst_d = 0.0;
      int near_edge = -1;
      bool inside = true;
      for (int i = 0; i < 3; ++i) {
        const Point2& a = pts_[tr.v[i]];
        const Point2& b = pts_[tr.v[(i + 1) % 3]];
        const double d = orient2d(a, b, p);
        const double tol = kGeomTol * (norm(b - a) + 1.0);
        if (d < -tol) {
          inside = false;
          if (tr.n[i] >= 0 && (worst < 0 || d < worst_d)) {
            worst = i;
            worst_d = d;
          }
        } else if (std::abs(d) <= tol && on_segment(p, a, b, 4.0 * kGeomTol)) {
          near_edge = i;
        }
      }
      if (inside) {
        const_cast<Triangulator*>(this)->last_ = t;
        return {t, near_edge >= 0, near_edge};
      }
      if (worst < 0) break;
      t = tr.n[worst];
    }
    return brute_locate(p);
  }

  Location brute_locate(const Point2& p) const {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      const Tri& tr = tris_[t];
      bool inside = true;
      int near_edge = -1;
      for (int i = 0; i < 3; ++i) {
        const Point2& a = pts_[tr.v[i]];
        const Point2& b = pts_[tr.v[(i + 1) % 3]];
        const double d = orient2d(a, b, p);
        const double tol = kGeomTol * (norm(b - a) + 1.0);
        if (d < -tol) {
          inside = false;
          break;
        }
        if (std::abs(d) <= tol && on_segment(p, a, b, 4.0 * kGeomTol)) near_edge = i;
      }
      if (inside) return {t, near_edge >= 0, near_edge};
    }
    throw std::runtime_error("locate failed: point outside scaffold");
  }

  int first_alive() const {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
      if (tris_[t].alive) return t;
    throw std::logic_error("no alive triangles");
  }

  // --- insertion --------------------------------------------------------------

  void insert_vertex(int vid) {
    const auto loc = locate(pts_[vid]);
    if (loc.on_edge)
      split_edge(loc.tri, loc.edge, vid);
    else
      split_interior(loc.tri, vid);
  }

  int new_tri(std::array<int, 3> v, std::array<int, 3> n) {
    Tri t;
    t.v = v;
    t.n = n;
    t.alive = true;
    tris_.push_back(t);
    return static_cast<int>(tris_.size()) - 1;
  }

  void split_interior(int t, int vid) {
    const Tri old = tris_[t];
    const int a = old.v[0], b = old.v[1], c = old.v[2];
    const int Nab = old.n[0], Nbc = old.n[1], Nca = old.n[2];
    const int t1 = new_tri({b, c, vid}, {Nbc, -1, t});
    const int t2 = new_tri({c, a, vid}, {Nca, t, t1});
    tris_[t].v = {a, b, vid};
    tris_[t].n = {Nab, t1, t2};
    tris_[t1].n[1] = t2;
    relink(Nbc, t, t1);
    relink(Nca, t, t2);
    register_tri(t);
    register_tri(t1);
    register_tri(t2);
    last_ = t;
    legalize(t, 0, vid);
    legalize(t1, 0, vid);
    legalize(t2, 0, vid);
  }

  void split_edge(int t, int i, int vid) {
    const Tri oldt = tris_[t];
    const int a = oldt.v[i], b = oldt.v[(i + 1) % 3], c = oldt.v[(i + 2) % 3];
    const int u = oldt.n[i];
    if (u < 0) throw std::logic_error("edge split on scaffold boundary");
    const int j = nbr_index(u, t);
    const Tri oldu = tris_[u];
    if (oldu.v[j] != b || oldu.v[(j + 1) % 3] != a)
      throw std::logic_error("edge split: twisted adjacency");
    const int d = oldu.v[(j + 2) % 3];
    if (is_constrained(a, b)) {
      constrained_.erase(ekey(a, b));
      constrained_.insert(ekey(a, vid));
      constrained_.insert(ekey(vid, b));
    }
    const int Nbc = oldt.n[(i + 1) % 3], Nca = oldt.n[(i + 2) % 3];
    const int Nad = oldu.n[(j + 1) % 3], Ndb = oldu.n[(j + 2) % 3];
    const int t1 = new_tri({vid, b, c}, {u, Nbc, t});
    const int t3 = new_tri({vid, a, d}, {t, Nad, u});
    tris_[t].v = {a, vid, c};
    tris_[t].n = {t3, t1, Nca};
    tris_[u].v = {b, vid, d};
    tris_[u].n = {t1, t3, Ndb};
    relink(Nbc, t, t1);
    relink(Nad, u, t3);
    register_tri(t);
    register_tri(t1);
    register_tri(u);
    register_tri(t3);
    last_ = t;
    legalize(t, 2, vid);
    legalize(t1, 1, vid);
    legalize(u, 2, vid);
    legalize(t3, 1, vid);
  }

  /// Edge i of t lies opposite the freshly inserted vertex p; flips restore
  /// the local Delaunay property.
  void legalize(int t, int i, int p) {
    if (tris_[t].v[(i + 2) % 3] != p) throw std::logic_error("legalize: bad apex");
    const int u = tris_[t].n[i];
    if (u < 0) return;
    const int x = tris_[t].v[i], y = tris_[t].v[(i + 1) % 3];
    if (is_constrained(x, y)) return;
    const int j = nbr_index(u, t);
    const int w = tris_[u].v[(j + 2) % 3];
    double mag = 0.0;
    const double det = incircle(pts_[x], pts_[y], pts_[p], pts_[w], &mag);
    if (det <= 1e-12 * mag) return;
    flip(t, i);
    // slot t now holds (x, w, p) and slot u holds (w, y, p)
    legalize(t, 0, p);
    legalize(u, 0, p);
  }

  /// Replaces diagonal (x,y) of quad x-w-y-p with (w,p).
  /// Slot t: (x,y,p) -> (x,w,p); slot u: (y,x,w) -> (w,y,p).
  void flip(int t, int i) {
    const Tri oldt = tris_[t];
    const int x = oldt.v[i], y = oldt.v[(i + 1) % 3], p = oldt.v[(i + 2) % 3];
    const int u = oldt.n[i];
    const int j = nbr_index(u, t);
    const Tri oldu = tris_[u];
    if (oldu.v[j] != y || oldu.v[(j + 1) % 3] != x)
      throw std::logic_error("flip: twisted adjacency");
    const int w = oldu.v[(j + 2) % 3];
    const int Nyp = oldt.n[(i + 1) % 3], Npx = oldt.n[(i + 2) % 3];
    const int Nxw = oldu.n[(j + 1) % 3], Nwy = oldu.n[(j + 2) % 3];
    tris_[t].v = {x, w, p};
    tris_[t].n = {Nxw, u, Npx};
    tris_[u].v = {w, y, p};
    tris_[u].n = {Nwy, Nyp, t};
    relink(Nxw, u, t);
    relink(Nyp, t, u);
    register_tri(t);
    register_tri(u);
  }

  // --- forced edges -------------------------------------------------------

  std::optional<std::pair<int, int>> find_tri_edge(int x, int y) const {
    std::optional<std::pair<int, int>> hit;
    for_star(x, [&](int t, int k) {
      if (hit) return;
      if (tris_[t].v[(k + 1) % 3] == y) hit = {{t, k}};
    });
    return hit;
  }

  std::deque<std::pair<int, int>> collect_crossings(int a, int b) const {
    std::deque<std::pair<int, int>> pipe;
    // first crossing edge, opposite a in some triangle of a's star
    int t = -1, i = -1;
    for_star(a, [&](int tt, int k) {
      if (t >= 0) return;
      const Tri& tr = tris_[tt];
      const int x = tr.v[(k + 1) % 3], y = tr.v[(k + 2) % 3];
      if (segment_crossing(pts_[a], pts_[b], pts_[x], pts_[y])) {
        t = tt;
        i = (k + 1) % 3;
      }
    });
    if (t < 0) throw std::runtime_error("enforce_edge: no starting crossing");
    pipe.push_back({tris_[t].v[i], tris_[t].v[(i + 1) % 3]});
    int guard = 0;
    while (true) {
      if (++guard > 100000) throw std::runtime_error("crossing walk stuck");
      const int u = tris_[t].n[i];
      if (u < 0) throw std::runtime_error("crossing pipe left scaffold");
      if (tri_has_vertex(u, b)) break;
      const int j = nbr_index(u, t);
      int next = -1;
      for (int d = 1; d <= 2; ++d) {
        const int jj = (j + d) % 3;
        const int x = tris_[u].v[jj], y = tris_[u].v[(jj + 1) % 3];
        if (segment_crossing(pts_[a], pts_[b], pts_[x], pts_[y])) {
          next = jj;
          break;
        }
      }
      if (next < 0)
        throw std::runtime_error("crossing pipe ended before target");
      pipe.push_back({tris_[u].v[next], tris_[u].v[(next + 1) % 3]});
      t = u;
      i = next;
    }
    return pipe;
  }

  /// Flips the crossing edge (edge i of t) when the surrounding quad is
  /// strictly convex; returns false otherwise.
  bool try_flip_crossing(int t, int i) {
    const Tri& tr = tris_[t];
    const int x = tr.v[i], y = tr.v[(i + 1) % 3], p = tr.v[(i + 2) % 3];
    if (is_constrained(x, y))
      throw std::runtime_error("enforce_edge: constraints cross");
    const int u = tr.n[i];
    const int j = nbr_index(u, t);
    const int w = tris_[u].v[(j + 2) % 3];
    const double tol = kGeomTol * (1.0 + dist(pts_[x], pts_[y]));
    if (orient2d(pts_[x], pts_[w], pts_[p]) <= tol) return false;
    if (orient2d(pts_[w], pts_[y], pts_[p]) <= tol) return false;
    flip(t, i);
    return true;
  }

  PointDedup dedup_;
  std::vector<Point2> pts_;
  std::vector<Tri> tris_;
  std::vector<int> v2t_;
  std::unordered_set<uint64_t> constrained_;
  int last_ = -1;
};

// --- planar subdivision from raw segments ------------------------------------

struct Pslg {
  std::vector<Point2> pts;
  std::vector<std::array<int, 2>> segs;
};

/// Splits the input segments at mutual crossings and at endpoints of other
/// segments lying on them, deduplicating vertices and sub-segments, so that
/// the result is a proper planar straight-line graph.
inline Pslg split_to_pslg(const std::vector<std::pair<Point2, Point2>>& input) {
  PointDedup dedup(kGeomTol);
  struct Seg {
    int a, b;
  };
  std::vector<Seg> segs;
  segs.reserve(input.size());
  for (const auto& [p, q] : input) {
    const int a = dedup.add(p);
    const int b = dedup.add(q);
    if (a != b) segs.push_back({a, b});
  }
  std::vector<BBox> boxes;
  boxes.reserve(segs.size());
  for (const Seg& s : segs) {
    BBox b{dedup.points()[s.a].x, dedup.points()[s.a].y,
           dedup.points()[s.a].x, dedup.points()[s.a].y};
    b.expand(dedup.points()[s.b]);
    boxes.push_back(b);
  }
  std::vector<std::vector<int>> cuts(segs.size());
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      if (!boxes[i].overlaps(boxes[j], 2.0 * kGeomTol)) continue;
      const auto& P = dedup.points();
      const Point2 a = P[segs[i].a], b = P[segs[i].b];
      const Point2 c = P[segs[j].a], d = P[segs[j].b];
      if (auto x = segment_crossing(a, b, c, d)) {
        const int id = dedup.add(*x);
        cuts[i].push_back(id);
        cuts[j].push_back(id);
        continue;
      }
      for (int e : {segs[j].a, segs[j].b}) {
        if (e != segs[i].a && e != segs[i].b &&
            on_segment(dedup.points()[e], a, b))
          cuts[i].push_back(e);
      }
      for (int e : {segs[i].a, segs[i].b}) {
        if (e != segs[j].a && e != segs[j].b &&
            on_segment(dedup.points()[e], c, d))
          cuts[j].push_back(e);
      }
    }
  }
  Pslg out;
  out.pts = dedup.points();
  std::unordered_set<uint64_t> seen;
  auto emit = [&](int a, int b) {
    if (a == b) return;
    const uint64_t lo = static_cast<uint64_t>(std::min(a, b));
    const uint64_t hi = static_cast<uint64_t>(std::max(a, b));
    if (seen.insert((hi << 32) | lo).second) out.segs.push_back({a, b});
  };
  for (size_t i = 0; i < segs.size(); ++i) {
    const Point2 a = out.pts[segs[i].a];
    auto& cs = cuts[i];
    cs.push_back(segs[i].b);
    std::sort(cs.begin(), cs.end(), [&](int u, int v) {
      return dist(a, out.pts[u]) < dist(a, out.pts[v]);
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    int prev = segs[i].a;
    for (int c : cs) {
      emit(prev, c);
      prev = c;
    }
  }
  return out;
}

/// Conforming triangulation of a PSLG: every listed segment becomes an edge.
/// Standalone extra points (e.g. bounding-box corners) are inserted as well.
inline TriMesh triangulate_pslg(const Pslg& pslg,
                                const std::vector<Point2>& extra = {}) {
  std::vector<Point2> all = pslg.pts;
  all.insert(all.end(), extra.begin(), extra.end());
  if (all.empty()) return {};
  const BBox box = BBox::of_points(all);
  Triangulator tr(box);
  std::vector<int> vid(pslg.pts.size());
  for (size_t i = 0; i < pslg.pts.size(); ++i) vid[i] = tr.add_point(pslg.pts[i]);
  for (const Point2& p : extra) tr.add_point(p);
  for (const auto& s : pslg.segs) tr.enforce_edge(vid[s[0]], vid[s[1]]);
  return tr.finish();
}

}  // namespace fgt
