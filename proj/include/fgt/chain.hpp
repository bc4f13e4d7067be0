#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fgt/geometry.hpp"
#include "fgt/triangulate.hpp"

namespace fgt {

/// Oriented r-simplex in the plane, r in {0,1,2}, given by an ordered vertex
/// list. 1- and 2-simplices must be non-degenerate: segments longer than
/// kGeomTol, triangles with minimum altitude above kGeomTol.
class Simplex {
 public:
  static Simplex point(const Point2& p) { return Simplex(0, {p, {}, {}}); }

  static Simplex segment(const Point2& p, const Point2& q) {
    if (dist(p, q) <= kGeomTol)
      throw std::invalid_argument("degenerate 1-simplex");
    return Simplex(1, {p, q, {}});
  }

  static Simplex triangle(const Point2& a, const Point2& b, const Point2& c) {
    if (min_altitude(a, b, c) <= kGeomTol)
      throw std::invalid_argument("degenerate 2-simplex");
    return Simplex(2, {a, b, c});
  }

  static double min_altitude(const Point2& a, const Point2& b,
                             const Point2& c) {
    const double twice_area = std::abs(orient2d(a, b, c));
    const double longest = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (longest <= kGeomTol) return 0.0;
    return twice_area / longest;
  }

  int dim() const { return dim_; }
  const Point2& operator[](int i) const { return v_[i]; }

  /// r-volume: 1 for points, length for segments, area for triangles.
  double measure() const {
    switch (dim_) {
      case 0: return 1.0;
      case 1: return dist(v_[0], v_[1]);
      default: return 0.5 * std::abs(orient2d(v_[0], v_[1], v_[2]));
    }
  }

  double signed_area() const {
    return dim_ == 2 ? 0.5 * orient2d(v_[0], v_[1], v_[2]) : 0.0;
  }

 private:
  Simplex(int dim, std::array<Point2, 3> v) : dim_(dim), v_(v) {}
  int dim_;
  std::array<Point2, 3> v_;
};

enum class SubdivisionRule { kEdgeBisection, kBarycentric };

namespace detail {

inline std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly,
                                          const Point2& e0, const Point2& e1) {
  std::vector<Point2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& cur = poly[i];
    const Point2& nxt = poly[(i + 1) % n];
    const double dc = orient2d(e0, e1, cur);
    const double dn = orient2d(e0, e1, nxt);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0))
      out.push_back(lerp(cur, nxt, dc / (dc - dn)));
  }
  return out;
}

inline double polygon_area(const std::vector<Point2>& poly) {
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(s);
}

/// Area of the intersection of two triangles, both CCW.
inline double tri_overlap_area(const Point2& a0, const Point2& a1,
                               const Point2& a2, const Point2& b0,
                               const Point2& b1, const Point2& b2) {
  std::vector<Point2> poly = {b0, b1, b2};
  poly = clip_halfplane(poly, a0, a1);
  if (poly.size() < 3) return 0.0;
  poly = clip_halfplane(poly, a1, a2);
  if (poly.size() < 3) return 0.0;
  poly = clip_halfplane(poly, a2, a0);
  if (poly.size() < 3) return 0.0;
  return polygon_area(poly);
}

inline bool tri_contains(const Point2& a, const Point2& b, const Point2& c,
                         const Point2& p, double tol) {
  return orient2d(a, b, p) >= -tol * (dist(a, b) + 1.0) &&
         orient2d(b, c, p) >= -tol * (dist(b, c) + 1.0) &&
         orient2d(c, a, p) >= -tol * (dist(c, a) + 1.0);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Polyhedral chain: a formal real-coefficient sum of oriented r-simplices,
/// kept in canonical form. Canonicalization merges duplicated simplices,
/// resolves collinear 1-simplex overlaps by splitting at every endpoint, and
/// rebuilds overlapping 2-simplices into pieces with pairwise-disjoint
/// interiors. Coefficients below kCoeffTol are dropped and terms are sorted
/// deterministically.
class Chain {
 public:
  Chain() : dim_(0) {}

  static Chain empty(int dim) {
    Chain c;
    c.dim_ = dim;
    return c;
  }

  static Chain from_terms(int dim,
                          std::vector<std::pair<double, Simplex>> terms) {
    if (dim < 0 || dim > 2) throw std::invalid_argument("chain dimension");
    for (const auto& term : terms)
      if (term.second.dim() != dim)
        throw std::invalid_argument("mixed simplex dimensions");
    Chain c;
    c.dim_ = dim;
    c.canonicalize(std::move(terms));
    return c;
  }

  static Chain single(double coeff, const Simplex& s) {
    return from_terms(s.dim(), {{coeff, s}});
  }

  int dim() const { return dim_; }
  bool is_empty() const { return coef_.empty(); }
  size_t size() const { return coef_.size(); }
  double coeff(size_t i) const { return coef_[i]; }
  const Simplex& simplex(size_t i) const { return simp_[i]; }

  double mass() const {
    double m = 0.0;
    for (size_t i = 0; i < coef_.size(); ++i)
      m += std::abs(coef_[i]) * simp_[i].measure();
    return m;
  }

  Chain boundary() const {
    if (dim_ < 1)
      throw std::invalid_argument("boundary needs chain dimension >= 1");
    std::vector<std::pair<double, Simplex>> terms;
    terms.reserve(coef_.size() * (dim_ + 1));
    for (size_t i = 0; i < coef_.size(); ++i) {
      const double a = coef_[i];
      const Simplex& s = simp_[i];
      if (dim_ == 1) {
        terms.push_back({-a, Simplex::point(s[0])});
        terms.push_back({+a, Simplex::point(s[1])});
      } else {
        terms.push_back({+a, Simplex::segment(s[1], s[2])});
        terms.push_back({-a, Simplex::segment(s[0], s[2])});
        terms.push_back({+a, Simplex::segment(s[0], s[1])});
      }
    }
    return from_terms(dim_ - 1, std::move(terms));
  }

  Chain scaled(double a) const {
    std::vector<std::pair<double, Simplex>> terms;
    terms.reserve(coef_.size());
    for (size_t i = 0; i < coef_.size(); ++i)
      terms.push_back({a * coef_[i], simp_[i]});
    return from_terms(dim_, std::move(terms));
  }

  std::vector<std::pair<double, Simplex>> terms() const {
    std::vector<std::pair<double, Simplex>> t;
    t.reserve(coef_.size());
    for (size_t i = 0; i < coef_.size(); ++i) t.push_back({coef_[i], simp_[i]});
    return t;
  }

  std::vector<std::pair<Point2, Point2>> segments() const {
    if (dim_ != 1) throw std::invalid_argument("segments(): not a 1-chain");
    std::vector<std::pair<Point2, Point2>> out;
    out.reserve(simp_.size());
    for (const auto& s : simp_) out.push_back({s[0], s[1]});
    return out;
  }

  BBox bbox() const {
    std::vector<Point2> pts;
    for (const auto& s : simp_)
      for (int k = 0; k <= dim_; ++k) pts.push_back(s[k]);
    return BBox::of_points(pts);
  }

 private:
  void canonicalize(std::vector<std::pair<double, Simplex>> terms) {
    coef_.clear();
    simp_.clear();
    if (dim_ == 0)
      canon_points(terms);
    else if (dim_ == 1)
      canon_segments(terms);
    else
      canon_triangles(terms);
    sort_terms();
  }

  void canon_points(const std::vector<std::pair<double, Simplex>>& terms) {
    PointDedup dedup(kGeomTol);
    std::vector<double> acc;
    for (const auto& [a, s] : terms) {
      if (std::abs(a) <= kCoeffTol) continue;
      const int id = dedup.add(s[0]);
      if (id == static_cast<int>(acc.size())) acc.push_back(0.0);
      acc[id] += a;
    }
    for (size_t i = 0; i < acc.size(); ++i) {
      if (std::abs(acc[i]) <= kCoeffTol) continue;
      coef_.push_back(acc[i]);
      simp_.push_back(Simplex::point(dedup.points()[i]));
    }
  }

  struct LineEntry {
    double theta;   // line direction folded into [0, pi)
    double offset;  // signed distance of the carrier line from the origin
    Point2 p0, p1;
    double coeff;
  };

  void canon_segments(const std::vector<std::pair<double, Simplex>>& terms) {
    std::vector<LineEntry> entries;
    entries.reserve(terms.size());
    double scale = 1.0;
    for (const auto& [a, s] : terms)
      scale = std::max({scale, std::abs(s[0].x), std::abs(s[0].y),
                        std::abs(s[1].x), std::abs(s[1].y)});
    const double ang_tol = 64.0 * kGeomTol;
    const double off_tol = 64.0 * kGeomTol * scale;
    for (const auto& [a, s] : terms) {
      if (std::abs(a) <= kCoeffTol) continue;
      const Vec2 u = (s[1] - s[0]) / dist(s[0], s[1]);
      double theta = std::atan2(u.y, u.x);
      if (theta < 0.0) theta += M_PI;
      if (theta >= M_PI - ang_tol) theta -= M_PI;  // fold the wraparound seam
      const Vec2 dir = {std::cos(theta), std::sin(theta)};
      LineEntry e;
      e.theta = theta;
      e.offset = cross(dir, s[0]);
      e.p0 = s[0];
      e.p1 = s[1];
      // orientation is resolved by the span swap in resolve_line_family
      e.coeff = a;
      entries.push_back(e);
    }
    // Group into direction runs first, then split each run by offset.
    // Interleaving matters: entries of one line carry ~1e-15 theta jitter, so
    // a nearly parallel line can sort between them; a joint lexicographic
    // scan would fracture the family.
    std::sort(entries.begin(), entries.end(),
              [](const LineEntry& a, const LineEntry& b) {
                return a.theta < b.theta;
              });
    size_t i = 0;
    while (i < entries.size()) {
      size_t j = i + 1;
      while (j < entries.size() &&
             entries[j].theta - entries[j - 1].theta <= ang_tol)
        ++j;
      std::sort(entries.begin() + i, entries.begin() + j,
                [](const LineEntry& a, const LineEntry& b) {
                  return a.offset < b.offset;
                });
      size_t k = i;
      while (k < j) {
        size_t l = k + 1;
        while (l < j && entries[l].offset - entries[l - 1].offset <= off_tol)
          ++l;
        resolve_line_family(entries.data() + k, l - k, entries[k].theta);
        k = l;
      }
      i = j;
    }
  }

  /// Splits one collinear family at every endpoint and sums coefficients on
  /// the atomic pieces. Pieces are never re-merged, so breakpoints introduced
  /// by subdivision survive; equality testing goes through the difference.
  void resolve_line_family(const LineEntry* fam, size_t n, double theta) {
    const Vec2 dir = {std::cos(theta), std::sin(theta)};
    struct Stop {
      double s;
      Point2 p;
    };
    struct Span {
      double s0, s1, coeff;
    };
    std::vector<Stop> stops;
    stops.reserve(2 * n);
    std::vector<Span> spans;
    spans.reserve(n);
    for (size_t k = 0; k < n; ++k) {
      double sa = dot(dir, fam[k].p0);
      double sb = dot(dir, fam[k].p1);
      Point2 pa = fam[k].p0, pb = fam[k].p1;
      double c = fam[k].coeff;
      if (sa > sb) {
        std::swap(sa, sb);
        std::swap(pa, pb);
        c = -c;
      }
      stops.push_back({sa, pa});
      stops.push_back({sb, pb});
      spans.push_back({sa, sb, c});
    }
    std::sort(stops.begin(), stops.end(), [](const Stop& a, const Stop& b) {
      return std::tie(a.s, a.p.x, a.p.y) < std::tie(b.s, b.p.x, b.p.y);
    });
    std::vector<Stop> brk;
    for (const auto& st : stops)
      if (brk.empty() || st.s - brk.back().s > 4.0 * kGeomTol)
        brk.push_back(st);
    auto nearest = [&](double s) {
      size_t lo = 0, hi = brk.size();
      while (lo + 1 < hi) {
        const size_t mid = (lo + hi) / 2;
        if (brk[mid].s <= s)
          lo = mid;
        else
          hi = mid;
      }
      if (lo + 1 < brk.size() &&
          std::abs(brk[lo + 1].s - s) < std::abs(brk[lo].s - s))
        return lo + 1;
      return lo;
    };
    std::vector<double> delta(brk.size() + 1, 0.0);
    for (const auto& sp : spans) {
      delta[nearest(sp.s0)] += sp.coeff;
      delta[nearest(sp.s1)] -= sp.coeff;
    }
    double cov = 0.0;
    for (size_t k = 0; k + 1 < brk.size(); ++k) {
      cov += delta[k];
      if (std::abs(cov) <= kCoeffTol) continue;
      if (dist(brk[k].p, brk[k + 1].p) <= kGeomTol) continue;
      coef_.push_back(cov);
      simp_.push_back(Simplex::segment(brk[k].p, brk[k + 1].p));
    }
  }

  struct FlatTri {
    Point2 v[3];  // CCW
    double coeff;
    BBox box;
  };

  void canon_triangles(const std::vector<std::pair<double, Simplex>>& terms) {
    // normalize orientation and merge identical triangles (within kGeomTol)
    PointDedup dedup(kGeomTol);
    std::map<std::array<int, 3>, size_t> seen;
    std::vector<FlatTri> tris;
    for (const auto& [a, s] : terms) {
      if (std::abs(a) <= kCoeffTol) continue;
      Point2 v0 = s[0], v1 = s[1], v2 = s[2];
      double c = a;
      if (orient2d(v0, v1, v2) < 0.0) {
        std::swap(v1, v2);
        c = -c;
      }
      std::array<int, 3> ids = {dedup.add(v0), dedup.add(v1), dedup.add(v2)};
      int rot = 0;
      if (ids[1] < ids[0] && ids[1] <= ids[2]) rot = 1;
      if (ids[2] < ids[0] && ids[2] < ids[1]) rot = 2;
      const std::array<int, 3> key = {ids[rot], ids[(rot + 1) % 3],
                                      ids[(rot + 2) % 3]};
      auto it = seen.find(key);
      if (it != seen.end()) {
        tris[it->second].coeff += c;
      } else {
        seen[key] = tris.size();
        tris.push_back({{v0, v1, v2}, c, BBox::of_points({v0, v1, v2})});
      }
    }
    std::vector<size_t> live;
    for (size_t k = 0; k < tris.size(); ++k)
      if (std::abs(tris[k].coeff) > kCoeffTol) live.push_back(k);

    // broad phase: sweep on xmin, candidates share an x- and y-interval
    std::sort(live.begin(), live.end(), [&](size_t a, size_t b) {
      return tris[a].box.xmin < tris[b].box.xmin;
    });
    detail::UnionFind uf(static_cast<int>(live.size()));
    std::vector<size_t> active;  // indices into live
    for (size_t li = 0; li < live.size(); ++li) {
      const FlatTri& t = tris[live[li]];
      size_t w = 0;
      for (size_t ai = 0; ai < active.size(); ++ai) {
        const FlatTri& o = tris[live[active[ai]]];
        if (o.box.xmax + kGeomTol < t.box.xmin) continue;  // expired
        active[w++] = active[ai];
        if (o.box.ymax + kGeomTol < t.box.ymin ||
            t.box.ymax + kGeomTol < o.box.ymin)
          continue;
        const double longest =
            std::max({dist(t.v[0], t.v[1]), dist(t.v[1], t.v[2]),
                      dist(t.v[2], t.v[0]), dist(o.v[0], o.v[1]),
                      dist(o.v[1], o.v[2]), dist(o.v[2], o.v[0])});
        const double area = detail::tri_overlap_area(
            t.v[0], t.v[1], t.v[2], o.v[0], o.v[1], o.v[2]);
        if (area > 4.0 * kGeomTol * longest)
          uf.unite(static_cast<int>(li), static_cast<int>(active[ai]));
      }
      active.resize(w);
      active.push_back(li);
    }

    std::map<int, std::vector<size_t>> clusters;
    for (size_t li = 0; li < live.size(); ++li)
      clusters[uf.find(static_cast<int>(li))].push_back(live[li]);

    for (const auto& [root, members] : clusters) {
      (void)root;
      if (members.size() == 1) {
        const FlatTri& t = tris[members[0]];
        coef_.push_back(t.coeff);
        simp_.push_back(Simplex::triangle(t.v[0], t.v[1], t.v[2]));
        continue;
      }
      rebuild_cluster(tris, members);
    }
  }

  /// Re-triangulates the arrangement of an overlapping triangle cluster and
  /// assigns each piece the sum of the coefficients of the inputs covering it.
  void rebuild_cluster(const std::vector<FlatTri>& tris,
                       const std::vector<size_t>& members) {
    std::vector<std::pair<Point2, Point2>> segs;
    segs.reserve(members.size() * 3);
    for (size_t m : members)
      for (int e = 0; e < 3; ++e)
        segs.push_back({tris[m].v[e], tris[m].v[(e + 1) % 3]});
    const Pslg pslg = split_to_pslg(segs);
    const TriMesh mesh = triangulate_pslg(pslg);
    for (const auto& tr : mesh.tris) {
      const Point2& a = mesh.pts[tr[0]];
      const Point2& b = mesh.pts[tr[1]];
      const Point2& c = mesh.pts[tr[2]];
      if (Simplex::min_altitude(a, b, c) <= kGeomTol) continue;
      const Point2 g = {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
      double cov = 0.0;
      for (size_t m : members)
        if (detail::tri_contains(tris[m].v[0], tris[m].v[1], tris[m].v[2], g,
                                 kGeomTol))
          cov += tris[m].coeff;
      if (std::abs(cov) <= kCoeffTol) continue;
      coef_.push_back(cov);
      simp_.push_back(Simplex::triangle(a, b, c));
    }
  }

  void sort_terms() {
    std::vector<size_t> idx(coef_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto key = [&](size_t i) {
      const Simplex& s = simp_[i];
      std::array<double, 6> k{};
      for (int j = 0; j <= dim_; ++j) {
        k[2 * j] = s[j].x;
        k[2 * j + 1] = s[j].y;
      }
      return k;
    };
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return key(a) < key(b); });
    std::vector<double> nc(coef_.size());
    std::vector<Simplex> ns;
    ns.reserve(simp_.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      nc[i] = coef_[idx[i]];
      ns.push_back(simp_[idx[i]]);
    }
    coef_ = std::move(nc);
    simp_ = std::move(ns);
  }

  int dim_;
  std::vector<double> coef_;
  std::vector<Simplex> simp_;
};

// --- free operations ---------------------------------------------------------

inline double mass(const Chain& c) { return c.mass(); }
inline Chain boundary(const Chain& c) { return c.boundary(); }

inline Chain combine(double a, const Chain& A, double b, const Chain& B) {
  if (!A.is_empty() && !B.is_empty() && A.dim() != B.dim())
    throw std::invalid_argument("combine: dimension mismatch");
  const int dim = A.is_empty() ? B.dim() : A.dim();
  std::vector<std::pair<double, Simplex>> terms;
  terms.reserve(A.size() + B.size());
  for (size_t i = 0; i < A.size(); ++i)
    terms.push_back({a * A.coeff(i), A.simplex(i)});
  for (size_t i = 0; i < B.size(); ++i)
    terms.push_back({b * B.coeff(i), B.simplex(i)});
  return Chain::from_terms(dim, std::move(terms));
}

inline Chain subdivide(const Chain& c, SubdivisionRule rule) {
  std::vector<std::pair<double, Simplex>> terms;
  for (size_t i = 0; i < c.size(); ++i) {
    const double a = c.coeff(i);
    const Simplex& s = c.simplex(i);
    if (c.dim() == 0) {
      terms.push_back({a, s});
    } else if (c.dim() == 1) {
      const Point2 m = midpoint(s[0], s[1]);
      terms.push_back({a, Simplex::segment(s[0], m)});
      terms.push_back({a, Simplex::segment(m, s[1])});
    } else if (rule == SubdivisionRule::kEdgeBisection) {
      const Point2 m01 = midpoint(s[0], s[1]);
      const Point2 m12 = midpoint(s[1], s[2]);
      const Point2 m20 = midpoint(s[2], s[0]);
      terms.push_back({a, Simplex::triangle(s[0], m01, m20)});
      terms.push_back({a, Simplex::triangle(m01, s[1], m12)});
      terms.push_back({a, Simplex::triangle(m20, m12, s[2])});
      terms.push_back({a, Simplex::triangle(m01, m12, m20)});
    } else {
      const Point2 g = {(s[0].x + s[1].x + s[2].x) / 3.0,
                        (s[0].y + s[1].y + s[2].y) / 3.0};
      const Point2 m01 = midpoint(s[0], s[1]);
      const Point2 m12 = midpoint(s[1], s[2]);
      const Point2 m20 = midpoint(s[2], s[0]);
      terms.push_back({a, Simplex::triangle(s[0], m01, g)});
      terms.push_back({a, Simplex::triangle(m01, s[1], g)});
      terms.push_back({a, Simplex::triangle(s[1], m12, g)});
      terms.push_back({a, Simplex::triangle(m12, s[2], g)});
      terms.push_back({a, Simplex::triangle(s[2], m20, g)});
      terms.push_back({a, Simplex::triangle(m20, s[0], g)});
    }
  }
  return Chain::from_terms(c.dim(), std::move(terms));
}

/// Chain equality up to common subdivision: true iff A - B canonicalizes to
/// the empty chain.
inline bool chain_equal(const Chain& A, const Chain& B) {
  if (A.is_empty() && B.is_empty()) return true;
  if (!A.is_empty() && !B.is_empty() && A.dim() != B.dim()) return false;
  return combine(1.0, A, -1.0, B).is_empty();
}

}  // namespace fgt
