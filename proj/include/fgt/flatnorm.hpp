#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fgt/chain.hpp"
#include "fgt/geometry.hpp"
#include "fgt/lp.hpp"
#include "fgt/triangulate.hpp"

namespace fgt {

/// Conforming triangulation of a bounding region whose edge set carries the
/// chains being measured, with signed edge-of-triangle incidence for the
/// filling LP.
struct AmbientComplex {
  std::vector<Point2> verts;
  std::vector<std::array<int, 3>> tris;      // CCW vertex triples
  std::vector<std::array<int, 2>> edges;     // vertex pairs, a < b
  std::vector<std::array<int, 3>> tri_edge;  // edge ids per triangle side
  std::vector<std::array<int, 3>> tri_sign;  // +1 where the side runs a -> b
  std::unordered_map<uint64_t, int> edge_id;
  std::vector<double> edge_len;
  std::vector<double> tri_area;

  static uint64_t ekey(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  }

  int find_edge(int a, int b) const {
    auto it = edge_id.find(ekey(a, b));
    return it == edge_id.end() ? -1 : it->second;
  }

  static AmbientComplex from_mesh(const TriMesh& mesh) {
    AmbientComplex k;
    k.verts = mesh.pts;
    k.tris = mesh.tris;
    k.finish_tables();
    return k;
  }

  /// Builds the complex over a bounding box: the carrier segments become
  /// constrained edges of a Delaunay triangulation that also spans the box
  /// corners, then the whole mesh is uniformly refined `refine` times.
  static AmbientComplex build(
      const std::vector<std::pair<Point2, Point2>>& carrier, const BBox& box,
      int refine) {
    const Pslg pslg = split_to_pslg(carrier);
    for (const Point2& p : pslg.pts)
      if (!box.contains(p, kGeomTol))
        throw std::invalid_argument("ambient box does not contain the chain");
    const std::vector<Point2> corners = {{box.xmin, box.ymin},
                                         {box.xmax, box.ymin},
                                         {box.xmax, box.ymax},
                                         {box.xmin, box.ymax}};
    AmbientComplex k = from_mesh(triangulate_pslg(pslg, corners));
    for (int r = 0; r < refine; ++r) k = k.refined();
    return k;
  }

  /// Uniform refinement: every triangle splits into 4 at edge midpoints.
  AmbientComplex refined() const {
    AmbientComplex k;
    k.verts = verts;
    std::unordered_map<uint64_t, int> midpt;
    auto mid_id = [&](int a, int b) {
      const uint64_t key = ekey(a, b);
      auto it = midpt.find(key);
      if (it != midpt.end()) return it->second;
      const int id = static_cast<int>(k.verts.size());
      k.verts.push_back(midpoint(verts[a], verts[b]));
      midpt[key] = id;
      return id;
    };
    k.tris.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int a = t[0], b = t[1], c = t[2];
      const int ab = mid_id(a, b), bc = mid_id(b, c), ca = mid_id(c, a);
      k.tris.push_back({a, ab, ca});
      k.tris.push_back({ab, b, bc});
      k.tris.push_back({ca, bc, c});
      k.tris.push_back({ab, bc, ca});
    }
    k.finish_tables();
    return k;
  }

  void finish_tables() {
    edge_id.clear();
    edges.clear();
    tri_edge.assign(tris.size(), {});
    tri_sign.assign(tris.size(), {});
    for (size_t t = 0; t < tris.size(); ++t) {
      for (int s = 0; s < 3; ++s) {
        const int u = tris[t][s];
        const int v = tris[t][(s + 1) % 3];
        const uint64_t key = ekey(u, v);
        auto it = edge_id.find(key);
        int e;
        if (it == edge_id.end()) {
          e = static_cast<int>(edges.size());
          edges.push_back({std::min(u, v), std::max(u, v)});
          edge_id[key] = e;
        } else {
          e = it->second;
        }
        tri_edge[t][s] = e;
        tri_sign[t][s] = u < v ? 1 : -1;
      }
    }
    edge_len.resize(edges.size());
    for (size_t e = 0; e < edges.size(); ++e)
      edge_len[e] = dist(verts[edges[e][0]], verts[edges[e][1]]);
    tri_area.resize(tris.size());
    for (size_t t = 0; t < tris.size(); ++t)
      tri_area[t] = 0.5 * std::abs(orient2d(verts[tris[t][0]],
                                            verts[tris[t][1]],
                                            verts[tris[t][2]]));
  }
};

struct FlatNormResult {
  double value = 0.0;
  Chain filling;   // 2-chain D
  Chain residual;  // 1-chain B - dD
};

namespace detail {

/// Writes chain B as coefficients on complex edges by walking the complex
/// vertices lying on each segment. Throws if some piece is not an edge of K.
inline std::vector<double> chain_to_edge_coeffs(const Chain& B,
                                                const AmbientComplex& K) {
  if (B.dim() != 1)
    throw std::invalid_argument("flat norm input must be a 1-chain");
  std::vector<double> b(K.edges.size(), 0.0);
  const double tol = 1e-7;
  for (size_t i = 0; i < B.size(); ++i) {
    const Point2 p = B.simplex(i)[0];
    const Point2 q = B.simplex(i)[1];
    const double len = dist(p, q);
    const double ptol = tol / len;
    std::vector<std::pair<double, int>> on;  // (parameter, vertex id)
    for (size_t v = 0; v < K.verts.size(); ++v) {
      if (point_segment_distance(K.verts[v], p, q) > tol) continue;
      on.push_back({dot(K.verts[v] - p, q - p) / (len * len), static_cast<int>(v)});
    }
    std::sort(on.begin(), on.end());
    if (on.size() < 2 || std::abs(on.front().first) > ptol ||
        std::abs(on.back().first - 1.0) > ptol)
      throw std::invalid_argument("chain is not carried by the complex");
    for (size_t s = 0; s + 1 < on.size(); ++s) {
      const int u = on[s].second, v = on[s + 1].second;
      const int e = K.find_edge(u, v);
      if (e < 0)
        throw std::invalid_argument("chain is not carried by the complex");
      b[e] += B.coeff(i) * (u == K.edges[e][0] ? 1.0 : -1.0);
    }
  }
  return b;
}

}  // namespace detail

/// Simplicial flat norm: minimizes mass(B - dD) + mass(D) over real 2-chain
/// fillings D on the complex, as an LP with split-variable absolute values.
/// The optimum is an upper bound for the continuum flat norm and never
/// increases under refinement of K.
inline FlatNormResult flat_norm(const Chain& B, const AmbientComplex& K) {
  FlatNormResult out;
  if (B.is_empty()) {
    out.filling = Chain::empty(2);
    out.residual = Chain::empty(1);
    return out;
  }
  const std::vector<double> b = detail::chain_to_edge_coeffs(B, K);
  const int m = static_cast<int>(K.edges.size());
  const int nt = static_cast<int>(K.tris.size());
  std::vector<SparseCol> cols;
  std::vector<double> cost;
  cols.reserve(2 * m + 2 * nt);
  cost.reserve(2 * m + 2 * nt);
  // layout: q+ block [0,m), q- block [m,2m), then (p+,p-) pairs per triangle
  for (int e = 0; e < m; ++e) {
    cols.push_back({{{e, +1.0}}});
    cost.push_back(K.edge_len[e]);
  }
  for (int e = 0; e < m; ++e) {
    cols.push_back({{{e, -1.0}}});
    cost.push_back(K.edge_len[e]);
  }
  for (int t = 0; t < nt; ++t) {
    SparseCol cp, cm;
    for (int s = 0; s < 3; ++s) {
      cp.nz.push_back({K.tri_edge[t][s], static_cast<double>(K.tri_sign[t][s])});
      cm.nz.push_back({K.tri_edge[t][s], -static_cast<double>(K.tri_sign[t][s])});
    }
    cols.push_back(cp);
    cost.push_back(K.tri_area[t]);
    cols.push_back(cm);
    cost.push_back(K.tri_area[t]);
  }
  std::vector<int> basis(m);
  for (int e = 0; e < m; ++e) basis[e] = b[e] >= 0.0 ? e : m + e;

  RevisedSimplex lp(m, cols, cost, b);
  const LpResult res = lp.solve(basis);
  if (res.status == LpStatus::kUnbounded)
    throw std::runtime_error("flat norm LP unbounded (internal bug)");
  if (res.status == LpStatus::kIterLimit)
    throw std::runtime_error("flat norm LP hit iteration limit");

  std::vector<std::pair<double, Simplex>> fill_terms, res_terms;
  for (int t = 0; t < nt; ++t) {
    const double p = res.x[2 * m + 2 * t] - res.x[2 * m + 2 * t + 1];
    if (std::abs(p) <= kCoeffTol) continue;
    fill_terms.push_back({p, Simplex::triangle(K.verts[K.tris[t][0]],
                                               K.verts[K.tris[t][1]],
                                               K.verts[K.tris[t][2]])});
  }
  for (int e = 0; e < m; ++e) {
    const double q = res.x[e] - res.x[m + e];
    if (std::abs(q) <= kCoeffTol) continue;
    res_terms.push_back({q, Simplex::segment(K.verts[K.edges[e][0]],
                                             K.verts[K.edges[e][1]])});
  }
  out.filling = Chain::from_terms(2, std::move(fill_terms));
  out.residual = Chain::from_terms(1, std::move(res_terms));
  out.value = res.objective;
  return out;
}

inline double flat_distance(const Chain& B1, const Chain& B2,
                            const AmbientComplex& K) {
  const Chain diff = combine(1.0, B1, -1.0, B2);
  if (diff.is_empty()) return 0.0;
  return flat_norm(diff, K).value;
}

struct BoundCheck {
  double flat_value = 0.0;
  double mass_value = 0.0;
  bool ok = true;
};

/// Checks the norm inequality: the flat norm of a 2-chain's boundary never
/// exceeds the 2-chain's mass (the chain itself is a feasible filling).
inline BoundCheck boundary_mass_bound_check(const Chain& A,
                                            const AmbientComplex& K) {
  BoundCheck r;
  r.mass_value = A.mass();
  if (A.is_empty()) return r;
  r.flat_value = flat_norm(A.boundary(), K).value;
  r.ok = r.flat_value <= r.mass_value + kLpTol;
  return r;
}

inline constexpr int kTailInfinity = std::numeric_limits<int>::max();

/// Tail of the per-step filling-area series for the snowflake stages:
/// sum over j = i+1 .. k of (3*sqrt(3)/16) * (4/9)^j.
inline double koch_tail_bound(int i, int k) {
  if (i < 0 || i >= k) throw std::invalid_argument("tail bound needs 0 <= i < k");
  const double c = 3.0 * std::sqrt(3.0) / 16.0;
  const double r = 4.0 / 9.0;
  if (k == kTailInfinity) return c * std::pow(r, i + 1) / (1.0 - r);
  double sum = 0.0;
  double term = std::pow(r, i + 1);
  for (int j = i + 1; j <= k; ++j) {
    sum += term;
    term *= r;
  }
  return c * sum;
}

/// Bounding box padded proportionally to the chain extent, shared carrier
/// builder for flat-norm computations.
inline AmbientComplex make_carrier_complex(
    const std::vector<const Chain*>& chains, double pad_fraction = 0.25,
    int refine = 0) {
  std::vector<std::pair<Point2, Point2>> segs;
  for (const Chain* c : chains)
    for (const auto& s : c->segments()) segs.push_back(s);
  if (segs.empty()) throw std::invalid_argument("no carrier segments");
  std::vector<Point2> pts;
  for (const auto& [p, q] : segs) {
    pts.push_back(p);
    pts.push_back(q);
  }
  BBox box = BBox::of_points(pts);
  box.pad(pad_fraction * std::max({box.width(), box.height(), 1e-3}));
  return AmbientComplex::build(segs, box, refine);
}

}  // namespace fgt
