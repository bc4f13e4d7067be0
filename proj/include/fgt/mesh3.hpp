#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fgt/forms.hpp"

namespace fgt {

/// Conforming tetrahedral mesh of a spacetime box, built from a uniform grid
/// with each cell split into the six path tetrahedra along the main diagonal.
/// All tetrahedra are positively oriented in (t, x1, x2); boundary triangles
/// carry the induced orientation, so the Stokes identity holds chain-wise.
struct Mesh3 {
  std::vector<std::array<double, 3>> verts;
  std::vector<std::array<int, 4>> tets;
  std::vector<std::array<int, 3>> boundary;

  static Mesh3 box(std::array<double, 2> trange, std::array<double, 2> x1range,
                   std::array<double, 2> x2range, int nt, int n1, int n2) {
    if (nt < 1 || n1 < 1 || n2 < 1)
      throw std::invalid_argument("mesh needs at least one cell per axis");
    Mesh3 m;
    const int vt = nt + 1, v1 = n1 + 1, v2 = n2 + 1;
    m.verts.reserve(static_cast<size_t>(vt) * v1 * v2);
    for (int it = 0; it < vt; ++it)
      for (int i1 = 0; i1 < v1; ++i1)
        for (int i2 = 0; i2 < v2; ++i2)
          m.verts.push_back(
              {trange[0] + (trange[1] - trange[0]) * it / nt,
               x1range[0] + (x1range[1] - x1range[0]) * i1 / n1,
               x2range[0] + (x2range[1] - x2range[0]) * i2 / n2});
    auto vid = [&](int it, int i1, int i2) {
      return (it * v1 + i1) * v2 + i2;
    };
    // path tetrahedra: (corner, +e_{s0}, +e_{s1}, +e_{s2}) for each
    // permutation s of the axes, vertices shared across neighboring cells
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static const int parity[6] = {1, -1, -1, 1, 1, -1};
    m.tets.reserve(static_cast<size_t>(nt) * n1 * n2 * 6);
    for (int it = 0; it < nt; ++it) {
      for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
          for (int p = 0; p < 6; ++p) {
            int off[4][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {1, 1, 1}};
            off[1][perms[p][0]] = 1;
            off[2][perms[p][0]] = 1;
            off[2][perms[p][1]] = 1;
            std::array<int, 4> tet;
            for (int k = 0; k < 4; ++k)
              tet[k] = vid(it + off[k][0], i1 + off[k][1], i2 + off[k][2]);
            if (parity[p] < 0) std::swap(tet[2], tet[3]);
            m.tets.push_back(tet);
          }
        }
      }
    }
    m.build_boundary();
    return m;
  }

  void build_boundary() {
    boundary.clear();
    struct Entry {
      std::array<int, 3> sorted;
      int net = 0;
    };
    std::unordered_map<std::uint64_t, Entry> faces;
    auto face_key = [](std::array<int, 3> s) {
      return (static_cast<std::uint64_t>(s[0]) << 42) |
             (static_cast<std::uint64_t>(s[1]) << 21) |
             static_cast<std::uint64_t>(s[2]);
    };
    auto add_face = [&](int a, int b, int c) {
      std::array<int, 3> s = {a, b, c};
      int inv = 0;
      if (s[0] > s[1]) (std::swap(s[0], s[1]), ++inv);
      if (s[1] > s[2]) (std::swap(s[1], s[2]), ++inv);
      if (s[0] > s[1]) (std::swap(s[0], s[1]), ++inv);
      auto& e = faces[face_key(s)];
      e.sorted = s;
      e.net += (inv % 2 == 0) ? 1 : -1;
    };
    for (const auto& t : tets) {
      add_face(t[1], t[2], t[3]);
      add_face(t[0], t[3], t[2]);
      add_face(t[0], t[1], t[3]);
      add_face(t[0], t[2], t[1]);
    }
    for (const auto& [k, e] : faces) {
      (void)k;
      if (e.net == 0) continue;
      if (e.net != 1 && e.net != -1)
        throw std::logic_error("non-manifold face in box mesh");
      if (e.net == 1)
        boundary.push_back(e.sorted);
      else
        boundary.push_back({e.sorted[0], e.sorted[2], e.sorted[1]});
    }
  }
};

// --- quadrature -------------------------------------------------------------

/// Gauss-Legendre nodes and weights on [0,1], exact for degree 2n-1.
inline void gauss_legendre01(int n, std::vector<double>* nodes,
                             std::vector<double>* weights) {
  if (n < 1) throw std::invalid_argument("quadrature order");
  nodes->assign(n, 0.0);
  weights->assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    (*nodes)[k] = 0.5 * (1.0 - x);  // descending cos roots -> ascending nodes
    (*weights)[k] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

struct QuadRule3 {
  std::vector<std::array<double, 3>> pts;  // reference tet u,v,w >= 0, sum <= 1
  std::vector<double> wts;                 // sum to 1/6
};

struct QuadRule2 {
  std::vector<std::array<double, 2>> pts;  // reference triangle
  std::vector<double> wts;                 // sum to 1/2
};

/// Tensor rule collapsed onto the reference tetrahedron.
inline QuadRule3 tet_quadrature(int order) {
  std::vector<double> x, w;
  gauss_legendre01(order, &x, &w);
  QuadRule3 q;
  q.pts.reserve(order * order * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c) {
        const double u = x[a];
        const double v = x[b] * (1.0 - x[a]);
        const double ww = x[c] * (1.0 - x[a]) * (1.0 - x[b]);
        q.pts.push_back({u, v, ww});
        q.wts.push_back(w[a] * w[b] * w[c] * (1.0 - x[a]) * (1.0 - x[a]) *
                        (1.0 - x[b]));
      }
    }
  }
  return q;
}

/// Tensor rule collapsed onto the reference triangle.
inline QuadRule2 tri_quadrature(int order) {
  std::vector<double> x, w;
  gauss_legendre01(order, &x, &w);
  QuadRule2 q;
  q.pts.reserve(order * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      q.pts.push_back({x[a], x[b] * (1.0 - x[a])});
      q.wts.push_back(w[a] * w[b] * (1.0 - x[a]));
    }
  }
  return q;
}

// --- form integration ---------------------------------------------------------

/// Integral of a 3-form over the meshed region (orientation included).
inline double integrate_volume(const Mesh3& m, const FormField& w3,
                               int order = 4) {
  if (w3.degree() != 3) throw std::invalid_argument("volume integrand degree");
  const QuadRule3 q = tet_quadrature(order);
  double total = 0.0;
  for (const auto& tet : m.tets) {
    const auto& p0 = m.verts[tet[0]];
    std::array<double, 3> e1, e2, e3;
    for (int c = 0; c < 3; ++c) {
      e1[c] = m.verts[tet[1]][c] - p0[c];
      e2[c] = m.verts[tet[2]][c] - p0[c];
      e3[c] = m.verts[tet[3]][c] - p0[c];
    }
    double acc = 0.0;
    for (size_t k = 0; k < q.pts.size(); ++k) {
      const auto& uv = q.pts[k];
      const double t = p0[0] + uv[0] * e1[0] + uv[1] * e2[0] + uv[2] * e3[0];
      const double x1 = p0[1] + uv[0] * e1[1] + uv[1] * e2[1] + uv[2] * e3[1];
      const double x2 = p0[2] + uv[0] * e1[2] + uv[1] * e2[2] + uv[2] * e3[2];
      acc += q.wts[k] * w3.eval3(t, x1, x2, e1, e2, e3);
    }
    total += acc;
  }
  return total;
}

/// Integral of a 2-form over the induced-oriented boundary of the region.
inline double integrate_boundary(const Mesh3& m, const FormField& w2,
                                 int order = 4) {
  if (w2.degree() != 2) throw std::invalid_argument("boundary integrand degree");
  const QuadRule2 q = tri_quadrature(order);
  double total = 0.0;
  for (const auto& tri : m.boundary) {
    const auto& p0 = m.verts[tri[0]];
    std::array<double, 3> e1, e2;
    for (int c = 0; c < 3; ++c) {
      e1[c] = m.verts[tri[1]][c] - p0[c];
      e2[c] = m.verts[tri[2]][c] - p0[c];
    }
    double acc = 0.0;
    for (size_t k = 0; k < q.pts.size(); ++k) {
      const auto& uv = q.pts[k];
      const double t = p0[0] + uv[0] * e1[0] + uv[1] * e2[0];
      const double x1 = p0[1] + uv[0] * e1[1] + uv[1] * e2[1];
      const double x2 = p0[2] + uv[0] * e1[2] + uv[1] * e2[2];
      acc += q.wts[k] * w2.eval2(t, x1, x2, e1, e2);
    }
    total += acc;
  }
  return total;
}

}  // namespace fgt
