#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "fgt/currents.hpp"
#include "fgt/mesh3.hpp"

using namespace fgt;

namespace {

double tet_volume(const Mesh3& m, const std::array<int, 4>& tet) {
  const auto& a = m.verts[tet[0]];
  const auto& b = m.verts[tet[1]];
  const auto& c = m.verts[tet[2]];
  const auto& d = m.verts[tet[3]];
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double w[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) -
                     u[1] * (v[0] * w[2] - v[2] * w[0]) +
                     u[2] * (v[0] * w[1] - v[1] * w[0]);
  return det / 6.0;
}

FormField const_volume_form(double c = 1.0) {
  FormField f(3);
  f.comp(0) = FormComponent(Poly3::constant(c));
  return f;
}

}  // namespace

TEST_CASE("legendre nodes integrate polynomials exactly", "[currents]") {
  std::vector<double> x, w;
  for (int n = 1; n <= 8; ++n) {
    gauss_legendre01(n, &x, &w);
    REQUIRE(x.size() == static_cast<size_t>(n));
    double sum = 0.0;
    for (double wi : w) sum += wi;
    CHECK(sum == Catch::Approx(1.0).epsilon(1e-14));
    // exact through degree 2n-1 on [0,1]
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double integral = 0.0;
      for (int i = 0; i < n; ++i) integral += w[i] * std::pow(x[i], k);
      CHECK(integral == Catch::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("simplex quadrature weights and moments", "[currents]") {
  const QuadRule3 q3 = tet_quadrature(4);
  double sum = 0.0, mu = 0.0, muv = 0.0;
  for (size_t i = 0; i < q3.wts.size(); ++i) {
    sum += q3.wts[i];
    mu += q3.wts[i] * q3.pts[i][0];
    muv += q3.wts[i] * q3.pts[i][0] * q3.pts[i][1];
  }
  CHECK(sum == Catch::Approx(1.0 / 6.0).epsilon(1e-13));   // reference volume
  CHECK(mu == Catch::Approx(1.0 / 24.0).epsilon(1e-12));   // integral of u
  CHECK(muv == Catch::Approx(1.0 / 120.0).epsilon(1e-12)); // integral of u*v

  const QuadRule2 q2 = tri_quadrature(4);
  double s2 = 0.0, m2 = 0.0;
  for (size_t i = 0; i < q2.wts.size(); ++i) {
    s2 += q2.wts[i];
    m2 += q2.wts[i] * q2.pts[i][0];
  }
  CHECK(s2 == Catch::Approx(0.5).epsilon(1e-13));
  CHECK(m2 == Catch::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("box mesh is a positive conforming tetrahedralization", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 3, 2);
  CHECK(m.tets.size() == 6u * 2 * 3 * 2);
  double vol = 0.0;
  for (const auto& tet : m.tets) {
    const double v = tet_volume(m, tet);
    CHECK(v > 0.0);
    vol += v;
  }
  CHECK(vol == Catch::Approx(1.0).epsilon(1e-12));
  // boundary: each unit face quad splits in two triangles
  CHECK(m.boundary.size() == 2u * 2 * (2 * 3 + 3 * 2 + 2 * 2));
  // every boundary triangle lies in a box face plane
  for (const auto& f : m.boundary) {
    bool planar = false;
    for (int ax = 0; ax < 3 && !planar; ++ax)
      for (double val : {0.0, 1.0}) {
        if (std::abs(m.verts[f[0]][ax] - val) < 1e-15 &&
            std::abs(m.verts[f[1]][ax] - val) < 1e-15 &&
            std::abs(m.verts[f[2]][ax] - val) < 1e-15) {
          planar = true;
          break;
        }
      }
    CHECK(planar);
  }
}

TEST_CASE("interior faces cancel pairwise", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 2}, {-1, 1}, {0, 1}, 2, 2, 1);
  // count face multiset: every interior face appears twice, boundary once
  std::map<std::array<int, 3>, int> count;
  for (const auto& tet : m.tets) {
    const std::array<std::array<int, 3>, 4> faces = {{
        {tet[1], tet[2], tet[3]},
        {tet[0], tet[2], tet[3]},
        {tet[0], tet[1], tet[3]},
        {tet[0], tet[1], tet[2]},
    }};
    for (auto f : faces) {
      std::sort(f.begin(), f.end());
      ++count[f];
    }
  }
  size_t boundary_faces = 0;
  for (const auto& [f, c] : count) {
    CHECK((c == 1 || c == 2));  // conforming: no T-junctions
    if (c == 1) ++boundary_faces;
  }
  CHECK(boundary_faces == m.boundary.size());
}

TEST_CASE("volume integration of basic forms", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 2, 2);
  CHECK(integrate_volume(m, const_volume_form()) == Catch::Approx(1.0).epsilon(1e-12));

  FormField tvol(3);
  tvol.comp(0) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));  // t dt^dx1^dx2
  CHECK(integrate_volume(m, tvol) == Catch::Approx(0.5).epsilon(1e-12));

  FormField poly(3);
  poly.comp(0) = FormComponent(Poly3::monomial(1.0, 2, 1, 0));  // t^2 x1
  CHECK(integrate_volume(m, poly) == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

  // a shifted box picks up the right measure
  const Mesh3 shifted = Mesh3::box({1, 3}, {0, 2}, {-1, 0}, 3, 2, 2);
  CHECK(integrate_volume(shifted, const_volume_form()) ==
        Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("boundary integration realizes the stokes relation", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 2, 2);
  FormField w(2);  // t dx1^dx2
  w.comp_by_mask(6) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));
  // d(t dx1^dx2) = dt^dx1^dx2, so the boundary integral equals the volume
  CHECK(integrate_boundary(m, w) == Catch::Approx(1.0).epsilon(1e-10));

  FormField closed(2);  // dx1^dx2 integrates to zero over a closed surface
  closed.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
  CHECK(integrate_boundary(m, closed) == Catch::Approx(0.0).margin(1e-12));

  FormField w2(2);  // x1 dx2^dt = -x1 dt^dx2
  w2.comp_by_mask(5) = FormComponent(Poly3::monomial(-1.0, 0, 0, 0) *
                                     Poly3::monomial(1.0, 0, 1, 0));
  // d(-x1 dt^dx2) = -dx1^dt^dx2 = +dt^dx1^dx2: boundary integral is 1
  CHECK(integrate_boundary(m, w2) == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("stokes on random polynomial 2-forms", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 2, 2);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    FormField w(2);
    for (int i = 0; i < 3; ++i) {
      std::vector<Poly3::Term> terms;
      for (int k = 0; k < 3; ++k)
        terms.push_back({uni(rng), static_cast<int>(rng() % 3),
                         static_cast<int>(rng() % 3),
                         static_cast<int>(rng() % 3)});
      w.comp(i) = FormComponent(Poly3(std::move(terms)));
    }
    const double lhs = integrate_boundary(m, w, 6);
    const double rhs = integrate_volume(m, exterior_derivative_exact(w), 6);
    CHECK(lhs == Catch::Approx(rhs).margin(1e-10 * (1.0 + std::abs(rhs))));
  }
}

TEST_CASE("current application pairs flux with test forms", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 2, 2);
  FormField flux(2);  // dx1^dx2
  flux.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
  FormField psi(1);  // t dt
  psi.comp_by_mask(1) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));
  // (dx1^dx2) ^ (t dt) = t dt^dx1^dx2
  CHECK(current_apply(m, flux, psi) == Catch::Approx(0.5).epsilon(1e-12));

  FormField psi2(1);  // dx1 wedges to zero against dx1^dx2
  psi2.comp_by_mask(2) = FormComponent(Poly3::constant(1.0));
  CHECK(current_apply(m, flux, psi2) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("source current splits into boundary and volume parts", "[currents]") {
  const Mesh3 m = Mesh3::box({0, 1}, {0, 1}, {0, 1}, 2, 2, 2);
  FormField flux(2);
  flux.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
  FormField phi(0);  // time cutoff function phi = t
  phi.comp(0) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));
  const SourceSplit s = source_current(m, flux, phi);
  CHECK(s.total == Catch::Approx(1.0).epsilon(1e-10));
  CHECK(s.boundary_part == Catch::Approx(1.0).epsilon(1e-10));
  CHECK(s.volume_part == Catch::Approx(0.0).margin(1e-12));
  CHECK(s.mismatch < 1e-10);

  // non-closed flux moves weight into the volume part
  FormField flux2(2);
  flux2.comp_by_mask(6) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));  // t dx1^dx2
  const SourceSplit s2 = source_current(m, flux2, phi);
  CHECK(s2.mismatch < 1e-10);
  CHECK(s2.total ==
        Catch::Approx(s2.boundary_part + s2.volume_part).margin(1e-10));
  CHECK(std::abs(s2.volume_part) > 0.1);
}

TEST_CASE("bump forms vanish at the support edge", "[currents]") {
  const auto [phi, dphi] =
      bump_form_with_differential(0, {{0, Poly3::constant(1.0)}});
  CHECK(phi.comp(0).eval(0.5, 0.5, 0.5) > 0.9);
  CHECK(phi.comp(0).eval(0.25, 0.5, 0.5) == 0.0);
  CHECK(phi.comp(0).eval(0.5, 0.75, 0.5) == 0.0);
  CHECK(phi.comp(0).eval(0.1, 0.5, 0.5) == 0.0);  // outside stays zero
  // the stored differential matches a finite difference of phi
  const double h = 1e-6;
  const double fd = (phi.comp(0).eval(0.5 + h, 0.45, 0.55) -
                     phi.comp(0).eval(0.5 - h, 0.45, 0.55)) /
                    (2.0 * h);
  CHECK(dphi.comp_by_mask(1).eval(0.5, 0.45, 0.55) ==
        Catch::Approx(fd).margin(1e-7));
}

TEST_CASE("boundary identity battery for induced currents", "[currents]") {
  const IdentityCheckResult r1 = current_boundary_identity_check(1);
  CHECK(r1.cases >= 12);
  CHECK(r1.max_scale > 1e-6);  // the battery is not vacuous
  CHECK(r1.max_error < 1e-12 * std::max(1.0, r1.max_scale));

  const IdentityCheckResult r2 = current_boundary_identity_check(2);
  CHECK(r2.cases >= 12);
  CHECK(r2.max_scale > 1e-6);
  CHECK(r2.max_error < 1e-12 * std::max(1.0, r2.max_scale));

  CHECK_THROWS(current_boundary_identity_check(0));
}
