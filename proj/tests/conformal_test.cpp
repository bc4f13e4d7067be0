#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "fgt/conformal.hpp"
#include "fgt/growth.hpp"

using namespace fgt;

namespace {

const std::vector<Point2> kSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

double min_edge_distance(const std::vector<Point2>& poly, const Point2& p) {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < poly.size(); ++i)
    d = std::min(d, point_segment_distance(p, poly[i],
                                           poly[(i + 1) % poly.size()]));
  return d;
}

std::vector<Point2> koch_polygon(int level, int samples) {
  const KochBuild b = koch_build({1.0, 1.0, false}, level, -1.0);
  return resample_closed(b.curve.pts, samples);
}

}  // namespace

TEST_CASE("polygon primitives", "[conformal]") {
  CHECK(polygon_signed_area(kSquare) == Catch::Approx(1.0));
  std::vector<Point2> cw = kSquare;
  std::reverse(cw.begin(), cw.end());
  CHECK(polygon_signed_area(cw) == Catch::Approx(-1.0));
  const Point2 c = polygon_centroid(kSquare);
  CHECK(c.x == Catch::Approx(0.5));
  CHECK(c.y == Catch::Approx(0.5));
  CHECK(polygon_diameter(kSquare) == Catch::Approx(std::sqrt(2.0)));
  CHECK_THROWS(polygon_centroid({{0, 0}, {1, 1}, {2, 2}}));

  CHECK(point_in_polygon(kSquare, {0.5, 0.5}));
  CHECK_FALSE(point_in_polygon(kSquare, {1.5, 0.5}));
  CHECK(point_in_polygon(kSquare, {1.0 + 1e-12, 0.5}, 1e-9));  // tol rescues
  CHECK(point_in_polygon(kSquare, {0.3, 0.0}, 1e-9));

  CHECK(polygon_is_simple(kSquare));
  CHECK_FALSE(polygon_is_simple({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));  // bowtie
}

TEST_CASE("closed resampling preserves the outline", "[conformal]") {
  const auto r = resample_closed(kSquare, 16);
  REQUIRE(r.size() == 16);
  double per = 0.0;
  for (size_t i = 0; i < r.size(); ++i) {
    per += dist(r[i], r[(i + 1) % r.size()]);
    CHECK(min_edge_distance(kSquare, r[i]) < 1e-12);
  }
  CHECK(per == Catch::Approx(4.0).epsilon(1e-12));
  // spacing is uniform in arclength
  for (size_t i = 0; i < r.size(); ++i)
    CHECK(dist(r[i], r[(i + 1) % r.size()]) == Catch::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("hausdorff distance on known shapes", "[conformal]") {
  CHECK(hausdorff_distance(kSquare, kSquare) == Catch::Approx(0.0).margin(1e-15));
  std::vector<Point2> shifted;
  for (const auto& p : kSquare) shifted.push_back({p.x + 0.3, p.y});
  CHECK(hausdorff_distance(kSquare, shifted) == Catch::Approx(0.3).epsilon(1e-12));
  // resampling one side does not change the distance
  const auto dense = resample_closed(kSquare, 64);
  CHECK(hausdorff_distance(dense, kSquare) < 1e-12);
}

TEST_CASE("positive-cut square root branch", "[conformal]") {
  using cplx = std::complex<double>;
  CHECK(csqrt_pos(cplx(4.0, 0.0)) == cplx(2.0, 0.0));
  // below the positive real axis the other root is taken
  const cplx below = csqrt_pos(cplx(4.0, -0.0));
  CHECK(below.real() == Catch::Approx(-2.0));
  // the negative real axis maps to the positive imaginary axis either way
  const cplx neg_up = csqrt_pos(cplx(-4.0, 0.0));
  const cplx neg_dn = csqrt_pos(cplx(-4.0, -0.0));
  CHECK(neg_up.imag() == Catch::Approx(2.0));
  CHECK(neg_dn.imag() == Catch::Approx(2.0));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const cplx z{uni(rng), uni(rng)};
    const cplx r = csqrt_pos(z);
    CHECK(r.imag() >= -1e-15);  // range is the closed upper half plane
    CHECK(std::abs(r * r - z) < 1e-12 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("disk identity map from a circle target", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(512));
  CHECK(std::abs(M.anchor.x) < 1e-9);
  CHECK(std::abs(M.anchor.y) < 1e-9);

  // boundary points land on the unit circle up to the polygon sagitta
  for (int i = 0; i < 256; ++i) {
    const double th = 2.0 * M_PI * (i + 0.37) / 256;
    const Point2 p = M.map_point(std::polar(1.0, th));
    CHECK(std::abs(std::hypot(p.x, p.y) - 1.0) < 1e-4);
  }
  // the map is close to the identity inside
  for (const double r : {0.2, 0.5, 0.9}) {
    for (int i = 0; i < 32; ++i) {
      const double th = 2.0 * M_PI * (i + 0.5) / 32;
      const std::complex<double> u = std::polar(r, th);
      CHECK(std::abs(M.inverse(u) - u) < 1e-3);
    }
  }
  const CrResidual cr = cr_residual(M);
  CHECK(cr.rms < 1e-8);
  CHECK(cr.max_abs < 1e-6);
}

TEST_CASE("forward and inverse are exact inverses", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(256));
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double r = 0.92 * std::sqrt(uni(rng));
    const double th = 2.0 * M_PI * uni(rng);
    const std::complex<double> u = std::polar(r, th);
    CHECK(std::abs(M.forward(M.inverse(u)) - u) < 1e-8);
    const std::complex<double> z = M.inverse(u);
    CHECK(std::abs(M.inverse(M.forward(z)) - z) < 1e-8);
  }
}

TEST_CASE("self map composes with the radial shrink", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(256));
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const std::complex<double> z = std::polar(0.8 * uni(rng), 2 * M_PI * uni(rng));
    const std::complex<double> w = self_map(M, 1.3, M.inverse(z));
    CHECK(std::abs(M.forward(w) - 0.65 * z) < 1e-8);
  }
  CHECK_THROWS(self_map(M, 0.0, {0.1, 0.1}));
  CHECK_THROWS(self_map(M, 2.5, {0.1, 0.1}));
}

TEST_CASE("evolution of the disk produces circles", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(512));
  for (const double t : {0.6, 1.0, 1.6}) {
    const auto curve = evolve_region(M, t);
    REQUIRE(curve.size() >= 32);
    for (const auto& p : curve)
      CHECK(std::hypot(p.x, p.y) == Catch::Approx(0.5 * t).margin(2e-4));
  }
}

TEST_CASE("evolved regions nest inside later ones", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(512));
  const NestingReport rep = nesting_check(M, 0.8, 1.4, 512);
  CHECK(rep.total == 512);
  CHECK(rep.fraction >= 0.999);
  CHECK_THROWS(nesting_check(M, 1.4, 0.8));
}

TEST_CASE("snowflake target region evolves toward its boundary", "[conformal]") {
  const std::vector<Point2> target = koch_polygon(2, 768);
  REQUIRE(polygon_is_simple(target));
  const RiemannMap M = fit_riemann_map(target);
  // anchor is a genuine interior point
  CHECK(point_in_polygon(target, M.anchor));

  const CrResidual cr = cr_residual(M);
  CHECK(cr.rms < 1e-3);

  const NestingReport rep = nesting_check(M, 1.2, 1.5, 512);
  CHECK(rep.fraction >= 0.999);

  const LimitReport lim = boundary_limit(M, target, {1.5, 1.9});
  REQUIRE(lim.hausdorff.size() == 2);
  CHECK(lim.monotone_decreasing);
  CHECK(lim.hausdorff[1] < lim.hausdorff[0]);
  CHECK(lim.hausdorff[1] < 0.2);

  // late-time boundary points stay essentially inside the target region
  const auto late = evolve_region(M, 1.9);
  int inside = 0;
  const double tol = 1e-9 * polygon_diameter(target);
  for (const auto& p : late)
    if (point_in_polygon(target, p, tol)) ++inside;
  CHECK(inside >= static_cast<int>(0.995 * late.size()));
}

TEST_CASE("boundary fitting validates its input", "[conformal]") {
  CHECK_THROWS(fit_riemann_map({{0, 0}, {1, 0}, {0, 1}}));  // too few samples
  std::vector<Point2> dup = circle_points(32);
  dup[5] = dup[4];
  CHECK_THROWS(fit_riemann_map(dup));
  // self-intersecting boundary rejected when validation is on
  std::vector<Point2> bow = {{0, 0}, {2, 2}, {2, 0}, {0, 2},
                             {-1, 1}, {-1, 0.5}, {-1, 0.2}, {-0.5, 0.1}};
  CHECK_THROWS(fit_riemann_map(bow, true));
}

TEST_CASE("evolution times must lie in the open interval", "[conformal]") {
  const RiemannMap M = fit_riemann_map(circle_points(64));
  CHECK_THROWS(evolve_region(M, 0.0));
  CHECK_THROWS(evolve_region(M, 2.0));
  CHECK_THROWS(evolve_region(M, -1.0));
}
