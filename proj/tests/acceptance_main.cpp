// Acceptance gate for the toolkit: every core guarantee gets one pass/fail
// line at its stated tolerance. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fgt/boxdim.hpp"
#include "fgt/chain.hpp"
#include "fgt/conformal.hpp"
#include "fgt/currents.hpp"
#include "fgt/flatnorm.hpp"
#include "fgt/forms.hpp"
#include "fgt/growth.hpp"
#include "fgt/jsonio.hpp"
#include "fgt/mesh3.hpp"

using namespace fgt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& msg) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
  void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// --- 01: the boundary operator squares to zero ------------------------------

Outcome check_boundary_squared() {
  Outcome o;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> coefd(0.1, 5.0);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_int_distribution<int> sign(0, 1);

  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::pair<double, Simplex>> terms;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      Point2 a{coord(rng), coord(rng)};
      Point2 b{coord(rng), coord(rng)};
      Point2 c{coord(rng), coord(rng)};
      // keep the triangle thick enough to be a valid simplex
      while (std::abs(orient2d(a, b, c)) < 1e-3) {
        b = {coord(rng), coord(rng)};
        c = {coord(rng), coord(rng)};
      }
      const double w = (sign(rng) ? 1.0 : -1.0) * coefd(rng);
      terms.push_back({w, Simplex::triangle(a, b, c)});
    }
    const Chain C = Chain::from_terms(2, std::move(terms));
    const Chain bb = C.boundary().boundary();
    if (!bb.is_empty()) {
      o.fail("trial " + std::to_string(trial) + " left " +
             std::to_string(bb.size()) + " terms with mass " + fmt(bb.mass()));
      break;
    }
  }
  return o;
}

// --- 02: flat norm of a triangle boundary -----------------------------------

Outcome check_triangle_flatnorm() {
  Outcome o;
  const double s3 = std::sqrt(3.0);
  for (const double d : {0.4, 1.0, 4.0}) {
    const Chain C = Chain::single(
        1.0, Simplex::triangle({0.0, 0.0}, {d, 0.0}, {0.5 * d, 0.5 * s3 * d}));
    const Chain B = C.boundary();
    const double expect = std::min(3.0 * d, s3 / 4.0 * d * d);
    double prev = std::numeric_limits<double>::infinity();
    for (int refine = 0; refine <= 2; ++refine) {
      const AmbientComplex K = make_carrier_complex({&B}, 0.25, refine);
      const double got = flat_norm(B, K).value;
      if (std::abs(got - expect) > 0.02 * expect)
        o.fail("side " + fmt(d) + " refine " + std::to_string(refine) +
               ": got " + fmt(got) + " want " + fmt(expect));
      if (got > prev + 1e-7)
        o.fail("side " + fmt(d) + ": value rose under refinement");
      prev = got;
      if (d == 1.0)
        o.expect(got <= s3 / 4.0 + 1e-9, "unit triangle exceeds its area");
    }
  }
  return o;
}

// --- 03: snowflake stage counting and masses --------------------------------

Outcome check_stage_counting() {
  Outcome o;
  const KochParams p;
  const auto records = koch_records(p, 5);
  o.expect(records.size() == 5, "expected five stage records");
  for (const auto& r : records) {
    const long long want_tris = 3ll << (2 * (r.level - 1));  // 3 * 4^(j-1)
    if (r.triangles != want_tris)
      o.fail("level " + std::to_string(r.level) + " has " +
             std::to_string(r.triangles) + " triangles, want " +
             std::to_string(want_tris));
    const double want_sides = 1.5 * std::pow(4.0 / 3.0, r.level);
    if (rel_err(r.new_sides_total, want_sides) > 1e-12)
      o.fail("level " + std::to_string(r.level) + " new-side total " +
             fmt(r.new_sides_total) + ", want " + fmt(want_sides));
  }
  for (int k = 0; k <= 8; ++k) {
    const double mass = koch_stage(p, k).mass();
    const double want = 3.0 * std::pow(4.0 / 3.0, k);
    if (rel_err(mass, want) > 1e-10)
      o.fail("stage " + std::to_string(k) + " mass " + fmt(mass) + ", want " +
             fmt(want));
  }
  return o;
}

// --- 04: stages are Cauchy in the flat distance ------------------------------

Outcome check_cauchy_tail() {
  Outcome o;
  const KochParams p;
  for (const auto [i, k] : {std::pair{0, 2}, {1, 3}, {2, 4}}) {
    const Chain A = koch_stage(p, i);
    const Chain B = koch_stage(p, k);
    const AmbientComplex K = make_carrier_complex({&A, &B}, 0.25, 0);
    const double dist = flat_distance(A, B, K);
    const double bound = koch_tail_bound(i, k);
    if (!(dist > 0.0))
      o.fail("stages " + std::to_string(i) + "," + std::to_string(k) +
             " distance not positive");
    if (dist > bound + kLpTol)
      o.fail("stages " + std::to_string(i) + "," + std::to_string(k) +
             ": distance " + fmt(dist) + " exceeds tail bound " + fmt(bound));
  }
  return o;
}

// --- 05: growth schedule timing, continuity and monotone mass ---------------

Outcome check_growth_schedule() {
  Outcome o;
  const KochParams p;
  for (int i = 0; i <= 20; ++i) {
    if (stage_time(i) != 1.0 - std::ldexp(1.0, -i)) {
      o.fail("stage time " + std::to_string(i) + " is not exact");
      break;
    }
    if (i >= 1 && growth_index(stage_time(i)) != i) {
      o.fail("growth index at stage time " + std::to_string(i));
      break;
    }
  }

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(1e-6, 1.0 - 1e-6);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double t = uni(rng);
    const int i = growth_index(t);
    const double tau = local_time(t);
    if (!(t > stage_time(i - 1) && t <= stage_time(i))) {
      o.fail("t=" + fmt(t) + " landed outside interval " + std::to_string(i));
      break;
    }
    worst = std::max(worst, std::abs(stage_time(i - 1) + tau - t));
  }
  o.expect(worst <= 1e-12, "round trip drift " + fmt(worst));

  for (int i = 1; i <= 8; ++i) {
    const double full = full_bump_height(p, i);
    const double ti = stage_time(i);
    if (triangle_height(p, i, ti) != full) {
      o.fail("height at stage time " + std::to_string(i) + " is not full");
    }
    const double before = triangle_height(p, i, std::nextafter(ti, 0.0));
    if (std::abs(before - full) >= 1e-9)
      o.fail("height jump approaching stage time " + std::to_string(i));
    const double after = triangle_height(p, i, stage_time(i - 1) + 1e-9);
    if (after >= 1e-6)
      o.fail("height " + fmt(after) + " too large just after stage " +
             std::to_string(i - 1));
  }

  double last = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double t = 0.05 + (0.98 - 0.05) * n / 999.0;
    const double m = chain_at_time(p, t).chain.mass();
    if (m < last - 1e-12) {
      o.fail("mass decreased near t=" + fmt(t));
      break;
    }
    last = m;
  }
  return o;
}

// --- 06: bounded area, unbounded perimeter ----------------------------------

Outcome check_area_perimeter() {
  Outcome o;
  const KochParams p;
  const double limit = 2.0 * std::sqrt(3.0) / 5.0;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.02, 0.97);
  std::vector<double> times;
  for (int n = 0; n < 500; ++n) times.push_back(uni(rng));
  for (int i = 1; i <= 5; ++i) {
    times.push_back(stage_time(i));
    times.push_back(stage_time(i) - 1e-9);
    times.push_back(stage_time(i) + 1e-9);
  }
  double worst = 0.0;
  for (const double t : times)
    worst = std::max(worst, filled_at_time(p, t).mass());
  o.expect(worst <= limit + 1e-9,
           "area " + fmt(worst) + " above the limit " + fmt(limit));

  const double t8 = stage_time(8);
  const double perim = chain_at_time(p, t8).chain.mass();
  const double want = 3.0 * std::pow(4.0 / 3.0, 8);
  o.expect(perim >= want - 1e-6,
           "perimeter " + fmt(perim) + " below " + fmt(want));
  return o;
}

// --- 07: box-counting dimension ----------------------------------------------

Outcome check_box_dimension() {
  Outcome o;
  const Chain koch = koch_stage({}, 6);
  const BBox bb = koch.bbox();
  const DimensionFit fit =
      box_dimension(koch, default_box_scales(std::max(bb.width(), bb.height())));
  if (!(fit.estimate >= 1.21 && fit.estimate <= 1.31))
    o.fail("snowflake estimate " + fmt(fit.estimate) + " outside [1.21,1.31]");

  const Chain seg = Chain::single(1.0, Simplex::segment({0.0, 0.0}, {1.0, 0.4}));
  const DimensionFit sfit = box_dimension(seg, default_box_scales(1.0));
  if (!(sfit.estimate >= 0.95 && sfit.estimate <= 1.05))
    o.fail("segment estimate " + fmt(sfit.estimate) + " outside [0.95,1.05]");
  return o;
}

// --- 08: balance residual convergence and frame covariance -------------------

Outcome check_balance() {
  Outcome o;
  FormField rho(2), J(1), s(3);
  rho.comp_by_mask(6) = FormComponent(ScalarFn([](double t, double x1, double x2) {
    return std::sin(t) * x1 + 0.5 * x2 * x2 * std::cos(t);
  }));
  J.comp_by_mask(2) = FormComponent(ScalarFn([](double t, double, double x2) {
    return t * t * std::sin(x2);
  }));
  J.comp_by_mask(4) = FormComponent(ScalarFn([](double t, double x1, double x2) {
    return std::cos(t) * x1 * x2;
  }));
  s.comp(0) = FormComponent(ScalarFn([](double t, double x1, double x2) {
    return std::cos(t) * x1 - 0.5 * x2 * x2 * std::sin(t) + std::cos(t) * x2 -
           t * t * std::cos(x2);
  }));

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> uni(0.2, 0.8);
  std::vector<std::array<double, 3>> pts;
  for (int i = 0; i < 200; ++i) pts.push_back({uni(rng), uni(rng), uni(rng)});

  std::vector<double> hs, res;
  for (int k = 0; k < 4; ++k) {
    const double h = 0.1 / std::pow(2.0, k);
    hs.push_back(h);
    res.push_back(balance_residual(rho, J, s, h, pts).max_abs);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < hs.size(); ++k) {
    const double x = std::log(hs[k]), y = std::log(res[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(hs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.expect(slope >= 1.8, "residual slope " + fmt(slope) + " below 1.8");

  FrameMap frame;
  frame.forward = [](double t, double x1, double x2) {
    return std::array<double, 3>{t, x1 - 0.7 * t, x2 + 0.4 * t};
  };
  frame.inverse = [](double tp, double y1, double y2) {
    return std::array<double, 3>{tp, y1 + 0.7 * tp, y2 - 0.4 * tp};
  };
  frame.inverse_velocity = [](double, double, double) {
    return std::array<double, 2>{0.7, -0.4};
  };
  const FormField J4 = flux_from_density(rho, J);
  const auto rep = frame_transform(J4, frame, 1e-6, pts);
  o.expect(rep.max_discrepancy < 1e-8,
           "frame discrepancy " + fmt(rep.max_discrepancy));
  return o;
}

// --- 09: boundary integrals match volume integrals ---------------------------

Outcome check_stokes() {
  Outcome o;
  const Mesh3 m = Mesh3::box({0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, 2, 3, 2);

  FormField w(2);
  w.comp_by_mask(6) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));  // t dx1^dx2
  const double flux = integrate_boundary(m, w, 6);
  o.expect(rel_err(flux, 1.0) < 1e-6, "cube flux " + fmt(flux) + ", want 1");

  FormField jj(2);
  jj.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
  FormField phi(0);
  phi.comp(0) = FormComponent(Poly3::monomial(1.0, 1, 0, 0));
  const SourceSplit sp = source_current(m, jj, phi, 6);
  o.expect(std::abs(sp.total - 1.0) < 1e-6, "split total " + fmt(sp.total));
  o.expect(std::abs(sp.boundary_part - 1.0) < 1e-6,
           "split boundary " + fmt(sp.boundary_part));
  o.expect(std::abs(sp.volume_part) < 1e-6, "split volume " + fmt(sp.volume_part));

  for (const int r : {1, 2}) {
    const IdentityCheckResult idc = current_boundary_identity_check(r, 13);
    if (!(idc.max_error < 1e-6 * std::max(1.0, idc.max_scale)))
      o.fail("identity battery r=" + std::to_string(r) + " error " +
             fmt(idc.max_error));
  }
  return o;
}

// --- 10: worldlines ----------------------------------------------------------

Outcome check_worldlines() {
  Outcome o;
  FormField J4(2);
  J4.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
  J4.comp_by_mask(3) = FormComponent(Poly3::constant(0.3));   // drift (x1 speed .. )
  J4.comp_by_mask(5) = FormComponent(Poly3::constant(-0.8));
  FormField theta(3);
  theta.comp(0) = FormComponent(Poly3::constant(1.0));

  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::array<double, 3> seed{0.0, 0.1 + 0.25 * i, 0.1 + 0.25 * j};
      const auto res = worldline_trace(J4, theta, seed, 1.0, 0.01);
      const auto& p0 = res.points.front();
      const auto& pe = res.points.back();
      const double d[3] = {pe[0] - p0[0], pe[1] - p0[1], pe[2] - p0[2]};
      const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      for (const auto& q : res.points) {
        const double w[3] = {q[0] - p0[0], q[1] - p0[1], q[2] - p0[2]};
        const double cx = w[1] * d[2] - w[2] * d[1];
        const double cy = w[2] * d[0] - w[0] * d[2];
        const double cz = w[0] * d[1] - w[1] * d[0];
        worst = std::max(worst, std::sqrt(cx * cx + cy * cy + cz * cz) / dn);
      }
    }
  }
  o.expect(worst < 1e-8, "chord deviation " + fmt(worst));

  // rescaling the volume form must not move the traces
  FormField theta2(3);
  theta2.comp(0) = FormComponent(Poly3::constant(3.7));
  const std::array<double, 3> seed{0.0, 0.4, 0.6};
  const auto a = worldline_trace(J4, theta, seed, 1.0, 0.01);
  const auto b = worldline_trace(J4.scaled(3.7), theta2, seed, 1.0, 0.01);
  if (a.points.size() != b.points.size()) {
    o.fail("rescaled trace changed length");
  } else {
    double dmax = 0.0;
    for (size_t k = 0; k < a.points.size(); ++k)
      for (int c = 0; c < 3; ++c)
        dmax = std::max(dmax, std::abs(a.points[k][c] - b.points[k][c]));
    o.expect(dmax < 1e-6, "rescaled trace deviation " + fmt(dmax));
  }
  return o;
}

// --- 11: conformal region evolution ------------------------------------------

Outcome check_conformal() {
  Outcome o;
  {
    const auto boundary = circle_points(4096);
    const RiemannMap M = fit_riemann_map(boundary);
    const CrResidual cr = cr_residual(M);
    o.expect(cr.rms < 1e-8, "identity map residual rms " + fmt(cr.rms));
    double dev = 0.0;
    for (int i = 0; i < 4096; ++i) {
      const double th = 2.0 * M_PI * (i + 0.37) / 4096.0;
      const Point2 p = M.map_point(std::polar(1.0, th));
      dev = std::max(dev, std::abs(std::hypot(p.x, p.y) - 1.0));
    }
    o.expect(dev < 1e-6, "identity boundary deviation " + fmt(dev));
  }
  {
    const KochBuild b = koch_build({1.0, 1.0, false}, 2, -1.0);
    const auto boundary = resample_closed(b.curve.pts, 1536);
    const RiemannMap M = fit_riemann_map(boundary);
    const CrResidual cr = cr_residual(M);
    o.expect(cr.rms < 1e-3, "snowflake map residual rms " + fmt(cr.rms));

    for (const auto [ti, to] : {std::pair{1.2, 1.5}, {1.5, 1.9}}) {
      const NestingReport rep = nesting_check(M, ti, to);
      if (rep.fraction < 0.999)
        o.fail("nesting " + fmt(ti) + "<" + fmt(to) + " fraction " +
               fmt(rep.fraction));
    }

    const LimitReport lim = boundary_limit(M, boundary, {1.5, 1.9, 1.99});
    o.expect(lim.monotone_decreasing, "boundary gap is not shrinking");
  }
  return o;
}

// --- 12: command line determinism and exit discipline ------------------------

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + FGT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return "<unreadable " + p.string() + ">";
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome check_cli() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "fgt_acceptance";
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";

  o.expect(run_cli("koch --level 3 --out " + a.string()) == 0,
           "koch run exited nonzero");
  o.expect(run_cli("koch --level 3 --out " + b.string()) == 0,
           "koch rerun exited nonzero");
  for (const char* name : {"summary.json", "chain.json", "koch.svg"})
    if (slurp(a / name) != slurp(b / name))
      o.fail(std::string(name) + " differs between identical runs");

  try {
    std::ifstream f(a / "summary.json");
    njson j;
    f >> j;
    for (const char* key : {"mode", "level", "perimeter", "records", "area"})
      if (!j.contains(key)) o.fail(std::string("summary lacks ") + key);
    std::ifstream g(a / "chain.json");
    njson cj;
    g >> cj;
    const Chain chain = chain_from_json(cj);
    o.expect(chain.dim() == 1 && chain.size() == 3 * 64,
             "chain file shape is wrong");
  } catch (const std::exception& e) {
    o.fail(std::string("emitted json is invalid: ") + e.what());
  }

  o.expect(run_cli("koch --time 1.5 --out " + (root / "bad").string()) != 0,
           "out-of-range time was accepted");
  // a postcondition violation must be reported through the exit code
  const Chain two = Chain::single(1.0, Simplex::triangle({0, 0}, {1, 0}, {0, 1}));
  fs::create_directories(root / "in");
  std::ofstream(root / "in" / "two.json") << chain_to_json(two).dump();
  o.expect(run_cli("flatnorm --chain " + (root / "in" / "two.json").string() +
                   " --out " + (root / "bad2").string()) != 0,
           "wrong-dimension chain was accepted");
  o.expect(run_cli("dimension --chain " + (root / "in" / "missing.json").string() +
                   " --out " + (root / "bad3").string()) != 0,
           "missing input file was accepted");
  return o;
}

struct Criterion {
  const char* name;
  Outcome (*fn)();
  double budget_seconds;  // 0: no stated budget
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"boundary of a boundary vanishes on random chains", check_boundary_squared, 10},
      {"triangle flat norm matches the closed form", check_triangle_flatnorm, 60},
      {"snowflake stage counting and mass formulas", check_stage_counting, 30},
      {"successive stages are Cauchy in the flat distance", check_cauchy_tail, 300},
      {"growth schedule timing and continuity", check_growth_schedule, 0},
      {"bounded area with unbounded perimeter", check_area_perimeter, 0},
      {"box-counting dimension estimates", check_box_dimension, 60},
      {"balance residual convergence and frame covariance", check_balance, 0},
      {"boundary integrals match volume integrals", check_stokes, 0},
      {"worldlines are straight and rescale-invariant", check_worldlines, 0},
      {"conformal evolution toward the target boundary", check_conformal, 600},
      {"command line determinism and exit discipline", check_cli, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds)
      o.fail("took " + fmt(secs) + "s, budget " + fmt(c.budget_seconds) + "s");
    if (o.ok) {
      std::printf("PASS  %-52s (%.1fs)\n", c.name, secs);
    } else {
      std::printf("FAIL  %-52s (%.1fs): %s\n", c.name, secs, o.detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance checks passed\n", std::size(criteria));
  else
    std::printf("%d acceptance check(s) failed\n", failures);
  return failures;
}
