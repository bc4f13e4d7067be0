// fgt: command line surface for the fractal growth toolkit.
// Subcommands: koch, flatnorm, dimension, balance, worldlines, conformal,
// cantor. All outputs are deterministic; exit code 0 means every
// postcondition of the invoked operation held.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgt/boxdim.hpp"
#include "fgt/chain.hpp"
#include "fgt/conformal.hpp"
#include "fgt/currents.hpp"
#include "fgt/flatnorm.hpp"
#include "fgt/forms.hpp"
#include "fgt/growth.hpp"
#include "fgt/jsonio.hpp"
#include "fgt/svg.hpp"

namespace {

struct Shared {
  std::string out = ".";
  unsigned seed = 1;
  bool deterministic = false;  // outputs are always deterministic; kept for
                               // config compatibility
};

void write_file(const Shared& sh, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(sh.out);
  const auto path = std::filesystem::path(sh.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const Shared& sh, const std::string& name,
                const fgt::njson& j) {
  write_file(sh, name, j.dump(2) + "\n");
}

fgt::njson read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  fgt::njson j;
  f >> j;
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("postcondition failed: " + what);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

// --- koch -----------------------------------------------------------------

struct KochArgs {
  int level = -1;
  double time = -1.0;
  double scale = 1.0;
  double rho = 1.0;
  bool single_edge = false;
  int frames = 0;
};

void run_koch(const Shared& sh, const KochArgs& a) {
  if (a.level < 0 && a.time < 0.0)
    throw CLI::ValidationError("koch", "pass --level N or --time t");
  fgt::KochParams p{a.scale, a.rho, a.single_edge};
  fgt::njson summary;
  fgt::SvgWriter svg;

  if (a.level >= 0) {
    const fgt::KochBuild build = fgt::koch_build(p, a.level, -1.0);
    const fgt::Chain chain = fgt::chain_from_curve(build.curve);
    const double perimeter = chain.mass();
    summary["mode"] = "stage";
    summary["level"] = a.level;
    summary["perimeter"] = perimeter;
    summary["mass"] = perimeter;
    fgt::njson recs = fgt::njson::array();
    for (const auto& r : build.records) {
      recs.push_back({{"level", r.level},
                      {"triangles", r.triangles},
                      {"side_length", r.side_length},
                      {"new_sides_total", r.new_sides_total}});
      const double expect_tris =
          (a.single_edge ? 1.0 : 3.0) * std::pow(4.0, r.level - 1);
      require(r.triangles == static_cast<long long>(expect_tris),
              "triangle count per level");
      require(rel_err(r.side_length, std::pow(3.0, -r.level) * a.scale) < 1e-12,
              "new side length per level");
    }
    summary["records"] = recs;
    if (!a.single_edge) {
      const double area = fgt::koch_filled(p, a.level).mass();
      summary["area"] = area;
      if (a.rho == 1.0) {
        const double limit =
            2.0 * std::sqrt(3.0) / 5.0 * a.scale * a.scale;
        require(area <= limit + 1e-9, "area stays below the limit");
        require(rel_err(perimeter,
                        3.0 * std::pow(4.0 / 3.0, a.level) * a.scale) < 1e-10,
                "perimeter formula");
      }
    }
    write_json(sh, "chain.json", fgt::chain_to_json(chain));
    svg.add_polyline(build.curve.pts, build.curve.closed);
  } else {
    if (!(a.time > 0.0 && a.time < 1.0))
      throw CLI::ValidationError("koch", "--time must lie in (0,1)");
    const fgt::GrowingChainState st = fgt::chain_at_time(p, a.time);
    summary["mode"] = "time";
    summary["t"] = a.time;
    summary["finished_levels"] = st.finished_levels;
    summary["active_height"] = st.active_height;
    summary["active_triangles"] = st.active_triangles;
    summary["perimeter"] = st.chain.mass();
    summary["mass"] = st.chain.mass();
    if (!a.single_edge) summary["area"] = fgt::filled_at_time(p, a.time).mass();
    write_json(sh, "chain.json", fgt::chain_to_json(st.chain));
    const fgt::KochBuild build = fgt::koch_build_at_time(p, a.time);
    svg.add_polyline(build.curve.pts, build.curve.closed);
  }
  write_file(sh, "koch.svg", svg.str());
  write_json(sh, "summary.json", summary);

  for (int k = 0; k < a.frames; ++k) {
    const double t =
        a.frames == 1 ? 0.5 : 0.30 + (0.98 - 0.30) * k / (a.frames - 1);
    const fgt::KochBuild b = fgt::koch_build_at_time(p, t);
    fgt::SvgWriter frame;
    frame.add_polyline(b.curve.pts, b.curve.closed);
    char name[48];
    std::snprintf(name, sizeof name, "koch_frame_%03d.svg", k);
    write_file(sh, name, frame.str());
  }
}

// --- flatnorm ---------------------------------------------------------------

struct FlatnormArgs {
  std::string chain_file;
  int refine = 0;
  double pad = 0.25;
};

void run_flatnorm(const Shared& sh, const FlatnormArgs& a) {
  const fgt::Chain B = fgt::chain_from_json(read_json_file(a.chain_file));
  if (B.dim() != 1)
    throw CLI::ValidationError("flatnorm", "input must be a 1-chain");
  fgt::njson out;
  out["refine"] = a.refine;
  if (B.is_empty()) {
    out["value"] = 0.0;
    out["filling"] = fgt::chain_to_json(fgt::Chain::empty(2));
    out["residual"] = fgt::chain_to_json(fgt::Chain::empty(1));
    write_json(sh, "flatnorm.json", out);
    return;
  }
  const fgt::AmbientComplex K =
      fgt::make_carrier_complex({&B}, a.pad, a.refine);
  const fgt::FlatNormResult res = fgt::flat_norm(B, K);
  require(res.value >= -fgt::kLpTol, "flat norm is nonnegative");
  require(res.value <= B.mass() + fgt::kLpTol,
          "flat norm bounded by the mass");
  const fgt::Chain recon = fgt::combine(
      1.0, res.residual, 1.0,
      res.filling.is_empty() ? fgt::Chain::empty(1) : res.filling.boundary());
  require(fgt::chain_equal(recon, B), "residual plus filling boundary");
  out["value"] = res.value;
  out["filling"] = fgt::chain_to_json(res.filling);
  out["residual"] = fgt::chain_to_json(res.residual);
  write_json(sh, "flatnorm.json", out);
}

// --- dimension --------------------------------------------------------------

struct DimensionArgs {
  std::string chain_file;
  std::string scales_csv;
};

void run_dimension(const Shared& sh, const DimensionArgs& a) {
  const fgt::Chain c = fgt::chain_from_json(read_json_file(a.chain_file));
  std::vector<double> scales;
  if (!a.scales_csv.empty()) {
    scales = parse_list(a.scales_csv);
  } else {
    const fgt::BBox bb = c.bbox();
    scales = fgt::default_box_scales(std::max(bb.width(), bb.height()));
  }
  const fgt::DimensionFit fit = fgt::box_dimension(c, scales);
  require(std::isfinite(fit.estimate), "finite dimension estimate");
  std::ostringstream csv;
  csv << "scale,count\n";
  for (const auto& row : fit.table) {
    char line[80];
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", row.scale, row.count);
    csv << line;
  }
  write_file(sh, "dimension.csv", csv.str());
  write_json(sh, "dimension.json", fgt::dimension_to_json(fit));
}

// --- balance ----------------------------------------------------------------

struct BalanceArgs {
  std::string manufactured = "default";
  double h0 = 0.1;
  int levels = 4;
  int samples = 200;
  double boost1 = 0.7;
  double boost2 = -0.4;
};

void run_balance(const Shared& sh, const BalanceArgs& a) {
  if (a.manufactured != "default")
    throw CLI::ValidationError("balance", "unknown manufactured case");
  using fgt::FormComponent;
  using fgt::FormField;
  using fgt::ScalarFn;

  // manufactured fields with a known exact source
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
    return std::cos(t) * x1 - 0.5 * x2 * x2 * std::sin(t) +
           std::cos(t) * x2 - t * t * std::cos(x2);
  }));

  std::mt19937 rng(static_cast<unsigned>(sh.seed));
  std::uniform_real_distribution<double> uni(0.2, 0.8);
  std::vector<std::array<double, 3>> pts;
  pts.reserve(a.samples);
  for (int i = 0; i < a.samples; ++i)
    pts.push_back({uni(rng), uni(rng), uni(rng)});

  fgt::njson report;
  std::vector<double> hs, residuals;
  for (int k = 0; k < a.levels; ++k) {
    const double h = a.h0 / std::pow(2.0, k);
    const auto st = fgt::balance_residual(rho, J, s, h, pts);
    hs.push_back(h);
    residuals.push_back(st.max_abs);
  }
  report["h"] = hs;
  report["max_residual"] = residuals;
  fgt::njson orders = fgt::njson::array();
  for (size_t k = 1; k < residuals.size(); ++k)
    orders.push_back(std::log2(residuals[k - 1] / residuals[k]));
  report["orders"] = orders;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < hs.size(); ++k) {
    const double x = std::log(hs[k]), y = std::log(residuals[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(hs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report["slope"] = slope;

  // frame covariance under a constant-velocity boost
  const double v1 = a.boost1, v2 = a.boost2;
  fgt::FrameMap frame;
  frame.forward = [v1, v2](double t, double x1, double x2) {
    return std::array<double, 3>{t, x1 - v1 * t, x2 - v2 * t};
  };
  frame.inverse = [v1, v2](double tp, double y1, double y2) {
    return std::array<double, 3>{tp, y1 + v1 * tp, y2 + v2 * tp};
  };
  frame.inverse_velocity = [v1, v2](double, double, double) {
    return std::array<double, 2>{v1, v2};
  };
  const FormField J4 = fgt::flux_from_density(rho, J);
  const auto rep = fgt::frame_transform(J4, frame, 1e-6, pts);
  report["frame_discrepancy"] = rep.max_discrepancy;

  write_json(sh, "balance.json", report);
  require(slope >= 1.8, "second-order convergence of the residual");
  require(rep.max_discrepancy < 1e-8, "frame transformation consistency");
}

// --- worldlines --------------------------------------------------------------

struct WorldlineArgs {
  std::string flux = "dx";
  int grid = 4;
  double t0 = 0.0, t1 = 1.0, step = 0.01;
};

void run_worldlines(const Shared& sh, const WorldlineArgs& a) {
  using fgt::FormComponent;
  using fgt::FormField;
  using fgt::Poly3;

  FormField J4(2);
  bool expect_straight = false;
  if (a.flux == "dx") {
    J4.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
    expect_straight = true;
  } else if (a.flux.rfind("drift:", 0) == 0) {
    const auto cs = parse_list(a.flux.substr(6));
    if (cs.size() != 2)
      throw CLI::ValidationError("worldlines", "drift wants drift:c1,c2");
    J4.comp_by_mask(6) = FormComponent(Poly3::constant(1.0));
    J4.comp_by_mask(3) = FormComponent(Poly3::constant(cs[1]));   // +c2 dt^dx1
    J4.comp_by_mask(5) = FormComponent(Poly3::constant(-cs[0]));  // -c1 dt^dx2
    expect_straight = true;
  } else {
    J4 = fgt::form_from_json(read_json_file(a.flux));
    if (J4.degree() != 2)
      throw CLI::ValidationError("worldlines", "flux form must have degree 2");
  }
  FormField theta(3);
  theta.comp(0) = FormComponent(Poly3::constant(1.0));

  fgt::njson traces = fgt::njson::array();
  fgt::SvgWriter svg;
  double max_deviation = 0.0;
  for (int i = 0; i < a.grid; ++i) {
    for (int j = 0; j < a.grid; ++j) {
      const double x1 = 0.1 + 0.8 * i / std::max(1, a.grid - 1);
      const double x2 = 0.1 + 0.8 * j / std::max(1, a.grid - 1);
      const auto res = fgt::worldline_trace(J4, theta, {a.t0, x1, x2}, a.t1,
                                            a.step);
      fgt::njson pts = fgt::njson::array();
      std::vector<fgt::Point2> txy;
      for (const auto& p : res.points) {
        pts.push_back({p[0], p[1], p[2]});
        txy.push_back({p[0], p[1]});
      }
      traces.push_back({{"seed", {a.t0, x1, x2}},
                        {"points", pts},
                        {"degenerate", res.degenerate},
                        {"spacelike", res.spacelike}});
      svg.add_polyline(txy, false);
      // deviation from the straight chord in (t,x1,x2)
      if (res.points.size() >= 3) {
        const auto& p0 = res.points.front();
        const auto& pe = res.points.back();
        const double d[3] = {pe[0] - p0[0], pe[1] - p0[1], pe[2] - p0[2]};
        const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        for (const auto& q : res.points) {
          const double w[3] = {q[0] - p0[0], q[1] - p0[1], q[2] - p0[2]};
          const double cx = w[1] * d[2] - w[2] * d[1];
          const double cy = w[2] * d[0] - w[0] * d[2];
          const double cz = w[0] * d[1] - w[1] * d[0];
          max_deviation = std::max(
              max_deviation,
              std::sqrt(cx * cx + cy * cy + cz * cz) / std::max(dn, 1e-300));
        }
      }
    }
  }
  fgt::njson out;
  out["flux"] = a.flux;
  out["traces"] = traces;
  out["max_chord_deviation"] = max_deviation;
  write_json(sh, "worldlines.json", out);
  write_file(sh, "worldlines.svg", svg.str());
  if (expect_straight)
    require(max_deviation < 1e-8, "worldlines of a uniform flux are straight");
}

// --- conformal ---------------------------------------------------------------

struct ConformalArgs {
  std::string target = "circle";
  std::string times_csv = "1.2,1.5,1.9";
  int points = 0;  // 0: per-target default
};

void run_conformal(const Shared& sh, const ConformalArgs& a) {
  std::vector<fgt::Point2> boundary;
  bool is_circle = false;
  if (a.target == "circle") {
    boundary = fgt::circle_points(a.points > 0 ? a.points : 4096);
    is_circle = true;
  } else if (a.target.rfind("koch", 0) == 0 && a.target.size() == 5 &&
             std::isdigit(static_cast<unsigned char>(a.target[4]))) {
    const int lvl = a.target[4] - '0';
    const fgt::KochBuild b = fgt::koch_build({1.0, 1.0, false}, lvl, -1.0);
    boundary = fgt::resample_closed(b.curve.pts,
                                    a.points > 0 ? a.points : 1536);
  } else {
    const fgt::njson j = read_json_file(a.target);
    for (const auto& p : j.at("points"))
      boundary.push_back({p[0].get<double>(), p[1].get<double>()});
    if (a.points > 0) boundary = fgt::resample_closed(boundary, a.points);
  }
  const std::vector<double> times = parse_list(a.times_csv);
  if (times.empty())
    throw CLI::ValidationError("conformal", "need at least one time");
  for (double t : times)
    if (!(t > 0.0 && t < 2.0))
      throw CLI::ValidationError("conformal", "times must lie in (0,2)");

  const fgt::RiemannMap M = fgt::fit_riemann_map(boundary);
  const fgt::CrResidual cr = fgt::cr_residual(M);

  fgt::njson out;
  out["target"] = a.target;
  out["boundary_points"] = boundary.size();
  out["cr_rms"] = cr.rms;
  out["cr_max"] = cr.max_abs;

  fgt::SvgWriter svg;
  svg.add_polyline(boundary, true, "#999999", 0.004);
  fgt::njson curves = fgt::njson::array();
  std::vector<std::vector<fgt::Point2>> rings;
  for (double t : times) {
    rings.push_back(fgt::evolve_region(M, t));
    svg.add_polyline(rings.back(), true);
    curves.push_back(fgt::polyline_to_json(rings.back(), true));
  }
  out["curves"] = curves;

  fgt::njson nesting = fgt::njson::array();
  double min_fraction = 1.0;
  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());
  for (size_t i = 0; i + 1 < sorted_times.size(); ++i) {
    const auto rep = fgt::nesting_check(M, sorted_times[i], sorted_times[i + 1]);
    nesting.push_back({{"t_inner", sorted_times[i]},
                       {"t_outer", sorted_times[i + 1]},
                       {"fraction", rep.fraction}});
    min_fraction = std::min(min_fraction, rep.fraction);
  }
  out["nesting"] = nesting;

  const fgt::LimitReport lim = fgt::boundary_limit(M, boundary, sorted_times);
  out["hausdorff"] = lim.hausdorff;
  out["hausdorff_monotone"] = lim.monotone_decreasing;

  if (is_circle) {
    double dev = 0.0;
    const int m = 2048;
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * M_PI * (i + 0.31) / m;
      const fgt::Point2 p = M.map_point(std::polar(1.0, th));
      dev = std::max(dev, std::abs(std::hypot(p.x, p.y) - 1.0));
    }
    out["radial_deviation"] = dev;
    // the target is a polygon approximating the circle, so allow its sagitta
    const double chord = 1.0 - std::cos(M_PI / static_cast<double>(boundary.size()));
    require(dev < std::max(1e-6, 3.0 * chord), "identity target boundary accuracy");
    require(cr.rms < 1e-8, "analyticity of the identity map");
  }
  write_json(sh, "conformal.json", out);
  write_file(sh, "conformal.svg", svg.str());
  require(min_fraction >= 0.999, "evolved regions nest");
}

// --- cantor ------------------------------------------------------------------

struct CantorArgs {
  double t = 1.0;
  double alpha = 1.0 / 3.0;
  int level = 4;
};

void run_cantor(const Shared& sh, const CantorArgs& a) {
  const fgt::CantorGrowth g = fgt::cantor_growth(a.t, {a.alpha, a.level});
  fgt::njson out;
  out["t"] = a.t;
  out["alpha"] = a.alpha;
  out["level"] = a.level;
  out["total_length"] = g.total_length;
  out["swept_mass"] = g.swept_mass;
  out["swept"] = fgt::chain_to_json(g.swept);
  write_json(sh, "cantor.json", out);
  fgt::SvgWriter svg;
  for (size_t i = 0; i < g.swept.size(); ++i) {
    const fgt::Simplex& s = g.swept.simplex(i);
    svg.add_polygon({s[0], s[1], s[2]});
  }
  svg.add_polyline({{0.0, 0.0}, {1.0, 0.0}}, false, "#333333", 0.004);
  write_file(sh, "cantor.svg", svg.str());
  require(rel_err(g.total_length, std::pow(1.0 - a.alpha, a.level)) < 1e-12,
          "kept length at the level");
  if (a.t > fgt::kGeomTol)
    require(rel_err(g.swept_mass, a.t * g.total_length) < 1e-9,
            "swept area equals height times kept length");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal growth toolkit"};
  app.set_config("--config");
  app.fallthrough();
  app.require_subcommand(1);

  Shared sh;
  app.add_option("--out", sh.out, "output directory")->capture_default_str();
  app.add_option("--seed", sh.seed, "seed for randomized sampling")
      ->capture_default_str();
  app.add_flag("--deterministic", sh.deterministic,
               "kept for config compatibility; outputs are always deterministic");

  KochArgs ka;
  auto* koch = app.add_subcommand("koch", "snowflake stages and growth");
  koch->add_option("--level", ka.level, "finished construction level");
  koch->add_option("--time", ka.time, "growth time in (0,1)");
  koch->add_option("--scale", ka.scale, "seed triangle side")->capture_default_str();
  koch->add_option("--rho", ka.rho, "bump height ratio")->capture_default_str();
  koch->add_flag("--single-edge", ka.single_edge, "grow one segment instead");
  koch->add_option("--frames", ka.frames, "emit numbered growth frames");
  koch->callback([&] { run_koch(sh, ka); });

  FlatnormArgs fa;
  auto* fn = app.add_subcommand("flatnorm", "flat norm of a 1-chain");
  fn->add_option("--chain", fa.chain_file, "chain json file")->required();
  fn->add_option("--refine", fa.refine, "uniform refinements")->capture_default_str();
  fn->add_option("--pad", fa.pad, "box padding fraction")->capture_default_str();
  fn->callback([&] { run_flatnorm(sh, fa); });

  DimensionArgs da;
  auto* dim = app.add_subcommand("dimension", "box-counting dimension");
  dim->add_option("--chain", da.chain_file, "chain json file")->required();
  dim->add_option("--scales", da.scales_csv, "comma-separated cell sizes");
  dim->callback([&] { run_dimension(sh, da); });

  BalanceArgs ba;
  auto* bal = app.add_subcommand("balance", "balance-law convergence study");
  bal->add_option("--manufactured", ba.manufactured, "case name")
      ->capture_default_str();
  bal->add_option("--h0", ba.h0, "coarsest stencil width")->capture_default_str();
  bal->add_option("--levels", ba.levels, "halving levels")->capture_default_str();
  bal->add_option("--samples", ba.samples, "sample count")->capture_default_str();
  bal->callback([&] { run_balance(sh, ba); });

  WorldlineArgs wa;
  auto* wl = app.add_subcommand("worldlines", "integral curves of a flux");
  wl->add_option("--flux", wa.flux, "dx | drift:c1,c2 | form json file")
      ->capture_default_str();
  wl->add_option("--grid", wa.grid, "seeds per axis")->capture_default_str();
  wl->add_option("--t0", wa.t0, "start time")->capture_default_str();
  wl->add_option("--t1", wa.t1, "end time")->capture_default_str();
  wl->add_option("--step", wa.step, "integration step")->capture_default_str();
  wl->callback([&] { run_worldlines(sh, wa); });

  ConformalArgs ca;
  auto* conf = app.add_subcommand("conformal", "region evolution by a disk map");
  conf->add_option("--target", ca.target,
                   "circle | koch<level> | polyline json file")
      ->capture_default_str();
  conf->add_option("--times", ca.times_csv, "comma-separated times in (0,2)")
      ->capture_default_str();
  conf->add_option("--points", ca.points, "boundary sample count");
  conf->callback([&] { run_conformal(sh, ca); });

  CantorArgs cta;
  auto* can = app.add_subcommand("cantor", "swept set over a middle-cut base");
  can->add_option("--t", cta.t, "sweep height")->capture_default_str();
  can->add_option("--alpha", cta.alpha, "removed middle fraction")
      ->capture_default_str();
  can->add_option("--level", cta.level, "construction level")->capture_default_str();
  can->callback([&] { run_cantor(sh, cta); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
