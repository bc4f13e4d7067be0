#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace fgt {

/// Polynomial in the spacetime chart coordinates (t, x1, x2), kept as a
/// normalized term list so derivatives and products are exact.
class Poly3 {
 public:
  struct Term {
    double c = 0.0;
    int et = 0, e1 = 0, e2 = 0;
  };

  Poly3() = default;
  explicit Poly3(std::vector<Term> terms) : terms_(std::move(terms)) {
    normalize();
  }
  static Poly3 constant(double c) { return Poly3({{c, 0, 0, 0}}); }
  static Poly3 monomial(double c, int et, int e1, int e2) {
    return Poly3({{c, et, e1, e2}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double eval(double t, double x1, double x2) const {
    double s = 0.0;
    for (const auto& tm : terms_)
      s += tm.c * ipow(t, tm.et) * ipow(x1, tm.e1) * ipow(x2, tm.e2);
    return s;
  }

  Poly3 derivative(int axis) const {
    std::vector<Term> out;
    for (const auto& tm : terms_) {
      Term d = tm;
      int& e = axis == 0 ? d.et : (axis == 1 ? d.e1 : d.e2);
      if (e == 0) continue;
      d.c *= e;
      e -= 1;
      out.push_back(d);
    }
    return Poly3(std::move(out));
  }

  Poly3 operator+(const Poly3& o) const {
    std::vector<Term> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return Poly3(std::move(out));
  }
  Poly3 operator-(const Poly3& o) const { return *this + o.scaled(-1.0); }
  Poly3 operator*(const Poly3& o) const {
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        out.push_back({a.c * b.c, a.et + b.et, a.e1 + b.e1, a.e2 + b.e2});
    return Poly3(std::move(out));
  }
  Poly3 scaled(double f) const {
    std::vector<Term> out = terms_;
    for (auto& tm : out) tm.c *= f;
    return Poly3(std::move(out));
  }

 private:
  static double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return std::tie(a.et, a.e1, a.e2) < std::tie(b.et, b.e1, b.e2);
    });
    std::vector<Term> out;
    for (const auto& tm : terms_) {
      if (!out.empty() && out.back().et == tm.et && out.back().e1 == tm.e1 &&
          out.back().e2 == tm.e2)
        out.back().c += tm.c;
      else
        out.push_back(tm);
    }
    std::erase_if(out, [](const Term& t) { return t.c == 0.0; });
    terms_ = std::move(out);
  }
  std::vector<Term> terms_;
};

using ScalarFn = std::function<double(double, double, double)>;

/// One coefficient function of a form: either an exact polynomial or an
/// arbitrary evaluable closure.
struct FormComponent {
  Poly3 poly;
  ScalarFn fn;
  bool is_poly = true;

  FormComponent() = default;
  FormComponent(Poly3 p) : poly(std::move(p)) {}
  FormComponent(ScalarFn f) : fn(std::move(f)), is_poly(false) {}

  double eval(double t, double x1, double x2) const {
    return is_poly ? poly.eval(t, x1, x2) : fn(t, x1, x2);
  }
  bool vanishes() const { return is_poly && poly.is_zero(); }
};

namespace detail {

inline int popcount3(int m) { return ((m >> 0) & 1) + ((m >> 1) & 1) + ((m >> 2) & 1); }

/// Sign of sorting the concatenation dx^A ^ dx^B into ascending order;
/// zero when the index sets overlap. Axis bits: t=1, x1=2, x2=4.
inline int merge_sign(int A, int B) {
  if (A & B) return 0;
  int inv = 0;
  for (int b = 0; b < 3; ++b)
    if (B & (1 << b)) inv += popcount3(A & ~((1 << (b + 1)) - 1));
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// Differential form on the chart (t, x1, x2) of degree 0..3, stored as one
/// component per basis subset (subsets as bitmasks in ascending order, axis
/// bits t=1, x1=2, x2=4).
class FormField {
 public:
  explicit FormField(int degree) : degree_(validate(degree)) {
    comp_.resize(masks(degree_).size());
  }

  static const std::vector<int>& masks(int degree) {
    static const std::vector<int> m[4] = {
        {0}, {1, 2, 4}, {3, 5, 6}, {7}};
    return m[validate(degree)];
  }

  static std::string mask_name(int mask) {
    std::string s;
    if (mask & 1) s += 't';
    if (mask & 2) s += '1';
    if (mask & 4) s += '2';
    return s;
  }

  static int index_of_mask(int degree, int mask) {
    const auto& ms = masks(degree);
    for (size_t i = 0; i < ms.size(); ++i)
      if (ms[i] == mask) return static_cast<int>(i);
    return -1;
  }

  int degree() const { return degree_; }
  int ncomp() const { return static_cast<int>(comp_.size()); }
  FormComponent& comp(int i) { return comp_[i]; }
  const FormComponent& comp(int i) const { return comp_[i]; }
  FormComponent& comp_by_mask(int mask) {
    return comp_[index_of_mask(degree_, mask)];
  }
  const FormComponent& comp_by_mask(int mask) const {
    return comp_[index_of_mask(degree_, mask)];
  }

  double eval_comp(int i, double t, double x1, double x2) const {
    return comp_[i].eval(t, x1, x2);
  }

  bool all_poly() const {
    for (const auto& c : comp_)
      if (!c.is_poly) return false;
    return true;
  }

  static FormField zero(int degree) { return FormField(degree); }

  static FormField from_polys(int degree, std::vector<Poly3> polys) {
    FormField f(degree);
    if (polys.size() != f.comp_.size())
      throw std::invalid_argument("component count mismatch");
    for (size_t i = 0; i < polys.size(); ++i)
      f.comp_[i] = FormComponent(std::move(polys[i]));
    return f;
  }

  static FormField constant(int degree, std::vector<double> vals) {
    FormField f(degree);
    if (vals.size() != f.comp_.size())
      throw std::invalid_argument("component count mismatch");
    for (size_t i = 0; i < vals.size(); ++i)
      f.comp_[i] = FormComponent(Poly3::constant(vals[i]));
    return f;
  }

  FormField operator+(const FormField& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
    FormField out(degree_);
    for (int i = 0; i < ncomp(); ++i) {
      if (comp_[i].is_poly && o.comp_[i].is_poly) {
        out.comp_[i] = FormComponent(comp_[i].poly + o.comp_[i].poly);
      } else {
        FormComponent a = comp_[i], b = o.comp_[i];
        out.comp_[i] = FormComponent(ScalarFn(
            [a, b](double t, double x1, double x2) {
              return a.eval(t, x1, x2) + b.eval(t, x1, x2);
            }));
      }
    }
    return out;
  }

  FormField scaled(double s) const {
    FormField out(degree_);
    for (int i = 0; i < ncomp(); ++i) {
      if (comp_[i].is_poly) {
        out.comp_[i] = FormComponent(comp_[i].poly.scaled(s));
      } else {
        FormComponent a = comp_[i];
        out.comp_[i] = FormComponent(ScalarFn(
            [a, s](double t, double x1, double x2) {
              return s * a.eval(t, x1, x2);
            }));
      }
    }
    return out;
  }

  FormField operator-(const FormField& o) const { return *this + o.scaled(-1.0); }

  /// Evaluation on two tangent vectors (degree-2 forms).
  double eval2(double t, double x1, double x2, const std::array<double, 3>& u,
               const std::array<double, 3>& v) const {
    if (degree_ != 2) throw std::invalid_argument("eval2 needs degree 2");
    double s = 0.0;
    for (size_t i = 0; i < comp_.size(); ++i) {
      const int mask = masks(2)[i];
      int a = -1, b = -1;
      for (int bit = 0; bit < 3; ++bit)
        if (mask & (1 << bit)) (a < 0 ? a : b) = bit;
      s += comp_[i].eval(t, x1, x2) * (u[a] * v[b] - u[b] * v[a]);
    }
    return s;
  }

  /// Evaluation on three tangent vectors (degree-3 forms).
  double eval3(double t, double x1, double x2, const std::array<double, 3>& u,
               const std::array<double, 3>& v,
               const std::array<double, 3>& w) const {
    if (degree_ != 3) throw std::invalid_argument("eval3 needs degree 3");
    const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) -
                       u[1] * (v[0] * w[2] - v[2] * w[0]) +
                       u[2] * (v[0] * w[1] - v[1] * w[0]);
    return comp_[0].eval(t, x1, x2) * det;
  }

 private:
  static int validate(int degree) {
    if (degree < 0 || degree > 3) throw std::invalid_argument("form degree");
    return degree;
  }
  int degree_;
  std::vector<FormComponent> comp_;
};

// --- algebra ----------------------------------------------------------------

inline FormField wedge(const FormField& F, const FormField& G) {
  const int deg = F.degree() + G.degree();
  if (deg > 3) throw std::invalid_argument("wedge degree exceeds 3");
  FormField out(deg);
  for (int oi = 0; oi < out.ncomp(); ++oi) {
    const int target = FormField::masks(deg)[oi];
    struct Pair {
      int sign, fi, gi;
    };
    std::vector<Pair> pairs;
    bool poly_ok = true;
    for (int fi = 0; fi < F.ncomp(); ++fi) {
      for (int gi = 0; gi < G.ncomp(); ++gi) {
        const int A = FormField::masks(F.degree())[fi];
        const int B = FormField::masks(G.degree())[gi];
        if ((A | B) != target || (A & B)) continue;
        const int sgn = detail::merge_sign(A, B);
        if (F.comp(fi).vanishes() || G.comp(gi).vanishes()) continue;
        pairs.push_back({sgn, fi, gi});
        poly_ok = poly_ok && F.comp(fi).is_poly && G.comp(gi).is_poly;
      }
    }
    if (pairs.empty()) continue;
    if (poly_ok) {
      Poly3 p;
      for (const auto& pr : pairs)
        p = p + (F.comp(pr.fi).poly * G.comp(pr.gi).poly).scaled(pr.sign);
      out.comp(oi) = FormComponent(std::move(p));
    } else {
      std::vector<std::tuple<int, FormComponent, FormComponent>> cap;
      for (const auto& pr : pairs)
        cap.push_back({pr.sign, F.comp(pr.fi), G.comp(pr.gi)});
      out.comp(oi) = FormComponent(ScalarFn(
          [cap](double t, double x1, double x2) {
            double s = 0.0;
            for (const auto& [sgn, a, b] : cap)
              s += sgn * a.eval(t, x1, x2) * b.eval(t, x1, x2);
            return s;
          }));
    }
  }
  return out;
}

/// Contraction with a coordinate direction: d_axis -| F, exact.
inline FormField contract_coordinate(const FormField& F, int axis) {
  if (F.degree() == 0) throw std::invalid_argument("cannot contract a 0-form");
  FormField out(F.degree() - 1);
  const int bit = 1 << axis;
  for (int fi = 0; fi < F.ncomp(); ++fi) {
    const int K = FormField::masks(F.degree())[fi];
    if (!(K & bit)) continue;
    const int below = detail::popcount3(K & (bit - 1));
    const double sgn = below % 2 == 0 ? 1.0 : -1.0;
    const int ti = FormField::index_of_mask(F.degree() - 1, K & ~bit);
    if (F.comp(fi).is_poly) {
      out.comp(ti) = FormComponent(out.comp(ti).poly + F.comp(fi).poly.scaled(sgn));
    } else {
      FormComponent prev = out.comp(ti), add = F.comp(fi);
      out.comp(ti) = FormComponent(ScalarFn(
          [prev, add, sgn](double t, double x1, double x2) {
            return prev.eval(t, x1, x2) + sgn * add.eval(t, x1, x2);
          }));
    }
  }
  return out;
}

/// Contraction with a vector field given by three component closures.
inline FormField contract_vector(const FormField& F,
                                 std::array<ScalarFn, 3> v) {
  if (F.degree() == 0) throw std::invalid_argument("cannot contract a 0-form");
  FormField out(F.degree() - 1);
  for (int axis = 0; axis < 3; ++axis) {
    const FormField part = contract_coordinate(F, axis);
    const ScalarFn vi = v[axis];
    for (int i = 0; i < part.ncomp(); ++i) {
      if (part.comp(i).vanishes()) continue;
      FormComponent prev = out.comp(i), add = part.comp(i);
      out.comp(i) = FormComponent(ScalarFn(
          [prev, add, vi](double t, double x1, double x2) {
            return prev.eval(t, x1, x2) + vi(t, x1, x2) * add.eval(t, x1, x2);
          }));
    }
  }
  return out;
}

/// Exterior derivative, exact on polynomial components.
inline FormField exterior_derivative_exact(const FormField& F) {
  if (F.degree() >= 3)
    throw std::invalid_argument("derivative of a top form is out of range");
  if (!F.all_poly())
    throw std::invalid_argument("exact derivative needs polynomial components");
  FormField out(F.degree() + 1);
  for (int fi = 0; fi < F.ncomp(); ++fi) {
    const int K = FormField::masks(F.degree())[fi];
    for (int axis = 0; axis < 3; ++axis) {
      const int bit = 1 << axis;
      if (K & bit) continue;
      const int sgn = detail::merge_sign(bit, K);
      const int ti = FormField::index_of_mask(F.degree() + 1, K | bit);
      out.comp(ti) = FormComponent(out.comp(ti).poly +
                                   F.comp(fi).poly.derivative(axis).scaled(sgn));
    }
  }
  return out;
}

/// Exterior derivative by central differences of width h.
inline FormField exterior_derivative(const FormField& F, double h = 1e-4) {
  if (F.degree() >= 3)
    throw std::invalid_argument("derivative of a top form is out of range");
  if (h <= 0.0) throw std::invalid_argument("stencil width must be positive");
  FormField out(F.degree() + 1);
  for (int oi = 0; oi < out.ncomp(); ++oi) {
    const int target = FormField::masks(F.degree() + 1)[oi];
    struct Part {
      int sign, axis;
      FormComponent comp;
    };
    std::vector<Part> parts;
    for (int fi = 0; fi < F.ncomp(); ++fi) {
      const int K = FormField::masks(F.degree())[fi];
      for (int axis = 0; axis < 3; ++axis) {
        const int bit = 1 << axis;
        if ((K & bit) || (K | bit) != target) continue;
        if (F.comp(fi).vanishes()) continue;
        parts.push_back({detail::merge_sign(bit, K), axis, F.comp(fi)});
      }
    }
    if (parts.empty()) continue;
    out.comp(oi) = FormComponent(ScalarFn(
        [parts, h](double t, double x1, double x2) {
          double s = 0.0;
          for (const auto& p : parts) {
            double hi, lo;
            if (p.axis == 0) {
              hi = p.comp.eval(t + h, x1, x2);
              lo = p.comp.eval(t - h, x1, x2);
            } else if (p.axis == 1) {
              hi = p.comp.eval(t, x1 + h, x2);
              lo = p.comp.eval(t, x1 - h, x2);
            } else {
              hi = p.comp.eval(t, x1, x2 + h);
              lo = p.comp.eval(t, x1, x2 - h);
            }
            s += p.sign * (hi - lo) / (2.0 * h);
          }
          return s;
        }));
  }
  return out;
}

// --- density, flux, balance ---------------------------------------------------

/// Splits a spacetime flux 2-form into the spatial density (vertical part)
/// and the frame-dependent spatial flux J = -d_t -| JJ, so JJ = rho - dt^J.
inline std::pair<FormField, FormField> density_and_flux(const FormField& J4) {
  if (J4.degree() != 2)
    throw std::invalid_argument("flux form must have degree 2");
  FormField rho(2);
  rho.comp_by_mask(6) = J4.comp_by_mask(6);
  const FormField J = contract_coordinate(J4, 0).scaled(-1.0);
  return {rho, J};
}

/// Rebuilds the spacetime flux from density and spatial flux: rho - dt^J.
inline FormField flux_from_density(const FormField& rho, const FormField& J) {
  FormField dt(1);
  dt.comp_by_mask(1) = FormComponent(Poly3::constant(1.0));
  return rho - wedge(dt, J);
}

struct ResidualStats {
  double max_abs = 0.0;
  double rms = 0.0;
  size_t samples = 0;
};

/// Pointwise balance residual rho_dot + d1 J2 - d2 J1 - s at the samples,
/// derivatives by central differences of width h.
inline ResidualStats balance_residual(
    const FormField& rho, const FormField& J, const FormField& s, double h,
    const std::vector<std::array<double, 3>>& samples) {
  if (rho.degree() != 2 || J.degree() != 1 || s.degree() != 3)
    throw std::invalid_argument("balance degrees: rho 2, J 1, source 3");
  ResidualStats st;
  st.samples = samples.size();
  double sq = 0.0;
  for (const auto& p : samples) {
    const double t = p[0], x1 = p[1], x2 = p[2];
    const auto& r = rho.comp_by_mask(6);
    const auto& j1 = J.comp_by_mask(2);
    const auto& j2 = J.comp_by_mask(4);
    const double rdot = (r.eval(t + h, x1, x2) - r.eval(t - h, x1, x2)) / (2 * h);
    const double d1j2 = (j2.eval(t, x1 + h, x2) - j2.eval(t, x1 - h, x2)) / (2 * h);
    const double d2j1 = (j1.eval(t, x1, x2 + h) - j1.eval(t, x1, x2 - h)) / (2 * h);
    const double res = rdot + d1j2 - d2j1 - s.comp(0).eval(t, x1, x2);
    st.max_abs = std::max(st.max_abs, std::abs(res));
    sq += res * res;
  }
  st.rms = samples.empty() ? 0.0 : std::sqrt(sq / samples.size());
  return st;
}

// --- frames -------------------------------------------------------------------

/// Time-preserving change of frame (t,x) -> (t, x'(t,x)) with its inverse and
/// the analytic velocities dx^i/dt' of the inverse motion.
struct FrameMap {
  std::function<std::array<double, 3>(double, double, double)> forward;
  std::function<std::array<double, 3>(double, double, double)> inverse;
  std::function<std::array<double, 2>(double, double, double)> inverse_velocity;
};

struct FrameCovarianceReport {
  FormField transformed;            // route via the transformation formula
  double max_discrepancy = 0.0;     // vs direct contraction with d'_t
};

namespace detail {

inline std::array<double, 2> fd_inverse_velocity(const FrameMap& fr, double t,
                                                 double x1, double x2,
                                                 double h) {
  const auto pr = fr.forward(t, x1, x2);
  const auto hi = fr.inverse(pr[0] + h, pr[1], pr[2]);
  const auto lo = fr.inverse(pr[0] - h, pr[1], pr[2]);
  return {(hi[1] - lo[1]) / (2 * h), (hi[2] - lo[2]) / (2 * h)};
}

}  // namespace detail

/// Transforms the spatial part of a flux-like form to another frame. For a
/// degree-2 flux JJ the spatial flux becomes J' = J - c^i (d_i -| JJ); for a
/// degree-3 source SS the spatial source becomes s' = s + c^i (d_i -| SS).
/// Both use the analytic c^i = dx^i/dt'; the report compares against the
/// direct contraction route where c^i comes from differencing the inverse
/// map, which exercises the frame data for consistency.
inline FrameCovarianceReport frame_transform(
    const FormField& spacetime_form, const FrameMap& frame, double h,
    const std::vector<std::array<double, 3>>& samples) {
  const int deg = spacetime_form.degree();
  if (deg != 2 && deg != 3)
    throw std::invalid_argument("frame transform expects degree 2 or 3");
  const double sgn = deg == 2 ? -1.0 : 1.0;  // J' has -, varsigma' has +

  // route 1: analytic velocities in the transformation formula
  const FormField base = deg == 2
                             ? contract_coordinate(spacetime_form, 0).scaled(-1.0)
                             : contract_coordinate(spacetime_form, 0);
  const FormField c1part = contract_coordinate(spacetime_form, 1);
  const FormField c2part = contract_coordinate(spacetime_form, 2);
  const FrameMap fr = frame;
  FormField route1(deg - 1);
  for (int i = 0; i < route1.ncomp(); ++i) {
    FormComponent b = base.comp(i), p1 = c1part.comp(i), p2 = c2part.comp(i);
    route1.comp(i) = FormComponent(ScalarFn(
        [b, p1, p2, fr, sgn](double t, double x1, double x2) {
          const auto c = fr.inverse_velocity(t, x1, x2);
          return b.eval(t, x1, x2) +
                 sgn * (c[0] * p1.eval(t, x1, x2) + c[1] * p2.eval(t, x1, x2));
        }));
  }

  // route 2: contract with d'_t = d_t + c^i d_i, velocities from differencing
  // the inverse map
  FormField route2(deg - 1);
  {
    const FormField tpart = contract_coordinate(spacetime_form, 0);
    for (int i = 0; i < route2.ncomp(); ++i) {
      FormComponent pt = tpart.comp(i), p1 = c1part.comp(i), p2 = c2part.comp(i);
      route2.comp(i) = FormComponent(ScalarFn(
          [pt, p1, p2, fr, h, sgn](double t, double x1, double x2) {
            const auto c = detail::fd_inverse_velocity(fr, t, x1, x2, h);
            const double contr = pt.eval(t, x1, x2) +
                                 c[0] * p1.eval(t, x1, x2) +
                                 c[1] * p2.eval(t, x1, x2);
            // J' = -d'_t -| JJ, varsigma' = +d'_t -| SS
            return sgn < 0 ? -contr : contr;
          }));
    }
  }

  FrameCovarianceReport rep{route1, 0.0};
  for (const auto& p : samples)
    for (int i = 0; i < route1.ncomp(); ++i)
      rep.max_discrepancy = std::max(
          rep.max_discrepancy,
          std::abs(route1.eval_comp(i, p[0], p[1], p[2]) -
                   route2.eval_comp(i, p[0], p[1], p[2])));
  return rep;
}

// --- worldlines -----------------------------------------------------------------

struct WorldlineResult {
  std::vector<std::array<double, 3>> points;
  bool degenerate = false;  // flux vanished along the trace
  bool spacelike = false;   // dt(v) ~ 0 somewhere, arc-length parameterized
};

namespace detail {

/// The vector v with v -| theta = JJ: in components
/// theta * (v_t, v_1, v_2) = (rho_12, -JJ_t2, +JJ_t1).
inline std::array<double, 3> worldline_vector(const FormField& J4,
                                              const FormField& theta, double t,
                                              double x1, double x2) {
  const double th = theta.comp(0).eval(t, x1, x2);
  const double rho = J4.comp_by_mask(6).eval(t, x1, x2);
  const double jt1 = J4.comp_by_mask(3).eval(t, x1, x2);
  const double jt2 = J4.comp_by_mask(5).eval(t, x1, x2);
  return {rho / th, -jt2 / th, jt1 / th};
}

}  // namespace detail

/// Integral curve of the line field annihilating the flux form, from the
/// seed until time t_end, with a classical 4-stage one-step method. The
/// curve is parameterized by t when dt(v) stays away from zero, otherwise
/// by arc length with the spacelike flag set.
inline WorldlineResult worldline_trace(const FormField& J4,
                                       const FormField& theta,
                                       std::array<double, 3> seed, double t_end,
                                       double step) {
  if (J4.degree() != 2 || theta.degree() != 3)
    throw std::invalid_argument("worldline needs a degree-2 flux and a volume form");
  if (step <= 0.0) throw std::invalid_argument("step must be positive");
  WorldlineResult out;
  std::array<double, 3> p = seed;
  out.points.push_back(p);
  const double tiny = 1e-14;
  auto rhs = [&](const std::array<double, 3>& q, bool* ok,
                 bool* space) -> std::array<double, 3> {
    auto v = detail::worldline_vector(J4, theta, q[0], q[1], q[2]);
    const double mag = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(mag > tiny)) {
      *ok = false;
      return {0, 0, 0};
    }
    if (std::abs(v[0]) <= 1e-9 * mag) {
      *space = true;
      return {v[0] / mag, v[1] / mag, v[2] / mag};
    }
    return {1.0, v[1] / v[0], v[2] / v[0]};
  };
  const int max_steps = 4 * static_cast<int>(std::ceil(
                                std::abs(t_end - seed[0]) / step)) +
                        100000;
  for (int it = 0; it < max_steps && p[0] < t_end - 1e-12; ++it) {
    const double hstep = std::min(step, t_end - p[0]);
    bool ok = true;
    bool space = false;
    const auto k1 = rhs(p, &ok, &space);
    if (!ok) {
      out.degenerate = true;
      break;
    }
    auto at = [&](double f, const std::array<double, 3>& k) {
      return std::array<double, 3>{p[0] + f * hstep * k[0],
                                   p[1] + f * hstep * k[1],
                                   p[2] + f * hstep * k[2]};
    };
    const auto k2 = rhs(at(0.5, k1), &ok, &space);
    const auto k3 = rhs(at(0.5, k2), &ok, &space);
    const auto k4 = rhs(at(1.0, k3), &ok, &space);
    if (!ok) {
      out.degenerate = true;
      break;
    }
    if (space) out.spacelike = true;
    for (int c = 0; c < 3; ++c)
      p[c] += hstep / 6.0 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    out.points.push_back(p);
  }
  return out;
}

}  // namespace fgt
