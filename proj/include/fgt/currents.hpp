#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fgt/forms.hpp"
#include "fgt/mesh3.hpp"

namespace fgt {

/// T(psi) = integral of flux ^ psi over the meshed spacetime region; the
/// region together with a degree-2 flux form represents a flux current
/// acting on degree-1 test forms.
inline double current_apply(const Mesh3& m, const FormField& flux,
                            const FormField& psi, int order = 4) {
  if (flux.degree() != 2 || psi.degree() != 1)
    throw std::invalid_argument("current_apply wants flux degree 2, test degree 1");
  return integrate_volume(m, wedge(flux, psi), order);
}

struct SourceSplit {
  double total = 0.0;          // T(d phi)
  double boundary_part = 0.0;  // integral of flux ^ phi over the boundary
  double volume_part = 0.0;    // minus integral of (d flux) ^ phi over the region
  double mismatch = 0.0;       // |total - boundary_part - volume_part|
};

/// Evaluates the source S(phi) = T(d phi) of the flux current and its split
/// into a boundary term and a volume term by the Stokes identity
/// d(flux ^ phi) = (d flux) ^ phi + flux ^ (d phi).
inline SourceSplit source_current(const Mesh3& m, const FormField& flux,
                                  const FormField& phi, int order = 4,
                                  double h = 1e-5) {
  if (flux.degree() != 2 || phi.degree() != 0)
    throw std::invalid_argument("source_current wants flux degree 2, phi degree 0");
  const FormField dphi = phi.all_poly() ? exterior_derivative_exact(phi)
                                        : exterior_derivative(phi, h);
  const FormField dflux = flux.all_poly() ? exterior_derivative_exact(flux)
                                          : exterior_derivative(flux, h);
  SourceSplit s;
  s.total = integrate_volume(m, wedge(flux, dphi), order);
  s.boundary_part = integrate_boundary(m, wedge(flux, phi), order);
  s.volume_part = -integrate_volume(m, wedge(dflux, phi), order);
  s.mismatch = std::abs(s.total - s.boundary_part - s.volume_part);
  return s;
}

// --- compactly supported test forms --------------------------------------------

namespace detail {

inline double bump_profile(double u) {
  const double v = 1.0 - u * u;
  return v > 0.0 ? v * v * v : 0.0;
}
inline double bump_profile_deriv(double u) {
  const double v = 1.0 - u * u;
  return v > 0.0 ? -6.0 * u * v * v : 0.0;
}

}  // namespace detail

/// Smooth compactly supported cutoff b(t,x1,x2), a product of one-axis
/// profiles ((1-u^2)+)^3 supported on [lo,hi] per axis. Piecewise polynomial
/// with exact partial derivatives, so products against polynomials integrate
/// exactly under Gauss rules on meshes whose cells align with the support.
struct Bump3 {
  double lo = 0.25, hi = 0.75;

  double map(double s) const { return (2.0 * s - lo - hi) / (hi - lo); }
  double value(double t, double x1, double x2) const {
    return detail::bump_profile(map(t)) * detail::bump_profile(map(x1)) *
           detail::bump_profile(map(x2));
  }
  double partial(int axis, double t, double x1, double x2) const {
    const double s[3] = {t, x1, x2};
    double r = detail::bump_profile_deriv(map(s[axis])) * 2.0 / (hi - lo);
    for (int j = 0; j < 3; ++j)
      if (j != axis) r *= detail::bump_profile(map(s[j]));
    return r;
  }
};

/// Builds phi = sum_K b * P_K dx^K together with its exact exterior
/// derivative, exercising the product rule with the cutoff's derivative.
inline std::pair<FormField, FormField> bump_form_with_differential(
    int degree, const std::vector<std::pair<int, Poly3>>& terms,
    Bump3 bump = {}) {
  if (degree < 0 || degree > 2)
    throw std::invalid_argument("bump form degree must be 0..2");
  FormField phi(degree), dphi(degree + 1);
  for (const auto& [mask, P] : terms) {
    const int ci = FormField::index_of_mask(degree, mask);
    if (ci < 0) throw std::invalid_argument("component mask does not match degree");
    const FormComponent prev = phi.comp(ci);
    const Poly3 Pc = P;
    const Bump3 b = bump;
    phi.comp(ci) = FormComponent(ScalarFn(
        [prev, Pc, b](double t, double x1, double x2) {
          return prev.eval(t, x1, x2) + b.value(t, x1, x2) * Pc.eval(t, x1, x2);
        }));
    for (int axis = 0; axis < 3; ++axis) {
      const int bit = 1 << axis;
      if (mask & bit) continue;
      const int sgn = detail::merge_sign(bit, mask);
      const int ti = FormField::index_of_mask(degree + 1, mask | bit);
      const FormComponent dprev = dphi.comp(ti);
      const Poly3 dP = P.derivative(axis);
      const int ax = axis;
      dphi.comp(ti) = FormComponent(ScalarFn(
          [dprev, Pc, dP, b, ax, sgn](double t, double x1, double x2) {
            return dprev.eval(t, x1, x2) +
                   sgn * (b.partial(ax, t, x1, x2) * Pc.eval(t, x1, x2) +
                          b.value(t, x1, x2) * dP.eval(t, x1, x2));
          }));
    }
  }
  return {phi, dphi};
}

// --- boundary identity ----------------------------------------------------------

struct IdentityCheckResult {
  double max_error = 0.0;  // max |T_phi(d w) - sign * T_dphi(w)| over the battery
  double max_scale = 0.0;  // largest integral magnitude seen, for context
  int cases = 0;
};

/// Checks the representation identity for currents induced by forms: for a
/// compactly supported (3-r)-form phi on a 3-dimensional region, the boundary
/// of the induced r-current satisfies dT_phi = (-1)^(3-r-1) T_{d phi},
/// i.e. integral(phi ^ d w) = sign * integral(d phi ^ w) for all test forms w
/// of degree r-1. Battery: bump-times-polynomial phi against polynomial w.
inline IdentityCheckResult current_boundary_identity_check(int r,
                                                           int order = 13) {
  if (r != 1 && r != 2)
    throw std::invalid_argument("identity check supports r in {1,2}");
  const Mesh3 m =
      Mesh3::box({0.25, 0.75}, {0.25, 0.75}, {0.25, 0.75}, 2, 2, 2);
  const int phi_deg = 3 - r;
  const double sign = (r == 1) ? -1.0 : 1.0;  // (-1)^(3-r-1)

  std::vector<std::vector<std::pair<int, Poly3>>> phis;
  std::vector<FormField> omegas;  // degree r-1, polynomial
  if (r == 1) {
    phis = {
        {{6, Poly3::constant(1.0)}},
        {{3, Poly3::monomial(1.0, 0, 0, 1)}, {6, Poly3::monomial(1.0, 1, 0, 0)}},
        {{5, Poly3::monomial(1.0, 0, 1, 0)}},
    };
    omegas.push_back(FormField::from_polys(0, {Poly3::monomial(1, 1, 0, 0)}));
    omegas.push_back(FormField::from_polys(0, {Poly3::monomial(1, 0, 1, 0)}));
    omegas.push_back(FormField::from_polys(0, {Poly3::monomial(1, 0, 0, 1)}));
    omegas.push_back(FormField::from_polys(0, {Poly3::monomial(1, 1, 0, 1)}));
  } else {
    phis = {
        {{1, Poly3::constant(1.0)}},
        {{2, Poly3::monomial(1.0, 1, 0, 0)}, {4, Poly3::monomial(1.0, 0, 1, 0)}},
        {{4, Poly3::constant(1.0)}},
    };
    auto zero = Poly3();
    omegas.push_back(
        FormField::from_polys(1, {Poly3::monomial(1, 0, 0, 1), zero, zero}));
    omegas.push_back(
        FormField::from_polys(1, {zero, Poly3::monomial(1, 1, 0, 0), zero}));
    omegas.push_back(
        FormField::from_polys(1, {zero, zero, Poly3::monomial(1, 0, 1, 0)}));
    omegas.push_back(FormField::from_polys(1, {zero, Poly3::monomial(1, 0, 0, 1),
                                               Poly3::monomial(1, 0, 1, 0)}));
  }

  IdentityCheckResult res;
  for (const auto& terms : phis) {
    const auto [phi, dphi] = bump_form_with_differential(phi_deg, terms);
    for (const auto& w : omegas) {
      const FormField dw = exterior_derivative_exact(w);
      const double lhs = integrate_volume(m, wedge(phi, dw), order);
      const double rhs = integrate_volume(m, wedge(dphi, w), order);
      res.max_error = std::max(res.max_error, std::abs(lhs - sign * rhs));
      res.max_scale =
          std::max({res.max_scale, std::abs(lhs), std::abs(rhs)});
      ++res.cases;
    }
  }
  return res;
}

}  // namespace fgt
