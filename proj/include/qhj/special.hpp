#pragma once

// Special functions for oscillatory diffraction integrals: the Faddeeva
// function, Fresnel integrals, and Gaussian-apodized Fresnel ("chirp")
// integrals with closed-form evaluation plus an adaptive Gauss-Kronrod
// fallback.

#include <complex>
#include <functional>

namespace qhj {

using cdouble = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
/// Accurate to ~1e-13 relative on the closed upper half plane; the lower
/// half plane goes through the reflection w(-z) = 2 exp(-z^2) - w(z) and
/// may overflow for large |Im z|.
cdouble faddeeva_w(cdouble z);

/// Fresnel integrals C(x) = int_0^x cos(pi t^2/2) dt and S(x) likewise.
struct FresnelCS {
  double c;
  double s;
};
FresnelCS fresnel_cs(double x);

/// int_{-inf}^{u} exp(i pi t^2/2) dt = (1/2 + C(u)) + i (1/2 + S(u)).
cdouble chirp_lower(double u);

/// int_{-inf}^{u} exp(-(t-tc)^2/w^2) exp(i pi t^2/2) dt, closed form via
/// the complex error function. w > 0.
cdouble gauss_chirp_lower(double u, double tc, double w);

/// int_{l}^{+inf} exp(-(t-tc)^2/w^2) exp(i pi t^2/2) dt.
inline cdouble gauss_chirp_upper(double l, double tc, double w) {
  return gauss_chirp_lower(-l, -tc, w);
}

/// Adaptive Gauss-Kronrod 7-15 quadrature. Throws QuadratureFailure if the
/// tolerance cannot be met within the interval budget.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_intervals = 4000);

/// Quadrature evaluation of gauss_chirp_lower: splits at the half-period
/// boundaries of the t^2 phase, truncates the Gaussian envelope at eight
/// standard deviations.
cdouble gauss_chirp_lower_quad(double u, double tc, double w, double abs_tol);

}  // namespace qhj
