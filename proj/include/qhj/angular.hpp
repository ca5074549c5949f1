#pragma once

// Azimuthal momentum fields on the circle and the closed-form polar
// solutions used in the central-field acceptability analysis. The radial
// acceptability argument (chi ~ r^{l+1} admissible, r^{-l} rejected) is
// exercised numerically through the 1-D bound-state solver instead of
// being reproduced symbolically here.

#include <complex>
#include <optional>

namespace qhj {

struct AngularCoeffs {
  std::complex<double> c1;
  std::complex<double> c2;
  double m_quant = 1.0;  // separation constant; integer for closed fields
};

/// dS0/dphi for the general azimuthal solution. Uses the trigonometric
/// pair for m != 0 and the (1, phi) pair for m = 0.
double phi_momentum(const AngularCoeffs& coeffs, double phi, double hbar = 1.0);

struct PhiQuantization {
  double integral = 0.0;          // action over [0, pi]
  std::optional<int> n;           // integral ~ n h/2 when matched to 1e-6 h
};

PhiQuantization phi_quantization(const AngularCoeffs& coeffs, double hbar = 1.0);

/// Closed-form polar solutions for l = 0, 1:
///   l = 0: G + H (ln (1-cos)/2 - ln (1+cos)/2)
///   l = 1: G cos + H (cos ln (1-cos)/2 - cos ln (1+cos)/2 + 2 (1-cos))
double theta_solution(int l, double g, double h, double theta);

}  // namespace qhj
