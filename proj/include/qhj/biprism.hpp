#pragma once

// Fresnel-diffracted field behind the electron biprism under Gaussian-beam
// illumination: rotated beam frames, the four apodized Fresnel kernels,
// the assembled interference field, and the sign-ruled velocity field.
//
// Units in this module: lengths in mm, wavenumbers in 1/mm. Momenta are
// reported in units of hbar/mm so that trajectory slopes dx/dz need no
// mass or hbar.

#include <complex>
#include <vector>

namespace qhj {

struct BiprismGeometry {
  double kx = 0.0;            // transverse wavenumber after deflection
  double ky = 0.0;
  double kz = 0.0;            // longitudinal wavenumber
  double filament_d = 0.0;    // filament diameter
  double aperture_half = 0.2; // |x|, |y| <= aperture_half at the biprism
  double screen_z = 0.0;      // observation screen distance

  double k() const;
  double slope() const { return kx / kz; }  // geometric deflection dx/dz
  /// Shadow border of the lower-slot beam at distance z (upper border is
  /// the mirror image).
  double lower_border(double z) const { return slope() * z - 0.5 * filament_d; }
};

struct BeamComponent {
  double weight = 1.0;
  double w0 = 0.0;  // waist width
};

struct GaussianBeam {
  std::vector<BeamComponent> components;  // superposed waists, weights > 0
  double center_x0 = 0.0;
  double center_y0 = 0.0;

  double widest() const;
  double rayleigh_range(const BiprismGeometry& geom) const;  // of widest component
};

struct FrameVector {
  double x = 0.0, y = 0.0, z = 0.0;
};
struct FramePair {
  FrameVector tilde;        // frame of the upward-deflected (lower-slot) beam
  FrameVector tilde_tilde;  // frame of the downward-deflected beam
};

/// Rotation into both beam frames.
FramePair frame_transform(const FrameVector& point, const BiprismGeometry& geom);

struct DiffractionKernels {
  double m1 = 0.0, n1 = 0.0;  // lower-slot beam
  double m2 = 0.0, n2 = 0.0;  // upper-slot beam
};

/// The four Gaussian-apodized Fresnel integrals at P = (X, 0, Z); beam
/// components combine linearly with their weights. Closed-form complex
/// error-function evaluation, absolute accuracy well under 1e-8.
DiffractionKernels kernels(double x, double z, const BiprismGeometry& geom,
                           const GaussianBeam& beam);

/// Plane-wave (uniform flux) limit of the kernels.
DiffractionKernels kernels_plane_wave(double x, double z, const BiprismGeometry& geom);

/// Same integrals by adaptive Gauss-Kronrod quadrature on half-period
/// subintervals with the envelope truncated at eight standard deviations.
DiffractionKernels kernels_quadrature(double x, double z, const BiprismGeometry& geom,
                                      const GaussianBeam& beam, double abs_tol);

/// Cubic-plus-quartic phase-error bound of the quadratic path expansion,
/// evaluated over the beam support; true where the bound stays below
/// 2 pi x 0.05.
bool fresnel_valid(double x, double z, const GaussianBeam& beam,
                   const BiprismGeometry& geom);

/// Worst-case phase error used by fresnel_valid (diagnostics).
double fresnel_phase_error(double x, double z, const GaussianBeam& beam,
                           const BiprismGeometry& geom);

/// Assembled complex field (M1 + i N1) e^{i kx x} + (M2 + i N2) e^{-i kx x}
/// times the common carrier e^{i k s'}.
std::complex<double> diffracted_field(double x, double z, const BiprismGeometry& geom,
                                      const GaussianBeam& beam);

/// |field|^2 via the trigonometric closed form (independent code path
/// from diffracted_field).
double intensity_closed_form(double x, double z, const BiprismGeometry& geom,
                             const GaussianBeam& beam);
double intensity_closed_form(double x, const DiffractionKernels& k, double kx);

/// Transverse momentum in units of hbar/mm, from the kernel fields and
/// their centered-difference x-derivatives (step 1e-5 of the fringe
/// period).
double px_field(double x, double z, const BiprismGeometry& geom,
                const GaussianBeam& beam);

enum class Slot { lower, upper };

/// dx/dz for trajectory propagation: +|px|/kz for the lower slot,
/// -|px|/kz for the upper.
double velocity_ratio(double x, double z, const BiprismGeometry& geom,
                      const GaussianBeam& beam, Slot slot);

/// Geometry and beam of the bundled benchmark experiment (filament
/// diameter 4.15e-4 mm, screen at 33.77 mm, two-component beam).
BiprismGeometry benchmark_geometry();
GaussianBeam benchmark_beam();

}  // namespace qhj
