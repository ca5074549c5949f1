#include "qhj/biprism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhj/errors.hpp"
#include "qhj/special.hpp"

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct KernelArgs {
  double u1, b1;  // lower-slot: integral over (-inf, u1], center -b1
  double l2, b2;  // upper-slot: integral over [l2, +inf), center -b2
  double scale;   // sqrt(k / (pi Z))
};

KernelArgs kernel_args(double x, double z, const BiprismGeometry& geom,
                       double x0) {
  if (!(z > 0.0)) throw ValidityViolation("kernels: z must be positive");
  KernelArgs a;
  a.scale = std::sqrt(geom.k() / (kPi * z));
  const double half_d = 0.5 * geom.filament_d;
  const double drift = geom.slope() * z;
  a.u1 = a.scale * (-half_d - x + drift);
  a.b1 = a.scale * (x - drift - x0);
  a.l2 = a.scale * (half_d - x - drift);
  a.b2 = a.scale * (x + drift - x0);
  return a;
}

}  // namespace

double BiprismGeometry::k() const {
  return std::sqrt(kx * kx + ky * ky + kz * kz);
}

double GaussianBeam::widest() const {
  double w = 0.0;
  for (const auto& c : components) w = std::max(w, c.w0);
  return w;
}

double GaussianBeam::rayleigh_range(const BiprismGeometry& geom) const {
  const double w0 = widest();
  return 0.5 * geom.k() * w0 * w0;
}

FramePair frame_transform(const FrameVector& p, const BiprismGeometry& geom) {
  const double norm = std::hypot(geom.kx, geom.kz);
  const double c = geom.kz / norm, s = geom.kx / norm;
  FramePair out;
  out.tilde = {c * p.x - s * p.z, p.y, s * p.x + c * p.z};
  out.tilde_tilde = {c * p.x + s * p.z, p.y, -s * p.x + c * p.z};
  return out;
}

DiffractionKernels kernels(double x, double z, const BiprismGeometry& geom,
                           const GaussianBeam& beam) {
  const KernelArgs a = kernel_args(x, z, geom, beam.center_x0);
  DiffractionKernels k;
  for (const auto& comp : beam.components) {
    const double w = a.scale * comp.w0;
    const cdouble lower = gauss_chirp_lower(a.u1, -a.b1, w);
    // mirrored form of the upper-slot integral over [l2, inf)
    const cdouble upper = gauss_chirp_lower(-a.l2, a.b2, w);
    k.m1 += comp.weight * lower.real();
    k.n1 += comp.weight * lower.imag();
    k.m2 += comp.weight * upper.real();
    k.n2 += comp.weight * upper.imag();
  }
  return k;
}

DiffractionKernels kernels_plane_wave(double x, double z,
                                      const BiprismGeometry& geom) {
  const KernelArgs a = kernel_args(x, z, geom, 0.0);
  const cdouble lower = chirp_lower(a.u1);
  const cdouble upper = chirp_lower(-a.l2);
  return {lower.real(), lower.imag(), upper.real(), upper.imag()};
}

DiffractionKernels kernels_quadrature(double x, double z, const BiprismGeometry& geom,
                                      const GaussianBeam& beam, double abs_tol) {
  const KernelArgs a = kernel_args(x, z, geom, beam.center_x0);
  DiffractionKernels k;
  for (const auto& comp : beam.components) {
    const double w = a.scale * comp.w0;
    const cdouble lower = gauss_chirp_lower_quad(a.u1, -a.b1, w, abs_tol);
    const cdouble upper = gauss_chirp_lower_quad(-a.l2, a.b2, w, abs_tol);
    k.m1 += comp.weight * lower.real();
    k.n1 += comp.weight * lower.imag();
    k.m2 += comp.weight * upper.real();
    k.n2 += comp.weight * upper.imag();
  }
  return k;
}

double fresnel_phase_error(double x, double z, const GaussianBeam& beam,
                           const BiprismGeometry& geom) {
  if (!(z > 0.0)) return std::numeric_limits<double>::infinity();
  const double s_prime = std::hypot(x, z);
  // beam support; amplitude has fallen to e^-4 at twice the waist width
  const double xi = 2.0 * beam.widest();
  const FramePair frames = frame_transform({x, 0.0, z}, geom);
  double worst = 0.0;
  for (const double xt : {frames.tilde.x, frames.tilde_tilde.x}) {
    const double l = xt / s_prime;
    const double cubic = l * (1.0 - l * l) / (2.0 * s_prime * s_prime);
    const double quartic =
        (-0.125 + 0.75 * l * l - 0.625 * l * l * l * l) /
        (s_prime * s_prime * s_prime);
    for (const double sgn : {-1.0, 1.0}) {
      const double t = sgn * xi;
      const double phase =
          geom.k() * std::abs(cubic * t * t * t + quartic * t * t * t * t);
      worst = std::max(worst, phase);
    }
  }
  return worst;
}

bool fresnel_valid(double x, double z, const GaussianBeam& beam,
                   const BiprismGeometry& geom) {
  return fresnel_phase_error(x, z, beam, geom) < 2.0 * kPi * 0.05;
}

std::complex<double> diffracted_field(double x, double z, const BiprismGeometry& geom,
                                      const GaussianBeam& beam) {
  const DiffractionKernels k = kernels(x, z, geom, beam);
  const double s_prime = std::hypot(x, z);
  const cdouble carrier = std::exp(cdouble(0.0, geom.k() * s_prime));
  const cdouble e_plus = std::exp(cdouble(0.0, geom.kx * x));
  return carrier *
         (cdouble(k.m1, k.n1) * e_plus + cdouble(k.m2, k.n2) * std::conj(e_plus));
}

double intensity_closed_form(double x, const DiffractionKernels& k, double kx) {
  const double c = std::cos(2.0 * kx * x), s = std::sin(2.0 * kx * x);
  return k.m1 * k.m1 + k.n1 * k.n1 + k.m2 * k.m2 + k.n2 * k.n2 +
         2.0 * (k.m1 * k.m2 + k.n1 * k.n2) * c +
         2.0 * (k.m1 * k.n2 - k.n1 * k.m2) * s;
}

double intensity_closed_form(double x, double z, const BiprismGeometry& geom,
                             const GaussianBeam& beam) {
  return intensity_closed_form(x, kernels(x, z, geom, beam), geom.kx);
}

double px_field(double x, double z, const BiprismGeometry& geom,
                const GaussianBeam& beam) {
  const double h = 1e-5 * kPi / geom.kx;  // far below the fringe period
  const DiffractionKernels k = kernels(x, z, geom, beam);
  const DiffractionKernels kp = kernels(x + h, z, geom, beam);
  const DiffractionKernels km = kernels(x - h, z, geom, beam);
  const double dm1 = (kp.m1 - km.m1) / (2.0 * h);
  const double dn1 = (kp.n1 - km.n1) / (2.0 * h);
  const double dm2 = (kp.m2 - km.m2) / (2.0 * h);
  const double dn2 = (kp.n2 - km.n2) / (2.0 * h);
  const double c = std::cos(2.0 * geom.kx * x), s = std::sin(2.0 * geom.kx * x);
  const double numerator =
      geom.kx * (k.m1 * k.m1 + k.n1 * k.n1) -
      geom.kx * (k.m2 * k.m2 + k.n2 * k.n2) + k.m1 * dn1 - k.n1 * dm1 +
      k.m2 * dn2 - k.n2 * dm2 +
      (-k.n1 * dm2 + k.m1 * dn2 - k.n2 * dm1 + k.m2 * dn1) * c +
      (-k.m1 * dm2 - k.n1 * dn2 + k.m2 * dm1 + k.n2 * dn1) * s;
  const double denominator = intensity_closed_form(x, k, geom.kx);
  if (!(denominator > 0.0))
    throw NodeSingularity("px_field: vanishing intensity");
  return numerator / denominator;
}

double velocity_ratio(double x, double z, const BiprismGeometry& geom,
                      const GaussianBeam& beam, Slot slot) {
  const double magnitude = std::abs(px_field(x, z, geom, beam)) / geom.kz;
  return slot == Slot::lower ? magnitude : -magnitude;
}

BiprismGeometry benchmark_geometry() {
  BiprismGeometry g;
  g.kx = 4.99e4;
  g.ky = 0.0;
  g.kz = 1.45e9;
  g.filament_d = 4.15e-4;
  g.aperture_half = 0.2;
  g.screen_z = 33.77;
  return g;
}

GaussianBeam benchmark_beam() {
  GaussianBeam b;
  b.components = {{0.8, 0.34e-3}, {0.2, 2.2e-3}};
  return b;
}

}  // namespace qhj
