#include "qhj/angular.hpp"

#include <cmath>

#include "qhj/errors.hpp"

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::complex<double> phi_solution(const AngularCoeffs& c, double phi) {
  if (c.m_quant != 0.0)
    return c.c1 * std::cos(c.m_quant * phi) + c.c2 * std::sin(c.m_quant * phi);
  return c.c1 + c.c2 * phi;
}

std::complex<double> phi_solution_deriv(const AngularCoeffs& c, double phi) {
  if (c.m_quant != 0.0)
    return c.m_quant *
           (-c.c1 * std::sin(c.m_quant * phi) + c.c2 * std::cos(c.m_quant * phi));
  return c.c2;
}

}  // namespace

double phi_momentum(const AngularCoeffs& coeffs, double phi, double hbar) {
  if (std::abs(coeffs.c1) == 0.0 && std::abs(coeffs.c2) == 0.0)
    throw NonRealResult("phi_momentum: zero solution");
  const std::complex<double> f = phi_solution(coeffs, phi);
  const double abs2 = std::norm(f);
  if (abs2 == 0.0) throw NonRealResult("phi_momentum: node in the azimuthal field");
  // (hbar/i) m (conj(c1) c2 - c1 conj(c2)) / (2 |Phi|^2); the numerator is
  // a difference of conjugates, so any real residual flags a bad pair
  const std::complex<double> cross =
      std::conj(coeffs.c1) * coeffs.c2 - coeffs.c1 * std::conj(coeffs.c2);
  if (std::abs(cross.real()) > 1e-10 * std::abs(cross))
    throw NonRealResult("phi_momentum: construction not real");
  const double strength = 0.5 * (coeffs.m_quant != 0.0 ? coeffs.m_quant : 1.0);
  return hbar * strength * cross.imag() / abs2;
}

PhiQuantization phi_quantization(const AngularCoeffs& coeffs, double hbar) {
  // unwrapped phase of the planar curve (Re Phi would not do: the curve is
  // complex); S0 = hbar arg Phi tracked continuously over [0, pi]
  const int n_steps = 4000 * std::max(1, static_cast<int>(std::ceil(std::abs(coeffs.m_quant))));
  double prev = std::arg(phi_solution(coeffs, 0.0));
  double total = 0.0;
  for (int i = 1; i <= n_steps; ++i) {
    const double phi = kPi * i / n_steps;
    const std::complex<double> f = phi_solution(coeffs, phi);
    if (std::abs(f) == 0.0)
      throw BranchTrackingFailure("phi_quantization: node in the azimuthal field");
    const double cur = std::arg(f);
    double delta = cur - prev;
    while (delta > kPi) delta -= 2.0 * kPi;
    while (delta < -kPi) delta += 2.0 * kPi;
    if (std::abs(delta) > 0.9 * kPi)
      throw BranchTrackingFailure("phi_quantization: angle step too large");
    total += delta;
    prev = cur;
  }
  PhiQuantization out;
  out.integral = hbar * total;
  const double half_h = kPi * hbar;
  const int n = static_cast<int>(std::llround(out.integral / half_h));
  if (std::abs(out.integral - n * half_h) <= 1e-6 * 2.0 * kPi * hbar) out.n = n;
  return out;
}

double theta_solution(int l, double g, double h, double theta) {
  if (l != 0 && l != 1)
    throw Error("theta_solution: closed forms cover l in {0, 1} only");
  const double c = std::cos(theta);
  if (h != 0.0 && (theta <= 0.0 || theta >= kPi))
    throw PoleSingularity("theta_solution: log branch singular at the poles");
  if (h == 0.0) return l == 0 ? g : g * c;
  const double log_ratio = std::log(0.5 * (1.0 - c)) - std::log(0.5 * (1.0 + c));
  if (l == 0) return g + h * log_ratio;
  return g * c + h * (c * log_ratio + 2.0 * (1.0 - c));
}

}  // namespace qhj
