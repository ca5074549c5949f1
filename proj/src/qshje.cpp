#include "qhj/qshje.hpp"

#include <cmath>

#include "qhj/errors.hpp"

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MobiusParams MobiusParams::from_complex(std::complex<double> a, std::complex<double> b,
                                        std::complex<double> c, std::complex<double> d) {
  const std::complex<double> det = a * d - b * c;
  if (std::abs(det) == 0.0) throw NonRealMomentum("Mobius: singular A..D");
  const std::complex<double> ac = a * c;
  if (std::abs(ac) == 0.0) throw NonRealMomentum("Mobius: A C = 0 has no reduced form");
  const std::complex<double> l1c = std::complex<double>(0, 1) * det / (2.0 * ac);
  const std::complex<double> l2c = (a * d + b * c) / (2.0 * ac);
  const double tol = 1e-10 * (std::abs(l1c) + std::abs(l2c));
  if (std::abs(l1c.imag()) > tol || std::abs(l2c.imag()) > tol)
    throw NonRealMomentum("Mobius: parameters do not give a real field");
  MobiusParams m;
  m.l1 = l1c.real();
  m.l2 = l2c.real();
  if (m.l1 == 0.0) throw NonRealMomentum("Mobius: l1 = 0");
  return m;
}

double momentum_reduced(const WaveBasis1D& basis, const MobiusParams& mobius,
                        double x) {
  const auto p = basis.at(x);
  const double u = p.psi_d + mobius.l2 * p.psi;
  const double denom = u * u + mobius.l1 * mobius.l1 * p.psi * p.psi;
  return basis.hbar * basis.wronskian * mobius.l1 / denom;
}

double momentum_mobius(const WaveBasis1D& basis, std::complex<double> a,
                       std::complex<double> b, std::complex<double> c,
                       std::complex<double> d, double x) {
  const std::complex<double> det = a * d - b * c;
  if (std::abs(det) == 0.0) throw NonRealMomentum("momentum_mobius: singular A..D");
  const auto pt = basis.at(x);
  const std::complex<double> denom = (a * pt.psi_d + b * pt.psi) * (c * pt.psi_d + d * pt.psi);
  const std::complex<double> p =
      std::complex<double>(0, 0.5) * basis.hbar * det * basis.wronskian / denom;
  if (std::abs(p.imag()) > 1e-10 * std::abs(p))
    throw NonRealMomentum("momentum_mobius: field is not real for these A..D");
  return p.real();
}

double momentum_from_wavefunction(const std::vector<double>& grid,
                                  const std::vector<std::complex<double>>& psi,
                                  double hbar, double x) {
  const size_t n = grid.size();
  if (x < grid.front() || x > grid.back())
    throw OutOfDomain("momentum_from_wavefunction: x outside grid");
  const double h = grid[1] - grid[0];
  size_t i = static_cast<size_t>(std::llround((x - grid.front()) / h));
  i = std::min(std::max<size_t>(i, 2), n - 3);

  auto p_at = [&](size_t j) {
    const std::complex<double> grad =
        (-psi[j + 2] + 8.0 * psi[j + 1] - 8.0 * psi[j - 1] + psi[j - 2]) / (12.0 * h);
    const double abs2 = std::norm(psi[j]);
    if (abs2 < 1e-300)
      throw NodeSingularity("momentum_from_wavefunction: |psi|^2 vanishes");
    return hbar * std::imag(std::conj(psi[j]) * grad) / abs2;
  };
  return p_at(i);
}

WindingResult winding_integral(const MomentumField1D& field) {
  const WaveBasis1D& basis = *field.basis;
  const double l1 = field.mobius.l1;
  const double l2 = field.mobius.l2;

  // S0 = -hbar * unwrapped angle of the planar curve (l1 psi, psiD + l2 psi);
  // the curve avoids the origin because the pair has no common zero.
  double prev = std::atan2(basis.psi_d.front() + l2 * basis.psi.front(),
                           l1 * basis.psi.front());
  double total = 0.0;
  for (size_t i = 1; i < basis.grid.size(); ++i) {
    const double cur =
        std::atan2(basis.psi_d[i] + l2 * basis.psi[i], l1 * basis.psi[i]);
    double delta = cur - prev;
    while (delta > kPi) delta -= 2.0 * kPi;
    while (delta < -kPi) delta += 2.0 * kPi;
    if (std::abs(delta) > 0.9 * kPi)
      throw BranchTrackingFailure(
          "winding_integral: angle step too large, grid straddles multiple zeros");
    total += delta;
    prev = cur;
  }
  WindingResult r;
  r.value = -basis.hbar * total;
  const double half_h = kPi * basis.hbar;  // h/2 = pi hbar
  r.nearest_n = static_cast<int>(std::llround(r.value / half_h));
  r.deviation = r.value - r.nearest_n * half_h;
  return r;
}

double quantum_potential_1d(const MomentumField1D& field, double x) {
  const WaveBasis1D& basis = *field.basis;
  const auto pt = basis.at(x);
  const double l1 = field.mobius.l1;
  const double l2 = field.mobius.l2;

  // p = hbar W l1 / D with D a sum of squares; the Schwarzian of S0 is
  //   {S0, x} = (1/2) (D'/D)^2 - D''/D
  // with psi'' = f psi from the underlying equation.
  const double u = pt.psi_d + l2 * pt.psi;
  const double du = pt.dpsi_d + l2 * pt.dpsi;
  const double ddu = pt.f * u;  // u'' = f u by linearity
  const double ddpsi = pt.f * pt.psi;
  const double D = u * u + l1 * l1 * pt.psi * pt.psi;
  const double dD = 2.0 * u * du + 2.0 * l1 * l1 * pt.psi * pt.dpsi;
  const double ddD = 2.0 * (du * du + u * ddu) +
                     2.0 * l1 * l1 * (pt.dpsi * pt.dpsi + pt.psi * ddpsi);
  const double r = dD / D;
  const double schwarzian = 0.5 * r * r - ddD / D;
  return basis.hbar * basis.hbar / (4.0 * basis.mass) * schwarzian;
}

double hj_residual(const MomentumField1D& field, double x) {
  const WaveBasis1D& basis = *field.basis;
  const double p = field.momentum(x);
  const double qp = quantum_potential_1d(field, x);
  // V - E from the stored f = (2m/hbar^2)(V - E)
  const double v_minus_e =
      basis.at(x).f * basis.hbar * basis.hbar / (2.0 * basis.mass);
  return p * p / (2.0 * basis.mass) + qp + v_minus_e;
}

UncertaintyWell uncertainty_well(double l1, double width, double hbar) {
  if (!(l1 > 0.0) || !(width > 0.0))
    throw Error("uncertainty_well: l1 and width must be positive");
  UncertaintyWell u;
  u.delta_p = hbar * kPi / width * std::abs(l1 - 1.0 / l1);
  u.product = u.delta_p * width;
  return u;
}

}  // namespace qhj
