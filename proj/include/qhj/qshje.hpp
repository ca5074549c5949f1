#pragma once

// Momentum fields of the stationary quantum Hamilton-Jacobi equation:
// built from a Schroedinger solution pair and two real parameters that
// select the physical field, plus the quantization (winding) integral and
// the quantum potential.

#include <complex>
#include <memory>

#include "qhj/schrodinger.hpp"

namespace qhj {

/// Reduced parameters (l1, l2), l1 != 0. Constructible from the complex
/// quadruple (A, B, C, D) when that quadruple yields a real field.
struct MobiusParams {
  double l1 = -1.0;
  double l2 = 0.0;

  static MobiusParams from_complex(std::complex<double> a, std::complex<double> b,
                                   std::complex<double> c, std::complex<double> d);
};

/// p(x) = hbar W l1 / ((psiD + l2 psi)^2 + l1^2 psi^2); never zero, sign
/// equals sign(W l1) everywhere.
double momentum_reduced(const WaveBasis1D& basis, const MobiusParams& mobius,
                        double x);

/// p(x) = (i/2) hbar (AD - BC) W / ((A psiD + B psi)(C psiD + D psi)),
/// checked to be real to 1e-10 relative.
double momentum_mobius(const WaveBasis1D& basis, std::complex<double> a,
                       std::complex<double> b, std::complex<double> c,
                       std::complex<double> d, double x);

/// p(x) = hbar Im(conj(psi) psi') / |psi|^2 from complex field samples,
/// five-point centered differences.
double momentum_from_wavefunction(const std::vector<double>& grid,
                                  const std::vector<std::complex<double>>& psi,
                                  double hbar, double x);

struct MomentumField1D {
  std::shared_ptr<const WaveBasis1D> basis;
  MobiusParams mobius;

  double momentum(double x) const { return momentum_reduced(*basis, mobius, x); }
};

struct WindingResult {
  double value = 0.0;      // integral of p over the grid, units of action
  int nearest_n = 0;       // value ~ nearest_n * h/2
  double deviation = 0.0;  // value - nearest_n * h/2
};

/// Evaluates the action integral of p over the basis domain with the
/// arctan antiderivative, tracking branch jumps across zeros of psi.
WindingResult winding_integral(const MomentumField1D& field);

/// (hbar^2/4m) {S0, x} with the Schwarzian computed from closed-form
/// derivatives of p (the basis ODE supplies psi'').
double quantum_potential_1d(const MomentumField1D& field, double x);

/// Residual of 1/(2m) p^2 + QP + V - E at x (vanishes for exact fields).
double hj_residual(const MomentumField1D& field, double x);

struct UncertaintyWell {
  double delta_p = 0.0;
  double product = 0.0;  // delta_p * width
};

/// Momentum spread of the lowest square-well field: Delta p =
/// (hbar pi / width) |l1 - 1/l1|.
UncertaintyWell uncertainty_well(double l1, double width, double hbar = 1.0);

}  // namespace qhj
