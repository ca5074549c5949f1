#pragma once

// Fourth-order trajectory mechanics of the semiclassical Lagrangian
// L = m qd^2/2 - hbar^2 (1 - 2 eps) qdd^2 / (2 m qd^4): Euler-Lagrange
// integration, conjugate momenta, conserved energy, the semiclassical
// coefficient fit, Fourier diagnostics, and the third-harmonic matching
// residual.

#include <array>
#include <vector>

namespace qhj {

struct HOState {
  double t = 0.0;
  double q = 0.0;
  double qd = 1.0;    // velocity; never zero along solutions
  double qdd = 0.0;   // acceleration
  double qddd = 0.0;  // jerk
};

struct HOParams {
  double eps = 0.0;  // constant per trajectory
  double mass = 1.0;
  double hbar = 1.0;

  double coupling() const { return hbar * hbar * (1.0 - 2.0 * eps) / mass; }
};

/// d(qddd)/dt from the Euler-Lagrange equation solved for the top
/// derivative.
double el_derivative(const HOState& state, const HOParams& params);

struct JoMomenta {
  double p1 = 0.0;  // conserved for the free Lagrangian
  double p2 = 0.0;
};
JoMomenta jo_momenta(const HOState& state, const HOParams& params);

double energy(const HOState& state, const HOParams& params);

/// p_EL = p1 + p2 qdd/qd, the reduced-action gradient along a trajectory.
double p_el(const HOState& state, const HOParams& params);

/// Adaptive Runge-Kutta path with `n_out` uniform samples. Throws
/// VelocityCollapse if qd falls below qd_floor (sign change imminent).
std::vector<HOState> integrate(const HOState& state0, const HOParams& params,
                               double t_final, double tol, int n_out = 4096,
                               double qd_floor = 1e-6);

struct SemiclassicalFit {
  double eps1 = 0.0, eps2 = 0.0, eps = 0.0;
  double v = 0.0;      // drift velocity
  double omega = 0.0;  // = k v
  double c2b = 0.0;    // quadratic Lagrangian coefficient, < 0
  double a1 = 0.0, b1 = 0.0;  // first-harmonic components
  double p1 = 0.0;
  double energy = 0.0;
  double mass = 1.0, hbar = 1.0;
};

/// Drift, frequency, coefficient and first-harmonic amplitudes matching
/// the free momentum field with l1 = -(1 + eps1), l2 = eps2.
SemiclassicalFit fit_semiclassical(double eps1, double eps2, double energy,
                                   double mass, double hbar);

/// Phase-space point of the fitted trajectory at t = 0. Includes the
/// second harmonic (amplitude omega A1^2 / (2 v), quarter-period phase
/// lead) so the launched orbit carries the intended invariants.
HOState initial_state(const SemiclassicalFit& fit);

/// Free momentum field evaluated at x for the fit's (eps1, eps2, E).
double reference_momentum(const SemiclassicalFit& fit, double x);

struct FourierModes {
  double drift = 0.0;
  double omega = 0.0;
  std::vector<double> amplitude;  // harmonics 1..4
  std::vector<double> phase;
};

/// Trend removal plus discrete Fourier analysis of a uniformly sampled
/// path; requires at least eight full periods.
FourierModes fourier_modes(const std::vector<HOState>& path);

struct InconsistencyResidual {
  double best_c3 = 0.0;
  double residual = 0.0;  // strictly positive for eps > 0
};

/// Least-squares fit of the cubic coefficient against the third-harmonic
/// content of the momentum field; the remaining quadrature component
/// cannot be matched, so the residual stays positive.
InconsistencyResidual inconsistency_residual(const SemiclassicalFit& fit);

/// Coefficient of the isotropic 3-D free Lagrangian from per-axis field
/// parameters: -1/2 (1 - 2 sum_i E_i eps_i / E).
double c2b_3d(const std::array<double, 3>& eps1, const std::array<double, 3>& eps2,
              const std::array<double, 3>& energies);

/// Solves the energy relation for qd^2 given the local potential value and
/// higher derivatives; may be positive even where E < V.
double tunneling_speed_squared(double total_energy, double v_at_x, double qdd,
                               double qddd, double mass, double hbar);

}  // namespace qhj
