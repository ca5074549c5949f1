#pragma once

// Stationary 1-D Schroedinger solver: linearly independent solution pairs
// on a uniform grid (Numerov) and bound-state energies by two-sided
// shooting with Wronskian matching.

#include <functional>
#include <vector>

namespace qhj {

struct PhysicalSystem1D {
  double mass = 1.0;
  double hbar = 1.0;
  std::function<double(double)> potential;  // V(x), finite on the open domain
  double x_min = 0.0;
  double x_max = 0.0;
};

/// Two linearly independent real solutions sampled on a uniform grid,
/// with derivatives. The Wronskian W = psi' psiD - psiD' psi is constant
/// (checked to 1e-8 relative across the grid).
struct WaveBasis1D {
  std::vector<double> grid;
  std::vector<double> psi, psi_d;
  std::vector<double> dpsi, dpsi_d;
  std::vector<double> schrod_f;  // f = (2m/hbar^2) (V - E) so that psi'' = f psi
  double wronskian = 0.0;
  double mass = 1.0;
  double hbar = 1.0;
  double energy = 0.0;

  double x_min() const { return grid.front(); }
  double x_max() const { return grid.back(); }
  double step() const { return grid[1] - grid[0]; }

  struct Point {
    double psi, psi_d, dpsi, dpsi_d, f;
  };
  /// Cubic Hermite interpolation of both solutions (and linear of f) at x.
  Point at(double x) const;
};

/// Integrates the pair from x_min with initial data (1, 0) and (0, k0),
/// k0 = sqrt(2m|E - V(x_min)|)/hbar or 1 if that vanishes.
WaveBasis1D solve_pair(const PhysicalSystem1D& system, double energy, int n_points);

/// Lowest `count` energies in [e_min, e_max] for which the two-sided
/// shooting solutions match (bisection on the matching Wronskian, refined
/// to 1e-10 relative).
std::vector<double> find_bound_energies(const PhysicalSystem1D& system, int count,
                                        double e_min, double e_max,
                                        int n_points = 6001);

/// Domain [-x, x] such that the WKB action from the classical turning
/// point to the edge is `target_action` (in units of hbar); keeps both the
/// exponential tail truncation and the growing-mode roundoff amplification
/// small when a full-line solution pair is needed at a bound energy.
double suggest_half_width(const PhysicalSystem1D& system, double energy,
                          double target_action = 8.0);

// Builtin potentials for configs and tests.
std::function<double(double)> free_potential();
std::function<double(double)> harmonic_potential(double m, double omega);
std::function<double(double)> square_well_potential(double half_width, double v0);
std::function<double(double)> table_potential(std::vector<double> xs,
                                              std::vector<double> vs);

}  // namespace qhj
