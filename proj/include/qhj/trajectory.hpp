#pragma once

// Electron trajectories through the biprism velocity field, screen-density
// reconstruction from an ordered ensemble, and fringe-visibility
// diagnostics.

#include <vector>

#include "qhj/biprism.hpp"

namespace qhj {

struct TrajectoryRecord {
  double x_ini = 0.0;  // transverse position at the initialization plane
  Slot slot = Slot::lower;
  double beam_center_x0 = 0.0;
  std::vector<double> path_z;
  std::vector<double> path_x;
  double x_hit = 0.0;  // position at the screen
};

struct ScreenDensity {
  std::vector<double> positions;
  std::vector<double> intensity;
  double visibility = 0.0;  // filled by the run pipeline
  int crossings = 0;        // hit-order violations (diagnostic, not fatal)
};

/// Back-projected beam center for an electron at x_ini on the
/// initialization plane.
double beam_center(double x_ini, const BiprismGeometry& geom, double init_z = 4.0);

/// Single-slot density at the initialization plane: M1^2 + N1^2 with the
/// uniform-flux (plane-wave-equivalent) kernels. The mirrored slot follows
/// by reflection.
double initial_density(double x, const BiprismGeometry& geom, double init_z = 4.0);

/// Integrates dx/dz = velocity ratio from init_z to the screen; at least
/// 200 stored samples. Places the beam template's center from x_ini.
TrajectoryRecord propagate(double x_ini, Slot slot, const BiprismGeometry& geom,
                           const GaussianBeam& beam_template, double tol = 1e-10,
                           double init_z = 4.0, int n_samples = 256);

/// Density reconstruction from ordered trajectories: initial weight over
/// arrival speed times the initial-to-hit compression ratio, interior
/// points only.
ScreenDensity screen_density(const std::vector<TrajectoryRecord>& records,
                             const std::vector<double>& initial,
                             const BiprismGeometry& geom,
                             const GaussianBeam& beam_template);

/// Visibility (Imax - Imin)/(Imax + Imin) from windowed extrema after
/// smoothing over a tenth of the fringe period.
double fringe_visibility(const ScreenDensity& density, double window_lo,
                         double window_hi, double fringe_period);

/// Mean transverse velocity ratio implied by a fringe visibility.
double mean_velocity_from_visibility(double fv);

/// The initialization grid of the bundled benchmark ensemble (0.01 um
/// steps on [-2.000, -0.930] um, 0.005 um on [-0.925, -0.105] um; mm).
std::vector<double> benchmark_initial_grid();

struct BiprismRunResult {
  std::vector<TrajectoryRecord> records;
  std::vector<double> initial;      // densities at the initialization plane
  ScreenDensity lower;              // reconstructed lower-slot density
  ScreenDensity total;              // lower plus mirrored upper
  double visibility = 0.0;          // of the total, central window
  double mean_velocity_ratio = 0.0;
  double fringe_period_measured = 0.0;
  double density_peak_x = 0.0;      // largest envelope peak near the border
  double field_peak_x = 0.0;        // matching peak of the field intensity
};

/// Full reconstruction pipeline: ensemble propagation (parallel map over
/// trajectories), density, visibility, fringe period, and the envelope
/// peak comparison against the uniform-flux field intensity.
BiprismRunResult run_biprism(const BiprismGeometry& geom,
                             const GaussianBeam& beam_template,
                             const std::vector<double>& grid, double tol = 1e-10,
                             double init_z = 4.0, int threads = 0);

}  // namespace qhj
