#include "qhj/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "qhj/errors.hpp"
#include "qhj/ode.hpp"
#include "qhj/parallel.hpp"
#include "qhj/spectral.hpp"

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> boxcar(const std::vector<double>& y, int half) {
  const int n = static_cast<int>(y.size());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half), hi = std::min(n - 1, i + half);
    double acc = 0.0;
    for (int j = lo; j <= hi; ++j) acc += y[j];
    out[i] = acc / (hi - lo + 1);
  }
  return out;
}

struct UniformCurve {
  std::vector<double> x;
  std::vector<double> y;
  double step = 0.0;
};

UniformCurve resample(const std::vector<double>& xs, const std::vector<double>& ys,
                      double lo, double hi, double step) {
  UniformCurve c;
  c.step = step;
  for (double x = lo; x <= hi; x += step) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin() || it == xs.end()) continue;
    const size_t i = static_cast<size_t>(it - xs.begin());
    const double s = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    c.x.push_back(x);
    c.y.push_back(ys[i - 1] * (1 - s) + ys[i] * s);
  }
  return c;
}

}  // namespace

double beam_center(double x_ini, const BiprismGeometry& geom, double init_z) {
  return x_ini - geom.slope() * init_z;
}

double initial_density(double x, const BiprismGeometry& geom, double init_z) {
  const DiffractionKernels k = kernels_plane_wave(x, init_z, geom);
  return k.m1 * k.m1 + k.n1 * k.n1;
}

TrajectoryRecord propagate(double x_ini, Slot slot, const BiprismGeometry& geom,
                           const GaussianBeam& beam_template, double tol,
                           double init_z, int n_samples) {
  TrajectoryRecord rec;
  rec.x_ini = x_ini;
  rec.slot = slot;
  rec.beam_center_x0 = beam_center(x_ini, geom, init_z);

  GaussianBeam beam = beam_template;
  beam.center_x0 = rec.beam_center_x0;
  if (!fresnel_valid(x_ini, init_z, beam, geom))
    throw ValidityViolation("propagate: initialization plane outside the valid region");

  auto rhs = [&](double z, const std::array<double, 1>& y) -> std::array<double, 1> {
    return {velocity_ratio(y[0], z, geom, beam, slot)};
  };
  const auto samples = integrate_dopri5<1>(rhs, init_z, geom.screen_z, {x_ini}, tol,
                                           tol * 1e-3, std::max(n_samples, 200));
  rec.path_z.reserve(samples.size());
  rec.path_x.reserve(samples.size());
  for (const auto& s : samples) {
    rec.path_z.push_back(s.t);
    rec.path_x.push_back(s.y[0]);
  }
  rec.x_hit = rec.path_x.back();
  if (!fresnel_valid(rec.x_hit, geom.screen_z, beam, geom))
    throw ValidityViolation("propagate: path left the valid region");
  return rec;
}

ScreenDensity screen_density(const std::vector<TrajectoryRecord>& records,
                             const std::vector<double>& initial,
                             const BiprismGeometry& geom,
                             const GaussianBeam& beam_template) {
  const size_t n = records.size();
  if (n < 3 || initial.size() != n)
    throw TrajectoryCrossing("screen_density: need >= 3 ordered records");
  ScreenDensity out;
  for (size_t i = 1; i + 1 < n; ++i) {
    if (records[i].x_ini <= records[i - 1].x_ini)
      throw TrajectoryCrossing("screen_density: records not sorted by x_ini");
    if (records[i].x_hit <= records[i - 1].x_hit) ++out.crossings;
  }
  out.positions.reserve(n - 2);
  out.intensity.reserve(n - 2);
  for (size_t i = 1; i + 1 < n; ++i) {
    GaussianBeam beam = beam_template;
    beam.center_x0 = records[i].beam_center_x0;
    // arrival speed normalized to the single-slot value kx/kz
    const double xdot =
        std::abs(velocity_ratio(records[i].x_hit, geom.screen_z, geom, beam,
                                records[i].slot)) /
        geom.slope();
    const double jac = (records[i + 1].x_ini - records[i - 1].x_ini) /
                       (records[i + 1].x_hit - records[i - 1].x_hit);
    out.positions.push_back(records[i].x_hit);
    out.intensity.push_back(initial[i] / xdot * jac);
  }
  return out;
}

double fringe_visibility(const ScreenDensity& density, double window_lo,
                         double window_hi, double fringe_period) {
  const double step = fringe_period / 40.0;
  const UniformCurve c = resample(density.positions, density.intensity,
                                  window_lo - fringe_period, window_hi + fringe_period,
                                  step);
  if (c.x.size() < 16) throw InsufficientFringes("fringe_visibility: window too small");
  const std::vector<double> smooth = boxcar(c.y, 2);  // width ~ period/10

  std::vector<double> maxima, minima;
  for (size_t i = 1; i + 1 < smooth.size(); ++i) {
    if (c.x[i] < window_lo || c.x[i] > window_hi) continue;
    if (smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1])
      maxima.push_back(smooth[i]);
    if (smooth[i] < smooth[i - 1] && smooth[i] <= smooth[i + 1])
      minima.push_back(smooth[i]);
  }
  if (maxima.size() < 3 || minima.size() < 2)
    throw InsufficientFringes("fringe_visibility: need at least three fringes");
  const double i_max = *std::max_element(maxima.begin(), maxima.end());
  const double i_min = *std::min_element(minima.begin(), minima.end());
  return (i_max - i_min) / (i_max + i_min);
}

double mean_velocity_from_visibility(double fv) {
  if (fv < 0.0 || fv > 1.0)
    throw Error("mean_velocity_from_visibility: visibility must be in [0, 1]");
  return std::sqrt(1.0 - fv * fv);
}

std::vector<double> benchmark_initial_grid() {
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double x_um = -2.000 + 0.01 * i;
    if (x_um > -0.930 + 1e-9) break;
    grid.push_back(x_um * 1e-3);
  }
  for (int i = 0;; ++i) {
    const double x_um = -0.925 + 0.005 * i;
    if (x_um > -0.105 + 1e-9) break;
    grid.push_back(x_um * 1e-3);
  }
  return grid;
}

BiprismRunResult run_biprism(const BiprismGeometry& geom,
                             const GaussianBeam& beam_template,
                             const std::vector<double>& grid, double tol,
                             double init_z, int threads) {
  BiprismRunResult result;
  const int n = static_cast<int>(grid.size());
  result.records.resize(n);
  result.initial.resize(n);
  parallel_for(n, threads, [&](int i) {
    result.records[i] = propagate(grid[i], Slot::lower, geom, beam_template, tol, init_z);
    result.initial[i] = initial_density(grid[i], geom, init_z);
  });

  result.lower = screen_density(result.records, result.initial, geom, beam_template);

  // total pattern: lower plus the mirrored upper-slot reconstruction,
  // sampled over the overlap of the two supports
  const auto& xs = result.lower.positions;
  const auto& is = result.lower.intensity;
  const double period = kPi / geom.kx;
  const double lo = std::max(xs.front(), -xs.back());
  const double hi = std::min(xs.back(), -xs.front());
  const double step = period / 40.0;
  ScreenDensity total;
  std::vector<double> xs_rev(xs.rbegin(), xs.rend());
  std::vector<double> is_rev(is.rbegin(), is.rend());
  for (double& x : xs_rev) x = -x;
  for (double x = lo; x <= hi; x += step) {
    auto interp = [](const std::vector<double>& gx, const std::vector<double>& gy,
                     double xq) {
      const auto it = std::upper_bound(gx.begin(), gx.end(), xq);
      const size_t i =
          std::min(std::max<size_t>(it - gx.begin(), 1), gx.size() - 1);
      const double s = (xq - gx[i - 1]) / (gx[i] - gx[i - 1]);
      return gy[i - 1] * (1 - s) + gy[i] * s;
    };
    total.positions.push_back(x);
    total.intensity.push_back(interp(xs, is, x) + interp(xs_rev, is_rev, x));
  }
  result.total = total;

  // central-window visibility over eight fringe periods
  const double half_window = 4.0 * period;
  result.visibility = fringe_visibility(result.total, -half_window, half_window, period);
  result.total.visibility = result.visibility;
  result.lower.visibility = result.visibility;
  result.mean_velocity_ratio = mean_velocity_from_visibility(result.visibility);

  // fringe period from the dominant spectral peak of the central window
  {
    std::vector<double> win;
    for (size_t i = 0; i < total.positions.size(); ++i)
      if (std::abs(total.positions[i]) <= 6.0 * period) win.push_back(total.intensity[i]);
    const double omega_x = dominant_angular_frequency(win, step);
    result.fringe_period_measured = omega_x > 0 ? 2.0 * kPi / omega_x : 0.0;
  }

  // envelope peaks near the lower-slot shadow border: reconstructed
  // density vs the uniform-flux field intensity
  const double border = geom.lower_border(geom.screen_z);
  {
    const UniformCurve c = resample(total.positions, total.intensity, 0.3 * border,
                                    border, period / 40.0);
    const std::vector<double> env = boxcar(c.y, 40);  // ~ two fringe periods
    size_t best = 0;
    for (size_t i = 1; i < env.size(); ++i)
      if (env[i] > env[best]) best = i;
    result.density_peak_x = c.x.empty() ? 0.0 : c.x[best];
  }
  {
    // uniform-flux field intensity: integral over beam centers
    const double c_half = 6.4e-3;
    const int n_x0 = 161;
    std::vector<double> gx, gI;
    const double dx = period / 12.0;
    for (double x = 0.3 * border; x <= border; x += dx) gx.push_back(x);
    gI.resize(gx.size());
    parallel_for(static_cast<int>(gx.size()), threads, [&](int i) {
      double acc = 0.0;
      for (int j = 0; j < n_x0; ++j) {
        GaussianBeam b = beam_template;
        b.center_x0 = -c_half + 2.0 * c_half * j / (n_x0 - 1);
        const double wq = (j == 0 || j == n_x0 - 1) ? 0.5 : 1.0;
        acc += wq * intensity_closed_form(gx[i], geom.screen_z, geom, b);
      }
      gI[i] = acc;
    });
    const std::vector<double> env = boxcar(gI, 24);  // ~ two fringe periods
    size_t best = 0;
    for (size_t i = 1; i < env.size(); ++i)
      if (env[i] > env[best]) best = i;
    result.field_peak_x = gx[best];
  }
  return result;
}

}  // namespace qhj
