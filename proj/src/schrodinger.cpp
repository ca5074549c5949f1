#include "qhj/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhj/errors.hpp"

namespace qhj {

namespace {

// One Numerov step: y'' = f y on a uniform grid.
inline double numerov_step(double y_prev, double y_cur, double f_prev, double f_cur,
                           double f_next, double h2) {
  const double c_prev = 1.0 - h2 * f_prev / 12.0;
  const double c_cur = 2.0 + 5.0 * h2 * f_cur / 6.0;
  const double c_next = 1.0 - h2 * f_next / 12.0;
  return (c_cur * y_cur - c_prev * y_prev) / c_next;
}

// Start value y1 from (y0, y0') by RK4 micro-steps on the first interval.
double start_value(const std::vector<double>& f_interp_x,
                   const std::function<double(double)>& ffun, double x0, double h,
                   double y0, double dy0) {
  (void)f_interp_x;
  const int sub = 8;
  const double hs = h / sub;
  double y = y0, dy = dy0, x = x0;
  for (int i = 0; i < sub; ++i) {
    auto acc = [&](double xx, double yy) { return ffun(xx) * yy; };
    const double k1y = dy, k1d = acc(x, y);
    const double k2y = dy + 0.5 * hs * k1d, k2d = acc(x + 0.5 * hs, y + 0.5 * hs * k1y);
    const double k3y = dy + 0.5 * hs * k2d, k3d = acc(x + 0.5 * hs, y + 0.5 * hs * k2y);
    const double k4y = dy + hs * k3d, k4d = acc(x + hs, y + hs * k3y);
    y += hs / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += hs / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    x += hs;
  }
  return y;
}

// O(h^4) derivatives consistent with the Numerov solution.
std::vector<double> derivatives(const std::vector<double>& y,
                                const std::vector<double>& f, double h) {
  const size_t n = y.size();
  std::vector<double> dy(n);
  for (size_t i = 1; i + 1 < n; ++i) {
    dy[i] = (y[i + 1] - y[i - 1]) / (2.0 * h) -
            (h / 12.0) * (f[i + 1] * y[i + 1] - f[i - 1] * y[i - 1]);
  }
  // one-sided five-point ends
  auto fd5 = [&](size_t i, int dir) {
    return dir *
           (-25.0 * y[i] + 48.0 * y[i + dir] - 36.0 * y[i + 2 * dir] +
            16.0 * y[i + 3 * dir] - 3.0 * y[i + 4 * dir]) /
           (12.0 * h);
  };
  dy[0] = fd5(0, +1);
  dy[n - 1] = fd5(n - 1, -1);
  return dy;
}

}  // namespace

WaveBasis1D::Point WaveBasis1D::at(double x) const {
  if (x < x_min() - 1e-12 || x > x_max() + 1e-12)
    throw OutOfDomain("basis evaluation outside grid");
  const double h = step();
  size_t i = static_cast<size_t>(std::floor((x - grid.front()) / h));
  if (i + 1 >= grid.size()) i = grid.size() - 2;
  const double s = (x - grid[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  // derivative basis of the cubic
  const double g00 = 6 * s * (s - 1) / h;
  const double g10 = (1 - s) * (1 - 3 * s);
  const double g01 = -6 * s * (s - 1) / h;
  const double g11 = s * (3 * s - 2);
  Point p;
  p.psi = h00 * psi[i] + h10 * h * dpsi[i] + h01 * psi[i + 1] + h11 * h * dpsi[i + 1];
  p.psi_d = h00 * psi_d[i] + h10 * h * dpsi_d[i] + h01 * psi_d[i + 1] +
            h11 * h * dpsi_d[i + 1];
  p.dpsi = g00 * psi[i] + g10 * dpsi[i] + g01 * psi[i + 1] + g11 * dpsi[i + 1];
  p.dpsi_d = g00 * psi_d[i] + g10 * dpsi_d[i] + g01 * psi_d[i + 1] +
             g11 * dpsi_d[i + 1];
  p.f = schrod_f[i] * (1 - s) + schrod_f[i + 1] * s;
  return p;
}

WaveBasis1D solve_pair(const PhysicalSystem1D& system, double energy, int n_points) {
  if (n_points < 64) throw InvalidGrid("solve_pair: n_points must be >= 64");
  if (!(system.x_min < system.x_max)) throw InvalidGrid("solve_pair: empty domain");

  WaveBasis1D basis;
  basis.mass = system.mass;
  basis.hbar = system.hbar;
  basis.energy = energy;

  const int n = n_points;
  const double h = (system.x_max - system.x_min) / (n - 1);
  basis.grid.resize(n);
  basis.schrod_f.resize(n);
  const double pref = 2.0 * system.mass / (system.hbar * system.hbar);
  for (int i = 0; i < n; ++i) {
    basis.grid[i] = system.x_min + i * h;
    const double v = system.potential(basis.grid[i]);
    if (!std::isfinite(v)) throw InvalidGrid("solve_pair: potential not finite on grid");
    basis.schrod_f[i] = pref * (v - energy);
  }
  auto ffun = [&](double x) { return pref * (system.potential(x) - energy); };

  const double k0_raw =
      std::sqrt(2.0 * system.mass * std::abs(energy - system.potential(system.x_min))) /
      system.hbar;
  const double k0 = k0_raw > 0.0 ? k0_raw : 1.0;

  auto integrate = [&](double y0, double dy0) {
    std::vector<double> y(n);
    y[0] = y0;
    y[1] = start_value(basis.grid, ffun, system.x_min, h, y0, dy0);
    const double h2 = h * h;
    for (int i = 1; i + 1 < n; ++i) {
      y[i + 1] = numerov_step(y[i - 1], y[i], basis.schrod_f[i - 1], basis.schrod_f[i],
                              basis.schrod_f[i + 1], h2);
      if (!std::isfinite(y[i + 1]) || std::abs(y[i + 1]) > 1e300)
        throw NonFiniteSolution("solve_pair: solution overflow, renormalized shooting needed");
    }
    return y;
  };

  basis.psi = integrate(1.0, 0.0);
  basis.psi_d = integrate(0.0, k0);
  basis.dpsi = derivatives(basis.psi, basis.schrod_f, h);
  basis.dpsi_d = derivatives(basis.psi_d, basis.schrod_f, h);
  basis.dpsi[0] = 0.0;
  basis.dpsi_d[0] = k0;  // exact initial data

  basis.wronskian = -k0;  // psi'(x0) psiD(x0) - psiD'(x0) psi(x0)

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w =
        basis.dpsi[i] * basis.psi_d[i] - basis.dpsi_d[i] * basis.psi[i];
    worst = std::max(worst, std::abs(w - basis.wronskian));
  }
  if (worst > 1e-8 * std::abs(basis.wronskian))
    throw InvalidGrid("solve_pair: Wronskian drift exceeds 1e-8, grid too coarse");
  return basis;
}

namespace {

// Wronskian of the left and right shooting solutions at the potential
// minimum; analytic in E, vanishing exactly at bound energies.
double match_determinant(const PhysicalSystem1D& system, double energy, int n,
                         const std::vector<double>& fgrid, int i_match) {
  const double h = (system.x_max - system.x_min) / (n - 1);
  const double h2 = h * h;
  const double pref = 2.0 * system.mass / (system.hbar * system.hbar);
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = fgrid[i] - pref * energy;

  auto shoot = [&](bool from_left, double& val, double& deriv) {
    std::vector<double> y(n, 0.0);
    const int i0 = from_left ? 0 : n - 1;
    const int i1 = from_left ? 1 : n - 2;
    const int dir = from_left ? 1 : -1;
    y[i0] = 0.0;
    // cubic-consistent start off the Dirichlet edge; interior f avoids
    // sampling a hard wall at the edge node
    y[i1] = h * (1.0 + h2 * f[i1] / 6.0);
    // integrate one node past the match so the derivative stencil is filled
    for (int i = i1; i != i_match + dir;) {
      const int next = i + dir;
      y[next] = numerov_step(y[i - dir], y[i], f[i - dir], f[i], f[next], h2);
      if (std::abs(y[next]) > 1e250) {
        // positive rescale keeps signs and zeros intact
        const double s = 1e-200;
        for (int j = i0;; j += dir) {
          y[j] *= s;
          if (j == next) break;
        }
      }
      i = next;
    }
    val = y[i_match];
    deriv = (y[i_match + 1] - y[i_match - 1]) / (2.0 * h) -
            (h / 12.0) *
                (f[i_match + 1] * y[i_match + 1] - f[i_match - 1] * y[i_match - 1]);
  };

  double yl, dyl, yr, dyr;
  shoot(true, yl, dyl);
  shoot(false, yr, dyr);
  // normalize each side to unit magnitude at the match point
  const double sl = 1.0 / std::max({std::abs(yl), std::abs(dyl), 1e-280});
  const double sr = 1.0 / std::max({std::abs(yr), std::abs(dyr), 1e-280});
  return (dyl * sl) * (yr * sr) - (dyr * sr) * (yl * sl);
}

}  // namespace

std::vector<double> find_bound_energies(const PhysicalSystem1D& system, int count,
                                        double e_min, double e_max, int n_points) {
  if (count == 0) return {};
  if (!(e_min < e_max)) throw BracketExhausted("find_bound_energies: empty window");
  const int n = n_points;
  const double pref = 2.0 * system.mass / (system.hbar * system.hbar);
  std::vector<double> fgrid(n);
  const double h = (system.x_max - system.x_min) / (n - 1);
  int i_match = 0;
  double v_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = system.x_min + i * h;
    const double v = system.potential(x);
    fgrid[i] = pref * v;
    if (i > 0 && i + 1 < n && v < v_min) {
      v_min = v;
      i_match = i;
    }
  }
  if (i_match < 2) i_match = n / 2;

  auto det = [&](double e) { return match_determinant(system, e, n, fgrid, i_match); };

  const int n_scan = std::max(256, 64 * count);
  std::vector<double> found;
  double e_prev = e_min;
  double d_prev = det(e_prev);
  for (int s = 1; s <= n_scan && static_cast<int>(found.size()) < count; ++s) {
    const double e_cur = e_min + (e_max - e_min) * s / n_scan;
    const double d_cur = det(e_cur);
    if (d_prev == 0.0) found.push_back(e_prev);
    else if (d_prev * d_cur < 0.0) {
      double lo = e_prev, hi = e_cur, dlo = d_prev;
      while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        const double dm = det(mid);
        if (dm == 0.0) { lo = hi = mid; break; }
        if (dlo * dm < 0.0) hi = mid;
        else { lo = mid; dlo = dm; }
      }
      found.push_back(0.5 * (lo + hi));
    }
    e_prev = e_cur;
    d_prev = d_cur;
  }
  if (static_cast<int>(found.size()) < count)
    throw BracketExhausted("find_bound_energies: fewer sign changes than requested");
  found.resize(count);
  std::sort(found.begin(), found.end());
  return found;
}

double suggest_half_width(const PhysicalSystem1D& system, double energy,
                          double target_action) {
  // walk outward accumulating the decay action int kappa dx past the
  // turning point
  const double pref = 2.0 * system.mass / (system.hbar * system.hbar);
  double x = 0.0, action = 0.0;
  const double dx = 1e-3 * (1.0 + std::abs(energy));
  for (int i = 0; i < 20000000; ++i) {
    const double v = system.potential(x);
    if (v > energy) action += std::sqrt(pref * (v - energy)) * dx;
    if (action >= target_action) return x;
    x += dx;
  }
  throw InvalidGrid("suggest_half_width: potential not confining");
}

std::function<double(double)> free_potential() {
  return [](double) { return 0.0; };
}

std::function<double(double)> harmonic_potential(double m, double omega) {
  return [m, omega](double x) { return 0.5 * m * omega * omega * x * x; };
}

std::function<double(double)> square_well_potential(double half_width, double v0) {
  return [half_width, v0](double x) { return std::abs(x) < half_width ? 0.0 : v0; };
}

std::function<double(double)> table_potential(std::vector<double> xs,
                                              std::vector<double> vs) {
  if (xs.size() != vs.size() || xs.size() < 2)
    throw InvalidGrid("table_potential: need matching x/V samples");
  return [xs = std::move(xs), vs = std::move(vs)](double x) {
    if (x <= xs.front()) return vs.front();
    if (x >= xs.back()) return vs.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t i = static_cast<size_t>(it - xs.begin()) - 1;
    const double s = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return vs[i] * (1 - s) + vs[i + 1] * s;
  };
}

}  // namespace qhj
