#include "qhj/homech.hpp"

#include <cmath>

#include "qhj/errors.hpp"
#include "qhj/ode.hpp"
#include "qhj/spectral.hpp"

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_moving(const HOState& s) {
  if (std::abs(s.qd) < 1e-12)
    throw ZeroVelocity("higher-order mechanics: qd below machine guard");
}
}  // namespace

double el_derivative(const HOState& s, const HOParams& p) {
  require_moving(s);
  const double qd = s.qd;
  const double c = p.coupling();  // hbar^2 (1 - 2 eps) / m
  return -(p.mass / c) * qd * qd * qd * qd * s.qdd + 8.0 * s.qddd * s.qdd / qd -
         10.0 * s.qdd * s.qdd * s.qdd / (qd * qd);
}

JoMomenta jo_momenta(const HOState& s, const HOParams& p) {
  require_moving(s);
  const double c = p.coupling();
  const double qd = s.qd;
  JoMomenta m;
  m.p1 = p.mass * qd -
         c * (2.0 * s.qdd * s.qdd / std::pow(qd, 5) - s.qddd / std::pow(qd, 4));
  m.p2 = -c * s.qdd / std::pow(qd, 4);
  return m;
}

double energy(const HOState& s, const HOParams& p) {
  require_moving(s);
  const double c = p.coupling();
  const double qd = s.qd;
  return 0.5 * p.mass * qd * qd -
         c * (2.5 * s.qdd * s.qdd / std::pow(qd, 4) - s.qddd / (qd * qd * qd));
}

double p_el(const HOState& s, const HOParams& p) {
  const JoMomenta m = jo_momenta(s, p);
  return m.p1 + m.p2 * s.qdd / s.qd;
}

std::vector<HOState> integrate(const HOState& state0, const HOParams& params,
                               double t_final, double tol, int n_out,
                               double qd_floor) {
  using State = std::array<double, 4>;
  const double sign0 = state0.qd > 0 ? 1.0 : -1.0;
  auto rhs = [&](double, const State& y) -> State {
    HOState s{0.0, y[0], y[1], y[2], y[3]};
    return {y[1], y[2], y[3], el_derivative(s, params)};
  };
  auto guard = [&](const State& y) { return sign0 * y[1] > qd_floor; };
  const auto samples = integrate_dopri5<4>(
      rhs, state0.t, state0.t + t_final,
      {state0.q, state0.qd, state0.qdd, state0.qddd}, tol, tol * 1e-2, n_out, guard);
  std::vector<HOState> path;
  path.reserve(samples.size());
  for (const auto& s : samples)
    path.push_back({s.t, s.y[0], s.y[1], s.y[2], s.y[3]});
  return path;
}

SemiclassicalFit fit_semiclassical(double eps1, double eps2, double total_energy,
                                   double mass, double hbar) {
  SemiclassicalFit f;
  f.eps1 = eps1;
  f.eps2 = eps2;
  f.eps = std::hypot(eps1, eps2);
  if (f.eps >= 0.2)
    throw RegimeViolation("fit_semiclassical: eps >= 0.2 is outside the regime");
  if (!(total_energy > 0.0))
    throw RegimeViolation("fit_semiclassical: energy must be positive");
  f.mass = mass;
  f.hbar = hbar;
  f.energy = total_energy;
  const double p0 = std::sqrt(2.0 * mass * total_energy);
  const double k = p0 / hbar;
  f.v = p0 / mass * (1.0 - f.eps);
  f.omega = k * f.v;
  f.c2b = -0.5 * (1.0 - 2.0 * f.eps);
  f.p1 = p0 * (1.0 + f.eps);
  const double scale = hbar * hbar / (2.0 * mass * total_energy);
  f.a1 = std::sqrt(std::max(scale * (eps1 + f.eps), 0.0));
  f.b1 = std::sqrt(std::max(scale * (f.eps - eps1), 0.0));
  if (eps2 < 0.0) f.b1 = -f.b1;  // sign pairing follows the field's phase
  return f;
}

HOState initial_state(const SemiclassicalFit& fit) {
  const double a1 = std::hypot(fit.a1, fit.b1);
  const double th1 = std::atan2(-fit.b1, fit.a1);
  const double a2 = fit.v > 0.0 ? 0.5 * fit.omega * a1 * a1 / fit.v : 0.0;
  const double th2 = 2.0 * th1 + 0.5 * kPi;
  const double w = fit.omega;
  HOState s;
  s.t = 0.0;
  s.q = a1 * std::cos(th1) + a2 * std::cos(th2);
  s.qd = fit.v - a1 * w * std::sin(th1) - 2.0 * a2 * w * std::sin(th2);
  s.qdd = -a1 * w * w * std::cos(th1) - 4.0 * a2 * w * w * std::cos(th2);
  s.qddd = a1 * w * w * w * std::sin(th1) + 8.0 * a2 * w * w * w * std::sin(th2);
  return s;
}

double reference_momentum(const SemiclassicalFit& fit, double x) {
  const double k = std::sqrt(2.0 * fit.mass * fit.energy) / fit.hbar;
  const double s = std::sin(k * x), c = std::cos(k * x);
  const double u = s + fit.eps2 * c;
  const double one = 1.0 + fit.eps1;
  return fit.hbar * k * one / (u * u + one * one * c * c);
}

FourierModes fourier_modes(const std::vector<HOState>& path) {
  const size_t n = path.size();
  if (n < 64) throw InsufficientSpan("fourier_modes: too few samples");
  const double dt = path[1].t - path[0].t;
  for (size_t i = 1; i < n; ++i) {
    if (std::abs(path[i].t - path[i - 1].t - dt) > 1e-9 * std::abs(dt))
      throw InsufficientSpan("fourier_modes: sampling must be uniform");
  }
  std::vector<double> t(n), q(n);
  for (size_t i = 0; i < n; ++i) {
    t[i] = path[i].t;
    q[i] = path[i].q;
  }
  const double omega0 = dominant_angular_frequency(q, dt);
  const double span = t.back() - t.front();
  if (omega0 <= 0.0 || span * omega0 / (2.0 * kPi) < 8.0)
    throw InsufficientSpan("fourier_modes: need at least eight periods");
  const HarmonicFit fit = fit_harmonics_refine(t, q, omega0, 4);
  FourierModes m;
  m.drift = fit.drift;
  m.omega = fit.omega;
  m.amplitude = fit.amplitude;
  m.phase = fit.phase;
  return m;
}

InconsistencyResidual inconsistency_residual(const SemiclassicalFit& fit) {
  InconsistencyResidual out;
  const double a1 = std::hypot(fit.a1, fit.b1);
  if (a1 == 0.0) return out;  // no oscillation, no mismatch

  const double m = fit.mass, hbar = fit.hbar;
  const double k = std::sqrt(2.0 * m * fit.energy) / hbar;
  const double v = fit.v, w = fit.omega, c2b = fit.c2b;
  const double a13 = a1 * a1 * a1;

  // third-harmonic component of the field momentum, in the
  // (cos, sin)(3 w t + 3 th1) basis: pure quadrature
  const double field_sin = hbar * k * fit.eps * k * a1;
  const double field_cos = 0.0;

  // trajectory side: quadrature part is fixed, the in-phase part is
  // linear in the cubic coefficient
  const double pref = 2.0 * c2b * hbar * hbar / m * std::pow(w, 5) * a13 /
                      std::pow(v, 6);
  const double traj_sin = pref * (-2.0 + 5.0 / 4.0);
  const double k_c3 = pref * (-2.0 / std::pow(-2.0 * c2b, 1.5)) -
                      3.0 * std::pow(hbar, 3) * std::pow(w, 6) * a13 /
                          (4.0 * m * m * std::pow(v, 8));

  // least squares over c3: only the in-phase mismatch depends on it
  out.best_c3 = k_c3 != 0.0 ? field_cos / k_c3 : 0.0;
  const double cos_mismatch = k_c3 * out.best_c3 - field_cos;
  const double sin_mismatch = traj_sin - field_sin;
  out.residual = std::hypot(cos_mismatch, sin_mismatch);
  return out;
}

double c2b_3d(const std::array<double, 3>& eps1, const std::array<double, 3>& eps2,
              const std::array<double, 3>& energies) {
  double e_total = 0.0, weighted = 0.0, eps_norm = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (energies[i] < 0.0) throw RegimeViolation("c2b_3d: negative axis energy");
    const double eps_i = std::hypot(eps1[i], eps2[i]);
    e_total += energies[i];
    weighted += energies[i] * eps_i;
    eps_norm += eps_i;
  }
  if (!(e_total > 0.0)) throw RegimeViolation("c2b_3d: all axis energies vanish");
  if (eps_norm >= 0.2) throw RegimeViolation("c2b_3d: eps norm >= 0.2");
  return -0.5 * (1.0 - 2.0 * weighted / e_total);
}

double tunneling_speed_squared(double total_energy, double v_at_x, double qdd,
                               double qddd, double mass, double hbar) {
  // solve E - V = m s/2 - (hbar^2/m)(5 qdd^2/(2 s^2) - qddd/s^(3/2)) for
  // s = qd^2 > 0, damped Newton from the classical seed
  const double target = total_energy - v_at_x;
  const double hb2 = hbar * hbar / mass;
  auto f = [&](double s) {
    return 0.5 * mass * s -
           hb2 * (2.5 * qdd * qdd / (s * s) - qddd / std::pow(s, 1.5)) - target;
  };
  auto df = [&](double s) {
    return 0.5 * mass +
           hb2 * (5.0 * qdd * qdd / (s * s * s) - 1.5 * qddd / std::pow(s, 2.5));
  };
  const double scale = std::abs(target) + std::abs(total_energy) + 1e-12;
  double s = std::max(2.0 * target / mass, 1e-3 * scale / mass);
  for (int it = 0; it < 100; ++it) {
    const double val = f(s);
    if (std::abs(val) < 1e-14 * scale) return s;
    const double grad = df(s);
    if (grad == 0.0) break;
    double step = -val / grad * 0.5;  // damping 0.5
    while (s + step <= 0.0) step *= 0.5;
    s += step;
  }
  if (std::abs(f(s)) < 1e-10 * scale && s > 0.0) return s;
  throw NoRealRoot("tunneling_speed_squared: no positive root found");
}

}  // namespace qhj
