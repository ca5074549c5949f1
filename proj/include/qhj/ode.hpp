#pragma once

// Adaptive Dormand-Prince 5(4) integrator over small fixed-size states.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "qhj/errors.hpp"

namespace qhj {

template <int N>
struct OdeSample {
  double t;
  std::array<double, N> y;
  std::array<double, N> dy;
};

/// Integrates y' = f(t, y) from t0 to t1, returning samples at `n_out`
/// uniformly spaced times (cubic Hermite interpolation between accepted
/// steps). `guard` may veto a state (return false) to abort integration.
template <int N>
std::vector<OdeSample<N>> integrate_dopri5(
    const std::function<std::array<double, N>(double, const std::array<double, N>&)>& f,
    double t0, double t1, std::array<double, N> y0, double rel_tol,
    double abs_tol, int n_out,
    const std::function<bool(const std::array<double, N>&)>& guard = nullptr) {
  using State = std::array<double, N>;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](State& out, const State& base, double h,
                 std::initializer_list<std::pair<double, const State*>> terms) {
    for (int i = 0; i < N; ++i) {
      double acc = base[i];
      for (const auto& [coef, k] : terms) acc += h * coef * (*k)[i];
      out[i] = acc;
    }
  };

  const double span = t1 - t0;
  double t = t0;
  State y = y0;
  State k1 = f(t, y);
  double h = span / 256.0;

  std::vector<OdeSample<N>> out;
  out.reserve(n_out);
  const double dt_out = span / (n_out - 1);
  int next_out = 0;

  auto emit_through = [&](double t_prev, const State& y_prev, const State& k_prev,
                          double t_new, const State& y_new, const State& k_new) {
    while (next_out < n_out) {
      const double t_want = t0 + next_out * dt_out;
      if (t_want > t_new + 1e-12 * std::abs(span)) break;
      const double dt = t_new - t_prev;
      const double s = dt > 0 ? (t_want - t_prev) / dt : 0.0;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
      const double h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s);
      const double h11 = s * s * (s - 1);
      OdeSample<N> smp;
      smp.t = t_want;
      for (int i = 0; i < N; ++i) {
        smp.y[i] = h00 * y_prev[i] + h10 * dt * k_prev[i] + h01 * y_new[i] +
                   h11 * dt * k_new[i];
        smp.dy[i] = 0.0;
      }
      smp.dy = f(t_want, smp.y);
      out.push_back(smp);
      ++next_out;
    }
  };

  emit_through(t, y, k1, t, y, k1);

  long step_count = 0;
  while (t < t1) {
    if (++step_count > 100000000L) throw StepUnderflow("integrate_dopri5: step budget");
    if (h < 1e-14 * std::abs(span)) throw StepUnderflow("integrate_dopri5: step underflow");
    if (t + h > t1) h = t1 - t;

    State ytmp, k2, k3, k4, k5, k6, k7, y5;
    axpy(ytmp, y, h, {{a21, &k1}});
    k2 = f(t + c2 * h, ytmp);
    axpy(ytmp, y, h, {{a31, &k1}, {a32, &k2}});
    k3 = f(t + c3 * h, ytmp);
    axpy(ytmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k4 = f(t + c4 * h, ytmp);
    axpy(ytmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k5 = f(t + c5 * h, ytmp);
    axpy(ytmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    k6 = f(t + h, ytmp);
    axpy(y5, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = f(t + h, y5);

    double err = 0.0;
    for (int i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (ei / scale) * (ei / scale);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      if (guard && !guard(y5)) throw VelocityCollapse("integrate_dopri5: guard tripped");
      emit_through(t, y, k1, t + h, y5, k7);
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    const double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  // flush any trailing outputs at t1
  emit_through(t, y, k1, t, y, k1);
  return out;
}

}  // namespace qhj
