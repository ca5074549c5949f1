#pragma once

// Spectral helpers: radix-2 FFT, dominant-frequency estimation, and
// harmonic (drift + Fourier mode) least-squares fits of sampled paths.

#include <complex>
#include <vector>

namespace qhj {

/// In-place radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a);

/// Dominant angular frequency of uniformly sampled data (Hann window,
/// zero-padded FFT, quadratic peak interpolation). Returns 0 if no
/// oscillation is detectable.
double dominant_angular_frequency(const std::vector<double>& samples, double dt);

struct HarmonicFit {
  double offset = 0.0;
  double drift = 0.0;     // linear trend slope
  double omega = 0.0;     // fundamental angular frequency
  std::vector<double> amplitude;  // per harmonic 1..n
  std::vector<double> phase;      // q ~ offset + drift t + sum A_n cos(n w t + ph_n)
  double ssr = 0.0;
};

/// Least-squares fit of offset + drift*t + sum_{n<=n_harmonics} harmonics
/// at fixed omega.
HarmonicFit fit_harmonics(const std::vector<double>& t, const std::vector<double>& q,
                          double omega, int n_harmonics);

/// Same, but refines omega around omega0 by minimizing the residual
/// (golden-section search over [lo*omega0, hi*omega0]).
HarmonicFit fit_harmonics_refine(const std::vector<double>& t,
                                 const std::vector<double>& q, double omega0,
                                 int n_harmonics, double lo = 0.9, double hi = 1.1);

}  // namespace qhj
