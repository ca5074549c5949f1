#include "qhj/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhj {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_radix2: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

double dominant_angular_frequency(const std::vector<double>& samples, double dt) {
  const size_t n = samples.size();
  if (n < 16) return 0.0;
  // detrend (least-squares line), Hann window, pad 8x
  double sum_t = 0, sum_t2 = 0, sum_q = 0, sum_tq = 0;
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    sum_t += t;
    sum_t2 += t * t;
    sum_q += samples[i];
    sum_tq += t * samples[i];
  }
  const double det = n * sum_t2 - sum_t * sum_t;
  const double slope = (n * sum_tq - sum_t * sum_q) / det;
  const double inter = (sum_q - slope * sum_t) / n;

  size_t m = 1;
  while (m < 8 * n) m <<= 1;
  std::vector<std::complex<double>> buf(m, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
    buf[i] = hann * (samples[i] - inter - slope * static_cast<double>(i));
  }
  fft_radix2(buf);

  size_t peak = 1;
  double peak_mag = 0.0;
  for (size_t i = 1; i + 1 < m / 2; ++i) {
    const double mag = std::abs(buf[i]);
    if (mag > peak_mag) {
      peak_mag = mag;
      peak = i;
    }
  }
  if (peak_mag <= 0.0) return 0.0;
  double shift = 0.0;
  const double a = std::abs(buf[peak - 1]);
  const double b = peak_mag;
  const double c = std::abs(buf[peak + 1]);
  const double denom = a - 2 * b + c;
  if (std::abs(denom) > 0) shift = 0.5 * (a - c) / denom;
  const double freq = (peak + shift) / (static_cast<double>(m) * dt);
  return 2.0 * kPi * freq;
}

namespace {

// dense symmetric solve via Gaussian elimination with partial pivoting
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    const double d = a[col][col];
    if (d == 0.0) throw std::runtime_error("solve_dense: singular system");
    for (size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / d;
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace

HarmonicFit fit_harmonics(const std::vector<double>& t, const std::vector<double>& q,
                          double omega, int n_harmonics) {
  const size_t n = t.size();
  const size_t cols = 2 + 2 * static_cast<size_t>(n_harmonics);
  std::vector<std::vector<double>> design(n, std::vector<double>(cols));
  for (size_t i = 0; i < n; ++i) {
    design[i][0] = 1.0;
    design[i][1] = t[i];
    for (int h = 1; h <= n_harmonics; ++h) {
      design[i][2 * h] = std::cos(h * omega * t[i]);
      design[i][2 * h + 1] = std::sin(h * omega * t[i]);
    }
  }
  // normal equations
  std::vector<std::vector<double>> ata(cols, std::vector<double>(cols, 0.0));
  std::vector<double> atb(cols, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t r = 0; r < cols; ++r) {
      atb[r] += design[i][r] * q[i];
      for (size_t c = r; c < cols; ++c) ata[r][c] += design[i][r] * design[i][c];
    }
  }
  for (size_t r = 0; r < cols; ++r)
    for (size_t c = 0; c < r; ++c) ata[r][c] = ata[c][r];
  const std::vector<double> coef = solve_dense(ata, atb);

  HarmonicFit fit;
  fit.offset = coef[0];
  fit.drift = coef[1];
  fit.omega = omega;
  for (int h = 1; h <= n_harmonics; ++h) {
    const double a = coef[2 * h], b = coef[2 * h + 1];
    fit.amplitude.push_back(std::hypot(a, b));
    fit.phase.push_back(std::atan2(-b, a));
  }
  double ssr = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double model = 0.0;
    for (size_t c = 0; c < cols; ++c) model += coef[c] * design[i][c];
    ssr += (q[i] - model) * (q[i] - model);
  }
  fit.ssr = ssr;
  return fit;
}

HarmonicFit fit_harmonics_refine(const std::vector<double>& t,
                                 const std::vector<double>& q, double omega0,
                                 int n_harmonics, double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo * omega0, b = hi * omega0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = fit_harmonics(t, q, x1, n_harmonics).ssr;
  double f2 = fit_harmonics(t, q, x2, n_harmonics).ssr;
  for (int it = 0; it < 90 && (b - a) > 1e-13 * omega0; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = fit_harmonics(t, q, x1, n_harmonics).ssr;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = fit_harmonics(t, q, x2, n_harmonics).ssr;
    }
  }
  return fit_harmonics(t, q, 0.5 * (a + b), n_harmonics);
}

}  // namespace qhj
