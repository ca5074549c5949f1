#include "qhj/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qhj/errors.hpp"

namespace qhj {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPi = 3.14159265358979323846;

// Node spacing and envelope cutoff of the sinc-type rules below. With
// h = 0.4 the rule error is ~exp(-pi^2/h^2) ~ 1e-27; the Gaussian factor
// is below 1e-24 past |t| = 7.4.
constexpr double kH = 0.4;
constexpr double kTmax = 7.4;

// Laplace continued fraction, good for |z| >= ~7 in the upper half plane.
cdouble w_continued_fraction(cdouble z) {
  cdouble r = 0.0;
  for (int n = 26; n >= 1; --n) r = (0.5 * n) / (z - r);
  return cdouble(0.0, 1.0 / kSqrtPi) / (z - r);
}

// Midpoint rule on nodes (n + 1/2) h plus the pole-correction term whose
// singularities sit exactly on those nodes.
cdouble w_midpoint(cdouble z) {
  const int n_max = static_cast<int>(std::floor(kTmax / kH));
  cdouble s = 0.0;
  for (int n = -n_max - 1; n <= n_max; ++n) {
    const double t = (n + 0.5) * kH;
    s += std::exp(-t * t) / (z - t);
  }
  s *= cdouble(0.0, kH / kPi);
  s += 2.0 * std::exp(-z * z) / (1.0 + std::exp(cdouble(0.0, -2.0 * kPi / kH) * z));
  return s;
}

// Trapezoid rule on nodes n h; poles of its correction sit on those nodes.
cdouble w_trapezoid(cdouble z) {
  const int n_max = static_cast<int>(std::floor(kTmax / kH));
  cdouble s = std::exp(-z * z) * 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    const double t = n * kH;
    s += std::exp(-t * t) / (z - t);
  }
  s *= cdouble(0.0, kH / kPi);
  s += 2.0 * std::exp(-z * z) / (1.0 - std::exp(cdouble(0.0, -2.0 * kPi / kH) * z));
  return s;
}

cdouble w_upper(cdouble z) {
  if (std::abs(z) >= 7.0) return w_continued_fraction(z);
  // Pick the rule whose nodes are farthest from Re(z).
  const double frac = z.real() / kH - std::round(z.real() / kH);
  return std::abs(frac) >= 0.25 ? w_trapezoid(z) : w_midpoint(z);
}

}  // namespace

cdouble faddeeva_w(cdouble z) {
  if (z.imag() >= 0.0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

FresnelCS fresnel_cs(double x) {
  // C(x) + i S(x) = (1+i)/2 erf(zeta), zeta = sqrt(pi)/2 (1-i) x.
  // erf(zeta) = 1 - exp(-zeta^2) w(i zeta); i zeta lies in the upper half
  // plane for x >= 0, and C, S are odd.
  const double ax = std::abs(x);
  const cdouble izeta = 0.5 * kSqrtPi * ax * cdouble(1.0, 1.0);
  // exp(-zeta^2) = exp(i pi x^2 / 2), unit modulus
  const cdouble phase = std::exp(cdouble(0.0, 0.5 * kPi * ax * ax));
  const cdouble erf_z = 1.0 - phase * faddeeva_w(izeta);
  cdouble cs = 0.5 * cdouble(1.0, 1.0) * erf_z;
  if (x < 0.0) cs = -cs;
  return {cs.real(), cs.imag()};
}

cdouble chirp_lower(double u) {
  const FresnelCS f = fresnel_cs(u);
  return {0.5 + f.c, 0.5 + f.s};
}

cdouble gauss_chirp_lower(double u, double tc, double w) {
  // integrand exp(-a t^2 + b t + c) with
  const cdouble a(1.0 / (w * w), -0.5 * kPi);
  const double b = 2.0 * tc / (w * w);
  const double c = -tc * tc / (w * w);
  const cdouble sqrt_a = std::sqrt(a);           // Re > 0
  const cdouble mu = b / (2.0 * a);
  const cdouble zeta = -sqrt_a * (u - mu);
  const cdouble half_pref = 0.5 * std::sqrt(kPi / a);
  // integrand value at the endpoint; |.| <= 1
  const cdouble at_end = std::exp((-a * u + b) * u + c);
  if (zeta.real() >= 0.0) {
    return half_pref * at_end * faddeeva_w(cdouble(0.0, 1.0) * zeta);
  }
  // full-line value minus the mirrored tail
  const cdouble full = 2.0 * half_pref * std::exp(a * mu * mu + c);
  return full - half_pref * at_end * faddeeva_w(cdouble(0.0, -1.0) * zeta);
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    result_k += kWgk[j] * fsum;
    if (j % 2 == 1) result_g += kWg[j / 2] * fsum;
  }
  result_g *= half;
  result_k *= half;
  return {result_k, std::abs(result_k - result_g)};
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_intervals) {
  struct Interval {
    double a, b, value, error;
  };
  std::vector<Interval> heap;
  const GkResult first = gk15(f, a, b);
  heap.push_back({a, b, first.value, first.error});
  double total_err = first.error;
  while (total_err > abs_tol) {
    if (static_cast<int>(heap.size()) >= max_intervals)
      throw QuadratureFailure("integrate_gk: interval budget exhausted");
    // split the interval with the largest error estimate
    size_t worst = 0;
    for (size_t i = 1; i < heap.size(); ++i)
      if (heap[i].error > heap[worst].error) worst = i;
    const Interval iv = heap[worst];
    if (iv.b - iv.a < 1e-15 * (std::abs(iv.a) + std::abs(iv.b) + 1.0))
      throw QuadratureFailure("integrate_gk: interval underflow");
    const double mid = 0.5 * (iv.a + iv.b);
    const GkResult left = gk15(f, iv.a, mid);
    const GkResult right = gk15(f, mid, iv.b);
    heap[worst] = {iv.a, mid, left.value, left.error};
    heap.push_back({mid, iv.b, right.value, right.error});
    total_err = 0.0;
    for (const Interval& x : heap) total_err += x.error;
  }
  double sum = 0.0;
  for (const Interval& x : heap) sum += x.value;
  return sum;
}

cdouble gauss_chirp_lower_quad(double u, double tc, double w, double abs_tol) {
  // envelope support, eight standard deviations (sigma = w / sqrt 2)
  const double sigma = w / std::sqrt(2.0);
  const double lo = tc - 8.0 * sigma;
  const double hi = std::min(u, tc + 8.0 * sigma);
  if (hi <= lo) return {0.0, 0.0};

  // split range at half-period boundaries |t| = sqrt(2 j) of the phase
  std::vector<double> cuts{lo, hi};
  for (int sign = -1; sign <= 1; sign += 2) {
    for (int j = 1;; ++j) {
      const double t = sign * std::sqrt(2.0 * j);
      if (std::abs(t) > std::max(std::abs(lo), std::abs(hi))) break;
      if (t > lo && t < hi) cuts.push_back(t);
    }
  }
  if (lo < 0.0 && hi > 0.0) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());

  const double per_piece = abs_tol / (2.0 * static_cast<double>(cuts.size()));
  double re = 0.0, im = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    auto g = [&](double t) { return std::exp(-(t - tc) * (t - tc) / (w * w)); };
    re += integrate_gk([&](double t) { return g(t) * std::cos(0.5 * kPi * t * t); },
                       a, b, per_piece);
    im += integrate_gk([&](double t) { return g(t) * std::sin(0.5 * kPi * t * t); },
                       a, b, per_piece);
  }
  return {re, im};
}

}  // namespace qhj
