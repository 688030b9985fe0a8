#pragma once

#include <complex>

namespace sklab {

using cplx = std::complex<double>;

/// Modulus omega of the curve C/(Z + omega Z); requires Im(omega) > 0.
class CurveModulus {
public:
  explicit CurveModulus(cplx omega);

  cplx omega() const noexcept { return omega_; }

private:
  cplx omega_;
};

/// The d theta functions of level d on C/(Z + omega Z):
///
///   theta_m(z) = sum_k exp(pi i d omega a^2 + 2 pi i d a (z - 1/(2d))),
///   a = k + m/d + 1/2.
///
/// They satisfy
///   theta_m(z + 1/d)   = -exp(2 pi i m/d) theta_m(z),
///   theta_m(z + omega) = -exp(-pi i d omega - 2 pi i d z) theta_m(z),
///   theta_m(z + omega/d) = c(z) theta_{m+1}(z)  (c independent of m),
///   theta_{-m}(-z)     = -exp(2 pi i m/d) theta_m(z).
///
/// Instances are immutable and safe to share between threads.
class ThetaBasis {
public:
  ThetaBasis(int level, CurveModulus modulus, double tail_eps = 1e-14);

  int level() const noexcept { return level_; }
  const CurveModulus& modulus() const noexcept { return modulus_; }
  cplx omega() const noexcept { return modulus_.omega(); }
  double tail_eps() const noexcept { return tail_eps_; }

  /// Index reduced into [0, d).
  int normalize_index(long m) const noexcept;

private:
  int level_;
  CurveModulus modulus_;
  double tail_eps_;
};

/// Result of summing the series at a point of the fundamental domain.
struct SeriesSum {
  cplx value;
  cplx derivative;
  int terms = 0;
};

/// theta_m(z). The argument is first reduced to the fundamental domain with
/// the lattice multipliers; the series is then summed until the last term is
/// below tail_eps relative to the largest term.
cplx theta_eval(const ThetaBasis& basis, long m, cplx z);

/// The series summed at z with no argument reduction, over the fixed window
/// |k - k_center| <= half_width. Used as an independent reference in tests
/// and for the truncation self-consistency check.
cplx theta_series_direct(const ThetaBasis& basis, long m, cplx z, int half_width);

/// Adaptive sum at z without reduction (z should lie near the fundamental
/// domain); reports the number of terms used.
SeriesSum theta_series(const ThetaBasis& basis, long m, cplx z);

/// theta_m'(z) / theta_m(z), with argument reduction.
cplx theta_log_derivative(const ThetaBasis& basis, long m, cplx z);

struct ThetaSymmetry {
  cplx a;
  cplx b;
  double residual = 0.0;     ///< max_i |theta_{-i}(-x) - a b^i theta_i(x)| / max_i |theta_i(x)|
  double root_defect = 0.0;  ///< |b^d - 1|
};

/// Fits theta_{-i}(-x) = a b^i theta_i(x) over i = 0..d-1.
/// Throws NearZero if some |theta_i(x)| < zero_tol * max_i |theta_i(x)|, and
/// VerificationFailure if the fit residual or |b^d - 1| exceeds fit_tol.
ThetaSymmetry theta_symmetry_constants(const ThetaBasis& basis, cplx x,
                                       double zero_tol = 1e-9, double fit_tol = 1e-8);

struct ZeroCountOptions {
  int panels_per_edge = 24;
  double zero_tol = 1e-9;
  int max_retries = 8;
};

/// Number of zeros of theta_m in a fundamental parallelogram, by Gauss-Legendre
/// integration of the logarithmic derivative around its boundary. The base
/// point is perturbed when the contour passes too close to a zero.
int theta_zero_count(const ThetaBasis& basis, long m, const ZeroCountOptions& opts = {});

} // namespace sklab
