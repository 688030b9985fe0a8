#include "sklab/theta.hpp"

#include "sklab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace sklab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

struct Reduced {
  cplx z0;
  long p = 0;  // real-period shift
  long q = 0;  // omega-period shift
};

// z = z0 + p + q*omega with |Im z0| <= Im(omega)/2 and |Re z0| <= 1/2 (up to
// the skew of omega).
Reduced reduce(cplx z, cplx omega) {
  Reduced r;
  r.q = std::lround(z.imag() / omega.imag());
  cplx z1 = z - static_cast<double>(r.q) * omega;
  r.p = std::lround(z1.real());
  r.z0 = z1 - static_cast<double>(r.p);
  return r;
}

// log of the factor theta(z0 + p + q omega) / theta(z0).
cplx log_multiplier(int d, cplx omega, const Reduced& r) {
  const double dd = d;
  const double qq = static_cast<double>(r.q);
  cplx e = -kPi * kI * dd * omega * qq * qq - 2.0 * kPi * kI * dd * qq * r.z0;
  const long parity = (static_cast<long>(d) * r.p + r.q) & 1L;
  if (parity != 0) e += kPi * kI;
  return e;
}

struct Series {
  int d;
  double shift;  // m/d + 1/2
  cplx omega;
  cplx w;        // z - 1/(2d)

  Series(const ThetaBasis& basis, long m, cplx z)
      : d(basis.level()),
        shift(static_cast<double>(basis.normalize_index(m)) / basis.level() + 0.5),
        omega(basis.omega()),
        w(z - 0.5 / basis.level()) {}

  long center(cplx z) const {
    const double a_star = -z.imag() / omega.imag();
    return std::lround(a_star - shift);
  }

  cplx term(long k) const {
    const double a = static_cast<double>(k) + shift;
    return std::exp(kPi * kI * static_cast<double>(d) * omega * a * a +
                    2.0 * kPi * kI * static_cast<double>(d) * a * w);
  }

  cplx dterm(long k, cplx t) const {
    const double a = static_cast<double>(k) + shift;
    return 2.0 * kPi * kI * static_cast<double>(d) * a * t;
  }
};

} // namespace

CurveModulus::CurveModulus(cplx omega) : omega_(omega) {
  if (!(omega.imag() > 0.0) || !std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
    throw InvalidArgument("curve modulus needs finite omega with Im(omega) > 0");
}

ThetaBasis::ThetaBasis(int level, CurveModulus modulus, double tail_eps)
    : level_(level), modulus_(modulus), tail_eps_(tail_eps) {
  if (level < 1) throw InvalidArgument("theta level must be >= 1");
  if (!(tail_eps > 0.0)) throw InvalidArgument("tail_eps must be positive");
}

int ThetaBasis::normalize_index(long m) const noexcept {
  long r = m % level_;
  if (r < 0) r += level_;
  return static_cast<int>(r);
}

SeriesSum theta_series(const ThetaBasis& basis, long m, cplx z) {
  const Series s(basis, m, z);
  const long kc = s.center(z);
  SeriesSum out;
  cplx t = s.term(kc);
  out.value = t;
  out.derivative = s.dterm(kc, t);
  out.terms = 1;
  double largest = std::abs(t);
  for (long step = 1; step < 10000; ++step) {
    const cplx tp = s.term(kc + step);
    const cplx tm = s.term(kc - step);
    out.value += tp + tm;
    out.derivative += s.dterm(kc + step, tp) + s.dterm(kc - step, tm);
    out.terms += 2;
    const double last = std::max(std::abs(tp), std::abs(tm));
    largest = std::max(largest, last);
    const double scale = std::max(largest, std::abs(out.value));
    if (step >= 2 && last < basis.tail_eps() * scale) break;
  }
  return out;
}

cplx theta_series_direct(const ThetaBasis& basis, long m, cplx z, int half_width) {
  const Series s(basis, m, z);
  const long kc = s.center(z);
  cplx sum = 0.0;
  for (long k = kc - half_width; k <= kc + half_width; ++k) sum += s.term(k);
  return sum;
}

cplx theta_eval(const ThetaBasis& basis, long m, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument("theta_eval: non-finite argument");
  const Reduced r = reduce(z, basis.omega());
  const cplx base = theta_series(basis, m, r.z0).value;
  if (r.p == 0 && r.q == 0) return base;
  return base * std::exp(log_multiplier(basis.level(), basis.omega(), r));
}

cplx theta_log_derivative(const ThetaBasis& basis, long m, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument("theta_log_derivative: non-finite argument");
  const Reduced r = reduce(z, basis.omega());
  const SeriesSum s = theta_series(basis, m, r.z0);
  return s.derivative / s.value -
         2.0 * kPi * kI * static_cast<double>(basis.level()) * static_cast<double>(r.q);
}

ThetaSymmetry theta_symmetry_constants(const ThetaBasis& basis, cplx x, double zero_tol,
                                       double fit_tol) {
  const int d = basis.level();
  std::vector<cplx> plus(d), minus(d);
  double max_plus = 0.0, max_minus = 0.0;
  for (int i = 0; i < d; ++i) {
    plus[i] = theta_eval(basis, i, x);
    minus[i] = theta_eval(basis, -i, -x);
    max_plus = std::max(max_plus, std::abs(plus[i]));
    max_minus = std::max(max_minus, std::abs(minus[i]));
  }
  for (int i = 0; i < d; ++i) {
    if (std::abs(plus[i]) < zero_tol * max_plus || std::abs(minus[i]) < zero_tol * max_minus)
      throw NearZero("theta_symmetry_constants: theta_" + std::to_string(i) +
                     " is too small at x; move x");
  }

  // rho_{i+1} = b rho_i with rho_i = minus_i / plus_i, written without division:
  // minus_{i+1} plus_i = b minus_i plus_{i+1}.
  ThetaSymmetry out;
  if (d == 1) {
    out.b = 1.0;
  } else {
    cplx num = 0.0;
    double den = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
      const cplx lhs = minus[i + 1] * plus[i];
      const cplx rhs = minus[i] * plus[i + 1];
      num += std::conj(rhs) * lhs;
      den += std::norm(rhs);
    }
    out.b = num / den;
  }

  cplx num = 0.0;
  double den = 0.0;
  std::vector<cplx> model(d);
  cplx bpow = 1.0;
  for (int i = 0; i < d; ++i) {
    model[i] = bpow * plus[i];
    num += std::conj(model[i]) * minus[i];
    den += std::norm(model[i]);
    bpow *= out.b;
  }
  out.a = num / den;

  double worst = 0.0;
  for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(minus[i] - out.a * model[i]));
  out.residual = worst / max_plus;
  out.root_defect = std::abs(std::pow(out.b, d) - 1.0);

  if (!(out.residual < fit_tol))
    throw VerificationFailure("theta symmetry fit residual " + std::to_string(out.residual) +
                              " exceeds tolerance");
  if (!(out.root_defect < fit_tol))
    throw VerificationFailure("theta symmetry constant b is not a d-th root of unity");
  return out;
}

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};

  GaussRule() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule rule;
  return rule;
}

} // namespace

int theta_zero_count(const ThetaBasis& basis, long m, const ZeroCountOptions& opts) {
  const cplx omega = basis.omega();
  const GaussRule& rule = gauss_rule();

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    const cplx jitter = static_cast<double>(attempt) * cplx(0.0371, 0.0293 * omega.imag());
    const cplx base = -0.5 * (1.0 + omega) + cplx(0.0123, 0.0077) + jitter;
    const std::array<cplx, 5> corners{base, base + 1.0, base + 1.0 + omega, base + omega, base};

    cplx integral = 0.0;
    double min_abs = INFINITY, max_abs = 0.0;
    for (int e = 0; e < 4; ++e) {
      const cplx from = corners[e];
      const cplx edge = corners[e + 1] - corners[e];
      for (int p = 0; p < opts.panels_per_edge; ++p) {
        const double t0 = static_cast<double>(p) / opts.panels_per_edge;
        const double half = 0.5 / opts.panels_per_edge;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
          const double t = t0 + half * (rule.nodes[g] + 1.0);
          const cplx z = from + t * edge;
          const double mag = std::abs(theta_eval(basis, m, z));
          min_abs = std::min(min_abs, mag);
          max_abs = std::max(max_abs, mag);
          integral += rule.weights[g] * half * edge * theta_log_derivative(basis, m, z);
        }
      }
    }
    if (min_abs < opts.zero_tol * max_abs) continue;
    const cplx count = integral / (2.0 * kPi * kI);
    const double nearest = std::round(count.real());
    if (std::abs(count - nearest) < 1e-6) return static_cast<int>(nearest);
  }
  throw NearZero("theta_zero_count: contour kept passing near a zero");
}

} // namespace sklab
