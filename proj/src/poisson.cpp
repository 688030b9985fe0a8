#include "sklab/poisson.hpp"

#include "sklab/error.hpp"
#include "sklab/sklyanin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

namespace sklab {

PoissonTensor::PoissonTensor(int d, int r) : d_(d), r_(r), coeffs_(static_cast<std::size_t>(d * d * d * d)) {
  if (d < 1) throw InvalidArgument("PoissonTensor needs d >= 1");
}

void PoissonTensor::set_skew(int a, int b, int c, int e, cplx value) {
  (*this)(a, b, c, e) = value;
  (*this)(b, a, c, e) = -value;
}

double PoissonTensor::max_abs() const {
  double m = 0.0;
  for (const cplx& v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

cplx bracket_direction() {
  const cplx u(0.31, 0.17);
  return u / std::abs(u);
}

namespace {

std::vector<std::pair<int, int>> ordered_pairs(int d) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) out.emplace_back(a, b);
  return out;
}

// Raw (unextrapolated) bracket at x = h u, as a (pair, c, e) array.
struct Level {
  std::vector<cplx> values;  // [pair][c*d+e], c <= e
  double condition = 0.0;
};

Level bracket_at(int d, int r, const CurveModulus& modulus, double h, const PoissonOptions& opts) {
  const cplx x = h * bracket_direction();
  SklyaninTolerances tol;
  tol.tail_eps = opts.tail_eps;
  tol.zero_tol = opts.zero_tol;
  tol.rank_tol = opts.rank_tol;
  const Span space = relation_space(build_relations({d, r, x, modulus}, tol), opts.rank_tol);

  const auto pairs = ordered_pairs(d);
  const int k = static_cast<int>(pairs.size());
  if (space.rank != k)
    throw VerificationFailure("relation space at x = h u has dimension " + std::to_string(space.rank) +
                              ", expected " + std::to_string(k) + "; projection onto Lambda^2 is not bijective");

  Eigen::MatrixXcd alt(k, k);
  for (int p = 0; p < k; ++p) {
    const auto [a, b] = pairs[static_cast<std::size_t>(p)];
    alt.row(p) = 0.5 * (space.basis.row(a * d + b) - space.basis.row(b * d + a));
  }
  Level level;
  if (k > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(alt);
    const auto& s = svd.singularValues();
    level.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
  }
  if (!(level.condition < opts.max_condition))
    throw VerificationFailure("projection onto Lambda^2 is ill-conditioned (cond " +
                              std::to_string(level.condition) + "); reduce h");

  const Eigen::MatrixXcd coeffs = alt.partialPivLu().solve(Eigen::MatrixXcd::Identity(k, k));
  const Eigen::MatrixXcd v = space.basis * coeffs;

  level.values.assign(static_cast<std::size_t>(k * d * d), cplx(0.0));
  for (int p = 0; p < k; ++p) {
    for (int c = 0; c < d; ++c) {
      for (int e = c; e < d; ++e) {
        // Polynomial coefficient of t_c t_e in -Sym(v) / |x|.
        const cplx sym = c == e ? v(c * d + c, p) : v(c * d + e, p) + v(e * d + c, p);
        level.values[static_cast<std::size_t>(p * d * d + c * d + e)] = -sym / h;
      }
    }
  }
  return level;
}

} // namespace

PoissonTensor extract_bracket(int d, int r, const CurveModulus& modulus, const PoissonOptions& opts) {
  if (!(opts.h > 0.0)) throw InvalidArgument("extraction step h must be positive");
  const Level l1 = bracket_at(d, r, modulus, opts.h, opts);
  const Level l2 = bracket_at(d, r, modulus, opts.h / 2.0, opts);
  const Level l4 = bracket_at(d, r, modulus, opts.h / 4.0, opts);

  PoissonTensor out(d, r);
  out.extraction_step = opts.h;
  out.condition = std::max({l1.condition, l2.condition, l4.condition});

  const auto pairs = ordered_pairs(d);
  double err = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    for (int c = 0; c < d; ++c) {
      for (int e = c; e < d; ++e) {
        const std::size_t idx = p * static_cast<std::size_t>(d * d) + static_cast<std::size_t>(c * d + e);
        const cplx coarse = (4.0 * l2.values[idx] - l1.values[idx]) / 3.0;
        const cplx fine = (4.0 * l4.values[idx] - l2.values[idx]) / 3.0;
        err = std::max(err, std::abs(fine - coarse));
        out.set_skew(a, b, c, e, std::abs(fine) < opts.bracket_tol ? cplx(0.0) : fine);
      }
    }
  }
  out.richardson_error = err;
  if (!(err < opts.bracket_tol))
    throw VerificationFailure("Richardson error " + std::to_string(err) + " exceeds bracket_tol");
  return out;
}

double jacobi_check(const PoissonTensor& tensor, int trials, std::uint64_t seed) {
  const int d = tensor.d();
  const double scale = tensor.max_abs();
  if (scale == 0.0 || d < 3) return 0.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> p(static_cast<std::size_t>(d));
  std::vector<cplx> value(static_cast<std::size_t>(d * d));
  std::vector<cplx> grad(static_cast<std::size_t>(d * d * d));  // [a*d+b][f]
  double worst = 0.0;

  for (int trial = 0; trial < trials; ++trial) {
    double pmax = 0.0;
    for (cplx& pi : p) {
      pi = std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
      pmax = std::max(pmax, std::abs(pi));
    }
    if (pmax == 0.0) continue;
    std::fill(value.begin(), value.end(), cplx(0.0));
    std::fill(grad.begin(), grad.end(), cplx(0.0));
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const std::size_t ab = static_cast<std::size_t>(a * d + b);
        for (int c = 0; c < d; ++c) {
          for (int e = c; e < d; ++e) {
            const cplx coeff = tensor(a, b, c, e);
            if (coeff == cplx(0.0)) continue;
            value[ab] += coeff * p[static_cast<std::size_t>(c)] * p[static_cast<std::size_t>(e)];
            grad[ab * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] += coeff * p[static_cast<std::size_t>(e)];
            grad[ab * static_cast<std::size_t>(d) + static_cast<std::size_t>(e)] += coeff * p[static_cast<std::size_t>(c)];
          }
        }
      }
    }
    // {t_x, {t_y, t_z}} = sum_f d{t_y,t_z}/dt_f * {t_x, t_f}
    auto nested = [&](int x, int y, int z) {
      cplx s = 0.0;
      const std::size_t yz = static_cast<std::size_t>(y * d + z);
      for (int f = 0; f < d; ++f)
        s += grad[yz * static_cast<std::size_t>(d) + static_cast<std::size_t>(f)] * value[static_cast<std::size_t>(x * d + f)];
      return s;
    };
    const double norm = scale * scale * pmax * pmax * pmax;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c) {
          const cplx j = nested(a, b, c) + nested(b, c, a) + nested(c, a, b);
          worst = std::max(worst, std::abs(j) / norm);
        }
  }
  return worst;
}

double skew_check(const PoissonTensor& tensor) {
  const int d = tensor.d();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          if (e < c) {
            worst = std::max(worst, std::abs(tensor(a, b, c, e)));
          } else if (a == b) {
            worst = std::max(worst, std::abs(tensor(a, a, c, e)));
          } else {
            worst = std::max(worst, std::abs(tensor(a, b, c, e) + tensor(b, a, c, e)));
          }
        }
  return worst;
}

PoissonTensor transport(const PoissonTensor& tensor, int s) {
  const int d = tensor.d();
  auto move = [&](int i) {
    const int v = static_cast<int>((static_cast<long>(s) * i) % d);
    return v < 0 ? v + d : v;
  };
  PoissonTensor out(d, ((s % d) + d) % d);
  out.extraction_step = tensor.extraction_step;
  out.richardson_error = tensor.richardson_error;
  out.condition = tensor.condition;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e) {
          int nc = move(c), ne = move(e);
          if (nc > ne) std::swap(nc, ne);
          out(move(a), move(b), nc, ne) += tensor(a, b, c, e);
        }
  return out;
}

ScaleFit compare_up_to_scale(const PoissonTensor& a, const PoissonTensor& b) {
  if (a.d() != b.d()) throw InvalidArgument("compare_up_to_scale: dimension mismatch");
  const int d = a.d();
  cplx num = 0.0;
  double den = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e) {
          num += std::conj(a(i, j, c, e)) * b(i, j, c, e);
          den += std::norm(a(i, j, c, e));
        }
  ScaleFit fit;
  fit.scale = den > 0.0 ? num / den : cplx(1.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e)
          fit.max_deviation = std::max(fit.max_deviation, std::abs(fit.scale * a(i, j, c, e) - b(i, j, c, e)));
  return fit;
}

} // namespace sklab
