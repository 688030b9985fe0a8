#include "sklab/sklyanin.hpp"

#include "sklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sklab {

namespace {

int mod(long v, int d) {
  long r = v % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

std::vector<cplx> theta_row(const ThetaBasis& basis, cplx z) {
  std::vector<cplx> out(static_cast<std::size_t>(basis.level()));
  for (int m = 0; m < basis.level(); ++m) out[static_cast<std::size_t>(m)] = theta_eval(basis, m, z);
  return out;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& c : v) m = std::max(m, std::abs(c));
  return m;
}

} // namespace

void AlgebraParams::validate() const {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (std::gcd(mod(r, d), d) != 1) throw InvalidArgument("r must be coprime to d");
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw InvalidArgument("x must be finite");
  const cplx omega = modulus.omega();
  const double q = std::round(x.imag() / omega.imag());
  const cplx y = x - q * omega;
  if (std::abs(y - std::round(y.real())) < 1e-9)
    throw InvalidArgument("x is a lattice point; Q_{d,r}(0) is the symmetric algebra");
}

RelationSystem::RelationSystem(AlgebraParams params, std::vector<RelationRow> rows)
    : params_(std::move(params)), rows_(std::move(rows)) {
  const std::size_t d = static_cast<std::size_t>(params_.d);
  if (rows_.size() != d * d) throw InvalidArgument("relation system needs d^2 rows");
  for (const RelationRow& row : rows_) {
    for (const RelationTerm& t : row.terms) {
      if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
        throw VerificationFailure("non-finite relation coefficient in row (" + std::to_string(row.i) +
                                  "," + std::to_string(row.j) + ")");
    }
  }
}

Eigen::MatrixXcd RelationSystem::matrix() const {
  const int d = params_.d;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const RelationRow& row : rows_) {
    for (const RelationTerm& t : row.terms) m(row.i * d + row.j, t.a * d + t.b) += t.coeff;
  }
  return m;
}

RelationSystem build_relations(const AlgebraParams& params, const SklyaninTolerances& tol) {
  params.validate();
  const int d = params.d;
  const ThetaBasis basis(d, params.modulus, tol.tail_eps);

  std::vector<cplx> at_zero = theta_row(basis, 0.0);
  const std::vector<cplx> at_x = theta_row(basis, params.x);
  const std::vector<cplx> at_minus_x = theta_row(basis, -params.x);

  // theta_0(0) vanishes identically (theta_0 is odd); keep such values exact.
  const double zero_scale = max_abs(at_zero);
  for (cplx& v : at_zero) {
    if (std::abs(v) < tol.zero_tol * zero_scale) v = 0.0;
  }

  const double scale_x = max_abs(at_x);
  const double scale_minus_x = max_abs(at_minus_x);
  std::vector<RelationRow> rows;
  rows.reserve(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      RelationRow row{i, j, {}};
      double largest = 0.0;
      for (int n = 0; n < d; ++n) {
        const cplx& den_minus = at_minus_x[static_cast<std::size_t>(mod(j - i - n, d))];
        const cplx& den_plus = at_x[static_cast<std::size_t>(mod(static_cast<long>(params.r) * n, d))];
        if (std::abs(den_minus) < tol.zero_tol * scale_minus_x)
          throw DenominatorNearZero(n, "theta_{j-i-n}(-x)");
        if (std::abs(den_plus) < tol.zero_tol * scale_x) throw DenominatorNearZero(n, "theta_{rn}(x)");
        const cplx num = at_zero[static_cast<std::size_t>(mod(j - i + static_cast<long>(params.r - 1) * n, d))];
        RelationTerm term;
        term.n = n;
        term.a = mod(static_cast<long>(params.r) * (j - n), d);
        term.b = mod(static_cast<long>(params.r) * (i + n), d);
        term.coeff = num / (den_minus * den_plus);
        largest = std::max(largest, std::abs(term.coeff));
        row.terms.push_back(term);
      }
      if (largest > 0.0) {
        for (RelationTerm& t : row.terms) t.coeff /= largest;
      }
      rows.push_back(std::move(row));
    }
  }
  return RelationSystem(params, std::move(rows));
}

Span relation_space(const RelationSystem& sys, double rank_tol) { return row_span(sys.matrix(), rank_tol); }

Eigen::MatrixXcd substitution_matrix(int d, int s) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) p(mod(static_cast<long>(s) * a, d) * d + mod(static_cast<long>(s) * b, d), a * d + b) = 1.0;
  }
  return p;
}

double substitution_distance(int d, int r, int s, cplx x, const CurveModulus& modulus,
                             const SklyaninTolerances& tol) {
  const Span source = relation_space(build_relations({d, r, x, modulus}, tol), tol.rank_tol);
  const Span target = relation_space(build_relations({d, s, x, modulus}, tol), tol.rank_tol);
  const Eigen::MatrixXcd moved = substitution_matrix(d, s) * source.basis;
  return subspace_distance(moved, target.basis);
}

double check_substitution_isomorphism(int d, int r, int r_prime, cplx x, const CurveModulus& modulus,
                                      const SklyaninTolerances& tol) {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (mod(static_cast<long>(r) * r_prime, d) != mod(1, d))
    throw InvalidArgument("check_substitution_isomorphism needs r * r' = 1 mod d");
  const Span source = relation_space(build_relations({d, r, x, modulus}, tol), tol.rank_tol);
  const Span target = relation_space(build_relations({d, r_prime, x, modulus}, tol), tol.rank_tol);
  if (source.rank != target.rank)
    throw VerificationFailure("relation spaces have different dimensions (" + std::to_string(source.rank) +
                              " vs " + std::to_string(target.rank) + ")");
  const Eigen::MatrixXcd moved = substitution_matrix(d, r_prime) * source.basis;
  return subspace_distance(moved, target.basis);
}

cplx sample_generic_x(int d, const CurveModulus& modulus, std::mt19937_64& rng, const SklyaninTolerances& tol) {
  const ThetaBasis basis(d, modulus, tol.tail_eps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt <= 50; ++attempt) {
    const double s = unit(rng);
    const double t = unit(rng);
    const cplx x = s + t * modulus.omega();
    const double edge = std::min({s, 1.0 - s, t, 1.0 - t});
    if (edge < 1e-3) continue;
    const std::vector<cplx> plus = theta_row(basis, x);
    const std::vector<cplx> minus = theta_row(basis, -x);
    const double sp = max_abs(plus), sm = max_abs(minus);
    // Every value at +-x exceeds 1e3 * zero_tol relative to its row.
    const bool ok = std::all_of(plus.begin(), plus.end(), [&](cplx v) { return std::abs(v) > 1e3 * tol.zero_tol * sp; }) &&
                    std::all_of(minus.begin(), minus.end(), [&](cplx v) { return std::abs(v) > 1e3 * tol.zero_tol * sm; });
    if (ok) return x;
  }
  throw SearchFailure("sample_generic_x: 50 rejections in a row");
}

} // namespace sklab
