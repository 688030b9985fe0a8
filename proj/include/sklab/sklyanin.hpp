#pragma once

#include "sklab/linalg.hpp"
#include "sklab/theta.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace sklab {

struct SklyaninTolerances {
  double tail_eps = 1e-14;
  double zero_tol = 1e-9;
  double rank_tol = 1e-9;
  double iso_tol = 1e-8;
};

/// Parameters (d, r, x) of the quadratic algebra Q_{d,r}(x) on a fixed curve.
struct AlgebraParams {
  int d = 0;
  int r = 0;
  cplx x;
  CurveModulus modulus{cplx(0.0, 1.0)};

  /// Throws InvalidArgument unless d >= 1, gcd(r mod d, d) = 1 and x is not
  /// a lattice point.
  void validate() const;
};

struct RelationTerm {
  int n = 0;
  int a = 0;  ///< left generator index r(j - n)
  int b = 0;  ///< right generator index r(i + n)
  cplx coeff;
};

/// One relation R_ij = sum_n coeff_n t_a t_b.
struct RelationRow {
  int i = 0;
  int j = 0;
  std::vector<RelationTerm> terms;
};

/// The d^2 relations of Q_{d,r}(x), each nonzero row scaled to unit
/// max-modulus coefficient. Rows are ordered by (i, j) lexicographically.
class RelationSystem {
public:
  RelationSystem(AlgebraParams params, std::vector<RelationRow> rows);

  const AlgebraParams& params() const noexcept { return params_; }
  const std::vector<RelationRow>& rows() const noexcept { return rows_; }
  const RelationRow& row(int i, int j) const { return rows_.at(static_cast<std::size_t>(i * params_.d + j)); }

  /// d^2 x d^2 coefficient matrix; row i*d+j is R_ij, column a*d+b is t_a t_b.
  Eigen::MatrixXcd matrix() const;

private:
  AlgebraParams params_;
  std::vector<RelationRow> rows_;
};

/// Builds the relations
///   sum_n theta_{j-i+(r-1)n}(0) / (theta_{j-i-n}(-x) theta_{rn}(x)) t_{r(j-n)} t_{r(i+n)}.
/// Throws DenominatorNearZero when some denominator theta is below zero_tol
/// relative to the largest theta value at the same point.
RelationSystem build_relations(const AlgebraParams& params, const SklyaninTolerances& tol = {});

/// Orthonormal basis of the relation space inside C^{d^2} (index a*d+b).
Span relation_space(const RelationSystem& sys, double rank_tol = 1e-9);

/// Permutation of C^{d^2} induced by t_i -> t_{s i}: e_a (x) e_b -> e_{sa} (x) e_{sb}.
Eigen::MatrixXcd substitution_matrix(int d, int s);

/// Distance between the relation space of Q_{d,r}(x) transported by
/// t_i -> t_{s i} and the relation space of Q_{d,s}(x). No congruence
/// precondition; callers use it directly for negative controls.
double substitution_distance(int d, int r, int s, cplx x, const CurveModulus& modulus,
                             const SklyaninTolerances& tol = {});

/// substitution_distance with the precondition r * r_prime = 1 mod d and the
/// requirement that both relation spaces have the same dimension.
double check_substitution_isomorphism(int d, int r, int r_prime, cplx x, const CurveModulus& modulus,
                                      const SklyaninTolerances& tol = {});

/// Uniform point of the fundamental parallelogram at which every theta value
/// used by build_relations(d, *, x) is safely nonzero. At most 50 rejections.
cplx sample_generic_x(int d, const CurveModulus& modulus, std::mt19937_64& rng,
                      const SklyaninTolerances& tol = {});

} // namespace sklab
