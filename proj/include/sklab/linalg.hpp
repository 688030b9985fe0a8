#pragma once

#include <Eigen/Dense>

namespace sklab {

/// Orthonormal basis of the span of a set of vectors, with the spectrum used
/// to decide its dimension.
struct Span {
  Eigen::MatrixXcd basis;             ///< orthonormal columns
  Eigen::VectorXd singular_values;    ///< descending
  int rank = 0;
  double gap_ratio = 0.0;             ///< sigma[rank-1] / sigma[rank]; +inf when sigma[rank] == 0
};

/// Span of the rows of `rows` (each row is a vector of C^n), with rank taken
/// as the number of singular values above rank_tol * sigma_max. Throws
/// AmbiguousRank when the ratio across the cut is below min_gap.
Span row_span(const Eigen::MatrixXcd& rows, double rank_tol, double min_gap = 10.0);

/// Sine of the largest principal angle between the column spans of two
/// matrices with orthonormal columns; 1 when the dimensions differ.
double subspace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace sklab
