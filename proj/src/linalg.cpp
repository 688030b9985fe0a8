#include "sklab/linalg.hpp"

#include "sklab/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sklab {

Span row_span(const Eigen::MatrixXcd& rows, double rank_tol, double min_gap) {
  // Column space of rows^T (plain transpose: relations are linear in the
  // coefficients, no conjugation).
  const Eigen::MatrixXcd cols = rows.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
  Span out;
  out.singular_values = svd.singularValues();
  const Eigen::Index n = out.singular_values.size();
  const double top = n > 0 ? out.singular_values(0) : 0.0;
  int rank = 0;
  if (top > 0.0) {
    while (rank < n && out.singular_values(rank) > rank_tol * top) ++rank;
  }
  out.rank = rank;
  if (rank == 0 || rank == n || out.singular_values(rank) == 0.0) {
    out.gap_ratio = std::numeric_limits<double>::infinity();
  } else {
    out.gap_ratio = out.singular_values(rank - 1) / out.singular_values(rank);
  }
  if (out.gap_ratio < min_gap)
    throw AmbiguousRank("no clear spectral gap at rank " + std::to_string(rank) + " (ratio " +
                        std::to_string(out.gap_ratio) + ")");
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

double subspace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXcd residual = a - b * (b.adjoint() * a);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
  const double s = svd.singularValues()(0);
  return std::min(1.0, s);
}

} // namespace sklab
