#pragma once

#include "sklab/rational.hpp"

#include <vector>

namespace sklab {

/// Dense row-major matrix over Q.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static QMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  bool is_zero() const;
  bool is_symmetric() const;
  /// Largest entry modulus, rounded to double.
  double max_abs() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& s, const QMatrix& a);
  bool operator==(const QMatrix& other) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);

/// Lie algebra g with basis x_0..x_{n-1}, [x_i, x_j] = sum_k c(i,j,k) x_k,
/// and a representation x_i -> action[i] on V.
struct LieRepData {
  int dim_g = 0;
  int dim_V = 0;
  std::vector<Rational> bracket;  ///< c(i,j,k) at (i*dim_g + j)*dim_g + k
  std::vector<QMatrix> action;

  Rational& c(int i, int j, int k) { return bracket[static_cast<std::size_t>((i * dim_g + j) * dim_g + k)]; }
  const Rational& c(int i, int j, int k) const {
    return bracket[static_cast<std::size_t>((i * dim_g + j) * dim_g + k)];
  }

  /// Throws InvalidArgument on size mismatches, non-antisymmetric bracket, a
  /// Jacobi failure or a non-homomorphic action.
  void validate() const;
};

/// Symmetric dim_g x dim_g matrix t with t = sum t(i,j) x_i (x) x_j.
using SymTensor = QMatrix;

/// Structure constants of the Lie algebra spanned by linearly independent
/// matrices closed under commutators.
std::vector<Rational> structure_constants(const std::vector<QMatrix>& basis);

/// gl_r on C^r, basis E_ij at index i*r + j.
LieRepData gl_rep(int r);
/// gl_{r1} + gl_{r2} on Mat(r1, r2) by (A, B).M = A M - M B.
LieRepData gl_pair_rep(int r1, int r2);
/// (t1, -t2) with t_k = sum E_ij (x) E_ji.
SymTensor gl_pair_tensor(int r1, int r2);
/// sl2 on C^2, basis (e, f, h).
LieRepData sl2_rep();
/// e (x) f + f (x) e + h (x) h / 2.
SymTensor sl2_casimir();
/// gsp_{2r} = sp(Omega) + C Id on C^{2r}, Omega = [[0, J], [-J, 0]] with J the
/// r x r antidiagonal unit; sp basis Omega^{-1}(E_pq + E_qp), p <= q, then Id.
LieRepData gsp_rep(int two_r);

/// Appends a central element acting as the identity on V.
LieRepData augment_with_center(const LieRepData& rep);

/// Number of e_i . e_j monomials (i <= j) on V.
int sym2_dim(int dim_V);
/// Index of e_i . e_j in the monomial basis of S^2 V.
int sym2_index(int i, int j, int dim_V);

/// Matrix on S^2 V of t_*(u . v) = sum t(i,j) (A_i u) . (A_j v).
QMatrix t_star(const LieRepData& rep, const SymTensor& t);

/// Action of x_i on S^2 V.
QMatrix sym2_action(const LieRepData& rep, int i);

/// Coefficients of (ad_z (x) 1 + 1 (x) ad_z)(t), one dim_g x dim_g block
/// per basis element z.
std::vector<QMatrix> invariance_defect(const LieRepData& rep, const SymTensor& t);

/// max over z of the largest entry of invariance_defect; exactly 0 for
/// invariant t.
double check_invariance(const LieRepData& rep, const SymTensor& t);

/// Basis of { t symmetric : t invariant, t_* = 0 }, from an exact kernel.
std::vector<SymTensor> solve_admissible(const LieRepData& rep);

} // namespace sklab
