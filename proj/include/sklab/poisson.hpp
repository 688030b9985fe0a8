#pragma once

#include "sklab/theta.hpp"

#include <cstdint>
#include <vector>

namespace sklab {

/// Quadratic bracket {t_a, t_b} = sum_{c <= e} pi(a, b, c, e) t_c t_e on C^d.
///
/// All d x d index pairs (a, b) are stored so that violations of
/// skew-symmetry are representable; extracted tensors satisfy
/// pi(b, a, .) = -pi(a, b, .) and pi(a, a, .) = 0 exactly.
class PoissonTensor {
public:
  PoissonTensor() = default;
  PoissonTensor(int d, int r);

  int d() const noexcept { return d_; }
  int r() const noexcept { return r_; }

  cplx operator()(int a, int b, int c, int e) const { return coeffs_[index(a, b, c, e)]; }
  cplx& operator()(int a, int b, int c, int e) { return coeffs_[index(a, b, c, e)]; }

  /// Sets pi(a, b, c, e) for a < b and mirrors it into pi(b, a, c, e).
  void set_skew(int a, int b, int c, int e, cplx value);

  /// Largest entry modulus.
  double max_abs() const;

  double extraction_step = 0.0;
  double richardson_error = 0.0;
  double condition = 0.0;  ///< worst condition number of the projection onto Lambda^2

  bool operator==(const PoissonTensor&) const = default;

private:
  std::size_t index(int a, int b, int c, int e) const {
    return static_cast<std::size_t>(((a * d_ + b) * d_ + c) * d_ + e);
  }

  int d_ = 0;
  int r_ = 0;
  std::vector<cplx> coeffs_;
};

struct PoissonOptions {
  double h = 1e-3;
  double bracket_tol = 1e-6;
  double rank_tol = 1e-9;
  double zero_tol = 1e-9;
  double tail_eps = 1e-14;
  double max_condition = 1e6;
};

/// Fixed direction u of approach to x = 0.
cplx bracket_direction();

/// Classical limit of Q_{d,r}(x) at x = 0 along x = h u. For each level
/// h, h/2, h/4 the relation space V(x) is projected onto Lambda^2 C^d; the
/// element v with antisymmetric part e_a (x) e_b - e_b (x) e_a gives
/// pi_ab = -Sym(v) / |x|. The levels are combined by Richardson extrapolation
/// in h^2 (the expansion is even in h); richardson_error is the difference
/// between the two extrapolants. Entries below bracket_tol are below the
/// resolution of the extraction and are set to zero.
PoissonTensor extract_bracket(int d, int r, const CurveModulus& modulus, const PoissonOptions& opts = {});

/// Maximum over index triples a < b < c and `trials` random points of the
/// unit polydisc of the Jacobiator |{t_a,{t_b,t_c}} + cyclic|, normalized by
/// max|pi|^2 * max|p_i|^3 (so it is invariant under rescaling the bracket).
/// Returns 0 for the zero tensor.
double jacobi_check(const PoissonTensor& tensor, int trials, std::uint64_t seed);

/// Largest violation of pi(a,a,.) = 0, pi(b,a,.) = -pi(a,b,.) and of the
/// storage convention (no coefficients with c > e).
double skew_check(const PoissonTensor& tensor);

/// Tensor of the bracket after the substitution t_i -> t_{s i}; the result
/// is tagged with r = s.
PoissonTensor transport(const PoissonTensor& tensor, int s);

struct ScaleFit {
  cplx scale;
  double max_deviation = 0.0;  ///< max entrywise |scale * a - b|
};

/// Least-squares complex scale taking `a` onto `b`.
ScaleFit compare_up_to_scale(const PoissonTensor& a, const PoissonTensor& b);

} // namespace sklab
