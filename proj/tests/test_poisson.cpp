#include <doctest.h>

#include "sklab/error.hpp"
#include "sklab/poisson.hpp"

#include <random>

using namespace sklab;

namespace {

const CurveModulus W({0.2, 1.3});

PoissonTensor random_skew(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  PoissonTensor t(d, 1);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = c; e < d; ++e) t.set_skew(a, b, c, e, {g(rng), g(rng)});
  return t;
}

} // namespace

TEST_CASE("two generators: one quadratic bracket, Jacobi vacuous") {
  const PoissonTensor t = extract_bracket(2, 1, W);
  CHECK(skew_check(t) == 0.0);
  CHECK(jacobi_check(t, 10, 1) == 0.0);
  CHECK(t.richardson_error < 1e-6);
}

TEST_CASE("three generators: cyclic elliptic bracket") {
  // {t0,t1} = A t0 t1 + B t2^2 and cyclic; the ratio B/A is frozen for
  // omega = 0.2 + 1.3i.
  const PoissonTensor t = extract_bracket(3, 1, W);
  CHECK(jacobi_check(t, 100, 42) < 1e-6);
  CHECK(skew_check(t) == 0.0);
  const cplx A = t(0, 1, 0, 1), B = t(0, 1, 2, 2);
  REQUIRE(std::abs(A) > 1.0);
  CHECK(std::abs(B / A - cplx(-0.18007820776794659, -0.07988542010817401)) < 1e-8);
  for (int k = 0; k < 3; ++k) {
    const int a = k, b = (k + 1) % 3, c = (k + 2) % 3;
    const int lo = std::min(a, b), hi = std::max(a, b);
    CHECK(std::abs(t(a, b, lo, hi) - A) < 1e-8 * std::abs(A));
    CHECK(std::abs(t(a, b, c, c) - B) < 1e-8 * std::abs(A));
  }
  int nonzero = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = c; e < 3; ++e) nonzero += t(a, b, c, e) != cplx(0.0);
  CHECK(nonzero == 6);
}

TEST_CASE("Jacobi identity for all coprime r, d in {3, 4, 5}") {
  for (int d = 3; d <= 5; ++d)
    for (int r = 1; r < d; ++r) {
      if (std::gcd(r, d) != 1) continue;
      const PoissonTensor t = extract_bracket(d, r, W);
      CHECK(t.richardson_error < 1e-6);
      CHECK(t.condition < 1e6);
      CHECK(jacobi_check(t, 100, 9) < 1e-6);
      CHECK(skew_check(t) == 0.0);
    }
}

TEST_CASE("r = d - 1 gives the zero bracket") {
  CHECK(extract_bracket(4, 3, W).max_abs() == 0.0);
  CHECK(extract_bracket(5, 4, W).max_abs() == 0.0);
}

TEST_CASE("halving h moves every entry by less than bracket_tol") {
  PoissonOptions o;
  const PoissonTensor a = extract_bracket(5, 2, W, o);
  o.h /= 2.0;
  const PoissonTensor b = extract_bracket(5, 2, W, o);
  double diff = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int c = 0; c < 5; ++c)
        for (int e = c; e < 5; ++e) diff = std::max(diff, std::abs(a(i, j, c, e) - b(i, j, c, e)));
  CHECK(diff < 1e-6);
}

TEST_CASE("equivariance under t_i -> t_{r'i}") {
  const PoissonTensor t2 = extract_bracket(5, 2, W), t3 = extract_bracket(5, 3, W);
  const ScaleFit fit = compare_up_to_scale(transport(t2, 3), t3);
  CHECK(fit.max_deviation < 1e-6);
  CHECK(std::abs(fit.scale) > 1e-3);
  // t_i -> t_{-i} preserves the bracket up to scale, so s = -r' matches too;
  // s = +-1 does not.
  CHECK(compare_up_to_scale(transport(t2, 2), t3).max_deviation < 1e-6);
  CHECK(compare_up_to_scale(transport(t2, 1), t3).max_deviation > 1e-2);
  CHECK(compare_up_to_scale(transport(t2, 4), t3).max_deviation > 1e-2);
}

TEST_CASE("zero tensor and negative control") {
  CHECK(jacobi_check(PoissonTensor(4, 1), 20, 1) == 0.0);
  // A generic skew quadratic tensor is not Poisson; frozen sample.
  CHECK(jacobi_check(random_skew(4, 2024), 100, 1) > 1e-2);
}

TEST_CASE("skew_check detects violations of the storage convention") {
  PoissonTensor t(3, 1);
  t(0, 1, 0, 1) = 1.0;
  t(1, 0, 0, 1) = 1.0;  // symmetric instead of skew
  CHECK(skew_check(t) == doctest::Approx(2.0));
  PoissonTensor u(3, 1);
  u(1, 1, 0, 2) = 0.5;  // {t_1, t_1} != 0
  CHECK(skew_check(u) == doctest::Approx(0.5));
  PoissonTensor v(3, 1);
  v.set_skew(0, 1, 2, 1, 0.25);  // c > e is outside the monomial basis
  CHECK(skew_check(v) == doctest::Approx(0.25));
}

TEST_CASE("jacobi_check is invariant under rescaling the bracket") {
  const PoissonTensor t = random_skew(3, 5);
  PoissonTensor s(3, 1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) s(a, b, c, e) = cplx(0.0, 7.5) * t(a, b, c, e);
  CHECK(jacobi_check(s, 50, 3) == doctest::Approx(jacobi_check(t, 50, 3)).epsilon(1e-12));
}

TEST_CASE("errors") {
  PoissonOptions o;
  o.h = 0.0;
  CHECK_THROWS_AS(extract_bracket(3, 1, W, o), InvalidArgument);
  CHECK_THROWS_AS(extract_bracket(6, 2, W), InvalidArgument);
  o.h = 0.1;  // far outside the asymptotic regime
  CHECK_THROWS_AS(extract_bracket(5, 2, W, o), VerificationFailure);
}
