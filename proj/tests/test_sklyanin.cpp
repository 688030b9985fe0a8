#include <doctest.h>

#include "sklab/error.hpp"
#include "sklab/sklyanin.hpp"

#include <numeric>
#include <random>

using namespace sklab;

namespace {

const CurveModulus W({0.2, 1.3});

int mod(int a, int d) { return ((a % d) + d) % d; }

} // namespace

TEST_CASE("monomials of R_ij are t_{r(j-n)} t_{r(i+n)}") {
  const RelationSystem sys = build_relations({3, 1, {0.21, 0.33}, W});
  const RelationRow& row = sys.row(0, 1);
  REQUIRE(row.terms.size() == 3);
  for (const RelationTerm& t : row.terms) {
    CHECK(t.a == mod(1 - t.n, 3));
    CHECK(t.b == t.n);
  }
  const RelationSystem sys7 = build_relations({7, 3, {0.43, 0.52}, W});
  for (const RelationRow& r : sys7.rows())
    for (const RelationTerm& t : r.terms) {
      CHECK(t.a == mod(3 * (r.j - t.n), 7));
      CHECK(t.b == mod(3 * (r.i + t.n), 7));
    }
}

TEST_CASE("nonzero rows have unit max modulus") {
  const RelationSystem sys = build_relations({5, 2, {0.37, 0.41}, W});
  const Eigen::MatrixXcd m = sys.matrix();
  for (int i = 0; i < m.rows(); ++i) {
    const double mx = m.row(i).cwiseAbs().maxCoeff();
    CHECK((mx == 0.0 || std::abs(mx - 1.0) < 1e-15));
  }
}

TEST_CASE("relation space dimension is d(d-1)/2") {
  CHECK(relation_space(build_relations({3, 1, {0.21, 0.33}, W})).rank == 3);
  CHECK(relation_space(build_relations({4, 1, {0.27, 0.61}, W})).rank == 6);
  CHECK(relation_space(build_relations({5, 2, {0.37, 0.41}, W})).rank == 10);

  std::mt19937_64 rng(5);
  for (int d = 2; d <= 9; ++d)
    for (int r = 1; r < d; ++r) {
      if (std::gcd(r, d) != 1) continue;
      for (int s = 0; s < 3; ++s) {
        const Span span = relation_space(build_relations({d, r, sample_generic_x(d, W, rng), W}));
        CHECK(span.rank == d * (d - 1) / 2);
        CHECK(span.gap_ratio > 1e3);
      }
    }
}

TEST_CASE("rows with i <= j span the same space") {
  const RelationSystem sys = build_relations({5, 3, {0.29, 0.47}, W});
  const Eigen::MatrixXcd full = sys.matrix();
  Eigen::MatrixXcd upper(15, 25);
  int k = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) upper.row(k++) = full.row(i * 5 + j);
  const Span a = row_span(full, 1e-9), b = row_span(upper, 1e-9);
  CHECK(a.rank == b.rank);
  CHECK(subspace_distance(a.basis, b.basis) < 1e-10);
}

TEST_CASE("substitution t_i -> t_{r'i} is an isomorphism when r r' = 1") {
  const cplx x(0.31, 0.44);
  CHECK(check_substitution_isomorphism(5, 2, 3, x, W) < 1e-8);
  CHECK(check_substitution_isomorphism(7, 2, 4, x, W) < 1e-8);
  CHECK(check_substitution_isomorphism(8, 3, 3, x, W) < 1e-8);
  CHECK(check_substitution_isomorphism(5, 1, 1, x, W) < 1e-14);
}

TEST_CASE("non-congruent substitutions move the relation space") {
  const cplx x(0.31, 0.44);
  CHECK(substitution_distance(5, 2, 2, x, W) > 0.1);
  CHECK(substitution_distance(7, 2, 3, x, W) > 0.1);
  CHECK(substitution_distance(9, 2, 4, x, W) > 0.1);
}

TEST_CASE("preconditions") {
  const cplx x(0.31, 0.44);
  CHECK_THROWS_AS(check_substitution_isomorphism(5, 2, 2, x, W), InvalidArgument);
  CHECK_THROWS_AS(build_relations({6, 2, x, W}), InvalidArgument);
  CHECK_THROWS_AS(build_relations({3, 1, {1.0, 0.0}, W}), InvalidArgument);
  CHECK_THROWS_AS(build_relations({3, 1, W.omega() + 2.0, W}), InvalidArgument);
  CHECK_THROWS_AS(build_relations({0, 1, x, W}), InvalidArgument);
}

TEST_CASE("a denominator zero is reported, never an inflated rank") {
  // theta_1 vanishes at -omega/d and theta_2 at omega/d.
  try {
    build_relations({3, 1, -W.omega() / 3.0, W});
    FAIL("expected DenominatorNearZero");
  } catch (const DenominatorNearZero& e) {
    CHECK((e.which() == "theta_{rn}(x)" || e.which() == "theta_{j-i-n}(-x)"));
    CHECK(e.n() >= 0);
    CHECK(e.n() < 3);
  }
}

TEST_CASE("row_span flags a missing spectral gap") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 2e-9;
  m(2, 2) = 5e-10;
  CHECK_THROWS_AS(row_span(m, 1e-9), AmbiguousRank);
  m(2, 2) = 1e-15;
  CHECK(row_span(m, 1e-9).rank == 2);
}

TEST_CASE("subspace distance") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 1), b = Eigen::MatrixXcd::Zero(3, 1), c = Eigen::MatrixXcd::Zero(3, 2);
  a(0, 0) = 1.0;
  b(1, 0) = 1.0;
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  CHECK(subspace_distance(a, a) < 1e-15);
  CHECK(std::abs(subspace_distance(a, b) - 1.0) < 1e-15);
  CHECK(subspace_distance(a, c) == 1.0);
}
